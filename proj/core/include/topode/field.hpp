#pragma once
// Exact coefficient field: Q(sigma) with sigma^2 = -h.

#include <gmpxx.h>

#include <cstdint>
#include <stdexcept>
#include <string>

namespace topode {

using Rat = mpq_class;

inline Rat rat_pow(const Rat& base, long e) {
  if (e < 0) {
    if (base == 0) throw std::domain_error("rat_pow: 0^negative");
    return rat_pow(1 / base, -e);
  }
  Rat r = 1, b = base;
  while (e) {
    if (e & 1) r *= b;
    b *= b;
    e >>= 1;
  }
  return r;
}

inline std::string rat_str(const Rat& r) {
  Rat c = r;
  c.canonicalize();
  return c.get_str();
}

inline Rat rat_parse(const std::string& s) {
  Rat r;
  if (r.set_str(s, 10) != 0) throw std::invalid_argument("bad rational: " + s);
  r.canonicalize();
  return r;
}

// Element a + b*sigma of the quadratic extension Q(sigma), sigma^2 = -h.
// h == 0 marks a plain rational, compatible with every algebra; combining two
// different nonzero h values is an error (mixed-h arithmetic is rejected).
class FieldElem {
 public:
  Rat rat, sig;
  int h = 0;

  FieldElem() : rat(0), sig(0) {}
  FieldElem(const Rat& r) : rat(r), sig(0) { rat.canonicalize(); }  // NOLINT(google-explicit-constructor)
  FieldElem(long v) : rat(v), sig(0) {}        // NOLINT(google-explicit-constructor)
  FieldElem(int v) : rat(v), sig(0) {}         // NOLINT(google-explicit-constructor)
  FieldElem(const Rat& r, const Rat& s, int hh) : rat(r), sig(s), h(hh) { normalize(); }

  static FieldElem sigma(int hh) { return FieldElem(0, 1, hh); }

  void normalize() {
    // mpq_class(a, b) does not canonicalize; GMP arithmetic requires it.
    rat.canonicalize();
    sig.canonicalize();
    if (sig == 0) h = 0;
    if (sig != 0 && h <= 0) throw std::invalid_argument("FieldElem: sigma part requires h > 0");
  }

  bool is_zero() const { return rat == 0 && sig == 0; }
  bool is_rational() const { return sig == 0; }

  static int join_h(const FieldElem& a, const FieldElem& b) {
    if (a.h == 0) return b.h;
    if (b.h == 0 || a.h == b.h) return a.h;
    throw std::invalid_argument("FieldElem: mixed sigma fields");
  }

  friend FieldElem operator+(const FieldElem& a, const FieldElem& b) {
    return FieldElem(a.rat + b.rat, a.sig + b.sig, join_h(a, b));
  }
  friend FieldElem operator-(const FieldElem& a, const FieldElem& b) {
    return FieldElem(a.rat - b.rat, a.sig - b.sig, join_h(a, b));
  }
  friend FieldElem operator-(const FieldElem& a) { return FieldElem(-a.rat, -a.sig, a.h); }
  friend FieldElem operator*(const FieldElem& a, const FieldElem& b) {
    int hh = join_h(a, b);
    return FieldElem(a.rat * b.rat - Rat(hh) * a.sig * b.sig, a.rat * b.sig + a.sig * b.rat, hh);
  }
  FieldElem inv() const {
    // 1/(a + b sigma) = (a - b sigma)/(a^2 + h b^2)
    Rat den = rat * rat + Rat(h) * sig * sig;
    if (den == 0) throw std::domain_error("FieldElem: division by zero");
    return FieldElem(rat / den, -sig / den, h);
  }
  friend FieldElem operator/(const FieldElem& a, const FieldElem& b) { return a * b.inv(); }

  FieldElem& operator+=(const FieldElem& o) { return *this = *this + o; }
  FieldElem& operator-=(const FieldElem& o) { return *this = *this - o; }
  FieldElem& operator*=(const FieldElem& o) { return *this = *this * o; }
  FieldElem& operator/=(const FieldElem& o) { return *this = *this / o; }

  friend bool operator==(const FieldElem& a, const FieldElem& b) {
    return a.rat == b.rat && a.sig == b.sig;
  }
  friend bool operator!=(const FieldElem& a, const FieldElem& b) { return !(a == b); }

  FieldElem pow(long e) const {
    if (e < 0) return inv().pow(-e);
    FieldElem r(1), b = *this;
    while (e) {
      if (e & 1) r = r * b;
      b = b * b;
      e >>= 1;
    }
    return r;
  }

  std::string str() const {
    if (sig == 0) return rat_str(rat);
    return rat_str(rat) + " + (" + rat_str(sig) + ")*sigma";
  }
};

// kappa = sigma^{-h} = (sqrt(-h))^{-h}.  Rational exactly when h is even.
inline FieldElem kappa_of(int h) { return FieldElem::sigma(h).pow(-h); }

}  // namespace topode
