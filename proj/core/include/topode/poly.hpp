#pragma once
// Univariate polynomials and rational functions over the coefficient field,
// used for the dual-side gauge transformation and normal forms in x.

#include <stdexcept>
#include <string>
#include <vector>

#include "topode/field.hpp"
#include "topode/mat.hpp"

namespace topode {

// Dense polynomial; coefficient i multiplies x^i.  Kept normalized (no
// trailing zeros).
struct Poly {
  std::vector<FieldElem> c;

  Poly() = default;
  Poly(const FieldElem& v) {  // NOLINT(google-explicit-constructor)
    if (!v.is_zero()) c.push_back(v);
  }
  Poly(long v) : Poly(FieldElem(v)) {}  // NOLINT(google-explicit-constructor)
  Poly(int v) : Poly(FieldElem(v)) {}   // NOLINT(google-explicit-constructor)
  static Poly monomial(const FieldElem& v, int e) {
    Poly p;
    if (v.is_zero()) return p;
    p.c.assign(e + 1, FieldElem(0));
    p.c[e] = v;
    return p;
  }
  static Poly x() { return monomial(FieldElem(1), 1); }

  void trim() {
    while (!c.empty() && c.back().is_zero()) c.pop_back();
  }
  bool is_zero() const { return c.empty(); }
  int deg() const { return static_cast<int>(c.size()) - 1; }  // -1 for zero
  FieldElem coeff(int e) const {
    return (e >= 0 && e < static_cast<int>(c.size())) ? c[e] : FieldElem(0);
  }
  FieldElem lead() const { return c.empty() ? FieldElem(0) : c.back(); }

  friend Poly operator+(const Poly& a, const Poly& b) {
    Poly r;
    r.c.resize(std::max(a.c.size(), b.c.size()), FieldElem(0));
    for (size_t i = 0; i < a.c.size(); ++i) r.c[i] += a.c[i];
    for (size_t i = 0; i < b.c.size(); ++i) r.c[i] += b.c[i];
    r.trim();
    return r;
  }
  friend Poly operator-(const Poly& a, const Poly& b) { return a + (-b); }
  friend Poly operator-(const Poly& a) {
    Poly r = a;
    for (auto& v : r.c) v = -v;
    return r;
  }
  friend Poly operator*(const Poly& a, const Poly& b) {
    if (a.is_zero() || b.is_zero()) return Poly();
    Poly r;
    r.c.assign(a.c.size() + b.c.size() - 1, FieldElem(0));
    for (size_t i = 0; i < a.c.size(); ++i) {
      if (a.c[i].is_zero()) continue;
      for (size_t j = 0; j < b.c.size(); ++j) r.c[i + j] += a.c[i] * b.c[j];
    }
    r.trim();
    return r;
  }
  friend bool operator==(const Poly& a, const Poly& b) { return a.c == b.c; }
  friend bool operator!=(const Poly& a, const Poly& b) { return !(a == b); }

  Poly deriv() const {
    Poly r;
    for (int i = 1; i <= deg(); ++i) r.c.push_back(FieldElem(Rat(i)) * c[i]);
    r.trim();
    return r;
  }
  FieldElem eval(const FieldElem& x0) const {
    FieldElem v(0);
    for (int i = deg(); i >= 0; --i) v = v * x0 + c[i];
    return v;
  }
};

// Division with remainder: a = q*b + r, deg r < deg b.
inline std::pair<Poly, Poly> poly_divmod(const Poly& a, const Poly& b) {
  if (b.is_zero()) throw std::domain_error("poly_divmod: division by zero");
  Poly q, r = a;
  FieldElem linv = b.lead().inv();
  while (!r.is_zero() && r.deg() >= b.deg()) {
    FieldElem f = r.lead() * linv;
    int e = r.deg() - b.deg();
    q = q + Poly::monomial(f, e);
    r = r - Poly::monomial(f, e) * b;
  }
  return {q, r};
}

inline Poly poly_gcd(Poly a, Poly b) {
  while (!b.is_zero()) {
    Poly r = poly_divmod(a, b).second;
    a = b;
    b = r;
  }
  if (!a.is_zero()) {
    FieldElem linv = a.lead().inv();
    for (auto& v : a.c) v = linv * v;  // make monic
  }
  return a;
}

// Reduced rational function num/den with monic denominator.
struct RatFun {
  Poly num, den = Poly(1);

  RatFun() = default;
  RatFun(const Poly& n) : num(n) {}  // NOLINT(google-explicit-constructor)
  RatFun(const FieldElem& v) : num(v) {}  // NOLINT(google-explicit-constructor)
  RatFun(long v) : num(FieldElem(v)) {}   // NOLINT(google-explicit-constructor)
  RatFun(int v) : num(FieldElem(v)) {}    // NOLINT(google-explicit-constructor)
  RatFun(const Poly& n, const Poly& d) : num(n), den(d) { reduce(); }

  void reduce() {
    if (den.is_zero()) throw std::domain_error("RatFun: zero denominator");
    if (num.is_zero()) {
      den = Poly(1);
      return;
    }
    Poly g = poly_gcd(num, den);
    if (g.deg() > 0) {
      num = poly_divmod(num, g).first;
      den = poly_divmod(den, g).first;
    }
    FieldElem linv = den.lead().inv();
    for (auto& v : num.c) v = linv * v;
    for (auto& v : den.c) v = linv * v;
  }

  bool is_zero() const { return num.is_zero(); }
  bool is_polynomial() const { return den.deg() == 0; }

  friend RatFun operator+(const RatFun& a, const RatFun& b) {
    return RatFun(a.num * b.den + b.num * a.den, a.den * b.den);
  }
  friend RatFun operator-(const RatFun& a, const RatFun& b) {
    return RatFun(a.num * b.den - b.num * a.den, a.den * b.den);
  }
  friend RatFun operator-(const RatFun& a) {
    RatFun r = a;
    r.num = -r.num;
    return r;
  }
  friend RatFun operator*(const RatFun& a, const RatFun& b) {
    return RatFun(a.num * b.num, a.den * b.den);
  }
  friend RatFun operator/(const RatFun& a, const RatFun& b) {
    if (b.is_zero()) throw std::domain_error("RatFun: division by zero");
    return RatFun(a.num * b.den, a.den * b.num);
  }
  RatFun inv() const {
    if (is_zero()) throw std::domain_error("RatFun: inverse of zero");
    return RatFun(den, num);
  }
  RatFun& operator+=(const RatFun& o) { return *this = *this + o; }
  RatFun& operator-=(const RatFun& o) { return *this = *this - o; }
  RatFun& operator*=(const RatFun& o) { return *this = *this * o; }

  friend bool operator==(const RatFun& a, const RatFun& b) {
    return a.num == b.num && a.den == b.den;
  }
  friend bool operator!=(const RatFun& a, const RatFun& b) { return !(a == b); }

  RatFun deriv() const {
    return RatFun(num.deriv() * den - num * den.deriv(), den * den);
  }
};

using RMat = Mat<RatFun>;

}  // namespace topode
