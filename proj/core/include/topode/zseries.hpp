#pragma once
// Truncated series in a formal variable with a fixed fractional-power
// denominator h:  sum_k c_k z^k, z = lambda^{-1/h} (or x^{1/h} on the dual
// side).  "known" is the largest exponent whose coefficient is guaranteed
// correct; coefficients beyond it are unknown, not zero.

#include <climits>
#include <map>
#include <stdexcept>

#include "topode/field.hpp"
#include "topode/mat.hpp"

namespace topode {

constexpr long KNOWN_ALL = LONG_MAX / 4;

template <class T>
struct ZSeries {
  int h = 1;             // exponent denominator
  std::map<long, T> c;   // exponent -> coefficient (nonzero entries only)
  long known = KNOWN_ALL;

  ZSeries() = default;
  explicit ZSeries(int hh, long kn = KNOWN_ALL) : h(hh), known(kn) {}

  static int join_h(const ZSeries& a, const ZSeries& b) {
    if (a.h != b.h) throw std::invalid_argument("ZSeries: mixed denominators");
    return a.h;
  }

  void set(long e, const T& v) {
    if (v.is_zero())
      c.erase(e);
    else
      c[e] = v;
  }
  T coeff(long e) const {
    auto it = c.find(e);
    return it == c.end() ? T{} : it->second;
  }
  bool is_zero() const { return c.empty(); }

  // First exponent that might carry a nonzero coefficient.
  long min_supp() const {
    if (!c.empty()) return c.begin()->first;
    return known == KNOWN_ALL ? KNOWN_ALL : known + 1;
  }

  ZSeries& drop_beyond_known() {
    for (auto it = c.begin(); it != c.end();)
      it = (it->first > known) ? c.erase(it) : std::next(it);
    return *this;
  }

  friend ZSeries operator+(const ZSeries& a, const ZSeries& b) {
    ZSeries r(join_h(a, b), std::min(a.known, b.known));
    r.c = a.c;
    for (const auto& [e, v] : b.c) {
      auto it = r.c.find(e);
      if (it == r.c.end())
        r.c[e] = v;
      else {
        it->second += v;
        if (it->second.is_zero()) r.c.erase(it);
      }
    }
    return r.drop_beyond_known();
  }
  friend ZSeries operator-(const ZSeries& a, const ZSeries& b) { return a + (-b); }
  friend ZSeries operator-(const ZSeries& a) {
    ZSeries r = a;
    for (auto& [e, v] : r.c) v = -v;
    return r;
  }
  friend ZSeries operator*(const ZSeries& a, const ZSeries& b) {
    ZSeries r(join_h(a, b));
    long ka = (a.known == KNOWN_ALL || b.min_supp() == KNOWN_ALL) ? KNOWN_ALL
                                                                  : a.known + b.min_supp();
    long kb = (b.known == KNOWN_ALL || a.min_supp() == KNOWN_ALL) ? KNOWN_ALL
                                                                  : b.known + a.min_supp();
    r.known = std::min(ka, kb);
    for (const auto& [e1, v1] : a.c)
      for (const auto& [e2, v2] : b.c) {
        if (e1 + e2 > r.known) continue;
        T p = v1 * v2;
        if (p.is_zero()) continue;
        auto it = r.c.find(e1 + e2);
        if (it == r.c.end())
          r.c[e1 + e2] = p;
        else {
          it->second += p;
          if (it->second.is_zero()) r.c.erase(it);
        }
      }
    return r;
  }

  friend bool operator==(const ZSeries& a, const ZSeries& b) {
    return a.h == b.h && a.known == b.known && a.c == b.c;
  }

  ZSeries shifted(long d) const {
    ZSeries r(h, known == KNOWN_ALL ? KNOWN_ALL : known + d);
    for (const auto& [e, v] : c) r.c[e + d] = v;
    return r;
  }
  ZSeries truncated(long bound) const {
    ZSeries r(h, std::min(known, bound));
    for (const auto& [e, v] : c)
      if (e <= bound) r.c[e] = v;
    return r;
  }
};

template <class T>
ZSeries<T> scale(const FieldElem& s, const ZSeries<T>& a) {
  ZSeries<T> r(a.h, a.known);
  if (s.is_zero()) return r;
  for (const auto& [e, v] : a.c) {
    T p = scale_coeff(s, v);
    if (!p.is_zero()) r.c[e] = p;
  }
  return r;
}
inline FieldElem scale_coeff(const FieldElem& s, const FieldElem& v) { return s * v; }
inline FMat scale_coeff(const FieldElem& s, const FMat& v) { return s * v; }

// d/dlambda with z = lambda^{-1/h}:  z^k -> (-k/h) z^{k+h}.
template <class T>
ZSeries<T> d_dlambda(const ZSeries<T>& a) {
  ZSeries<T> r(a.h, a.known == KNOWN_ALL ? KNOWN_ALL : a.known + a.h);
  for (const auto& [e, v] : a.c) {
    if (e == 0) continue;
    r.c[e + a.h] = scale_coeff(FieldElem(Rat(-e, a.h)), v);
  }
  return r;
}

// d/dx with w = x^{1/h}:  w^k -> (k/h) w^{k-h}.
template <class T>
ZSeries<T> d_dx(const ZSeries<T>& a) {
  ZSeries<T> r(a.h, a.known == KNOWN_ALL ? KNOWN_ALL : a.known - a.h);
  for (const auto& [e, v] : a.c) {
    if (e == 0) continue;
    r.c[e - a.h] = scale_coeff(FieldElem(Rat(e, a.h)), v);
  }
  return r;
}

// Equality of all coefficients with exponent <= bound (must be known on both).
template <class T>
bool eq_through(const ZSeries<T>& a, const ZSeries<T>& b, long bound) {
  if (a.h != b.h) return false;
  if (a.known < bound || b.known < bound) throw std::invalid_argument("eq_through: beyond known");
  for (const auto& [e, v] : a.c)
    if (e <= bound && !(b.coeff(e) == v)) return false;
  for (const auto& [e, v] : b.c)
    if (e <= bound && !(a.coeff(e) == v)) return false;
  return true;
}

// Entry extraction from a matrix-valued series.
inline ZSeries<FieldElem> entry(const ZSeries<FMat>& s, int i, int j) {
  ZSeries<FieldElem> r(s.h, s.known);
  for (const auto& [e, m] : s.c) r.set(e, m(i, j));
  return r;
}

using FSeries = ZSeries<FieldElem>;
using MSeries = ZSeries<FMat>;

}  // namespace topode
