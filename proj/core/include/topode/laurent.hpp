#pragma once
// Laurent polynomials in lambda over the coefficient field, and matrix-valued
// Laurent polynomials used by the resolvent recursion.

#include <map>
#include <stdexcept>

#include "topode/field.hpp"
#include "topode/mat.hpp"

namespace topode {

// Scalar Laurent polynomial: lambda-power -> coefficient.
using LPoly = std::map<int, FieldElem>;

inline void lp_add_term(LPoly& p, int e, const FieldElem& v) {
  if (v.is_zero()) return;
  auto it = p.find(e);
  if (it == p.end())
    p[e] = v;
  else {
    it->second += v;
    if (it->second.is_zero()) p.erase(it);
  }
}

inline LPoly lp_add(const LPoly& a, const LPoly& b) {
  LPoly r = a;
  for (const auto& [e, v] : b) lp_add_term(r, e, v);
  return r;
}
inline LPoly lp_mul(const LPoly& a, const LPoly& b) {
  LPoly r;
  for (const auto& [e1, v1] : a)
    for (const auto& [e2, v2] : b) lp_add_term(r, e1 + e2, v1 * v2);
  return r;
}
inline LPoly lp_scale(const FieldElem& s, const LPoly& a) {
  LPoly r;
  for (const auto& [e, v] : a) lp_add_term(r, e, s * v);
  return r;
}
inline FieldElem lp_coeff(const LPoly& a, int e) {
  auto it = a.find(e);
  return it == a.end() ? FieldElem(0) : it->second;
}

// Matrix-valued Laurent polynomial in lambda.
struct LaurentMat {
  int dim = 0;
  std::map<int, FMat> t;  // lambda-power -> matrix coefficient

  LaurentMat() = default;
  explicit LaurentMat(int d) : dim(d) {}
  explicit LaurentMat(const FMat& m, int power = 0) : dim(m.r) {
    if (!m.is_zero()) t[power] = m;
  }

  bool is_zero() const { return t.empty(); }

  FMat coeff(int e) const {
    auto it = t.find(e);
    return it == t.end() ? FMat(dim, dim) : it->second;
  }
  void add_term(int e, const FMat& m) {
    if (m.is_zero()) return;
    auto it = t.find(e);
    if (it == t.end())
      t[e] = m;
    else {
      it->second += m;
      if (it->second.is_zero()) t.erase(it);
    }
  }

  friend LaurentMat operator+(const LaurentMat& a, const LaurentMat& b) {
    if (a.dim != b.dim) throw std::invalid_argument("LaurentMat: dim mismatch");
    LaurentMat r = a;
    for (const auto& [e, m] : b.t) r.add_term(e, m);
    return r;
  }
  friend LaurentMat operator-(const LaurentMat& a, const LaurentMat& b) { return a + (-b); }
  friend LaurentMat operator-(const LaurentMat& a) {
    LaurentMat r = a;
    for (auto& [e, m] : r.t) m = -m;
    return r;
  }
  friend LaurentMat operator*(const LaurentMat& a, const LaurentMat& b) {
    if (a.dim != b.dim) throw std::invalid_argument("LaurentMat: dim mismatch");
    LaurentMat r(a.dim);
    for (const auto& [e1, m1] : a.t)
      for (const auto& [e2, m2] : b.t) r.add_term(e1 + e2, m1 * m2);
    return r;
  }
  friend LaurentMat operator*(const FieldElem& s, const LaurentMat& a) {
    LaurentMat r(a.dim);
    for (const auto& [e, m] : a.t) r.add_term(e, s * m);
    return r;
  }
  friend bool operator==(const LaurentMat& a, const LaurentMat& b) {
    return a.dim == b.dim && a.t == b.t;
  }

  LaurentMat shifted(int d) const {  // multiply by lambda^d
    LaurentMat r(dim);
    for (const auto& [e, m] : t) r.t[e + d] = m;
    return r;
  }
  LaurentMat dlam() const {  // d/dlambda
    LaurentMat r(dim);
    for (const auto& [e, m] : t) {
      if (e == 0) continue;
      r.add_term(e - 1, FieldElem(Rat(e)) * m);
    }
    return r;
  }
  LPoly trace() const {
    LPoly p;
    for (const auto& [e, m] : t) lp_add_term(p, e, m.trace());
    return p;
  }
};

inline LaurentMat bracket(const LaurentMat& x, const LaurentMat& y) { return x * y - y * x; }

// Bilinear form (x|y) = chi * Tr(xy), chi normalizing to the form with
// (theta|theta) = 2.
inline LPoly pairing(const LaurentMat& x, const LaurentMat& y, const FieldElem& chi) {
  LPoly p = (x * y).trace();
  return lp_scale(chi, p);
}

}  // namespace topode
