#pragma once
// Lowest-weight gauge machinery: structure constants, the symbolic triangular
// recursion producing the reduced topological ODEs, gauge decomposition of
// matrix series, and the essential series of the resolvents.

#include <array>
#include <map>
#include <stdexcept>
#include <vector>

#include "topode/realization.hpp"
#include "topode/resolvent.hpp"
#include "topode/zseries.hpp"

namespace topode {

// Lowest-weight structure constants:
//   [E_{-theta}, ad_{I+}^m gamma^i] = sum_{j,s} chat^m_{ijs} ad_{I+}^s gamma^j.
// Keyed by (i, m, j, s); only nonzero entries stored.  Every entry satisfies
// the degree constraint s - m_j = m - m_i - (h - 1).
struct LwConstants {
  std::map<std::array<int, 4>, FieldElem> c;
  FieldElem get(int i, int m, int j, int s) const {
    auto it = c.find({i, m, j, s});
    return it == c.end() ? FieldElem(0) : it->second;
  }
};
LwConstants lw_structure_constants(const Realization& real);

// Sparse linear form sum coeff * lambda^delta * S_u^{(v)} with delta in {0,1}.
// A lambda^2 term can never arise in the reduction; producing one throws.
struct LinForm {
  // key = {delta, u, v}
  std::map<std::array<int, 3>, FieldElem> c;

  void add(int delta, int u, int v, const FieldElem& x) {
    if (x.is_zero()) return;
    auto key = std::array<int, 3>{delta, u, v};
    auto it = c.find(key);
    if (it == c.end())
      c.emplace(key, x);
    else {
      it->second += x;
      if (it->second.is_zero()) c.erase(it);
    }
  }
  FieldElem coeff(int delta, int u, int v) const {
    auto it = c.find({delta, u, v});
    return it == c.end() ? FieldElem(0) : it->second;
  }
  bool is_zero() const { return c.empty(); }

  friend LinForm operator+(const LinForm& a, const LinForm& b) {
    LinForm r = a;
    for (const auto& [k, v] : b.c) r.add(k[0], k[1], k[2], v);
    return r;
  }
  friend LinForm operator*(const FieldElem& s, const LinForm& a) {
    LinForm r;
    for (const auto& [k, v] : a.c) r.add(k[0], k[1], k[2], s * v);
    return r;
  }
  friend bool operator==(const LinForm& a, const LinForm& b) { return a.c == b.c; }

  // d/dlambda: S_u^{(v)} -> S_u^{(v+1)},
  //            lambda S_u^{(v)} -> S_u^{(v)} + lambda S_u^{(v+1)}.
  LinForm deriv() const {
    LinForm r;
    for (const auto& [k, v] : c) {
      r.add(k[0], k[1], k[2] + 1, v);
      if (k[0] == 1) r.add(0, k[1], k[2], v);
    }
    return r;
  }
  LinForm times_lambda() const {
    LinForm r;
    for (const auto& [k, v] : c) {
      if (k[0] != 0) throw std::logic_error("LinForm: lambda^2 term produced");
      r.add(1, k[1], k[2], v);
    }
    return r;
  }
};

// The reduced topological ODEs and the K-expressions, derived once per
// (algebra, kappa mode) by the triangular recursion.  `K[i][m]` expresses the
// gauge coefficient K_{im} through the S_u and derivatives; `row[i]` is the
// left-hand side of the reduced ODE (vanishes on solutions), normalized so
// the coefficient of S_i^{(2 m_i + 1)} is -kappa^{-(2 m_i + 1)}.
struct ReducedSystem {
  AlgebraId id{AlgebraType::A, 1};
  int n = 0;
  int h = 0;
  std::vector<int> exponents;
  KappaMode mode = KappaMode::Unit;
  FieldElem kappa;

  std::vector<std::vector<LinForm>> K;  // K[i][m], 0 <= m <= 2 m_i
  std::vector<LinForm> row;             // reduced ODE for each i

  // Constant matrices of the system sum_v p0_v S^{(v)} + lambda sum_v p1_v
  // S^{(v)} = 0 (rows as stored; no extra sign).
  FieldElem p0(int v, int i, int u) const { return row[i].coeff(0, u, v); }
  FieldElem p1(int v, int i, int u) const { return row[i].coeff(1, u, v); }
};

// Memoized per (algebra, mode); thread-safe.
const ReducedSystem& derive_reduced_system(const Realization& real,
                                           KappaMode mode = KappaMode::Unit);

// Coefficients of a g-valued z-series over the lowest-weight basis:
//   M = sum_i S_i ad_{I+}^{2 m_i} gamma^i + sum_{i, m < 2 m_i} K_{im} ad^m gamma^i.
struct GaugeDecomposition {
  std::vector<FSeries> S;                 // S[i]
  std::vector<std::vector<FSeries>> K;    // K[i][m], 0 <= m <= 2 m_i - 1
};
GaugeDecomposition decompose_gauge(const Realization& real, const MSeries& M);
MSeries reassemble(const Realization& real, const GaugeDecomposition& d);

// Essential series S_{a;i} = z^{s_ai} sum_m c_m z^{m h (h+1)}, z = lambda^{-1/h}.
struct EssentialSeries {
  int a = 0, i = 0;  // 0-based indices
  int h = 1;
  long s = 0;                    // offset exponent s_{ai}
  std::vector<FieldElem> coeff;  // c_0 .. c_{depth-1}
  bool zero = false;             // no support found through the checked depth

  long lattice_step() const { return static_cast<long>(h) * (h + 1); }
  FSeries series() const;
};

struct UnderTruncation : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Extract the essential series of an already-computed resolvent; throws
// UnderTruncation when `depth` coefficients are not determined by M.
std::vector<EssentialSeries> essential_series(const Realization& real,
                                              const ResolventSeries& M, int depth);
// Convenience: computes the resolvent deep enough internally.
std::vector<EssentialSeries> essential_series(const Realization& real, int a, int depth,
                                              KappaMode mode = KappaMode::Unit,
                                              SignConvention sign = SignConvention::Plus);

// Evaluate one linear form on concrete series (z-variable, lambda = z^{-h}).
FSeries eval_linform(const LinForm& f, const std::vector<FSeries>& S);
// Residuals of all reduced ODE rows; zero through known bounds on solutions.
std::vector<FSeries> check_reduced_solution(const ReducedSystem& sys,
                                            const std::vector<FSeries>& S);

}  // namespace topode
