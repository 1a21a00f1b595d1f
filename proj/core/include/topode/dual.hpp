#pragma once
// Dual side: Laplace-Borel transform of the essential series, the B/C
// polynomial matrices of the first-order system, its Fuchsian normal form at
// x = 0, and scalar dominant-ODE fixtures.

#include <string>
#include <utility>
#include <vector>

#include "topode/poly.hpp"
#include "topode/reduction.hpp"

namespace topode {

inline Rat pochhammer(const Rat& a, long k) {
  Rat r = 1;
  for (long j = 0; j < k; ++j) r *= a + Rat(j);
  return r;
}

// phi_{a;i} = x^{s/h - 1} sum_m coeff[m] x^{m (h+1)}, coefficients stored
// relative to the overall Gamma(s/h): coeff[m] = c^a_{i,m} / (s/h)_{m(h+1)}.
struct DualSeries {
  int a = 0, i = 0;
  int h = 1;
  long s = 0;
  std::vector<FieldElem> coeff;
  bool zero = false;

  long lattice_step() const { return static_cast<long>(h) * (h + 1); }
  // As a series in w = x^{1/h}: exponents (s - h) + m h(h+1).
  FSeries series() const;
};

DualSeries borel_transform(const EssentialSeries& es);
EssentialSeries inverse_borel(const DualSeries& ds);

// B(x) phi' = C(x) phi equivalent to the reduced system under the transform
// S^{(v)} -> (-x)^v phi, lambda S^{(v)} -> (-1)^v (x^v phi' + v x^{v-1} phi).
std::pair<Mat<Poly>, Mat<Poly>> build_BC(const ReducedSystem& sys);

struct NormalForm {
  AlgebraId id{AlgebraType::A, 1};
  int n = 0;
  int h = 0;
  std::vector<int> exponents;
  std::vector<Rat> Vm1;   // diagonal of the residue matrix, -m_{n+1-a}/h
  std::vector<FMat> V;    // V[k], k = 0 .. 2h-2
};

NormalForm normal_form(const ReducedSystem& sys);
const NormalForm& normal_form(const Realization& real);  // memoized, kappa = 1

// Dual fundamental matrix Phi[i][a] = phi_{a;i} with `depth` lattice
// coefficients each.  Unlike a bare borel_transform, every column is
// coherently normalized relative to the single Gamma(m_a/h), so each column
// solves the normal-form system as-is.
std::vector<std::vector<DualSeries>> dual_matrix(const Realization& real, int depth);

// Residual phi' - (V_{-1}/x) phi - sum_k x^k V_k phi of one column (phi[i] as
// w-series); each returned series is zero through its known bound on actual
// solutions.
std::vector<FSeries> dual_residual(const NormalForm& nf, const std::vector<FSeries>& phi);

struct ScalarODE {
  int order = 0;
  bool theta_form = false;     // operator written in theta = x d/dx
  std::vector<Poly> coeffs;    // coeffs[j] multiplies theta^j (or phi^{(j)})
};

// Load a fixture from the bundled data directory by base name (e.g. "a2_1").
ScalarODE load_dominant(const std::string& name);
ScalarODE parse_scalar_ode(const std::string& json_text);

// Exact application of the operator to a series in w = x^{1/h}.
FSeries apply_scalar_ode(const ScalarODE& ode, const FSeries& phi);

}  // namespace topode
