#pragma once
// Faithful matrix realizations of the supported simple Lie algebras together
// with the graded data needed by the resolvent recursion: principal
// gradation, cyclic element Lambda, kernel basis Lambda_{m_a}, Gram
// constants, lowest-weight vectors and their principal sl2 orbits.

#include <map>
#include <string>
#include <utility>
#include <vector>

#include "topode/field.hpp"
#include "topode/laurent.hpp"
#include "topode/mat.hpp"

namespace topode {

enum class AlgebraType { A, B, D, G2 };

struct AlgebraId {
  AlgebraType type;
  int rank;
};

// Validates the supported families: A_n (n>=1), B_n (n>=2), D_4, G_2.
// Throws std::invalid_argument otherwise.
AlgebraId make_algebra(const std::string& letter, int rank);
std::string algebra_name(const AlgebraId& id);

class Realization {
 public:
  AlgebraId id{AlgebraType::A, 1};
  int n = 0;                   // rank
  int m = 0;                   // matrix dimension of the realization
  int h = 0;                   // Coxeter number
  int h_dual = 0;              // dual Coxeter number
  std::vector<int> exponents;  // m_1 <= ... <= m_n

  std::vector<FMat> E, F, H;   // Weyl generators
  FMat Iplus, Iminus, rho_dual;
  FMat Etheta, EmTheta;        // highest/lowest root vectors; (Etheta|EmTheta)=1
  Rat chi;                     // (x|y) = chi * Tr(xy)

  LaurentMat Lambda;               // I_+ + lambda E_{-theta}
  std::vector<LaurentMat> Lam;     // Lambda_{m_a}, basis of Ker ad_Lambda
  FMat gram;                       // (Lam_a|Lam_b) = gram(a,b) lambda^{(m_a+m_b)/h}

  std::vector<FMat> basis;     // homogeneous basis of g
  std::vector<int> height;     // ad_{rho^vee} weight of basis[i]
  int dim() const { return static_cast<int>(basis.size()); }

  std::vector<FMat> gamma;               // lowest-weight vectors gamma^i
  std::vector<std::vector<FMat>> orbit;  // orbit[i][s] = ad_{I+}^s gamma^i, s<=2m_i

  static Realization build(const AlgebraId& id);

  bool in_g(const FMat& x) const;
  // Coordinates of x in `basis`; throws std::domain_error when x is not in g.
  std::vector<FieldElem> decompose(const FMat& x) const;

  FieldElem pair(const FMat& x, const FMat& y) const;       // chi Tr(xy)
  LPoly pair(const LaurentMat& x, const LaurentMat& y) const;

  // R = [Lambda, X] + sum ker[(a,p)] * Lam[a] * lambda^p; R must lie in
  // g (x) C[lambda, lambda^{-1}].
  struct AdSplit {
    LaurentMat X;
    std::map<std::pair<int, int>, FieldElem> ker;
  };
  AdSplit split_ad(const LaurentMat& R) const;
  LaurentMat ker_to_mat(const std::map<std::pair<int, int>, FieldElem>& ker) const;

  // Kernel combination c with (ker_to_mat(c) | Lam[j]) == rhs[j] for every j,
  // solved per Gram block (handles the degenerate D_4 block exactly).
  std::map<std::pair<int, int>, FieldElem> gram_solve(const std::vector<LPoly>& rhs) const;
  // Orthogonal projection of Y onto Ker ad_Lambda w.r.t. the bilinear form.
  std::map<std::pair<int, int>, FieldElem> ker_project(const LaurentMat& Y) const;

  // Coordinates of x in the orbit basis {ad_{I+}^s gamma^j}; result[j][s].
  std::vector<std::vector<FieldElem>> decompose_orbit(const FMat& x) const;

 private:
  LinSolver<FieldElem> basis_solver_;   // vectorized basis -> coordinates
  LinSolver<FieldElem> orbit_solver_;   // vectorized orbit -> coordinates
  std::vector<std::vector<int>> class_members_;  // residue class -> basis indices
  std::vector<FMat> class_ad_;                   // ad_Lambda matrix class r -> r+1
  std::vector<LinSolver<FieldElem>> class_split_;  // augmented [ad | ker] solvers
  std::vector<std::vector<int>> class_ker_;        // residue class -> indices a

  void finalize();  // fills everything derived from generators + Lambda data
  friend struct RealizationBuilder;
};

}  // namespace topode
