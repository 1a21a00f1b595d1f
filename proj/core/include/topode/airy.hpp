#pragma once
// Floating-point cross-validation of the generalized Airy system
//   Y' + Lambda(lambda) Y = 0,  Y(0) = Id,
// fixed-step RK4, plus the exact scalar reduction of the first row.  All
// floating point in the project is confined to this module; nothing here
// feeds back into the exact pipeline.

#include <iosfwd>
#include <vector>

#include "topode/poly.hpp"
#include "topode/realization.hpp"

namespace topode {

// Exact elimination: the minimal monic relation
//   y^(order) = sum_{j < order} coeff[j](lambda) y^(j)
// satisfied by every entry of the first row of Y.
struct ScalarReduction {
  int order = 0;
  std::vector<Poly> coeff;  // coeff[j] multiplies y^(j), all polynomial
};

ScalarReduction scalar_reduction(const Realization& real);

namespace numeric {

using DMat = std::vector<std::vector<double>>;

struct NumericTrajectory {
  int m = 0;                   // matrix dimension
  double step = 0;             // grid spacing
  int order = 4;               // integrator order (RK4)
  std::vector<double> lambda;  // uniform grid, lambda[0] = range start
  std::vector<DMat> Y;         // one matrix per grid point
};

// Double-precision images of the two Lambda coefficients: Lambda(l) = L0 + l*L1.
// Throws if an entry has a sigma part (never the case for the bundled
// realizations).
DMat to_dmat(const FMat& m);

// Fixed-step RK4 for Y' = -(L0 + lambda L1) Y from Y(l0) = Id.
// steps < 10 rejected.
NumericTrajectory integrate_airy_system(const Realization& real, double l0,
                                        double l1, int steps);

// max_i |det Y_i - det Y_0| / |det Y_0| (Tr Lambda = 0, so det is conserved).
double det_drift(const NumericTrajectory& traj);

// max over interior grid points of the max-abs entry of M' - [M, Lambda] for
// M = Y A Y^{-1}, with M' by the centered 4th-order stencil (two boundary
// points dropped at each end).  Throws on singular Y.
double check_prop_A2(const NumericTrajectory& traj, const Realization& real,
                     const DMat& A);

// max over usable grid points of |y^(q) - sum coeff[j] y^(j)| for
// y = Y(0, col), derivatives by centered finite differences on a subgrid of
// the given stride (stride > 1 keeps high-order differences away from
// round-off).
double scalar_residual(const NumericTrajectory& traj, const ScalarReduction& red,
                       int col, int stride);

// lambda followed by the row-major entries of Y, one grid point per line.
void write_csv(const NumericTrajectory& traj, std::ostream& out);

}  // namespace numeric
}  // namespace topode
