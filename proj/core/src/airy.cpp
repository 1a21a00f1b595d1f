#include "topode/airy.hpp"

#include <cmath>
#include <ostream>
#include <stdexcept>

namespace topode {

namespace {

// Lambda(lambda) = L0 + lambda L1 as a rational-function matrix.
RMat lambda_rmat(const Realization& real) {
  const int m = real.m;
  FMat L0 = real.Lambda.coeff(0), L1 = real.Lambda.coeff(1);
  RMat L(m, m);
  for (int i = 0; i < m; ++i)
    for (int j = 0; j < m; ++j) {
      Poly p = Poly(L0(i, j)) + Poly::monomial(L1(i, j), 1);
      L(i, j) = RatFun(p);
    }
  return L;
}

}  // namespace

ScalarReduction scalar_reduction(const Realization& real) {
  const int m = real.m;
  RMat L = lambda_rmat(real);
  // rows[j] represents y^(j) = rows[j] . (first column block of Y):
  // d/dlambda (r Y) = r' Y + r Y' = (r' - r Lambda) Y.
  std::vector<std::vector<RatFun>> rows;
  std::vector<RatFun> r(m);
  r[0] = RatFun(1);
  rows.push_back(r);
  for (int q = 1; q <= m; ++q) {
    std::vector<RatFun> nr(m);
    for (int k = 0; k < m; ++k) {
      RatFun v = rows.back()[k].deriv();
      for (int j = 0; j < m; ++j) v -= rows.back()[j] * L(j, k);
      nr[k] = v;
    }
    rows.push_back(nr);
    // Try to solve rows[q] = sum_{j<q} c_j rows[j] by Gaussian elimination on
    // the m x (q+1) augmented system.
    RMat sys(m, q + 1);
    for (int i = 0; i < m; ++i) {
      for (int j = 0; j < q; ++j) sys(i, j) = rows[j][i];
      sys(i, q) = rows[q][i];
    }
    int rank = 0;
    std::vector<int> pivot_col(q, -1);
    for (int col = 0; col < q && rank < m; ++col) {
      int piv = -1;
      for (int row = rank; row < m; ++row)
        if (!sys(row, col).is_zero()) {
          piv = row;
          break;
        }
      if (piv < 0) continue;
      if (piv != rank)
        for (int k = 0; k <= q; ++k) std::swap(sys(piv, k), sys(rank, k));
      RatFun inv = sys(rank, col).inv();
      for (int k = col; k <= q; ++k) sys(rank, k) *= inv;
      for (int row = 0; row < m; ++row) {
        if (row == rank || sys(row, col).is_zero()) continue;
        RatFun f = sys(row, col);
        for (int k = col; k <= q; ++k) sys(row, k) -= f * sys(rank, k);
      }
      pivot_col[col] = rank;
      ++rank;
    }
    bool consistent = true;
    for (int row = rank; row < m; ++row)
      if (!sys(row, q).is_zero()) consistent = false;
    if (!consistent) continue;
    ScalarReduction red;
    red.order = q;
    red.coeff.assign(q, Poly());
    for (int col = 0; col < q; ++col) {
      if (pivot_col[col] < 0) continue;
      RatFun c = sys(pivot_col[col], q);
      if (!c.is_polynomial())
        throw std::logic_error("scalar_reduction: non-polynomial coefficient");
      FieldElem dinv = c.den.coeff(0).inv();
      Poly p = c.num;
      for (auto& v : p.c) v = dinv * v;
      red.coeff[col] = p;
    }
    return red;
  }
  throw std::logic_error("scalar_reduction: no relation up to the matrix size");
}

namespace numeric {

namespace {

double to_double(const FieldElem& v) {
  if (!v.is_rational())
    throw std::invalid_argument("numeric: entry has a sigma part");
  return v.rat.get_d();
}

DMat dzero(int m) { return DMat(m, std::vector<double>(m, 0.0)); }

DMat dmul(const DMat& a, const DMat& b) {
  const int m = static_cast<int>(a.size());
  DMat r = dzero(m);
  for (int i = 0; i < m; ++i)
    for (int k = 0; k < m; ++k) {
      const double v = a[i][k];
      if (v == 0.0) continue;
      for (int j = 0; j < m; ++j) r[i][j] += v * b[k][j];
    }
  return r;
}

void daxpy(DMat& a, double f, const DMat& b) {
  for (size_t i = 0; i < a.size(); ++i)
    for (size_t j = 0; j < a.size(); ++j) a[i][j] += f * b[i][j];
}

double det_lu(DMat a) {
  const int m = static_cast<int>(a.size());
  double det = 1.0;
  for (int col = 0; col < m; ++col) {
    int piv = col;
    for (int row = col + 1; row < m; ++row)
      if (std::fabs(a[row][col]) > std::fabs(a[piv][col])) piv = row;
    if (a[piv][col] == 0.0) return 0.0;
    if (piv != col) {
      std::swap(a[piv], a[col]);
      det = -det;
    }
    det *= a[col][col];
    for (int row = col + 1; row < m; ++row) {
      double f = a[row][col] / a[col][col];
      for (int k = col; k < m; ++k) a[row][k] -= f * a[col][k];
    }
  }
  return det;
}

DMat dinverse(DMat a) {
  const int m = static_cast<int>(a.size());
  DMat inv = dzero(m);
  for (int i = 0; i < m; ++i) inv[i][i] = 1.0;
  for (int col = 0; col < m; ++col) {
    int piv = col;
    for (int row = col + 1; row < m; ++row)
      if (std::fabs(a[row][col]) > std::fabs(a[piv][col])) piv = row;
    if (a[piv][col] == 0.0)
      throw std::domain_error("check_prop_A2: singular Y on the grid");
    if (piv != col) {
      std::swap(a[piv], a[col]);
      std::swap(inv[piv], inv[col]);
    }
    double f = 1.0 / a[col][col];
    for (int k = 0; k < m; ++k) {
      a[col][k] *= f;
      inv[col][k] *= f;
    }
    for (int row = 0; row < m; ++row) {
      if (row == col || a[row][col] == 0.0) continue;
      double g = a[row][col];
      for (int k = 0; k < m; ++k) {
        a[row][k] -= g * a[col][k];
        inv[row][k] -= g * inv[col][k];
      }
    }
  }
  return inv;
}

// Fornberg weights: d-th derivative at 0 from nodes x[0..n-1].
std::vector<double> fd_weights(const std::vector<double>& x, int d) {
  const int n = static_cast<int>(x.size());
  std::vector<std::vector<double>> c(n, std::vector<double>(d + 1, 0.0));
  c[0][0] = 1.0;
  double c1 = 1.0, c4 = x[0];
  for (int i = 1; i < n; ++i) {
    const int mn = std::min(i, d);
    double c2 = 1.0;
    const double c5 = c4;
    c4 = x[i];
    for (int j = 0; j < i; ++j) {
      const double c3 = x[i] - x[j];
      c2 *= c3;
      if (j == i - 1) {
        for (int k = mn; k >= 1; --k)
          c[i][k] = c1 * (k * c[i - 1][k - 1] - c5 * c[i - 1][k]) / c2;
        c[i][0] = -c1 * c5 * c[i - 1][0] / c2;
      }
      for (int k = mn; k >= 1; --k)
        c[j][k] = (c4 * c[j][k] - k * c[j][k - 1]) / c3;
      c[j][0] = c4 * c[j][0] / c3;
    }
    c1 = c2;
  }
  std::vector<double> w(n);
  for (int i = 0; i < n; ++i) w[i] = c[i][d];
  return w;
}

}  // namespace

DMat to_dmat(const FMat& m) {
  DMat r(m.r, std::vector<double>(m.c, 0.0));
  for (int i = 0; i < m.r; ++i)
    for (int j = 0; j < m.c; ++j) r[i][j] = to_double(m(i, j));
  return r;
}

NumericTrajectory integrate_airy_system(const Realization& real, double l0,
                                        double l1, int steps) {
  if (steps < 10)
    throw std::invalid_argument("integrate_airy_system: need at least 10 steps");
  const int m = real.m;
  const DMat L0 = to_dmat(real.Lambda.coeff(0)), L1 = to_dmat(real.Lambda.coeff(1));
  const double h = (l1 - l0) / steps;

  auto deriv = [&](double lam, const DMat& y) {
    DMat lm = L0;
    daxpy(lm, lam, L1);
    DMat r = dmul(lm, y);
    for (auto& row : r)
      for (auto& v : row) v = -v;
    return r;
  };

  NumericTrajectory traj;
  traj.m = m;
  traj.step = h;
  DMat y = dzero(m);
  for (int i = 0; i < m; ++i) y[i][i] = 1.0;
  traj.lambda.push_back(l0);
  traj.Y.push_back(y);
  for (int s = 0; s < steps; ++s) {
    const double lam = l0 + s * h;
    DMat k1 = deriv(lam, y);
    DMat y2 = y;
    daxpy(y2, h / 2, k1);
    DMat k2 = deriv(lam + h / 2, y2);
    DMat y3 = y;
    daxpy(y3, h / 2, k2);
    DMat k3 = deriv(lam + h / 2, y3);
    DMat y4 = y;
    daxpy(y4, h, k3);
    DMat k4 = deriv(lam + h, y4);
    daxpy(y, h / 6, k1);
    daxpy(y, h / 3, k2);
    daxpy(y, h / 3, k3);
    daxpy(y, h / 6, k4);
    traj.lambda.push_back(l0 + (s + 1) * h);
    traj.Y.push_back(y);
  }
  return traj;
}

double det_drift(const NumericTrajectory& traj) {
  const double d0 = det_lu(traj.Y.front());
  if (d0 == 0.0) throw std::domain_error("det_drift: singular initial value");
  double worst = 0.0;
  for (const auto& y : traj.Y)
    worst = std::max(worst, std::fabs(det_lu(y) - d0) / std::fabs(d0));
  return worst;
}

double check_prop_A2(const NumericTrajectory& traj, const Realization& real,
                     const DMat& A) {
  const int m = traj.m;
  const long n = static_cast<long>(traj.Y.size());
  if (n < 5) throw std::invalid_argument("check_prop_A2: trajectory too short");
  const DMat L0 = to_dmat(real.Lambda.coeff(0)), L1 = to_dmat(real.Lambda.coeff(1));
  std::vector<DMat> M;
  M.reserve(n);
  for (const auto& y : traj.Y) M.push_back(dmul(dmul(y, A), dinverse(y)));

  const double h = traj.step;
  double worst = 0.0;
  for (long i = 2; i + 2 < n; ++i) {
    DMat lm = L0;
    daxpy(lm, traj.lambda[i], L1);
    DMat rhs = dmul(M[i], lm);
    daxpy(rhs, -1.0, dmul(lm, M[i]));
    for (int r = 0; r < m; ++r)
      for (int c = 0; c < m; ++c) {
        double dp = (M[i - 2][r][c] - 8 * M[i - 1][r][c] + 8 * M[i + 1][r][c] -
                     M[i + 2][r][c]) /
                    (12 * h);
        worst = std::max(worst, std::fabs(dp - rhs[r][c]));
      }
  }
  return worst;
}

double scalar_residual(const NumericTrajectory& traj, const ScalarReduction& red,
                       int col, int stride) {
  if (stride < 1) throw std::invalid_argument("scalar_residual: bad stride");
  const int q = red.order;
  const int npts = q + 5 + ((q + 5) % 2 == 0 ? 1 : 0);  // odd, centered
  const int half = npts / 2;
  const long n = static_cast<long>(traj.Y.size());
  if (n < static_cast<long>(npts) * stride)
    throw std::invalid_argument("scalar_residual: trajectory too short");
  const double h = traj.step * stride;
  std::vector<double> x(npts);
  for (int p = 0; p < npts; ++p) x[p] = (p - half) * h;
  std::vector<std::vector<double>> w;
  for (int d = 0; d <= q; ++d) w.push_back(fd_weights(x, d));

  double worst = 0.0;
  for (long i = static_cast<long>(half) * stride; i + half * stride < n;
       i += stride) {
    const double lam = traj.lambda[i];
    std::vector<double> dy(q + 1, 0.0);
    for (int d = 0; d <= q; ++d)
      for (int p = 0; p < npts; ++p)
        dy[d] += w[d][p] * traj.Y[i + (p - half) * stride][0][col];
    double res = dy[q];
    for (int j = 0; j < q; ++j) {
      if (red.coeff[j].is_zero()) continue;
      double cv = 0.0, pw = 1.0;
      for (int e = 0; e <= red.coeff[j].deg(); ++e) {
        cv += to_double(red.coeff[j].coeff(e)) * pw;
        pw *= lam;
      }
      res -= cv * dy[j];
    }
    worst = std::max(worst, std::fabs(res));
  }
  return worst;
}

void write_csv(const NumericTrajectory& traj, std::ostream& out) {
  out << "lambda";
  for (int i = 0; i < traj.m; ++i)
    for (int j = 0; j < traj.m; ++j) out << ",Y" << i << j;
  out << "\n";
  for (size_t s = 0; s < traj.Y.size(); ++s) {
    out << traj.lambda[s];
    for (int i = 0; i < traj.m; ++i)
      for (int j = 0; j < traj.m; ++j) out << "," << traj.Y[s][i][j];
    out << "\n";
  }
}

}  // namespace numeric
}  // namespace topode
