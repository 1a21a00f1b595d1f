#include "topode/resolvent.hpp"

#include <stdexcept>

namespace topode {

FieldElem kappa_value(const Realization& real, KappaMode mode) {
  return mode == KappaMode::Unit ? FieldElem(1) : kappa_of(real.h);
}

MSeries ResolventSeries::assembled() const {
  const int h = real->h, ma = real->exponents[a];
  MSeries s(h, known_bound());
  FieldElem kap = kappa();
  FieldElem sgn = (sign == SignConvention::Plus) ? FieldElem(1) : FieldElem(-1);
  for (size_t k = 0; k < terms.size(); ++k) {
    FieldElem f = sgn * kap.pow(kappa_exp[k]);
    for (const auto& [p, mat] : terms[k].t) {
      long e = ma - static_cast<long>(h) * p;
      if (e > s.known) continue;
      FMat cur = s.coeff(e);
      if (cur.r == 0) cur = FMat(real->m, real->m);
      s.set(e, cur + f * mat);
    }
  }
  return s;
}

ResolventSeries compute_resolvent(const Realization& real, int a, int K, KappaMode mode,
                                  SignConvention sign) {
  if (a < 0 || a >= real.n) throw std::invalid_argument("compute_resolvent: bad index");
  if (K < 0) throw std::invalid_argument("compute_resolvent: bad depth");
  const int h = real.h, ma = real.exponents[a];
  ResolventSeries out;
  out.real = &real;
  out.a = a;
  out.mode = mode;
  out.sign = sign;
  out.terms.push_back(real.Lam[a]);
  out.kappa_exp.push_back(0);
  LaurentMat rho(real.rho_dual, 0);
  for (int k = 0; k < K; ++k) {
    const LaurentMat& Mk = out.terms.back();
    LaurentMat rhs = -Mk.dlam() + FieldElem(Rat(ma, h)) * Mk.shifted(-1);
    auto sp = real.split_ad(rhs);
    if (!sp.ker.empty())
      throw std::logic_error("compute_resolvent: RHS has a kernel component");
    // A = image component of the preimage; B from the orthogonality (2.11)
    // solved against the recorded Gram blocks.
    LaurentMat A = sp.X - real.ker_to_mat(real.ker_project(sp.X));
    LaurentMat rhoA = bracket(rho, A);
    std::vector<LPoly> rhs_pair(real.n);
    FieldElem c = FieldElem(Rat(-1, (h + 1) * (k + 1)));
    for (int j = 0; j < real.n; ++j) rhs_pair[j] = lp_scale(c, real.pair(rhoA, real.Lam[j]));
    LaurentMat B = real.ker_to_mat(real.gram_solve(rhs_pair));
    out.terms.push_back(A + B);
    out.kappa_exp.push_back(-(k + 1));
  }
  return out;
}

MSeries lambda_series(const Realization& real) {
  MSeries s(real.h);
  s.set(0, real.Iplus);
  s.set(-real.h, real.EmTheta);
  return s;
}

MSeries ode_residual(const ResolventSeries& M) {
  MSeries m = M.assembled();
  MSeries lam = lambda_series(*M.real);
  MSeries br = m * lam - lam * m;
  return d_dlambda(m) - scale(M.kappa(), br);
}

CommutationReport verify_commutation(const ResolventSeries& Ma, const ResolventSeries& Mb) {
  MSeries x = Ma.assembled(), y = Mb.assembled();
  MSeries br = x * y - y * x;
  CommutationReport rep;
  rep.checked_through = br.known;
  for (const auto& [e, mat] : br.c)
    if (!mat.is_zero()) {
      rep.first_violation = e;
      break;
    }
  return rep;
}

}  // namespace topode
