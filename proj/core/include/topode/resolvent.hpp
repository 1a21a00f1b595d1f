#pragma once
// Graded recursion for the generalized Airy resolvents M_a(lambda).

#include <optional>

#include "topode/realization.hpp"
#include "topode/zseries.hpp"

namespace topode {

enum class KappaMode { Unit, Normalized };
enum class SignConvention { Plus, Minus };

FieldElem kappa_value(const Realization& real, KappaMode mode);

struct ResolventSeries {
  const Realization* real = nullptr;
  int a = 0;  // 0-based exponent index
  KappaMode mode = KappaMode::Unit;
  SignConvention sign = SignConvention::Plus;
  std::vector<LaurentMat> terms;  // M_k computed at kappa = 1, plus sign
  std::vector<int> kappa_exp;     // power of kappa carried by term k (= -k)

  int depth() const { return static_cast<int>(terms.size()) - 1; }
  FieldElem kappa() const { return kappa_value(*real, mode); }
  // Largest z-exponent (z = lambda^{-1/h}) fully determined by the truncation.
  long known_bound() const { return static_cast<long>(real->h + 1) * depth() + 1; }
  // M = sign * lambda^{-m_a/h} sum_k kappa^{kappa_exp[k]} M_k as a z-series.
  MSeries assembled() const;
};

ResolventSeries compute_resolvent(const Realization& real, int a, int K,
                                  KappaMode mode = KappaMode::Unit,
                                  SignConvention sign = SignConvention::Plus);

// Lambda as an exact matrix z-series (I_+ at z^0, E_-theta at z^{-h}).
MSeries lambda_series(const Realization& real);

// M' - kappa [M, Lambda]; vanishes through the known bound for a resolvent.
MSeries ode_residual(const ResolventSeries& M);

struct CommutationReport {
  long checked_through = 0;
  std::optional<long> first_violation;  // empty = clean
};
CommutationReport verify_commutation(const ResolventSeries& Ma, const ResolventSeries& Mb);

}  // namespace topode
