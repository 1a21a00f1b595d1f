#include "topode/correlators.hpp"

#include <algorithm>
#include <future>
#include <numeric>
#include <stdexcept>

#include "topode/dual.hpp"  // pochhammer

namespace topode {

FMat ad_matrix(const Realization& real, const FMat& x) {
  const int d = real.dim();
  FMat m(d, d);
  for (int j = 0; j < d; ++j) {
    auto col = real.decompose(x * real.basis[j] - real.basis[j] * x);
    for (int i = 0; i < d; ++i) m(i, j) = col[i];
  }
  return m;
}

FieldElem b_multilinear(const Realization& real, const std::vector<FMat>& elems) {
  if (elems.empty()) throw std::invalid_argument("b_multilinear: no arguments");
  FMat p = ad_matrix(real, elems[0]);
  for (size_t i = 1; i < elems.size(); ++i) p = p * ad_matrix(real, elems[i]);
  return p.trace();
}

bool correlator_genus(const Realization& real,
                      const std::vector<std::pair<int, long>>& tau, long& g) {
  const long h = real.h, N = static_cast<long>(tau.size());
  long num = 2 * h + 2 - h * N;
  for (const auto& [a, k] : tau) num += (real.exponents[a] - 1) + h * k;
  if (num % (2 * h + 2) != 0) return false;
  g = num / (2 * h + 2);
  return g >= 0;
}

namespace {

// sigma^p for sigma = sqrt(-h).
FieldElem sigma_pow(int h, long p) { return FieldElem::sigma(h).pow(p); }

// The lattice prefactor of Eq. (5.9)/(5.20): the correlator value is
// coeff / prefactor at z-exponent m + h(k+1) per marked point.
FieldElem lattice_prefactor(const Realization& real, const FieldElem& kappa,
                            const std::vector<std::pair<int, long>>& tau) {
  const int h = real.h;
  FieldElem pre = (-(kappa * FieldElem::sigma(h))).pow(static_cast<long>(tau.size()));
  for (const auto& [a, k] : tau) {
    const long m = real.exponents[a];
    FieldElem f(pochhammer(Rat(m, h), k + 1));
    if (k % 2) f = -f;
    pre = pre * f * sigma_pow(h, m) * kappa.pow(-(k + 1));
  }
  return pre;
}

Rat extract_value(const FieldElem& coeff, const FieldElem& pre) {
  FieldElem v = coeff * pre.inv();
  if (!v.is_rational())
    throw std::logic_error("correlators: extracted value has a sigma part");
  return v.rat;
}

// dF_i/dlambda as a z-series: the theory-specific linear functional of M_i
// plus the delta_{i,n} counterterm.
FSeries dF_series(const Realization& real, const ResolventSeries& res, int a,
                  Theory theory) {
  const FieldElem kappa = res.kappa();
  MSeries M = res.assembled();
  FSeries s(M.h, M.known);
  if (theory == Theory::RSpin) {
    if (real.id.type != AlgebraType::A)
      throw std::invalid_argument("rspin correlators require A-type");
    for (const auto& [e, mat] : M.c) s.set(e, -kappa * mat(0, real.m - 1));
  } else {
    const FMat adE = ad_matrix(real, real.EmTheta);
    const FieldElem f = -kappa * FieldElem(Rat(1, 2 * real.h_dual));
    for (const auto& [e, mat] : M.c) s.set(e, f * (adE * ad_matrix(real, mat)).trace());
  }
  if (a == real.n - 1) {
    // the -kappa lambda^{-(h-1)/h} counterterm sits at z^{h-1}
    s.set(static_cast<long>(real.h) - 1, s.coeff(real.h - 1) - kappa);
  }
  return s;
}

// ---- sparse multivariate series in z_1..z_N with per-variable caps ----

struct NSeries {
  std::map<std::vector<long>, FieldElem> c;

  void add(const std::vector<long>& e, const FieldElem& v,
           const std::vector<long>& cap) {
    if (v.is_zero()) return;
    for (size_t l = 0; l < e.size(); ++l)
      if (e[l] > cap[l]) return;
    auto it = c.find(e);
    if (it == c.end())
      c.emplace(e, v);
    else {
      it->second += v;
      if (it->second.is_zero()) c.erase(it);
    }
  }
};

NSeries nmul(const NSeries& x, const NSeries& y, const std::vector<long>& cap) {
  NSeries r;
  std::vector<long> e(cap.size());
  for (const auto& [e1, v1] : x.c)
    for (const auto& [e2, v2] : y.c) {
      for (size_t l = 0; l < e.size(); ++l) e[l] = e1[l] + e2[l];
      r.add(e, v1 * v2, cap);
    }
  return r;
}

void nacc(NSeries& x, const NSeries& y, const FieldElem& scale,
          const std::vector<long>& cap) {
  for (const auto& [e, v] : y.c) x.add(e, scale * v, cap);
}

// Lift a univariate z-series into variable `var` of an N-variate series.
NSeries lift(const FSeries& s, int var, int nvar, const std::vector<long>& cap) {
  NSeries r;
  std::vector<long> e(nvar, 0);
  for (const auto& [ex, v] : s.c) {
    e[var] = ex;
    r.add(e, v, cap);
  }
  return r;
}

// 1/(lambda_a - lambda_b) expanded in the region where |lambda| decreases
// with the variable index: z_big^{h(1+t)} z_small^{-ht}.
NSeries pole_factor(int va, int vb, int h, int nvar, long tmax,
                    const std::vector<long>& cap) {
  const int big = std::min(va, vb), small = std::max(va, vb);
  NSeries r;
  std::vector<long> e(nvar, 0);
  const FieldElem sgn(va < vb ? 1 : -1);
  for (long t = 0; t <= tmax; ++t) {
    e[big] = static_cast<long>(h) * (1 + t);
    e[small] = -static_cast<long>(h) * t;
    r.add(e, sgn, cap);
  }
  return r;
}

// The matrix of univariate entry series of one resolvent, in the
// representation the theory traces over.
std::vector<std::vector<FSeries>> factor_matrix(const Realization& real,
                                                const ResolventSeries& res,
                                                Theory theory) {
  MSeries M = res.assembled();
  const int d = (theory == Theory::RSpin) ? real.m : real.dim();
  std::vector<std::vector<FSeries>> out(d, std::vector<FSeries>(d, FSeries(M.h, M.known)));
  for (const auto& [e, mat] : M.c) {
    FMat rep = (theory == Theory::RSpin) ? mat : ad_matrix(real, mat);
    for (int i = 0; i < d; ++i)
      for (int j = 0; j < d; ++j)
        if (!rep(i, j).is_zero()) out[i][j].set(e, rep(i, j));
  }
  return out;
}

// Tr(A_{s_0}(z_{s_0}) ... A_{s_{N-1}}(z_{s_{N-1}})) * prod of pole factors
// for one permutation.
NSeries permutation_term(const std::vector<std::vector<std::vector<FSeries>>>& A,
                         const std::vector<int>& s, int h, long tmax,
                         const std::vector<long>& cap) {
  const int N = static_cast<int>(s.size());
  const int d = static_cast<int>(A[0].size());
  std::vector<std::vector<NSeries>> P(d, std::vector<NSeries>(d));
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < d; ++j) P[i][j] = lift(A[s[0]][i][j], s[0], N, cap);
  for (int pos = 1; pos < N; ++pos) {
    std::vector<std::vector<NSeries>> Q(d, std::vector<NSeries>(d));
    for (int i = 0; i < d; ++i)
      for (int j = 0; j < d; ++j)
        for (int t = 0; t < d; ++t) {
          if (P[i][t].c.empty() || A[s[pos]][t][j].is_zero()) continue;
          NSeries f = lift(A[s[pos]][t][j], s[pos], N, cap);
          nacc(Q[i][j], nmul(P[i][t], f, cap), FieldElem(1), cap);
        }
    P.swap(Q);
  }
  NSeries tr;
  for (int i = 0; i < d; ++i) nacc(tr, P[i][i], FieldElem(1), cap);
  for (int j = 0; j < N; ++j)
    tr = nmul(tr, pole_factor(s[j], s[(j + 1) % N], h, N, tmax, cap), cap);
  return tr;
}

}  // namespace

std::vector<OnePointValue> one_point(const Realization& real, int a, long kmax,
                                     Theory theory) {
  const int h = real.h;
  const long m = real.exponents[a];
  const long need = m + h * (kmax + 2);
  const int K = static_cast<int>(need / (h + 1)) + 2;
  auto res = compute_resolvent(real, a, K, KappaMode::Normalized, SignConvention::Minus);
  const FieldElem kappa = res.kappa();
  FSeries dF = dF_series(real, res, a, theory);

  // Everything below the k = 0 lattice point must cancel, and the expansion
  // must stay on the z = m (mod h) class.
  for (const auto& [e, v] : dF.c) {
    if (e > need + h) continue;
    if ((e - m) % h != 0 || e <= m + h)
      throw std::logic_error("one_point: term off the expected lattice");
  }

  std::vector<OnePointValue> out;
  for (long k = 0; k <= kmax; ++k) {
    const long e = m + h * (k + 1);  // z-exponent in F
    // integrate termwise: F-coefficient at lambda^{-e/h} from dF at z^{e+h}
    FieldElem fc = dF.coeff(e + h) * FieldElem(Rat(-h, e));
    FieldElem pre = lattice_prefactor(real, kappa, {{a, k}});
    OnePointValue v;
    v.k = k;
    v.value = extract_value(fc, pre);
    v.genus_ok = correlator_genus(real, {{a, k}}, v.genus);
    if (!v.genus_ok && v.value != 0)
      throw std::logic_error("one_point: nonzero value at non-integer genus");
    out.push_back(v);
  }
  return out;
}

MultiPointValues multi_point(const Realization& real, const std::vector<int>& idx,
                             long ktotal, Theory theory) {
  const int N = static_cast<int>(idx.size());
  if (N < 2) throw std::invalid_argument("multi_point: need at least two points");
  const int h = real.h;

  std::vector<long> cap(N);
  long capmax = 0;
  for (int l = 0; l < N; ++l) {
    cap[l] = real.exponents[idx[l]] + h * (ktotal + 1);
    capmax = std::max(capmax, cap[l]);
  }
  // Geometric tails: z_big-exponents beyond its cap never matter; entry series
  // of the minus-normalized resolvents start at z^{m_a - h} or higher.
  const long tmax = (capmax + h) / h + 1;
  const long need = capmax + 2 * h * (tmax + 1);
  const int K = static_cast<int>(need / (h + 1)) + 2;

  std::vector<std::vector<std::vector<FSeries>>> A;
  std::vector<FieldElem> kap;
  for (int l = 0; l < N; ++l) {
    auto res = compute_resolvent(real, idx[l], K, KappaMode::Normalized,
                                 SignConvention::Minus);
    kap.push_back(res.kappa());
    A.push_back(factor_matrix(real, res, theory));
  }
  const FieldElem kappa = kap[0];

  std::vector<int> s(N);
  std::iota(s.begin(), s.end(), 0);
  std::vector<std::vector<int>> perms;
  do perms.push_back(s);
  while (std::next_permutation(s.begin(), s.end()));

  std::vector<std::future<NSeries>> jobs;
  for (const auto& p : perms)
    jobs.push_back(std::async(std::launch::async, [&, p] {
      return permutation_term(A, p, h, tmax, cap);
    }));
  NSeries F;
  const FieldElem norm =
      (theory == Theory::RSpin)
          ? FieldElem(Rat(-1, N))
          : FieldElem(Rat(-1, 2 * static_cast<long>(N) * real.h_dual));
  for (auto& j : jobs) nacc(F, j.get(), norm, cap);

  // N = 2 correction term for paired exponents, expanded in the same region.
  const long m1 = real.exponents[idx[0]], m2 = N == 2 ? real.exponents[idx[1]] : 0;
  if (N == 2 && m1 + m2 == h) {
    for (long t = 0; h * (t + 1) <= cap[0]; ++t) {
      FieldElem w(Rat(t + 1));
      F.add({m1 + h * (t + 1), m2 - h * t}, -w * FieldElem(Rat(m1)), cap);
      F.add({m1 + h * (t + 2), m2 - h * (t + 1)}, -w * FieldElem(Rat(m2)), cap);
    }
  }

  // Support check: every term must sit on the z_l = m_l (mod h) class.  Terms
  // strictly below the k = 0 lattice point in some variable are the unstable
  // polynomial-in-lambda part; the N = 2 counterterm removes it, for N >= 3 it
  // survives but never reaches an extraction point.
  for (const auto& [e, v] : F.c)
    for (int l = 0; l < N; ++l)
      if ((e[l] - real.exponents[idx[l]]) % h != 0)
        throw std::logic_error("multi_point: term off the expected lattice");

  MultiPointValues out;
  out.idx = idx;
  std::vector<long> ks(N, 0);
  // enumerate k-tuples with sum <= ktotal
  while (true) {
    long sum = std::accumulate(ks.begin(), ks.end(), 0L);
    if (sum <= ktotal) {
      std::vector<long> e(N);
      std::vector<std::pair<int, long>> tau;
      for (int l = 0; l < N; ++l) {
        e[l] = real.exponents[idx[l]] + h * (ks[l] + 1);
        tau.emplace_back(idx[l], ks[l]);
      }
      auto it = F.c.find(e);
      FieldElem coeff = (it == F.c.end()) ? FieldElem(0) : it->second;
      Rat val = extract_value(coeff, lattice_prefactor(real, kappa, tau));
      long g;
      if (!correlator_genus(real, tau, g) && val != 0)
        throw std::logic_error("multi_point: nonzero value at non-integer genus");
      out.values.emplace(ks, val);
    }
    int l = N - 1;
    while (l >= 0 && ++ks[l] > ktotal) ks[l--] = 0;
    if (l < 0) break;
  }
  return out;
}

}  // namespace topode
