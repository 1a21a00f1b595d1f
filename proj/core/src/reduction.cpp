#include "topode/reduction.hpp"

#include <mutex>
#include <utility>

namespace topode {

LwConstants lw_structure_constants(const Realization& real) {
  LwConstants tab;
  for (int i = 0; i < real.n; ++i) {
    int mi = real.exponents[i];
    for (int m = 0; m <= 2 * mi; ++m) {
      FMat br = bracket(real.EmTheta, real.orbit[i][m]);
      auto co = real.decompose_orbit(br);
      for (int j = 0; j < real.n; ++j)
        for (int s = 0; s <= 2 * real.exponents[j]; ++s) {
          if (co[j][s].is_zero()) continue;
          if (s - real.exponents[j] != m - mi - (real.h - 1))
            throw std::logic_error("lw constants: degree constraint violated");
          tab.c[{i, m, j, s}] = co[j][s];
        }
    }
  }
  return tab;
}

namespace {

ReducedSystem derive(const Realization& real, KappaMode mode) {
  ReducedSystem sys;
  sys.id = real.id;
  sys.n = real.n;
  sys.h = real.h;
  sys.exponents = real.exponents;
  sys.mode = mode;
  sys.kappa = kappa_value(real, mode);
  const FieldElem inv_kappa = sys.kappa.inv();
  LwConstants chat = lw_structure_constants(real);

  int mmax = real.exponents[real.n - 1];
  sys.K.assign(real.n, {});
  for (int i = 0; i < real.n; ++i) {
    sys.K[i].assign(2 * real.exponents[i] + 1, LinForm{});
    sys.K[i].back().add(0, i, 0, FieldElem(1));  // K_{i, 2 m_i} = S_i
  }
  // Eq. (3.12): K_{j,s-1} = -K'_{js}/kappa
  //   - lambda sum_i chat^{s+m_i-m_j+(h-1)}_{ijs} K_{i, s+m_i-m_j+(h-1)},
  // triangular in the total index, so fill strictly top-down.
  auto step = [&](int j, int s) {
    LinForm r = (-inv_kappa) * sys.K[j][s].deriv();
    LinForm lam_part;
    for (int i = 0; i < real.n; ++i) {
      int mp = s + real.exponents[i] - real.exponents[j] + (real.h - 1);
      if (mp > 2 * real.exponents[i]) continue;
      FieldElem c = chat.get(i, mp, j, s);
      if (!c.is_zero()) lam_part = lam_part + c * sys.K[i][mp];
    }
    return r + (FieldElem(-1) * lam_part).times_lambda();
  };
  for (int t = 2 * mmax - 1; t >= 0; --t)
    for (int j = 0; j < real.n; ++j)
      if (t <= 2 * real.exponents[j] - 1) sys.K[j][t] = step(j, t + 1);
  sys.row.resize(real.n);
  for (int j = 0; j < real.n; ++j) sys.row[j] = step(j, 0);

  // Structural invariants of Thm 1.6 / Eq. (3.21).
  for (int i = 0; i < real.n; ++i) {
    int mi = real.exponents[i];
    for (int m = mi; m <= 2 * mi - 1; ++m) {
      LinForm pure;
      pure.add(0, i, 2 * mi - m, (m % 2 ? FieldElem(-1) : FieldElem(1)) *
                                     inv_kappa.pow(2 * mi - m));
      if (!(sys.K[i][m] == pure))
        throw std::logic_error("reduced system: Eq. (3.14) shape violated");
    }
    for (int u = 0; u < real.n; ++u) {
      if (!sys.p1(0, i, u).is_zero())
        throw std::logic_error("reduced system: k^1_{iu0} != 0");
      for (int v = 2 * mi + 2; v <= 2 * real.h - 1; ++v)
        if (!sys.p0(v, i, u).is_zero())
          throw std::logic_error("reduced system: p0 vanishing condition violated");
      for (int v = mi + 1; v <= real.h; ++v)
        if (!sys.p1(v, i, u).is_zero())
          throw std::logic_error("reduced system: p1 vanishing condition violated");
    }
    if (!(sys.p0(2 * mi + 1, i, i) == FieldElem(-1) * inv_kappa.pow(2 * mi + 1)))
      throw std::logic_error("reduced system: wrong leading coefficient");
  }
  return sys;
}

}  // namespace

const ReducedSystem& derive_reduced_system(const Realization& real, KappaMode mode) {
  static std::mutex mu;
  static std::map<std::pair<std::string, int>, ReducedSystem> cache;
  std::lock_guard<std::mutex> lock(mu);
  auto key = std::make_pair(algebra_name(real.id), static_cast<int>(mode));
  auto it = cache.find(key);
  if (it == cache.end()) it = cache.emplace(key, derive(real, mode)).first;
  return it->second;
}

GaugeDecomposition decompose_gauge(const Realization& real, const MSeries& M) {
  GaugeDecomposition d;
  d.S.assign(real.n, FSeries(M.h, M.known));
  d.K.assign(real.n, {});
  for (int i = 0; i < real.n; ++i)
    d.K[i].assign(2 * real.exponents[i], FSeries(M.h, M.known));
  for (const auto& [e, mat] : M.c) {
    auto co = real.decompose_orbit(mat);
    for (int i = 0; i < real.n; ++i) {
      int mi = real.exponents[i];
      d.S[i].set(e, co[i][2 * mi]);
      for (int m = 0; m < 2 * mi; ++m) d.K[i][m].set(e, co[i][m]);
    }
  }
  return d;
}

MSeries reassemble(const Realization& real, const GaugeDecomposition& d) {
  long known = KNOWN_ALL;
  int h = 0;
  for (const auto& s : d.S) {
    known = std::min(known, s.known);
    h = s.h;
  }
  MSeries out(h, known);
  auto acc = [&](const FSeries& f, const FMat& b) {
    for (const auto& [e, v] : f.c) {
      FMat cur = out.coeff(e);
      if (cur.r == 0) cur = FMat(real.m, real.m);
      out.set(e, cur + v * b);
    }
  };
  for (int i = 0; i < real.n; ++i) {
    int mi = real.exponents[i];
    acc(d.S[i], real.orbit[i][2 * mi]);
    for (int m = 0; m < 2 * mi; ++m) acc(d.K[i][m], real.orbit[i][m]);
  }
  return out.drop_beyond_known();
}

FSeries EssentialSeries::series() const {
  FSeries r(h, s + lattice_step() * (static_cast<long>(coeff.size()) - 1));
  for (size_t m = 0; m < coeff.size(); ++m)
    r.set(s + lattice_step() * static_cast<long>(m), coeff[m]);
  return r;
}

std::vector<EssentialSeries> essential_series(const Realization& real,
                                              const ResolventSeries& M, int depth) {
  if (depth < 1) throw std::invalid_argument("essential_series: bad depth");
  const int h = real.h, ma = real.exponents[M.a];
  GaugeDecomposition d = decompose_gauge(real, M.assembled());
  std::vector<EssentialSeries> out;
  for (int i = 0; i < real.n; ++i) {
    EssentialSeries es;
    es.a = M.a;
    es.i = i;
    es.h = h;
    const FSeries& f = d.S[i];
    // Support lies on z-exponents m_i + (h+1)k with k == m_a - m_i (mod h);
    // the leading one present defines s_{ai}.
    long mi = real.exponents[i];
    for (const auto& [e, v] : f.c) {
      long k = (e - mi) / (h + 1);
      if ((e - mi) % (h + 1) != 0 || ((k - (ma - mi)) % h + h) % h != 0)
        throw std::logic_error("essential_series: off-lattice support");
      (void)v;
    }
    if (f.is_zero()) {
      es.zero = true;
      es.s = mi + (((ma - mi) % h + h) % h) * (h + 1);
      long need = es.s + es.lattice_step() * (depth - 1);
      if (need > f.known)
        throw UnderTruncation("essential_series: depth not determined (zero series)");
      es.coeff.assign(depth, FieldElem(0));
    } else {
      es.s = f.min_supp();
      long need = es.s + es.lattice_step() * (depth - 1);
      if (need > f.known) throw UnderTruncation("essential_series: depth not determined");
      for (int m = 0; m < depth; ++m) es.coeff.push_back(f.coeff(es.s + es.lattice_step() * m));
    }
    if (i == M.a) {
      if (es.s != ma || es.coeff[0].is_zero())
        throw std::logic_error("essential_series: fundamental series degenerate");
    }
    if (((es.s - ma) % h + h) % h != 0 || ((es.s - mi) % (h + 1) + h + 1) % (h + 1) != 0)
      throw std::logic_error("essential_series: congruence violated");
    out.push_back(std::move(es));
  }
  return out;
}

std::vector<EssentialSeries> essential_series(const Realization& real, int a, int depth,
                                              KappaMode mode, SignConvention sign) {
  const int h = real.h;
  // Generic leading term is at recursion order k0 = (m_a - m_i) mod h; leading
  // coefficients can vanish (shifting s_{ai} up by multiples of h(h+1)), so
  // retry with a deeper truncation until everything is determined.
  int K = (h - 1) + (depth - 1 + h) * h;
  for (int tries = 0; tries < 6; ++tries) {
    ResolventSeries M = compute_resolvent(real, a, K, mode, sign);
    try {
      return essential_series(real, M, depth);
    } catch (const UnderTruncation&) {
      K *= 2;
    }
  }
  throw UnderTruncation("essential_series: series not determined at any tried depth");
}

FSeries eval_linform(const LinForm& f, const std::vector<FSeries>& S) {
  if (S.empty()) return FSeries();
  FSeries out(S[0].h, KNOWN_ALL);
  bool first = true;
  for (const auto& [k, v] : f.c) {
    FSeries t = S[static_cast<size_t>(k[1])];
    for (int d = 0; d < k[2]; ++d) t = d_dlambda(t);
    if (k[0] == 1) t = t.shifted(-t.h);  // multiply by lambda
    t = scale(v, t);
    out = first ? t : out + t;
    first = false;
  }
  return out.drop_beyond_known();
}

std::vector<FSeries> check_reduced_solution(const ReducedSystem& sys,
                                            const std::vector<FSeries>& S) {
  if (static_cast<int>(S.size()) != sys.n)
    throw std::invalid_argument("check_reduced_solution: wrong size");
  std::vector<FSeries> out;
  for (int i = 0; i < sys.n; ++i) out.push_back(eval_linform(sys.row[i], S));
  return out;
}

}  // namespace topode
