#include "topode/realization.hpp"

#include <algorithm>
#include <deque>
#include <map>
#include <stdexcept>

namespace topode {

namespace {

FMat unit(int m, int i, int j, const Rat& v = Rat(1)) {
  // 1-based matrix unit v * e_{ij}
  FMat u(m, m);
  u(i - 1, j - 1) = FieldElem(v);
  return u;
}

std::vector<FieldElem> vec_of(const FMat& x) {
  std::vector<FieldElem> v(x.a.begin(), x.a.end());
  return v;
}

// Incremental linear-independence tracker (row echelon form by leading col).
struct IncSpan {
  std::map<size_t, std::vector<FieldElem>> rows;  // leading index -> reduced row

  bool add(std::vector<FieldElem> v) {
    for (const auto& [lc, r] : rows) {
      if (v[lc].is_zero()) continue;
      FieldElem f = v[lc];
      for (size_t i = 0; i < v.size(); ++i) v[i] -= f * r[i];
    }
    size_t lead = v.size();
    for (size_t i = 0; i < v.size(); ++i)
      if (!v[i].is_zero()) {
        lead = i;
        break;
      }
    if (lead == v.size()) return false;
    FieldElem inv = v[lead].inv();
    for (auto& x : v) x = inv * x;
    rows[lead] = std::move(v);
    return true;
  }
};

// Free scale per gamma^i, fixed by the printed fixtures (see ledger entry on
// gamma normalization).
std::vector<Rat> gamma_weights(const AlgebraId& id, int n) {
  if (id.type == AlgebraType::A && id.rank == 1) return {Rat(1)};
  if (id.type == AlgebraType::A && id.rank == 2) return {Rat(-2), Rat(6)};
  if (id.type == AlgebraType::A && id.rank == 3) return {Rat(1), Rat(1), Rat(10)};
  if (id.type == AlgebraType::A && id.rank == 4)
    return {Rat(1), Rat(-12), Rat(360), Rat(-35)};
  if (id.type == AlgebraType::B && id.rank == 2) return {Rat(1), Rat(5, 4)};
  if (id.type == AlgebraType::B && id.rank == 3) return {Rat(1), Rat(1), Rat(21, 2)};
  if (id.type == AlgebraType::D) return {Rat(1), Rat(1), Rat(1), Rat(21, 2)};
  if (id.type == AlgebraType::G2) return {Rat(1), Rat(21, 2)};
  return std::vector<Rat>(n, Rat(1));
}

}  // namespace

AlgebraId make_algebra(const std::string& letter, int rank) {
  if (letter == "A" || letter == "a") {
    if (rank < 1) throw std::invalid_argument("A_n requires n >= 1");
    return {AlgebraType::A, rank};
  }
  if (letter == "B" || letter == "b") {
    if (rank < 2) throw std::invalid_argument("B_n requires n >= 2");
    return {AlgebraType::B, rank};
  }
  if (letter == "D" || letter == "d") {
    if (rank != 4) throw std::invalid_argument("only D_4 is supported");
    return {AlgebraType::D, 4};
  }
  if (letter == "G" || letter == "g") {
    if (rank != 2) throw std::invalid_argument("only G_2 is supported");
    return {AlgebraType::G2, 2};
  }
  throw std::invalid_argument("unknown algebra family: " + letter);
}

std::string algebra_name(const AlgebraId& id) {
  switch (id.type) {
    case AlgebraType::A:
      return "A" + std::to_string(id.rank);
    case AlgebraType::B:
      return "B" + std::to_string(id.rank);
    case AlgebraType::D:
      return "D" + std::to_string(id.rank);
    case AlgebraType::G2:
      return "G2";
  }
  throw std::logic_error("unreachable");
}

struct RealizationBuilder {
  // Family-specific construction policy consumed by finalize().
  // lam_power[a] >= 0: Lam[a] starts as Lambda^{m_a}.
  // lam_power[a] == -1: explicit matrix in lam_explicit.
  // lam_power[a] == -2: solve Ker ad_Lambda at degree m_a.
  std::vector<int> lam_power;
  std::map<int, LaurentMat> lam_explicit;
  bool emtheta_from_basis = false;
  Rat emtheta_scale = Rat(1);

  static Realization make(const AlgebraId& id) {
    Realization r;
    RealizationBuilder b;
    r.id = id;
    r.n = id.rank;
    const int n = r.n;
    switch (id.type) {
      case AlgebraType::A: {
        r.m = n + 1;
        r.h = n + 1;
        r.h_dual = n + 1;
        for (int a = 1; a <= n; ++a) r.exponents.push_back(a);
        for (int i = 1; i <= n; ++i) {
          r.E.push_back(unit(r.m, i, i + 1));
          r.F.push_back(unit(r.m, i + 1, i));
        }
        r.EmTheta = unit(r.m, n + 1, 1);
        b.lam_power.assign(n, 0);
        for (int a = 0; a < n; ++a) b.lam_power[a] = r.exponents[a];
        break;
      }
      case AlgebraType::B: {
        r.m = 2 * n + 1;
        r.h = 2 * n;
        r.h_dual = 2 * n - 1;
        for (int a = 1; a <= n; ++a) r.exponents.push_back(2 * a - 1);
        for (int i = 1; i < n; ++i) {
          r.E.push_back(unit(r.m, i, i + 1) + unit(r.m, r.m - i, r.m - i + 1));
          r.F.push_back(unit(r.m, i + 1, i) + unit(r.m, r.m - i + 1, r.m - i));
        }
        r.E.push_back(unit(r.m, n, n + 1) + unit(r.m, n + 1, n + 2));
        r.F.push_back(unit(r.m, n + 1, n, Rat(2)) + unit(r.m, n + 2, n + 1, Rat(2)));
        r.EmTheta = unit(r.m, r.m - 1, 1, Rat(1, 2)) + unit(r.m, r.m, 2, Rat(1, 2));
        b.lam_power.assign(n, 0);
        for (int a = 0; a < n; ++a) b.lam_power[a] = r.exponents[a];
        break;
      }
      case AlgebraType::D: {
        r.m = 8;
        r.h = 6;
        r.h_dual = 6;
        r.exponents = {1, 3, 3, 5};
        r.E = {unit(8, 1, 2) + unit(8, 7, 8), unit(8, 2, 3) + unit(8, 6, 7),
               unit(8, 3, 4) + unit(8, 5, 6),
               unit(8, 3, 5, Rat(1, 2)) + unit(8, 4, 6, Rat(1, 2))};
        r.F = {unit(8, 2, 1) + unit(8, 8, 7), unit(8, 3, 2) + unit(8, 7, 6),
               unit(8, 4, 3) + unit(8, 6, 5), unit(8, 5, 3, Rat(2)) + unit(8, 6, 4, Rat(2))};
        r.EmTheta = unit(8, 7, 1, Rat(1, 2)) + unit(8, 8, 2, Rat(1, 2));
        b.lam_power = {1, 3, -1, 5};
        LaurentMat l3p(8);
        FMat c0 = unit(8, 1, 5, Rat(2)) + unit(8, 2, 6, Rat(2)) + unit(8, 3, 7, Rat(2)) +
                  unit(8, 4, 8, Rat(2));
        FMat c1 = unit(8, 5, 1, Rat(2)) + unit(8, 6, 2, Rat(2)) + unit(8, 7, 3, Rat(2)) +
                  unit(8, 8, 4, Rat(2));
        l3p.add_term(0, c0);
        l3p.add_term(1, c1);
        b.lam_explicit[2] = l3p;
        break;
      }
      case AlgebraType::G2: {
        r.m = 7;
        r.h = 6;
        r.h_dual = 4;
        r.exponents = {1, 5};
        r.E = {unit(7, 1, 2) + unit(7, 3, 4, Rat(2)) + unit(7, 4, 5) + unit(7, 6, 7),
               unit(7, 2, 3) + unit(7, 5, 6)};
        r.F = {unit(7, 2, 1) + unit(7, 4, 3) + unit(7, 5, 4, Rat(2)) + unit(7, 7, 6),
               unit(7, 3, 2) + unit(7, 6, 5)};
        b.emtheta_from_basis = true;
        b.emtheta_scale = Rat(1, 4);
        b.lam_power = {1, -2};
        break;
      }
    }
    b.run(r);
    return r;
  }

  void run(Realization& r) const;
};

void RealizationBuilder::run(Realization& r) const {
  const int n = r.n, m = r.m, h = r.h;

  // Cartan matrix from [H_i, E_j] = A_ij E_j, with H_i = [E_i, F_i].
  r.H.clear();
  for (int i = 0; i < n; ++i) r.H.push_back(bracket(r.E[i], r.F[i]));
  FMat cartan(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      FMat br = bracket(r.H[i], r.E[j]);
      FieldElem ratio(0);
      for (size_t k = 0; k < br.a.size(); ++k)
        if (!r.E[j].a[k].is_zero()) {
          ratio = br.a[k] / r.E[j].a[k];
          break;
        }
      if (br != ratio * r.E[j]) throw std::logic_error("generators: E_j not ad_H eigenvector");
      cartan(i, j) = ratio;
    }

  // rho^vee = sum x_i H_i with alpha_j(rho^vee) = 1, i.e. A^T x = (1,...,1).
  auto xs = solve_linear(cartan.transpose(), std::vector<FieldElem>(n, FieldElem(1)));
  if (!xs) throw std::logic_error("rho^vee: Cartan matrix singular");
  r.rho_dual = FMat(m, m);
  r.Iminus = FMat(m, m);
  r.Iplus = FMat(m, m);
  for (int i = 0; i < n; ++i) {
    r.rho_dual += (*xs)[i] * r.H[i];
    r.Iminus += (FieldElem(2) * (*xs)[i]) * r.F[i];
    r.Iplus += r.E[i];
  }

  // Basis of g by bracket closure from the generators, height-homogeneous.
  IncSpan span;
  std::deque<size_t> todo;
  auto push = [&](const FMat& x, int ht) {
    if (x.is_zero() || !span.add(vec_of(x))) return;
    r.basis.push_back(x);
    r.height.push_back(ht);
    todo.push_back(r.basis.size() - 1);
  };
  for (int i = 0; i < n; ++i) push(r.H[i], 0);
  for (int i = 0; i < n; ++i) push(r.E[i], 1);
  for (int i = 0; i < n; ++i) push(r.F[i], -1);
  while (!todo.empty()) {
    size_t k = todo.front();
    todo.pop_front();
    FMat x = r.basis[k];
    int ht = r.height[k];
    for (int i = 0; i < n; ++i) {
      push(bracket(r.E[i], x), ht + 1);
      push(bracket(r.F[i], x), ht - 1);
    }
  }
  if (r.dim() != n * (h + 1)) throw std::logic_error("basis closure: wrong dimension");
  for (int k = 0; k < r.dim(); ++k)
    if (bracket(r.rho_dual, r.basis[k]) != FieldElem(Rat(r.height[k])) * r.basis[k])
      throw std::logic_error("basis: not rho^vee-homogeneous");

  // Decomposition solver: columns are vectorized basis elements.
  {
    FMat cols(m * m, r.dim());
    for (int j = 0; j < r.dim(); ++j)
      for (int k = 0; k < m * m; ++k) cols(k, j) = r.basis[j].a[k];
    r.basis_solver_ = LinSolver<FieldElem>(cols);
    if (r.basis_solver_.rank() != r.dim()) throw std::logic_error("basis solver: rank");
  }

  // chi from the Killing form: B(x,y) = 2 h^vee (x|y) = 2 h^vee chi Tr(xy).
  {
    auto ad_of = [&](const FMat& x) {
      FMat ad(r.dim(), r.dim());
      for (int j = 0; j < r.dim(); ++j) {
        auto col = r.decompose(bracket(x, r.basis[j]));
        for (int i = 0; i < r.dim(); ++i) ad(i, j) = col[i];
      }
      return ad;
    };
    FieldElem killing = (ad_of(r.E[0]) * ad_of(r.F[0])).trace();
    FieldElem tr = (r.E[0] * r.F[0]).trace();
    FieldElem c = killing / (FieldElem(2 * r.h_dual) * tr);
    if (!c.is_rational()) throw std::logic_error("chi not rational");
    r.chi = c.rat;
  }

  // Highest/lowest root vectors.
  {
    std::vector<int> top, bot;
    for (int k = 0; k < r.dim(); ++k) {
      if (r.height[k] == h - 1) top.push_back(k);
      if (r.height[k] == -(h - 1)) bot.push_back(k);
    }
    if (top.size() != 1 || bot.size() != 1) throw std::logic_error("theta spaces not 1-dim");
    if (emtheta_from_basis) r.EmTheta = FieldElem(emtheta_scale) * r.basis[bot[0]];
    FieldElem p = r.pair(r.basis[top[0]], r.EmTheta);
    if (p.is_zero()) throw std::logic_error("(E_theta|E_-theta) degenerate");
    r.Etheta = p.inv() * r.basis[top[0]];
  }
  if (bracket(r.rho_dual, r.EmTheta) != FieldElem(Rat(-(h - 1))) * r.EmTheta)
    throw std::logic_error("E_-theta: wrong height");

  r.Lambda = LaurentMat(r.Iplus, 0) + LaurentMat(r.EmTheta, 1);

  // Residue classes of the principal gradation and the constant matrix of
  // ad_Lambda from class rr to class rr+1.
  r.class_members_.assign(h, {});
  for (int k = 0; k < r.dim(); ++k)
    r.class_members_[((r.height[k] % h) + h) % h].push_back(k);
  auto class_pos = [&](int rr, int bidx) {
    const auto& mem = r.class_members_[rr];
    for (size_t t = 0; t < mem.size(); ++t)
      if (mem[t] == bidx) return static_cast<int>(t);
    throw std::logic_error("class_pos");
  };
  r.class_ad_.assign(h, FMat());
  for (int rr = 0; rr < h; ++rr) {
    int rt = (rr + 1) % h;
    FMat ad(static_cast<int>(r.class_members_[rt].size()),
            static_cast<int>(r.class_members_[rr].size()));
    for (size_t t = 0; t < r.class_members_[rr].size(); ++t) {
      const FMat& b = r.basis[r.class_members_[rr][t]];
      for (const FMat& part : {bracket(r.Iplus, b), bracket(r.EmTheta, b)}) {
        if (part.is_zero()) continue;
        auto coords = r.decompose(part);
        for (int k = 0; k < r.dim(); ++k)
          if (!coords[k].is_zero())
            ad(class_pos(rt, k), static_cast<int>(t)) += coords[k];
      }
    }
    r.class_ad_[rr] = ad;
  }

  // Kernel basis Lambda_{m_a}.
  auto lpow = [&](int e) {
    LaurentMat p(m);
    p.add_term(0, FMat::identity(m));
    for (int i = 0; i < e; ++i) p = p * r.Lambda;
    return p;
  };
  r.Lam.assign(n, LaurentMat(m));
  for (int a = 0; a < n; ++a) {
    int ma = r.exponents[a];
    if (lam_power[a] >= 0) {
      r.Lam[a] = lpow(lam_power[a]);
    } else if (lam_power[a] == -1) {
      r.Lam[a] = lam_explicit.at(a);
    } else {
      // Ker ad_Lambda at principal degree m_a, from the class-level nullspace.
      int rr = ma % h;
      auto ker = nullspace(r.class_ad_[rr]);
      if (ker.size() != 1) throw std::logic_error("kernel solve: unexpected multiplicity");
      LaurentMat v(m);
      for (size_t t = 0; t < ker[0].size(); ++t) {
        if (ker[0][t].is_zero()) continue;
        int bidx = r.class_members_[rr][t];
        int p = (ma - r.height[bidx]) / h;
        v.add_term(p, ker[0][t] * r.basis[bidx]);
      }
      r.Lam[a] = v;
    }
  }
  // Rescale the higher partner of each (m_a, h - m_a) pair so that
  // (Lam_a|Lam_partner) = h lambda; self-paired and degenerate classes keep
  // their printed normalization.
  for (int a = 0; a < n; ++a) {
    int ma = r.exponents[a];
    if (2 * ma <= h) continue;
    if (std::count(r.exponents.begin(), r.exponents.end(), ma) != 1) continue;
    int partner = -1;
    for (int bq = 0; bq < n; ++bq)
      if (r.exponents[bq] == h - ma) partner = bq;
    if (partner < 0) continue;
    LPoly p = r.pair(r.Lam[partner], r.Lam[a]);
    FieldElem c = lp_coeff(p, 1);
    if (c.is_zero()) throw std::logic_error("partner pairing degenerate");
    r.Lam[a] = (FieldElem(Rat(h)) / c) * r.Lam[a];
  }
  for (int a = 0; a < n; ++a)
    if (!bracket(r.Lambda, r.Lam[a]).is_zero())
      throw std::logic_error("Lam[a] not in Ker ad_Lambda");

  // Gram constants: (Lam_a|Lam_b) = gram(a,b) lambda^{(m_a+m_b)/h}.
  r.gram = FMat(n, n);
  for (int a = 0; a < n; ++a)
    for (int bq = 0; bq < n; ++bq) {
      LPoly p = r.pair(r.Lam[a], r.Lam[bq]);
      int s = r.exponents[a] + r.exponents[bq];
      if (s % h != 0) {
        if (!p.empty()) throw std::logic_error("gram: unexpected nonzero pairing");
        continue;
      }
      for (const auto& [e, v] : p)
        if (e != s / h) throw std::logic_error("gram: pairing not a monomial");
      r.gram(a, bq) = lp_coeff(p, s / h);
    }

  // Augmented solvers [ad_Lambda columns | kernel columns] per residue class.
  r.class_ker_.assign(h, {});
  for (int a = 0; a < n; ++a) r.class_ker_[r.exponents[a] % h].push_back(a);
  r.class_split_.assign(h, LinSolver<FieldElem>());
  for (int rr = 0; rr < h; ++rr) {
    int rs = (rr + h - 1) % h;
    int rows = static_cast<int>(r.class_members_[rr].size());
    int imcols = static_cast<int>(r.class_members_[rs].size());
    int kcols = static_cast<int>(r.class_ker_[rr].size());
    FMat aug(rows, imcols + kcols);
    for (int i = 0; i < rows; ++i)
      for (int j = 0; j < imcols; ++j) aug(i, j) = r.class_ad_[rs](i, j);
    for (int q = 0; q < kcols; ++q) {
      int a = r.class_ker_[rr][q];
      for (const auto& [p, mat] : r.Lam[a].t) {
        auto coords = r.decompose(mat);
        for (int k = 0; k < r.dim(); ++k)
          if (!coords[k].is_zero()) aug(class_pos(rr, k), imcols + q) += coords[k];
      }
    }
    r.class_split_[rr] = LinSolver<FieldElem>(aug);
    if (r.class_split_[rr].rank() != rows) throw std::logic_error("split solver: not surjective");
  }

  // Lowest-weight vectors and their principal sl2 orbits.
  auto weights = gamma_weights(r.id, n);
  r.gamma.assign(n, FMat(m, m));
  r.orbit.assign(n, {});
  for (int a = 0; a < n; ++a) {
    int ma = r.exponents[a];
    std::vector<int> cand;
    for (int k = 0; k < r.dim(); ++k)
      if (r.height[k] == -ma) cand.push_back(k);
    FMat im(m * m, static_cast<int>(cand.size()));
    for (size_t j = 0; j < cand.size(); ++j) {
      FMat br = bracket(r.Iminus, r.basis[cand[j]]);
      for (int k = 0; k < m * m; ++k) im(k, static_cast<int>(j)) = br.a[k];
    }
    auto lw = nullspace(im);
    // Solve ad_{I+}^{2 m_a} gamma~ = top_a in the lowest-weight space, then
    // gamma^a = w_a * gamma~ (anchors the degenerate D_4 pair to Lam).
    FMat top = r.Lam[a].coeff(0);
    std::vector<FMat> lwmat, hw;
    for (const auto& cvec : lw) {
      FMat v(m, m);
      for (size_t j = 0; j < cand.size(); ++j) v += cvec[j] * r.basis[cand[j]];
      FMat u = v;
      for (int s = 0; s < 2 * ma; ++s) u = bracket(r.Iplus, u);
      lwmat.push_back(v);
      hw.push_back(u);
    }
    FMat sys(m * m, static_cast<int>(hw.size()));
    std::vector<FieldElem> rhs(m * m);
    for (size_t j = 0; j < hw.size(); ++j)
      for (int k = 0; k < m * m; ++k) sys(k, static_cast<int>(j)) = hw[j].a[k];
    for (int k = 0; k < m * m; ++k) rhs[k] = top.a[k];
    auto sol = solve_linear(sys, rhs);
    if (!sol) throw std::logic_error("gamma: top element not reachable");
    FMat g(m, m);
    for (size_t j = 0; j < hw.size(); ++j) g += (*sol)[j] * lwmat[j];
    r.gamma[a] = FieldElem(weights[a]) * g;
    r.orbit[a].push_back(r.gamma[a]);
    for (int s = 1; s <= 2 * ma; ++s)
      r.orbit[a].push_back(bracket(r.Iplus, r.orbit[a].back()));
    if (r.orbit[a].back().is_zero() || !bracket(r.Iplus, r.orbit[a].back()).is_zero())
      throw std::logic_error("gamma orbit: wrong sl2 string length");
  }

  // Orbit-basis decomposition solver.
  {
    int total = 0;
    for (int a = 0; a < n; ++a) total += 2 * r.exponents[a] + 1;
    if (total != r.dim()) throw std::logic_error("orbit basis: wrong count");
    FMat cols(m * m, total);
    int j = 0;
    for (int a = 0; a < n; ++a)
      for (const FMat& u : r.orbit[a]) {
        for (int k = 0; k < m * m; ++k) cols(k, j) = u.a[k];
        ++j;
      }
    r.orbit_solver_ = LinSolver<FieldElem>(cols);
    if (r.orbit_solver_.rank() != total) throw std::logic_error("orbit basis: not independent");
  }
}

Realization Realization::build(const AlgebraId& id) { return RealizationBuilder::make(id); }

bool Realization::in_g(const FMat& x) const {
  return static_cast<bool>(basis_solver_.solve(vec_of(x)));
}

std::vector<FieldElem> Realization::decompose(const FMat& x) const {
  auto s = basis_solver_.solve(vec_of(x));
  if (!s) throw std::domain_error("decompose: element not in g");
  return *s;
}

FieldElem Realization::pair(const FMat& x, const FMat& y) const {
  return FieldElem(chi) * (x * y).trace();
}

LPoly Realization::pair(const LaurentMat& x, const LaurentMat& y) const {
  return pairing(x, y, FieldElem(chi));
}

Realization::AdSplit Realization::split_ad(const LaurentMat& R) const {
  // Bucket homogeneous components by total principal degree.
  std::map<long, std::map<int, FieldElem>> by_deg;  // degree -> basis idx -> coeff
  for (const auto& [p, mat] : R.t) {
    auto coords = decompose(mat);
    for (int k = 0; k < dim(); ++k)
      if (!coords[k].is_zero()) by_deg[height[k] + static_cast<long>(h) * p][k] += coords[k];
  }
  AdSplit out;
  out.X = LaurentMat(m);
  for (const auto& [d, comp] : by_deg) {
    int rr = static_cast<int>(((d % h) + h) % h);
    int rs = (rr + h - 1) % h;
    const auto& mem = class_members_[rr];
    std::vector<FieldElem> rhs(mem.size(), FieldElem(0));
    for (size_t t = 0; t < mem.size(); ++t) {
      auto it = comp.find(mem[t]);
      if (it != comp.end()) rhs[t] = it->second;
    }
    auto sol = class_split_[rr].solve(rhs);
    if (!sol) throw std::logic_error("split_ad: inconsistent system");
    const auto& src = class_members_[rs];
    for (size_t t = 0; t < src.size(); ++t) {
      if ((*sol)[t].is_zero()) continue;
      long p2 = (d - 1 - height[src[t]]);
      if (p2 % h != 0) throw std::logic_error("split_ad: degree bookkeeping");
      out.X.add_term(static_cast<int>(p2 / h), (*sol)[t] * basis[src[t]]);
    }
    for (size_t q = 0; q < class_ker_[rr].size(); ++q) {
      FieldElem c = (*sol)[src.size() + q];
      if (c.is_zero()) continue;
      int a = class_ker_[rr][q];
      out.ker[{a, static_cast<int>((d - exponents[a]) / h)}] += c;
    }
  }
  for (auto it = out.ker.begin(); it != out.ker.end();)
    it = it->second.is_zero() ? out.ker.erase(it) : std::next(it);
  return out;
}

LaurentMat Realization::ker_to_mat(const std::map<std::pair<int, int>, FieldElem>& ker) const {
  LaurentMat r(m);
  for (const auto& [key, c] : ker) r = r + c * Lam[key.first].shifted(key.second);
  return r;
}

std::map<std::pair<int, int>, FieldElem> Realization::gram_solve(
    const std::vector<LPoly>& rhs) const {
  if (static_cast<int>(rhs.size()) != n) throw std::invalid_argument("gram_solve: shape");
  // Unknown c_{b,p} couples to equations (j, e) with m_b = h - m_j and
  // p = e - 1; group by (exponent value r, lambda power p).
  std::map<std::pair<int, int>, FieldElem> out;
  std::map<std::pair<int, int>, bool> blocks;  // (r, p) needing a solve
  for (int j = 0; j < n; ++j)
    for (const auto& [e, v] : rhs[j]) blocks[{h - exponents[j], e - 1}] = true;
  for (const auto& [key, unused] : blocks) {
    auto [r, p] = key;
    std::vector<int> cols, rows;
    for (int b = 0; b < n; ++b) {
      if (exponents[b] == r) cols.push_back(b);
      if (exponents[b] == h - r) rows.push_back(b);
    }
    if (cols.empty() || rows.size() != cols.size())
      throw std::logic_error("gram_solve: unmatched exponent class");
    FMat block(static_cast<int>(rows.size()), static_cast<int>(cols.size()));
    std::vector<FieldElem> b(rows.size());
    for (size_t i = 0; i < rows.size(); ++i) {
      for (size_t j = 0; j < cols.size(); ++j) block(static_cast<int>(i), static_cast<int>(j)) =
          gram(cols[j], rows[i]);
      b[i] = lp_coeff(rhs[rows[i]], p + 1);
    }
    auto sol = solve_linear(block, b);
    if (!sol) throw std::logic_error("gram_solve: singular Gram block");
    for (size_t j = 0; j < cols.size(); ++j)
      if (!(*sol)[j].is_zero()) out[{cols[j], p}] = (*sol)[j];
  }
  return out;
}

std::map<std::pair<int, int>, FieldElem> Realization::ker_project(const LaurentMat& Y) const {
  std::vector<LPoly> rhs(n);
  for (int j = 0; j < n; ++j) rhs[j] = pair(Y, Lam[j]);
  return gram_solve(rhs);
}

std::vector<std::vector<FieldElem>> Realization::decompose_orbit(const FMat& x) const {
  auto s = orbit_solver_.solve(vec_of(x));
  if (!s) throw std::domain_error("decompose_orbit: element not in g");
  std::vector<std::vector<FieldElem>> out(n);
  int j = 0;
  for (int a = 0; a < n; ++a)
    for (int sdx = 0; sdx <= 2 * exponents[a]; ++sdx) out[a].push_back((*s)[j++]);
  return out;
}

}  // namespace topode
