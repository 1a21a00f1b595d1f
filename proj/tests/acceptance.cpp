// Acceptance suite: one timed pass/fail line per criterion, exit nonzero on
// any failure.  Each criterion is self-contained and uses only the public
// library interface plus independent closed-form or brute-force oracles.

#include <chrono>
#include <cstdio>
#include <functional>
#include <map>
#include <string>
#include <tuple>
#include <vector>

#include "topode/airy.hpp"
#include "topode/correlators.hpp"
#include "topode/dual.hpp"
#include "topode/reduction.hpp"
#include "topode/resolvent.hpp"

using namespace topode;

namespace {

int g_failures = 0;
std::vector<std::string> g_notes;

void req(bool cond, const std::string& what) {
  if (!cond && g_notes.size() < 20) g_notes.push_back(what);
}

void run(int num, const char* name, double budget, const std::function<void()>& fn) {
  g_notes.clear();
  auto t0 = std::chrono::steady_clock::now();
  try {
    fn();
  } catch (const std::exception& e) {
    g_notes.push_back(std::string("exception: ") + e.what());
  }
  double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  bool in_budget = secs <= budget;
  bool ok = g_notes.empty() && in_budget;
  std::printf("[%s] %2d. %-52s %7.2fs (budget %gs)\n", ok ? "PASS" : "FAIL", num,
              name, secs, budget);
  if (!in_budget) std::printf("        - over time budget\n");
  for (const auto& n : g_notes) std::printf("        - %s\n", n.c_str());
  if (!ok) ++g_failures;
}

Realization R(const char* letter, int rank) {
  return Realization::build(make_algebra(letter, rank));
}

Rat dfact(long k) {  // odd double factorial, (-1)!! = 1
  Rat r = 1;
  for (long v = k; v >= 1; v -= 2) r *= v;
  return r;
}

Rat fact(long g) {
  Rat f = 1;
  for (long v = 2; v <= g; ++v) f *= v;
  return f;
}

// Gamma(top)/Gamma(bot) for top - bot a nonnegative integer.
Rat gamma_ratio(const Rat& top, const Rat& bot) {
  Rat r = 1;
  for (Rat x = bot; x < top; x += 1) r *= x;
  return r;
}

LinForm lf(std::initializer_list<std::tuple<int, int, int, Rat>> terms) {
  LinForm f;
  for (const auto& [d, u, v, c] : terms) f.add(d, u, v, FieldElem(c));
  return f;
}

FSeries trace_pair(const Realization& r, const MSeries& x, const MSeries& y) {
  MSeries p = x * y;
  FSeries t(p.h, p.known);
  for (const auto& [e, m] : p.c) t.set(e, FieldElem(r.chi) * m.trace());
  return t;
}

FMat from_triples(int n, std::vector<std::tuple<int, int, Rat>> t) {
  FMat m(n, n);
  for (auto& [i, u, v] : t) m(i, u) = FieldElem(v);
  return m;
}

void check_nf(const NormalForm& nf,
              const std::map<int, std::vector<std::tuple<int, int, Rat>>>& want,
              const char* tag) {
  for (int k = 0; k <= 2 * nf.h - 2; ++k) {
    auto it = want.find(k);
    FMat expect = it == want.end() ? FMat(nf.n, nf.n) : from_triples(nf.n, it->second);
    req(nf.V[k] == expect,
        std::string(tag) + ": V[" + std::to_string(k) + "] mismatch");
  }
}

// Brute-force order-k step: solve [Lambda, X] = RHS_k plus the orthogonality
// constraints as one dense linear system with no A/B split.
LaurentMat oracle_step(const Realization& r, int a, int k, const LaurentMat& Mk) {
  const int h = r.h, ma = r.exponents[a];
  const int d = ma - (h + 1) * (k + 1);
  std::vector<std::pair<int, int>> elems;  // (basis index, lambda power)
  for (int i = 0; i < r.dim(); ++i) {
    int num = d - r.height[i];
    if (((num % h) + h) % h == 0) elems.emplace_back(i, num / h);
  }
  LaurentMat rhs = -Mk.dlam() + FieldElem(Rat(ma, h)) * Mk.shifted(-1);
  std::vector<LaurentMat> comm;
  std::vector<std::vector<LPoly>> orth;
  LaurentMat rho(r.rho_dual, 0);
  for (auto [i, p] : elems) {
    LaurentMat x(FieldElem(1) * r.basis[i], p);
    comm.push_back(bracket(r.Lambda, x));
    std::vector<LPoly> o(r.n);
    for (int j = 0; j < r.n; ++j)
      o[j] = lp_add(r.pair(bracket(rho, x), r.Lam[j]),
                    lp_scale(FieldElem((h + 1) * (k + 1)), r.pair(x, r.Lam[j])));
    orth.push_back(o);
  }
  std::map<std::pair<int, int>, int> crows;
  for (const auto& c : comm)
    for (const auto& [p, m] : c.t)
      for (int e = 0; e < r.m * r.m; ++e)
        if (!m.a[e].is_zero()) crows.emplace(std::make_pair(p, e), 0);
  for (const auto& [p, m] : rhs.t)
    for (int e = 0; e < r.m * r.m; ++e)
      if (!m.a[e].is_zero()) crows.emplace(std::make_pair(p, e), 0);
  std::map<std::pair<int, int>, int> orows;
  for (const auto& o : orth)
    for (int j = 0; j < r.n; ++j)
      for (const auto& [p, v] : o[j]) orows.emplace(std::make_pair(j, p), 0);
  int nr = 0;
  for (auto& [key, idx] : crows) idx = nr++;
  for (auto& [key, idx] : orows) idx = nr++;
  FMat sys(nr, static_cast<int>(elems.size()));
  std::vector<FieldElem> b(nr, FieldElem(0));
  for (size_t u = 0; u < elems.size(); ++u) {
    for (const auto& [key, row] : crows)
      sys(row, static_cast<int>(u)) = comm[u].coeff(key.first).a[key.second];
    for (const auto& [key, row] : orows)
      sys(row, static_cast<int>(u)) = lp_coeff(orth[u][key.first], key.second);
  }
  for (const auto& [key, row] : crows) b[row] = rhs.coeff(key.first).a[key.second];
  auto sol = solve_linear(sys, b);
  if (!sol) throw std::runtime_error("oracle: inconsistent linear system");
  LaurentMat out(r.m);
  for (size_t u = 0; u < elems.size(); ++u)
    out.add_term(elems[u].second, (*sol)[u] * r.basis[elems[u].first]);
  return out;
}

// ---- criteria ---------------------------------------------------------------

void c1_sl2_resolvent() {
  Realization r = R("A", 1);
  MSeries s = compute_resolvent(r, 0, 10).assembled();
  req(s.known >= 31, "known bound below z^31");
  FSeries a = entry(s, 0, 0), b = entry(s, 0, 1), c = entry(s, 1, 0), d = entry(s, 1, 1);
  for (long g = 0; g <= 5; ++g) {
    Rat base = dfact(6 * g - 1) / (rat_pow(Rat(96), g) * fact(g));
    req(b.coeff(6 * g + 1) == FieldElem(base), "b coefficient g=" + std::to_string(g));
    req(c.coeff(6 * g - 1) == FieldElem(-Rat(6 * g + 1) / Rat(6 * g - 1) * base),
        "c coefficient g=" + std::to_string(g));
    if (g >= 1) {
      Rat av = -dfact(6 * g - 5) / (Rat(4) * rat_pow(Rat(96), g - 1) * fact(g - 1));
      req(a.coeff(6 * g - 3) == FieldElem(av), "a coefficient g=" + std::to_string(g));
      req(d.coeff(6 * g - 3) == FieldElem(-av), "d coefficient g=" + std::to_string(g));
    }
  }
  // Nothing off the closed-form support.
  for (const auto& [e, v] : b.c)
    if ((e - 1) % 6 != 0) req(v.is_zero(), "stray term in b");
}

void c2_first_correction() {
  for (int n : {2, 3}) {
    Realization r = R("A", n);
    for (int a = 0; a < r.n; ++a) {
      ResolventSeries M = compute_resolvent(r, a, 1);
      LaurentMat lhs = bracket(r.Lambda, M.terms[1]);
      LaurentMat rhs =
          FieldElem(Rat(1, r.h)) * bracket(LaurentMat(r.rho_dual, 0), r.Lam[a]).shifted(-1);
      req(lhs == rhs,
          "A_" + std::to_string(n) + " a=" + std::to_string(a + 1) + " bracket identity");
    }
  }
}

void c3_commutation_pairing() {
  const int K = 5;
  for (const auto& id : {make_algebra("A", 2), make_algebra("A", 3), make_algebra("B", 2),
                         make_algebra("B", 3), make_algebra("D", 4), make_algebra("G", 2)}) {
    Realization r = Realization::build(id);
    std::string nm = algebra_name(id);
    if (nm == "B3")
      req(r.gram(1, 1) == FieldElem(3), "B3: self-dual Gram constant");
    if (nm == "D4")
      req(r.gram(1, 1) == FieldElem(3) && r.gram(1, 2) == FieldElem(6) &&
              r.gram(2, 2) == FieldElem(16),
          "D4: self-dual Gram block");
    std::vector<ResolventSeries> Ms;
    for (int a = 0; a < r.n; ++a) Ms.push_back(compute_resolvent(r, a, K));
    for (int a = 0; a < r.n; ++a)
      for (int b = a; b < r.n; ++b) {
        auto rep = verify_commutation(Ms[a], Ms[b]);
        req(!rep.first_violation, nm + ": [M_a, M_b] != 0");
        req(rep.checked_through >= (r.h + 1) * K + 1 - r.h, nm + ": commutator depth");
        FSeries p = trace_pair(r, Ms[a].assembled(), Ms[b].assembled());
        // (M_a|M_b) = h delta_{a+b,n+1} on multiplicity-one exponents.  On the
        // self-dual exponent m = h/2 (B_3 and D_4 only) no rational -- for D_4
        // no real -- basis reaches that normalization; there the pairing
        // equals the recorded constant Gram block of the realization.
        FieldElem want(0);
        if (r.exponents[a] + r.exponents[b] == r.h)
          want = (2 * r.exponents[a] == r.h) ? r.gram(a, b) : FieldElem(Rat(r.h));
        req(r.gram(a, b) == want, nm + ": gram != h delta");
        if (2 * r.exponents[a] == r.h && a == b)
          req(!r.gram(a, b).is_zero(), nm + ": degenerate self-dual block");
        for (const auto& [e, v] : p.c)
          req(v == (e == 0 ? want : FieldElem(0)), nm + ": pairing term z^" + std::to_string(e));
      }
  }
}

void c4_reduced_systems() {
  {  // A_1, Eqs. (1.7)-(1.8): a = b'/2, c = -b''/2 + lambda b, reduced ODE.
    Realization r = R("A", 1);
    const ReducedSystem& sys = derive_reduced_system(r);
    req(sys.K[0][1] == lf({{0, 0, 1, Rat(-1)}}), "A_1 K_11");
    req(sys.K[0][0] == lf({{0, 0, 2, Rat(1)}, {1, 0, 0, Rat(-2)}}), "A_1 K_10");
    req(sys.row[0] == lf({{0, 0, 3, Rat(-1)}, {0, 0, 0, Rat(2)}, {1, 0, 1, Rat(4)}}),
        "A_1 reduced ODE");
  }
  {  // A_2, Eqs. (1.29)-(1.32).
    Realization r = R("A", 2);
    const ReducedSystem& sys = derive_reduced_system(r);
    req(sys.K[0][0] == lf({{0, 0, 2, Rat(1)}, {1, 1, 0, Rat(3)}}), "A_2 K_10");
    req(sys.K[0][1] == lf({{0, 0, 1, Rat(-1)}}), "A_2 K_11");
    req(sys.K[1][0] == lf({{0, 1, 4, Rat(1)}, {1, 0, 0, Rat(-2)}}), "A_2 K_20");
    req(sys.K[1][1] == lf({{0, 1, 3, Rat(-1)}}), "A_2 K_21");
    req(sys.K[1][2] == lf({{0, 1, 2, Rat(1)}}), "A_2 K_22");
    req(sys.K[1][3] == lf({{0, 1, 1, Rat(-1)}}), "A_2 K_23");
    req(sys.row[0] == lf({{0, 1, 0, Rat(-3)}, {0, 0, 3, Rat(-1)}, {1, 1, 1, Rat(-9, 2)}}),
        "A_2 row 1");
    req(sys.row[1] == lf({{0, 0, 0, Rat(2)}, {0, 1, 5, Rat(-1)}, {1, 0, 1, Rat(6)}}),
        "A_2 row 2");
    LinForm eq132 = sys.row[1] + (FieldElem(-2) * sys.row[0]).deriv();
    req(eq132 == lf({{0, 0, 0, Rat(2)}, {0, 0, 4, Rat(2)}, {0, 1, 1, Rat(15)},
                     {0, 1, 5, Rat(-1)}, {1, 1, 2, Rat(9)}, {1, 0, 1, Rat(6)}}),
        "A_2 printed row 2");
  }
  // Every supported system derives cleanly; the shape invariants (the
  // vanishing pattern and k^1_{iu0} = 0) are enforced by internal asserts.
  for (const auto& id : {make_algebra("A", 1), make_algebra("A", 2), make_algebra("A", 3),
                         make_algebra("A", 4), make_algebra("B", 2), make_algebra("B", 3),
                         make_algebra("D", 4), make_algebra("G", 2)}) {
    Realization r = Realization::build(id);
    for (auto mode : {KappaMode::Unit, KappaMode::Normalized}) {
      const ReducedSystem& sys = derive_reduced_system(r, mode);
      req(sys.n == r.n, algebra_name(id) + ": rank mismatch");
      for (int i = 0; i < sys.n; ++i)
        req(!sys.row[i].is_zero(), algebra_name(id) + ": zero reduced row");
    }
  }
}

void c5_essential_series() {
  {  // A_2 kappa-normalized series, genus <= 2.
    Realization r = R("A", 2);
    FieldElem k2 = kappa_of(3).pow(2);
    req(k2 == FieldElem(Rat(-1, 27)), "kappa^2 != -1/27");
    auto val = [&](const Rat& pre, long g, const Rat& top_off, const Rat& bot_off,
                   long pow54) {
      FieldElem num = FieldElem(pre * (g % 2 ? Rat(-1) : Rat(1)) * rat_pow(Rat(3), 7 * g) *
                                gamma_ratio(Rat(8 * g) + top_off, Rat(g) + bot_off));
      FieldElem den = FieldElem(rat_pow(Rat(24), g) * fact(g)) *
                      (FieldElem(54) * k2).pow(3 * g + pow54);
      return num / den;
    };
    for (int a = 0; a < 2; ++a) {
      auto es = essential_series(r, a, 5, KappaMode::Normalized, SignConvention::Minus);
      req(es.size() == 2, "A_2 series count");
      for (int i = 0; i < 2; ++i)
        for (int m = 1; m < 5; m += 2)
          req(es[i].coeff[m].is_zero(), "A_2 odd slot nonzero");
      for (long g = 0; g <= 2; ++g) {
        std::string tag = "A_2 a=" + std::to_string(a + 1) + " g=" + std::to_string(g);
        if (a == 0) {
          req(es[0].s == 1 && es[1].s == 10, "A_2 a=1 offsets");
          req(es[0].coeff[2 * g] == val(Rat(1, 108), g, Rat(1, 3), Rat(1, 3), -1) / k2,
              tag + " first series");
          req(es[1].coeff[2 * g] == val(Rat(-1, 72), g, Rat(10, 3), Rat(4, 3), 0) / k2,
              tag + " second series");
        } else {
          req(es[0].s == 17 && es[1].s == 2, "A_2 a=2 offsets");
          req(es[0].coeff[2 * g] == val(Rat(-81, 8), g, Rat(17, 3), Rat(5, 3), 2),
              tag + " first series");
          req(es[1].coeff[2 * g] == val(Rat(-1, 6), g, Rat(2, 3), Rat(2, 3), 0),
              tag + " second series");
        }
      }
    }
  }
  {  // A_4 last-column offsets.
    Realization r = R("A", 4);
    const long want[4] = {16, 52, 28, 4};
    for (int a = 0; a < 4; ++a) {
      auto es = essential_series(r, a, 1);
      req(es[3].s == want[a], "A_4 offset a=" + std::to_string(a + 1));
    }
  }
  // Congruences for every computed series of every supported algebra.
  for (const auto& id : {make_algebra("A", 1), make_algebra("A", 2), make_algebra("A", 3),
                         make_algebra("A", 4), make_algebra("B", 2), make_algebra("B", 3),
                         make_algebra("D", 4), make_algebra("G", 2)}) {
    Realization r = Realization::build(id);
    for (int a = 0; a < r.n; ++a) {
      auto es = essential_series(r, a, 1);
      for (int i = 0; i < r.n; ++i) {
        req((es[i].s - r.exponents[a]) % r.h == 0, algebra_name(id) + ": s = m_a mod h");
        req((es[i].s - r.exponents[i]) % (r.h + 1) == 0,
            algebra_name(id) + ": s = m_i mod h+1");
      }
    }
  }
}

void c6_normal_forms() {
  {
    const auto& nf = normal_form(R("A", 1));
    req(nf.Vm1 == std::vector<Rat>{Rat(-1, 2)}, "A_1 V[-1]");
    check_nf(nf, {{2, {{0, 0, Rat(1, 4)}}}}, "A_1");
  }
  {
    const auto& nf = normal_form(R("A", 2));
    req(nf.Vm1 == (std::vector<Rat>{Rat(-2, 3), Rat(-1, 3)}), "A_2 V[-1]");
    check_nf(nf, {{2, {{1, 0, Rat(-2, 9)}}}, {4, {{0, 1, Rat(1, 6)}}}}, "A_2");
  }
  {
    const auto& nf = normal_form(R("A", 3));
    req(nf.Vm1 == (std::vector<Rat>{Rat(-3, 4), Rat(-1, 2), Rat(-1, 4)}), "A_3 V[-1]");
    check_nf(nf, {{1, {{0, 2, Rat(-15, 8)}}},
                  {2, {{2, 0, Rat(1, 8)}}},
                  {4, {{0, 0, Rat(-3, 16)}, {1, 1, Rat(-1, 4)}}},
                  {6, {{0, 2, Rat(1, 8)}}}},
             "A_3");
  }
  {
    const auto& nf = normal_form(R("A", 4));
    check_nf(nf, {{1, {{0, 2, Rat(-792, 5)}, {1, 3, Rat(-11, 12)}}},
                  {2, {{3, 0, Rat(-2, 35)}}},
                  {4, {{1, 0, Rat(11, 210)}, {2, 1, Rat(7, 300)}}},
                  {6, {{0, 1, Rat(-66, 25)}, {1, 2, Rat(-12, 5)}}},
                  {8, {{0, 3, Rat(1, 10)}}}},
             "A_4");
  }
  {
    const auto& nf = normal_form(R("B", 2));
    req(nf.Vm1 == (std::vector<Rat>{Rat(-3, 4), Rat(-1, 4)}), "B_2 V[-1]");
    check_nf(nf, {{1, {{0, 1, Rat(15, 16)}}},
                  {2, {{1, 0, Rat(1)}}},
                  {4, {{0, 0, Rat(3, 4)}}},
                  {6, {{0, 1, Rat(1, 4)}}}},
             "B_2");
  }
  {
    const auto& nf = normal_form(R("B", 3));
    req(nf.Vm1 == (std::vector<Rat>{Rat(-5, 6), Rat(-1, 2), Rat(-1, 6)}), "B_3 V[-1]");
    check_nf(nf, {{2, {{2, 0, Rat(2, 9)}}},
                  {3, {{0, 2, Rat(91, 9)}}},
                  {6, {{0, 0, Rat(26, 27)}, {1, 1, Rat(1)}}},
                  {10, {{0, 2, Rat(1, 6)}}}},
             "B_3");
  }
  {
    const auto& nf = normal_form(R("D", 4));
    req(nf.Vm1 == (std::vector<Rat>{Rat(-5, 6), Rat(-1, 2), Rat(-1, 2), Rat(-1, 6)}),
        "D_4 V[-1]");
    check_nf(nf, {{2, {{3, 0, Rat(2, 9)}}},
                  {3, {{0, 3, Rat(91, 9)}}},
                  {6, {{0, 0, Rat(26, 27)}, {1, 1, Rat(1)}, {2, 2, Rat(1)}}},
                  {10, {{0, 3, Rat(1, 6)}}}},
             "D_4");
  }
  {  // G_2: the printed form lives at x -> rho x with rho^7 = 3/2 plus a gamma
     // rescale; equality holds on the complete set of rational invariants.
    const auto& nf = normal_form(R("G", 2));
    req(nf.Vm1 == (std::vector<Rat>{Rat(-5, 6), Rat(-1, 6)}), "G_2 V[-1]");
    check_nf(nf, {{2, {{1, 0, Rat(2, 9)}}},
                  {3, {{0, 1, Rat(91, 54)}}},
                  {6, {{0, 0, Rat(13, 81)}}},
                  {10, {{0, 1, Rat(1, 216)}}}},
             "G_2");
    const Rat p2(1, 360), p3(1820, 9), p6(13, 54), p10(5, 6);
    const Rat c2 = nf.V[2](1, 0).rat, c3 = nf.V[3](0, 1).rat, c6 = nf.V[6](0, 0).rat,
              c10 = nf.V[10](0, 1).rat;
    req(p3 * p2 / p6 == Rat(7, 3) && c3 * c2 / c6 == Rat(7, 3), "G_2 scale invariant");
    req(p6 / c6 == Rat(3, 2), "G_2 rho^7 from V[6]");
    req((p3 * p2) / (c3 * c2) == Rat(3, 2), "G_2 rho^7 from V[2]V[3]");
    req((p10 / p3) / (c10 / c3) == Rat(3, 2), "G_2 rho^7 from V[10]/V[3]");
  }
  {  // Restriction identities.
    const auto& nb = normal_form(R("B", 3));
    const auto& nd = normal_form(R("D", 4));
    const int map_d[3] = {0, 1, 3};
    for (int k = 0; k <= 10; ++k)
      for (int i = 0; i < 3; ++i)
        for (int u = 0; u < 3; ++u)
          req(nb.V[k](i, u) == nd.V[k](map_d[i], map_d[u]), "B_3 inside D_4");
    const auto& ng = normal_form(R("G", 2));
    const Rat b2 = nb.V[2](2, 0).rat, b3 = nb.V[3](0, 2).rat, b6 = nb.V[6](0, 0).rat,
              b10 = nb.V[10](0, 2).rat;
    const Rat g2 = ng.V[2](1, 0).rat, g3 = ng.V[3](0, 1).rat, g6 = ng.V[6](0, 0).rat,
              g10 = ng.V[10](0, 1).rat;
    req(g6 / b6 == Rat(1, 6), "G_2 ~ B_3 rho^7 from V[6]");
    req((g3 * g2) / (b3 * b2) == Rat(1, 6), "G_2 ~ B_3 rho^7 from V[2]V[3]");
    req((g10 / g3) / (b10 / b3) == Rat(1, 6), "G_2 ~ B_3 rho^7 from V[10]/V[3]");
  }
}

void c7_dominant_odes() {
  struct Item {
    const char* letter;
    int rank, depth;
    std::vector<std::pair<std::string, int>> odes;  // fixture name, index a
  };
  // depth - 1 slots of spacing h+1 beyond the leading power: coverage past
  // x^30 in every case.
  for (Item it : std::vector<Item>{
           {"A", 1, 12, {{"a1", 0}}},
           {"A", 2, 9, {{"a2_1", 0}, {"a2_2", 1}}},
           {"A", 3, 8, {{"a3_1", 0}, {"a3_2", 1}, {"a3_3", 2}}},
           {"A", 4, 7, {{"a4_4", 3}}},
           {"B", 2, 8, {{"b2_1", 0}, {"b2_2", 1}}},
           {"B", 3, 6, {{"d4_1", 0}, {"d4_2", 1}, {"d4_4", 2}}},
           {"D", 4, 6, {{"d4_1", 0}, {"d4_2", 1}, {"d4_2", 2}, {"d4_4", 3}}}}) {
    auto real = R(it.letter, it.rank);
    req((it.depth - 1) * (real.h + 1) >= 30,
        std::string(it.letter) + std::to_string(it.rank) + ": depth below x^30");
    auto phi = dual_matrix(real, it.depth);
    for (const auto& [name, a] : it.odes) {
      auto ode = load_dominant(name);
      FSeries r = apply_scalar_ode(ode, phi[a][a].series());
      req(r.is_zero(), name + ": residual nonzero");
    }
  }
  {  // A_4 indicial roots of the theta-form dominant equation: s_{a;4}/5 - 1.
    auto ode = load_dominant("a4_4");
    req(ode.theta_form, "a4_4 not in theta form");
    const long offs[4] = {16, 52, 28, 4};
    for (long s : offs) {
      Rat t = Rat(s, 5) - 1;
      Rat val = 0;
      for (int j = static_cast<int>(ode.coeffs.size()) - 1; j >= 0; --j)
        val = val * t + ode.coeffs[j].coeff(0).rat;
      req(val == 0, "a4_4 indicial root s=" + std::to_string(s));
    }
  }
  {  // A_4 phi_{4;4} leading coefficients.
    auto phi = dual_matrix(R("A", 4), 6);
    const auto& d = phi[3][3];
    FieldElem c0 = d.coeff[0];
    req(!c0.is_zero(), "phi_44 leading coefficient zero");
    req(d.coeff[1].is_zero() && d.coeff[3].is_zero(), "phi_44 odd slots");
    req(d.coeff[2] == FieldElem(Rat(-161) / (rat_pow(Rat(2), 10) * rat_pow(Rat(3), 5))) * c0,
        "phi_44 slot 2");
    req(d.coeff[4] == FieldElem(Rat(26605753) /
                                (rat_pow(Rat(2), 23) * rat_pow(Rat(3), 12) * rat_pow(Rat(5), 2))) *
                          c0,
        "phi_44 slot 4");
  }
}

void c8_correlators() {
  Realization a1 = R("A", 1), a2 = R("A", 2);
  {  // r = 2 one-point: <tau_{3g-2}>_g = 1/(24^g g!), g <= 4.
    auto vals = one_point(a1, 0, 10, Theory::RSpin);
    Rat f = 1, pw = 1;
    for (long g = 1; g <= 4; ++g) {
      f *= Rat(g);
      pw *= Rat(24);
      const auto& v = vals[3 * g - 2];
      Rat want = Rat(1) / (pw * f);
      want.canonicalize();
      req(v.genus_ok && v.genus == g && v.value == want, "r=2 g=" + std::to_string(g));
    }
  }
  {  // r = 3 fixed values and closed-form families.
    auto v1 = one_point(a2, 0, 17, Theory::RSpin);
    auto v2 = one_point(a2, 1, 22, Theory::RSpin);
    req(v1[1].value == Rat("1/12"), "<tau_{1,1}>");
    req(v2[6].value == Rat("1/31104"), "<tau_{2,6}>");
    req(v1[9].value == Rat("1/746496"), "<tau_{1,9}>");
    req(v2[14].value == Rat("1/4837294080"), "<tau_{2,14}>");
    for (long g = 1; g <= 3; ++g) {
      Rat d1 = 1, d2 = 1, poch1 = 1, poch2 = 1;
      for (long j = 0; j < g; ++j) {
        d1 *= Rat(46656);
        d2 *= Rat(46656);
        poch1 *= Rat(1, 3) + Rat(j);
        poch2 *= Rat(2, 3) + Rat(j);
      }
      for (long j = 1; j < g; ++j) d1 *= Rat(j);
      for (long j = 1; j <= g; ++j) d2 *= Rat(j);
      Rat w1 = Rat(1296) / (d1 * poch1), w2 = Rat(1) / (d2 * poch2);
      w1.canonicalize();
      w2.canonicalize();
      req(v1[8 * g - 7].value == w1, "family 1 g=" + std::to_string(g));
      req(v2[8 * g - 2].value == w2, "family 2 g=" + std::to_string(g));
    }
  }
  {  // ds-theory on A_2 agrees with rspin r=3 on all shared keys.
    for (int a = 0; a < 2; ++a) {
      auto rs = one_point(a2, a, 9, Theory::RSpin);
      auto ds = one_point(a2, a, 9, Theory::DS);
      req(rs.size() == ds.size(), "ds one-point size");
      for (size_t k = 0; k < rs.size() && k < ds.size(); ++k)
        req(rs[k].value == ds[k].value, "ds one-point k=" + std::to_string(k));
    }
    for (int i1 = 0; i1 < 2; ++i1)
      for (int i2 = 0; i2 < 2; ++i2) {
        auto rs = multi_point(a2, {i1, i2}, 4, Theory::RSpin);
        auto ds = multi_point(a2, {i1, i2}, 4, Theory::DS);
        for (const auto& [k, v] : rs.values)
          req(ds.values.at(k) == v, "ds two-point mismatch");
      }
  }
  {  // 2-point r = 2: symmetric, normalized values through total order 6.
    auto mp = multi_point(a1, {0, 0}, 6, Theory::RSpin);
    const std::pair<std::pair<long, long>, const char*> fixtures[] = {
        {{0, 2}, "1/24"},  {{1, 1}, "1/24"},  {{0, 5}, "1/1152"},
        {{1, 4}, "1/384"}, {{2, 3}, "29/5760"}};
    for (const auto& [k, v] : fixtures) {
      req(mp.values.at({k.first, k.second}) == Rat(v), "two-point value");
      req(mp.values.at({k.second, k.first}) == Rat(v), "two-point symmetry");
    }
    for (const auto& [k, v] : mp.values)
      if ((k[0] + k[1] + 1) % 3 != 0) req(v == 0, "two-point off-lattice value");
  }
}

void c9_oracle_equivalence() {
  for (const auto& id : {make_algebra("A", 1), make_algebra("A", 2), make_algebra("A", 3),
                         make_algebra("A", 4), make_algebra("B", 2), make_algebra("B", 3),
                         make_algebra("D", 4), make_algebra("G", 2)}) {
    Realization r = Realization::build(id);
    for (int a = 0; a < r.n; ++a) {
      ResolventSeries M = compute_resolvent(r, a, 3);
      for (int k = 0; k < 3; ++k)
        req(oracle_step(r, a, k, M.terms[k]) == M.terms[k + 1],
            algebra_name(id) + " a=" + std::to_string(a + 1) + " k=" + std::to_string(k));
    }
  }
}

void c10_numeric() {
  for (auto spec : {std::pair<const char*, int>{"A", 1}, {"B", 2}}) {
    Realization r = R(spec.first, spec.second);
    numeric::DMat A = numeric::to_dmat(r.H[0]);
    auto traj = numeric::integrate_airy_system(r, 0.0, 1.0, 10000);
    double res = numeric::check_prop_A2(traj, r, A);
    req(res < 1e-5, std::string(spec.first) + std::to_string(spec.second) +
                        ": residual " + std::to_string(res));
    double c1 = numeric::check_prop_A2(numeric::integrate_airy_system(r, 0.0, 1.0, 100), r, A);
    double c2 = numeric::check_prop_A2(numeric::integrate_airy_system(r, 0.0, 1.0, 200), r, A);
    double factor = c1 / c2;
    req(factor > 8.0 && factor < 32.0,
        std::string(spec.first) + std::to_string(spec.second) + ": convergence factor " +
            std::to_string(factor));
  }
}

}  // namespace

int main() {
  run(1, "sl2 resolvent matches the closed form", 1, c1_sl2_resolvent);
  run(2, "A_n first correction bracket identity", 1, c2_first_correction);
  run(3, "pairwise commutation and pairing at depth 5", 30, c3_commutation_pairing);
  run(4, "reduced systems: A_1, A_2, structural invariants", 10, c4_reduced_systems);
  run(5, "essential series: A_2 values, A_4 offsets, congruences", 60, c5_essential_series);
  run(6, "dual normal forms and restriction identities", 60, c6_normal_forms);
  run(7, "dominant ODE fixtures through x^30", 60, c7_dominant_odes);
  run(8, "intersection-number correlators", 300, c8_correlators);
  run(9, "brute-force oracle agrees with the recursion", 60, c9_oracle_equivalence);
  run(10, "numeric cross-check of the matrix ODE", 30, c10_numeric);
  if (g_failures) {
    std::printf("%d criterion(s) FAILED\n", g_failures);
    return 1;
  }
  std::printf("all 10 criteria passed\n");
  return 0;
}
