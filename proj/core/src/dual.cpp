#include "topode/dual.hpp"

#include <fstream>
#include <mutex>
#include <sstream>

#include "json.hpp"

namespace topode {

FSeries DualSeries::series() const {
  FSeries r(h, s - h + lattice_step() * (static_cast<long>(coeff.size()) - 1));
  for (size_t m = 0; m < coeff.size(); ++m)
    r.set(s - h + lattice_step() * static_cast<long>(m), coeff[m]);
  return r;
}

DualSeries borel_transform(const EssentialSeries& es) {
  if (es.s <= 0) throw std::invalid_argument("borel_transform: nonpositive offset");
  DualSeries d;
  d.a = es.a;
  d.i = es.i;
  d.h = es.h;
  d.s = es.s;
  d.zero = es.zero;
  for (size_t m = 0; m < es.coeff.size(); ++m)
    d.coeff.push_back(
        es.coeff[m] *
        FieldElem(Rat(1) / pochhammer(Rat(es.s, es.h), (es.h + 1) * static_cast<long>(m))));
  return d;
}

EssentialSeries inverse_borel(const DualSeries& ds) {
  EssentialSeries es;
  es.a = ds.a;
  es.i = ds.i;
  es.h = ds.h;
  es.s = ds.s;
  es.zero = ds.zero;
  for (size_t m = 0; m < ds.coeff.size(); ++m)
    es.coeff.push_back(
        ds.coeff[m] *
        FieldElem(pochhammer(Rat(ds.s, ds.h), (ds.h + 1) * static_cast<long>(m))));
  return es;
}

std::pair<Mat<Poly>, Mat<Poly>> build_BC(const ReducedSystem& sys) {
  const int n = sys.n, h = sys.h;
  Mat<Poly> B(n, n), C(n, n);
  for (int j = 0; j < n; ++j)
    for (int u = 0; u < n; ++u) {
      for (int v = 1; v <= h; ++v) {
        FieldElem p1 = sys.p1(v, j, u);
        if (p1.is_zero()) continue;
        FieldElem sgn((v % 2) ? Rat(-1) : Rat(1));
        B(j, u) = B(j, u) + Poly::monomial(sgn * p1, v);
        C(j, u) = C(j, u) - Poly::monomial(sgn * FieldElem(Rat(v)) * p1, v - 1);
      }
      for (int v = 0; v <= 2 * h - 1; ++v) {
        FieldElem p0 = sys.p0(v, j, u);
        if (p0.is_zero()) continue;
        FieldElem sgn((v % 2) ? Rat(-1) : Rat(1));
        C(j, u) = C(j, u) - Poly::monomial(sgn * p0, v);
      }
    }
  return {B, C};
}

namespace {

RatFun rmat_det(RMat m) {
  if (m.r != m.c) throw std::invalid_argument("rmat_det: not square");
  RatFun det(1);
  for (int col = 0; col < m.c; ++col) {
    int piv = -1;
    for (int row = col; row < m.r; ++row)
      if (!m(row, col).is_zero()) {
        piv = row;
        break;
      }
    if (piv < 0) return RatFun(0);
    if (piv != col) {
      for (int k = 0; k < m.c; ++k) std::swap(m(piv, k), m(col, k));
      det = -det;
    }
    det *= m(col, col);
    RatFun inv = m(col, col).inv();
    for (int row = col + 1; row < m.r; ++row) {
      if (m(row, col).is_zero()) continue;
      RatFun f = m(row, col) * inv;
      for (int k = col; k < m.c; ++k) m(row, k) -= f * m(col, k);
    }
  }
  return det;
}

}  // namespace

NormalForm normal_form(const ReducedSystem& sys) {
  auto [B, C] = build_BC(sys);
  const int n = sys.n, h = sys.h;
  RMat rb(n, n), rc(n, n);
  for (int i = 0; i < n; ++i)
    for (int u = 0; u < n; ++u) {
      if (!B(i, u).is_zero() && B(i, u).coeff(0) != FieldElem(0))
        throw std::logic_error("build_BC: B entry not divisible by x");
      rb(i, u) = RatFun(B(i, u));
      rc(i, u) = RatFun(C(i, u));
    }
  // det B = const * x^n with nonzero constant (Eq. 3.40).
  RatFun det = rmat_det(rb);
  if (!det.is_polynomial() || det.num.deg() != n)
    throw std::logic_error("build_BC: det B is not a degree-n monomial");
  for (int d = 0; d < n; ++d)
    if (!det.num.coeff(d).is_zero())
      throw std::logic_error("build_BC: det B has a lower-order term");

  RMat M = mat_inverse(rb) * rc;
  NormalForm nf;
  nf.id = sys.id;
  nf.n = n;
  nf.h = h;
  nf.exponents = sys.exponents;
  nf.Vm1.assign(n, Rat(0));
  nf.V.assign(2 * h - 1, FMat(n, n));
  for (int i = 0; i < n; ++i)
    for (int u = 0; u < n; ++u) {
      // x * entry must be polynomial of degree <= 2h - 1 (simple pole only).
      RatFun e = M(i, u) * RatFun(Poly::x());
      if (!e.is_polynomial())
        throw std::logic_error("normal_form: pole beyond first order at x = 0");
      if (e.num.deg() > 2 * h - 1)
        throw std::logic_error("normal_form: polynomial part exceeds degree 2h-2");
      FieldElem res = e.num.coeff(0);
      if (i != u) {
        if (!res.is_zero())
          throw std::logic_error("normal_form: off-diagonal residue at x = 0");
      } else {
        if (!(res == FieldElem(Rat(-sys.exponents[n - 1 - i], h))))
          throw std::logic_error("normal_form: wrong V_{-1} diagonal");
        nf.Vm1[i] = Rat(-sys.exponents[n - 1 - i], h);
        nf.Vm1[i].canonicalize();
      }
      for (int k = 0; k <= 2 * h - 2; ++k) nf.V[k](i, u) = e.num.coeff(k + 1);
    }
  return nf;
}

const NormalForm& normal_form(const Realization& real) {
  static std::mutex mu;
  static std::map<std::string, NormalForm> cache;
  std::lock_guard<std::mutex> lock(mu);
  std::string key = algebra_name(real.id);
  auto it = cache.find(key);
  if (it == cache.end())
    it = cache.emplace(key, normal_form(derive_reduced_system(real, KappaMode::Unit))).first;
  return it->second;
}

std::vector<std::vector<DualSeries>> dual_matrix(const Realization& real, int depth) {
  std::vector<std::vector<DualSeries>> phi(real.n,
                                           std::vector<DualSeries>(real.n));
  for (int a = 0; a < real.n; ++a) {
    auto es = essential_series(real, a, depth);
    const long ma = real.exponents[a];
    for (int i = 0; i < real.n; ++i) {
      phi[i][a] = borel_transform(es[i]);
      // Rebase from Gamma(s_ai/h) to the column-wide Gamma(m_a/h):
      // Gamma(s/h) = Gamma(m_a/h) (m_a/h)_t with t = (s - m_a)/h.
      long t = (phi[i][a].s - ma) / real.h;
      FieldElem f(Rat(1) / pochhammer(Rat(ma, real.h), t));
      for (auto& c : phi[i][a].coeff) c = c * f;
    }
  }
  return phi;
}

std::vector<FSeries> dual_residual(const NormalForm& nf, const std::vector<FSeries>& phi) {
  if (static_cast<int>(phi.size()) != nf.n)
    throw std::invalid_argument("dual_residual: wrong column size");
  std::vector<FSeries> out;
  for (int i = 0; i < nf.n; ++i) {
    FSeries r = d_dx(phi[i]);
    r = r - scale(FieldElem(nf.Vm1[i]), phi[i].shifted(-nf.h));
    for (int k = 0; k <= 2 * nf.h - 2; ++k)
      for (int u = 0; u < nf.n; ++u) {
        FieldElem v = nf.V[k](i, u);
        if (!v.is_zero()) r = r - scale(v, phi[u].shifted(static_cast<long>(nf.h) * k));
      }
    out.push_back(r.drop_beyond_known());
  }
  return out;
}

ScalarODE parse_scalar_ode(const std::string& json_text) {
  nlohmann::json j = nlohmann::json::parse(json_text);
  ScalarODE ode;
  ode.order = j.at("order").get<int>();
  ode.theta_form = j.at("theta_form").get<bool>();
  for (const auto& cj : j.at("coeffs")) {
    Poly p;
    for (const auto& term : cj)
      p = p + Poly::monomial(FieldElem(rat_parse(term.at(1).get<std::string>())),
                             term.at(0).get<int>());
    ode.coeffs.push_back(p);
  }
  if (static_cast<int>(ode.coeffs.size()) != ode.order + 1)
    throw std::invalid_argument("scalar ODE: coefficient count mismatch");
  return ode;
}

ScalarODE load_dominant(const std::string& name) {
  std::string path = std::string(TOPODE_DATA_DIR) + "/dominant/" + name + ".json";
  std::ifstream in(path);
  if (!in) throw std::runtime_error("load_dominant: cannot open " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_scalar_ode(ss.str());
}

FSeries apply_scalar_ode(const ScalarODE& ode, const FSeries& phi) {
  const int h = phi.h;
  FSeries out(h, phi.known);
  bool first = true;
  for (int j = 0; j <= ode.order; ++j) {
    if (ode.coeffs[j].is_zero()) continue;
    FSeries d = phi;
    if (ode.theta_form) {
      for (int t = 0; t < j; ++t) {
        FSeries nd(d.h, d.known);
        for (const auto& [e, v] : d.c) nd.set(e, FieldElem(Rat(e, h)) * v);
        d = nd;
      }
    } else {
      for (int t = 0; t < j; ++t) d = d_dx(d);
    }
    for (int deg = 0; deg <= ode.coeffs[j].deg(); ++deg) {
      FieldElem cv = ode.coeffs[j].coeff(deg);
      if (cv.is_zero()) continue;
      FSeries term = scale(cv, d.shifted(static_cast<long>(h) * deg));
      out = first ? term : out + term;
      first = false;
    }
  }
  return out.drop_beyond_known();
}

}  // namespace topode
