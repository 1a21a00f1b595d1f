#include "topode/json_io.hpp"

#include <stdexcept>

namespace topode {

namespace {

FieldElem field_from_json(const nlohmann::json& j) {
  FieldElem v;
  v.rat = rat_parse(j.at("rat").get<std::string>());
  v.sig = rat_parse(j.at("sigma").get<std::string>());
  return v;
}

LinForm linform_from_json(const nlohmann::json& j) {
  LinForm f;
  for (const auto& t : j)
    f.add(t.at("delta").get<int>(), t.at("u").get<int>(), t.at("v").get<int>(),
          field_from_json(t.at("coeff")));
  return f;
}

AlgebraId algebra_from_name(const std::string& name) {
  if (name.size() < 2) throw std::invalid_argument("unsupported algebra");
  if (name.substr(0, 2) == "G2" || name.substr(0, 2) == "g2")
    return make_algebra("G", 2);
  return make_algebra(name.substr(0, 1), std::stoi(name.substr(1)));
}

}  // namespace

nlohmann::json json_field(const FieldElem& v) {
  return {{"rat", rat_str(v.rat)}, {"sigma", rat_str(v.sig)}};
}

nlohmann::json json_fmat(const FMat& m) {
  nlohmann::json rows = nlohmann::json::array();
  for (int i = 0; i < m.r; ++i) {
    nlohmann::json row = nlohmann::json::array();
    for (int j = 0; j < m.c; ++j) row.push_back(json_field(m(i, j)));
    rows.push_back(row);
  }
  return rows;
}

nlohmann::json json_fseries(const FSeries& s) {
  nlohmann::json terms = nlohmann::json::array();
  for (const auto& [e, v] : s.c)
    terms.push_back({{"zpow", e}, {"coeff", json_field(v)}});
  return terms;
}

nlohmann::json json_mseries(const MSeries& s) {
  nlohmann::json terms = nlohmann::json::array();
  for (const auto& [e, m] : s.c)
    terms.push_back({{"zpow", e}, {"coeff", json_fmat(m)}});
  return terms;
}

nlohmann::json json_resolvent(const ResolventSeries& res) {
  nlohmann::json j;
  j["algebra"] = algebra_name(res.real->id);
  j["index"] = res.a + 1;
  j["h"] = res.real->h;
  j["kappa"] = json_field(res.kappa());
  j["known_zpow"] = res.known_bound();
  j["series"] = json_mseries(res.assembled());
  return j;
}

nlohmann::json json_linform(const LinForm& f) {
  nlohmann::json terms = nlohmann::json::array();
  for (const auto& [k, v] : f.c)
    terms.push_back(
        {{"delta", k[0]}, {"u", k[1]}, {"v", k[2]}, {"coeff", json_field(v)}});
  return terms;
}

nlohmann::json json_reduced_system(const ReducedSystem& sys) {
  nlohmann::json j;
  j["algebra"] = algebra_name(sys.id);
  j["h"] = sys.h;
  j["exponents"] = sys.exponents;
  j["kappa_mode"] = sys.mode == KappaMode::Unit ? "unit" : "normalized";
  j["kappa"] = json_field(sys.kappa);
  nlohmann::json K = nlohmann::json::array();
  for (const auto& ki : sys.K) {
    nlohmann::json row = nlohmann::json::array();
    for (const auto& f : ki) row.push_back(json_linform(f));
    K.push_back(row);
  }
  j["K"] = K;
  nlohmann::json rows = nlohmann::json::array();
  for (const auto& f : sys.row) rows.push_back(json_linform(f));
  j["rows"] = rows;
  return j;
}

ReducedSystem reduced_system_from_json(const nlohmann::json& j) {
  ReducedSystem sys;
  sys.id = algebra_from_name(j.at("algebra").get<std::string>());
  sys.h = j.at("h").get<int>();
  sys.exponents = j.at("exponents").get<std::vector<int>>();
  sys.n = static_cast<int>(sys.exponents.size());
  sys.mode = j.at("kappa_mode").get<std::string>() == "unit" ? KappaMode::Unit
                                                             : KappaMode::Normalized;
  sys.kappa = field_from_json(j.at("kappa"));
  for (const auto& ki : j.at("K")) {
    std::vector<LinForm> row;
    for (const auto& f : ki) row.push_back(linform_from_json(f));
    sys.K.push_back(std::move(row));
  }
  for (const auto& f : j.at("rows")) sys.row.push_back(linform_from_json(f));
  if (static_cast<int>(sys.row.size()) != sys.n)
    throw std::invalid_argument("reduced system JSON: row count mismatch");
  return sys;
}

nlohmann::json json_essential(const EssentialSeries& es) {
  nlohmann::json j;
  j["a"] = es.a + 1;
  j["i"] = es.i + 1;
  j["s"] = es.s;
  j["zero"] = es.zero;
  nlohmann::json coeffs = nlohmann::json::array();
  for (const auto& v : es.coeff) coeffs.push_back(json_field(v));
  j["coeffs"] = coeffs;
  return j;
}

nlohmann::json json_dual_series(const DualSeries& ds) {
  nlohmann::json j;
  j["a"] = ds.a + 1;
  j["i"] = ds.i + 1;
  j["s"] = ds.s;
  j["zero"] = ds.zero;
  nlohmann::json coeffs = nlohmann::json::array();
  for (const auto& v : ds.coeff) coeffs.push_back(json_field(v));
  j["coeffs"] = coeffs;
  return j;
}

nlohmann::json json_normal_form(const NormalForm& nf) {
  nlohmann::json j;
  j["algebra"] = algebra_name(nf.id);
  j["h"] = nf.h;
  nlohmann::json vm1 = nlohmann::json::array();
  for (const auto& v : nf.Vm1) vm1.push_back(rat_str(v));
  j["Vm1"] = vm1;
  nlohmann::json V = nlohmann::json::array();
  for (size_t k = 0; k < nf.V.size(); ++k)
    V.push_back({{"k", k}, {"matrix", json_fmat(nf.V[k])}});
  j["V"] = V;
  return j;
}

std::string json_dump(const nlohmann::json& j) { return j.dump(2) + "\n"; }

}  // namespace topode
