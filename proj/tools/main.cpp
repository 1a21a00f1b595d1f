// Command-line front end: exact pipeline outputs as deterministic JSON (or a
// compact text rendering), plus the floating-point airy-check cross-validator.

#include <cctype>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "topode/airy.hpp"
#include "topode/correlators.hpp"
#include "topode/json_io.hpp"

using namespace topode;

namespace {

struct CliError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

AlgebraId parse_algebra(const std::string& algebra, int rank) {
  if (algebra.empty()) throw CliError("unsupported algebra");
  std::string letter = algebra.substr(0, 1);
  std::string tail = algebra.substr(1);
  if (!tail.empty()) {
    for (char ch : tail)
      if (!std::isdigit(static_cast<unsigned char>(ch)))
        throw CliError("unsupported algebra");
    rank = std::stoi(tail);
  }
  if (rank <= 0) throw CliError("unsupported algebra");
  try {
    return make_algebra(letter, rank);
  } catch (const std::invalid_argument&) {
    throw CliError("unsupported algebra");
  }
}

void emit(const std::string& out_path, const std::string& content) {
  if (out_path.empty()) {
    std::cout << content;
    return;
  }
  std::ofstream out(out_path);
  if (!out) throw CliError("cannot open output file: " + out_path);
  out << content;
}

KappaMode parse_kappa(const std::string& s) {
  if (s == "unit") return KappaMode::Unit;
  if (s == "normalized") return KappaMode::Normalized;
  throw CliError("invalid kappa mode: " + s);
}

std::string field_text(const FieldElem& v) { return v.str(); }

std::string mseries_text(const MSeries& s) {
  std::ostringstream out;
  for (const auto& [e, m] : s.c) {
    out << "z^" << e << ":\n";
    for (int i = 0; i < m.r; ++i) {
      out << "  [";
      for (int j = 0; j < m.c; ++j)
        out << (j ? ", " : " ") << field_text(m(i, j));
      out << " ]\n";
    }
  }
  return out.str();
}

// Reduced systems are memoized on disk when TOPOLODE_CACHE_DIR is set.
const ReducedSystem& cached_reduced_system(const Realization& real, KappaMode mode) {
  static std::map<std::string, ReducedSystem> loaded;
  const char* dir = std::getenv("TOPOLODE_CACHE_DIR");
  if (dir == nullptr) return derive_reduced_system(real, mode);
  std::string key = algebra_name(real.id) +
                    (mode == KappaMode::Unit ? "_unit" : "_normalized");
  auto it = loaded.find(key);
  if (it != loaded.end()) return it->second;
  std::string path = std::string(dir) + "/" + key + ".reduced.json";
  std::ifstream in(path);
  if (in) {
    nlohmann::json j;
    in >> j;
    return loaded.emplace(key, reduced_system_from_json(j)).first->second;
  }
  const ReducedSystem& sys = derive_reduced_system(real, mode);
  std::ofstream out(path);
  if (out) out << json_dump(json_reduced_system(sys));
  return sys;
}

std::string dominant_fixture_name(const Realization& real, int index1) {
  std::string name = algebra_name(real.id);
  for (auto& ch : name) ch = static_cast<char>(std::tolower(ch));
  if (real.id.type == AlgebraType::A && real.id.rank == 1) return name;
  return name + "_" + std::to_string(index1);
}

nlohmann::json correlator_line(const Realization& real, Theory theory,
                               const std::vector<std::pair<int, long>>& tau,
                               const Rat& value) {
  nlohmann::json j;
  j["theory"] = theory == Theory::RSpin ? "rspin" : "ds";
  j["algebra"] = algebra_name(real.id);
  nlohmann::json jt = nlohmann::json::array();
  for (const auto& [a, k] : tau) jt.push_back({a + 1, k});
  j["tau"] = jt;
  long g = -1;
  correlator_genus(real, tau, g);
  j["genus"] = g;
  j["value"] = rat_str(value);
  return j;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"generalized Airy resolvents, dual Fuchsian systems, and "
               "intersection-number correlators for simple Lie algebras"};
  app.require_subcommand(1);

  std::string algebra, kappa = "unit", theory = "rspin", format = "json",
              out_path, indices_arg;
  int rank = 0, index = 1, depth = 10, points = 1, r_spin = 2, steps = 10000;

  auto add_common = [&](CLI::App* cmd, bool with_index) {
    cmd->add_option("--algebra", algebra, "algebra name, e.g. A2, B3, D4, G2");
    cmd->add_option("--rank", rank, "rank when --algebra is a bare letter");
    cmd->add_option("--depth", depth, "truncation depth");
    cmd->add_option("--format", format, "json or text")
        ->check(CLI::IsMember({"json", "text"}));
    cmd->add_option("--out", out_path, "write output to a file");
    if (with_index) cmd->add_option("--index", index, "exponent index, 1-based");
  };

  auto* c_res = app.add_subcommand("resolvent", "matrix resolvent series M_a");
  add_common(c_res, true);
  c_res->add_option("--kappa", kappa, "unit or normalized")
      ->check(CLI::IsMember({"unit", "normalized"}));

  auto* c_red = app.add_subcommand("reduce", "reduced topological ODE system");
  add_common(c_red, false);
  c_red->add_option("--kappa", kappa, "unit or normalized")
      ->check(CLI::IsMember({"unit", "normalized"}));

  auto* c_ess = app.add_subcommand("essential", "essential series of column a");
  add_common(c_ess, true);

  auto* c_dual = app.add_subcommand("dual", "dual fundamental matrix");
  add_common(c_dual, false);

  auto* c_nf = app.add_subcommand("normal-form", "dual Fuchsian normal form");
  add_common(c_nf, false);

  auto* c_dom = app.add_subcommand("dominant-check",
                                   "verify a bundled dominant scalar ODE");
  add_common(c_dom, true);

  auto* c_cor = app.add_subcommand("correlators", "intersection-number table");
  add_common(c_cor, false);
  c_cor->add_option("--theory", theory, "rspin or ds")
      ->check(CLI::IsMember({"rspin", "ds"}));
  c_cor->add_option("--r", r_spin, "r of the r-spin theory (A_{r-1})");
  c_cor->add_option("--points", points, "number of marked points");
  c_cor->add_option("--indices", indices_arg,
                    "comma-separated 1-based exponent indices, one per point");

  auto* c_airy = app.add_subcommand("airy-check",
                                    "numeric integration cross-checks");
  add_common(c_airy, false);
  c_airy->add_option("--steps", steps, "RK4 step count");

  CLI11_PARSE(app, argc, argv);

  try {
    if (c_airy->parsed()) {
      auto real = Realization::build(parse_algebra(algebra, rank));
      auto traj = numeric::integrate_airy_system(real, 0.0, 1.0, steps);
      auto A = numeric::to_dmat(real.H[0]);
      auto red = scalar_reduction(real);
      int stride = red.order <= 2 ? 1 : (red.order >= 7 ? 700 : 500);
      double c1 = numeric::check_prop_A2(
          numeric::integrate_airy_system(real, 0.0, 1.0, 100), real, A);
      double c2 = numeric::check_prop_A2(
          numeric::integrate_airy_system(real, 0.0, 1.0, 200), real, A);
      nlohmann::json j;
      j["algebra"] = algebra_name(real.id);
      j["steps"] = steps;
      j["det_drift"] = numeric::det_drift(traj);
      j["prop_a2_residual"] = numeric::check_prop_A2(traj, real, A);
      j["convergence_factor"] = c1 / c2;
      j["scalar_order"] = red.order;
      j["scalar_stride"] = stride;
      j["scalar_residual"] = numeric::scalar_residual(traj, red, 0, stride);
      std::cout << json_dump(j);
      if (!out_path.empty()) {
        std::ofstream csv(out_path);
        if (!csv) throw CliError("cannot open output file: " + out_path);
        numeric::write_csv(traj, csv);
      }
      return 0;
    }

    if (c_cor->parsed()) {
      Theory th = theory == "rspin" ? Theory::RSpin : Theory::DS;
      AlgebraId id = th == Theory::RSpin && algebra.empty()
                         ? parse_algebra("A", r_spin - 1)
                         : parse_algebra(algebra, rank);
      auto real = Realization::build(id);
      if (points < 1) throw CliError("malformed indices");
      std::vector<int> idx;
      if (!indices_arg.empty()) {
        std::stringstream ss(indices_arg);
        std::string tok;
        while (std::getline(ss, tok, ',')) {
          int v = std::stoi(tok);
          if (v < 1 || v > real.n) throw CliError("malformed indices");
          idx.push_back(v - 1);
        }
        if (static_cast<int>(idx.size()) != points)
          throw CliError("malformed indices");
      }
      std::ostringstream out;
      if (points == 1) {
        std::vector<int> cols = idx;
        if (cols.empty())
          for (int a = 0; a < real.n; ++a) cols.push_back(a);
        for (int a : cols) {
          auto vals = one_point(real, a, depth, th);
          for (const auto& v : vals) {
            if (v.value == 0) continue;
            nlohmann::json line =
                correlator_line(real, th, {{a, v.k}}, v.value);
            if (format == "text")
              out << "<tau_{" << a + 1 << "," << v.k << "}>_" << v.genus
                  << " = " << rat_str(v.value) << "\n";
            else
              out << line.dump() << "\n";
          }
        }
      } else {
        if (idx.empty()) idx.assign(points, 0);
        auto mp = multi_point(real, idx, depth, th);
        for (const auto& [ks, v] : mp.values) {
          if (v == 0) continue;
          std::vector<std::pair<int, long>> tau;
          for (int l = 0; l < points; ++l) tau.emplace_back(idx[l], ks[l]);
          if (format == "text") {
            out << "<";
            for (int l = 0; l < points; ++l)
              out << (l ? " " : "") << "tau_{" << idx[l] + 1 << "," << ks[l]
                  << "}";
            long g = -1;
            correlator_genus(real, tau, g);
            out << ">_" << g << " = " << rat_str(v) << "\n";
          } else {
            out << correlator_line(real, th, tau, v).dump() << "\n";
          }
        }
      }
      emit(out_path, out.str());
      return 0;
    }

    auto real = Realization::build(parse_algebra(algebra, rank));

    if (c_res->parsed()) {
      if (index < 1 || index > real.n) throw CliError("invalid index");
      auto res = compute_resolvent(real, index - 1, depth, parse_kappa(kappa));
      emit(out_path, format == "text" ? mseries_text(res.assembled())
                                      : json_dump(json_resolvent(res)));
      return 0;
    }
    if (c_red->parsed()) {
      const auto& sys = cached_reduced_system(real, parse_kappa(kappa));
      if (format == "text") {
        std::ostringstream out;
        for (int i = 0; i < sys.n; ++i) {
          out << "row " << i + 1 << ":";
          for (const auto& [k, v] : sys.row[i].c)
            out << "  " << (k[0] ? "lambda*" : "") << "S_" << k[1] + 1 << "^("
                << k[2] << ") * (" << field_text(v) << ")";
          out << "\n";
        }
        emit(out_path, out.str());
      } else {
        emit(out_path, json_dump(json_reduced_system(sys)));
      }
      return 0;
    }
    if (c_ess->parsed()) {
      if (index < 1 || index > real.n) throw CliError("invalid index");
      auto es = essential_series(real, index - 1, depth);
      nlohmann::json j = nlohmann::json::array();
      std::ostringstream txt;
      for (const auto& e : es) {
        j.push_back(json_essential(e));
        txt << "S_{" << e.a + 1 << ";" << e.i + 1 << "}: s=" << e.s << ",";
        for (const auto& v : e.coeff) txt << " " << field_text(v);
        txt << "\n";
      }
      emit(out_path, format == "text" ? txt.str() : json_dump(j));
      return 0;
    }
    if (c_dual->parsed()) {
      auto phi = dual_matrix(real, depth);
      nlohmann::json j = nlohmann::json::array();
      std::ostringstream txt;
      for (const auto& row : phi)
        for (const auto& d : row) {
          j.push_back(json_dual_series(d));
          txt << "phi_{" << d.a + 1 << ";" << d.i + 1 << "}: s=" << d.s << ",";
          for (const auto& v : d.coeff) txt << " " << field_text(v);
          txt << "\n";
        }
      emit(out_path, format == "text" ? txt.str() : json_dump(j));
      return 0;
    }
    if (c_nf->parsed()) {
      const auto& nf = normal_form(cached_reduced_system(real, KappaMode::Unit));
      if (format == "text") {
        std::ostringstream out;
        out << "V[-1] diag:";
        for (const auto& v : nf.Vm1) out << " " << rat_str(v);
        out << "\n";
        for (size_t k = 0; k < nf.V.size(); ++k) {
          if (nf.V[k].is_zero()) continue;
          out << "V[" << k << "]:\n";
          for (int i = 0; i < nf.n; ++i) {
            out << "  [";
            for (int u = 0; u < nf.n; ++u)
              out << (u ? ", " : " ") << field_text(nf.V[k](i, u));
            out << " ]\n";
          }
        }
        emit(out_path, out.str());
      } else {
        emit(out_path, json_dump(json_normal_form(nf)));
      }
      return 0;
    }
    if (c_dom->parsed()) {
      if (index < 1 || index > real.n) throw CliError("invalid index");
      std::string name = dominant_fixture_name(real, index);
      ScalarODE ode;
      try {
        ode = load_dominant(name);
      } catch (const std::runtime_error&) {
        throw CliError("no dominant fixture for " + algebra_name(real.id) +
                       " row " + std::to_string(index));
      }
      auto phi = dual_matrix(real, depth);
      bool ok = true;
      long through = 0;
      for (int a = 0; a < real.n; ++a) {
        const auto& d = phi[index - 1][a];
        if (d.zero) continue;
        FSeries res = apply_scalar_ode(ode, d.series());
        through = std::max(through, res.known);
        for (const auto& [e, v] : res.c)
          if (!v.is_zero()) ok = false;
      }
      nlohmann::json j;
      j["ode"] = name;
      j["algebra"] = algebra_name(real.id);
      j["row"] = index;
      j["annihilated"] = ok;
      j["checked_through_zpow"] = through;
      emit(out_path, format == "text"
                         ? name + (ok ? ": annihilated\n" : ": FAILED\n")
                         : json_dump(j));
      return ok ? 0 : 1;
    }
  } catch (const CliError& e) {
    std::cerr << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
