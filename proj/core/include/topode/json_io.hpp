#pragma once
// Deterministic JSON serialization of the exact pipeline outputs: sorted
// keys, canonical "p/q" rational strings, never floating point.

#include <string>

#include "json.hpp"
#include "topode/dual.hpp"
#include "topode/reduction.hpp"
#include "topode/resolvent.hpp"

namespace topode {

nlohmann::json json_field(const FieldElem& v);    // {"rat":"p/q","sigma":"p/q"}
nlohmann::json json_fmat(const FMat& m);          // row-major nested lists
nlohmann::json json_fseries(const FSeries& s);    // [{"zpow":k,"coeff":...}]
nlohmann::json json_mseries(const MSeries& s);    // [{"zpow":k,"coeff":matrix}]

nlohmann::json json_resolvent(const ResolventSeries& res);
nlohmann::json json_linform(const LinForm& f);    // [{"delta","u","v","coeff"}]
nlohmann::json json_reduced_system(const ReducedSystem& sys);
nlohmann::json json_essential(const EssentialSeries& es);
nlohmann::json json_dual_series(const DualSeries& ds);
nlohmann::json json_normal_form(const NormalForm& nf);

// Round-trip used by the on-disk cache of reduced systems.
ReducedSystem reduced_system_from_json(const nlohmann::json& j);

// Canonical dump: sorted keys (nlohmann's default object order), no
// locale-dependent formatting.
std::string json_dump(const nlohmann::json& j);

}  // namespace topode
