#ifndef FIBDES_REPORT_HPP
#define FIBDES_REPORT_HPP

#include <string>
#include <vector>

#include <json.hpp>

#include "fibdes/devgate.hpp"
#include "fibdes/incidence.hpp"
#include "fibdes/params.hpp"
#include "fibdes/variety.hpp"

namespace fibdes {

// Stable, archivable JSON: object keys sorted, every big integer a decimal
// string, rationals as "p/q", no floating point anywhere.

using json = nlohmann::json;

json certificate_to_json(const Certificate& c);
Certificate certificate_from_json(const json& j);

json gate_result_to_json(const GateResult& g);

// embeds the certificate and its fresh verify_certificate() status
json verdict_to_json(const Verdict& v);

json scan_report(const std::vector<Verdict>& verdicts);

json params_report(FibIndex m);
json brc_report(const Int& v, const Int& k, const Int& lam, const BrcVerdict& verdict);
json brouwer_report(const BrouwerParams& p, const BrouwerBrcVerdict& verdict);

json design_to_json(const IncidenceStructure& d);
json bound_report_to_json(const BoundReport& b);
json equality_report_to_json(const EqualityCaseReport& r);
json automorphism_summary(const Automorphism& a);

json design_point_to_json(const DesignPoint& p);
json variety_lines_report(const DesignPoint& p0, const std::vector<VarietyLine>& lines);

// wraps results with schema, version, command echo and a deterministic
// FNV-1a content hash
json finalize_report(const std::string& command, const json& inputs, const json& results);

std::string tool_version();

} // namespace fibdes

#endif
