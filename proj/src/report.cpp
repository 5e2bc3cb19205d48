#include "fibdes/report.hpp"

namespace fibdes {

namespace {

const char* outcome_name(GateOutcome o) {
    switch (o) {
        case GateOutcome::RuledOut: return "ruled_out";
        case GateOutcome::Pass: return "pass";
        case GateOutcome::Inconclusive: return "inconclusive";
        case GateOutcome::NotApplicable: return "not_applicable";
    }
    return "?";
}

json int_str(const Int& v) { return v.get_str(); }

json rat_str(const Rational& v) { return to_string(v); }

json witness_to_json(const TernaryWitness& w) {
    return json{{"x", int_str(w.x)}, {"y", int_str(w.y)}, {"z", int_str(w.z)}};
}

} // namespace

std::string tool_version() { return "0.1.0"; }

json certificate_to_json(const Certificate& c) {
    json claims = json::object();
    if (c.m_mod_12) claims["m_mod_12"] = *c.m_mod_12;
    if (c.fib_m_mod_8) claims["fib_m_mod_8"] = *c.fib_m_mod_8;
    if (c.m_mod_216) claims["m_mod_216"] = *c.m_mod_216;
    if (c.nu3_fib_m_minus_1) claims["nu3_fib_m_minus_1"] = *c.nu3_fib_m_minus_1;
    if (c.fib_m_mod_3) claims["fib_m_mod_3"] = *c.fib_m_mod_3;
    if (c.p) claims["p"] = int_str(*c.p);
    if (c.index) claims["index"] = *c.index;
    if (!c.squarefree_primes.empty()) {
        json arr = json::array();
        for (const auto& q : c.squarefree_primes) arr.push_back(int_str(q));
        claims["squarefree_primes"] = arr;
    }
    if (c.q) claims["q"] = int_str(*c.q);
    if (c.q_valuation) claims["q_valuation"] = *c.q_valuation;
    if (c.order) claims["order"] = int_str(*c.order);
    if (!c.p_minus_1_factors.empty()) {
        json arr = json::array();
        for (const auto& pp : c.p_minus_1_factors)
            arr.push_back(json::array({int_str(pp.prime), pp.exponent}));
        claims["p_minus_1"] = arr;
    }
    return json{{"schema", 1}, {"gate", c.gate}, {"m", c.m}, {"claims", claims}};
}

Certificate certificate_from_json(const json& j) {
    Certificate c;
    c.gate = j.at("gate").get<std::string>();
    c.m = j.at("m").get<FibIndex>();
    const json& claims = j.at("claims");
    auto get_u = [&](const char* key) -> std::optional<unsigned> {
        if (!claims.contains(key)) return std::nullopt;
        return claims.at(key).get<unsigned>();
    };
    auto get_int = [&](const char* key) -> std::optional<Int> {
        if (!claims.contains(key)) return std::nullopt;
        return int_from_decimal(claims.at(key).get<std::string>());
    };
    c.m_mod_12 = get_u("m_mod_12");
    c.fib_m_mod_8 = get_u("fib_m_mod_8");
    c.m_mod_216 = get_u("m_mod_216");
    c.nu3_fib_m_minus_1 = get_u("nu3_fib_m_minus_1");
    c.fib_m_mod_3 = get_u("fib_m_mod_3");
    c.p = get_int("p");
    if (claims.contains("index")) c.index = claims.at("index").get<FibIndex>();
    if (claims.contains("squarefree_primes"))
        for (const auto& s : claims.at("squarefree_primes"))
            c.squarefree_primes.push_back(int_from_decimal(s.get<std::string>()));
    c.q = get_int("q");
    c.q_valuation = get_u("q_valuation");
    c.order = get_int("order");
    if (claims.contains("p_minus_1"))
        for (const auto& pair : claims.at("p_minus_1"))
            c.p_minus_1_factors.push_back(
                {int_from_decimal(pair.at(0).get<std::string>()), pair.at(1).get<unsigned>()});
    return c;
}

json gate_result_to_json(const GateResult& g) {
    json out{{"gate", gate_name(g.gate)}, {"outcome", outcome_name(g.outcome)},
             {"note", g.note}};
    if (g.certificate) out["certificate"] = certificate_to_json(*g.certificate);
    return out;
}

json verdict_to_json(const Verdict& v) {
    json out{{"m", v.m}, {"status", verdict_status_name(v.status)}};
    json reasons = json::array();
    for (const auto& g : v.reasons) reasons.push_back(gate_result_to_json(g));
    out["reasons"] = reasons;
    if (!v.missing.empty()) out["missing"] = v.missing;
    if (v.certificate) {
        out["certificate"] = certificate_to_json(*v.certificate);
        std::string failing;
        bool ok = verify_certificate(*v.certificate, &failing);
        out["certificate_verified"] = ok;
        if (!ok) out["certificate_failure"] = failing;
    }
    if (v.status == VerdictStatus::RuledOut || v.status == VerdictStatus::NoDesignByBrc)
        out["scope"] = "no development in any group, Abelian or not";
    return out;
}

json scan_report(const std::vector<Verdict>& verdicts) {
    json arr = json::array();
    json summary{{"trivial_exists", json::array()},
                 {"no_design_by_brc", json::array()},
                 {"ruled_out", json::array()},
                 {"inconclusive", json::array()}};
    for (const auto& v : verdicts) {
        arr.push_back(verdict_to_json(v));
        switch (v.status) {
            case VerdictStatus::TrivialExists: summary["trivial_exists"].push_back(v.m); break;
            case VerdictStatus::NoDesignByBrc: summary["no_design_by_brc"].push_back(v.m); break;
            case VerdictStatus::RuledOut: summary["ruled_out"].push_back(v.m); break;
            case VerdictStatus::Inconclusive: summary["inconclusive"].push_back(v.m); break;
        }
    }
    return json{{"verdicts", arr}, {"summary", summary}};
}

json params_report(FibIndex m) {
    FibParams f = fibonacci_params(m);
    ResidualParams r = residual_params(m);
    return json{{"m", m},
                {"fibonacci_design",
                 {{"v", int_str(f.v)}, {"k", int_str(f.k)}, {"lambda", int_str(f.lam)},
                  {"n", int_str(f.n)}}},
                {"quasi_residual",
                 {{"v", int_str(r.v)}, {"b", int_str(r.b)}, {"r", int_str(r.r)},
                  {"k", int_str(r.k)}, {"lambda", int_str(r.lam)}}}};
}

json brc_report(const Int& v, const Int& k, const Int& lam, const BrcVerdict& verdict) {
    const char* status = nullptr;
    switch (verdict.status) {
        case BrcStatus::PassEven: status = "PassEven"; break;
        case BrcStatus::FailEven: status = "FailEven"; break;
        case BrcStatus::PassOdd: status = "PassOdd"; break;
        case BrcStatus::FailOdd: status = "FailOdd"; break;
    }
    json out{{"v", int_str(v)}, {"k", int_str(k)}, {"lambda", int_str(lam)},
             {"n", int_str(k - lam)}, {"status", status}, {"passes", verdict.passed()},
             {"detail", verdict.detail}};
    if (verdict.witness) out["witness"] = witness_to_json(*verdict.witness);
    return out;
}

json brouwer_report(const BrouwerParams& p, const BrouwerBrcVerdict& verdict) {
    json out{{"q", int_str(p.q)}, {"t", p.t},
             {"v", int_str(p.v)}, {"k", int_str(p.k)}, {"lambda", int_str(p.lam)},
             {"brc_pass", verdict.pass}, {"detail", verdict.detail}};
    if (verdict.witness) out["witness"] = witness_to_json(*verdict.witness);
    return out;
}

json design_to_json(const IncidenceStructure& d) {
    return json{{"v", d.v}, {"k", d.k}, {"lambda", d.lam}, {"n", d.order()},
                {"blocks", d.blocks.size()}};
}

json bound_report_to_json(const BoundReport& b) {
    return json{{"fixed_points", b.f}, {"bound", b.bound}, {"equality", b.equality},
                {"longest_cycle", b.l}, {"fixed_in_longest_cycle_block", b.f0}};
}

json equality_report_to_json(const EqualityCaseReport& r) {
    return json{{"l", r.l}, {"order", r.order}, {"f0", r.f0},
                {"l_at_most_4", r.l_at_most_4}, {"order_equals_l", r.order_equals_l},
                {"f0_bound_ok", r.f0_bound_ok}, {"union_size", r.union_size},
                {"triple_intersection", r.triple_intersection},
                {"union_identity_ok", r.union_identity_ok}, {"passed", r.passed()}};
}

json automorphism_summary(const Automorphism& a) {
    CycleStructure cs = cycle_structure(a);
    json cycles = json::array();
    for (unsigned len : cs.block_cycles) cycles.push_back(len);
    unsigned fixed = 0;
    for (unsigned i = 0; i < a.point_perm.size(); ++i)
        if (a.point_perm[i] == i) ++fixed;
    return json{{"order", a.order}, {"fixed_points", fixed}, {"cycle_lengths", cycles}};
}

json design_point_to_json(const DesignPoint& p) {
    return json{{"v", rat_str(p.v)}, {"b", rat_str(p.b)}, {"r", rat_str(p.r)},
                {"k", rat_str(p.k)}, {"lambda", rat_str(p.lam)}};
}

json variety_lines_report(const DesignPoint& p0, const std::vector<VarietyLine>& lines) {
    json arr = json::array();
    for (const auto& l : lines) {
        json dir = json::array();
        for (const auto& c : l.direction) dir.push_back(rat_str(c));
        json entry{{"direction", dir}, {"exact", l.exact}, {"multiplicity", l.multiplicity},
                   {"tag", line_tag_name(l.tag)},
                   {"metis_relation", relation_along_line(l, metis_relation())}};
        if (!l.exact) entry["residual_below"] = "1e-9";
        arr.push_back(entry);
    }
    unsigned total = 0;
    for (const auto& l : lines) total += l.multiplicity;
    return json{{"point", design_point_to_json(p0)},
                {"q_value", rat_str(q_value(p0))},
                {"fisher_factor", p0.v == 0 ? json() : json(rat_str(fisher_factor(p0)))},
                {"lines", arr},
                {"line_count_with_multiplicity", total},
                {"classifier", "operational"}};
}

json finalize_report(const std::string& command, const json& inputs, const json& results) {
    json out{{"schema", 1}, {"tool", "fibdes"}, {"version", tool_version()},
             {"command", command}, {"inputs", inputs}, {"results", results}};
    std::string canon = out.dump();
    std::uint64_t h = 1469598103934665603ull; // FNV-1a 64
    for (unsigned char ch : canon) {
        h ^= ch;
        h *= 1099511628211ull;
    }
    char buf[17];
    std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
    out["run_hash"] = buf;
    return out;
}

} // namespace fibdes
