#include "fibdes.h"

#include <cstring>
#include <string>

#include "fibdes/report.hpp"

using namespace fibdes;

namespace {

thread_local std::string t_last_error;

char* dup_string(const std::string& s) {
    char* out = static_cast<char*>(std::malloc(s.size() + 1));
    if (out) std::memcpy(out, s.c_str(), s.size() + 1);
    return out;
}

template <typename Fn>
fibdes_status guarded(Fn&& fn) {
    try {
        fn();
        return FIBDES_OK;
    } catch (const parse_error& e) {
        t_last_error = e.what();
        return FIBDES_ERR_PARSE;
    } catch (const domain_error& e) {
        t_last_error = e.what();
        return FIBDES_ERR_DOMAIN;
    } catch (const std::exception& e) {
        t_last_error = e.what();
        return FIBDES_ERR_INTERNAL;
    }
}

json finalize(const char* command, const json& inputs, const json& results) {
    return finalize_report(command, inputs, results);
}

GateOptions options_for(uint32_t effort) {
    GateOptions opts;
    opts.effort = FactorEffort::scaled(effort == 0 ? 10 : effort);
    return opts;
}

} // namespace

struct fibdes_table {
    FactorTable table;
};

struct fibdes_design {
    IncidenceStructure design;
};

extern "C" {

const char* fibdes_version(void) {
    static const std::string v = tool_version();
    return v.c_str();
}

const char* fibdes_last_error(void) { return t_last_error.c_str(); }

void fibdes_free(char* s) { std::free(s); }

fibdes_status fibdes_fib(uint64_t t, char** out_decimal) {
    return guarded([&] { *out_decimal = dup_string(fib(t).get_str()); });
}

fibdes_status fibdes_lucas(uint64_t t, char** out_decimal) {
    return guarded([&] { *out_decimal = dup_string(lucas(t).get_str()); });
}

fibdes_status fibdes_fib_mod(uint64_t t, const char* modulus, char** out_decimal) {
    return guarded([&] {
        Int m = int_from_decimal(modulus);
        *out_decimal = dup_string(fib_mod(t, m).get_str());
    });
}

fibdes_status fibdes_pisano_period(uint64_t modulus, uint64_t* out_period) {
    return guarded([&] {
        Int pi = pisano_period(Int(static_cast<unsigned long>(modulus)));
        *out_period = pi.get_ui();
    });
}

fibdes_status fibdes_params(uint64_t m, char** out_json) {
    return guarded([&] {
        json r = finalize("params", json{{"m", m}}, params_report(m));
        *out_json = dup_string(r.dump());
    });
}

fibdes_status fibdes_brc(const char* v, const char* k, const char* lam, char** out_json) {
    return guarded([&] {
        Int vi = int_from_decimal(v), ki = int_from_decimal(k), li = int_from_decimal(lam);
        BrcVerdict verdict = brc_test(vi, ki, li);
        json r = finalize("brc", json{{"v", v}, {"k", k}, {"lambda", lam}},
                          brc_report(vi, ki, li, verdict));
        *out_json = dup_string(r.dump());
    });
}

fibdes_status fibdes_brouwer(const char* q, uint32_t t, char** out_json) {
    return guarded([&] {
        Int qi = int_from_decimal(q);
        BrouwerParams p = brouwer_params(qi, t);
        BrouwerBrcVerdict verdict = brouwer_brc(qi, t);
        json r = finalize("brouwer", json{{"q", q}, {"t", t}}, brouwer_report(p, verdict));
        *out_json = dup_string(r.dump());
    });
}

fibdes_status fibdes_table_load(const char* path, fibdes_table** out_table) {
    return guarded([&] { *out_table = new fibdes_table{FactorTable::load(path)}; });
}

uint64_t fibdes_table_size(const fibdes_table* table) {
    return table ? table->table.size() : 0;
}

void fibdes_table_free(fibdes_table* table) { delete table; }

fibdes_status fibdes_gate(uint64_t m, const fibdes_table* table, uint32_t effort,
                          char** out_json) {
    return guarded([&] {
        Verdict v = development_verdict(m, table ? &table->table : nullptr,
                                        options_for(effort));
        json r = finalize("gate", json{{"m", m}, {"effort", effort == 0 ? 10 : effort}},
                          verdict_to_json(v));
        *out_json = dup_string(r.dump());
    });
}

fibdes_status fibdes_scan(uint64_t max_m, const fibdes_table* table, uint32_t effort,
                          uint32_t jobs, char** out_json) {
    return guarded([&] {
        auto verdicts = scan(max_m, table ? &table->table : nullptr, options_for(effort),
                             jobs == 0 ? 1 : jobs);
        json r = finalize("scan", json{{"max_m", max_m}, {"effort", effort == 0 ? 10 : effort}},
                          scan_report(verdicts));
        *out_json = dup_string(r.dump());
    });
}

fibdes_status fibdes_verify_certificate(const char* certificate_json, int* out_ok,
                                        char** out_json) {
    return guarded([&] {
        json j = json::parse(certificate_json);
        Certificate c = certificate_from_json(j);
        std::string failing;
        bool ok = verify_certificate(c, &failing);
        *out_ok = ok ? 1 : 0;
        json results{{"verified", ok}};
        if (!ok) results["failing_claim"] = failing;
        json r = finalize("verify", json{{"gate", c.gate}, {"m", c.m}}, results);
        *out_json = dup_string(r.dump());
    });
}

fibdes_status fibdes_design_load(const char* path, fibdes_design** out_design) {
    return guarded([&] { *out_design = new fibdes_design{load_design_file(path)}; });
}

void fibdes_design_free(fibdes_design* design) { delete design; }

fibdes_status fibdes_design_params(const fibdes_design* design, uint32_t* out_v,
                                   uint32_t* out_k, uint32_t* out_lam) {
    return guarded([&] {
        *out_v = design->design.v;
        *out_k = design->design.k;
        *out_lam = design->design.lam;
    });
}

fibdes_status fibdes_design_verify(const fibdes_design* design, const char* auto_path,
                                   char** out_json) {
    return guarded([&] {
        const IncidenceStructure& d = design->design;
        json results{{"design", design_to_json(d)}, {"design_valid", true}};
        if (auto_path) {
            Automorphism a = load_automorphism_file(auto_path);
            bool ok = verify_automorphism(d, a);
            results["automorphism_valid"] = ok;
            if (ok) {
                results["automorphism"] = automorphism_summary(a);
                if (a.order >= 3) {
                    BoundReport b = three_block_bound(d, a);
                    results["three_block_bound"] = bound_report_to_json(b);
                    if (b.equality)
                        results["equality_case"] =
                            equality_report_to_json(equality_case_check(d, a));
                }
            }
        }
        json inputs{{"auto", auto_path ? json(auto_path) : json()}};
        json r = finalize("design verify", inputs, results);
        *out_json = dup_string(r.dump());
    });
}

fibdes_status fibdes_hadamard_design(uint32_t h, const char* kind, char** out_json) {
    return guarded([&] {
        std::string k = kind ? kind : "";
        BinaryMatrix a;
        if (k == "order3")
            a = BinaryMatrix::order3_example();
        else if (k == "order4")
            a = BinaryMatrix::order4_example();
        else
            throw domain_error("hadamard: kind must be 'order3' or 'order4'");
        if (h == 0 || (h & (h - 1)) != 0)
            throw domain_error("hadamard: partner order h must be a power of 2");
        unsigned hd = 0;
        while ((1u << hd) < h) ++hd;
        HadamardMatrix partner =
            h == 1 ? HadamardMatrix{1, {{1}}, true} : sylvester_hadamard(hd);
        HadamardMatrix prod = kronecker(sylvester_hadamard(a.dim), partner);
        IncidenceStructure d = hadamard_to_design(prod);
        Automorphism au = gl_automorphism(a, partner);
        if (!verify_automorphism(d, au))
            throw std::logic_error("hadamard: construction failed verification");
        json results{{"design", design_to_json(d)},
                     {"automorphism", automorphism_summary(au)},
                     {"three_block_bound", bound_report_to_json(three_block_bound(d, au))}};
        BoundReport b = three_block_bound(d, au);
        if (b.equality)
            results["equality_case"] = equality_report_to_json(equality_case_check(d, au));
        json r = finalize("hadamard", json{{"h", h}, {"auto", k}}, results);
        *out_json = dup_string(r.dump());
    });
}

fibdes_status fibdes_variety_lines(const char* v, const char* b, const char* r,
                                   const char* k, const char* lam, char** out_json) {
    return guarded([&] {
        DesignPoint p{rational_from_string(v), rational_from_string(b),
                      rational_from_string(r), rational_from_string(k),
                      rational_from_string(lam)};
        auto lines = lines_through(p);
        json inputs{{"v", v}, {"b", b}, {"r", r}, {"k", k}, {"lambda", lam}};
        json rep = finalize("variety lines", inputs, variety_lines_report(p, lines));
        *out_json = dup_string(rep.dump());
    });
}

} // extern "C"
