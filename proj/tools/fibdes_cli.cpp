// fibdes command-line front end. Talks to the core exclusively through the
// C API in fibdes.h; the JSON it prints with --json is the library's own
// report, byte for byte.

#include <cstdio>
#include <cstdlib>
#include <memory>
#include <string>

#include <CLI11.hpp>
#include <json.hpp>

#include "fibdes.h"

namespace {

using nlohmann::json;

struct CString {
    char* ptr = nullptr;
    ~CString() { fibdes_free(ptr); }
    std::string str() const { return ptr ? ptr : ""; }
};

int status_to_exit(fibdes_status st) {
    switch (st) {
        case FIBDES_OK: return 0;
        case FIBDES_ERR_PARSE: return 2;
        default: return 1;
    }
}

int fail(fibdes_status st) {
    std::fprintf(stderr, "fibdes: %s\n", fibdes_last_error());
    return status_to_exit(st);
}

void print_gate_human(const json& rep) {
    const json& res = rep.at("results");
    std::printf("m = %llu: %s\n",
                static_cast<unsigned long long>(res.at("m").get<uint64_t>()),
                res.at("status").get<std::string>().c_str());
    if (res.contains("scope"))
        std::printf("  scope: %s\n", res.at("scope").get<std::string>().c_str());
    for (const auto& g : res.at("reasons"))
        std::printf("  [%s] %s: %s\n", g.at("outcome").get<std::string>().c_str(),
                    g.at("gate").get<std::string>().c_str(),
                    g.at("note").get<std::string>().c_str());
    if (res.contains("missing"))
        for (const auto& line : res.at("missing"))
            std::printf("  missing: %s\n", line.get<std::string>().c_str());
    if (res.contains("certificate")) {
        std::printf("  certificate: %s\n", res.at("certificate").dump().c_str());
        std::printf("  certificate verified: %s\n",
                    res.at("certificate_verified").get<bool>() ? "yes" : "NO");
    }
}

int emit(fibdes_status st, const CString& out, bool want_json,
         void (*human)(const json&) = nullptr) {
    if (st != FIBDES_OK) return fail(st);
    if (want_json || !human) {
        std::printf("%s\n", out.ptr);
        return 0;
    }
    human(json::parse(out.str()));
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Fibonacci-design toolkit: parameters, BRC admissibility, difference-set "
                 "development certificates, Hadamard constructions, variety lines"};
    app.set_help_flag("--help", "print help"); // frees -h / --h for the hadamard partner order
    app.require_subcommand(1);
    bool as_json = false;
    app.add_flag("--json", as_json, "machine-readable JSON report");

    // fib
    uint64_t fib_t = 0;
    bool fib_lucas = false;
    std::string fib_mod;
    auto* cmd_fib = app.add_subcommand("fib", "Fibonacci / Lucas numbers");
    cmd_fib->add_option("t", fib_t, "index")->required();
    cmd_fib->add_flag("--lucas", fib_lucas, "Lucas number instead");
    cmd_fib->add_option("--mod", fib_mod, "reduce modulo this integer");

    // params
    uint64_t params_m = 0;
    auto* cmd_params = app.add_subcommand("params", "Fibonacci design parameters for odd m");
    cmd_params->add_option("m", params_m, "odd index >= 3")->required();

    // brc
    std::string brc_v, brc_k, brc_lam;
    auto* cmd_brc = app.add_subcommand("brc", "Bruck-Ryser-Chowla test for (v,k,lambda)");
    cmd_brc->add_option("v", brc_v)->required();
    cmd_brc->add_option("k", brc_k)->required();
    cmd_brc->add_option("lambda", brc_lam)->required();

    // gate
    uint64_t gate_m = 0;
    std::string gate_table;
    uint32_t gate_effort = 10;
    auto* cmd_gate = app.add_subcommand("gate", "development nonexistence verdict for one m");
    cmd_gate->add_option("m", gate_m, "odd index >= 3")->required();
    cmd_gate->add_option("--table", gate_table, "factor table file");
    cmd_gate->add_option("--effort", gate_effort, "factoring effort multiplier");

    // scan
    uint64_t scan_max = 0;
    std::string scan_table;
    uint32_t scan_effort = 10, scan_jobs = 1;
    auto* cmd_scan = app.add_subcommand("scan", "development verdicts for every odd m <= max");
    cmd_scan->add_option("--max", scan_max, "largest index")->required();
    cmd_scan->add_option("--table", scan_table, "factor table file");
    cmd_scan->add_option("--effort", scan_effort, "factoring effort multiplier");
    cmd_scan->add_option("--jobs", scan_jobs, "worker threads");

    // brouwer
    std::string brouwer_q;
    uint32_t brouwer_t = 0;
    auto* cmd_brouwer = app.add_subcommand("brouwer", "Brouwer family parameters and BRC");
    cmd_brouwer->add_option("q", brouwer_q, "prime power (power of 2 for the BRC analysis)")
        ->required();
    cmd_brouwer->add_option("t", brouwer_t, "exponent >= 2")->required();

    // hadamard
    uint32_t had_d = 0, had_h = 0;
    std::string had_auto;
    auto* cmd_had = app.add_subcommand(
        "hadamard", "Sylvester/Kronecker Hadamard design with a GL-induced automorphism");
    cmd_had->add_option("--d", had_d, "Sylvester dimension of the left factor (2 or 3)")
        ->required();
    cmd_had->add_option("--h", had_h, "order of the Kronecker partner (power of 2)")->required();
    cmd_had->add_option("--auto", had_auto, "order3 | order4")->required();

    // design verify
    std::string design_file, design_auto;
    auto* cmd_design = app.add_subcommand("design", "design file operations");
    auto* cmd_verify = cmd_design->add_subcommand("verify", "validate a design file");
    cmd_verify->add_option("file", design_file, "design file")->required();
    cmd_verify->add_option("--auto", design_auto, "automorphism file");

    // variety lines
    std::string var_v, var_b, var_r, var_k, var_lam;
    auto* cmd_variety = app.add_subcommand("variety", "design variety operations");
    auto* cmd_lines = cmd_variety->add_subcommand("lines", "the four lines through a point");
    cmd_lines->add_option("v", var_v)->required();
    cmd_lines->add_option("b", var_b)->required();
    cmd_lines->add_option("r", var_r)->required();
    cmd_lines->add_option("k", var_k)->required();
    cmd_lines->add_option("lambda", var_lam)->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    }

    if (cmd_fib->parsed()) {
        CString out;
        fibdes_status st;
        if (!fib_mod.empty())
            st = fibdes_fib_mod(fib_t, fib_mod.c_str(), &out.ptr);
        else if (fib_lucas)
            st = fibdes_lucas(fib_t, &out.ptr);
        else
            st = fibdes_fib(fib_t, &out.ptr);
        if (st != FIBDES_OK) return fail(st);
        if (as_json) {
            json rep{{"schema", 1}, {"command", "fib"},
                     {"inputs", {{"t", fib_t}, {"lucas", fib_lucas},
                                 {"mod", fib_mod.empty() ? json() : json(fib_mod)}}},
                     {"results", {{"value", out.str()}}}};
            std::printf("%s\n", rep.dump().c_str());
        } else {
            std::printf("%s\n", out.ptr);
        }
        return 0;
    }
    if (cmd_params->parsed()) {
        CString out;
        return emit(fibdes_params(params_m, &out.ptr), out, as_json, [](const json& rep) {
            const json& r = rep.at("results");
            const json& f = r.at("fibonacci_design");
            const json& q = r.at("quasi_residual");
            std::printf("F_%llu symmetric design: (v,k,lambda) = (%s, %s, %s), n = %s\n",
                        static_cast<unsigned long long>(r.at("m").get<uint64_t>()),
                        f.at("v").get<std::string>().c_str(),
                        f.at("k").get<std::string>().c_str(),
                        f.at("lambda").get<std::string>().c_str(),
                        f.at("n").get<std::string>().c_str());
            std::printf("quasi-residual Metis design: (v,b,r,k,lambda) = (%s, %s, %s, %s, %s)\n",
                        q.at("v").get<std::string>().c_str(),
                        q.at("b").get<std::string>().c_str(),
                        q.at("r").get<std::string>().c_str(),
                        q.at("k").get<std::string>().c_str(),
                        q.at("lambda").get<std::string>().c_str());
        });
    }
    if (cmd_brc->parsed()) {
        CString out;
        return emit(fibdes_brc(brc_v.c_str(), brc_k.c_str(), brc_lam.c_str(), &out.ptr), out,
                    as_json, [](const json& rep) {
                        const json& r = rep.at("results");
                        std::printf("BRC %s: %s\n", r.at("status").get<std::string>().c_str(),
                                    r.at("detail").get<std::string>().c_str());
                        if (r.contains("witness")) {
                            const json& w = r.at("witness");
                            std::printf("witness (X,Y,Z) = (%s, %s, %s)\n",
                                        w.at("x").get<std::string>().c_str(),
                                        w.at("y").get<std::string>().c_str(),
                                        w.at("z").get<std::string>().c_str());
                        }
                    });
    }
    if (cmd_gate->parsed()) {
        fibdes_table* table = nullptr;
        if (!gate_table.empty()) {
            fibdes_status st = fibdes_table_load(gate_table.c_str(), &table);
            if (st != FIBDES_OK) return fail(st);
        }
        CString out;
        fibdes_status st = fibdes_gate(gate_m, table, gate_effort, &out.ptr);
        fibdes_table_free(table);
        return emit(st, out, as_json, print_gate_human);
    }
    if (cmd_scan->parsed()) {
        fibdes_table* table = nullptr;
        if (!scan_table.empty()) {
            fibdes_status st = fibdes_table_load(scan_table.c_str(), &table);
            if (st != FIBDES_OK) return fail(st);
        }
        CString out;
        fibdes_status st = fibdes_scan(scan_max, table, scan_effort, scan_jobs, &out.ptr);
        fibdes_table_free(table);
        return emit(st, out, as_json, [](const json& rep) {
            const json& res = rep.at("results");
            for (const auto& v : res.at("verdicts")) {
                std::string why;
                if (v.contains("certificate"))
                    why = " [" + v.at("certificate").at("gate").get<std::string>() +
                          (v.at("certificate_verified").get<bool>() ? ", verified]"
                                                                    : ", VERIFY FAILED]");
                std::printf("m = %4llu  %-14s%s\n",
                            static_cast<unsigned long long>(v.at("m").get<uint64_t>()),
                            v.at("status").get<std::string>().c_str(), why.c_str());
            }
            const json& s = res.at("summary");
            std::printf("ruled out: %zu, BRC-failures: %zu, trivial: %zu, inconclusive: %zu\n",
                        s.at("ruled_out").size(), s.at("no_design_by_brc").size(),
                        s.at("trivial_exists").size(), s.at("inconclusive").size());
        });
    }
    if (cmd_brouwer->parsed()) {
        CString out;
        return emit(fibdes_brouwer(brouwer_q.c_str(), brouwer_t, &out.ptr), out, as_json,
                    [](const json& rep) {
                        const json& r = rep.at("results");
                        std::printf("Brouwer (q=%s, t=%u): (v,k,lambda) = (%s, %s, %s)\n",
                                    r.at("q").get<std::string>().c_str(), r.at("t").get<unsigned>(),
                                    r.at("v").get<std::string>().c_str(),
                                    r.at("k").get<std::string>().c_str(),
                                    r.at("lambda").get<std::string>().c_str());
                        std::printf("BRC: %s (%s)\n", r.at("brc_pass").get<bool>() ? "pass" : "fail",
                                    r.at("detail").get<std::string>().c_str());
                    });
    }
    if (cmd_had->parsed()) {
        if ((had_auto == "order3" && had_d != 2) || (had_auto == "order4" && had_d != 3) ||
            (had_auto != "order3" && had_auto != "order4")) {
            std::fprintf(stderr, "fibdes: --auto order3 needs --d 2, --auto order4 needs --d 3\n");
            return 1;
        }
        CString out;
        return emit(fibdes_hadamard_design(had_h, had_auto.c_str(), &out.ptr), out, as_json,
                    [](const json& rep) {
                        const json& r = rep.at("results");
                        const json& d = r.at("design");
                        const json& b = r.at("three_block_bound");
                        std::printf("design (%u, %u, %u), order n = %u\n", d.at("v").get<unsigned>(),
                                    d.at("k").get<unsigned>(), d.at("lambda").get<unsigned>(),
                                    d.at("n").get<unsigned>());
                        std::printf("automorphism order %u, fixed points %u, bound v-3n = %ld%s\n",
                                    r.at("automorphism").at("order").get<unsigned>(),
                                    b.at("fixed_points").get<unsigned>(),
                                    b.at("bound").get<long>(),
                                    b.at("equality").get<bool>() ? " (equality)" : "");
                        if (r.contains("equality_case"))
                            std::printf("equality case: %s\n",
                                        r.at("equality_case").at("passed").get<bool>() ? "passes"
                                                                                       : "FAILS");
                    });
    }
    if (cmd_verify->parsed()) {
        fibdes_design* design = nullptr;
        fibdes_status st = fibdes_design_load(design_file.c_str(), &design);
        if (st != FIBDES_OK) return fail(st);
        CString out;
        st = fibdes_design_verify(design, design_auto.empty() ? nullptr : design_auto.c_str(),
                                  &out.ptr);
        fibdes_design_free(design);
        return emit(st, out, as_json, [](const json& rep) {
            const json& r = rep.at("results");
            const json& d = r.at("design");
            std::printf("design (%u, %u, %u): valid\n", d.at("v").get<unsigned>(),
                        d.at("k").get<unsigned>(), d.at("lambda").get<unsigned>());
            if (r.contains("automorphism_valid")) {
                if (!r.at("automorphism_valid").get<bool>()) {
                    std::printf("automorphism: NOT an automorphism of this design\n");
                    return;
                }
                std::printf("automorphism order %u, fixed points %u\n",
                            r.at("automorphism").at("order").get<unsigned>(),
                            r.at("automorphism").at("fixed_points").get<unsigned>());
                if (r.contains("three_block_bound")) {
                    const json& b = r.at("three_block_bound");
                    std::printf("three-block bound: f = %u, v - 3n = %ld%s\n",
                                b.at("fixed_points").get<unsigned>(), b.at("bound").get<long>(),
                                b.at("equality").get<bool>() ? " (equality)" : "");
                }
                if (r.contains("equality_case"))
                    std::printf("equality case: %s\n",
                                r.at("equality_case").at("passed").get<bool>() ? "passes" : "FAILS");
            }
        });
    }
    if (cmd_lines->parsed()) {
        CString out;
        return emit(fibdes_variety_lines(var_v.c_str(), var_b.c_str(), var_r.c_str(),
                                         var_k.c_str(), var_lam.c_str(), &out.ptr),
                    out, as_json, [](const json& rep) {
                        const json& r = rep.at("results");
                        std::printf("lines through the point (count with multiplicity: %u):\n",
                                    r.at("line_count_with_multiplicity").get<unsigned>());
                        for (const auto& l : r.at("lines")) {
                            std::string dir;
                            for (const auto& c : l.at("direction"))
                                dir += (dir.empty() ? "" : ", ") + c.get<std::string>();
                            std::printf("  [%s] (%s)%s%s\n",
                                        l.at("tag").get<std::string>().c_str(), dir.c_str(),
                                        l.at("multiplicity").get<unsigned>() > 1 ? " x2" : "",
                                        l.at("metis_relation").get<bool>() ? "  [metis]" : "");
                        }
                    });
    }
    std::fprintf(stderr, "%s\n", app.help().c_str());
    return 2;
}
