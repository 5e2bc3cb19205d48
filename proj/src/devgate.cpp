#include "fibdes/devgate.hpp"

#include <algorithm>
#include <atomic>
#include <fstream>
#include <set>
#include <sstream>
#include <thread>

namespace fibdes {

const char* gate_name(GateId id) {
    switch (id) {
        case GateId::Congruence: return "congruence";
        case GateId::Mod216: return "mod216";
        case GateId::PrimeDivisor: return "prime_divisor";
        case GateId::SquarefreeShortcut: return "squarefree_shortcut";
        case GateId::OddOrder: return "odd_order";
        case GateId::Order2: return "order2";
    }
    return "?";
}

const char* verdict_status_name(VerdictStatus s) {
    switch (s) {
        case VerdictStatus::TrivialExists: return "TrivialExists";
        case VerdictStatus::NoDesignByBrc: return "NoDesignByBrc";
        case VerdictStatus::RuledOut: return "RuledOut";
        case VerdictStatus::Inconclusive: return "Inconclusive";
    }
    return "?";
}

// ---------------------------------------------------------------------------
// factor tables

namespace {

std::string trimmed(const std::string& s) {
    auto b = s.find_first_not_of(" \t\r");
    if (b == std::string::npos) return "";
    auto e = s.find_last_not_of(" \t\r");
    return s.substr(b, e - b + 1);
}

[[noreturn]] void reject(const std::string& origin, std::size_t lineno, const std::string& why) {
    throw parse_error(origin + ":" + std::to_string(lineno) + ": " + why);
}

} // namespace

FactorTable FactorTable::load(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw parse_error("cannot open factor table '" + path + "'");
    return parse(in, path);
}

FactorTable FactorTable::parse(std::istream& in, const std::string& origin) {
    FactorTable table;
    std::string line;
    std::size_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        std::string s = trimmed(line);
        if (s.empty() || s[0] == '#') continue;
        auto colon = s.find(':');
        if (colon == std::string::npos) reject(origin, lineno, "missing ':'");
        FibIndex t = 0;
        try {
            std::size_t used = 0;
            unsigned long long raw = std::stoull(trimmed(s.substr(0, colon)), &used);
            if (used != trimmed(s.substr(0, colon)).size()) throw std::invalid_argument("");
            t = raw;
        } catch (...) {
            reject(origin, lineno, "bad index '" + s.substr(0, colon) + "'");
        }
        Factorization f;
        f.value = fib(t);
        std::string rhs = s.substr(colon + 1);
        std::stringstream toks(rhs);
        std::string tok;
        while (std::getline(toks, tok, '*')) {
            tok = trimmed(tok);
            if (tok.empty()) reject(origin, lineno, "empty factor token");
            if (tok[0] == 'C') {
                if (f.cofactor != 1) reject(origin, lineno, "multiple cofactor tokens");
                Int c;
                try {
                    c = int_from_decimal(tok.substr(1));
                } catch (const parse_error&) {
                    reject(origin, lineno, "bad cofactor token '" + tok + "'");
                }
                if (c <= 1) reject(origin, lineno, "cofactor must exceed 1");
                if (is_probable_prime(c))
                    reject(origin, lineno, "cofactor " + c.get_str() + " is prime; list it as a factor");
                f.cofactor = c;
                continue;
            }
            Int base;
            unsigned exp = 1;
            auto caret = tok.find('^');
            try {
                base = int_from_decimal(trimmed(tok.substr(0, caret)));
                if (caret != std::string::npos) {
                    int e = std::stoi(trimmed(tok.substr(caret + 1)));
                    if (e <= 0) throw std::invalid_argument("");
                    exp = static_cast<unsigned>(e);
                }
            } catch (...) {
                reject(origin, lineno, "bad factor token '" + tok + "'");
            }
            if (!is_probable_prime(base))
                reject(origin, lineno, "factor " + base.get_str() + " is not prime");
            f.prime_powers.push_back({base, exp});
        }
        std::sort(f.prime_powers.begin(), f.prime_powers.end(),
                  [](const PrimePower& a, const PrimePower& b) { return a.prime < b.prime; });
        for (std::size_t i = 1; i < f.prime_powers.size(); ++i)
            if (f.prime_powers[i].prime == f.prime_powers[i - 1].prime)
                reject(origin, lineno, "repeated factor " + f.prime_powers[i].prime.get_str());
        for (const auto& pp : f.prime_powers)
            if (mpz_divisible_p(f.cofactor.get_mpz_t(), pp.prime.get_mpz_t()))
                reject(origin, lineno, "cofactor shares factor " + pp.prime.get_str());
        if (f.recompose() != f.value)
            reject(origin, lineno, "product does not equal F_" + std::to_string(t));
        table.entries_[t] = std::move(f);
    }
    return table;
}

std::optional<Factorization> FactorTable::lookup(FibIndex t) const {
    auto it = entries_.find(t);
    if (it == entries_.end()) return std::nullopt;
    return it->second;
}

// ---------------------------------------------------------------------------
// built-in Fibonacci factorization

namespace {

std::vector<FibIndex> prime_divisors_of_index(FibIndex t) {
    std::vector<FibIndex> ps;
    FibIndex n = t;
    for (FibIndex d = 2; d * d <= n; ++d)
        if (n % d == 0) {
            ps.push_back(d);
            while (n % d == 0) n /= d;
        }
    if (n > 1) ps.push_back(n);
    return ps;
}

// Built-in factoring of F_t goes deep only while F_t stays desk-sized;
// beyond the digit window only cheap structure (index divisor chains and
// trial division) is applied and the rest is left as a composite cofactor.
constexpr std::size_t kBuiltinFullDigits = 48;

} // namespace

Factorization FibFactorCache::get(FibIndex t, const FactorTable* table,
                                  const FactorEffort& effort) {
    if (table)
        if (auto f = table->lookup(t)) return *f;
    {
        std::lock_guard<std::mutex> lk(mu_);
        auto it = memo_.find(t);
        if (it != memo_.end()) return it->second;
    }

    Factorization out;
    out.value = fib(t);
    if (out.value <= 1) {
        std::lock_guard<std::mutex> lk(mu_);
        memo_[t] = out;
        return out;
    }

    // primes inherited from F_d for proper divisors d of t
    std::set<Int> inherited;
    for (FibIndex s : prime_divisors_of_index(t)) {
        if (t / s < 3) continue;
        Factorization sub = get(t / s, table, effort);
        for (const auto& pp : sub.prime_powers) inherited.insert(pp.prime);
    }

    Int rest = out.value;
    std::map<Int, unsigned> primes;
    for (const Int& p : inherited) {
        unsigned e = 0;
        while (mpz_divisible_p(rest.get_mpz_t(), p.get_mpz_t())) {
            rest /= p;
            ++e;
        }
        if (e) primes[p] = e;
    }

    if (rest > 1) {
        bool full = mpz_sizeinbase(out.value.get_mpz_t(), 10) <= kBuiltinFullDigits;
        Factorization tail = factor(rest, full ? effort
                                               : FactorEffort{effort.trial_limit, 0});
        for (const auto& pp : tail.prime_powers) primes[pp.prime] += pp.exponent;
        out.cofactor = tail.cofactor;
    }
    for (const auto& [p, e] : primes) out.prime_powers.push_back({p, e});

    std::lock_guard<std::mutex> lk(mu_);
    memo_[t] = out;
    return out;
}

// ---------------------------------------------------------------------------
// gates

GateResult congruence_gate(FibIndex m) {
    GateResult g{GateId::Congruence, GateOutcome::Pass, "", std::nullopt};
    unsigned r6 = m % 6;
    if (r6 != 1 && r6 != 5) {
        g.outcome = GateOutcome::NotApplicable;
        g.note = "m = 3 (mod 6): v is even, BRC handles this case";
        return g;
    }
    unsigned r12 = m % 12;
    if (r12 == 1 || r12 == 11) {
        g.note = "m = " + std::to_string(r12) + " (mod 12)";
        return g;
    }
    Int f8 = fib_mod(m, 8);
    Certificate c;
    c.gate = gate_name(GateId::Congruence);
    c.m = m;
    c.m_mod_12 = r12;
    c.fib_m_mod_8 = static_cast<unsigned>(f8.get_ui());
    g.outcome = GateOutcome::RuledOut;
    g.note = "F_m = " + f8.get_str() + " (mod 8), so some prime of F_m is not 1 (mod 8)";
    g.certificate = std::move(c);
    return g;
}

GateResult mod216_gate(FibIndex m) {
    GateResult g{GateId::Mod216, GateOutcome::Pass, "", std::nullopt};
    unsigned r = m % 216;
    if (r != 37 && r != 181) {
        g.note = "m = " + std::to_string(r) + " (mod 216), not 1 +- 36";
        return g;
    }
    Valuation nu3 = fib_valuation(3, m - 1);
    Int f3 = fib_mod(m, 3);
    if (nu3.exponent != 3 || f3 != 2)
        throw std::logic_error("mod216_gate: internal arithmetic mismatch at m=" +
                               std::to_string(m));
    Certificate c;
    c.gate = gate_name(GateId::Mod216);
    c.m = m;
    c.m_mod_216 = r;
    c.nu3_fib_m_minus_1 = nu3.exponent;
    c.fib_m_mod_3 = static_cast<unsigned>(f3.get_ui());
    g.outcome = GateOutcome::RuledOut;
    g.note = "3 | F_{m-1}* (nu_3 = 3) and F_m = 2 (mod 3): 3 has even order "
             "modulo some prime of F_m";
    g.certificate = std::move(c);
    return g;
}

GateResult prime_divisor_gate(FibIndex m, const Factorization& fm_factors) {
    if (fm_factors.recompose() != fib(m))
        throw domain_error("prime_divisor_gate: factorization is not of F_m");
    GateResult g{GateId::PrimeDivisor, GateOutcome::Pass, "", std::nullopt};
    for (const auto& pp : fm_factors.prime_powers) {
        Int r = pp.prime % 8;
        if (r != 1) {
            Certificate c;
            c.gate = gate_name(GateId::PrimeDivisor);
            c.m = m;
            c.p = pp.prime;
            g.outcome = GateOutcome::RuledOut;
            g.note = "prime " + pp.prime.get_str() + " | F_m with " + pp.prime.get_str() +
                     " = " + r.get_str() + " (mod 8)";
            g.certificate = std::move(c);
            return g;
        }
    }
    if (!fm_factors.complete()) {
        g.outcome = GateOutcome::Inconclusive;
        g.note = "factorization of F_m incomplete; all known primes are 1 (mod 8)";
        return g;
    }
    g.note = "all primes of F_m are 1 (mod 8)";
    return g;
}

namespace {

bool provably_squarefree(const Factorization& f) {
    if (!f.complete()) return false;
    for (const auto& pp : f.prime_powers)
        if (pp.exponent > 1) return false;
    return true;
}

bool provably_not_squarefree(const Factorization& f) {
    for (const auto& pp : f.prime_powers)
        if (pp.exponent > 1) return true;
    if (f.complete()) return false;
    return mpz_perfect_square_p(f.cofactor.get_mpz_t()) != 0;
}

} // namespace

GateResult squarefree_shortcut(FibIndex m, const Factorization& fm1, const Factorization& fm2) {
    if (fm1.value != fib(m - 1) || fm2.value != fib(m - 2))
        throw domain_error("squarefree_shortcut: factorizations are not of F_{m-1}, F_{m-2}");
    GateResult g{GateId::SquarefreeShortcut, GateOutcome::Pass, "", std::nullopt};
    const Factorization* fs[2] = {&fm1, &fm2};
    FibIndex idx[2] = {m - 1, m - 2};
    bool unsettled = false;
    for (int i = 0; i < 2; ++i) {
        if (provably_squarefree(*fs[i])) {
            Certificate c;
            c.gate = gate_name(GateId::SquarefreeShortcut);
            c.m = m;
            c.index = idx[i];
            for (const auto& pp : fs[i]->prime_powers) c.squarefree_primes.push_back(pp.prime);
            g.outcome = GateOutcome::RuledOut;
            g.note = "F_" + std::to_string(idx[i]) + " is square-free and "
                     "F_" + std::to_string(idx[i]) + "^2 = -1 (mod F_m) forces an even order";
            g.certificate = std::move(c);
            return g;
        }
        if (!provably_not_squarefree(*fs[i])) unsettled = true;
    }
    if (unsettled) {
        g.outcome = GateOutcome::Inconclusive;
        g.note = "square-freeness of F_{m-1}/F_{m-2} cannot be settled from the "
                 "available factorizations";
        return g;
    }
    g.note = "neither F_{m-1} nor F_{m-2} is square-free";
    return g;
}

GateResult odd_order_gate(FibIndex m, const Int& p, const Int& q,
                          const Factorization& p_minus_1) {
    if (!is_probable_prime(p) || !is_probable_prime(q))
        throw domain_error("odd_order_gate: p and q must be prime");
    if (fib_mod(m, p) != 0)
        throw domain_error("odd_order_gate: p does not divide F_m");
    FibIndex j = 0;
    unsigned nu = 0;
    for (FibIndex cand : {m - 1, m - 2}) {
        unsigned e = fib_valuation(q, cand).exponent;
        if (e % 2 == 1) {
            j = cand;
            nu = e;
            break;
        }
    }
    if (j == 0)
        throw domain_error("odd_order_gate: q has no odd exponent in F_{m-1} or F_{m-2}");
    auto ord = mult_order(q, p, p_minus_1);
    if (!ord)
        throw domain_error("odd_order_gate: p-1 factorization incomplete");
    GateResult g{GateId::OddOrder, GateOutcome::Pass, "", std::nullopt};
    if (!ord->even) {
        g.note = "ord_" + p.get_str() + "(" + q.get_str() + ") = " + ord->order.get_str() +
                 " is odd; this witness pair does not decide";
        return g;
    }
    Certificate c;
    c.gate = gate_name(GateId::OddOrder);
    c.m = m;
    c.p = p;
    c.q = q;
    c.index = j;
    c.q_valuation = nu;
    c.order = ord->order;
    c.p_minus_1_factors = p_minus_1.prime_powers;
    g.outcome = GateOutcome::RuledOut;
    g.note = "q = " + q.get_str() + " divides F_" + std::to_string(j) + "* (nu = " +
             std::to_string(nu) + ") but ord_" + p.get_str() + "(" + q.get_str() + ") = " +
             ord->order.get_str() + " is even";
    g.certificate = std::move(c);
    return g;
}

GateResult order2_gate(FibIndex m, const Factorization& fm_factors, const FactorEffort& effort) {
    GateResult g{GateId::Order2, GateOutcome::Pass, "", std::nullopt};
    if (m % 12 != 11) {
        g.outcome = GateOutcome::NotApplicable;
        g.note = "m is not -1 (mod 12)";
        return g;
    }
    if (fm_factors.recompose() != fib(m))
        throw domain_error("order2_gate: factorization is not of F_m");
    Valuation nu2 = fib_valuation(2, m - 2);
    if (nu2.exponent != 1)
        throw std::logic_error("order2_gate: nu_2(F_{m-2}) != 1 at m=" + std::to_string(m));
    bool indeterminate = !fm_factors.complete();
    for (const auto& pp : fm_factors.prime_powers) {
        auto ord = mult_order(2, pp.prime, factor(pp.prime - 1, effort));
        if (!ord) {
            indeterminate = true;
            continue;
        }
        if (ord->even) {
            Certificate c;
            c.gate = gate_name(GateId::Order2);
            c.m = m;
            c.p = pp.prime;
            c.q = 2;
            c.index = m - 2;
            c.q_valuation = nu2.exponent;
            c.order = ord->order;
            c.p_minus_1_factors = factor(pp.prime - 1, effort).prime_powers;
            g.outcome = GateOutcome::RuledOut;
            g.note = "2 | F_" + std::to_string(m - 2) + "* and ord_" + pp.prime.get_str() +
                     "(2) = " + ord->order.get_str() + " is even";
            g.certificate = std::move(c);
            return g;
        }
    }
    if (indeterminate) {
        g.outcome = GateOutcome::Inconclusive;
        g.note = "2 has odd order modulo every known prime of F_m, but the "
                 "factorization is incomplete";
        return g;
    }
    g.note = "2 has odd order modulo every prime of F_m";
    return g;
}

// ---------------------------------------------------------------------------
// pipeline

namespace {

Certificate brc_even_certificate(FibIndex m) {
    Certificate c;
    c.gate = "brc_even";
    c.m = m;
    return c;
}

std::vector<Int> small_odd_q_candidates(FibIndex j, const Int& bound) {
    std::vector<Int> qs;
    for (Int q = 3; q <= bound; mpz_nextprime(q.get_mpz_t(), q.get_mpz_t())) {
        unsigned e = fib_valuation(q, j).exponent;
        if (e % 2 == 1) qs.push_back(q);
    }
    return qs;
}

} // namespace

Verdict development_verdict(FibIndex m, const FactorTable* table, const GateOptions& opts,
                            FibFactorCache* cache) {
    if (m < 3 || m % 2 == 0)
        throw domain_error("development_verdict: m must be odd and >= 3");
    Verdict v;
    v.m = m;
    if (m == 3) {
        v.status = VerdictStatus::TrivialExists;
        return v;
    }
    if (m % 6 == 3) {
        v.status = VerdictStatus::NoDesignByBrc;
        v.certificate = brc_even_certificate(m);
        return v;
    }

    auto conclude = [&](GateResult g) {
        v.certificate = g.certificate;
        v.reasons.push_back(std::move(g));
        v.status = VerdictStatus::RuledOut;
        v.missing.clear(); // data gaps did not prevent a conclusion
    };

    GateResult g = congruence_gate(m);
    if (g.ruled_out()) { conclude(std::move(g)); return v; }
    v.reasons.push_back(std::move(g));

    g = mod216_gate(m);
    if (g.ruled_out()) { conclude(std::move(g)); return v; }
    v.reasons.push_back(std::move(g));

    FibFactorCache local_cache;
    FibFactorCache& fc = cache ? *cache : local_cache;
    Factorization fm = fc.get(m, table, opts.effort);

    g = prime_divisor_gate(m, fm);
    if (g.ruled_out()) { conclude(std::move(g)); return v; }
    if (g.outcome == GateOutcome::Inconclusive)
        v.missing.push_back("factorization of F_" + std::to_string(m) + " incomplete");
    v.reasons.push_back(std::move(g));

    Factorization fm1 = fc.get(m - 1, table, opts.effort);
    Factorization fm2 = fc.get(m - 2, table, opts.effort);
    g = squarefree_shortcut(m, fm1, fm2);
    if (g.ruled_out()) { conclude(std::move(g)); return v; }
    if (g.outcome == GateOutcome::Inconclusive)
        v.missing.push_back("square-freeness of F_" + std::to_string(m - 1) + " / F_" +
                            std::to_string(m - 2) + " unsettled");
    v.reasons.push_back(std::move(g));

    // odd-order pairs: cheap valuation-derived small q first, then odd-exponent
    // primes of the available factorizations of F_{m-1}, F_{m-2}
    std::vector<Int> ps;
    for (const auto& pp : fm.prime_powers) ps.push_back(pp.prime);
    std::sort(ps.begin(), ps.end());
    bool pair_skipped = false;
    GateResult last_pass{GateId::OddOrder, GateOutcome::Pass,
                         "no usable (p,q) pair with even order", std::nullopt};
    auto try_pairs = [&](const std::vector<Int>& qs) -> std::optional<GateResult> {
        for (const Int& q : qs)
            for (const Int& p : ps) {
                Factorization pm1 = factor(p - 1, opts.effort);
                if (!pm1.complete()) { pair_skipped = true; continue; }
                GateResult r = odd_order_gate(m, p, q, pm1);
                if (r.ruled_out()) return r;
                last_pass = r;
            }
        return std::nullopt;
    };
    std::set<Int> seen;
    {
        std::set<Int> qs; // ordered: smallest witness prime fires first
        for (FibIndex j : {m - 1, m - 2})
            for (const Int& q : small_odd_q_candidates(j, opts.small_q_bound))
                if (seen.insert(q).second) qs.insert(q);
        if (auto r = try_pairs({qs.begin(), qs.end()})) { conclude(std::move(*r)); return v; }
    }
    {
        std::vector<Int> qs;
        for (const Factorization* f : {&fm1, &fm2})
            for (const auto& pp : f->prime_powers)
                if (pp.exponent % 2 == 1 && pp.prime > 2 && seen.insert(pp.prime).second)
                    qs.push_back(pp.prime);
        std::sort(qs.begin(), qs.end());
        if (auto r = try_pairs(qs)) { conclude(std::move(*r)); return v; }
    }
    if (pair_skipped)
        v.missing.push_back("some (p,q) order computations skipped (p-1 not fully factored)");
    v.reasons.push_back(last_pass);

    g = order2_gate(m, fm, opts.effort);
    if (g.ruled_out()) { conclude(std::move(g)); return v; }
    if (g.outcome == GateOutcome::Inconclusive)
        v.missing.push_back("order of 2 modulo the unfactored part of F_" + std::to_string(m) +
                            " unknown");
    v.reasons.push_back(std::move(g));

    v.status = VerdictStatus::Inconclusive;
    if (v.missing.empty())
        v.missing.push_back("all gates pass on complete data; no further criterion applies");
    return v;
}

std::vector<Verdict> scan(FibIndex max_m, const FactorTable* table, const GateOptions& opts,
                          unsigned jobs) {
    std::vector<FibIndex> ms;
    for (FibIndex m = 3; m <= max_m; m += 2) ms.push_back(m);
    std::vector<Verdict> out(ms.size());
    if (ms.empty()) return out;
    if (jobs == 0) jobs = 1;
    jobs = std::min<unsigned>(jobs, static_cast<unsigned>(ms.size()));
    FibFactorCache cache;
    std::atomic<std::size_t> next{0};
    auto worker = [&]() {
        for (;;) {
            std::size_t i = next.fetch_add(1);
            if (i >= ms.size()) return;
            out[i] = development_verdict(ms[i], table, opts, &cache);
        }
    };
    if (jobs == 1) {
        worker();
    } else {
        std::vector<std::thread> pool;
        for (unsigned i = 0; i < jobs; ++i) pool.emplace_back(worker);
        for (auto& th : pool) th.join();
    }
    return out;
}

// ---------------------------------------------------------------------------
// certificate verification: trusts nothing but what it recomputes

namespace {

bool fail(std::string* out, const std::string& why) {
    if (out) *out = why;
    return false;
}

} // namespace

bool verify_certificate(const Certificate& c, std::string* failing_claim) {
    const FibIndex m = c.m;
    if (m < 3 || m % 2 == 0) return fail(failing_claim, "m is not an odd index >= 3");

    if (c.gate == "brc_even") {
        if (m % 6 != 3 || m == 3) return fail(failing_claim, "m is not 3 (mod 6) with m > 3");
        if (fib_mod(m, 2) != 0) return fail(failing_claim, "F_m is odd, v = F_m^2 is not even");
        Int n = fib(m - 1) * fib(m - 2);
        if (is_perfect_square(n))
            return fail(failing_claim, "order n is a perfect square, BRC does not fail");
        return true;
    }
    if (c.gate == gate_name(GateId::Congruence)) {
        if (!c.m_mod_12 || !c.fib_m_mod_8) return fail(failing_claim, "missing congruence claims");
        if (m % 12 != *c.m_mod_12) return fail(failing_claim, "m mod 12 mismatch");
        if (*c.m_mod_12 != 5 && *c.m_mod_12 != 7)
            return fail(failing_claim, "m mod 12 is not in {5,7}");
        if (fib_mod(m, 8) != *c.fib_m_mod_8) return fail(failing_claim, "F_m mod 8 mismatch");
        if (*c.fib_m_mod_8 == 1) return fail(failing_claim, "F_m = 1 (mod 8) rules nothing out");
        return true;
    }
    if (c.gate == gate_name(GateId::Mod216)) {
        if (!c.m_mod_216 || !c.nu3_fib_m_minus_1 || !c.fib_m_mod_3)
            return fail(failing_claim, "missing mod216 claims");
        if (m % 216 != *c.m_mod_216) return fail(failing_claim, "m mod 216 mismatch");
        if (*c.m_mod_216 != 37 && *c.m_mod_216 != 181)
            return fail(failing_claim, "m mod 216 is not 1 +- 36");
        if (*c.nu3_fib_m_minus_1 != 3) return fail(failing_claim, "claimed nu_3 is not 3");
        if (fib_mod(m - 1, 27) != 0) return fail(failing_claim, "27 does not divide F_{m-1}");
        if (fib_mod(m - 1, 81) == 0) return fail(failing_claim, "81 divides F_{m-1}");
        if (fib_mod(m, 3) != *c.fib_m_mod_3 || *c.fib_m_mod_3 != 2)
            return fail(failing_claim, "F_m mod 3 is not 2");
        return true;
    }
    if (c.gate == gate_name(GateId::PrimeDivisor)) {
        if (!c.p) return fail(failing_claim, "missing prime p");
        if (!is_probable_prime(*c.p)) return fail(failing_claim, "p is not prime");
        if (*c.p % 8 == 1) return fail(failing_claim, "p = 1 (mod 8) rules nothing out");
        if (fib_mod(m, *c.p) != 0) return fail(failing_claim, "p does not divide F_m");
        return true;
    }
    if (c.gate == gate_name(GateId::SquarefreeShortcut)) {
        if (!c.index || c.squarefree_primes.empty())
            return fail(failing_claim, "missing square-free factor list");
        FibIndex j = *c.index;
        if (j != m - 1 && j != m - 2) return fail(failing_claim, "index is not m-1 or m-2");
        Int prod = 1;
        for (std::size_t i = 0; i < c.squarefree_primes.size(); ++i) {
            const Int& q = c.squarefree_primes[i];
            if (!is_probable_prime(q))
                return fail(failing_claim, "listed factor " + q.get_str() + " is not prime");
            if (i > 0 && q <= c.squarefree_primes[i - 1])
                return fail(failing_claim, "factor list is not strictly increasing");
            prod *= q;
        }
        Int fj = fib(j);
        if (prod != fj)
            return fail(failing_claim, "product of listed primes is not F_" + std::to_string(j));
        Int fm = fib(m);
        if ((fj * fj + 1) % fm != 0)
            return fail(failing_claim, "F_j^2 + 1 is not divisible by F_m");
        return true;
    }
    if (c.gate == gate_name(GateId::OddOrder) || c.gate == gate_name(GateId::Order2)) {
        if (!c.p || !c.q || !c.index || !c.q_valuation || !c.order)
            return fail(failing_claim, "missing order claims");
        if (c.gate == gate_name(GateId::Order2)) {
            if (m % 12 != 11) return fail(failing_claim, "m is not -1 (mod 12)");
            if (*c.q != 2) return fail(failing_claim, "order2 certificate with q != 2");
        }
        if (!is_probable_prime(*c.p)) return fail(failing_claim, "p is not prime");
        if (!is_probable_prime(*c.q)) return fail(failing_claim, "q is not prime");
        if (fib_mod(m, *c.p) != 0) return fail(failing_claim, "p does not divide F_m");
        FibIndex j = *c.index;
        if (j != m - 1 && j != m - 2) return fail(failing_claim, "index is not m-1 or m-2");
        unsigned e = *c.q_valuation;
        if (e % 2 == 0) return fail(failing_claim, "claimed valuation is even");
        if (fib_mod(j, pow_int(*c.q, e)) != 0)
            return fail(failing_claim, "q^e does not divide F_j");
        if (fib_mod(j, pow_int(*c.q, e + 1)) == 0)
            return fail(failing_claim, "q^(e+1) divides F_j, valuation claim is wrong");
        Factorization pm1;
        pm1.value = *c.p - 1;
        pm1.prime_powers = c.p_minus_1_factors;
        pm1.cofactor = 1;
        for (const auto& pp : pm1.prime_powers)
            if (!is_probable_prime(pp.prime))
                return fail(failing_claim, "p-1 factor " + pp.prime.get_str() + " is not prime");
        if (pm1.recompose() != *c.p - 1)
            return fail(failing_claim, "p-1 factor list does not multiply to p-1");
        auto ord = mult_order(*c.q, *c.p, pm1);
        if (!ord) return fail(failing_claim, "order could not be recomputed");
        if (ord->order != *c.order)
            return fail(failing_claim, "recomputed order " + ord->order.get_str() +
                                           " differs from claimed " + c.order->get_str());
        if (!ord->even) return fail(failing_claim, "order is odd, nothing is ruled out");
        return true;
    }
    return fail(failing_claim, "unknown gate '" + c.gate + "'");
}

} // namespace fibdes
