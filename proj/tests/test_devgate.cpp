#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <fstream>
#include <sstream>

#include "fibdes/devgate.hpp"
#include "fibdes/report.hpp"

using namespace fibdes;

namespace {

// sample table: the known small factors of the four exceptional indices
// (the 277 split is complete; the rest carry composite cofactors)
std::string sample_table_text() {
    std::ostringstream os;
    os << "# exceptional indices of the m < 1000 scan\n";
    os << "277: 505471005740691524853293621 * 6861121308187330908986328104917\n";
    os << "457: 6397 * C" << Int(fib(457) / 6397).get_str() << "\n";
    os << "577: 2309 * C" << Int(fib(577) / 2309).get_str() << "\n";
    os << "877: 1753 * C" << Int(fib(877) / 1753).get_str() << "\n";
    return os.str();
}

FactorTable sample_table() {
    std::istringstream in(sample_table_text());
    return FactorTable::parse(in, "sample");
}

} // namespace

TEST_CASE("congruence gate") {
    GateResult g = congruence_gate(5);
    CHECK(g.outcome == GateOutcome::RuledOut);
    REQUIRE(g.certificate.has_value());
    CHECK(*g.certificate->m_mod_12 == 5);
    CHECK(*g.certificate->fib_m_mod_8 == 5);
    CHECK(verify_certificate(*g.certificate));

    CHECK(congruence_gate(7).outcome == GateOutcome::RuledOut);
    CHECK(congruence_gate(13).outcome == GateOutcome::Pass);
    CHECK(congruence_gate(9).outcome == GateOutcome::NotApplicable);
}

TEST_CASE("mod216 gate") {
    GateResult g = mod216_gate(37);
    CHECK(g.outcome == GateOutcome::RuledOut);
    REQUIRE(g.certificate.has_value());
    CHECK(*g.certificate->nu3_fib_m_minus_1 == 3);
    CHECK(*g.certificate->fib_m_mod_3 == 2);
    CHECK(verify_certificate(*g.certificate));

    CHECK(mod216_gate(181).outcome == GateOutcome::RuledOut);
    CHECK(mod216_gate(13).outcome == GateOutcome::Pass);
    CHECK(mod216_gate(253).outcome == GateOutcome::RuledOut); // 253 = 37 (mod 216)
}

TEST_CASE("prime divisor gate") {
    GateResult g = prime_divisor_gate(25, factor(fib(25)));
    CHECK(g.outcome == GateOutcome::RuledOut);
    REQUIRE(g.certificate.has_value());
    CHECK(*g.certificate->p == 5);
    CHECK(verify_certificate(*g.certificate));

    CHECK(prime_divisor_gate(13, factor(fib(13))).outcome == GateOutcome::Pass);

    // partial factorization, all known primes 1 mod 8: cannot conclude
    Factorization partial;
    partial.value = fib(877);
    partial.prime_powers = {{1753, 1}};
    partial.cofactor = fib(877) / 1753;
    CHECK(prime_divisor_gate(877, partial).outcome == GateOutcome::Inconclusive);

    Factorization wrong = factor(144);
    CHECK_THROWS_AS(prime_divisor_gate(13, wrong), domain_error);
}

TEST_CASE("squarefree shortcut") {
    GateResult g = squarefree_shortcut(13, factor(fib(12)), factor(fib(11)));
    CHECK(g.outcome == GateOutcome::RuledOut);
    REQUIRE(g.certificate.has_value());
    CHECK(*g.certificate->index == 11);
    REQUIRE(g.certificate->squarefree_primes.size() == 1);
    CHECK(g.certificate->squarefree_primes[0] == 89);
    CHECK(verify_certificate(*g.certificate));

    g = squarefree_shortcut(11, factor(fib(10)), factor(fib(9)));
    CHECK(g.outcome == GateOutcome::RuledOut);
    CHECK(*g.certificate->index == 10); // 55 = 5 * 11 already square-free
    CHECK(verify_certificate(*g.certificate));

    // unsettled square-freeness: partial factorization with unit exponents
    Factorization p876;
    p876.value = fib(876);
    p876.prime_powers = {};
    p876.cofactor = fib(876);
    Factorization p875;
    p875.value = fib(875);
    p875.prime_powers = {};
    p875.cofactor = fib(875);
    CHECK(squarefree_shortcut(877, p876, p875).outcome == GateOutcome::Inconclusive);
}

TEST_CASE("odd order gate") {
    GateResult g = odd_order_gate(877, 1753, 5, factor(1752));
    CHECK(g.outcome == GateOutcome::RuledOut);
    REQUIRE(g.certificate.has_value());
    CHECK(*g.certificate->index == 875);
    CHECK(*g.certificate->q_valuation == 3);
    CHECK(*g.certificate->order == 584);
    CHECK(verify_certificate(*g.certificate));

    g = odd_order_gate(13, 233, 89, factor(232));
    CHECK(g.outcome == GateOutcome::RuledOut);
    CHECK(*g.certificate->order == 4);

    // ord_89(2) = 11 is odd: this pair does not decide
    CHECK(odd_order_gate(11, 89, 2, factor(88)).outcome == GateOutcome::Pass);

    CHECK_THROWS_AS(odd_order_gate(13, 89, 2, factor(88)), domain_error);  // 89 does not divide F_13
    CHECK_THROWS_AS(odd_order_gate(13, 233, 7, factor(232)), domain_error); // 7 has no odd exponent
}

TEST_CASE("order-of-2 gate fires on the known list below 120") {
    FibFactorCache cache;
    std::vector<FibIndex> fired;
    for (FibIndex m = 11; m <= 120; m += 12) {
        GateResult g = order2_gate(m, cache.get(m, nullptr, FactorEffort{}));
        if (g.outcome == GateOutcome::RuledOut) {
            fired.push_back(m);
            CHECK(verify_certificate(*g.certificate));
            CHECK(*g.certificate->q == 2);
            CHECK(*g.certificate->q_valuation == 1);
        }
    }
    CHECK(fired == std::vector<FibIndex>{35, 47, 59, 71, 95, 107, 119});
    CHECK(order2_gate(13, factor(fib(13))).outcome == GateOutcome::NotApplicable);
}

TEST_CASE("nu_2(F_{m-2}) = 1 whenever m = -1 (mod 12)") {
    for (FibIndex m = 11; m <= 203; m += 12) CHECK(fib_valuation(2, m - 2).exponent == 1);
}

TEST_CASE("development verdicts") {
    Verdict v = development_verdict(3);
    CHECK(v.status == VerdictStatus::TrivialExists);
    CHECK_FALSE(v.certificate.has_value());

    v = development_verdict(9);
    CHECK(v.status == VerdictStatus::NoDesignByBrc);
    REQUIRE(v.certificate.has_value());
    CHECK(verify_certificate(*v.certificate));

    v = development_verdict(5);
    CHECK(v.status == VerdictStatus::RuledOut);
    CHECK(v.certificate->gate == "congruence");

    v = development_verdict(13);
    CHECK(v.status == VerdictStatus::RuledOut);
    CHECK(v.certificate->gate == "squarefree_shortcut");
    // full reason trace in fixed gate order
    REQUIRE(v.reasons.size() == 4);
    CHECK(v.reasons[0].gate == GateId::Congruence);
    CHECK(v.reasons[1].gate == GateId::Mod216);
    CHECK(v.reasons[2].gate == GateId::PrimeDivisor);
    CHECK(v.reasons[3].gate == GateId::SquarefreeShortcut);

    v = development_verdict(37);
    CHECK(v.status == VerdictStatus::RuledOut);
    CHECK(v.certificate->gate == "mod216");

    CHECK_THROWS_AS(development_verdict(4), domain_error);
}

TEST_CASE("m = 877 with a table entry yields the 1753/5/584 certificate") {
    FactorTable t = sample_table();
    GateOptions opts;
    opts.effort = FactorEffort::scaled(2); // valuations come from trial division anyway
    Verdict v = development_verdict(877, &t, opts);
    CHECK(v.status == VerdictStatus::RuledOut);
    REQUIRE(v.certificate.has_value());
    CHECK(v.certificate->gate == "odd_order");
    CHECK(*v.certificate->p == 1753);
    CHECK(*v.certificate->q == 5);
    CHECK(*v.certificate->index == 875);
    CHECK(*v.certificate->q_valuation == 3);
    CHECK(*v.certificate->order == 584);
    CHECK(verify_certificate(*v.certificate));

    // the desk also finds 1753 by plain trial division (it is small)
    Verdict blind = development_verdict(877, nullptr, opts);
    CHECK(blind.status == VerdictStatus::RuledOut);
    CHECK(*blind.certificate->p == 1753);

    // with trial division capped below 1753 nothing identifies a prime of
    // F_877 and the verdict is an honest Inconclusive
    GateOptions crippled;
    crippled.effort = FactorEffort{1000, 100000};
    Verdict inc = development_verdict(877, nullptr, crippled);
    CHECK(inc.status == VerdictStatus::Inconclusive);
    CHECK_FALSE(inc.missing.empty());
}

TEST_CASE("exceptional m = 277, 457, 577 fall to the prime divisor gate") {
    FactorTable t = sample_table();
    for (FibIndex m : {277, 457, 577}) {
        Verdict v = development_verdict(m, &t);
        CHECK(v.status == VerdictStatus::RuledOut);
        REQUIRE(v.certificate.has_value());
        CHECK(v.certificate->gate == "prime_divisor");
        CHECK(*v.certificate->p % 8 == 5);
        CHECK(verify_certificate(*v.certificate));
    }
}

TEST_CASE("factor table parsing") {
    {
        std::istringstream in("12: 2^4 * 3^2\n25: 5^2 * 3001\n");
        FactorTable t = FactorTable::parse(in);
        CHECK(t.size() == 2);
        auto f = t.lookup(12);
        REQUIRE(f.has_value());
        CHECK(f->complete());
        CHECK(f->str() == "2^4 * 3^2");
        CHECK_FALSE(t.lookup(13).has_value());
    }
    {
        std::istringstream in("12: 2^4 * 3^2\n25: 5^2 * 3002\n");
        CHECK_THROWS_WITH_AS(FactorTable::parse(in, "t"), doctest::Contains("t:2"),
                             parse_error);
    }
    {
        // prime written as a cofactor token: rejected (list it as a factor)
        std::istringstream in("25: 5^2 * C3001\n");
        CHECK_THROWS_AS(FactorTable::parse(in), parse_error);
    }
    {
        std::istringstream in("25: 25 * 3001\n"); // 25 is not prime
        CHECK_THROWS_AS(FactorTable::parse(in), parse_error);
    }
    {
        // valid partial line: 1845493 = 13 * 141961 is composite, coprime to 5
        std::istringstream in("35: 5 * C1845493\n");
        FactorTable t = FactorTable::parse(in);
        auto f = t.lookup(35);
        REQUIRE(f.has_value());
        CHECK_FALSE(f->complete());
        CHECK(f->cofactor == 1845493);
    }
    {
        std::istringstream in("35: 141961 * C65\n"); // C65 = 5 * 13, composite and coprime
        FactorTable t = FactorTable::parse(in);
        CHECK(t.lookup(35).has_value());
        std::istringstream bad("25: 5 * C15005\n"); // 15005 = 5 * 3001 shares the 5
        CHECK_THROWS_AS(FactorTable::parse(bad), parse_error);
    }
}

TEST_CASE("verify_certificate rejects tampering") {
    GateResult g = odd_order_gate(877, 1753, 5, factor(1752));
    Certificate c = *g.certificate;
    std::string why;

    Certificate bad = c;
    bad.order = 583;
    CHECK_FALSE(verify_certificate(bad, &why));
    CHECK(why.find("order") != std::string::npos);

    bad = c;
    bad.q_valuation = 5;
    CHECK_FALSE(verify_certificate(bad, &why));

    bad = c;
    bad.p = 1759;
    CHECK_FALSE(verify_certificate(bad, &why));

    bad = c;
    bad.gate = "nonsense";
    CHECK_FALSE(verify_certificate(bad, &why));

    GateResult sf = squarefree_shortcut(13, factor(fib(12)), factor(fib(11)));
    Certificate sc = *sf.certificate;
    sc.squarefree_primes = {Int(89), Int(97)}; // product no longer F_11
    CHECK_FALSE(verify_certificate(sc, &why));
}

TEST_CASE("scan: desk range, determinism, gate soundness cross-check") {
    GateOptions opts;
    auto verdicts = scan(61, nullptr, opts, 2);
    REQUIRE(verdicts.size() == 30);

    std::map<FibIndex, std::string> gate_by_m;
    for (const auto& v : verdicts) {
        if (v.m == 3) {
            CHECK(v.status == VerdictStatus::TrivialExists);
            continue;
        }
        if (v.m % 6 == 3) {
            CHECK(v.status == VerdictStatus::NoDesignByBrc);
            continue;
        }
        CHECK(v.status == VerdictStatus::RuledOut);
        REQUIRE(v.certificate.has_value());
        CHECK(verify_certificate(*v.certificate));
        gate_by_m[v.m] = v.certificate->gate;
    }
    // frozen from an independent simulation of the pipeline
    std::map<FibIndex, std::string> expected{
        {5, "congruence"},  {7, "congruence"},  {11, "squarefree_shortcut"},
        {13, "squarefree_shortcut"}, {17, "congruence"}, {19, "congruence"},
        {23, "squarefree_shortcut"}, {25, "prime_divisor"}, {29, "congruence"},
        {31, "congruence"}, {35, "prime_divisor"}, {37, "mod216"},
        {41, "congruence"}, {43, "congruence"}, {47, "squarefree_shortcut"},
        {49, "prime_divisor"}, {53, "congruence"}, {55, "congruence"},
        {59, "squarefree_shortcut"}, {61, "squarefree_shortcut"}};
    CHECK(gate_by_m == expected);

    // byte-identical reruns, regardless of worker count
    json a = scan_report(verdicts);
    json b = scan_report(scan(61, nullptr, opts, 1));
    CHECK(a.dump() == b.dump());

    // wherever the shortcut fired, an explicit odd-order pair fires too
    for (const auto& v : verdicts) {
        if (!v.certificate || v.certificate->gate != "squarefree_shortcut") continue;
        Factorization fm = factor(fib(v.m));
        bool some_pair_fires = false;
        for (const auto& pp : fm.prime_powers) {
            for (const Int& q : v.certificate->squarefree_primes) {
                GateResult r = odd_order_gate(v.m, pp.prime, q, factor(pp.prime - 1));
                if (r.outcome == GateOutcome::RuledOut) some_pair_fires = true;
            }
        }
        CHECK(some_pair_fires);
    }

    CHECK(scan(2).empty());
}
