#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "fibdes/variety.hpp"

using namespace fibdes;

namespace {

DesignPoint point(long v, long b, long r, long k, long lam) {
    return DesignPoint{Rational(v), Rational(b), Rational(r), Rational(k), Rational(lam)};
}

const DesignPoint kFano = point(7, 7, 3, 3, 1);
const DesignPoint kMetis = point(16, 24, 9, 6, 3);
const DesignPoint kF3 = point(4, 4, 1, 1, 0);

std::array<Rational, 5> dir(long a, long b, long c, long d, long e) {
    return {Rational(a), Rational(b), Rational(c), Rational(d), Rational(e)};
}

bool has_direction(const std::vector<VarietyLine>& lines, const std::array<Rational, 5>& d) {
    for (const auto& l : lines)
        if (l.exact && directions_projectively_equal(l.direction, d)) return true;
    return false;
}

const VarietyLine& line_with(const std::vector<VarietyLine>& lines,
                             const std::array<Rational, 5>& d) {
    for (const auto& l : lines)
        if (l.exact && directions_projectively_equal(l.direction, d)) return l;
    throw std::runtime_error("direction not found");
}

} // namespace

TEST_CASE("variety membership and Q") {
    CHECK(on_variety(kFano));
    CHECK(on_variety(kMetis));
    CHECK_FALSE(on_variety(point(2, 2, 2, 1, 1)));
    CHECK(q_value(kFano) == 2);
    CHECK(q_value(kMetis) == 9);
    CHECK(q_value(point(5, 2, 2, 5, 2)) == 0); // on Pi3
}

TEST_CASE("plane membership") {
    auto pm = plane_membership(point(1, 0, 0, 0, 0));
    CHECK(pm.count(PlaneId::Pi1) == 1);
    CHECK(pm.count(PlaneId::Pi6) == 1);

    pm = plane_membership(point(5, 2, 2, 5, 2));
    CHECK(pm == std::set<PlaneId>{PlaneId::Pi3});

    CHECK(plane_membership(kFano).empty());
    CHECK(plane_membership(kF3).empty());

    // all seven planes lie inside the variety: sampled points satisfy both
    // defining equations
    auto check_plane = [](auto make) {
        for (long s = -3; s <= 3; ++s)
            for (long t = -2; t <= 2; ++t) {
                DesignPoint p = make(Rational(s), Rational(t, 2));
                CHECK(on_variety(p));
                auto planes = plane_membership(p);
                CHECK_FALSE(planes.empty());
            }
    };
    check_plane([](Rational s, Rational t) { return DesignPoint{s, 0, 0, t, 0}; });        // Pi0
    check_plane([](Rational s, Rational t) { return DesignPoint{1, 0, 0, s, t}; });        // Pi1
    check_plane([](Rational s, Rational t) { return DesignPoint{s, t, 0, 0, 0}; });        // Pi2
    check_plane([](Rational s, Rational t) { return DesignPoint{s, t, t, s, t}; });        // Pi3
    check_plane([](Rational s, Rational t) { return DesignPoint{0, s, t, 0, t}; });        // Pi4
    check_plane([](Rational s, Rational t) { return DesignPoint{1, s, s, 1, t}; });        // Pi5
    check_plane([](Rational s, Rational t) { return DesignPoint{1, s, 0, 0, t}; });        // Pi6
    // and Q vanishes on Pi0..Pi3
    for (long s = -3; s <= 3; ++s) {
        CHECK(q_value(DesignPoint{Rational(s), 0, 0, Rational(s + 1), 0}) == 0);
        CHECK(q_value(DesignPoint{1, 0, 0, Rational(s), Rational(s)}) == 0);
        CHECK(q_value(DesignPoint{Rational(s), Rational(s - 5), 0, 0, 0}) == 0);
        CHECK(q_value(DesignPoint{Rational(s), Rational(7), Rational(7), Rational(s), Rational(7)}) == 0);
    }
}

TEST_CASE("replication lines") {
    VarietyLine l = replication_line(kFano);
    CHECK(l.direction == dir(0, 7, 3, 0, 1));
    CHECK(l.tag == LineTag::Replication);
    CHECK(line_residual(l) == 0);

    CHECK(replication_line(kMetis).direction == dir(0, 24, 9, 0, 3));
    CHECK(replication_line(kF3).direction == dir(0, 4, 1, 0, 0));

    CHECK_THROWS_AS(replication_line(point(2, 2, 2, 1, 1)), domain_error);
    // a Pi0 point has the zero direction
    CHECK_THROWS_AS(replication_line(point(9, 0, 0, 4, 0)), domain_error);
}

TEST_CASE("fisher factor") {
    CHECK(fisher_factor(kFano) == 1);
    CHECK(fisher_factor(kMetis) == Rational(3, 2));
    CHECK(fisher_factor(kF3) == 1);
    CHECK_THROWS_AS(fisher_factor(point(0, 1, 1, 0, 1)), domain_error);
}

TEST_CASE("four lines through the Fano point") {
    auto lines = lines_through(kFano);
    unsigned total = 0;
    for (const auto& l : lines) {
        total += l.multiplicity;
        CHECK(l.exact);
        CHECK(line_residual(l) == 0);
    }
    CHECK(total == 4);
    REQUIRE(lines.size() == 4);

    CHECK(has_direction(lines, dir(0, 7, 3, 0, 1)));   // replication
    CHECK(has_direction(lines, dir(4, 4, 2, 2, 1)));   // F1
    CHECK(has_direction(lines, dir(9, 9, 3, 3, 1)));   // F0
    CHECK(has_direction(lines, dir(42, 49, 21, 18, 9))); // P

    CHECK(line_with(lines, dir(0, 7, 3, 0, 1)).tag == LineTag::Replication);
    CHECK(line_with(lines, dir(4, 4, 2, 2, 1)).tag == LineTag::FisherF1);
    CHECK(line_with(lines, dir(9, 9, 3, 3, 1)).tag == LineTag::FisherF0);
    CHECK(line_with(lines, dir(42, 49, 21, 18, 9)).tag == LineTag::PLine);
}

TEST_CASE("the Metis point: one non-replication line keeps the Metis relation") {
    auto lines = lines_through(kMetis);
    unsigned total = 0;
    for (const auto& l : lines) total += l.multiplicity;
    CHECK(total == 4);

    unsigned metis_lines = 0;
    for (const auto& l : lines) {
        bool metis = relation_along_line(l, metis_relation());
        if (l.tag == LineTag::Replication) {
            CHECK_FALSE(metis); // r varies while v, k stay fixed
            continue;
        }
        if (metis) {
            ++metis_lines;
            CHECK(l.tag == LineTag::FisherF1);
            CHECK(directions_projectively_equal(l.direction, dir(50, 75, 30, 20, 12)));
        }
    }
    CHECK(metis_lines == 1);
    CHECK(has_direction(lines, dir(0, 8, 3, 0, 1)));
    CHECK(has_direction(lines, dir(6, 9, 3, 2, 1)));
    CHECK(line_with(lines, dir(6, 9, 3, 2, 1)).tag == LineTag::FisherF0);
    CHECK(line_with(lines, dir(40, 64, 24, 15, 9)).tag == LineTag::PLine);
}

TEST_CASE("the trivial F3 point still carries four lines") {
    auto lines = lines_through(kF3);
    unsigned total = 0;
    for (const auto& l : lines) total += l.multiplicity;
    CHECK(total == 4);
    CHECK(has_direction(lines, dir(0, 4, 1, 0, 0)));
}

TEST_CASE("degenerate points are refused") {
    CHECK_THROWS_AS(lines_through(point(5, 2, 2, 5, 2)), domain_error); // Pi3
    CHECK_THROWS_AS(lines_through(point(1, 0, 0, 0, 0)), domain_error);
    CHECK_THROWS_AS(lines_through(point(3, 1, 1, 3, 3)), domain_error); // off-variety
}

TEST_CASE("relation propagation along lines") {
    auto lines = lines_through(kMetis);
    const VarietyLine& f1 = line_with(lines, dir(50, 75, 30, 20, 12));
    CHECK(relation_along_line(f1, metis_relation()));
    VarietyLine rep = replication_line(kMetis);
    CHECK_FALSE(relation_along_line(rep, metis_relation()));
    // 0 = 0 holds along anything
    std::array<Rational, 6> trivial{};
    for (const auto& l : lines) CHECK(relation_along_line(l, trivial));
}

TEST_CASE("classification is projectively invariant") {
    auto lines = lines_through(kMetis);
    for (const auto& l : lines) {
        VarietyLine scaled = l;
        for (auto& c : scaled.direction) c *= Rational(-7, 3);
        CHECK(classify_line(scaled) == l.tag);
    }
}

TEST_CASE("twenty generated nondegenerate rational points") {
    // generation scheme: random integer (v, r, k), then b = v r / k and
    // lam = r (k-1) / (v-1)
    std::mt19937 rng(20260809);
    std::uniform_int_distribution<long> dv(3, 60), dr(1, 60), dk(2, 60);
    unsigned tested = 0;
    while (tested < 20) {
        DesignPoint p;
        p.v = Rational(dv(rng));
        p.r = Rational(dr(rng));
        p.k = Rational(dk(rng));
        p.b = p.v * p.r / p.k;
        p.lam = p.r * (p.k - 1) / (p.v - 1);
        if (!plane_membership(p).empty()) continue;
        REQUIRE(on_variety(p));
        ++tested;
        auto lines = lines_through(p);
        unsigned total = 0;
        bool saw_replication = false;
        std::array<Rational, 5> rep{Rational(0), p.b, p.r, Rational(0), p.lam};
        for (const auto& l : lines) {
            total += l.multiplicity;
            if (l.exact) {
                CHECK(line_residual(l) == 0);
                if (directions_projectively_equal(l.direction, rep)) saw_replication = true;
            } else {
                CHECK(line_residual(l) < Rational(1, 1000000000));
            }
        }
        CHECK(total == 4);
        CHECK(saw_replication);
    }
}
