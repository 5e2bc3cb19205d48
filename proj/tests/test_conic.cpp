#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "fibdes/conic.hpp"

using namespace fibdes;

namespace {

Rational rat(long n, long d = 1) { return Rational(n, d); }

Poly from_ints(std::initializer_list<long> cs) {
    Poly p;
    for (long c : cs) p.push_back(rat(c));
    return p;
}

} // namespace

TEST_CASE("polynomial helpers") {
    Poly p = from_ints({-6, 11, -6, 1}); // (x-1)(x-2)(x-3)
    CHECK(poly::degree(p) == 3);
    CHECK(poly::eval(p, rat(2)) == 0);
    CHECK(poly::eval(p, rat(4)) == 6);
    Poly d = poly::derivative(p);
    CHECK(d == from_ints({11, -12, 3}));

    Poly q = poly::mul(from_ints({-1, 1}), from_ints({-2, 1}));
    CHECK(q == from_ints({2, -3, 1}));
    CHECK(poly::divide_exact(p, from_ints({-2, 1})) == poly::mul(from_ints({-1, 1}), from_ints({-3, 1})));
    CHECK_THROWS_AS(poly::divide_exact(p, from_ints({1, 1})), domain_error);

    Poly g = poly::gcd(poly::mul(q, from_ints({-5, 1})), poly::mul(q, from_ints({7, 1})));
    CHECK(g == poly::monic(q));
}

TEST_CASE("simplest rational in an interval") {
    CHECK(simplest_rational_between(rat(1, 3), rat(1, 2)) == rat(1, 2));
    CHECK(simplest_rational_between(rat(28, 100), rat(34, 100)) == rat(1, 3));
    CHECK(simplest_rational_between(rat(-1, 3), rat(1, 5)) == 0);
    CHECK(simplest_rational_between(rat(7, 5), rat(8, 5)) == rat(3, 2));
    CHECK(simplest_rational_between(rat(5), rat(5)) == rat(5));
    CHECK(simplest_rational_between(rat(31, 10), rat(52, 10)) == rat(4));
    CHECK(simplest_rational_between(rat(-7, 2), rat(-10, 3)) == rat(-7, 2));
    // tight interval around 355/113
    CHECK(simplest_rational_between(rat(355 * 1000 - 1, 113 * 1000), rat(355 * 1000 + 1, 113 * 1000)) ==
          rat(355, 113));
}

TEST_CASE("real roots: rational, irrational, multiplicities") {
    // (x^2 - 2)(x - 3): exact 3, dyadic +-sqrt(2)
    Poly p = poly::mul(from_ints({-2, 0, 1}), from_ints({-3, 1}));
    auto roots = real_roots(p, 80);
    REQUIRE(roots.size() == 3);
    CHECK_FALSE(roots[0].exact);
    CHECK_FALSE(roots[1].exact);
    CHECK(roots[2].exact);
    CHECK(roots[2].value == 3);
    Rational two(2);
    for (int i : {0, 1}) {
        Rational err = rational_abs(roots[i].value * roots[i].value - two);
        CHECK(err < Rational(1, 1000000000));
    }

    // (x - 1/2)^2 (x + 7)
    Poly sq = poly::mul(poly::mul(from_ints({-1, 2}), from_ints({-1, 2})), from_ints({7, 1}));
    roots = real_roots(sq, 64);
    REQUIRE(roots.size() == 2);
    CHECK(roots[0].exact);
    CHECK(roots[0].value == -7);
    CHECK(roots[0].multiplicity == 1);
    CHECK(roots[1].exact);
    CHECK(roots[1].value == rat(1, 2));
    CHECK(roots[1].multiplicity == 2);

    // no real roots
    CHECK(real_roots(from_ints({1, 0, 1})).empty());
    CHECK_THROWS_AS(real_roots(Poly{}), domain_error);

    // close rational roots are separated and identified
    Poly close = poly::mul(from_ints({-100, 101}), from_ints({-101, 102})); // 100/101, 101/102
    roots = real_roots(close);
    REQUIRE(roots.size() == 2);
    CHECK(roots[0].exact);
    CHECK(roots[0].value == rat(100, 101));
    CHECK(roots[1].value == rat(101, 102));
}

TEST_CASE("conic intersection: four rational points") {
    // x^2 + y^2 - 5 z^2 and x y - 2 z^2: (1,2),(2,1),(-1,-2),(-2,-1)
    Conic c1{rat(1), rat(1), rat(-5), rat(0), rat(0), rat(0)};
    Conic c2{rat(0), rat(0), rat(-2), rat(1), rat(0), rat(0)};
    auto pts = intersect_conics(c1, c2);
    unsigned total = 0;
    for (const auto& p : pts) {
        total += p.multiplicity;
        CHECK(p.exact);
        CHECK(c1.eval(p.coords[0], p.coords[1], p.coords[2]) == 0);
        CHECK(c2.eval(p.coords[0], p.coords[1], p.coords[2]) == 0);
    }
    CHECK(total == 4);
    CHECK(pts.size() == 4);
}

TEST_CASE("conic intersection: irrational points and a double point at infinity") {
    // x^2 - 2 z^2 (line pair x = +-sqrt(2) z) and z(y - z) (line pair z = 0, y = z):
    // (sqrt2 : 1 : 1), (-sqrt2 : 1 : 1), and the double contact (0 : 1 : 0)
    // where the line z = 0 meets x^2 = 2 z^2 tangentially
    Conic c1{rat(1), rat(0), rat(-2), rat(0), rat(0), rat(0)};
    Conic c2{rat(0), rat(0), rat(-1), rat(0), rat(0), rat(1)};
    auto pts = intersect_conics(c1, c2, 128);
    unsigned total = 0;
    bool saw_infinity = false;
    for (const auto& p : pts) {
        total += p.multiplicity;
        if (p.exact && p.coords[0] == 0 && p.coords[2] == 0) {
            saw_infinity = true;
            CHECK(p.multiplicity == 2);
        } else {
            // x/z should be near +-sqrt(2)
            REQUIRE(p.coords[2] != 0);
            Rational ratio = p.coords[0] / p.coords[2];
            CHECK(rational_abs(ratio * ratio - 2) < Rational(1, 100000000));
        }
    }
    CHECK(total == 4);
    CHECK(saw_infinity);
}

TEST_CASE("conic intersection: tangency carries multiplicity") {
    // unit circle and the horizontal tangent y = z ((0:1:1) doubled), plus
    // intersections with... x^2 + y^2 - z^2 and (y - z)^2: tangent line pair
    Conic circle{rat(1), rat(1), rat(-1), rat(0), rat(0), rat(0)};
    Conic tangent2{rat(0), rat(1), rat(1), rat(0), rat(0), rat(-2)}; // (y - z)^2
    auto pts = intersect_conics(circle, tangent2);
    unsigned total = 0;
    for (const auto& p : pts) total += p.multiplicity;
    CHECK(total == 4);
    REQUIRE(pts.size() == 1);
    CHECK(pts[0].exact);
    CHECK(pts[0].multiplicity == 4);
    // the point is (0 : 1 : 1)
    CHECK(pts[0].coords[0] == 0);
    CHECK(pts[0].coords[1] == pts[0].coords[2]);
}

TEST_CASE("conics sharing a component are rejected") {
    Conic c1{rat(1), rat(-1), rat(0), rat(0), rat(0), rat(0)}; // (x-y)(x+y)
    Conic c2{rat(1), rat(0), rat(0), rat(-1), rat(0), rat(0)}; // x(x - y)
    CHECK_THROWS_AS(intersect_conics(c1, c2), domain_error);
    Conic z{};
    CHECK_THROWS_AS(intersect_conics(z, c1), domain_error);
}
