#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "fibdes/fib.hpp"
#include "fibdes/params.hpp"

using namespace fibdes;

TEST_CASE("fibonacci design parameters") {
    FibParams p = fibonacci_params(3);
    CHECK(p.v == 4);
    CHECK(p.k == 1);
    CHECK(p.lam == 0);
    CHECK(p.n == 1);

    p = fibonacci_params(5);
    CHECK(p.v == 25);
    CHECK(p.k == 9);
    CHECK(p.lam == 3);

    p = fibonacci_params(7);
    CHECK(p.v == 169);
    CHECK(p.k == 64);
    CHECK(p.lam == 24);
    CHECK(p.n == 40);

    CHECK_THROWS_AS(fibonacci_params(4), domain_error);
    CHECK_THROWS_AS(fibonacci_params(1), domain_error);

    // k(k-1) = lam(v-1) for all odd m
    for (FibIndex m = 3; m <= 99; m += 2) {
        FibParams q = fibonacci_params(m);
        CHECK(q.k * (q.k - 1) == q.lam * (q.v - 1));
        CHECK(q.n == q.k - q.lam);
    }
}

TEST_CASE("quasi-residual parameters and their identities") {
    ResidualParams r = residual_params(5);
    CHECK(r.v == 16);
    CHECK(r.b == 24);
    CHECK(r.r == 9);
    CHECK(r.k == 6);
    CHECK(r.lam == 3);

    r = residual_params(3);
    CHECK(r.v == 3);
    CHECK(r.b == 3);
    CHECK(r.r == 1);
    CHECK(r.k == 1);
    CHECK(r.lam == 0);

    // m=7: the formulas force v = 13*8+1 = 105 (and v = r+k+1 = 64+40+1)
    r = residual_params(7);
    CHECK(r.v == 105);
    CHECK(r.b == 168);
    CHECK(r.r == 64);
    CHECK(r.k == 40);
    CHECK(r.lam == 24);

    for (FibIndex m = 3; m <= 99; m += 2) {
        ResidualParams q = residual_params(m);
        CHECK(q.v * q.r == q.b * q.k);                  // vr = bk
        CHECK(q.r * (q.k - 1) == q.lam * (q.v - 1));    // r(k-1) = lam(v-1)
        CHECK(q.v == q.r + q.k + 1);                    // Metis
        CHECK(q.r == q.k + q.lam);                      // quasi-residual
        CHECK(q.v == fib(m) * fib(m - 1) + 1);
        // residual of the symmetric design
        FibParams f = fibonacci_params(m);
        CHECK(f.v == q.b + 1);
        CHECK(f.k == q.r);
        CHECK(f.lam == q.lam);
    }
}

TEST_CASE("metis parameters from r") {
    auto p = metis_quasiresidual_from_r(9);
    REQUIRE(p.has_value());
    CHECK(p->m == 5);
    CHECK(p->v == 16);
    CHECK(p->b == 24);
    CHECK(p->k == 6);

    CHECK_FALSE(metis_quasiresidual_from_r(2).has_value()); // 14 is not a square
    CHECK_FALSE(metis_quasiresidual_from_r(4).has_value()); // 24 is not a square

    p = metis_quasiresidual_from_r(1);
    REQUIRE(p.has_value());
    CHECK(p->m == 3);
    CHECK(p->v == 3);
    CHECK(p->b == 3);
    CHECK(p->lam == 0);

    CHECK_THROWS_AS(metis_quasiresidual_from_r(0), domain_error);

    // round trip: r = F_{2t}^2 recovers residual_params(2t+1)
    for (FibIndex t = 1; t <= 20; ++t) {
        Int r = fib(2 * t) * fib(2 * t);
        auto got = metis_quasiresidual_from_r(r);
        REQUIRE(got.has_value());
        ResidualParams want = residual_params(2 * t + 1);
        CHECK(got->m == want.m);
        CHECK(got->v == want.v);
        CHECK(got->b == want.b);
        CHECK(got->r == want.r);
        CHECK(got->k == want.k);
        CHECK(got->lam == want.lam);
    }
}

TEST_CASE("brc_test across the Fibonacci family") {
    BrcVerdict v = brc_test(25, 9, 3);
    CHECK(v.status == BrcStatus::PassOdd);
    REQUIRE(v.witness.has_value());
    CHECK(v.witness->x == 1);
    CHECK(v.witness->y == 1);
    CHECK(v.witness->z == 3);

    v = brc_test(4, 1, 0);
    CHECK(v.status == BrcStatus::PassEven);

    // m = 9 gives the even case with n = F_8 F_7 = 273, not a square
    FibParams p9 = fibonacci_params(9);
    CHECK(p9.v == 1156);
    CHECK(p9.n == 273);
    v = brc_test(p9.v, p9.k, p9.lam);
    CHECK(v.status == BrcStatus::FailEven);

    CHECK_THROWS_AS(brc_test(25, 9, 4), domain_error); // identity violated

    // odd m = +-1 (mod 6): witness (1,1,F_{m-1}) always works
    for (FibIndex m = 5; m <= 99; m += 2) {
        FibParams p = fibonacci_params(m);
        BrcVerdict verdict = brc_test(p.v, p.k, p.lam);
        if (m % 6 == 3) {
            CHECK(verdict.status == BrcStatus::FailEven);
        } else {
            CHECK(verdict.status == BrcStatus::PassOdd);
            REQUIRE(verdict.witness.has_value());
            CHECK(verdict.witness->z == fib(m - 1));
            // Z^2 = n X^2 + lam Y^2 exactly
            CHECK(verdict.witness->z * verdict.witness->z == p.n + p.lam);
        }
    }

    // a known hard failure: the (43,7,1) projective plane of order 6
    v = brc_test(43, 7, 1);
    CHECK(v.status == BrcStatus::FailOdd);
}

TEST_CASE("brouwer family") {
    BrouwerParams b = brouwer_params(4, 2);
    CHECK(b.v == 41);
    CHECK(b.k == 16);
    CHECK(b.lam == 6);

    b = brouwer_params(4, 3);
    CHECK(b.v == 169);
    CHECK(b.k == 64);
    CHECK(b.lam == 24);

    b = brouwer_params(8, 2);
    CHECK(b.v == 145);
    CHECK(b.k == 64);
    CHECK(b.lam == 28);

    CHECK_THROWS_AS(brouwer_params(6, 2), domain_error);  // not a prime power
    CHECK_THROWS_AS(brouwer_params(4, 1), domain_error);

    // BRC for powers of 2: q=8 passes at odd t with the stored witness
    BrouwerBrcVerdict v = brouwer_brc(8, 3);
    CHECK(v.pass);
    REQUIRE(v.witness.has_value());
    // 2 Z^2 = q^{t-1} ((q+1) X^2 + (q-1) Y^2)
    Int lhs = 2 * v.witness->z * v.witness->z;
    Int rhs = pow_int(8, 2) * (9 * v.witness->x * v.witness->x + 7 * v.witness->y * v.witness->y);
    CHECK(lhs == rhs);
    CHECK(v.witness->x == 5);
    CHECK(v.witness->y == 3);

    CHECK_FALSE(brouwer_brc(2, 3).pass);
    CHECK_FALSE(brouwer_brc(32, 3).pass);
    CHECK_FALSE(brouwer_brc(128, 3).pass);
    CHECK(brouwer_brc(4, 3).pass);  // even power of 2
    CHECK(brouwer_brc(2, 4).pass);  // even t
    CHECK(brouwer_brc(8, 2).pass);

    CHECK_THROWS_AS(brouwer_brc(9, 3), domain_error); // not a power of 2
}
