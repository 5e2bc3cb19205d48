#include "fibdes/params.hpp"

#include "fibdes/fib.hpp"

namespace fibdes {

namespace {

void require_odd_index(FibIndex m, const char* who) {
    if (m < 3 || m % 2 == 0)
        throw domain_error(std::string(who) + ": m must be odd and >= 3");
}

} // namespace

FibParams fibonacci_params(FibIndex m) {
    require_odd_index(m, "fibonacci_params");
    Int fm = fib(m), fm1 = fib(m - 1), fm2 = fib(m - 2), fm3 = fib(m - 3);
    FibParams p;
    p.m = m;
    p.v = fm * fm;
    p.k = fm1 * fm1;
    p.lam = fm1 * fm3;
    p.n = fm1 * fm2;
    return p;
}

ResidualParams residual_params(FibIndex m) {
    require_odd_index(m, "residual_params");
    Int fm = fib(m), fp1 = fib(m + 1), fm1 = fib(m - 1), fm2 = fib(m - 2), fm3 = fib(m - 3);
    ResidualParams p;
    p.m = m;
    p.v = fm * fm1 + 1;
    p.b = fp1 * fm1;
    p.r = fm1 * fm1;
    p.k = fm1 * fm2;
    p.lam = fm1 * fm3;
    return p;
}

std::optional<ResidualParams> metis_quasiresidual_from_r(const Int& r) {
    if (r <= 0) throw domain_error("metis_quasiresidual_from_r: r must be positive");
    auto x = perfect_square_root(5 * r + 4);
    auto y = perfect_square_root(r);
    if (!x || !y) return std::nullopt;
    // y = F_{2t} for some t >= 1; locate the even index
    FibIndex idx = 2;
    Int a = 1; // F_2
    while (a < *y) {
        idx += 2;
        a = fib(idx);
    }
    if (a != *y || lucas(idx) != *x) return std::nullopt;
    return residual_params(idx + 1);
}

BrcVerdict brc_test(const Int& v, const Int& k, const Int& lam,
                    const FactorEffort& effort) {
    if (k * (k - 1) != lam * (v - 1))
        throw domain_error("brc_test: k(k-1) = lam(v-1) violated");
    Int n = k - lam;
    BrcVerdict out;
    if (mpz_even_p(v.get_mpz_t())) {
        if (auto root = perfect_square_root(n)) {
            out.status = BrcStatus::PassEven;
            out.detail = "v even and n = " + n.get_str() + " = " + root->get_str() + "^2";
        } else {
            out.status = BrcStatus::FailEven;
            out.detail = "v even but n = " + n.get_str() + " is not a perfect square";
        }
        return out;
    }
    int sign = ((v - 1) / 2) % 2 == 0 ? 1 : -1;
    if (sign == 1) {
        if (auto root = perfect_square_root(k)) { // Z^2 = n + lam = k at X = Y = 1
            out.status = BrcStatus::PassOdd;
            out.witness = TernaryWitness{1, 1, *root};
            out.detail = "witness (1,1," + root->get_str() + ")";
            return out;
        }
    }
    TernaryVerdict t = brc_ternary_solvable(n, lam, sign, effort);
    out.status = t.solvable ? BrcStatus::PassOdd : BrcStatus::FailOdd;
    out.witness = t.witness;
    out.detail = t.reason;
    return out;
}

BrouwerParams brouwer_params(const Int& q, unsigned t) {
    if (q < 2) throw domain_error("brouwer_params: q must be a prime power >= 2");
    Factorization f = factor(q);
    if (!f.complete() || f.prime_powers.size() != 1)
        throw domain_error("brouwer_params: q = " + q.get_str() + " is not a prime power");
    if (t < 2) throw domain_error("brouwer_params: t must be >= 2");
    Int qt = pow_int(q, t);
    Int lam2 = pow_int(q, t - 1) * (q - 1); // 2*lam
    if (mpz_odd_p(lam2.get_mpz_t()))
        throw domain_error("brouwer_params: lambda is not integral");
    BrouwerParams p;
    p.q = q;
    p.t = t;
    p.v = 2 * q * (qt - 1) / (q - 1) + 1;
    p.k = qt;
    p.lam = lam2 / 2;
    return p;
}

BrouwerBrcVerdict brouwer_brc(const Int& q, unsigned t) {
    // power-of-2 check
    if (q < 2 || mpz_popcount(q.get_mpz_t()) != 1)
        throw domain_error("brouwer_brc: q must be a power of 2");
    unsigned long e = mpz_scan1(q.get_mpz_t(), 0); // q = 2^e
    BrouwerBrcVerdict out;
    if (e % 2 == 0 || t % 2 == 0) {
        Int z = isqrt(pow_int(q, t));
        out.pass = true;
        out.witness = TernaryWitness{1, 1, z};
        out.detail = "q an even power of 2 or t even; witness (1,1," + z.get_str() + ")";
        return out;
    }
    // odd power of 2, odd t: q^(t-1) is a square; pass iff every prime
    // divisor of (q+1)* is 1 mod 4
    Factorization f = factor(q + 1);
    for (const auto& pp : f.prime_powers) {
        if (pp.exponent % 2 == 0) continue;
        if (pp.prime % 4 != 1) {
            out.pass = false;
            out.detail = "prime " + pp.prime.get_str() + " | (q+1)* with " +
                         pp.prime.get_str() + " = 3 (mod 4)";
            return out;
        }
    }
    out.pass = true;
    if (q == 8) {
        // regression constant 2*12^2 = 9*5^2 + 7*3^2; Z picks up sqrt(q^(t-1))
        Int s = isqrt(pow_int(q, t - 1));
        out.witness = TernaryWitness{5, 3, 12 * s};
        out.detail = "stored witness 2*12^2 = 9*5^2 + 7*3^2 (scaled by " + s.get_str() + ")";
    } else {
        out.detail = "all primes of (q+1)* are 1 mod 4";
    }
    return out;
}

} // namespace fibdes
