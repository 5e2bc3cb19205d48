#include "fibdes/fib.hpp"

#include <utility>

namespace fibdes {

namespace {

// Fast doubling: from (F_k, F_{k+1}) derive
//   F_{2k}   = F_k * (2 F_{k+1} - F_k)
//   F_{2k+1} = F_k^2 + F_{k+1}^2
std::pair<Int, Int> fib_pair(FibIndex t) {
    if (t == 0) return {0, 1};
    auto [a, b] = fib_pair(t >> 1);
    Int c = a * (2 * b - a);
    Int d = a * a + b * b;
    if (t & 1) return {d, c + d};
    return {c, d};
}

std::pair<Int, Int> fib_pair_mod(FibIndex t, const Int& m) {
    if (t == 0) return {Int(0 % m), Int(1 % m)};
    auto [a, b] = fib_pair_mod(t >> 1, m);
    Int c = (a * (2 * b - a)) % m;
    if (c < 0) c += m;
    Int d = (a * a + b * b) % m;
    if (t & 1) {
        Int e = (c + d) % m;
        return {d, e};
    }
    return {c, d};
}

} // namespace

Int fib(FibIndex t) { return fib_pair(t).first; }

Int lucas(FibIndex t) {
    // L_t = 2 F_{t+1} - F_t (valid from t = 0: L_0 = 2*1 - 0 = 2)
    auto [a, b] = fib_pair(t);
    return 2 * b - a;
}

Int fib_mod(FibIndex t, const Int& modulus) {
    if (modulus < 2) throw domain_error("fib_mod: modulus must be >= 2");
    return fib_pair_mod(t, modulus).first;
}

Int pisano_period(const Int& modulus) {
    if (modulus < 2) throw domain_error("pisano_period: modulus must be >= 2");
    Int a = 0, b = 1;
    Int limit = 6 * modulus;
    for (Int pi = 1; pi <= limit; ++pi) {
        Int next = (a + b) % modulus;
        a = b;
        b = next;
        if (a == 0 && b == 1) return pi;
    }
    throw std::logic_error("pisano_period: no period below 6n"); // unreachable
}

FibIndex rank_of_apparition(const Int& p) {
    if (mpz_probab_prime_p(p.get_mpz_t(), 40) == 0)
        throw domain_error("rank_of_apparition: p must be prime");
    Int a = 1 % p, b = 1 % p; // F_1, F_2
    for (FibIndex t = 1;; ++t) {
        if (a == 0) return t;
        Int next = (a + b) % p;
        a = b;
        b = next;
    }
}

unsigned int_valuation(const Int& p, const Int& n) {
    if (n == 0) throw domain_error("int_valuation: n must be nonzero");
    Int r = n;
    unsigned e = 0;
    while (mpz_divisible_p(r.get_mpz_t(), p.get_mpz_t())) {
        r /= p;
        ++e;
    }
    return e;
}

Valuation fib_valuation(const Int& p, FibIndex t) {
    if (t == 0) throw domain_error("fib_valuation: t must be positive");
    Valuation v{p, t, 0};
    if (p == 2) {
        if (t % 3 != 0) return v;
        if (t % 6 == 3) { v.exponent = 1; return v; }
        v.exponent = 3 + int_valuation(2, Int(t / 6));
        return v;
    }
    FibIndex alpha = rank_of_apparition(p);
    if (t % alpha != 0) return v;
    // nu_p(F_alpha) probed with fib_mod against rising powers of p
    unsigned base = 1;
    Int pk = p * p;
    while (fib_mod(alpha, pk) == 0) {
        ++base;
        pk *= p;
    }
    v.exponent = base + int_valuation(p, Int(t / alpha));
    return v;
}

} // namespace fibdes
