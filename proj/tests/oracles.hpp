#ifndef FIBDES_TESTS_ORACLES_HPP
#define FIBDES_TESTS_ORACLES_HPP

// Independent test oracles. Everything here is deliberately naive (additive
// recurrences, trial division, exhaustive search) and never calls into the
// code paths it is used to check.

#include <cstdint>
#include <map>
#include <optional>
#include <vector>

#include "fibdes/scalar.hpp"

namespace oracle {

using fibdes::Int;

// additive recurrence, the slow way
inline Int fib(std::uint64_t t) {
    Int a = 0, b = 1;
    for (std::uint64_t i = 0; i < t; ++i) {
        Int c = a + b;
        a = b;
        b = c;
    }
    return a;
}

inline Int lucas(std::uint64_t t) {
    Int a = 2, b = 1;
    for (std::uint64_t i = 0; i < t; ++i) {
        Int c = a + b;
        a = b;
        b = c;
    }
    return a;
}

// complete factorization by trial division; only for small n
inline std::map<Int, unsigned> trial_factor(Int n) {
    std::map<Int, unsigned> out;
    for (Int d = 2; d * d <= n; ++d)
        while (n % d == 0) {
            ++out[d];
            n /= d;
        }
    if (n > 1) ++out[n];
    return out;
}

inline bool trial_is_prime(const Int& n) {
    if (n < 2) return false;
    for (Int d = 2; d * d <= n; ++d)
        if (n % d == 0) return false;
    return true;
}

// exhaustive multiplicative order
inline Int mult_order(const Int& a, const Int& p) {
    Int x = a % p, acc = x;
    for (Int k = 1; k <= p; ++k) {
        if (acc == 1) return k;
        acc = (acc * x) % p;
    }
    return 0;
}

// Euler's criterion for odd prime p
inline int euler_symbol(const Int& a, const Int& p) {
    Int r = fibdes::powmod(a % p, (p - 1) / 2, p);
    if (r == 0) return 0;
    return r == 1 ? 1 : -1;
}

// exhaustive nontrivial solution search for Z^2 = n X^2 + sign lam Y^2
inline std::optional<std::array<Int, 3>> ternary_search(const Int& n, const Int& lam, int sign,
                                                        long bound) {
    for (long x = 0; x <= bound; ++x)
        for (long y = 0; y <= bound; ++y) {
            if (x == 0 && y == 0) continue;
            Int rhs = n * x * x + sign * lam * y * y;
            if (rhs < 0) continue;
            Int z = fibdes::isqrt(rhs);
            if (z * z == rhs) return std::array<Int, 3>{Int(x), Int(y), z};
        }
    return std::nullopt;
}

inline unsigned valuation(const Int& p, Int n) {
    unsigned e = 0;
    while (n != 0 && n % p == 0) {
        n /= p;
        ++e;
    }
    return e;
}

} // namespace oracle

#endif
