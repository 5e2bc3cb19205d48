#ifndef FIBDES_NUMTHEORY_HPP
#define FIBDES_NUMTHEORY_HPP

#include <cstdint>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "fibdes/scalar.hpp"

namespace fibdes {

// Deterministic for n < 2^64 (Miller-Rabin over the first 12 prime bases,
// correct up to 3.3e24); above that, 64 fixed-base strong-pseudoprime
// rounds, error probability < 4^-64.
bool is_probable_prime(const Int& n);

struct PrimePower {
    Int prime;
    unsigned exponent = 1;
};

// prime_powers carry full multiplicities; cofactor is 1 (complete) or a
// composite > 1 coprime to every listed prime.
struct Factorization {
    Int value = 1;
    std::vector<PrimePower> prime_powers;
    Int cofactor = 1;

    bool complete() const { return cofactor == 1; }
    Int recompose() const;
    std::string str() const;
};

struct FactorEffort {
    std::uint64_t trial_limit = 100000;      // trial division bound
    std::uint64_t rho_iterations = 4000000;  // Brent-rho budget per split attempt
    static FactorEffort scaled(std::uint64_t n); // scan --effort N
};

// Never wrong, possibly partial: an exhausted budget leaves a composite
// cofactor. Deterministic for a fixed effort (fixed rho polynomials x^2+c,
// c = 1,2,3,..., fixed starting points).
Factorization factor(const Int& n, const FactorEffort& effort = {});

struct SquarefreePart {
    std::optional<Int> value;    // known square-free part, when complete
    std::set<Int> known_divisors; // primes certain to divide it regardless
};

SquarefreePart squarefree_part(const Factorization& f);

struct MultOrder {
    Int order;
    bool even = false;
};

// Exact order of a modulo p; refuses (nullopt) when p_minus_1 is partial.
std::optional<MultOrder> mult_order(const Int& a, const Int& p,
                                    const Factorization& p_minus_1);

// Convenience: factors p-1 internally with the given effort.
std::optional<MultOrder> mult_order(const Int& a, const Int& p,
                                    const FactorEffort& effort = {});

int jacobi(const Int& a, const Int& n);

std::optional<Int> perfect_square_root(const Int& n);
inline bool is_perfect_square(const Int& n) { return perfect_square_root(n).has_value(); }

struct TernaryWitness {
    Int x, y, z; // Z^2 = n X^2 + sign * lam Y^2, not all zero
};

struct TernaryVerdict {
    bool solvable = false;
    std::optional<TernaryWitness> witness;
    std::string reason;
};

// Nontrivial rational solvability of Z^2 = n X^2 + sign*lam Y^2 (n, lam > 0,
// sign = +-1), decided by Legendre's theorem on the square-free pairwise
// coprime normal form. The decision never comes from search; a search over
// |X|,|Y| <= 200 only attaches a witness when one is small.
TernaryVerdict brc_ternary_solvable(const Int& n, const Int& lam, int sign,
                                    const FactorEffort& effort = {});

} // namespace fibdes

#endif
