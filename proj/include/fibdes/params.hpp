#ifndef FIBDES_PARAMS_HPP
#define FIBDES_PARAMS_HPP

#include <optional>
#include <string>

#include "fibdes/numtheory.hpp"
#include "fibdes/scalar.hpp"

namespace fibdes {

// Quasi-residual Metis parameters indexed by odd m:
//   v = F_m F_{m-1} + 1, b = F_{m+1} F_{m-1}, r = F_{m-1}^2,
//   k = F_{m-1} F_{m-2}, lam = F_{m-1} F_{m-3}
// satisfying v r = b k, r(k-1) = lam(v-1), v = r + k + 1, r = k + lam.
struct ResidualParams {
    FibIndex m = 0;
    Int v, b, r, k, lam;
};

// Symmetric parameters (F_m^2, F_{m-1}^2, F_{m-1} F_{m-3}), order n = F_{m-1} F_{m-2}.
struct FibParams {
    FibIndex m = 0;
    Int v, k, lam, n;
};

FibParams fibonacci_params(FibIndex m);
ResidualParams residual_params(FibIndex m);

// Inverts r = F_{2t}^2: both 5r+4 and r must be perfect squares, in which
// case their roots are L_{2t} and F_{2t} and m = 2t+1.
std::optional<ResidualParams> metis_quasiresidual_from_r(const Int& r);

enum class BrcStatus { PassEven, FailEven, PassOdd, FailOdd };

struct BrcVerdict {
    BrcStatus status;
    std::optional<TernaryWitness> witness; // satisfies Z^2 = nX^2 + sign*lam*Y^2 exactly
    std::string detail;
    bool passed() const { return status == BrcStatus::PassEven || status == BrcStatus::PassOdd; }
};

// Bruck-Ryser-Chowla for a symmetric (v,k,lam); requires k(k-1) = lam(v-1).
// v even: n = k - lam must be a perfect square. v odd: solvability of
// Z^2 = n X^2 + (-1)^((v-1)/2) lam Y^2. The Fibonacci-shaped witness
// (1,1,sqrt(k)) is tried first whenever v = 1 (mod 4) and k is a square.
BrcVerdict brc_test(const Int& v, const Int& k, const Int& lam,
                    const FactorEffort& effort = {});

struct BrouwerParams {
    Int q;
    unsigned t = 0;
    Int v, k, lam;
};

// v = 2q(q^t - 1)/(q - 1) + 1, k = q^t, lam = q^(t-1)(q-1)/2 for prime powers q.
BrouwerParams brouwer_params(const Int& q, unsigned t);

struct BrouwerBrcVerdict {
    bool pass = false;
    std::optional<TernaryWitness> witness; // 2 Z^2 = q^(t-1)((q+1) X^2 + (q-1) Y^2)
    std::string detail;
};

// BRC analysis of the Brouwer family for q a power of 2: automatic pass with
// witness (1, 1, sqrt(q^t)) when q is an even power of 2 or t is even;
// otherwise pass iff every prime divisor of (q+1)* is 1 mod 4.
BrouwerBrcVerdict brouwer_brc(const Int& q, unsigned t);

} // namespace fibdes

#endif
