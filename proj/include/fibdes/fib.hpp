#ifndef FIBDES_FIB_HPP
#define FIBDES_FIB_HPP

#include <cstdint>
#include <vector>

#include "fibdes/scalar.hpp"

namespace fibdes {

// Exact Fibonacci and Lucas arithmetic. fib/fib_mod use fast doubling,
// so indices near 1000 (F_t ~ 209 digits) and far beyond are cheap; the
// modular variant never materializes F_t.

Int fib(FibIndex t);
Int lucas(FibIndex t);

// F_t mod modulus, modulus >= 2.
Int fib_mod(FibIndex t, const Int& modulus);

// Smallest pi > 0 with F_{t+pi} = F_t (mod modulus) for all t.
// Found by scanning consecutive states for (0,1); pi(n) <= 6n.
Int pisano_period(const Int& modulus);

// Smallest t > 0 with p | F_t; p must be prime.
// alpha(p) divides every index t with p | F_t.
FibIndex rank_of_apparition(const Int& p);

struct Valuation {
    Int prime;
    FibIndex index = 0;
    unsigned exponent = 0; // exact power of prime dividing F_index
};

// nu_p(F_t) via the law of repetition:
//   alpha(p) | t  =>  nu_p(F_t) = nu_p(F_alpha(p)) + nu_p(t / alpha(p))
//   otherwise 0.
// p = 2 breaks the law and is hard-coded: nu2(F_3)=1, nu2(F_6)=3,
// nu2(F_{6k}) = nu2(k)+3, nu2(F_t)=1 for t = 3 mod 6, else 0.
Valuation fib_valuation(const Int& p, FibIndex t);

// nu_p(n) for plain integers, n != 0.
unsigned int_valuation(const Int& p, const Int& n);

} // namespace fibdes

#endif
