#ifndef FIBDES_CONIC_HPP
#define FIBDES_CONIC_HPP

#include <array>
#include <optional>
#include <vector>

#include "fibdes/scalar.hpp"

namespace fibdes {

// Dense univariate polynomial over Q, coefficients low to high.
using Poly = std::vector<Rational>;

namespace poly {

Poly trim(Poly p);
int degree(const Poly& p); // -1 for the zero polynomial
Rational eval(const Poly& p, const Rational& x);
Poly derivative(const Poly& p);
Poly add(const Poly& a, const Poly& b);
Poly sub(const Poly& a, const Poly& b);
Poly mul(const Poly& a, const Poly& b);
Poly scale(const Poly& a, const Rational& s);
// remainder of a by b (b nonzero)
Poly rem(const Poly& a, const Poly& b);
Poly divide_exact(const Poly& a, const Poly& b);
Poly gcd(Poly a, Poly b); // monic
Poly monic(Poly p);

} // namespace poly

struct RealRoot {
    bool exact = false;
    Rational value;      // the root when exact, else a dyadic approximation
    Rational lo, hi;     // isolating interval (meaningful, exact root or not)
    unsigned multiplicity = 1;
};

// All real roots with multiplicities. Rational roots are identified exactly
// (denominator-bounded reconstruction inside the isolating interval plus an
// exact evaluation check); the rest carry dyadic approximations within
// 2^-approx_bits.
std::vector<RealRoot> real_roots(const Poly& p, unsigned approx_bits = 64);

// smallest-denominator rational in [lo, hi]
Rational simplest_rational_between(const Rational& lo, const Rational& hi);

// Homogeneous quadratic q(x,y,z) over Q.
struct Conic {
    Rational xx, yy, zz, xy, xz, yz;

    Rational eval(const Rational& x, const Rational& y, const Rational& z) const {
        return xx * x * x + yy * y * y + zz * z * z + xy * x * y + xz * x * z + yz * y * z;
    }
    bool is_zero() const {
        return xx == 0 && yy == 0 && zz == 0 && xy == 0 && xz == 0 && yz == 0;
    }
};

struct ConicPoint {
    std::array<Rational, 3> coords; // projective (x : y : z)
    bool exact = false;
    unsigned multiplicity = 1;
};

// All real intersection points of two conics in P^2, with multiplicity
// (Bezout total 4 over C). Exact points are verified on both conics; the
// rest are dyadic approximations at roughly approx_bits of precision.
// Throws domain_error when the conics share a component.
std::vector<ConicPoint> intersect_conics(const Conic& c1, const Conic& c2,
                                         unsigned approx_bits = 64);

} // namespace fibdes

#endif
