#ifndef FIBDES_VARIETY_HPP
#define FIBDES_VARIETY_HPP

#include <array>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "fibdes/scalar.hpp"

namespace fibdes {

// The design variety D in R^5, cut out by v r = b k and r(k-1) = lam(v-1).

struct DesignPoint {
    Rational v, b, r, k, lam;

    std::array<Rational, 5> coords() const { return {v, b, r, k, lam}; }
};

bool on_variety(const DesignPoint& p);

// Q = r^2 - b lam; Q = 0 cuts the four planes Pi0..Pi3 out of D.
Rational q_value(const DesignPoint& p);

enum class PlaneId { Pi0, Pi1, Pi2, Pi3, Pi4, Pi5, Pi6 };

const char* plane_name(PlaneId id);

// planes whose three defining equations p satisfies; nonempty = degenerate
std::set<PlaneId> plane_membership(const DesignPoint& p);

inline bool is_degenerate(const DesignPoint& p) { return !plane_membership(p).empty(); }

enum class LineTag { Replication, FisherF0, FisherF1, PLine, Unclassified };

const char* line_tag_name(LineTag t);

struct VarietyLine {
    DesignPoint base;
    std::array<Rational, 5> direction; // nonzero; exact or dyadic approximation
    bool exact = true;
    unsigned multiplicity = 1;
    LineTag tag = LineTag::Unclassified;
};

// direction (0, b0, r0, 0, lam0); requires p0 on the variety
VarietyLine replication_line(const DesignPoint& p0);

// All lines of D through a nondegenerate point: the two polar conditions cut
// directions to a projective plane, the two pure quadratic conditions become
// conics there, and their intersections (with multiplicity) are the line
// directions. Rational directions are exact and reduced to primitive integer
// vectors; irrational ones are refined until the on-variety residual at
// t in {-2,-1,1,2,5} drops below 1e-9.
std::vector<VarietyLine> lines_through(const DesignPoint& p0);

Rational fisher_factor(const DesignPoint& p); // b/v, v != 0

LineTag classify_line(const VarietyLine& l);

// does the affine relation V v + B b + R r + K k + L lam = A hold identically
// along the line (constant and t-linear coefficients both vanish)
bool relation_along_line(const VarietyLine& l, const std::array<Rational, 6>& coeffs);

// Metis relation v - r - k = 1 as (V,B,R,K,L,A)
inline std::array<Rational, 6> metis_relation() {
    return {Rational(1), Rational(0), Rational(-1), Rational(-1), Rational(0), Rational(1)};
}

bool directions_projectively_equal(const std::array<Rational, 5>& a,
                                   const std::array<Rational, 5>& b);

// max |q_i(base + t*dir)| over t in {-2,-1,1,2,5}
Rational line_residual(const VarietyLine& l);

} // namespace fibdes

#endif
