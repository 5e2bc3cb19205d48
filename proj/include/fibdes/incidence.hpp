#ifndef FIBDES_INCIDENCE_HPP
#define FIBDES_INCIDENCE_HPP

#include <array>
#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "fibdes/scalar.hpp"

namespace fibdes {

struct HadamardMatrix {
    unsigned order = 0;
    std::vector<std::vector<int>> entries; // +1 / -1
    bool normalized = false;

    bool valid() const; // H H^T = order * I
};

// order 2^d, entry(i,j) = (-1)^<i,j> over binary d-vectors, zero vector
// first, lexicographic; normalized by construction
HadamardMatrix sylvester_hadamard(unsigned d);

HadamardMatrix kronecker(const HadamardMatrix& h1, const HadamardMatrix& h2);

struct IncidenceStructure {
    unsigned v = 0;
    std::vector<std::vector<unsigned>> blocks; // sorted ascending point lists
    unsigned k = 0, lam = 0;                   // declared symmetric parameters

    unsigned order() const { return k - lam; }
};

// Points are columns 2..4h, blocks rows 2..4h of a normalized Hadamard
// matrix, incident where the entry is +1; the (4h-1, 2h-1, h-1) convention.
// Validates the symmetric design laws exactly.
IncidenceStructure hadamard_to_design(const HadamardMatrix& h);

// N N^T = (k - lam) I + lam J, every block of size k, #blocks = v.
void validate_symmetric(const IncidenceStructure& d);

struct Automorphism {
    std::vector<unsigned> point_perm; // image notation
    std::vector<unsigned> block_perm;
    unsigned order = 0; // lcm of cycle lengths

    static unsigned perm_order(const std::vector<unsigned>& perm);
};

// Invertible d x d matrix over GF(2), column j stored as a bitmask.
struct BinaryMatrix {
    unsigned dim = 0;
    std::vector<std::uint32_t> cols;

    std::uint32_t apply(std::uint32_t x) const;
    BinaryMatrix multiply(const BinaryMatrix& o) const;
    BinaryMatrix transpose_inverse() const; // throws on singular input
    unsigned order() const;
    static BinaryMatrix identity(unsigned dim);
    // companion matrix of x^2 + x + 1 (order 3 on GF(2)^2)
    static BinaryMatrix order3_example();
    // I + N with N^2 != 0, N^3 = 0 (order 4 on GF(2)^3)
    static BinaryMatrix order4_example();
};

// Automorphism of the design of sylvester_hadamard(d) (x) H induced by
// A in GL(d,2): rows (i,a) -> (A i, a), columns (j,a) -> ((A^T)^-1 j, a).
// The first h rows and columns are fixed, so deleting the normalized first
// row/column leaves a design automorphism of the same order as A.
Automorphism gl_automorphism(const BinaryMatrix& a, const HadamardMatrix& partner);

bool verify_automorphism(const IncidenceStructure& d, const Automorphism& a);

struct CycleStructure {
    std::vector<unsigned> point_cycles; // sorted cycle lengths
    std::vector<unsigned> block_cycles;
};

// Asserts the two multisets are equal (they are, for any automorphism of a
// symmetric design).
CycleStructure cycle_structure(const Automorphism& a);

struct BoundReport {
    unsigned f = 0;      // fixed points
    long bound = 0;      // v - 3n
    bool equality = false;
    unsigned l = 0;  // longest block-cycle length
    unsigned f0 = 0; // fixed points inside the first block of a longest cycle
};

// f <= v - 3n for automorphisms of order >= 3.
BoundReport three_block_bound(const IncidenceStructure& d, const Automorphism& a);

struct EqualityCaseReport {
    unsigned l = 0;
    unsigned order = 0;
    unsigned f0 = 0;
    bool l_at_most_4 = false;
    bool order_equals_l = false;
    bool f0_bound_ok = true; // 2 f0 <= 2k - 3n, checked when l = 4
    unsigned union_size = 0;          // |B1 u B2 u B3| on a longest cycle
    unsigned triple_intersection = 0; // |B1 n B2 n B3|
    bool union_identity_ok = false;   // |B1 u B2 u B3| = 3k - 3lam + |B1 n B2 n B3|
    bool passed() const {
        return l_at_most_4 && order_equals_l && f0_bound_ok && union_identity_ok;
    }
};

// Requires three_block_bound(d, a).equality.
EqualityCaseReport equality_case_check(const IncidenceStructure& d, const Automorphism& a);

// Design file: header "v k lambda", then v lines of 0-based ascending point
// indices. Automorphism file: two lines of image notation, points then blocks.
IncidenceStructure load_design(std::istream& in, const std::string& origin = "<stream>");
IncidenceStructure load_design_file(const std::string& path);
void store_design(const IncidenceStructure& d, std::ostream& out);

Automorphism load_automorphism(std::istream& in, const std::string& origin = "<stream>");
Automorphism load_automorphism_file(const std::string& path);
void store_automorphism(const Automorphism& a, std::ostream& out);

} // namespace fibdes

#endif
