#include "fibdes/incidence.hpp"

#include <algorithm>
#include <fstream>
#include <numeric>
#include <set>
#include <sstream>

namespace fibdes {

bool HadamardMatrix::valid() const {
    if (entries.size() != order) return false;
    for (const auto& row : entries) {
        if (row.size() != order) return false;
        for (int e : row)
            if (e != 1 && e != -1) return false;
    }
    for (unsigned i = 0; i < order; ++i)
        for (unsigned j = 0; j < order; ++j) {
            long dot = 0;
            for (unsigned t = 0; t < order; ++t) dot += entries[i][t] * entries[j][t];
            if (dot != (i == j ? static_cast<long>(order) : 0)) return false;
        }
    return true;
}

HadamardMatrix sylvester_hadamard(unsigned d) {
    if (d < 1 || d > 16) throw domain_error("sylvester_hadamard: d must be in [1,16]");
    unsigned n = 1u << d;
    HadamardMatrix h;
    h.order = n;
    h.normalized = true;
    h.entries.assign(n, std::vector<int>(n, 1));
    for (unsigned i = 0; i < n; ++i)
        for (unsigned j = 0; j < n; ++j)
            h.entries[i][j] = (__builtin_popcount(i & j) & 1) ? -1 : 1;
    return h;
}

HadamardMatrix kronecker(const HadamardMatrix& h1, const HadamardMatrix& h2) {
    HadamardMatrix h;
    h.order = h1.order * h2.order;
    h.normalized = h1.normalized && h2.normalized;
    h.entries.assign(h.order, std::vector<int>(h.order, 1));
    for (unsigned i = 0; i < h.order; ++i)
        for (unsigned j = 0; j < h.order; ++j)
            h.entries[i][j] = h1.entries[i / h2.order][j / h2.order] *
                              h2.entries[i % h2.order][j % h2.order];
    return h;
}

void validate_symmetric(const IncidenceStructure& d) {
    if (d.blocks.size() != d.v)
        throw domain_error("design: expected " + std::to_string(d.v) + " blocks, got " +
                           std::to_string(d.blocks.size()));
    if (d.lam > d.k) throw domain_error("design: lambda exceeds k");
    std::vector<std::vector<char>> chi(d.v, std::vector<char>(d.v, 0));
    for (unsigned b = 0; b < d.v; ++b) {
        const auto& blk = d.blocks[b];
        if (blk.size() != d.k)
            throw domain_error("design: block " + std::to_string(b) + " has size " +
                               std::to_string(blk.size()) + ", expected k = " +
                               std::to_string(d.k));
        for (std::size_t i = 0; i < blk.size(); ++i) {
            if (blk[i] >= d.v)
                throw domain_error("design: block " + std::to_string(b) +
                                   " references point " + std::to_string(blk[i]));
            if (i && blk[i] <= blk[i - 1])
                throw domain_error("design: block " + std::to_string(b) +
                                   " is not strictly ascending");
            chi[b][blk[i]] = 1;
        }
    }
    for (unsigned a = 0; a < d.v; ++a)
        for (unsigned b = a + 1; b < d.v; ++b) {
            unsigned meet = 0;
            for (unsigned p = 0; p < d.v; ++p) meet += chi[a][p] & chi[b][p];
            if (meet != d.lam)
                throw domain_error("design: blocks " + std::to_string(a) + "," +
                                   std::to_string(b) + " meet in " + std::to_string(meet) +
                                   " points, expected lambda = " + std::to_string(d.lam));
        }
}

IncidenceStructure hadamard_to_design(const HadamardMatrix& h) {
    if (!h.normalized) throw domain_error("hadamard_to_design: matrix must be normalized");
    if (h.order < 4 || h.order % 4 != 0)
        throw domain_error("hadamard_to_design: order must be a positive multiple of 4");
    if (!h.valid()) throw domain_error("hadamard_to_design: H H^T = nI fails");
    IncidenceStructure d;
    d.v = h.order - 1;
    d.k = h.order / 2 - 1;
    d.lam = h.order / 4 - 1;
    d.blocks.resize(d.v);
    for (unsigned row = 1; row < h.order; ++row)
        for (unsigned col = 1; col < h.order; ++col)
            if (h.entries[row][col] == 1) d.blocks[row - 1].push_back(col - 1);
    validate_symmetric(d);
    return d;
}

// --- GF(2) matrices ---------------------------------------------------------

std::uint32_t BinaryMatrix::apply(std::uint32_t x) const {
    std::uint32_t y = 0;
    for (unsigned j = 0; j < dim; ++j)
        if ((x >> j) & 1) y ^= cols[j];
    return y;
}

BinaryMatrix BinaryMatrix::multiply(const BinaryMatrix& o) const {
    BinaryMatrix r{dim, std::vector<std::uint32_t>(dim)};
    for (unsigned j = 0; j < dim; ++j) r.cols[j] = apply(o.cols[j]);
    return r;
}

BinaryMatrix BinaryMatrix::identity(unsigned dim) {
    BinaryMatrix r{dim, std::vector<std::uint32_t>(dim)};
    for (unsigned j = 0; j < dim; ++j) r.cols[j] = 1u << j;
    return r;
}

BinaryMatrix BinaryMatrix::transpose_inverse() const {
    // invert A^T by Gauss-Jordan on rows-as-bitmasks
    std::vector<std::uint32_t> mat(dim), inv(dim);
    for (unsigned i = 0; i < dim; ++i) {
        // row i of A^T = column i of A
        mat[i] = cols[i];
        inv[i] = 1u << i;
    }
    for (unsigned c = 0; c < dim; ++c) {
        unsigned piv = c;
        while (piv < dim && !((mat[piv] >> c) & 1)) ++piv;
        if (piv == dim) throw domain_error("BinaryMatrix: singular matrix");
        std::swap(mat[c], mat[piv]);
        std::swap(inv[c], inv[piv]);
        for (unsigned r = 0; r < dim; ++r)
            if (r != c && ((mat[r] >> c) & 1)) {
                mat[r] ^= mat[c];
                inv[r] ^= inv[c];
            }
    }
    // inv now holds rows of (A^T)^-1; convert to columns
    BinaryMatrix out{dim, std::vector<std::uint32_t>(dim, 0)};
    for (unsigned i = 0; i < dim; ++i)
        for (unsigned j = 0; j < dim; ++j)
            if ((inv[i] >> j) & 1) out.cols[j] |= 1u << i;
    return out;
}

unsigned BinaryMatrix::order() const {
    BinaryMatrix id = identity(dim);
    BinaryMatrix cur = *this;
    for (unsigned o = 1; o <= 1u << (dim * dim); ++o) {
        if (cur.cols == id.cols) return o;
        cur = multiply(cur);
    }
    throw domain_error("BinaryMatrix: order not found (singular?)");
}

BinaryMatrix BinaryMatrix::order3_example() {
    // e0 -> e1, e1 -> e0 + e1
    return BinaryMatrix{2, {0b10, 0b11}};
}

BinaryMatrix BinaryMatrix::order4_example() {
    // A = I + N with N e0 = e1, N e1 = e2, N e2 = 0
    return BinaryMatrix{3, {0b011, 0b110, 0b100}};
}

unsigned Automorphism::perm_order(const std::vector<unsigned>& perm) {
    std::vector<char> seen(perm.size(), 0);
    unsigned long ord = 1;
    for (unsigned s = 0; s < perm.size(); ++s) {
        if (seen[s]) continue;
        unsigned len = 0, cur = s;
        while (!seen[cur]) {
            seen[cur] = 1;
            cur = perm[cur];
            ++len;
        }
        ord = std::lcm(ord, static_cast<unsigned long>(len));
    }
    return static_cast<unsigned>(ord);
}

Automorphism gl_automorphism(const BinaryMatrix& a, const HadamardMatrix& partner) {
    // sanity: A invertible (transpose_inverse throws otherwise)
    BinaryMatrix at_inv = a.transpose_inverse();
    if (!partner.normalized)
        throw domain_error("gl_automorphism: Kronecker partner must be normalized");
    unsigned h = partner.order;
    unsigned n = (1u << a.dim) * h;
    Automorphism out;
    out.point_perm.resize(n - 1);
    out.block_perm.resize(n - 1);
    for (unsigned idx = 1; idx < n; ++idx) {
        unsigned i = idx / h, x = idx % h;
        unsigned row_img = a.apply(i) * h + x;
        unsigned col_img = at_inv.apply(i) * h + x;
        out.block_perm[idx - 1] = row_img - 1;
        out.point_perm[idx - 1] = col_img - 1;
    }
    out.order = Automorphism::perm_order(out.point_perm);
    return out;
}

bool verify_automorphism(const IncidenceStructure& d, const Automorphism& a) {
    if (a.point_perm.size() != d.v || a.block_perm.size() != d.blocks.size())
        throw domain_error("verify_automorphism: permutation sizes do not match the design");
    for (unsigned b = 0; b < d.v; ++b) {
        std::vector<unsigned> img;
        img.reserve(d.blocks[b].size());
        for (unsigned p : d.blocks[b]) img.push_back(a.point_perm[p]);
        std::sort(img.begin(), img.end());
        if (img != d.blocks[a.block_perm[b]]) return false;
    }
    return true;
}

namespace {

std::vector<unsigned> cycle_lengths(const std::vector<unsigned>& perm) {
    std::vector<char> seen(perm.size(), 0);
    std::vector<unsigned> out;
    for (unsigned s = 0; s < perm.size(); ++s) {
        if (seen[s]) continue;
        unsigned len = 0, cur = s;
        while (!seen[cur]) {
            seen[cur] = 1;
            cur = perm[cur];
            ++len;
        }
        out.push_back(len);
    }
    std::sort(out.begin(), out.end());
    return out;
}

// first (lowest-index) block lying on a cycle of maximal length, plus two
// of its successors on that cycle
struct LongestCycle {
    unsigned length = 0;
    std::vector<unsigned> members; // in cycle order, starting at lowest index
};

LongestCycle longest_block_cycle(const std::vector<unsigned>& perm) {
    std::vector<char> seen(perm.size(), 0);
    LongestCycle best;
    for (unsigned s = 0; s < perm.size(); ++s) {
        if (seen[s]) continue;
        std::vector<unsigned> orbit;
        unsigned cur = s;
        while (!seen[cur]) {
            seen[cur] = 1;
            orbit.push_back(cur);
            cur = perm[cur];
        }
        if (orbit.size() > best.length) {
            best.length = static_cast<unsigned>(orbit.size());
            best.members = orbit;
        }
    }
    return best;
}

} // namespace

CycleStructure cycle_structure(const Automorphism& a) {
    CycleStructure cs{cycle_lengths(a.point_perm), cycle_lengths(a.block_perm)};
    if (cs.point_cycles != cs.block_cycles)
        throw domain_error("cycle_structure: point and block cycle types differ "
                           "(not an automorphism of a symmetric design)");
    return cs;
}

BoundReport three_block_bound(const IncidenceStructure& d, const Automorphism& a) {
    if (!verify_automorphism(d, a))
        throw domain_error("three_block_bound: not an automorphism of the design");
    if (a.order < 3)
        throw domain_error("three_block_bound: automorphism order must be at least 3");
    BoundReport r;
    for (unsigned p = 0; p < d.v; ++p)
        if (a.point_perm[p] == p) ++r.f;
    r.bound = static_cast<long>(d.v) - 3l * d.order();
    r.equality = static_cast<long>(r.f) == r.bound;
    LongestCycle lc = longest_block_cycle(a.block_perm);
    r.l = lc.length;
    unsigned b0 = lc.members.front();
    for (unsigned p : d.blocks[b0])
        if (a.point_perm[p] == p) ++r.f0;
    return r;
}

EqualityCaseReport equality_case_check(const IncidenceStructure& d, const Automorphism& a) {
    BoundReport b = three_block_bound(d, a);
    if (!b.equality)
        throw domain_error("equality_case_check: three-block bound is strict here");
    EqualityCaseReport r;
    r.l = b.l;
    r.order = a.order;
    r.f0 = b.f0;
    r.l_at_most_4 = b.l <= 4;
    r.order_equals_l = a.order == b.l;
    if (b.l == 4)
        r.f0_bound_ok = 2l * r.f0 <= 2l * d.k - 3l * d.order();

    LongestCycle lc = longest_block_cycle(a.block_perm);
    const auto& b1 = d.blocks[lc.members[0]];
    const auto& b2 = d.blocks[lc.members[1 % lc.length]];
    const auto& b3 = d.blocks[lc.members[2 % lc.length]];
    std::set<unsigned> uni(b1.begin(), b1.end());
    uni.insert(b2.begin(), b2.end());
    uni.insert(b3.begin(), b3.end());
    unsigned triple = 0;
    for (unsigned p : b1)
        if (std::binary_search(b2.begin(), b2.end(), p) &&
            std::binary_search(b3.begin(), b3.end(), p))
            ++triple;
    r.union_size = static_cast<unsigned>(uni.size());
    r.triple_intersection = triple;
    r.union_identity_ok =
        r.union_size == 3 * d.k - 3 * d.lam + triple;
    return r;
}

// --- file formats ------------------------------------------------------------

namespace {

[[noreturn]] void bad_line(const std::string& origin, std::size_t lineno, const std::string& why) {
    throw parse_error(origin + ":" + std::to_string(lineno) + ": " + why);
}

bool read_content_line(std::istream& in, std::string& line, std::size_t& lineno) {
    while (std::getline(in, line)) {
        ++lineno;
        auto pos = line.find_first_not_of(" \t\r");
        if (pos == std::string::npos) continue;
        if (line[pos] == '#') continue;
        return true;
    }
    return false;
}

std::vector<unsigned> parse_numbers(const std::string& line, const std::string& origin,
                                    std::size_t lineno) {
    std::istringstream ss(line);
    std::vector<unsigned> out;
    long x;
    while (ss >> x) {
        if (x < 0) bad_line(origin, lineno, "negative index");
        out.push_back(static_cast<unsigned>(x));
    }
    std::string junk;
    ss.clear();
    if (ss >> junk) bad_line(origin, lineno, "trailing junk '" + junk + "'");
    return out;
}

} // namespace

IncidenceStructure load_design(std::istream& in, const std::string& origin) {
    std::string line;
    std::size_t lineno = 0;
    if (!read_content_line(in, line, lineno)) bad_line(origin, lineno + 1, "missing header");
    auto hdr = parse_numbers(line, origin, lineno);
    if (hdr.size() != 3) bad_line(origin, lineno, "header must be 'v k lambda'");
    IncidenceStructure d;
    d.v = hdr[0];
    d.k = hdr[1];
    d.lam = hdr[2];
    if (d.v == 0 || d.v > 100000) bad_line(origin, lineno, "unreasonable v");
    for (unsigned b = 0; b < d.v; ++b) {
        if (!read_content_line(in, line, lineno))
            bad_line(origin, lineno + 1,
                     "expected " + std::to_string(d.v) + " blocks, got " + std::to_string(b));
        d.blocks.push_back(parse_numbers(line, origin, lineno));
    }
    try {
        validate_symmetric(d);
    } catch (const domain_error& e) {
        throw parse_error(origin + ": " + e.what());
    }
    return d;
}

IncidenceStructure load_design_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw parse_error("cannot open design file '" + path + "'");
    return load_design(in, path);
}

void store_design(const IncidenceStructure& d, std::ostream& out) {
    out << d.v << " " << d.k << " " << d.lam << "\n";
    for (const auto& blk : d.blocks) {
        for (std::size_t i = 0; i < blk.size(); ++i) out << (i ? " " : "") << blk[i];
        out << "\n";
    }
}

namespace {

std::vector<unsigned> parse_perm(const std::string& line, const std::string& origin,
                                 std::size_t lineno) {
    auto img = parse_numbers(line, origin, lineno);
    std::vector<char> hit(img.size(), 0);
    for (unsigned x : img) {
        if (x >= img.size() || hit[x]) bad_line(origin, lineno, "not a permutation");
        hit[x] = 1;
    }
    return img;
}

} // namespace

Automorphism load_automorphism(std::istream& in, const std::string& origin) {
    std::string line;
    std::size_t lineno = 0;
    Automorphism a;
    if (!read_content_line(in, line, lineno)) bad_line(origin, lineno + 1, "missing point permutation");
    a.point_perm = parse_perm(line, origin, lineno);
    if (!read_content_line(in, line, lineno)) bad_line(origin, lineno + 1, "missing block permutation");
    a.block_perm = parse_perm(line, origin, lineno);
    a.order = Automorphism::perm_order(a.point_perm);
    return a;
}

Automorphism load_automorphism_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw parse_error("cannot open automorphism file '" + path + "'");
    return load_automorphism(in, path);
}

void store_automorphism(const Automorphism& a, std::ostream& out) {
    for (std::size_t i = 0; i < a.point_perm.size(); ++i)
        out << (i ? " " : "") << a.point_perm[i];
    out << "\n";
    for (std::size_t i = 0; i < a.block_perm.size(); ++i)
        out << (i ? " " : "") << a.block_perm[i];
    out << "\n";
}

} // namespace fibdes
