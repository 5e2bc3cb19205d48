#include "fibdes/variety.hpp"

#include <algorithm>

#include "fibdes/conic.hpp"

namespace fibdes {

namespace {

using Vec5 = std::array<Rational, 5>;

Rational q1_at(const Vec5& p) { return p[0] * p[2] - p[1] * p[3]; }
Rational q2_at(const Vec5& p) { return p[2] * (p[3] - 1) - p[4] * (p[0] - 1); }

// pure quadratic parts
Rational q1_quad(const Vec5& d) { return d[0] * d[2] - d[1] * d[3]; }
Rational q2_quad(const Vec5& d) { return d[2] * d[3] - d[4] * d[0]; }

// polar bilinear forms 2B(d,e) of the pure quadratic parts
Rational q1_polar(const Vec5& d, const Vec5& e) {
    return d[0] * e[2] + e[0] * d[2] - d[1] * e[3] - e[1] * d[3];
}
Rational q2_polar(const Vec5& d, const Vec5& e) {
    return d[2] * e[3] + e[2] * d[3] - d[4] * e[0] - e[4] * d[0];
}

// t-linear coefficients of q_i(p0 + t d); q2 also has genuinely linear terms
Rational q1_tlin(const Vec5& p0, const Vec5& d) { return q1_polar(p0, d); }
Rational q2_tlin(const Vec5& p0, const Vec5& d) {
    return q2_polar(p0, d) - d[2] + d[4];
}

Vec5 axpy(const Vec5& base, const Rational& t, const Vec5& dir) {
    Vec5 out;
    for (int i = 0; i < 5; ++i) out[i] = base[i] + t * dir[i];
    return out;
}

} // namespace

bool on_variety(const DesignPoint& p) {
    Vec5 c = p.coords();
    return q1_at(c) == 0 && q2_at(c) == 0;
}

Rational q_value(const DesignPoint& p) { return p.r * p.r - p.b * p.lam; }

const char* plane_name(PlaneId id) {
    switch (id) {
        case PlaneId::Pi0: return "Pi0";
        case PlaneId::Pi1: return "Pi1";
        case PlaneId::Pi2: return "Pi2";
        case PlaneId::Pi3: return "Pi3";
        case PlaneId::Pi4: return "Pi4";
        case PlaneId::Pi5: return "Pi5";
        case PlaneId::Pi6: return "Pi6";
    }
    return "?";
}

std::set<PlaneId> plane_membership(const DesignPoint& p) {
    std::set<PlaneId> out;
    auto zero3 = [](const Rational& a, const Rational& b, const Rational& c) {
        return a == 0 && b == 0 && c == 0;
    };
    if (zero3(p.b, p.r, p.lam)) out.insert(PlaneId::Pi0);
    if (zero3(p.b, p.r, p.v - 1)) out.insert(PlaneId::Pi1);
    if (zero3(p.r, p.lam, p.k)) out.insert(PlaneId::Pi2);
    if (zero3(p.b - p.r, p.r - p.lam, p.v - p.k)) out.insert(PlaneId::Pi3);
    if (zero3(p.v, p.k, p.r - p.lam)) out.insert(PlaneId::Pi4);
    if (zero3(p.v - 1, p.k - 1, p.b - p.r)) out.insert(PlaneId::Pi5);
    if (zero3(p.v - 1, p.k, p.r)) out.insert(PlaneId::Pi6);
    return out;
}

const char* line_tag_name(LineTag t) {
    switch (t) {
        case LineTag::Replication: return "replication";
        case LineTag::FisherF0: return "fisher/F0";
        case LineTag::FisherF1: return "fisher/F1";
        case LineTag::PLine: return "p_line";
        case LineTag::Unclassified: return "unclassified";
    }
    return "?";
}

VarietyLine replication_line(const DesignPoint& p0) {
    if (!on_variety(p0)) throw domain_error("replication_line: base point is off the variety");
    VarietyLine l;
    l.base = p0;
    l.direction = {Rational(0), p0.b, p0.r, Rational(0), p0.lam};
    if (p0.b == 0 && p0.r == 0 && p0.lam == 0)
        throw domain_error("replication_line: zero direction (Pi0 point)");
    l.exact = true;
    l.tag = LineTag::Replication;
    return l;
}

Rational fisher_factor(const DesignPoint& p) {
    if (p.v == 0) throw domain_error("fisher_factor: v = 0");
    return p.b / p.v;
}

bool directions_projectively_equal(const Vec5& a, const Vec5& b) {
    for (int i = 0; i < 5; ++i)
        for (int j = i + 1; j < 5; ++j)
            if (a[i] * b[j] != a[j] * b[i]) return false;
    return true;
}

Rational line_residual(const VarietyLine& l) {
    Vec5 base = l.base.coords();
    Rational worst = 0;
    for (int t : {-2, -1, 1, 2, 5}) {
        Vec5 p = axpy(base, Rational(t), l.direction);
        worst = std::max(worst, rational_abs(q1_at(p)));
        worst = std::max(worst, rational_abs(q2_at(p)));
    }
    return worst;
}

namespace {

// meets Pi6 (v=1, k=0, r=0) at some parameter t: each equation is a linear
// constraint a + t d = target; all three must admit one common t
bool meets_pi6(const VarietyLine& l) {
    struct Eq {
        Rational a, d, target;
    };
    const Eq eqs[3] = {{l.base.v, l.direction[0], Rational(1)},
                       {l.base.k, l.direction[3], Rational(0)},
                       {l.base.r, l.direction[2], Rational(0)}};
    std::optional<Rational> t;
    for (const Eq& e : eqs) {
        if (e.d == 0) {
            if (e.a != e.target) return false;
            continue;
        }
        Rational ti = (e.target - e.a) / e.d;
        if (t && *t != ti) return false;
        t = ti;
    }
    return true;
}

void canonicalize_exact(Vec5& d) {
    Int den_lcm = 1;
    for (const auto& c : d) den_lcm = lcm(den_lcm, Int(c.get_den()));
    Int g = 0;
    for (auto& c : d) {
        c *= Rational(den_lcm);
        c.canonicalize();
        g = gcd(g, Int(c.get_num()));
    }
    if (g == 0) return;
    for (auto& c : d) c /= Rational(g);
    for (const auto& c : d) {
        if (c == 0) continue;
        if (c < 0)
            for (auto& e : d) e = -e;
        break;
    }
}

void canonicalize_numeric(Vec5& d) {
    Rational big = 0;
    for (const auto& c : d) big = std::max(big, rational_abs(c));
    if (big == 0) return;
    for (auto& c : d) c /= big;
    for (const auto& c : d) {
        if (rational_abs(c) <= Rational(1, 1000000)) continue;
        if (c < 0)
            for (auto& e : d) e = -e;
        break;
    }
}

const Rational kResidualCap(Int(1), Int(1000000000)); // 1e-9
const Rational kNumericMatchTol(Int(1), Int(1000000)); // merge tolerance

} // namespace

LineTag classify_line(const VarietyLine& l) {
    const Vec5& d = l.direction;
    Vec5 base = l.base.coords();
    if (l.exact) {
        if (d[0] == 0 && d[3] == 0) return LineTag::Replication;
        if (base[0] != 0 && base[0] * d[1] - base[1] * d[0] == 0)
            return meets_pi6(l) ? LineTag::FisherF1 : LineTag::FisherF0;
        if (base[0] != 0) return LineTag::PLine;
        return LineTag::Unclassified;
    }
    const Rational tol = kNumericMatchTol;
    if (rational_abs(d[0]) < tol && rational_abs(d[3]) < tol) return LineTag::Replication;
    if (base[0] != 0 && rational_abs(base[0] * d[1] - base[1] * d[0]) < tol)
        return LineTag::Unclassified; // fisher-like, but too fuzzy to split F0/F1
    if (base[0] != 0) return LineTag::PLine;
    return LineTag::Unclassified;
}

bool relation_along_line(const VarietyLine& l, const std::array<Rational, 6>& coeffs) {
    Vec5 base = l.base.coords();
    Rational at_base = -coeffs[5], along = 0;
    for (int i = 0; i < 5; ++i) {
        at_base += coeffs[i] * base[i];
        along += coeffs[i] * l.direction[i];
    }
    if (l.exact) return at_base == 0 && along == 0;
    return rational_abs(at_base) < kResidualCap && rational_abs(along) < kResidualCap;
}

std::vector<VarietyLine> lines_through(const DesignPoint& p0) {
    if (!on_variety(p0)) throw domain_error("lines_through: base point is off the variety");
    auto planes = plane_membership(p0);
    if (!planes.empty()) {
        std::string names;
        for (PlaneId id : planes) names += std::string(names.empty() ? "" : ",") + plane_name(id);
        throw domain_error("lines_through: degenerate point (on " + names +
                           "); the four-line statement covers nondegenerate points only");
    }
    Vec5 base = p0.coords();

    // polar conditions L1(d) = L2(d) = 0
    const Vec5 l1{base[2], -base[3], base[0], -base[1], Rational(0)};
    const Vec5 l2{-base[4], Rational(0), base[3] - 1, base[2], Rational(1) - base[0]};

    // exact null-space basis of the 2x5 system by Gaussian elimination
    std::array<Vec5, 2> rows{l1, l2};
    std::array<int, 2> pivot{-1, -1};
    int rank = 0;
    for (int col = 0; col < 5 && rank < 2; ++col) {
        int pr = -1;
        for (int r = rank; r < 2; ++r)
            if (rows[r][col] != 0) { pr = r; break; }
        if (pr < 0) continue;
        std::swap(rows[rank], rows[pr]);
        Rational inv = 1 / rows[rank][col];
        for (auto& c : rows[rank]) c *= inv;
        for (int r = 0; r < 2; ++r) {
            if (r == rank || rows[r][col] == 0) continue;
            Rational f = rows[r][col];
            for (int cidx = 0; cidx < 5; ++cidx) rows[r][cidx] -= f * rows[rank][cidx];
        }
        pivot[rank] = col;
        ++rank;
    }
    if (rank != 2)
        throw domain_error("lines_through: polar conditions are rank-deficient at this point");

    std::array<Vec5, 3> basis;
    {
        int bi = 0;
        for (int col = 0; col < 5; ++col) {
            if (col == pivot[0] || col == pivot[1]) continue;
            Vec5 u{};
            u[col] = 1;
            for (int r = 0; r < 2; ++r) u[pivot[r]] = -rows[r][col];
            basis[bi++] = u;
        }
    }

    // the two quadratic conditions restricted to span(basis): conics in (x,y,z)
    auto make_conic = [&](auto&& quad, auto&& polar) {
        Conic c;
        c.xx = quad(basis[0]);
        c.yy = quad(basis[1]);
        c.zz = quad(basis[2]);
        c.xy = polar(basis[0], basis[1]);
        c.xz = polar(basis[0], basis[2]);
        c.yz = polar(basis[1], basis[2]);
        return c;
    };
    Conic c1 = make_conic(q1_quad, q1_polar);
    Conic c2 = make_conic(q2_quad, q2_polar);
    if (c1.is_zero() || c2.is_zero())
        throw domain_error("lines_through: a quadratic condition vanishes on the whole "
                           "direction plane at this point");

    for (unsigned bits = 64; bits <= 4096; bits *= 2) {
        auto pts = intersect_conics(c1, c2, bits);
        std::vector<VarietyLine> lines;
        bool all_good = true;
        for (const auto& pt : pts) {
            VarietyLine l;
            l.base = p0;
            for (int i = 0; i < 5; ++i)
                l.direction[i] = pt.coords[0] * basis[0][i] + pt.coords[1] * basis[1][i] +
                                 pt.coords[2] * basis[2][i];
            l.exact = pt.exact;
            l.multiplicity = pt.multiplicity;
            if (l.exact) {
                canonicalize_exact(l.direction);
                if (q1_quad(l.direction) != 0 || q2_quad(l.direction) != 0 ||
                    q1_tlin(base, l.direction) != 0 || q2_tlin(base, l.direction) != 0)
                    throw std::logic_error("lines_through: exact direction fails the line "
                                           "conditions");
            } else {
                canonicalize_numeric(l.direction);
                if (line_residual(l) > kResidualCap) {
                    all_good = false;
                    break;
                }
            }
            l.tag = classify_line(l);
            lines.push_back(std::move(l));
        }
        if (!all_good) continue; // double the precision and retry

        // merge projectively equal directions
        std::vector<VarietyLine> merged;
        for (auto& l : lines) {
            bool dup = false;
            for (auto& m : merged) {
                bool same;
                if (l.exact && m.exact) {
                    same = directions_projectively_equal(l.direction, m.direction);
                } else {
                    same = true;
                    for (int i = 0; i < 5 && same; ++i)
                        for (int j = i + 1; j < 5 && same; ++j)
                            if (rational_abs(l.direction[i] * m.direction[j] -
                                             l.direction[j] * m.direction[i]) > kNumericMatchTol)
                                same = false;
                }
                if (same) {
                    m.multiplicity += l.multiplicity;
                    dup = true;
                    break;
                }
            }
            if (!dup) merged.push_back(std::move(l));
        }
        std::sort(merged.begin(), merged.end(), [](const VarietyLine& a, const VarietyLine& b) {
            for (int i = 0; i < 5; ++i) {
                if (a.direction[i] < b.direction[i]) return true;
                if (a.direction[i] > b.direction[i]) return false;
            }
            return false;
        });
        return merged;
    }
    throw std::logic_error("lines_through: residual target not reached at maximum precision");
}

} // namespace fibdes
