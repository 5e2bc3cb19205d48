#include "fibdes/conic.hpp"

#include <algorithm>
#include <deque>

namespace fibdes {

namespace poly {

Poly trim(Poly p) {
    while (!p.empty() && p.back() == 0) p.pop_back();
    return p;
}

int degree(const Poly& p) {
    for (std::size_t i = p.size(); i-- > 0;)
        if (p[i] != 0) return static_cast<int>(i);
    return -1;
}

Rational eval(const Poly& p, const Rational& x) {
    Rational acc = 0;
    for (std::size_t i = p.size(); i-- > 0;) acc = acc * x + p[i];
    return acc;
}

Poly derivative(const Poly& p) {
    Poly d;
    for (std::size_t i = 1; i < p.size(); ++i) d.push_back(p[i] * Rational(static_cast<long>(i)));
    return trim(std::move(d));
}

Poly add(const Poly& a, const Poly& b) {
    Poly r(std::max(a.size(), b.size()), Rational(0));
    for (std::size_t i = 0; i < a.size(); ++i) r[i] += a[i];
    for (std::size_t i = 0; i < b.size(); ++i) r[i] += b[i];
    return trim(std::move(r));
}

Poly sub(const Poly& a, const Poly& b) {
    Poly r(std::max(a.size(), b.size()), Rational(0));
    for (std::size_t i = 0; i < a.size(); ++i) r[i] += a[i];
    for (std::size_t i = 0; i < b.size(); ++i) r[i] -= b[i];
    return trim(std::move(r));
}

Poly mul(const Poly& a, const Poly& b) {
    if (degree(a) < 0 || degree(b) < 0) return {};
    Poly r(a.size() + b.size() - 1, Rational(0));
    for (std::size_t i = 0; i < a.size(); ++i)
        for (std::size_t j = 0; j < b.size(); ++j) r[i + j] += a[i] * b[j];
    return trim(std::move(r));
}

Poly scale(const Poly& a, const Rational& s) {
    Poly r = a;
    for (auto& c : r) c *= s;
    return trim(std::move(r));
}

Poly rem(const Poly& a, const Poly& b) {
    int db = degree(b);
    if (db < 0) throw domain_error("poly::rem: division by zero polynomial");
    Poly r = trim(a);
    while (degree(r) >= db) {
        int dr = degree(r);
        Rational coef = r[dr] / b[db];
        for (int i = 0; i <= db; ++i) r[dr - db + i] -= coef * b[i];
        r = trim(std::move(r));
    }
    return r;
}

Poly divide_exact(const Poly& a, const Poly& b) {
    int db = degree(b), da = degree(a);
    if (db < 0) throw domain_error("poly::divide_exact: division by zero polynomial");
    if (da < 0) return {};
    Poly r = a, q(da - db + 1, Rational(0));
    for (int d = da; d >= db; --d) {
        if (r[d] == 0) continue;
        Rational coef = r[d] / b[db];
        q[d - db] = coef;
        for (int i = 0; i <= db; ++i) r[d - db + i] -= coef * b[i];
    }
    if (degree(trim(r)) >= 0) throw domain_error("poly::divide_exact: not divisible");
    return trim(std::move(q));
}

Poly monic(Poly p) {
    p = trim(std::move(p));
    int d = degree(p);
    if (d < 0) return p;
    Rational lc = p[d];
    for (auto& c : p) c /= lc;
    return p;
}

Poly gcd(Poly a, Poly b) {
    a = trim(std::move(a));
    b = trim(std::move(b));
    while (degree(b) >= 0) {
        Poly r = rem(a, b);
        a = std::move(b);
        b = monic(std::move(r));
    }
    return monic(std::move(a));
}

} // namespace poly

// ---------------------------------------------------------------------------

Rational simplest_rational_between(const Rational& lo, const Rational& hi) {
    if (lo > hi) throw domain_error("simplest_rational_between: empty interval");
    if (lo == hi) return lo;
    if (lo <= 0 && 0 <= hi) return Rational(0);
    if (hi < 0) return -simplest_rational_between(-hi, -lo);
    // 0 < lo < hi
    Int fl;
    mpz_fdiv_q(fl.get_mpz_t(), lo.get_num().get_mpz_t(), lo.get_den().get_mpz_t());
    Rational rfl(fl);
    if (rfl == lo) return lo;              // lo itself is the integer
    if (Rational(fl + 1) <= hi) return Rational(fl + 1); // an integer inside
    Rational inner =
        simplest_rational_between(Rational(1) / (hi - rfl), Rational(1) / (lo - rfl));
    return rfl + Rational(1) / inner;
}

namespace {

using poly::degree;
using poly::eval;

// Yun's square-free decomposition: f = prod g_i^i, returns (g_i, i) with
// deg g_i > 0 only.
std::vector<std::pair<Poly, unsigned>> squarefree_decomposition(const Poly& f) {
    std::vector<std::pair<Poly, unsigned>> out;
    Poly fp = poly::derivative(f);
    Poly g = poly::gcd(f, fp);
    if (degree(g) == 0) {
        out.emplace_back(poly::monic(f), 1);
        return out;
    }
    Poly w = poly::divide_exact(f, g);
    Poly y = poly::divide_exact(fp, g);
    unsigned i = 1;
    while (degree(w) > 0) {
        Poly z = poly::sub(y, poly::derivative(w));
        Poly gi = poly::gcd(w, z);
        if (degree(gi) > 0) out.emplace_back(gi, i);
        w = poly::divide_exact(w, gi);
        y = poly::divide_exact(z, gi);
        ++i;
    }
    return out;
}

std::vector<Poly> sturm_chain(const Poly& g) {
    std::vector<Poly> chain{poly::monic(g), poly::monic(poly::derivative(g))};
    while (degree(chain.back()) > 0) {
        Poly r = poly::rem(chain[chain.size() - 2], chain.back());
        if (degree(r) < 0) break;
        // negate and rescale by the positive |lc| to tame coefficient growth
        int d = degree(r);
        Rational lc = rational_abs(r[d]);
        for (auto& c : r) c = -c / lc;
        chain.push_back(std::move(r));
    }
    return chain;
}

int sign_variations(const std::vector<Poly>& chain, const Rational& x) {
    int var = 0, prev = 0;
    for (const auto& s : chain) {
        Rational v = eval(s, x);
        int sg = v > 0 ? 1 : (v < 0 ? -1 : 0);
        if (sg == 0) continue;
        if (prev != 0 && sg != prev) ++var;
        prev = sg;
    }
    return var;
}

// integer leading-coefficient bound: any rational root of g written in
// lowest terms has denominator dividing the lead of the primitive integer
// form of g
Int rational_root_denominator_bound(const Poly& g) {
    Int den_lcm = 1;
    for (const auto& c : g) den_lcm = lcm(den_lcm, Int(c.get_den()));
    Int content = 0;
    for (const auto& c : g) content = gcd(content, Int(c.get_num() * (den_lcm / c.get_den())));
    if (content == 0) content = 1;
    int d = degree(g);
    Int lead = g[d].get_num() * (den_lcm / g[d].get_den()) / content;
    return lead < 0 ? Int(-lead) : lead;
}

struct IsolatedRoot {
    bool exact;
    Rational value;
    Rational lo, hi;
};

// One isolation pass. Returns the first exact rational root discovered (so
// the caller can deflate and retry), or fills `approx` with dyadic
// approximations of every real root when none of them is rational.
std::optional<Rational> isolation_pass(const Poly& g, unsigned approx_bits,
                                       std::vector<IsolatedRoot>& approx) {
    int d = degree(g);
    if (d == 1) return -g[0];

    Rational m = 0;
    for (int i = 0; i < d; ++i) m = std::max(m, rational_abs(g[i]));
    Rational bound = m + 2; // Cauchy bound for a monic polynomial
    auto chain = sturm_chain(g);
    Int denom_bound = rational_root_denominator_bound(g);
    Rational recon_width = Rational(1) / Rational(2 * denom_bound * denom_bound);
    Rational approx_width(Int(1), pow_int(2, approx_bits));
    Rational target = std::min(recon_width, approx_width);

    std::deque<std::array<Rational, 2>> work{{-bound, bound}};
    while (!work.empty()) {
        auto [lo, hi] = work.front();
        work.pop_front();
        int count = sign_variations(chain, lo) - sign_variations(chain, hi);
        if (count <= 0) continue;
        Rational mid = (lo + hi) / 2;
        if (count >= 2) {
            if (eval(g, mid) == 0) return mid;
            work.push_back({lo, mid});
            work.push_back({mid, hi});
            continue;
        }
        // an isolated root: narrow enough to reconstruct a bounded-denominator
        // rational, then keep narrowing for the dyadic approximation
        bool tried_recon = false;
        while (hi - lo > target) {
            mid = (lo + hi) / 2;
            Rational v = eval(g, mid);
            if (v == 0) return mid;
            if ((eval(g, lo) > 0) == (v > 0)) lo = mid; else hi = mid;
            if (!tried_recon && hi - lo < recon_width) {
                tried_recon = true;
                Rational cand = simplest_rational_between(lo, hi);
                if (eval(g, cand) == 0) return cand;
            }
        }
        approx.push_back({false, (lo + hi) / 2, lo, hi});
    }
    return std::nullopt;
}

// all real roots of a square-free g, exact where rational
std::vector<IsolatedRoot> roots_of_squarefree(Poly g, unsigned approx_bits) {
    std::vector<IsolatedRoot> out;
    g = poly::monic(std::move(g));
    while (degree(g) > 0) {
        std::vector<IsolatedRoot> approx;
        auto exact = isolation_pass(g, approx_bits, approx);
        if (exact) {
            out.push_back({true, *exact, *exact, *exact});
            g = poly::monic(poly::divide_exact(g, Poly{-*exact, Rational(1)}));
            continue; // approximations from this pass are stale, redo them
        }
        out.insert(out.end(), approx.begin(), approx.end());
        break;
    }
    std::sort(out.begin(), out.end(),
              [](const IsolatedRoot& a, const IsolatedRoot& b) { return a.value < b.value; });
    return out;
}

} // namespace

std::vector<RealRoot> real_roots(const Poly& p, unsigned approx_bits) {
    Poly f = poly::trim(p);
    if (degree(f) < 0) throw domain_error("real_roots: zero polynomial");
    std::vector<RealRoot> out;
    for (const auto& [g, mult] : squarefree_decomposition(f))
        for (const auto& r : roots_of_squarefree(g, approx_bits))
            out.push_back({r.exact, r.value, r.lo, r.hi, mult});
    std::sort(out.begin(), out.end(),
              [](const RealRoot& a, const RealRoot& b) { return a.value < b.value; });
    return out;
}

// ---------------------------------------------------------------------------
// conic intersection

namespace {

Conic shear(const Conic& c, long s1, long s2) {
    Rational r1(s1), r2(s2);
    Conic d;
    d.xx = c.xx;
    d.yy = c.yy;
    d.xy = c.xy;
    d.xz = 2 * r1 * c.xx + r2 * c.xy + c.xz;
    d.yz = 2 * r2 * c.yy + r1 * c.xy + c.yz;
    d.zz = c.xx * r1 * r1 + c.yy * r2 * r2 + c.zz + c.xy * r1 * r2 + c.xz * r1 + c.yz * r2;
    return d;
}

// homogeneous binary forms as coefficient arrays: F = sum f[i] x^(deg-i) y^i
std::vector<Rational> hconv(const std::vector<Rational>& a, const std::vector<Rational>& b) {
    std::vector<Rational> r(a.size() + b.size() - 1, Rational(0));
    for (std::size_t i = 0; i < a.size(); ++i)
        for (std::size_t j = 0; j < b.size(); ++j) r[i + j] += a[i] * b[j];
    return r;
}

std::vector<Rational> hsub(std::vector<Rational> a, const std::vector<Rational>& b) {
    for (std::size_t i = 0; i < b.size(); ++i) a[i] -= b[i];
    return a;
}

std::vector<Rational> hscale(std::vector<Rational> a, const Rational& s) {
    for (auto& c : a) c *= s;
    return a;
}

// sqrt approximation of a nonnegative rational with absolute error <= 2^-bits
Rational dyadic_sqrt(const Rational& x, unsigned bits) {
    if (x < 0) throw domain_error("dyadic_sqrt: negative");
    Int scale = pow_int(2, bits);
    Int n = x.get_num() * scale * scale / x.get_den();
    return Rational(isqrt(n), scale);
}

struct Frame {
    long s1, s2;
};

constexpr Frame kFrames[] = {{0, 0}, {1, 0}, {0, 1}, {1, 1}, {2, 1}, {1, 2}, {3, 1},
                             {1, 3}, {2, 3}, {3, 2}, {4, 1}, {1, 4}, {5, 2}, {2, 5},
                             {5, 3}, {3, 5}, {7, 1}, {1, 7}, {7, 3}, {8, 5}};

} // namespace

std::vector<ConicPoint> intersect_conics(const Conic& c1, const Conic& c2, unsigned approx_bits) {
    if (c1.is_zero() || c2.is_zero())
        throw domain_error("intersect_conics: a conic is identically zero");

    for (const Frame& fr : kFrames) {
        Conic d1 = shear(c1, fr.s1, fr.s2);
        Conic d2 = shear(c2, fr.s1, fr.s2);
        const Rational a1 = d1.zz, a2 = d2.zz;
        if (a1 == 0 || a2 == 0) continue; // projection center lies on a conic

        std::vector<Rational> b1{d1.xz, d1.yz}, b2{d2.xz, d2.yz};
        std::vector<Rational> cc1{d1.xx, d1.xy, d1.yy}, cc2{d2.xx, d2.xy, d2.yy};

        // Res_z = (a1 C2 - a2 C1)^2 - (a1 B2 - a2 B1)(B1 C2 - B2 C1)
        auto ac = hsub(hscale(cc2, a1), hscale(cc1, a2));
        auto ab = hsub(hscale(b2, a1), hscale(b1, a2));
        auto bc = hsub(hconv(b1, cc2), hconv(b2, cc1));
        auto res = hsub(hconv(ac, ac), hconv(ab, bc)); // r[i] multiplies x^(4-i) y^i

        bool all_zero = std::all_of(res.begin(), res.end(),
                                    [](const Rational& c) { return c == 0; });
        if (all_zero)
            throw domain_error("intersect_conics: the conics share a common component");

        // roots at infinity of the y = 1 chart: multiplicity of (1:0) is the
        // number of leading zero coefficients
        unsigned inf_mult = 0;
        while (inf_mult < 4 && res[inf_mult] == 0) ++inf_mult;

        Poly px; // res as a polynomial in x with y = 1: coeff of x^j is res[4-j]
        for (int j = 0; j <= static_cast<int>(4 - inf_mult); ++j) px.push_back(res[4 - j]);
        px = poly::trim(std::move(px));

        struct XRoot {
            bool exact;
            Rational x, y; // projective first two coords in the sheared frame
            unsigned mult;
        };
        std::vector<XRoot> xroots;
        if (inf_mult > 0) xroots.push_back({true, Rational(1), Rational(0), inf_mult});
        if (poly::degree(px) >= 1)
            for (const auto& r : real_roots(px, approx_bits))
                xroots.push_back({r.exact, r.value, Rational(1), r.multiplicity});

        std::vector<ConicPoint> pts;
        bool frame_ok = true;
        for (const auto& xr : xroots) {
            // fiber: common roots in z of D_i(x0, y0, z)
            Rational fb1 = b1[0] * xr.x + b1[1] * xr.y;
            Rational fb2 = b2[0] * xr.x + b2[1] * xr.y;
            Rational fc1 = cc1[0] * xr.x * xr.x + cc1[1] * xr.x * xr.y + cc1[2] * xr.y * xr.y;
            Rational fc2 = cc2[0] * xr.x * xr.x + cc2[1] * xr.x * xr.y + cc2[2] * xr.y * xr.y;
            Rational z0;
            if (xr.exact) {
                Poly f1{fc1, fb1, a1}, f2{fc2, fb2, a2};
                Poly g = poly::gcd(f1, f2);
                if (poly::degree(g) != 1) { frame_ok = false; break; } // ambiguous fiber
                z0 = -g[0] / g[1];
                ConicPoint pt;
                pt.coords = {xr.x + fr.s1 * z0, xr.y + fr.s2 * z0, z0};
                pt.exact = true;
                pt.multiplicity = xr.mult;
                if (c1.eval(pt.coords[0], pt.coords[1], pt.coords[2]) != 0 ||
                    c2.eval(pt.coords[0], pt.coords[1], pt.coords[2]) != 0)
                    throw std::logic_error("intersect_conics: exact point fails verification");
                pts.push_back(std::move(pt));
                continue;
            }
            // numeric fiber from the quadratic formula on D1, choose the
            // candidate minimizing |D2|
            Rational disc = fb1 * fb1 - 4 * a1 * fc1;
            std::vector<Rational> cands;
            if (disc <= 0) {
                cands.push_back(-fb1 / (2 * a1));
            } else {
                Rational s = dyadic_sqrt(disc, approx_bits);
                cands.push_back((-fb1 + s) / (2 * a1));
                cands.push_back((-fb1 - s) / (2 * a1));
            }
            Rational best_err;
            bool have = false;
            std::vector<Rational> errs;
            for (const Rational& z : cands) {
                Rational err = rational_abs(a2 * z * z + fb2 * z + fc2);
                errs.push_back(err);
                if (!have || err < best_err) {
                    best_err = err;
                    z0 = z;
                    have = true;
                }
            }
            if (xr.mult >= 2 && errs.size() == 2) {
                // tangential root with two near-zero fibers: ambiguous frame
                Rational other = errs[0] == best_err ? errs[1] : errs[0];
                Rational tol(Int(1), pow_int(2, approx_bits / 2));
                if (other < tol) { frame_ok = false; break; }
            }
            ConicPoint pt;
            pt.coords = {xr.x + fr.s1 * z0, xr.y + fr.s2 * z0, z0};
            pt.exact = false;
            pt.multiplicity = xr.mult;
            pts.push_back(std::move(pt));
        }
        if (frame_ok) return pts;
    }
    throw std::logic_error("intersect_conics: no usable projection frame found");
}

} // namespace fibdes
