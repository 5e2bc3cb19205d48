#include "fibdes/numtheory.hpp"

#include <algorithm>
#include <map>
#include <sstream>

namespace fibdes {

namespace {

// x^(2^r * d) pass of Miller-Rabin; n odd > 2, 1 < a < n-1.
bool strong_probable_prime(const Int& n, const Int& a, const Int& d, unsigned long r) {
    Int x = powmod(a, d, n);
    if (x == 1 || x == n - 1) return true;
    for (unsigned long i = 1; i < r; ++i) {
        x = (x * x) % n;
        if (x == n - 1) return true;
    }
    return false;
}

constexpr unsigned kSmallBases[] = {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37};

} // namespace

bool is_probable_prime(const Int& n) {
    if (n < 2) return false;
    for (unsigned p : kSmallBases) {
        if (n == p) return true;
        if (mpz_divisible_ui_p(n.get_mpz_t(), p)) return false;
    }
    Int d = n - 1;
    unsigned long r = mpz_scan1(d.get_mpz_t(), 0);
    mpz_fdiv_q_2exp(d.get_mpz_t(), d.get_mpz_t(), r);

    // 12 fixed bases are deterministic below 3.317e24 (covers all of 2^64)
    static const Int kDeterministicLimit("3317044064679887385961981");
    for (unsigned p : kSmallBases)
        if (!strong_probable_prime(n, Int(p), d, r)) return false;
    if (n < kDeterministicLimit) return true;

    // beyond: 64 strong rounds over the first 64 primes
    Int base = 37;
    for (int round = 0; round < 64; ++round) {
        mpz_nextprime(base.get_mpz_t(), base.get_mpz_t());
        if (!strong_probable_prime(n, base, d, r)) return false;
    }
    return true;
}

FactorEffort FactorEffort::scaled(std::uint64_t n) {
    if (n == 0) n = 1;
    return FactorEffort{10000 * n, 400000 * n};
}

Int Factorization::recompose() const {
    Int v = cofactor;
    for (const auto& pp : prime_powers) v *= pow_int(pp.prime, pp.exponent);
    return v;
}

std::string Factorization::str() const {
    std::ostringstream os;
    bool first = true;
    for (const auto& pp : prime_powers) {
        if (!first) os << " * ";
        os << pp.prime.get_str();
        if (pp.exponent > 1) os << "^" << pp.exponent;
        first = false;
    }
    if (cofactor != 1) {
        if (!first) os << " * ";
        os << "C" << cofactor.get_str();
        first = false;
    }
    if (first) os << "1";
    return os.str();
}

namespace {

// Brent's cycle variant of Pollard rho with f(x) = x^2 + c. Deterministic:
// c walks 1,2,3,... and every run starts from y = 2; the budget counts every
// f-advance across all c. Returns a nontrivial factor or 0 on exhaustion.
// Any returned value is a genuine divisor, never a guess.
Int rho_split(const Int& n, std::uint64_t budget) {
    std::uint64_t used = 0;
    for (Int c = 1; c <= 64 && used < budget; ++c) {
        Int y = 2, r = 1, q = 1, g = 1, x, ys;
        bool have_block = false;
        while (g == 1 && used < budget) {
            x = y;
            for (Int i = 0; i < r && used < budget; ++i, ++used)
                y = (y * y + c) % n;
            Int k = 0;
            while (k < r && g == 1 && used < budget) {
                ys = y;
                have_block = true;
                Int blk = std::min(Int(128), Int(r - k));
                for (Int i = 0; i < blk && used < budget; ++i, ++used) {
                    y = (y * y + c) % n;
                    Int diff = x - y;
                    q = (q * (diff < 0 ? -diff : diff)) % n;
                }
                g = gcd(q, n);
                k += 128;
            }
            r *= 2;
        }
        if (g == n && have_block) {
            // the product collapsed: rewind the last block one step at a time
            do {
                ys = (ys * ys + c) % n;
                Int diff = x - ys;
                g = gcd(diff < 0 ? -diff : diff, n);
            } while (g == 1);
        }
        if (g != 1 && g != n) return g;
        // g == n: this polynomial degenerates on n, move to the next c
    }
    return 0;
}

void add_prime(std::map<Int, unsigned>& primes, const Int& p, unsigned e) {
    primes[p] += e;
}

} // namespace

Factorization factor(const Int& n, const FactorEffort& effort) {
    if (n < 1) throw domain_error("factor: n must be >= 1");
    Factorization out;
    out.value = n;
    if (n == 1) return out;

    std::map<Int, unsigned> primes;
    Int rest = n;

    auto strip = [&](const Int& p) {
        unsigned e = 0;
        while (mpz_divisible_p(rest.get_mpz_t(), p.get_mpz_t())) {
            rest /= p;
            ++e;
        }
        if (e) add_prime(primes, p, e);
    };

    strip(2);
    strip(3);
    for (std::uint64_t d = 5; d <= effort.trial_limit && rest > 1; d += 6) {
        strip(Int(d));
        strip(Int(d + 2));
        Int dd = d;
        if (dd * dd > rest) break;
    }

    // split remaining composites; pieces may share primes, so failed pieces
    // are re-reduced against everything found before they become cofactor
    std::vector<Int> pending;
    std::vector<Int> failed;
    if (rest > 1) pending.push_back(rest);
    while (!pending.empty()) {
        Int c = pending.back();
        pending.pop_back();
        if (c == 1) continue;
        if (is_probable_prime(c)) { add_prime(primes, c, 1); continue; }
        if (mpz_perfect_power_p(c.get_mpz_t())) {
            for (unsigned long k = 2;; ++k) {
                Int root;
                if (mpz_root(root.get_mpz_t(), c.get_mpz_t(), k) != 0) {
                    for (unsigned long i = 0; i < k; ++i) pending.push_back(root);
                    break;
                }
                if (root < 2) break; // perfect_power_p guarantees an exact root exists
            }
            continue;
        }
        Int g = rho_split(c, effort.rho_iterations);
        if (g == 0) { failed.push_back(c); continue; }
        pending.push_back(g);
        pending.push_back(c / g);
    }

    // reduce failed pieces by any primes discovered elsewhere
    bool changed = true;
    while (changed) {
        changed = false;
        std::vector<Int> still;
        for (Int c : failed) {
            for (const auto& [p, e] : primes) {
                while (mpz_divisible_p(c.get_mpz_t(), p.get_mpz_t())) {
                    c /= p;
                    add_prime(primes, p, 1);
                    changed = true;
                }
            }
            if (c == 1) continue;
            if (is_probable_prime(c)) { add_prime(primes, c, 1); changed = true; continue; }
            still.push_back(c);
        }
        failed = std::move(still);
    }

    out.cofactor = 1;
    for (const Int& c : failed) out.cofactor *= c;
    for (const auto& [p, e] : primes) out.prime_powers.push_back({p, e});
    return out;
}

SquarefreePart squarefree_part(const Factorization& f) {
    SquarefreePart out;
    Int prod = 1;
    for (const auto& pp : f.prime_powers)
        if (pp.exponent % 2 == 1) {
            prod *= pp.prime;
            out.known_divisors.insert(pp.prime);
        }
    if (f.complete()) out.value = prod;
    return out;
}

std::optional<MultOrder> mult_order(const Int& a, const Int& p,
                                    const Factorization& p_minus_1) {
    if (!is_probable_prime(p)) throw domain_error("mult_order: p must be prime");
    if (mpz_divisible_p(a.get_mpz_t(), p.get_mpz_t()))
        throw domain_error("mult_order: a is divisible by p");
    if (!p_minus_1.complete()) return std::nullopt;
    if (p_minus_1.recompose() != p - 1)
        throw domain_error("mult_order: p_minus_1 does not factor p-1");
    Int order = p - 1;
    for (const auto& pp : p_minus_1.prime_powers) {
        for (unsigned i = 0; i < pp.exponent; ++i) {
            Int cand = order / pp.prime;
            if (order % pp.prime == 0 && powmod(a, cand, p) == 1)
                order = cand;
            else
                break;
        }
    }
    return MultOrder{order, mpz_even_p(order.get_mpz_t()) != 0};
}

std::optional<MultOrder> mult_order(const Int& a, const Int& p,
                                    const FactorEffort& effort) {
    return mult_order(a, p, factor(p - 1, effort));
}

int jacobi(const Int& a, const Int& n) {
    if (n <= 0 || mpz_even_p(n.get_mpz_t()))
        throw domain_error("jacobi: n must be odd and positive");
    return mpz_jacobi(a.get_mpz_t(), n.get_mpz_t());
}

std::optional<Int> perfect_square_root(const Int& n) {
    if (n < 0) return std::nullopt;
    if (!mpz_perfect_square_p(n.get_mpz_t())) return std::nullopt;
    return isqrt(n);
}

namespace {

// square-free part and its square cofactor; requires complete factorization
Int squarefree_of(const Int& v, const FactorEffort& effort) {
    Factorization f = factor(v, effort);
    if (!f.complete())
        throw domain_error("brc_ternary_solvable: cannot fully factor " + v.get_str() +
                           " within the effort budget");
    Int sf = 1;
    for (const auto& pp : f.prime_powers)
        if (pp.exponent % 2 == 1) sf *= pp.prime;
    return sf;
}

} // namespace

TernaryVerdict brc_ternary_solvable(const Int& n, const Int& lam, int sign,
                                    const FactorEffort& effort) {
    if (n < 0 || lam < 0) throw domain_error("brc_ternary_solvable: negative coefficient");
    if (sign != 1 && sign != -1) throw domain_error("brc_ternary_solvable: sign must be +-1");

    TernaryVerdict out;
    if (n == 0) { // Z^2 = s*lam*Y^2 admits (X,Y,Z) = (1,0,0)
        out.solvable = true;
        out.witness = TernaryWitness{1, 0, 0};
        out.reason = "degenerate: n = 0";
        return out;
    }
    if (lam == 0) { // (0,1,0)
        out.solvable = true;
        out.witness = TernaryWitness{0, 1, 0};
        out.reason = "degenerate: lambda = 0";
        return out;
    }

    // normal form a X^2 + b Y^2 + c Z^2 = 0
    Int a = -squarefree_of(n, effort);
    Int b = -sign * squarefree_of(lam, effort);
    Int c = 1;

    // make pairwise coprime: gcd g of a pair moves to the third coefficient
    auto reduce_pair = [](Int& u, Int& v, Int& w) {
        Int g = gcd(u, v);
        if (g <= 1) return false;
        u /= g;
        v /= g;
        w *= g;
        return true;
    };
    while (reduce_pair(a, b, c) || reduce_pair(a, c, b) || reduce_pair(b, c, a)) {}

    bool decided_solvable = true;
    std::string reason = "all Legendre local conditions hold";
    if (a > 0 && b > 0 && c > 0) {
        decided_solvable = false;
        reason = "definite form";
    } else {
        auto residue_ok = [&](const Int& coeff, const Int& u, const Int& v) {
            Factorization f = factor(coeff < 0 ? Int(-coeff) : coeff, effort);
            for (const auto& pp : f.prime_powers) {
                if (pp.prime == 2) continue;
                Int t = (-(u * v)) % pp.prime;
                if (t < 0) t += pp.prime;
                if (jacobi(t, pp.prime) != 1) {
                    reason = "-1 * " + u.get_str() + " * " + v.get_str() +
                             " is a quadratic nonresidue mod " + pp.prime.get_str();
                    return false;
                }
            }
            return true;
        };
        decided_solvable = residue_ok(a, b, c) && residue_ok(b, a, c) && residue_ok(c, a, b);
    }

    out.solvable = decided_solvable;
    out.reason = reason;

    // witness attachment on the original equation, small solutions first
    for (Int m = 1; m <= 200 && !out.witness; ++m) {
        for (Int x = 0; x <= m && !out.witness; ++x) {
            for (Int y = 0; y <= m; ++y) {
                if (x != m && y != m) continue; // only the new shell
                if (x == 0 && y == 0) continue;
                Int rhs = n * x * x + sign * lam * y * y;
                if (rhs < 0) continue;
                if (auto z = perfect_square_root(rhs)) {
                    out.witness = TernaryWitness{x, y, *z};
                    break;
                }
            }
        }
    }
    if (!decided_solvable && out.witness)
        throw std::logic_error("brc_ternary_solvable: local conditions refuted but witness " +
                               out.witness->x.get_str() + "," + out.witness->y.get_str() + "," +
                               out.witness->z.get_str() + " exists; defect");
    return out;
}

} // namespace fibdes
