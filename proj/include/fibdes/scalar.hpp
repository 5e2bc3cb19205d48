#ifndef FIBDES_SCALAR_HPP
#define FIBDES_SCALAR_HPP

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>

#include <gmpxx.h>

namespace fibdes {

// All arithmetic in the toolkit is exact unless a function says otherwise.
using Int = mpz_class;
using Rational = mpq_class;

using FibIndex = std::uint64_t;

class domain_error : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

class parse_error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

inline Int int_from_decimal(const std::string& s) {
    Int v;
    if (v.set_str(s, 10) != 0)
        throw parse_error("not a decimal integer: '" + s + "'");
    return v;
}

// Accepts "p" or "p/q" with q != 0.
inline Rational rational_from_string(const std::string& s) {
    Rational v;
    if (v.set_str(s, 10) != 0)
        throw parse_error("not a rational: '" + s + "'");
    if (v.get_den() == 0)
        throw parse_error("zero denominator: '" + s + "'");
    v.canonicalize();
    return v;
}

inline std::string to_string(const Int& v) { return v.get_str(); }

inline std::string to_string(const Rational& v) {
    if (v.get_den() == 1)
        return v.get_num().get_str();
    return v.get_num().get_str() + "/" + v.get_den().get_str();
}

inline Int pow_int(const Int& base, unsigned long e) {
    Int r;
    mpz_pow_ui(r.get_mpz_t(), base.get_mpz_t(), e);
    return r;
}

inline Int powmod(const Int& base, const Int& exp, const Int& mod) {
    Int r;
    mpz_powm(r.get_mpz_t(), base.get_mpz_t(), exp.get_mpz_t(), mod.get_mpz_t());
    return r;
}

inline std::optional<Int> exact_sqrt(const Int& n) {
    if (n < 0) return std::nullopt;
    if (mpz_perfect_square_p(n.get_mpz_t()) == 0) return std::nullopt;
    Int root;
    mpz_sqrt(root.get_mpz_t(), n.get_mpz_t());
    return root;
}

inline Int isqrt(const Int& n) {
    Int root;
    mpz_sqrt(root.get_mpz_t(), n.get_mpz_t());
    return root;
}

inline Int gcd(const Int& a, const Int& b) {
    Int g;
    mpz_gcd(g.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
    return g;
}

inline Int lcm(const Int& a, const Int& b) {
    Int l;
    mpz_lcm(l.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
    return l;
}

inline Rational rational_abs(const Rational& q) { return q < 0 ? Rational(-q) : q; }

} // namespace fibdes

#endif
