#pragma once

#include <cstdint>
#include <string>

#include <gmpxx.h>

namespace coniclines {

// Exact arithmetic lives on GMP. Int is an arbitrary-precision integer,
// Rational a gcd-reduced fraction with positive denominator (mpq_class
// maintains exactly this canonical form once canonicalized).
using Int = mpz_class;
using Rational = mpq_class;

inline Rational make_rational(const Int& num, const Int& den) {
    Rational q(num, den);
    q.canonicalize();
    return q;
}

inline Rational make_rational(long num, long den = 1) {
    Rational q(num, den);
    q.canonicalize();
    return q;
}

// Serialized as "p/q", or just "p" when the denominator is 1.
std::string rational_to_string(const Rational& q);

// Accepts "p", "p/q" and optional leading minus signs; rejects q <= 0 after
// reduction only when q = 0.
Rational rational_from_string(const std::string& text);

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

inline bool is_perfect_square(const Int& a) {
    return sgn(a) >= 0 && mpz_perfect_square_p(a.get_mpz_t()) != 0;
}

inline Int isqrt(const Int& a) {
    Int r;
    mpz_sqrt(r.get_mpz_t(), a.get_mpz_t());
    return r;
}

// n*(n-1)/2 for small counts (weights, multiplicities).
inline std::int64_t binom2(std::int64_t n) {
    return n >= 2 ? n * (n - 1) / 2 : 0;
}

} // namespace coniclines
