#pragma once

#include <gmpxx.h>

#include <optional>
#include <stdexcept>
#include <string>

namespace qsum {

// Exact integers and rationals. mpq_class keeps values canonical
// (gcd(num, den) = 1, den > 0) through all arithmetic.
using Int = mpz_class;
using Rat = mpq_class;

inline Int int_pow(const Int& base, unsigned long e) {
    Int r;
    mpz_pow_ui(r.get_mpz_t(), base.get_mpz_t(), e);
    return r;
}

inline Rat rat_pow(const Rat& base, unsigned long e) {
    Rat r;
    mpz_pow_ui(mpq_numref(r.get_mpq_t()), base.get_num().get_mpz_t(), e);
    mpz_pow_ui(mpq_denref(r.get_mpq_t()), base.get_den().get_mpz_t(), e);
    return r;  // canonical since base was
}

// Largest s >= 0 with s^2 <= n. Requires n >= 0.
inline Int isqrt(const Int& n) {
    if (n < 0) throw std::domain_error("isqrt: negative argument");
    Int r;
    mpz_sqrt(r.get_mpz_t(), n.get_mpz_t());
    return r;
}

inline bool is_square(const Int& n) {
    return n >= 0 && mpz_perfect_square_p(n.get_mpz_t()) != 0;
}

// Floor division (truncates toward -infinity, unlike mpz's default).
inline Int floor_div(const Int& a, const Int& b) {
    Int q;
    mpz_fdiv_q(q.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
    return q;
}

// Nonnegative remainder in [0, |b|).
inline Int mod_nonneg(const Int& a, const Int& b) {
    Int r;
    mpz_mod(r.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
    return r;
}

// "p" or "p/q"; see rat_from_string for the inverse.
inline std::string rat_to_string(const Rat& r) { return r.get_str(); }

// Accepts "p" or "p/q" with q > 0 after normalization; rejects anything else.
Rat rat_from_string(const std::string& s);

// Decimal expansion of r truncated (not rounded) to `digits` fractional
// digits, with a flag telling whether the expansion terminated, i.e. the
// printed string is the exact value.
struct DecimalExpansion {
    std::string text;
    bool exact;
};
DecimalExpansion decimal_expansion(const Rat& r, int digits);

}  // namespace qsum
