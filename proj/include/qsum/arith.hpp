#pragma once

#include <utility>
#include <vector>

#include "qsum/rational.hpp"
#include "qsum/real.hpp"

namespace qsum {

// One prime power p^e, p prime, e >= 1.
struct PrimePower {
    Int p;
    unsigned e;
};

// Factorization of a positive integer into strictly increasing primes.
// Empty list represents 1.
struct PrimeFactorization {
    std::vector<PrimePower> factors;

    Int value() const {
        Int v = 1;
        for (const auto& pp : factors) v *= int_pow(pp.p, pp.e);
        return v;
    }
    unsigned exponent_of(const Int& p) const {
        for (const auto& pp : factors)
            if (pp.p == p) return pp.e;
        return 0;
    }
};

// Kronecker symbol (d|n), total in n, with the usual extensions:
//   (d|0) = 1 if d = +-1 else 0
//   (d|-1) = -1 if d < 0 else +1, and (d|n) = (d|-1)(d| |n| ) for n < 0
//   (d|2) = 0 for even d, +1 for d = +-1 mod 8, -1 for d = +-3 mod 8
int kronecker(const Int& d, const Int& n);

// Trial division; rejects n <= 0.
PrimeFactorization factorize(const Int& n);

// Moebius mu(n); n >= 1.
int moebius(const Int& n);

// sigma_k(n) = sum of k-th powers of positive divisors; n >= 1, k >= 0.
Int sigma_pow(const Int& n, unsigned k);

// Bernoulli number B_n with B_1 = -1/2. Cached; safe to call concurrently.
Rat bernoulli(unsigned n);

// Bernoulli polynomial B_n(x) = sum_j C(n,j) B_j x^(n-j).
Rat bernoulli_poly(unsigned n, const Rat& x);

// Generalized Bernoulli number attached to the real character kronecker(d0, .)
// of modulus f = |d0| (d0 a fundamental discriminant or 1):
//   B_{n,chi} = f^(n-1) * sum_{a=1..f} chi(a) B_n(a/f)
Rat generalized_bernoulli(unsigned n, const Int& d0);

// Exact L(1-k, chi_{d0}) = -B_{k,chi}/k for k >= 1. With d0 = 1 this is
// zeta(1-k), zeta(0) = -1/2.
Rat l_negative(unsigned k, const Int& d0);

// Hurwitz zeta(s, a) for integer s >= 2 and rational a in (0, 1], by direct
// summation plus an Euler-Maclaurin tail. Absolute error <= 2^(8 - precision)
// unless *precision_loss is set (correction terms capped at 64 without
// reaching the target scale).
Real hurwitz_zeta(long s, const Rat& a, mpfr_prec_t precision,
                  bool* precision_loss = nullptr);

// Numeric L(s, chi_{d0}) for integer s >= 2 via
//   |d0|^(-s) * sum_{a=1..|d0|} chi(a) zeta(s, a/|d0|).
// d0 = 1 gives Riemann zeta.
Real l_numeric(long s, const Int& d0, mpfr_prec_t precision,
               bool* precision_loss = nullptr);

// C(n, k) as exact integer.
Int binomial(unsigned long n, unsigned long k);

}  // namespace qsum
