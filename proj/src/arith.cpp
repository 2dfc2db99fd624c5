#include "qsum/arith.hpp"

#include <mutex>
#include <stdexcept>
#include <vector>

namespace qsum {

int kronecker(const Int& d, const Int& n) {
    // mpz_kronecker implements the same extension this library pins down:
    // (d|0) = [d = +-1], (d|-1) = sign, (d|2) by d mod 8.
    return mpz_kronecker(d.get_mpz_t(), n.get_mpz_t());
}

PrimeFactorization factorize(const Int& n) {
    if (n <= 0) throw std::domain_error("factorize: argument must be positive");
    PrimeFactorization out;
    if (n.fits_ulong_p()) {
        unsigned long m = n.get_ui();
        for (unsigned long p = 2; p * p <= m; p += (p == 2 ? 1 : 2)) {
            if (m % p) continue;
            unsigned e = 0;
            while (m % p == 0) { m /= p; ++e; }
            out.factors.push_back({Int(p), e});
        }
        if (m > 1) out.factors.push_back({Int(m), 1});
        return out;
    }
    Int m = n;
    for (Int p = 2; p * p <= m; p += (p == 2 ? 1 : 2)) {
        if (m % p != 0) continue;
        unsigned e = 0;
        while (m % p == 0) { m /= p; ++e; }
        out.factors.push_back({p, e});
    }
    if (m > 1) out.factors.push_back({m, 1});
    return out;
}

int moebius(const Int& n) {
    auto f = factorize(n);
    for (const auto& pp : f.factors)
        if (pp.e > 1) return 0;
    return f.factors.size() % 2 == 0 ? 1 : -1;
}

Int sigma_pow(const Int& n, unsigned k) {
    auto f = factorize(n);
    Int s = 1;
    for (const auto& pp : f.factors) {
        // 1 + p^k + ... + p^(e k)
        Int geo = 0, t = 1, pk = int_pow(pp.p, k);
        for (unsigned i = 0; i <= pp.e; ++i) {
            geo += t;
            t *= pk;
        }
        s *= geo;
    }
    return s;
}

Int binomial(unsigned long n, unsigned long k) {
    Int r;
    mpz_bin_uiui(r.get_mpz_t(), n, k);
    return r;
}

namespace {
std::mutex bernoulli_mutex;
std::vector<Rat>& bernoulli_cache() {
    static std::vector<Rat> cache{Rat(1)};
    return cache;
}
}  // namespace

Rat bernoulli(unsigned n) {
    std::lock_guard<std::mutex> lock(bernoulli_mutex);
    auto& cache = bernoulli_cache();
    // sum_{j=0}^{m} C(m+1, j) B_j = 0 for m >= 1, so
    // B_m = -1/(m+1) * sum_{j<m} C(m+1, j) B_j. Gives B_1 = -1/2.
    while (cache.size() <= n) {
        unsigned m = static_cast<unsigned>(cache.size());
        Rat acc(0);
        for (unsigned j = 0; j < m; ++j)
            acc += Rat(binomial(m + 1, j)) * cache[j];
        Rat b = -acc / Rat(Int(m) + 1);
        b.canonicalize();
        cache.push_back(b);
    }
    return cache[n];
}

Rat bernoulli_poly(unsigned n, const Rat& x) {
    // B_n(x) = sum_j C(n, j) B_j x^(n-j), by Horner in x.
    Rat acc(0);
    for (unsigned j = 0; j <= n; ++j) {
        acc *= x;
        acc += Rat(binomial(n, j)) * bernoulli(j);
    }
    return acc;
}

Rat generalized_bernoulli(unsigned n, const Int& d0) {
    if (n == 0) throw std::domain_error("generalized_bernoulli: n must be >= 1");
    Int f = abs(d0);
    if (f == 0) throw std::domain_error("generalized_bernoulli: d0 must be nonzero");
    Rat sum(0);
    for (Int a = 1; a <= f; ++a) {
        int chi = kronecker(d0, a);
        if (chi == 0) continue;
        sum += Rat(chi) * bernoulli_poly(n, Rat(a, f));
    }
    Rat scale = n >= 1 ? Rat(int_pow(f, n - 1)) : Rat(1);
    return scale * sum;
}

Rat l_negative(unsigned k, const Int& d0) {
    if (k == 0) throw std::domain_error("l_negative: k must be >= 1");
    return -generalized_bernoulli(k, d0) / Rat(static_cast<long>(k));
}

Real hurwitz_zeta(long s, const Rat& a, mpfr_prec_t precision, bool* precision_loss) {
    if (s < 2) throw std::domain_error("hurwitz_zeta: s must be >= 2");
    if (!(a > 0 && a <= 1)) throw std::domain_error("hurwitz_zeta: a must be in (0, 1]");
    if (precision_loss) *precision_loss = false;

    const mpfr_prec_t wp = precision + 64;
    const long N = std::max<long>(32, precision / 2);

    // Direct block sum_{m=0}^{N-1} (m+a)^(-s).
    Real acc(wp);
    for (long m = 0; m < N; ++m) {
        Real t(Rat(m) + a, wp);
        acc += t.pow_si(-s);
    }

    // Euler-Maclaurin tail at z = N + a:
    //   z^(1-s)/(s-1) + z^(-s)/2
    //   + sum_j B_{2j}/(2j)! * s(s+1)...(s+2j-2) * z^(-s-2j+1)
    Real z(Rat(N) + a, wp);
    acc += z.pow_si(1 - s) / Real(s - 1, wp);
    acc += z.pow_si(-s) / Real(2, wp);

    Real zpow = z.pow_si(-s - 1);     // z^(-s-2j+1) at j = 1
    const Real zinv2 = z.pow_si(-2);
    Int rising = s;                   // s(s+1)...(s+2j-2), 2j-1 factors
    Int fact = 2;                     // (2j)!
    const long target = -(static_cast<long>(precision) + 8);
    bool reached = false;
    for (int j = 1; j <= 64; ++j) {
        Rat coef = bernoulli(2 * j) * Rat(rising, fact);
        Real term = Real(coef, wp) * zpow;
        acc += term;
        if (term.abs_less_pow2(target)) {
            reached = true;
            break;
        }
        // advance to j+1
        rising *= (s + 2 * j - 1) * (s + 2 * j);
        fact *= (2 * j + 1) * (2 * j + 2);
        zpow *= zinv2;
    }
    if (!reached && precision_loss) *precision_loss = true;

    return acc.round_to(precision);
}

Real l_numeric(long s, const Int& d0, mpfr_prec_t precision, bool* precision_loss) {
    if (s < 2) throw std::domain_error("l_numeric: s must be >= 2");
    Int f = abs(d0);
    if (f == 0) throw std::domain_error("l_numeric: d0 must be nonzero");
    if (precision_loss) *precision_loss = false;

    const mpfr_prec_t wp = precision + 32;
    Real acc(wp);
    for (Int a = 1; a <= f; ++a) {
        int chi = kronecker(d0, a);
        if (chi == 0) continue;
        bool loss = false;
        Real z = hurwitz_zeta(s, Rat(a, f), wp, &loss);
        if (loss && precision_loss) *precision_loss = true;
        acc += Real(chi, wp) * z;
    }
    Real fs = Real(f, wp).pow_si(-s);
    return (fs * acc).round_to(precision);
}

}  // namespace qsum
