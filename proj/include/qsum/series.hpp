#pragma once

#include <map>
#include <string>
#include <utility>
#include <vector>

#include "qsum/qforms.hpp"

namespace qsum {

// #{ b mod n : b^2 = delta (mod n) }, by direct scan. n >= 1.
long count_roots_mod(const Int& delta, const Int& n);

// Sorted solutions b in [0, 2n) of b^2 = delta (mod 4n), found by prime-power
// lifting + CRT on the factorization of 4n. Agrees with the direct scan.
std::vector<Int> roots_mod_4n(const Int& delta, const Int& n);

// Genus-weighted representation count at level n >= 1:
//   N(n) = sum over b in [0, 2n), b^2 = Delta (mod 4n),
//          of chi_d([-n, b, (Delta - b^2)/(4n)]).
// (-1)^k N(n) is multiplicative in n. A per-pair character cache makes
// repeated calls cheap; `chi` may be null.
Int weighted_count(const DiscriminantPair& pair, const Int& n,
                   const GenusCharacter* chi = nullptr);

// c_k = 2 k! (k-1)! / (2k)!   (k >= 1)
Rat c_k(int k);

// Closed form c_k Delta^(k - 1/2) |a|^(-k) of the full-line integral
//   integral over x in R of max(Q(x), 0)^(k-1) dx   (a < 0, Delta > 0).
Real form_integral(int k, const QuadraticForm& q, mpfr_prec_t precision);

// F(x) = sum over forms Q = [a,b,c] of discriminant Delta = D*d with
// a < 0 < Q(x) of chi_d(Q) Q(x)^(k-1), exact at rational x. The sum is
// finite: q^2 Q(x) is a positive integer, so |a| <= q^2 Delta / 4 for
// x = u/q in lowest terms. k = 1 requires nonsquare Delta.
Rat eval_F(const DiscriminantPair& pair, const Rat& x);

// Same enumeration restricted to one SL2 class (no character weight).
Rat eval_F_class(int k, const FormClass& cls, const Rat& x);

// Symmetrized class sum: eval_F_class over cls plus (-1)^k times
// eval_F_class over the negated class -cls = {[-a,-b,-c]}.
Rat eval_F_sym(int k, const FormClass& cls, const Rat& x);

// Exact power series truncated at fixed order; coeff[i] multiplies X^i.
struct TruncatedSeries {
    std::vector<Rat> coeff;
    friend bool operator==(const TruncatedSeries& s, const TruncatedSeries& t) {
        if (s.coeff.size() != t.coeff.size()) return false;
        for (std::size_t i = 0; i < s.coeff.size(); ++i)
            if (s.coeff[i] != t.coeff[i]) return false;
        return true;
    }
    std::string str() const;
};

// Divisibility profile of a prime p relative to a pair (d, D = d0 f^2).
struct LocalProfile {
    bool p_div_f;
    bool p_div_d;
    bool p_div_d0;
    bool p_is_two;
};
LocalProfile local_profile(const DiscriminantPair& pair, const Int& p);

// Local factor comparison at p, both sides as series in X = p^(-k):
//   lhs coefficient n = (-1)^k * weighted_count(pair, p^n)
//   rhs = (1 - X^2) / ((1 - (d0|p) X) (1 - (d|p) X)) * P_e(X)
// where D = d0 f^2, p^e || f, and P_e(X) is the divisor-sum polynomial
//   P_e(X) = sum_{j=0..e} p^j X^(2j) - (d0|p) sum_{j=1..e} p^(j-1) X^(2j-1),
// i.e. sigma_{2k-1}(p^e)/p^(e(2k-1)) - (d0|p) p^(k-1) sigma_{2k-1}(p^(e-1))
// / p^(e(2k-1)) rewritten with every p^(-k) as X. Both truncated at `order`.
struct EulerFactorPair {
    TruncatedSeries lhs, rhs;
};
EulerFactorPair euler_factor_both(const DiscriminantPair& pair, const Int& p,
                                  int order);

// S(f) = sum_{r | f} mu(r) (d0|r) r^(k-1) sigma_{2k-1}(f/r), directly.
Int divisor_sum_ms(int k, const Int& d0, const Int& f);

// Same value via multiplicativity: product over p^e || f of
//   sigma_{2k-1}(p^e) - (d0|p) p^(k-1) sigma_{2k-1}(p^(e-1)).
Int divisor_sum_ms_factored(int k, const Int& d0, const Int& f);

// Normalized variant S(f) / f^(2k-1).
Rat divisor_factor(int k, const Int& d0, const Int& f);

// H(k, N) for k >= 1, N >= 0:
//   H(k, 0) = zeta(1 - 2k);
//   H(k, N) = 0 when (-1)^k N = 2 or 3 mod 4;
//   otherwise (-1)^k N = d0 f^2 and
//   H(k, N) = l_negative(k, d0) * divisor_sum_ms(k, d0, f).
// H(1, .) is the Hurwitz class number.
Rat cohen_h(int k, const Int& N);

enum class AverageMethod { chain, dirichlet };

struct AverageResult {
    Real value;          // numeric average of F over one period
    Rat exact;           // H(k,|D|) H(k,|d|) / (2 zeta(1-2k))
    Real abs_error;      // |value - exact|
    AverageMethod method;
    long terms;          // dirichlet truncation used; 0 for chain
    bool converged;      // dirichlet tail stabilized below tolerance/4
};

// Average of F over one period.
//   chain:     (-1)^k c_k |d0 d|^(k-1/2) L(k,chi_d0) L(k,chi_d) S(f) / zeta(2k)
//   dirichlet: c_k |Dd|^(k-1/2) sum_{n <= M} N(n) n^(-k), doubling M from
//              1024 until successive values differ by < tolerance/4, capped
//              at 2^17.
// Requires k >= 2.
AverageResult average_F(const DiscriminantPair& pair, AverageMethod method,
                        mpfr_prec_t precision, double tolerance = 1e-2);

// One q-expansion coefficient: exact rational or numeric at some precision.
struct QExpCoeff {
    bool exact;
    Rat exact_value;      // set when exact
    Real numeric_value;   // set when !exact
};
using QExpansion = std::map<long, QExpCoeff>;

// Coefficients 0..n_max of the same series computed two ways (k >= 2,
// d fundamental of sign (-1)^k):
//   lhs: 0 -> zeta(1-2k)/2 exact; |D| -> zeta(1-2k)/H(k,|d|) times the
//        chain average for (k, D, d), numeric, for each discriminant D of
//        sign (-1)^k with |D| <= n_max;
//   rhs: N -> H(k, N)/2 exact for every N <= n_max.
struct QExpansionPair {
    QExpansion lhs, rhs;
};
QExpansionPair qexpansion(int k, const Int& d, long n_max,
                          mpfr_prec_t precision);

}  // namespace qsum
