#include "qsum/series.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <set>
#include <sstream>
#include <stdexcept>

namespace qsum {

long count_roots_mod(const Int& delta, const Int& n) {
    if (n < 1) throw std::domain_error("count_roots_mod: n must be >= 1");
    long cnt = 0;
    for (Int b = 0; b < n; ++b)
        if (mod_nonneg(b * b - delta, n) == 0) ++cnt;
    return cnt;
}

namespace {

// x with x^2 = a (mod p), p an odd prime, (a|p) = 1. Tonelli-Shanks.
Int sqrt_mod_prime(const Int& a, const Int& p) {
    if (mod_nonneg(p, 4) == 3) {
        Int r, e = (p + 1) / 4;
        mpz_powm(r.get_mpz_t(), a.get_mpz_t(), e.get_mpz_t(), p.get_mpz_t());
        return r;
    }
    // p = 1 mod 4: p - 1 = q 2^s with q odd
    Int q = p - 1;
    unsigned long s = 0;
    while (q % 2 == 0) { q /= 2; ++s; }
    Int z = 2;
    while (mpz_legendre(z.get_mpz_t(), p.get_mpz_t()) != -1) ++z;
    Int c, r, t, e = (q + 1) / 2;
    mpz_powm(c.get_mpz_t(), z.get_mpz_t(), q.get_mpz_t(), p.get_mpz_t());
    mpz_powm(r.get_mpz_t(), a.get_mpz_t(), e.get_mpz_t(), p.get_mpz_t());
    mpz_powm(t.get_mpz_t(), a.get_mpz_t(), q.get_mpz_t(), p.get_mpz_t());
    unsigned long m = s;
    while (t != 1) {
        Int tt = t;
        unsigned long i = 0;
        while (tt != 1) {
            tt = tt * tt % p;
            ++i;
        }
        Int b = c;
        for (unsigned long j = 0; j + i + 1 < m; ++j) b = b * b % p;
        r = r * b % p;
        c = b * b % p;
        t = t * c % p;
        m = i;
    }
    return r;
}

// All x mod p^e with x^2 = A (mod p^e), p an odd prime.
std::vector<Int> sqrt_mod_odd_prime_power(const Int& A, const Int& p, unsigned e) {
    Int pe = int_pow(p, e);
    Int A0 = mod_nonneg(A, pe);
    std::vector<Int> out;
    if (A0 == 0) {
        // x = 0 mod p^ceil(e/2)
        Int step = int_pow(p, (e + 1) / 2);
        Int count = int_pow(p, e / 2);
        for (Int j = 0; j < count; ++j) out.push_back(j * step);
        return out;
    }
    unsigned t = 0;
    Int u = A0;
    while (u % p == 0) { u /= p; ++t; }
    if (t % 2) return out;
    unsigned e2 = e - t;
    if (mpz_legendre(mod_nonneg(u, p).get_mpz_t(), p.get_mpz_t()) != 1) return out;
    // Hensel lift a root of y^2 = u from mod p to mod p^e2
    Int r = sqrt_mod_prime(mod_nonneg(u, p), p);
    unsigned prec = 1;
    Int pm = p;
    while (prec < e2) {
        unsigned np = std::min(2 * prec, e2);
        pm = int_pow(p, np);
        Int inv;
        Int two_r = mod_nonneg(2 * r, pm);
        if (mpz_invert(inv.get_mpz_t(), two_r.get_mpz_t(), pm.get_mpz_t()) == 0)
            throw std::logic_error("sqrt lift: noninvertible derivative");
        r = mod_nonneg(r - (r * r - u) * inv, pm);
        prec = np;
    }
    Int pe2 = int_pow(p, e2);
    Int shift = int_pow(p, t / 2);
    Int count = shift;
    Int r_neg = pe2 - r;
    for (const Int& y : {r, r_neg})
        for (Int j = 0; j < count; ++j) out.push_back(shift * (y + j * pe2) % pe);
    return out;
}

// All x mod 2^e with x^2 = A (mod 2^e).
std::vector<Int> sqrt_mod_two_power(const Int& A, unsigned e) {
    Int M = int_pow(2, e);
    Int A0 = mod_nonneg(A, M);
    std::vector<Int> out;
    if (e == 1) {
        out.push_back(A0);
        return out;
    }
    if (e == 2) {
        if (A0 == 0) out = {Int(0), Int(2)};
        else if (A0 == 1) out = {Int(1), Int(3)};
        return out;
    }
    if (A0 == 0) {
        Int step = int_pow(2, (e + 1) / 2);
        Int count = int_pow(2, e / 2);
        for (Int j = 0; j < count; ++j) out.push_back(j * step);
        return out;
    }
    unsigned t = 0;
    Int u = A0;
    while (u % 2 == 0) { u /= 2; ++t; }
    if (t % 2) return out;
    unsigned e2 = e - t;
    std::set<Int> ys;
    Int M2 = int_pow(2, e2);
    if (e2 == 1) {
        ys.insert(Int(1));
    } else if (e2 == 2) {
        if (mod_nonneg(u, 4) != 1) return out;
        ys.insert(Int(1));
        ys.insert(Int(3));
    } else {
        if (mod_nonneg(u, 8) != 1) return out;
        // lift y^2 = u (mod 2^i) one bit at a time from i = 3
        Int y = 1;
        for (unsigned i = 3; i < e2; ++i) {
            Int step = int_pow(2, i + 1);
            if (mod_nonneg(y * y - u, step) != 0) y += int_pow(2, i - 1);
        }
        Int half = M2 / 2;
        Int y_neg = M2 - y;
        for (const Int& base : {y, y_neg}) {
            ys.insert(mod_nonneg(base, M2));
            ys.insert(mod_nonneg(base + half, M2));
        }
    }
    Int shift = int_pow(2, t / 2);
    Int count = shift;
    for (const Int& y : ys)
        for (Int j = 0; j < count; ++j) out.push_back(shift * (y + j * M2) % M);
    return out;
}

}  // namespace

std::vector<Int> roots_mod_4n(const Int& delta, const Int& n) {
    if (n < 1) throw std::domain_error("roots_mod_4n: n must be >= 1");
    Int m = 4 * n;
    auto fac = factorize(m);
    // residues mod each prime power, then CRT
    Int mod_acc = 1;
    std::vector<Int> res_acc{Int(0)};
    for (const auto& pp : fac.factors) {
        Int pe = int_pow(pp.p, pp.e);
        std::vector<Int> local = (pp.p == 2)
                                     ? sqrt_mod_two_power(delta, pp.e)
                                     : sqrt_mod_odd_prime_power(delta, pp.p, pp.e);
        if (local.empty()) return {};
        Int new_mod = mod_acc * pe;
        std::vector<Int> merged;
        merged.reserve(res_acc.size() * local.size());
        // x = r (mod mod_acc), x = s (mod pe)
        Int inv;
        if (mpz_invert(inv.get_mpz_t(), mod_acc.get_mpz_t(), pe.get_mpz_t()) == 0)
            throw std::logic_error("roots_mod_4n: CRT moduli not coprime");
        for (const Int& r : res_acc)
            for (const Int& s : local) {
                Int x = r + mod_acc * mod_nonneg((s - r) * inv, pe);
                merged.push_back(x);
            }
        mod_acc = new_mod;
        res_acc = std::move(merged);
    }
    Int bound = 2 * n;
    std::vector<Int> out;
    for (const Int& r : res_acc)
        if (r < bound) out.push_back(r);
    std::sort(out.begin(), out.end());
    return out;
}

Int weighted_count(const DiscriminantPair& pair, const Int& n,
                   const GenusCharacter* chi) {
    if (n < 1) throw std::domain_error("weighted_count: n must be >= 1");
    std::optional<GenusCharacter> local;
    if (!chi) {
        local.emplace(pair.d);
        chi = &*local;
    }
    Int delta = pair.delta();
    Int acc = 0;
    for (const Int& b : roots_mod_4n(delta, n)) {
        QuadraticForm q{-n, b, (delta - b * b) / (4 * n)};
        acc += (*chi)(q);
    }
    return acc;
}

Rat c_k(int k) {
    if (k < 1) throw std::domain_error("c_k: k must be >= 1");
    Int num;
    mpz_fac_ui(num.get_mpz_t(), k);
    Int num2;
    mpz_fac_ui(num2.get_mpz_t(), k - 1);
    Int den;
    mpz_fac_ui(den.get_mpz_t(), 2 * k);
    Rat r(2 * num * num2, den);
    r.canonicalize();
    return r;
}

Real form_integral(int k, const QuadraticForm& q, mpfr_prec_t precision) {
    Int delta = q.disc();
    if (q.a >= 0 || delta <= 0)
        throw std::domain_error("form_integral: need a < 0 and positive discriminant");
    // c_k Delta^(k-1) |a|^(-k) * sqrt(Delta)
    Rat rat = c_k(k) * Rat(int_pow(delta, k - 1), int_pow(abs(q.a), k));
    return Real(rat, precision) * Real(delta, precision).sqrt();
}

namespace {

// Shared enumeration: all forms [a,b,c] of discriminant delta with
// a < 0 < Q(x), visited as (a, b, c, t) with t = q^2 Q(x) >= 1.
// q^2 Q(x) is an integer, so Q(x) >= 1/q^2 and |a| <= q^2 delta / 4.
template <typename Fn>
void enumerate_positive_forms(const Int& delta, const Rat& x, Fn&& fn) {
    const Int& u = x.get_num();
    const Int& q = x.get_den();
    Int dq2 = delta * q * q;
    Int s = isqrt(dq2);
    if (s * s == dq2) s -= 1;  // want (2au + bq)^2 < delta q^2 strictly
    Int amax = q * q * delta / 4;
    for (Int a = -1; a >= -amax; --a) {
        Int t0 = -2 * a * u;
        // b with |2au + bq| <= s
        Int blo = -floor_div(s - t0, q);  // ceil((t0 - s)/q)
        Int bhi = floor_div(s + t0, q);
        for (Int b = blo; b <= bhi; ++b) {
            Int bb = b * b - delta;
            if (bb % (4 * a) != 0) continue;
            Int c = bb / (4 * a);
            Int numer = a * u * u + b * u * q + c * q * q;
            fn(a, b, c, numer);
        }
    }
}

// Same loop in machine words; safe when the guard bounds hold.
template <typename Fn>
void enumerate_positive_forms_ll(long long delta, long long u, long long q,
                                 long long amax, Fn&& fn) {
    long long dq2 = delta * q * q;
    long long s = static_cast<long long>(std::sqrt(static_cast<double>(dq2)));
    while (s * s > dq2) --s;
    while ((s + 1) * (s + 1) <= dq2) ++s;
    if (s * s == dq2) --s;
    for (long long a = -1; a >= -amax; --a) {
        long long t0 = -2 * a * u;
        auto fdiv = [](long long x, long long y) {  // floor division, y > 0
            long long d = x / y;
            return d * y > x ? d - 1 : d;
        };
        long long blo = -fdiv(s - t0, q);
        long long bhi = fdiv(s + t0, q);
        for (long long b = blo; b <= bhi; ++b) {
            __int128 bb = static_cast<__int128>(b) * b - delta;
            if (bb % (4 * a) != 0) continue;
            long long c = static_cast<long long>(bb / (4 * a));
            __int128 numer = static_cast<__int128>(a) * u * u +
                             static_cast<__int128>(b) * u * q +
                             static_cast<__int128>(c) * q * q;
            fn(a, b, c, static_cast<long long>(numer));
        }
    }
}

long long ll_mod(long long v, long m) {
    long long r = v % m;
    return r < 0 ? r + m : r;
}

bool fits_ll_kernel(const Int& u, const Int& q, const Int& delta, const Int& amax) {
    auto small = [](const Int& v, long bits) {
        Int av = abs(v);
        return mpz_sizeinbase(av.get_mpz_t(), 2) <= static_cast<std::size_t>(bits);
    };
    return small(u, 20) && small(q, 20) && small(delta, 20) && small(amax, 31);
}

}  // namespace

Rat eval_F(const DiscriminantPair& pair, const Rat& x) {
    pair.validate();
    Int delta = pair.delta();
    if (pair.k == 1 && is_square(delta))
        throw std::domain_error("eval_F: k = 1 requires nonsquare discriminant");
    GenusCharacter chi(pair.d);
    const Int abs_d = abs(pair.d);
    const long m = abs_d.get_si();
    const unsigned long km1 = static_cast<unsigned long>(pair.k - 1);

    const Int& u = x.get_num();
    const Int& q = x.get_den();
    Int amax = q * q * delta / 4;

    Int acc = 0;  // sum of chi * (q^2 Q(x))^(k-1)
    if (fits_ll_kernel(u, q, delta, amax)) {
        enumerate_positive_forms_ll(
            delta.get_si(), u.get_si(), q.get_si(), amax.get_si(),
            [&](long long a, long long b, long long c, long long numer) {
                int ch = chi.at_residues(ll_mod(a, m), ll_mod(b, m), ll_mod(c, m));
                if (ch == 0) return;
                acc += ch * int_pow(Int(static_cast<long>(numer)), km1);
            });
    } else {
        enumerate_positive_forms(delta, x, [&](const Int& a, const Int& b,
                                               const Int& c, const Int& numer) {
            QuadraticForm f{a, b, c};
            int ch = chi(f);
            if (ch == 0) return;
            acc += ch * int_pow(numer, km1);
        });
    }
    Rat r(acc, int_pow(q, 2 * km1));
    r.canonicalize();
    return r;
}

Rat eval_F_class(int k, const FormClass& cls, const Rat& x) {
    if (k < 1) throw std::domain_error("eval_F_class: k must be >= 1");
    if (cls.cycle.empty()) throw std::domain_error("eval_F_class: empty class");
    const Int& delta = cls.delta;
    std::set<QuadraticForm> members(cls.cycle.begin(), cls.cycle.end());
    const unsigned long km1 = static_cast<unsigned long>(k - 1);
    const Int& q = x.get_den();

    Int acc = 0;
    enumerate_positive_forms(delta, x, [&](const Int& a, const Int& b, const Int& c,
                                           const Int& numer) {
        if (!members.count(reduce({a, b, c}))) return;
        acc += int_pow(numer, km1);
    });
    Rat r(acc, int_pow(q, 2 * km1));
    r.canonicalize();
    return r;
}

Rat eval_F_sym(int k, const FormClass& cls, const Rat& x) {
    if (cls.cycle.empty()) throw std::domain_error("eval_F_sym: empty class");
    // cycle of the negated class
    FormClass neg;
    neg.delta = cls.delta;
    QuadraticForm start = reduce(cls.cycle.front().negated());
    QuadraticForm cur = start;
    do {
        neg.cycle.push_back(cur);
        cur = rho(cur);
    } while (!(cur == start));

    Rat second = eval_F_class(k, neg, x);
    if (k % 2) second = -second;
    return eval_F_class(k, cls, x) + second;
}

std::string TruncatedSeries::str() const {
    std::ostringstream os;
    os << "[";
    for (std::size_t i = 0; i < coeff.size(); ++i) {
        if (i) os << ", ";
        os << coeff[i].get_str();
    }
    os << "]";
    return os.str();
}

LocalProfile local_profile(const DiscriminantPair& pair, const Int& p) {
    auto fd = factor_discriminant(pair.D);
    return {fd.f % p == 0, pair.d % p == 0, fd.d0 % p == 0, p == 2};
}

EulerFactorPair euler_factor_both(const DiscriminantPair& pair, const Int& p,
                                  int order) {
    pair.validate();
    if (order < 0) throw std::domain_error("euler_factor_both: order must be >= 0");
    if (mpz_probab_prime_p(p.get_mpz_t(), 30) == 0)
        throw std::domain_error("euler_factor_both: p must be prime");

    EulerFactorPair out;
    out.lhs.coeff.resize(order + 1);
    out.rhs.coeff.resize(order + 1);

    GenusCharacter chi(pair.d);
    int sign = pair.k % 2 ? -1 : 1;
    Int pn = 1;
    for (int n = 0; n <= order; ++n) {
        out.lhs.coeff[n] = Rat(sign * weighted_count(pair, pn, &chi));
        pn *= p;
    }

    // rhs = (1 - X^2) P_e(X) / ((1 - alpha X)(1 - beta X)) with X standing
    // for p^(-k):
    //   P_e(X) = sum_{j<=e} p^j X^(2j) - alpha sum_{1<=j<=e} p^(j-1) X^(2j-1)
    auto fd = factor_discriminant(pair.D);
    unsigned e = 0;
    {
        Int f = fd.f;
        while (f % p == 0) { f /= p; ++e; }
    }
    int alpha = kronecker(fd.d0, p);
    int beta = kronecker(pair.d, p);

    std::vector<Rat> poly(order + 1, Rat(0));
    for (unsigned j = 0; j <= e; ++j)
        if (2 * j <= static_cast<unsigned>(order)) poly[2 * j] += Rat(int_pow(p, j));
    for (unsigned j = 1; j <= e; ++j)
        if (2 * j - 1 <= static_cast<unsigned>(order))
            poly[2 * j - 1] -= Rat(alpha) * Rat(int_pow(p, j - 1));
    // multiply by (1 - X^2)
    std::vector<Rat> num(order + 1, Rat(0));
    for (int i = 0; i <= order; ++i) {
        num[i] = poly[i];
        if (i >= 2) num[i] -= poly[i - 2];
    }
    // divide by (1 - gamma X): out[n] = in[n] + gamma out[n-1]
    for (int gamma : {alpha, beta}) {
        if (gamma == 0) continue;
        for (int i = 1; i <= order; ++i) num[i] += Rat(gamma) * num[i - 1];
    }
    out.rhs.coeff = std::move(num);
    return out;
}

Int divisor_sum_ms(int k, const Int& d0, const Int& f) {
    if (k < 1 || f < 1) throw std::domain_error("divisor_sum_ms: need k, f >= 1");
    auto fac = factorize(f);
    // squarefree divisors r carry mu(r) != 0
    std::vector<Int> divs{Int(1)};
    for (const auto& pp : fac.factors) {
        std::size_t sz = divs.size();
        for (std::size_t i = 0; i < sz; ++i) divs.push_back(divs[i] * pp.p);
    }
    Int acc = 0;
    for (const Int& r : divs) {
        int mu = moebius(r);
        int ch = kronecker(d0, r);
        if (mu == 0 || ch == 0) continue;
        acc += mu * ch * int_pow(r, k - 1) * sigma_pow(f / r, 2 * k - 1);
    }
    return acc;
}

Int divisor_sum_ms_factored(int k, const Int& d0, const Int& f) {
    if (k < 1 || f < 1) throw std::domain_error("divisor_sum_ms_factored: need k, f >= 1");
    Int acc = 1;
    for (const auto& pp : factorize(f).factors) {
        Int local = sigma_pow(int_pow(pp.p, pp.e), 2 * k - 1);
        Int lower = pp.e >= 1 ? sigma_pow(int_pow(pp.p, pp.e - 1), 2 * k - 1) : Int(0);
        local -= kronecker(d0, pp.p) * int_pow(pp.p, k - 1) * lower;
        acc *= local;
    }
    return acc;
}

Rat divisor_factor(int k, const Int& d0, const Int& f) {
    Rat r(divisor_sum_ms(k, d0, f), int_pow(f, 2 * k - 1));
    r.canonicalize();
    return r;
}

Rat cohen_h(int k, const Int& N) {
    if (k < 1) throw std::domain_error("cohen_h: k must be >= 1");
    if (N < 0) throw std::domain_error("cohen_h: N must be >= 0");
    if (N == 0) return l_negative(2 * k, Int(1));
    Int m = (k % 2) ? Int(-N) : N;
    Int r = mod_nonneg(m, 4);
    if (r == 2 || r == 3) return Rat(0);
    auto fd = factor_discriminant(m);
    return l_negative(k, fd.d0) * Rat(divisor_sum_ms(k, fd.d0, fd.f));
}

AverageResult average_F(const DiscriminantPair& pair, AverageMethod method,
                        mpfr_prec_t precision, double tolerance) {
    pair.validate();
    if (pair.k < 2) throw std::domain_error("average_F: k must be >= 2");
    const mpfr_prec_t wp = precision + 32;

    Rat exact = cohen_h(pair.k, abs(pair.D)) * cohen_h(pair.k, abs(pair.d)) /
                (2 * l_negative(2 * pair.k, Int(1)));
    exact.canonicalize();

    AverageResult res{Real(wp), exact, Real(wp), method, 0, true};

    if (method == AverageMethod::chain) {
        auto fd = factor_discriminant(pair.D);
        Rat rpart = c_k(pair.k) * Rat(divisor_sum_ms(pair.k, fd.d0, fd.f));
        if (pair.k % 2) rpart = -rpart;
        Int m0 = abs(fd.d0 * pair.d);
        Real amp = Real(int_pow(m0, pair.k - 1), wp) * Real(m0, wp).sqrt();
        res.value = Real(rpart, wp) * amp * l_numeric(pair.k, fd.d0, wp) *
                    l_numeric(pair.k, pair.d, wp) / l_numeric(2 * pair.k, Int(1), wp);
    } else {
        GenusCharacter chi(pair.d);
        Int delta = pair.delta();
        Real scale = Real(c_k(pair.k), wp) *
                     Real(int_pow(delta, pair.k - 1), wp) * Real(delta, wp).sqrt();
        const long cap = 1L << 17;
        Real tail_tol(Rat(tolerance / 4), wp);
        Real sum(wp);
        Real prev(wp);
        bool have_prev = false;
        long M = 1024;
        long n = 1;
        for (;;) {
            for (; n <= M; ++n) {
                Int Nn = weighted_count(pair, Int(n), &chi);
                if (Nn != 0)
                    sum += Real(Nn, wp) * Real(n, wp).pow_si(-pair.k);
            }
            Real cur = scale * sum;
            res.terms = M;
            if (have_prev && (cur - prev).abs() < tail_tol) {
                res.converged = true;
                res.value = cur;
                break;
            }
            if (M >= cap) {
                res.converged = have_prev && (cur - prev).abs() < tail_tol;
                res.value = cur;
                break;
            }
            prev = cur;
            have_prev = true;
            M *= 2;
        }
    }
    res.abs_error = (res.value - Real(exact, wp)).abs().round_to(precision);
    res.value = res.value.round_to(precision);
    return res;
}

QExpansionPair qexpansion(int k, const Int& d, long n_max, mpfr_prec_t precision) {
    if (k < 2) throw std::domain_error("qexpansion: k must be >= 2");
    if (n_max < 0) throw std::domain_error("qexpansion: n_max must be >= 0");
    int want = (k % 2 == 0) ? 1 : -1;
    if (!is_fundamental(d) || sgn(d) != want)
        throw std::domain_error("qexpansion: d must be fundamental with sign (-1)^k");

    QExpansionPair out;
    const mpfr_prec_t wp = precision + 32;
    Rat zeta = l_negative(2 * k, Int(1));
    Rat hd = cohen_h(k, abs(d));
    if (hd == 0) throw std::logic_error("qexpansion: H(k, |d|) vanished");
    Rat factor = zeta / hd;

    out.lhs[0] = {true, zeta / 2, Real(0L, precision)};
    for (long N = 0; N <= n_max; ++N) {
        out.rhs[N] = {true, cohen_h(k, Int(N)) / 2, Real(0L, precision)};
        if (N == 0) continue;
        Int D = (k % 2) ? Int(-N) : Int(N);
        if (mod_nonneg(D, 4) > 1) continue;  // no discriminant at this exponent
        DiscriminantPair pair{k, D, d};
        auto avg = average_F(pair, AverageMethod::chain, wp);
        Real coeff = avg.value * Real(factor, wp);
        out.lhs[N] = {false, Rat(0), coeff.round_to(precision)};
    }
    return out;
}

}  // namespace qsum
