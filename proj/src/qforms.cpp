#include "qsum/qforms.hpp"

#include <algorithm>
#include <numeric>
#include <set>
#include <sstream>
#include <stdexcept>

namespace qsum {

std::string QuadraticForm::str() const {
    std::ostringstream os;
    os << "[" << a.get_str() << "," << b.get_str() << "," << c.get_str() << "]";
    return os.str();
}

QuadraticForm sl2_act(const QuadraticForm& q, const Mat2& m) {
    if (m.det() != 1) throw std::domain_error("sl2_act: matrix must have det 1");
    // (Q o M)(x, y) = Q(m.a x + m.b y, m.c x + m.d y)
    QuadraticForm r;
    r.a = q.eval(m.a, m.c);
    r.c = q.eval(m.b, m.d);
    r.b = 2 * q.a * m.a * m.b + q.b * (m.a * m.d + m.b * m.c) + 2 * q.c * m.c * m.d;
    return r;
}

void DiscriminantPair::validate() const {
    if (k < 1) throw std::domain_error("pair: k must be >= 1");
    if (!is_fundamental(d))
        throw std::domain_error("pair: d must be a fundamental discriminant or 1");
    if (D == 0 || mod_nonneg(D, 4) > 1)
        throw std::domain_error("pair: D must be a nonzero discriminant (0 or 1 mod 4)");
    int want = (k % 2 == 0) ? 1 : -1;
    if (sgn(d) != want || sgn(D) != want)
        throw std::domain_error("pair: need sign d = sign D = (-1)^k");
    if (delta() <= 0) throw std::domain_error("pair: D*d must be positive");
}

bool is_fundamental(const Int& d) {
    if (d == 1) return true;
    if (d == 0) return false;
    auto squarefree = [](const Int& n) {
        auto f = factorize(abs(n));
        for (const auto& pp : f.factors)
            if (pp.e > 1) return false;
        return true;
    };
    Int r = mod_nonneg(d, 4);
    if (r == 1) return squarefree(d);
    if (r == 0) {
        Int m = d / 4;
        Int rm = mod_nonneg(m, 4);
        return (rm == 2 || rm == 3) && squarefree(m);
    }
    return false;
}

DiscriminantFactorization factor_discriminant(const Int& D) {
    if (D == 0 || mod_nonneg(D, 4) > 1)
        throw std::domain_error("factor_discriminant: need D = 0 or 1 mod 4, D != 0");
    // signed squarefree kernel m; D/m is a perfect square
    auto f = factorize(abs(D));
    Int kernel = 1, root = 1;  // |D| = kernel * root^2
    for (const auto& pp : f.factors) {
        if (pp.e % 2) kernel *= pp.p;
        root *= int_pow(pp.p, pp.e / 2);
    }
    Int m = sgn(D) < 0 ? Int(-kernel) : kernel;
    if (mod_nonneg(m, 4) == 1) return {m, root};
    // kernel = 2 or 3 mod 4: d0 = 4m, and root must be even since D = 0 mod 4
    return {4 * m, root / 2};
}

namespace {

long mod_long(const Int& v, long m) {
    return mod_nonneg(v, Int(m)).get_si();
}

// chi from coefficient residues mod m = |d|; residues of the represented
// values determine the character. Throws if the unit residues disagree,
// which would mean the character is not well defined -- must never happen
// for d | disc with the discriminant compatibility precondition.
int chi_from_residues(const Int& d, long m, long ar, long br, long cr) {
    long g = std::gcd(std::gcd(ar, br), std::gcd(cr, m));
    if (g > 1) return 0;
    int value = 2;  // sentinel
    for (long x = 0; x < m; ++x) {
        for (long y = 0; y < m; ++y) {
            long r = (ar * x % m * x + br * x % m * y + cr * y % m * y) % m;
            if (std::gcd(r, m) != 1) continue;
            int v = kronecker(d, Int(r));
            if (value == 2) {
                value = v;
            } else if (value != v) {
                throw std::logic_error("genus character: unit residues disagree for " +
                                       QuadraticForm{Int(ar), Int(br), Int(cr)}.str());
            }
        }
    }
    if (value == 2)
        throw std::logic_error("genus character: no represented unit residue");
    return value;
}

}  // namespace

GenusCharacter::GenusCharacter(const Int& d) : d_(d) {
    if (!is_fundamental(d))
        throw std::domain_error("genus character: d must be fundamental or 1");
    Int m = abs(d);
    if (!m.fits_slong_p())
        throw std::domain_error("genus character: |d| out of range");
    m_ = m.get_si();
    if (m_ <= 128) tab_.assign(static_cast<std::size_t>(m_) * m_ * m_, 2);
}

int GenusCharacter::at_residues(long ar, long br, long cr) const {
    if (m_ == 1) return 1;
    if (!tab_.empty()) {
        std::size_t idx = (static_cast<std::size_t>(ar) * m_ + br) * m_ + cr;
        int8_t v = tab_[idx];
        if (v != 2) return v;
        int val = chi_from_residues(d_, m_, ar, br, cr);
        tab_[idx] = static_cast<int8_t>(val);
        return val;
    }
    return chi_from_residues(d_, m_, ar, br, cr);
}

int GenusCharacter::operator()(const QuadraticForm& q) const {
    Int delta = q.disc();
    if (d_ != 1) {
        if (delta % d_ != 0 || mod_nonneg(delta / d_, 4) > 1)
            throw std::domain_error(
                "genus character: need d | disc(Q) with disc(Q)/d = 0 or 1 mod 4");
    }
    return at_residues(mod_long(q.a, m_), mod_long(q.b, m_), mod_long(q.c, m_));
}

int genus_character(const Int& d, const QuadraticForm& q) {
    return GenusCharacter(d)(q);
}

namespace {

// Floor of sqrt(Delta) after validating Delta > 0 nonsquare.
Int reduction_root(const Int& delta) {
    if (delta <= 0)
        throw std::domain_error("reduction: discriminant must be positive");
    if (is_square(delta))
        throw std::domain_error("reduction: discriminant must not be a square");
    return isqrt(delta);
}

}  // namespace

bool is_reduced(const QuadraticForm& q) {
    Int s = reduction_root(q.disc());
    if (!(q.b > 0 && q.b <= s)) return false;
    Int a2 = 2 * abs(q.a);
    return s - q.b < a2 && a2 <= s + q.b;
}

QuadraticForm rho(const QuadraticForm& q) {
    Int delta = q.disc();
    Int s = reduction_root(delta);
    if (q.c == 0) throw std::domain_error("rho: c must be nonzero");
    // r = -b mod 2|c|, shifted into (sqrt(Delta) - 2|c|, sqrt(Delta))
    Int c2 = 2 * abs(q.c);
    Int r = s - mod_nonneg(s + q.b, c2);
    Int num = r * r - delta;
    if (num % (4 * q.c) != 0) throw std::logic_error("rho: nonintegral image");
    return {q.c, r, num / (4 * q.c)};
}

QuadraticForm reduce(const QuadraticForm& q) {
    Int delta = q.disc();
    reduction_root(delta);
    Int abs_a = abs(q.a);
    std::size_t cap = 10 * (3 + mpz_sizeinbase(abs_a.get_mpz_t(), 2) +
                            mpz_sizeinbase(delta.get_mpz_t(), 2));
    QuadraticForm cur = q;
    for (std::size_t i = 0; i < cap; ++i) {
        if (is_reduced(cur)) return cur;
        cur = rho(cur);
    }
    throw std::runtime_error("reduce: iteration cap exceeded for " + q.str());
}

std::vector<FormClass> enumerate_classes(const Int& delta) {
    Int s = reduction_root(delta);
    if (mod_nonneg(delta, 4) > 1)
        throw std::domain_error("enumerate_classes: delta must be 0 or 1 mod 4");

    // reduced forms: 0 < b <= s, b = delta mod 2, a*c = (b^2 - delta)/4 < 0,
    // s - b < 2|a| <= s + b
    std::set<QuadraticForm> reduced;
    for (Int b = (delta % 2 == 0) ? Int(2) : Int(1); b <= s; b += 2) {
        Int n4 = (b * b - delta) / 4;  // < 0 since b <= s < sqrt(delta)
        auto f = factorize(-n4);
        std::vector<Int> divs{1};
        for (const auto& pp : f.factors) {
            std::size_t sz = divs.size();
            Int pe = 1;
            for (unsigned e = 1; e <= pp.e; ++e) {
                pe *= pp.p;
                for (std::size_t i = 0; i < sz; ++i) divs.push_back(divs[i] * pe);
            }
        }
        for (const Int& g : divs) {
            if (!(s - b < 2 * g && 2 * g <= s + b)) continue;
            Int cpos = (-n4) / g;
            reduced.insert({g, b, -cpos});   // a > 0, c < 0
            reduced.insert({-g, b, cpos});   // a < 0, c > 0
        }
    }

    std::vector<FormClass> classes;
    std::set<QuadraticForm> seen;
    for (const auto& start : reduced) {
        if (seen.count(start)) continue;
        FormClass cls;
        cls.delta = delta;
        QuadraticForm cur = start;
        do {
            if (!reduced.count(cur))
                throw std::logic_error("enumerate_classes: rho left the reduced set at " +
                                       cur.str());
            if (cls.cycle.size() > reduced.size())
                throw std::logic_error("enumerate_classes: rho cycle does not close");
            seen.insert(cur);
            cls.cycle.push_back(cur);
            cur = rho(cur);
        } while (!(cur == start));
        classes.push_back(std::move(cls));
    }
    // deterministic: iteration over std::set starts each cycle at its least
    // member and outer order is by least member already
    return classes;
}

std::size_t class_of(const QuadraticForm& q, const std::vector<FormClass>& classes) {
    QuadraticForm r = reduce(q);
    for (std::size_t i = 0; i < classes.size(); ++i) {
        const auto& cyc = classes[i].cycle;
        if (std::find(cyc.begin(), cyc.end(), r) != cyc.end()) return i;
    }
    throw std::invalid_argument("class_of: form not in the given class list");
}

}  // namespace qsum
