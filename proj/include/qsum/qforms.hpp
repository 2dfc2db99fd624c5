#pragma once

#include <array>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "qsum/arith.hpp"
#include "qsum/rational.hpp"

namespace qsum {

// Integral binary quadratic form a x^2 + b xy + c y^2, written [a,b,c].
struct QuadraticForm {
    Int a, b, c;

    Int disc() const { return b * b - 4 * a * c; }
    Int eval(const Int& x, const Int& y) const {
        return a * x * x + b * x * y + c * y * y;
    }
    // Value at rational x (i.e. [x : 1] on the projective line).
    Rat eval_at(const Rat& x) const {
        return Rat(a) * x * x + Rat(b) * x + Rat(c);
    }
    QuadraticForm negated() const { return {-a, -b, -c}; }

    friend bool operator==(const QuadraticForm& p, const QuadraticForm& q) {
        return p.a == q.a && p.b == q.b && p.c == q.c;
    }
    friend bool operator<(const QuadraticForm& p, const QuadraticForm& q) {
        if (p.a != q.a) return p.a < q.a;
        if (p.b != q.b) return p.b < q.b;
        return p.c < q.c;
    }
    std::string str() const;
};

// Row-major 2x2 integer matrix [[a, b], [c, d]] with det = 1.
struct Mat2 {
    Int a, b, c, d;
    Int det() const { return a * d - b * c; }
};

// (Q o M)(x, y) = Q(a x + b y, c x + d y). Requires det M = 1; preserves the
// discriminant.
QuadraticForm sl2_act(const QuadraticForm& q, const Mat2& m);

// Weight k >= 1 with a pair of coprime-role discriminants D, d:
//   d fundamental or 1, D = 0 or 1 mod 4, sign d = sign D = (-1)^k,
//   Delta = D*d > 0.
struct DiscriminantPair {
    int k;
    Int D;
    Int d;

    Int delta() const { return D * d; }
    // Throws std::domain_error describing the violated condition.
    void validate() const;
};

// d0 fundamental (or 1), f >= 1, with original D = d0 * f^2.
struct DiscriminantFactorization {
    Int d0;
    Int f;
};

// Fundamental discriminant test: 1, or squarefree d = 1 mod 4, or d = 4m
// with m = 2 or 3 mod 4 squarefree.
bool is_fundamental(const Int& d);

// Splits discriminant D (= 0 or 1 mod 4, D != 0) as d0 * f^2.
DiscriminantFactorization factor_discriminant(const Int& D);

// Genus character chi_d(Q) for fundamental d (or 1) dividing disc(Q) with
// disc(Q)/d = 0 or 1 mod 4:
//   0 when gcd(a, b, c, d) > 1, else kronecker(d, r) for any represented
//   r coprime to d. Computed from the residues Q(x,y) mod |d| over
//   x, y in [0, |d|); all unit residues give one common value (asserted).
// Constant on SL2 classes. Square discriminants allowed.
int genus_character(const Int& d, const QuadraticForm& q);

// Cached evaluator for a fixed d: chi depends only on (a, b, c) mod |d|.
// Thread-confined: share nothing across threads.
class GenusCharacter {
  public:
    explicit GenusCharacter(const Int& d);
    int operator()(const QuadraticForm& q) const;
    int at_residues(long ar, long br, long cr) const;  // values already reduced mod |d|
    const Int& d() const { return d_; }

  private:
    Int d_;
    long m_;                          // |d|
    mutable std::vector<int8_t> tab_; // m^3 entries, 2 = unset
};

// Indefinite reduction. A form with nonsquare Delta > 0 is reduced when
//   0 < b < sqrt(Delta) and sqrt(Delta) - b < 2|a| < sqrt(Delta) + b.
bool is_reduced(const QuadraticForm& q);

// Right-neighbor step: rho([a,b,c]) = [c, r, (r^2 - Delta)/(4c)] with
// r = -b mod 2|c| placed in (sqrt(Delta) - 2|c|, sqrt(Delta)). Permutes the
// reduced forms of each nonsquare Delta > 0.
QuadraticForm rho(const QuadraticForm& q);

// Iterates rho until reduced. Throws std::runtime_error if the iteration cap
// 10 * (3 + log2|a| + log2 Delta) is exceeded.
QuadraticForm reduce(const QuadraticForm& q);

// One SL2 class of forms of nonsquare discriminant delta > 0: the cycle of
// reduced forms under rho, in rho-order starting from the least form.
struct FormClass {
    Int delta;
    std::vector<QuadraticForm> cycle;
};

// All classes of discriminant delta (> 0, nonsquare, = 0 or 1 mod 4).
// Deterministic order: sorted by least cycle member.
std::vector<FormClass> enumerate_classes(const Int& delta);

// Index into enumerate_classes(disc Q) of the class containing Q.
std::size_t class_of(const QuadraticForm& q,
                     const std::vector<FormClass>& classes);

}  // namespace qsum
