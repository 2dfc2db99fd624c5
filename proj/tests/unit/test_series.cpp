#include <doctest.h>

#include <vector>

#include "qsum/series.hpp"

using namespace qsum;

namespace {

// Direct scan for b in [0, 2n) with b^2 = delta (mod 4n).
std::vector<Int> brute_roots(const Int& delta, const Int& n) {
    std::vector<Int> out;
    Int m = 4 * n;
    for (Int b = 0; b < 2 * n; ++b)
        if (mod_nonneg(b * b - delta, m) == 0) out.push_back(b);
    return out;
}

// Definition-level evaluation: scan a generous coefficient window, test
// positivity on the exact rational value, and sum chi * Q(x)^(k-1).
Rat brute_F(const DiscriminantPair& pair, const Rat& x) {
    Int delta = pair.delta();
    GenusCharacter chi(pair.d);
    const Int& u = x.get_num();
    const Int& q = x.get_den();
    Int amax = q * q * delta / 4;
    Int window = isqrt(delta * q * q) + 1;
    Rat acc(0);
    for (Int a = -1; a >= -amax; --a) {
        Int center = -2 * a * u;  // Q(x) > 0 forces |b q - center| < sqrt(delta) q
        Int blo = floor_div(center - window, q) - 1;
        Int bhi = floor_div(center + window, q) + 2;
        for (Int b = blo; b <= bhi; ++b) {
            Int num = b * b - delta;
            if (num % (4 * a) != 0) continue;
            QuadraticForm f{a, b, num / (4 * a)};
            Rat v = f.eval_at(x);
            if (!(v > 0)) continue;
            int ch = chi(f);
            if (ch == 0) continue;
            acc += Rat(ch) * rat_pow(v, pair.k - 1);
        }
    }
    return acc;
}

// Hurwitz class number by counting reduced positive definite forms of
// discriminant -N, weighting [a,0,a] by 1/2 and [a,a,a] by 1/3.
Rat hurwitz_oracle(long N) {
    if (N <= 0 || N % 4 == 1 || N % 4 == 2) return Rat(0);
    Rat acc(0);
    for (long a = 1; 3 * a * a <= N; ++a)
        for (long b = -a + 1; b <= a; ++b) {
            if ((b * b + N) % (4 * a)) continue;
            long c = (b * b + N) / (4 * a);
            if (c < a) continue;
            if (a == c && b < 0) continue;
            if (a == b && b == c)
                acc += Rat(1, 3);
            else if (b == 0 && a == c)
                acc += Rat(1, 2);
            else
                acc += 1;
        }
    return acc;
}

TruncatedSeries series_of(std::vector<long> v) {
    TruncatedSeries s;
    for (long c : v) s.coeff.push_back(Rat(c));
    return s;
}

}  // namespace

TEST_CASE("congruence roots match a direct scan") {
    for (long delta : {5L, 12L, 45L, 108L, -4L, -23L, 972L, 17L, 28L, 320L})
        for (long n = 1; n <= 120; ++n) {
            auto fast = roots_mod_4n(Int(delta), Int(n));
            auto slow = brute_roots(Int(delta), Int(n));
            REQUIRE(fast == slow);
        }
    // large prime powers stay cheap and correct
    CHECK(roots_mod_4n(Int(5), int_pow(Int(11), 4)) ==
          brute_roots(Int(5), int_pow(Int(11), 4)));
    CHECK(roots_mod_4n(Int(972), int_pow(Int(3), 7)) ==
          brute_roots(Int(972), int_pow(Int(3), 7)));

    CHECK(count_roots_mod(Int(1), Int(8)) == 4);
    CHECK(count_roots_mod(Int(4), Int(16)) == 4);
    CHECK(count_roots_mod(Int(5), Int(8)) == 0);
    CHECK_THROWS_AS(count_roots_mod(Int(5), Int(0)), std::domain_error);
    CHECK_THROWS_AS(roots_mod_4n(Int(5), Int(0)), std::domain_error);
}

TEST_CASE("weighted representation counts") {
    DiscriminantPair p35{3, -4, -3};
    CHECK(weighted_count(p35, Int(1)) == -1);
    CHECK(weighted_count(p35, Int(2)) == 1);
    CHECK(weighted_count(p35, Int(3)) == 1);
    CHECK(weighted_count(p35, Int(6)) == -1);

    DiscriminantPair p51{2, 5, 1};
    CHECK(weighted_count(p51, Int(1)) == 1);
    CHECK(weighted_count(p51, Int(4)) == 0);
    CHECK(weighted_count(p51, Int(5)) == 1);
    CHECK(weighted_count(p51, Int(11)) == 2);

    // Delta = 225; at n = 3 the sole root b = 3 gives [-3,3,18], whose
    // content is coprime to d = 5 and which represents 2 mod 5.
    DiscriminantPair p455{2, 45, 5};
    CHECK(weighted_count(p455, Int(3)) == -1);
    CHECK(weighted_count(p455, Int(9)) == 3);
    CHECK(weighted_count(p455, Int(27)) == -6);

    // (-1)^k N is multiplicative across coprime levels
    GenusCharacter chi(p35.d);
    for (long m : {2L, 3L, 5L, 7L})
        for (long n : {5L, 7L, 11L, 13L}) {
            if (m == n) continue;
            Int lhs = weighted_count(p35, Int(m * n), &chi);
            Int rhs = -weighted_count(p35, Int(m), &chi) *
                      weighted_count(p35, Int(n), &chi);
            CHECK(lhs == rhs);  // k odd: (-N)(mn) = (-N)(m) (-N)(n)
        }
    CHECK_THROWS_AS(weighted_count(p51, Int(0)), std::domain_error);
}

TEST_CASE("exact sum against a definition-level scan") {
    CHECK(eval_F(DiscriminantPair{3, -4, -3}, Rat(0)) == Rat(-14));
    CHECK(eval_F(DiscriminantPair{3, -4, -3}, Rat(1)) == Rat(-14));

    struct Probe {
        DiscriminantPair pair;
        std::vector<Rat> xs;
    };
    const std::vector<Probe> probes = {
        {{2, 5, 1}, {Rat(0), Rat(1, 2), Rat(1, 3), Rat(-2, 5), Rat(5, 7)}},
        {{3, -4, -3}, {Rat(0), Rat(1, 3), Rat(-1, 2), Rat(3, 7)}},
        {{2, 12, 1}, {Rat(1, 2), Rat(2, 3)}},
        {{2, 16, 1}, {Rat(1, 3), Rat(1, 2)}},   // square discriminant, k >= 2
        {{1, -4, -3}, {Rat(1, 3), Rat(-2, 5)}}, // weight one: sums vanish
    };
    for (const auto& probe : probes)
        for (const Rat& x : probe.xs)
            CHECK(eval_F(probe.pair, x) == brute_F(probe.pair, x));

    CHECK(eval_F(DiscriminantPair{1, -4, -3}, Rat(1, 3)) == 0);

    // numerator far beyond the machine-word guard: exercises the big-integer
    // path; equality with the shifted argument is exact periodicity
    CHECK(eval_F(DiscriminantPair{2, 5, 1}, Rat(3000000, 7)) ==
          eval_F(DiscriminantPair{2, 5, 1}, Rat(3, 7)));

    CHECK_THROWS_AS(eval_F(DiscriminantPair{1, -4, -4}, Rat(1, 3)),
                    std::domain_error);  // k = 1 needs nonsquare delta
    CHECK_THROWS_AS(eval_F(DiscriminantPair{2, -5, 1}, Rat(0)),
                    std::domain_error);  // sign violation
}

TEST_CASE("class-restricted sums and symmetrization") {
    auto classes = enumerate_classes(Int(12));
    REQUIRE(classes.size() == 2);
    GenusCharacter chi(Int(-3));
    DiscriminantPair pair{3, -4, -3};

    for (const Rat& x : {Rat(0), Rat(1, 3), Rat(-2, 5)}) {
        Rat full = eval_F(pair, x);
        Rat plain(0), sym(0);
        for (const auto& cls : classes) {
            int v = chi(cls.cycle.front());
            plain += Rat(v) * eval_F_class(pair.k, cls, x);
            sym += Rat(v) * eval_F_sym(pair.k, cls, x);
        }
        CHECK(plain == full);
        CHECK(sym == 2 * full);
    }

    // with the trivial character the class sums partition the full sum
    auto c12 = enumerate_classes(Int(12));
    DiscriminantPair triv{2, 12, 1};
    for (const Rat& x : {Rat(1, 2), Rat(2, 3)}) {
        Rat total(0);
        for (const auto& cls : c12) total += eval_F_class(2, cls, x);
        CHECK(total == eval_F(triv, x));
    }

    CHECK_THROWS_AS(eval_F_class(0, classes[0], Rat(0)), std::domain_error);
    FormClass empty;
    empty.delta = 12;
    CHECK_THROWS_AS(eval_F_class(2, empty, Rat(0)), std::domain_error);
    CHECK_THROWS_AS(eval_F_sym(2, empty, Rat(0)), std::domain_error);
}

TEST_CASE("local factor series") {
    auto both = [](DiscriminantPair pair, long p, int order) {
        return euler_factor_both(pair, Int(p), order);
    };

    auto e1 = both({2, 5, 1}, 2, 6);
    CHECK(e1.rhs == series_of({1, 0, 0, 0, 0, 0, 0}));
    CHECK(e1.lhs == e1.rhs);

    auto e2 = both({2, 5, 1}, 11, 4);
    CHECK(e2.rhs == series_of({1, 2, 2, 2, 2}));
    CHECK(e2.lhs == e2.rhs);

    auto e3 = both({3, -36, -3}, 3, 6);
    CHECK(e3.rhs == series_of({1, 0, 2, -3, 0, 0, 0}));
    CHECK(e3.lhs == e3.rhs);

    auto e4 = both({2, 45, 5}, 3, 6);
    CHECK(e4.rhs == series_of({1, -1, 3, -6, 6, -6, 6}));
    CHECK(e4.lhs == e4.rhs);

    auto e5 = both({3, -324, -3}, 3, 6);
    CHECK(e5.rhs == series_of({1, 0, 2, 0, 6, -9, 0}));
    CHECK(e5.lhs == e5.rhs);

    auto e6 = both({2, 5, 1}, 7, 0);
    CHECK(e6.lhs == series_of({1}));
    CHECK(e6.rhs == series_of({1}));

    CHECK(series_of({1, 0, 2, -3}).str() == "[1, 0, 2, -3]");
    CHECK_THROWS_AS(euler_factor_both(DiscriminantPair{2, 5, 1}, Int(6), 3),
                    std::domain_error);

    auto prof = local_profile(DiscriminantPair{2, 45, 5}, Int(3));
    CHECK(prof.p_div_f);
    CHECK(!prof.p_div_d);
    CHECK(!prof.p_div_d0);
    CHECK(!prof.p_is_two);
    auto prof2 = local_profile(DiscriminantPair{3, -324, -3}, Int(3));
    CHECK(prof2.p_div_f);
    CHECK(prof2.p_div_d);
    CHECK(!prof2.p_div_d0);
    auto prof3 = local_profile(DiscriminantPair{2, 5, 1}, Int(2));
    CHECK(!prof3.p_div_f);
    CHECK(prof3.p_is_two);
}

TEST_CASE("divisor sums agree between direct and factored forms") {
    CHECK(divisor_sum_ms(2, Int(5), Int(3)) == 31);
    CHECK(divisor_sum_ms(1, Int(-3), Int(2)) == 4);
    CHECK(divisor_sum_ms(2, Int(1), Int(3)) == 25);
    CHECK(divisor_sum_ms(3, Int(1), Int(1)) == 1);
    for (int k : {1, 2, 3})
        for (long d0 : {1L, 5L, -4L, -3L, 8L, -7L})
            for (long f = 1; f <= 50; ++f) {
                Int direct = divisor_sum_ms(k, Int(d0), Int(f));
                Int fact = divisor_sum_ms_factored(k, Int(d0), Int(f));
                CHECK(direct == fact);
                Rat norm = divisor_factor(k, Int(d0), Int(f));
                Rat expect(direct, int_pow(Int(f), 2 * k - 1));
                expect.canonicalize();
                CHECK(norm == expect);
            }
    CHECK_THROWS_AS(divisor_sum_ms(0, Int(5), Int(3)), std::domain_error);
    CHECK_THROWS_AS(divisor_sum_ms(2, Int(5), Int(0)), std::domain_error);
}

TEST_CASE("Cohen numbers") {
    CHECK(cohen_h(1, Int(0)) == Rat(-1, 12));
    CHECK(cohen_h(2, Int(0)) == Rat(1, 120));
    CHECK(cohen_h(3, Int(0)) == Rat(-1, 252));
    CHECK(cohen_h(1, Int(3)) == Rat(1, 3));
    CHECK(cohen_h(1, Int(4)) == Rat(1, 2));
    CHECK(cohen_h(1, Int(7)) == Rat(1));
    CHECK(cohen_h(1, Int(12)) == Rat(4, 3));
    CHECK(cohen_h(1, Int(23)) == Rat(3));
    CHECK(cohen_h(2, Int(4)) == Rat(-7, 12));
    CHECK(cohen_h(2, Int(5)) == Rat(-2, 5));
    CHECK(cohen_h(2, Int(8)) == Rat(-1));
    CHECK(cohen_h(2, Int(9)) == Rat(-25, 12));
    CHECK(cohen_h(2, Int(12)) == Rat(-2));
    CHECK(cohen_h(2, Int(45)) == Rat(-62, 5));
    CHECK(cohen_h(3, Int(3)) == Rat(-2, 9));
    CHECK(cohen_h(3, Int(4)) == Rat(-1, 2));
    CHECK(cohen_h(3, Int(8)) == Rat(-3));

    // weight one gives the Hurwitz class numbers
    for (long N = 0; N <= 100; ++N) {
        Rat h = cohen_h(1, Int(N));
        if (N == 0)
            CHECK(h == Rat(-1, 12));
        else
            CHECK(h == hurwitz_oracle(N));
    }
    // vanishing in the excluded residue classes
    for (long N = 1; N <= 50; ++N) {
        if (N % 4 == 1 || N % 4 == 2) CHECK(cohen_h(1, Int(N)) == 0);
        if (N % 4 == 2 || N % 4 == 3) {
            CHECK(cohen_h(2, Int(N)) == 0);
            CHECK(cohen_h(4, Int(N)) == 0);
        }
        if (N % 4 == 1 || N % 4 == 2) CHECK(cohen_h(3, Int(N)) == 0);
    }
    CHECK_THROWS_AS(cohen_h(0, Int(5)), std::domain_error);
    CHECK_THROWS_AS(cohen_h(2, Int(-1)), std::domain_error);
}

TEST_CASE("closed-form line integrals") {
    CHECK(c_k(1) == Rat(1));
    CHECK(c_k(2) == Rat(1, 6));
    CHECK(c_k(3) == Rat(1, 30));
    CHECK(c_k(4) == Rat(1, 140));
    // binomial expansion of the defining integral:
    //   integral_{-1}^{1} (1 - x^2)^(k-1) dx = c_k 2^(2k-1) / 2
    for (int k = 1; k <= 8; ++k) {
        Rat direct(0);
        for (int j = 0; j < k; ++j) {
            Rat term = Rat(binomial(k - 1, j)) * Rat(2, 2 * j + 1);
            direct += (j % 2) ? -term : term;
        }
        CHECK(direct == c_k(k) * Rat(int_pow(Int(2), 2 * k - 1)));
    }
    CHECK_THROWS_AS(c_k(0), std::domain_error);

    const mpfr_prec_t prec = 192;
    Real lhs = form_integral(2, QuadraticForm{-1, 0, 3}, prec);
    Real rhs = Real(4L, prec) * Real(3L, prec).sqrt();
    CHECK((lhs - rhs).abs_less_pow2(-160));
    Real len = form_integral(1, QuadraticForm{-2, 1, 3}, prec);  // disc 25
    CHECK((len - Real(Rat(5, 2), prec)).abs_less_pow2(-160));
    CHECK_THROWS_AS(form_integral(2, QuadraticForm{1, 0, -3}, prec),
                    std::domain_error);
}

TEST_CASE("average values, closed chain") {
    struct Inst {
        DiscriminantPair pair;
        Rat exact;
    };
    const std::vector<Inst> table = {
        {{2, 5, 1}, Rat(2)},
        {{3, -4, -3}, Rat(-14)},
        {{3, -3, -3}, Rat(-56, 9)},
        {{2, 45, 5}, Rat(1488, 5)},
    };
    for (const auto& inst : table) {
        auto res = average_F(inst.pair, AverageMethod::chain, 256);
        CHECK(res.exact == inst.exact);
        CHECK(res.method == AverageMethod::chain);
        CHECK(res.terms == 0);
        CHECK(res.converged);
        CHECK(res.abs_error.abs_less_pow2(-40));
        CHECK((res.value - Real(inst.exact, 256)).abs_less_pow2(-40));
    }
    CHECK_THROWS_AS(average_F(DiscriminantPair{1, -4, -3}, AverageMethod::chain, 128),
                    std::domain_error);
}

TEST_CASE("average values, series truncation") {
    auto res = average_F(DiscriminantPair{2, 5, 1}, AverageMethod::dirichlet, 128, 1e-2);
    CHECK(res.method == AverageMethod::dirichlet);
    CHECK(res.terms >= 1024);
    CHECK(res.converged);
    CHECK(res.exact == 2);
    CHECK((res.value - Real(2L, 128)).abs() < Real(Rat(1, 100), 128));
}

TEST_CASE("q-expansion consistency") {
    auto qe = qexpansion(2, Int(5), 8, 192);
    REQUIRE(qe.rhs.size() == 9);
    CHECK(qe.lhs.size() == 5);  // exponents 0, 1, 4, 5, 8
    CHECK(qe.lhs.count(2) == 0);
    CHECK(qe.lhs.count(3) == 0);

    CHECK(qe.lhs.at(0).exact);
    CHECK(qe.lhs.at(0).exact_value == Rat(1, 240));
    CHECK(qe.rhs.at(0).exact_value == Rat(1, 240));
    CHECK(qe.rhs.at(4).exact_value == Rat(-7, 24));
    CHECK(qe.rhs.at(2).exact_value == Rat(0));
    CHECK(qe.rhs.at(5).exact_value == Rat(-1, 5));

    auto near = [](const QExpCoeff& c, const Rat& want) {
        REQUIRE(!c.exact);
        return (c.numeric_value - Real(want, 192)).abs_less_pow2(-30);
    };
    CHECK(near(qe.lhs.at(1), Rat(-1, 24)));
    CHECK(near(qe.lhs.at(4), Rat(-7, 24)));
    CHECK(near(qe.lhs.at(5), Rat(-1, 5)));
    CHECK(near(qe.lhs.at(8), Rat(-1, 2)));

    CHECK_THROWS_AS(qexpansion(1, Int(-3), 4, 128), std::domain_error);
    CHECK_THROWS_AS(qexpansion(2, Int(-3), 4, 128), std::domain_error);
    CHECK_THROWS_AS(qexpansion(2, Int(9), 4, 128), std::domain_error);
}
