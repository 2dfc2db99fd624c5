#include "qsum/verify.hpp"

#include <algorithm>
#include <array>
#include <chrono>
#include <numeric>
#include <random>
#include <set>
#include <stdexcept>

#include <json.hpp>

namespace qsum {

namespace {

using Cases = std::vector<CaseRecord>;
using Params = std::map<std::string, std::string>;

std::string real_str(const Real& v) { return v.to_string(30); }

Params pair_params(const DiscriminantPair& p) {
    return {{"k", std::to_string(p.k)}, {"D", p.D.get_str()}, {"d", p.d.get_str()}};
}

void add_exact(Cases& cases, Params params, const std::string& lhs,
               const std::string& rhs) {
    bool ok = lhs == rhs;
    cases.push_back({std::move(params), lhs, rhs, std::nullopt, true, ok});
}

void add_exact_rat(Cases& cases, Params params, const Rat& lhs, const Rat& rhs) {
    add_exact(cases, std::move(params), rat_to_string(lhs), rat_to_string(rhs));
}

void add_count(Cases& cases, Params params, long violations) {
    add_exact(cases, std::move(params), std::to_string(violations), "0");
}

void add_numeric(Cases& cases, Params params, const Real& lhs, const Real& rhs,
                 const Real& tol) {
    Real err = (lhs - rhs).abs();
    cases.push_back({std::move(params), real_str(lhs), real_str(rhs),
                     real_str(err), false, err <= tol});
}

// Deterministic integer in [lo, hi] from the raw generator stream (avoids
// distribution objects, whose output is implementation-defined).
long pick(std::mt19937_64& g, long lo, long hi) {
    return lo + static_cast<long>(g() % static_cast<std::uint64_t>(hi - lo + 1));
}

Rat seeded_x(std::mt19937_64& g, long qmax, long span) {
    long q = pick(g, 1, qmax);
    long u = pick(g, -span * q, span * q);
    Rat x(u, q);
    x.canonicalize();
    return x;
}

Mat2 mat_mul(const Mat2& m, const Mat2& n) {
    return {m.a * n.a + m.b * n.c, m.a * n.b + m.b * n.d,
            m.c * n.a + m.d * n.c, m.c * n.b + m.d * n.d};
}

// Word in the two triangular generators; entries stay word-sized.
Mat2 seeded_sl2(std::mt19937_64& g) {
    Mat2 m{1, 0, 0, 1};
    int len = static_cast<int>(pick(g, 1, 6));
    for (int i = 0; i < len; ++i) {
        Int e(pick(g, -3, 3));
        Mat2 gen = (g() & 1) ? Mat2{1, e, 0, 1} : Mat2{1, 0, e, 1};
        m = mat_mul(m, gen);
    }
    return m;
}

// ---------------------------------------------------------------------------
// prop1: n -> (-1)^k N(n) is multiplicative on coprime arguments.
void suite_prop1(const SuiteOptions& opt, Cases& cases) {
    const long NMAX = 120;
    for (const auto& pair : opt.instances) {
        pair.validate();
        GenusCharacter chi(pair.d);
        int sign = pair.k % 2 ? -1 : 1;
        std::vector<Int> M(NMAX + 1);
        for (long n = 1; n <= NMAX; ++n)
            M[n] = sign * weighted_count(pair, Int(n), &chi);

        Params base = pair_params(pair);
        {
            Params p = base;
            p["check"] = "normalization at n=1";
            add_exact(cases, std::move(p), M[1].get_str(), "1");
        }
        const std::array<std::pair<long, long>, 4> shown = {
            {{2, 3}, {3, 5}, {4, 7}, {5, 8}}};
        for (auto [n1, n2] : shown) {
            Params p = base;
            p["check"] = "multiplicative";
            p["n1"] = std::to_string(n1);
            p["n2"] = std::to_string(n2);
            Int prod = M[n1] * M[n2];
            add_exact(cases, std::move(p), M[n1 * n2].get_str(), prod.get_str());
        }
        long violations = 0, checked = 0;
        for (long n1 = 1; n1 <= NMAX; ++n1)
            for (long n2 = n1; n1 * n2 <= NMAX; ++n2) {
                if (std::gcd(n1, n2) != 1) continue;
                ++checked;
                if (M[n1 * n2] != M[n1] * M[n2]) ++violations;
            }
        Params p = base;
        p["check"] = "multiplicative, all coprime pairs";
        p["max_product"] = std::to_string(NMAX);
        p["checked"] = std::to_string(checked);
        add_count(cases, std::move(p), violations);
    }
}

// ---------------------------------------------------------------------------
// prop2: local factor of sum N(p^n) X^n against its closed rational form,
// coefficientwise to the stated order.
void suite_prop2(const SuiteOptions& opt, Cases& cases) {
    const int order = 10;
    struct EulerInstance {
        DiscriminantPair pair;
        long p;
    };
    std::vector<EulerInstance> plan;
    for (const auto& pair : opt.instances)
        for (long p : {2L, 3L, 5L, 7L, 11L}) plan.push_back({pair, p});
    // Extra coverage of every divisibility profile of p against d, d0, f.
    const std::vector<EulerInstance> extra = {
        {{3, -36, -3}, 3},   // p | f, p | d
        {{3, -36, -3}, 2},   // p = 2 | d0
        {{3, -324, -3}, 3},  // p^2 || f with p | d
        {{2, 45, 5}, 3},    // p | f only
        {{2, 45, 5}, 5},    // p | d0, p | d
        {{2, 405, 5}, 3},   // p^2 || f
        {{3, -16, -3}, 2},  // p = 2 | f and | d0
        {{3, -27, -3}, 3},  // p | f, d0 and d (square Delta)
        {{2, 8, 1}, 2},     // p = 2 | d0, d = 1
        {{4, 12, 1}, 2},    // p = 2 | d0
        {{4, 12, 1}, 3},    // p | d0 odd
        {{5, -7, -4}, 2},   // p = 2 | d, p not | D
        {{3, -3, -4}, 2},   // p = 2 | d
        {{3, -3, -4}, 3},   // p | D, p not | d
        {{3, -4, -3}, 2},   // p = 2 | D
        {{3, -4, -3}, 3},   // p | d
        {{2, 5, 1}, 5},     // p | d0, trivial d
    };
    plan.insert(plan.end(), extra.begin(), extra.end());

    for (const auto& inst : plan) {
        auto both = euler_factor_both(inst.pair, Int(inst.p), order);
        Params p = pair_params(inst.pair);
        p["p"] = std::to_string(inst.p);
        p["order"] = std::to_string(order);
        auto prof = local_profile(inst.pair, Int(inst.p));
        p["profile"] = std::string(prof.p_div_f ? "f" : "-") +
                       (prof.p_div_d ? "d" : "-") + (prof.p_div_d0 ? "0" : "-") +
                       (prof.p_is_two ? "2" : "-");
        add_exact(cases, std::move(p), both.lhs.str(), both.rhs.str());
    }

    // For p odd with p | f, p | d, p coprime to d0, the power counts close up:
    //   N(p^(2s-1)) = 0 and N(p^(2s)) = (-1)^k (p^s - p^(s-1)) for s <= e,
    //   N(p^(2e+1)) = (-1)^k (d0|p) p^e, and 0 beyond.
    for (const auto& pair : {DiscriminantPair{3, -36, -3},
                             DiscriminantPair{3, -324, -3}}) {
        const Int p3(3);
        GenusCharacter chi(pair.d);
        auto fd = factor_discriminant(pair.D);
        unsigned e = factorize(fd.f).exponent_of(p3);
        int sign = pair.k % 2 ? -1 : 1;
        int alpha = kronecker(fd.d0, p3);
        for (unsigned n = 1; n <= 2 * e + 2; ++n) {
            Int expect;
            if (n == 2 * e + 1) expect = sign * alpha * int_pow(p3, e);
            else if (n > 2 * e || n % 2) expect = 0;
            else expect = sign * (int_pow(p3, n / 2) - int_pow(p3, n / 2 - 1));
            Params p = pair_params(pair);
            p["check"] = "power count at p^n";
            p["p"] = "3";
            p["n"] = std::to_string(n);
            add_exact(cases, std::move(p),
                      weighted_count(pair, int_pow(p3, n), &chi).get_str(),
                      expect.get_str());
        }
    }
}

// ---------------------------------------------------------------------------
// theorem1: average of F over a period against H(k,|D|) H(k,|d|) / (2 zeta(1-2k)).
void suite_theorem1(const SuiteOptions& opt, Cases& cases) {
    double tol_chain = opt.tolerance > 0 ? opt.tolerance : 1e-12;
    const mpfr_prec_t wp = opt.precision + 32;
    for (const auto& pair : opt.instances) {
        auto res = average_F(pair, AverageMethod::chain, opt.precision);
        Params p = pair_params(pair);
        p["method"] = "chain";
        add_numeric(cases, std::move(p), res.value, Real(res.exact, wp),
                    Real(Rat(tol_chain), wp));

        if ((pair.k == 2 || pair.k == 3) && pair.delta() <= 40) {
            double tol_dir = opt.tolerance > 0 ? opt.tolerance : 1e-2;
            auto dir = average_F(pair, AverageMethod::dirichlet, opt.precision,
                                 tol_dir);
            Params q = pair_params(pair);
            q["method"] = "dirichlet";
            q["terms"] = std::to_string(dir.terms);
            q["converged"] = dir.converged ? "true" : "false";
            add_numeric(cases, std::move(q), dir.value, Real(dir.exact, wp),
                        Real(Rat(tol_dir), wp));
        }
    }
}

// ---------------------------------------------------------------------------
// theorem2: F vanishes identically at k = 1; plus the supporting structure
// (periodicity for all k, value 0 at x = 0 for k = 1, and the vanishing of
// the plain character sum over forms with a < 0 < c).
void suite_theorem2(const SuiteOptions& opt, Cases& cases) {
    const std::vector<std::pair<long, long>> k1_pairs = {
        {-3, -4}, {-4, -3}, {-3, -8}, {-8, -3}, {-4, -7},
        {-7, -4}, {-3, -20}, {-20, -3}, {-8, -7}, {-11, -4},
        {-4, -11}, {-15, -4}, {-12, -7}, {-16, -3}, {-27, -4},
    };
    const int per_pair = 14;
    std::uint64_t stream = opt.seed;
    for (auto [D, d] : k1_pairs) {
        DiscriminantPair pair{1, Int(D), Int(d)};
        pair.validate();
        std::mt19937_64 g(++stream * 0x9e3779b97f4a7c15ULL);
        Params base = pair_params(pair);
        long violations = 0;
        for (int i = 0; i < per_pair; ++i) {
            Rat x = seeded_x(g, 40, 5);
            Rat v = eval_F(pair, x);
            if (v != 0) ++violations;
            if (i < 2) {
                Params p = base;
                p["check"] = "vanishing";
                p["x"] = rat_to_string(x);
                add_exact_rat(cases, std::move(p), v, Rat(0));
            }
        }
        {
            Params p = base;
            p["check"] = "vanishing, seeded sweep";
            p["points"] = std::to_string(per_pair);
            add_count(cases, std::move(p), violations);
        }
        {
            Params p = base;
            p["check"] = "value at x=0";
            add_exact_rat(cases, std::move(p), eval_F(pair, Rat(0)), Rat(0));
        }
        {
            // Independent direct enumeration of the finite character sums
            // over forms with a < 0 < c and with c < 0 < a; both vanish by
            // the pairing [a,b,c] <-> [-c,b,-a].
            GenusCharacter chi(pair.d);
            Int delta = pair.delta();
            Int neg_sum = 0, pos_sum = 0;
            for (Int a = -1; -4 * a <= delta; --a) {
                Int cmax = delta / (4 * -a);
                for (Int c = 1; c <= cmax; ++c) {
                    Int n = delta + 4 * a * c;
                    Int s = isqrt(n);
                    if (s * s != n) continue;
                    neg_sum += chi(QuadraticForm{a, s, c});
                    pos_sum += chi(QuadraticForm{c, s, a});
                    if (s != 0) {
                        neg_sum += chi(QuadraticForm{a, -s, c});
                        pos_sum += chi(QuadraticForm{c, -s, a});
                    }
                }
            }
            Params p = base;
            p["check"] = "sum of chi over a<0<c";
            add_exact(cases, std::move(p), neg_sum.get_str(), "0");
            Params q = base;
            q["check"] = "sum of chi over c<0<a";
            add_exact(cases, std::move(q), pos_sum.get_str(), "0");
        }
        for (int i = 0; i < 2; ++i) {
            Rat x = seeded_x(g, 20, 3);
            Params p = base;
            p["check"] = "periodicity";
            p["x"] = rat_to_string(x);
            add_exact_rat(cases, std::move(p), eval_F(pair, x + 1),
                          eval_F(pair, x));
        }
        for (int i = 0; i < 2; ++i) {
            Rat x = seeded_x(g, 20, 3);
            if (x == 0) x = Rat(1, 3);
            Params p = base;
            p["check"] = "inversion x -> 1/x";
            p["x"] = rat_to_string(x);
            add_exact_rat(cases, std::move(p), eval_F(pair, 1 / x),
                          eval_F(pair, x));
        }
    }
    // Periodicity holds at every weight: translation permutes the forms and
    // fixes chi.
    for (const auto& pair : opt.instances) {
        std::mt19937_64 g(++stream * 0x9e3779b97f4a7c15ULL);
        for (int i = 0; i < 2; ++i) {
            Rat x = seeded_x(g, 12, 3);
            Params p = pair_params(pair);
            p["check"] = "periodicity";
            p["x"] = rat_to_string(x);
            add_exact_rat(cases, std::move(p), eval_F(pair, x + 1),
                          eval_F(pair, x));
        }
    }
}

// ---------------------------------------------------------------------------
// genus: well-definedness of chi over a window of forms, SL2 invariance,
// the sign law chi(-Q) = sgn(d) chi(Q), and the prime-power evaluation
// chi([-p^n, b, c]) = (d | -p^n) for p not dividing d.
void suite_genus(const SuiteOptions& opt, Cases& cases) {
    struct Sweep {
        long delta;
        std::vector<long> ds;
    };
    const std::vector<Sweep> sweeps = {
        {12, {1, -3, -4, 12}}, {20, {1, 5}}, {108, {1, -3, -4, 12}}};
    const long WINDOW = 50;
    std::uint64_t stream = opt.seed;

    for (const auto& sw : sweeps) {
        Int delta(sw.delta);
        std::vector<QuadraticForm> forms;
        for (long a = -WINDOW; a <= WINDOW; ++a) {
            if (a == 0) continue;
            for (long c = -WINDOW; c <= WINDOW; ++c) {
                if (c == 0) continue;
                Int n = delta + 4 * Int(a) * Int(c);
                if (n < 0) continue;
                Int s = isqrt(n);
                if (s * s != n) continue;
                forms.push_back({Int(a), s, Int(c)});
                if (s != 0) forms.push_back({Int(a), -s, Int(c)});
            }
        }
        for (long dl : sw.ds) {
            Int d(dl);
            GenusCharacter chi(d);
            int sd = d < 0 ? -1 : 1;
            long ill = 0, content_bad = 0, sign_bad = 0, sl2_bad = 0,
                 sl2_checked = 0;
            std::mt19937_64 g(++stream * 0x9e3779b97f4a7c15ULL);
            for (const auto& f : forms) {
                int v;
                try {
                    v = chi(f);
                } catch (const std::logic_error&) {
                    ++ill;
                    continue;
                }
                Int content = gcd(gcd(f.a, f.b), gcd(f.c, d));
                if ((v == 0) != (content > 1)) ++content_bad;
                if (chi(f.negated()) != sd * v) ++sign_bad;
                for (int t = 0; t < 100; ++t) {
                    ++sl2_checked;
                    if (chi(sl2_act(f, seeded_sl2(g))) != v) ++sl2_bad;
                }
            }
            Params base{{"delta", std::to_string(sw.delta)},
                        {"d", std::to_string(dl)},
                        {"window", std::to_string(WINDOW)}};
            {
                Params p = base;
                p["check"] = "well-defined on all unit residues";
                p["forms"] = std::to_string(forms.size());
                add_count(cases, std::move(p), ill);
            }
            {
                Params p = base;
                p["check"] = "chi = 0 iff gcd(a,b,c,d) > 1";
                add_count(cases, std::move(p), content_bad);
            }
            {
                Params p = base;
                p["check"] = "sign law chi(-Q) = sgn(d) chi(Q)";
                add_count(cases, std::move(p), sign_bad);
            }
            {
                Params p = base;
                p["check"] = "SL2 invariance";
                p["images"] = std::to_string(sl2_checked);
                add_count(cases, std::move(p), sl2_bad);
            }
            {
                // one concrete value, pinned
                const QuadraticForm& f = forms.front();
                Params p = base;
                p["check"] = "negation sample";
                p["form"] = f.str();
                add_exact(cases, std::move(p),
                          std::to_string(chi(f.negated())),
                          std::to_string(sd * chi(f)));
            }
        }
    }

    // chi at forms with leading coefficient -p^n, p coprime to d.
    struct Pp {
        DiscriminantPair pair;
        long p;
    };
    const std::vector<Pp> pps = {
        {{3, -4, -3}, 5}, {{3, -4, -3}, 7}, {{2, 45, 5}, 2}, {{2, 45, 5}, 7}};
    for (const auto& t : pps) {
        GenusCharacter chi(t.pair.d);
        Int delta = t.pair.delta();
        for (unsigned n = 1; n <= 3; ++n) {
            Int pn = int_pow(Int(t.p), n);
            long bad = 0, seen = 0;
            int expect = kronecker(t.pair.d, -pn);
            for (const Int& b : roots_mod_4n(delta, pn)) {
                QuadraticForm f{-pn, b, (delta - b * b) / (4 * pn)};
                ++seen;
                if (chi(f) != expect) ++bad;
            }
            Params p = pair_params(t.pair);
            p["check"] = "leading coefficient -p^n gives (d|-p^n)";
            p["p"] = std::to_string(t.p);
            p["n"] = std::to_string(n);
            p["forms"] = std::to_string(seen);
            add_count(cases, std::move(p), bad);
        }
    }
}

// ---------------------------------------------------------------------------
// classes: reduction cycles partition the reduced forms, chi is a class
// invariant, pinned class counts, and the classwise decomposition
//   sum over classes A of chi(A) F_A = F,  and with symmetrized F_A: 2F.
void suite_classes(const SuiteOptions& opt, Cases& cases) {
    const std::vector<DiscriminantPair> instances = {
        {3, -4, -3}, {2, 20, 1}, {2, 4, 5}, {3, -36, -3}, {2, 108, 1}};
    const std::map<long, std::size_t> pinned_counts = {{12, 2}, {20, 2}, {108, 4}};
    std::uint64_t stream = opt.seed ^ 0xc1a55e5ULL;

    for (const auto& pair : instances) {
        pair.validate();
        Int delta = pair.delta();
        auto classes = enumerate_classes(delta);
        Params base = pair_params(pair);
        {
            Params p = base;
            p["check"] = "class count";
            add_exact(cases, std::move(p), std::to_string(classes.size()),
                      std::to_string(pinned_counts.at(delta.get_si())));
        }
        // cycle closure + disjointness
        long closure_bad = 0;
        std::set<QuadraticForm> seen;
        std::size_t total = 0;
        for (const auto& cls : classes) {
            total += cls.cycle.size();
            for (std::size_t i = 0; i < cls.cycle.size(); ++i) {
                seen.insert(cls.cycle[i]);
                if (!(rho(cls.cycle[i]) ==
                      cls.cycle[(i + 1) % cls.cycle.size()]))
                    ++closure_bad;
            }
        }
        {
            Params p = base;
            p["check"] = "rho cycles closed";
            add_count(cases, std::move(p), closure_bad);
        }
        {
            Params p = base;
            p["check"] = "cycles disjoint";
            add_exact(cases, std::move(p), std::to_string(seen.size()),
                      std::to_string(total));
        }
        // chi constant on each class, including off-cycle SL2 images
        GenusCharacter chi(pair.d);
        std::mt19937_64 g(++stream * 0x9e3779b97f4a7c15ULL);
        long const_bad = 0;
        std::vector<int> chi_of(classes.size());
        for (std::size_t ci = 0; ci < classes.size(); ++ci) {
            const auto& cls = classes[ci];
            int v = chi(cls.cycle.front());
            chi_of[ci] = v;
            for (const auto& f : cls.cycle)
                if (chi(f) != v) ++const_bad;
            for (int t = 0; t < 20; ++t) {
                QuadraticForm img = sl2_act(cls.cycle.front(), seeded_sl2(g));
                if (chi(img) != v) ++const_bad;
                if (class_of(img, classes) != ci) ++const_bad;
            }
        }
        {
            Params p = base;
            p["check"] = "chi constant on classes";
            add_count(cases, std::move(p), const_bad);
        }
        // negation pairing: index of the negated class
        std::vector<std::size_t> neg_index(classes.size());
        for (std::size_t ci = 0; ci < classes.size(); ++ci)
            neg_index[ci] =
                class_of(classes[ci].cycle.front().negated(), classes);
        // decomposition sweeps
        const int points = 20;
        long bad_plain = 0, bad_sym = 0;
        for (int i = 0; i < points; ++i) {
            Rat x = seeded_x(g, delta > 40 ? 12 : 20, 3);
            Rat full = eval_F(pair, x);
            std::vector<Rat> part(classes.size());
            Rat acc_plain(0), acc_sym(0);
            for (std::size_t ci = 0; ci < classes.size(); ++ci) {
                part[ci] = eval_F_class(pair.k, classes[ci], x);
                acc_plain += chi_of[ci] * part[ci];
            }
            int sign = pair.k % 2 ? -1 : 1;
            for (std::size_t ci = 0; ci < classes.size(); ++ci)
                acc_sym += chi_of[ci] * (part[ci] + sign * part[neg_index[ci]]);
            if (acc_plain != full) ++bad_plain;
            if (acc_sym != 2 * full) ++bad_sym;
            if (i < 2) {
                Params p = base;
                p["check"] = "classwise decomposition";
                p["x"] = rat_to_string(x);
                add_exact_rat(cases, std::move(p), acc_plain, full);
                Params q = base;
                q["check"] = "symmetrized decomposition";
                q["x"] = rat_to_string(x);
                add_exact_rat(cases, std::move(q), acc_sym, 2 * full);
            }
        }
        {
            Params p = base;
            p["check"] = "classwise decomposition, seeded sweep";
            p["points"] = std::to_string(points);
            add_count(cases, std::move(p), bad_plain);
        }
        {
            Params p = base;
            p["check"] = "symmetrized decomposition, seeded sweep";
            p["points"] = std::to_string(points);
            add_count(cases, std::move(p), bad_sym);
        }
        // exercise eval_F_sym itself against the negation-index construction
        {
            Rat x = seeded_x(g, 8, 2);
            int sign = pair.k % 2 ? -1 : 1;
            Rat via_index = eval_F_class(pair.k, classes[0], x) +
                            sign * eval_F_class(pair.k, classes[neg_index[0]], x);
            Params p = base;
            p["check"] = "symmetrized class sum";
            p["x"] = rat_to_string(x);
            add_exact_rat(cases, std::move(p), eval_F_sym(pair.k, classes[0], x),
                          via_index);
        }
    }
}

// ---------------------------------------------------------------------------
// arith: kronecker against an independent Euler-criterion oracle, Bernoulli
// anchors, special L-values, and numeric zeta/L anchors against mpfr's own
// constants.
namespace oracle {

int legendre(const Int& d, const Int& p) {  // p an odd prime
    Int dm = mod_nonneg(d, p);
    if (dm == 0) return 0;
    Int e = (p - 1) / 2, r;
    mpz_powm(r.get_mpz_t(), dm.get_mpz_t(), e.get_mpz_t(), p.get_mpz_t());
    return r == 1 ? 1 : -1;
}

int kronecker(Int d, Int n) {
    if (n == 0) return (d == 1 || d == -1) ? 1 : 0;
    int s = 1;
    if (n < 0) {
        if (d < 0) s = -s;
        n = -n;
    }
    for (const auto& pp : factorize(n).factors) {
        int comp;
        if (pp.p == 2) {
            if (d % 2 == 0) comp = 0;
            else {
                Int r = mod_nonneg(d, 8);
                comp = (r == 1 || r == 7) ? 1 : -1;
            }
        } else {
            comp = legendre(d, pp.p);
        }
        if (comp == 0) return 0;
        if (comp == -1 && pp.e % 2) s = -s;
    }
    return s;
}

}  // namespace oracle

void suite_arith(const SuiteOptions& opt, Cases& cases) {
    // kronecker sweep
    {
        long bad = 0, checked = 0;
        for (long d = -60; d <= 60; ++d)
            for (long n = -30; n <= 99; ++n) {
                ++checked;
                if (kronecker(Int(d), Int(n)) != oracle::kronecker(Int(d), Int(n)))
                    ++bad;
            }
        Params p{{"check", "kronecker vs Euler-criterion oracle"},
                 {"d_range", "[-60,60]"},
                 {"n_range", "[-30,99]"},
                 {"checked", std::to_string(checked)}};
        add_count(cases, std::move(p), bad);
    }
    const std::vector<std::pair<long, std::pair<long, long>>> edge = {
        {1, {0, 1}}, {-1, {0, 1}}, {5, {0, 0}}, {-4, {-1, -1}}, {5, {-1, 1}}};
    for (const auto& [d, nv] : edge) {
        Params p{{"check", "kronecker pinned edge"},
                 {"d", std::to_string(d)},
                 {"n", std::to_string(nv.first)}};
        add_exact(cases, std::move(p),
                  std::to_string(kronecker(Int(d), Int(nv.first))),
                  std::to_string(nv.second));
    }
    // Bernoulli anchors
    const std::vector<std::pair<int, Rat>> bern = {
        {0, Rat(1)},       {1, Rat(-1, 2)},  {2, Rat(1, 6)},
        {3, Rat(0)},       {4, Rat(-1, 30)}, {6, Rat(1, 42)},
        {8, Rat(-1, 30)},  {10, Rat(5, 66)}, {12, Rat(-691, 2730)}};
    for (const auto& [n, v] : bern) {
        Params p{{"check", "bernoulli"}, {"n", std::to_string(n)}};
        add_exact_rat(cases, std::move(p), bernoulli(n), v);
    }
    // special values of L at nonpositive integers
    struct LCase {
        int k;
        long d0;
        Rat v;
    };
    const std::vector<LCase> lvals = {
        {2, 1, Rat(-1, 12)}, {4, 1, Rat(1, 120)},  {6, 1, Rat(-1, 252)},
        {8, 1, Rat(1, 240)}, {1, -4, Rat(1, 2)},   {1, -3, Rat(1, 3)},
        {3, -4, Rat(-1, 2)}, {2, 5, Rat(-2, 5)},   {3, -3, Rat(-2, 9)}};
    for (const auto& lc : lvals) {
        Params p{{"check", "L at 1-k"},
                 {"k", std::to_string(lc.k)},
                 {"d0", std::to_string(lc.d0)}};
        add_exact_rat(cases, std::move(p), l_negative(lc.k, Int(lc.d0)), lc.v);
    }
    // numeric anchors
    const mpfr_prec_t prec = opt.precision;
    Real tol(prec);
    mpfr_set_ui_2exp(tol.raw(), 1, -(prec - 16), MPFR_RNDN);
    auto zeta_ref = [&](unsigned long s) {
        Real r(prec);
        mpfr_zeta_ui(r.raw(), s, MPFR_RNDN);
        return r;
    };
    Real pi = Real::pi(prec);
    {
        Params p{{"check", "hurwitz zeta at (2,1)"}};
        add_numeric(cases, std::move(p), hurwitz_zeta(2, Rat(1), prec),
                    pi * pi / Real(6L, prec), tol);
    }
    {
        Params p{{"check", "hurwitz zeta at (2,1/2)"}};
        add_numeric(cases, std::move(p), hurwitz_zeta(2, Rat(1, 2), prec),
                    pi * pi / Real(2L, prec), tol);
    }
    for (unsigned long s : {3UL, 5UL}) {
        Params p{{"check", "hurwitz zeta vs mpfr zeta"},
                 {"s", std::to_string(s)}};
        add_numeric(cases, std::move(p), hurwitz_zeta(s, Rat(1), prec),
                    zeta_ref(s), tol);
    }
    {
        Params p{{"check", "L series vs mpfr zeta"}, {"s", "4"}};
        add_numeric(cases, std::move(p), l_numeric(4, Int(1), prec), zeta_ref(4),
                    tol);
    }
    {
        Real catalan(prec);
        mpfr_const_catalan(catalan.raw(), MPFR_RNDN);
        Params p{{"check", "L(2, chi_-4) vs Catalan constant"}};
        add_numeric(cases, std::move(p), l_numeric(2, Int(-4), prec), catalan,
                    tol);
    }
}

}  // namespace

std::string VerificationReport::to_json() const {
    nlohmann::json j;
    j["suite"] = suite;
    j["seed"] = seed;
    j["cases"] = nlohmann::json::array();
    for (const auto& c : cases) {
        nlohmann::json jc;
        jc["params"] = nlohmann::json::object();
        for (const auto& [k, v] : c.params) jc["params"][k] = v;
        jc["lhs"] = c.lhs;
        jc["rhs"] = c.rhs;
        jc["abs_error"] =
            c.abs_error ? nlohmann::json(*c.abs_error) : nlohmann::json(nullptr);
        jc["exact"] = c.exact;
        jc["pass"] = c.pass;
        j["cases"].push_back(std::move(jc));
    }
    j["pass"] = pass;
    j["duration_ms"] = duration_ms;
    return j.dump(2);
}

std::vector<DiscriminantPair> SuiteOptions::default_instances() {
    return {{2, 5, 1},    {2, 8, 1},    {2, 45, 5},  {3, -4, -3},
            {3, -36, -3}, {3, -3, -4},  {4, 12, 1},  {5, -7, -4}};
}

std::vector<std::string> suite_names() {
    return {"arith", "classes", "genus", "prop1", "prop2", "theorem1", "theorem2"};
}

VerificationReport run_suite(const std::string& name, const SuiteOptions& opt) {
    auto t0 = std::chrono::steady_clock::now();
    VerificationReport rep{name, opt.seed, {}, true, 0};
    if (name == "prop1") suite_prop1(opt, rep.cases);
    else if (name == "prop2") suite_prop2(opt, rep.cases);
    else if (name == "theorem1") suite_theorem1(opt, rep.cases);
    else if (name == "theorem2") suite_theorem2(opt, rep.cases);
    else if (name == "genus") suite_genus(opt, rep.cases);
    else if (name == "classes") suite_classes(opt, rep.cases);
    else if (name == "arith") suite_arith(opt, rep.cases);
    else throw std::invalid_argument("run_suite: unknown suite " + name);

    auto key = [](const CaseRecord& c) {
        std::string s;
        for (const auto& [k, v] : c.params) {
            s += k;
            s += '=';
            s += v;
            s += ';';
        }
        return s;
    };
    std::stable_sort(rep.cases.begin(), rep.cases.end(),
                     [&](const CaseRecord& a, const CaseRecord& b) {
                         return key(a) < key(b);
                     });
    rep.pass = std::all_of(rep.cases.begin(), rep.cases.end(),
                           [](const CaseRecord& c) { return c.pass; });
    rep.duration_ms = static_cast<long>(
        std::chrono::duration_cast<std::chrono::milliseconds>(
            std::chrono::steady_clock::now() - t0)
            .count());
    return rep;
}

}  // namespace qsum
