// Command-line front end: exact evaluation of the character-weighted form
// sums, their period averages, representation-count sequences, H(k, N)
// tables, q-expansion coefficients, class decompositions, plot data, and the
// verification suites.
//
// Exit codes: 0 success, 1 verification failure, 2 usage or domain error.

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <ostream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "qsum/verify.hpp"

using nlohmann::json;
using namespace qsum;

namespace {

long env_precision() {
    const char* env = std::getenv("QSUM_PRECISION_BITS");
    if (!env || !*env) return 256;
    char* end = nullptr;
    long v = std::strtol(env, &end, 10);
    if (*end != '\0')
        throw std::domain_error("QSUM_PRECISION_BITS must be an integer");
    return v;
}

mpfr_prec_t resolve_precision(long flag) {
    long bits = flag > 0 ? flag : env_precision();
    if (bits < 64)
        throw std::domain_error("precision must be at least 64 bits");
    return static_cast<mpfr_prec_t>(bits);
}

std::string qexp_coeff_str(const QExpCoeff& c) {
    return c.exact ? rat_to_string(c.exact_value) : c.numeric_value.to_string(30);
}

std::ostream& open_out(std::ofstream& file, const std::string& path) {
    if (path.empty() || path == "-") return std::cout;
    file.open(path);
    if (!file) throw std::domain_error("cannot open output file " + path);
    return file;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{
        "Genus-character sums over indefinite binary quadratic forms:\n"
        "exact values, period averages, and Eisenstein-coefficient identities"};
    app.require_subcommand(1);

    long prec_flag = 0;
    app.add_option("--precision-bits", prec_flag,
                   "working precision in bits, min 64 "
                   "(default: $QSUM_PRECISION_BITS, else 256)");
    std::string format = "text";
    app.add_option("--format", format, "output format")
        ->check(CLI::IsMember({"text", "json"}));

    int exit_code = 0;

    // ---- eval ----
    auto* c_eval = app.add_subcommand("eval", "evaluate F_{k,D,d} at rational points");
    struct {
        int k = 0;
        std::string D, d;
        std::vector<std::string> xs;
    } ev;
    c_eval->add_option("-k,--weight", ev.k, "weight k >= 1")->required();
    c_eval->add_option("-D,--disc", ev.D, "discriminant D (0 or 1 mod 4)")->required();
    c_eval->add_option("-d,--character", ev.d, "fundamental discriminant d")->required();
    c_eval->add_option("x", ev.xs, "rational points u/q")->required()->expected(-1);
    c_eval->callback([&] {
        DiscriminantPair pair{ev.k, Int(ev.D), Int(ev.d)};
        pair.validate();
        json jv = json::array();
        for (const auto& xs : ev.xs) {
            Rat x = rat_from_string(xs);
            Rat v = eval_F(pair, x);
            if (format == "text")
                std::cout << "F(" << rat_to_string(x) << ") = " << rat_to_string(v)
                          << "\n";
            else
                jv.push_back({{"x", rat_to_string(x)}, {"F", rat_to_string(v)}});
        }
        if (format == "json") {
            json j{{"k", ev.k}, {"D", ev.D}, {"d", ev.d}, {"values", jv}};
            std::cout << j.dump(2) << "\n";
        }
    });

    // ---- average ----
    auto* c_avg = app.add_subcommand("average", "average of F over one period");
    struct {
        int k = 0;
        std::string D, d;
        std::string method = "chain";
        double tolerance = 1e-2;
    } av;
    c_avg->add_option("-k,--weight", av.k, "weight k >= 2")->required();
    c_avg->add_option("-D,--disc", av.D, "discriminant D")->required();
    c_avg->add_option("-d,--character", av.d, "fundamental discriminant d")->required();
    c_avg->add_option("--method", av.method, "evaluation method")
        ->check(CLI::IsMember({"chain", "dirichlet"}));
    c_avg->add_option("--tolerance", av.tolerance,
                      "dirichlet truncation target (default 1e-2)");
    c_avg->callback([&] {
        DiscriminantPair pair{av.k, Int(av.D), Int(av.d)};
        auto method = av.method == "chain" ? AverageMethod::chain
                                           : AverageMethod::dirichlet;
        auto res = average_F(pair, method, resolve_precision(prec_flag),
                             av.tolerance);
        if (format == "text") {
            std::cout << "average   = " << res.value.to_string(30) << "\n"
                      << "exact     = " << rat_to_string(res.exact) << "\n"
                      << "abs_error = " << res.abs_error.to_string(8) << "\n"
                      << "method    = " << av.method << "\n";
            if (method == AverageMethod::dirichlet)
                std::cout << "terms     = " << res.terms << "\n"
                          << "converged = " << (res.converged ? "true" : "false")
                          << "\n";
        } else {
            json j{{"k", av.k},
                   {"D", av.D},
                   {"d", av.d},
                   {"method", av.method},
                   {"value", res.value.to_string(30)},
                   {"exact", rat_to_string(res.exact)},
                   {"abs_error", res.abs_error.to_string(8)},
                   {"terms", res.terms},
                   {"converged", res.converged}};
            std::cout << j.dump(2) << "\n";
        }
    });

    // ---- nseq ----
    auto* c_nseq = app.add_subcommand("nseq", "weighted representation counts N(n)");
    struct {
        int k = 0;
        std::string D, d;
        long max = 50;
    } nq;
    c_nseq->add_option("-k,--weight", nq.k, "weight k >= 1")->required();
    c_nseq->add_option("-D,--disc", nq.D, "discriminant D")->required();
    c_nseq->add_option("-d,--character", nq.d, "fundamental discriminant d")->required();
    c_nseq->add_option("--max", nq.max, "largest n (default 50)");
    c_nseq->callback([&] {
        DiscriminantPair pair{nq.k, Int(nq.D), Int(nq.d)};
        pair.validate();
        if (nq.max < 1) throw std::domain_error("nseq: --max must be >= 1");
        GenusCharacter chi(pair.d);
        json jv = json::array();
        for (long n = 1; n <= nq.max; ++n) {
            Int v = weighted_count(pair, Int(n), &chi);
            if (format == "text")
                std::cout << "N(" << n << ") = " << v.get_str() << "\n";
            else
                jv.push_back({{"n", n}, {"N", v.get_str()}});
        }
        if (format == "json") {
            json j{{"k", nq.k}, {"D", nq.D}, {"d", nq.d}, {"counts", jv}};
            std::cout << j.dump(2) << "\n";
        }
    });

    // ---- cohen ----
    auto* c_cohen = app.add_subcommand("cohen", "table of H(k, N)");
    struct {
        int k = 0;
        long max = 20;
    } co;
    c_cohen->add_option("-k,--weight", co.k, "weight k >= 1")->required();
    c_cohen->add_option("--max", co.max, "largest N (default 20)");
    c_cohen->callback([&] {
        if (co.max < 0) throw std::domain_error("cohen: --max must be >= 0");
        json jv = json::array();
        for (long n = 0; n <= co.max; ++n) {
            Rat v = cohen_h(co.k, Int(n));
            if (format == "text")
                std::cout << "H(" << co.k << ", " << n << ") = " << rat_to_string(v)
                          << "\n";
            else
                jv.push_back({{"N", n}, {"H", rat_to_string(v)}});
        }
        if (format == "json") {
            json j{{"k", co.k}, {"values", jv}};
            std::cout << j.dump(2) << "\n";
        }
    });

    // ---- qexp ----
    auto* c_qexp = app.add_subcommand(
        "qexp", "q-expansion coefficients, averaged (lhs) vs closed form (rhs)");
    struct {
        int k = 0;
        std::string d;
        long max = 12;
    } qe;
    c_qexp->add_option("-k,--weight", qe.k, "weight k >= 2")->required();
    c_qexp->add_option("-d,--character", qe.d, "fundamental discriminant d")->required();
    c_qexp->add_option("--max", qe.max, "largest coefficient index (default 12)");
    c_qexp->callback([&] {
        mpfr_prec_t prec = resolve_precision(prec_flag);
        auto pair = qexpansion(qe.k, Int(qe.d), qe.max, prec);
        json jv = json::array();
        for (const auto& [n, rhs] : pair.rhs) {
            auto it = pair.lhs.find(n);
            std::string lhs = it == pair.lhs.end() ? "-" : qexp_coeff_str(it->second);
            std::string kind = it == pair.lhs.end()
                                   ? "absent"
                                   : (it->second.exact ? "exact" : "numeric");
            if (format == "text")
                std::cout << "n=" << n << "  lhs(" << kind << ") = " << lhs
                          << "  rhs = " << rat_to_string(rhs.exact_value) << "\n";
            else
                jv.push_back({{"n", n},
                              {"lhs", lhs},
                              {"lhs_kind", kind},
                              {"rhs", rat_to_string(rhs.exact_value)}});
        }
        if (format == "json") {
            json j{{"k", qe.k}, {"d", qe.d}, {"coefficients", jv}};
            std::cout << j.dump(2) << "\n";
        }
    });

    // ---- classes ----
    auto* c_cls = app.add_subcommand("classes", "reduction cycles of a discriminant");
    struct {
        std::string delta;
        std::string d;
    } cl;
    c_cls->add_option("--delta", cl.delta, "positive nonsquare discriminant")->required();
    c_cls->add_option("-d,--character", cl.d, "optional d for per-class chi values");
    c_cls->callback([&] {
        Int delta(cl.delta);
        auto classes = enumerate_classes(delta);
        std::optional<GenusCharacter> chi;
        if (!cl.d.empty()) chi.emplace(Int(cl.d));
        json jv = json::array();
        for (std::size_t i = 0; i < classes.size(); ++i) {
            json forms = json::array();
            std::string line;
            for (const auto& f : classes[i].cycle) {
                if (!line.empty()) line += " -> ";
                line += f.str();
                forms.push_back(f.str());
            }
            int chiv = 0;
            if (chi) chiv = (*chi)(classes[i].cycle.front());
            if (format == "text") {
                std::cout << "class " << i << ": " << line;
                if (chi) std::cout << "   chi = " << chiv;
                std::cout << "\n";
            } else {
                json jc{{"index", i}, {"cycle", forms}};
                if (chi) jc["chi"] = chiv;
                jv.push_back(jc);
            }
        }
        if (format == "json") {
            json j{{"delta", cl.delta}, {"count", classes.size()}, {"classes", jv}};
            std::cout << j.dump(2) << "\n";
        }
    });

    // ---- plot-data ----
    auto* c_plot = app.add_subcommand(
        "plot-data", "CSV of F at midpoint samples of [0,1]: x,F,exact");
    struct {
        int k = 0;
        std::string D, d;
        long samples = 211;
        std::string out;
    } pl;
    c_plot->add_option("-k,--weight", pl.k, "weight k >= 1")->required();
    c_plot->add_option("-D,--disc", pl.D, "discriminant D")->required();
    c_plot->add_option("-d,--character", pl.d, "fundamental discriminant d")->required();
    c_plot->add_option("--samples", pl.samples, "sample count S (default 211)");
    c_plot->add_option("--out", pl.out, "output file (default stdout)");
    c_plot->callback([&] {
        DiscriminantPair pair{pl.k, Int(pl.D), Int(pl.d)};
        pair.validate();
        if (pl.samples < 1) throw std::domain_error("plot-data: --samples must be >= 1");
        std::ofstream file;
        std::ostream& os = open_out(file, pl.out);
        os << "x,F,exact\n";
        for (long j = 0; j < pl.samples; ++j) {
            Rat x(2 * j + 1, 2 * pl.samples);
            x.canonicalize();
            Rat v = eval_F(pair, x);
            auto dec = decimal_expansion(v, 40);
            os << rat_to_string(x) << "," << dec.text << ","
               << (dec.exact ? "1" : "0") << "\n";
        }
    });

    // ---- verify ----
    auto* c_ver = app.add_subcommand("verify", "run verification suites");
    struct {
        std::vector<std::string> suites;
        std::uint64_t seed = 1;
        double tolerance = 0;
        std::string json_out;
    } vf;
    c_ver->add_option("--suite", vf.suites,
                      "suites to run (default: all of arith classes genus "
                      "prop1 prop2 theorem1 theorem2)");
    c_ver->add_option("--seed", vf.seed, "seed for the sampled checks (default 1)");
    c_ver->add_option("--tolerance", vf.tolerance,
                      "override numeric tolerance (0 = per-suite default)");
    c_ver->add_option("--json", vf.json_out,
                      "write the full JSON reports to this file ('-' = stdout)");
    c_ver->callback([&] {
        SuiteOptions opt;
        opt.seed = vf.seed;
        opt.precision = resolve_precision(prec_flag);
        opt.tolerance = vf.tolerance;
        std::vector<std::string> names = vf.suites;
        if (names.empty() || (names.size() == 1 && names[0] == "all"))
            names = suite_names();
        json reports = json::array();
        bool all_pass = true;
        for (const auto& name : names) {
            auto rep = run_suite(name, opt);
            all_pass = all_pass && rep.pass;
            std::cout << "suite " << name << ": " << (rep.pass ? "PASS" : "FAIL")
                      << " (" << rep.cases.size() << " cases, " << rep.duration_ms
                      << " ms)\n";
            if (!rep.pass)
                for (const auto& c : rep.cases)
                    if (!c.pass) {
                        std::cout << "  failed:";
                        for (const auto& [k, v] : c.params)
                            std::cout << " " << k << "=" << v;
                        std::cout << "  lhs=" << c.lhs << " rhs=" << c.rhs << "\n";
                    }
            if (!vf.json_out.empty()) reports.push_back(json::parse(rep.to_json()));
        }
        if (!vf.json_out.empty()) {
            std::ofstream file;
            std::ostream& os = open_out(file, vf.json_out);
            os << reports.dump(2) << "\n";
        }
        if (!all_pass) exit_code = 1;
    });

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    return exit_code;
}
