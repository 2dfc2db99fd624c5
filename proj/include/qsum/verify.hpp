#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "qsum/series.hpp"

namespace qsum {

// One checked equation. lhs/rhs are serialized values (exact rationals or
// decimal strings); abs_error is absent for exact comparisons.
struct CaseRecord {
    std::map<std::string, std::string> params;
    std::string lhs;
    std::string rhs;
    std::optional<std::string> abs_error;
    bool exact;
    bool pass;
};

struct VerificationReport {
    std::string suite;
    std::uint64_t seed;
    std::vector<CaseRecord> cases;
    bool pass;
    long duration_ms;

    // Schema: {"suite", "seed", "cases": [{"params", "lhs", "rhs",
    // "abs_error" (null when exact), "exact", "pass"}...], "pass",
    // "duration_ms"}. Cases sorted by canonical parameter key; identical
    // (suite, params, seed) reproduce identical cases.
    std::string to_json() const;
};

struct SuiteOptions {
    std::uint64_t seed = 1;
    mpfr_prec_t precision = 256;
    double tolerance = 0;  // 0 = per-suite default
    // Instance matrix shared by the suites; (k, D, d) triples.
    std::vector<DiscriminantPair> instances = default_instances();

    static std::vector<DiscriminantPair> default_instances();
};

// Suites: "prop1"    multiplicativity of (-1)^k N(n)
//         "prop2"    local factor identities, order 10
//         "theorem1" average of F vs H(k,|D|) H(k,|d|) / (2 zeta(1-2k)),
//                    chain method (tol 1e-12) and dirichlet crosscheck
//                    (tol 1e-2, Delta <= 40, k in {2,3})
//         "theorem2" k = 1 vanishing plus its four supporting identities
//         "genus"    character well-definedness, SL2 invariance, sign law
//         "classes"  reduction cycles and classwise decomposition of F
//         "arith"    kronecker/bernoulli/L-value anchors
// Unknown names throw std::invalid_argument.
VerificationReport run_suite(const std::string& name, const SuiteOptions& opt);

std::vector<std::string> suite_names();

}  // namespace qsum
