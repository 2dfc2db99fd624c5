#include <doctest.h>
#include <json.hpp>

#include <algorithm>

#include "qsum/verify.hpp"

using namespace qsum;

namespace {

// Reports must agree except for wall-clock duration.
void check_same_modulo_timing(const VerificationReport& a,
                              const VerificationReport& b) {
    CHECK(a.suite == b.suite);
    CHECK(a.seed == b.seed);
    CHECK(a.pass == b.pass);
    REQUIRE(a.cases.size() == b.cases.size());
    for (std::size_t i = 0; i < a.cases.size(); ++i) {
        CHECK(a.cases[i].params == b.cases[i].params);
        CHECK(a.cases[i].lhs == b.cases[i].lhs);
        CHECK(a.cases[i].rhs == b.cases[i].rhs);
        CHECK(a.cases[i].abs_error == b.cases[i].abs_error);
        CHECK(a.cases[i].exact == b.cases[i].exact);
        CHECK(a.cases[i].pass == b.cases[i].pass);
    }
}

}  // namespace

TEST_CASE("suite registry") {
    auto names = suite_names();
    REQUIRE(names.size() == 7);
    for (const char* want :
         {"prop1", "prop2", "theorem1", "theorem2", "genus", "classes", "arith"})
        CHECK(std::find(names.begin(), names.end(), want) != names.end());
    CHECK_THROWS_AS(run_suite("nope", SuiteOptions{}), std::invalid_argument);
}

TEST_CASE("fast suites pass and serialize") {
    for (const std::string name : {"arith", "genus", "prop1"}) {
        auto rep = run_suite(name, SuiteOptions{});
        CHECK(rep.suite == name);
        CHECK(rep.seed == 1);
        CHECK(rep.pass);
        CHECK(!rep.cases.empty());
        for (const auto& c : rep.cases) {
            CHECK(c.pass);
            if (c.exact) CHECK(!c.abs_error.has_value());
        }
        auto j = nlohmann::json::parse(rep.to_json());
        CHECK(j.at("suite") == name);
        CHECK(j.at("pass") == true);
        CHECK(j.at("seed") == 1);
        CHECK(j.at("cases").size() == rep.cases.size());
        CHECK(j.at("cases")[0].contains("params"));
        CHECK(j.at("duration_ms").is_number());
        // exact cases carry null abs_error in the emission
        bool saw_null = false;
        for (const auto& jc : j.at("cases"))
            if (jc.at("abs_error").is_null()) saw_null = true;
        CHECK(saw_null);
    }
}

TEST_CASE("reports are reproducible for a fixed seed") {
    SuiteOptions opt;
    opt.seed = 42;
    auto a = run_suite("genus", opt);
    auto b = run_suite("genus", opt);
    check_same_modulo_timing(a, b);

    auto c = run_suite("prop1", opt);
    auto d = run_suite("prop1", opt);
    check_same_modulo_timing(c, d);
}

TEST_CASE("seed variation keeps the checks green") {
    for (std::uint64_t seed : {2ULL, 99ULL}) {
        SuiteOptions opt;
        opt.seed = seed;
        auto rep = run_suite("genus", opt);
        CHECK(rep.seed == seed);
        CHECK(rep.pass);
    }
}

TEST_CASE("cases arrive sorted by parameter key") {
    auto rep = run_suite("prop1", SuiteOptions{});
    auto key = [](const CaseRecord& c) {
        std::string s;
        for (const auto& [k, v] : c.params) s += k + "=" + v + ";";
        return s;
    };
    for (std::size_t i = 1; i < rep.cases.size(); ++i)
        CHECK(key(rep.cases[i - 1]) <= key(rep.cases[i]));
}

TEST_CASE("remaining suites pass with defaults") {
    for (const std::string name : {"prop2", "theorem2", "classes", "theorem1"}) {
        auto rep = run_suite(name, SuiteOptions{});
        CHECK(rep.pass);
        CHECK(!rep.cases.empty());
        long failed = 0;
        for (const auto& c : rep.cases)
            if (!c.pass) ++failed;
        CHECK(failed == 0);
    }
}
