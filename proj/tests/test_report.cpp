#include "doctest.h"
#include "ecr/report.hpp"

using namespace ecr::report;

namespace {

SuiteConfig one_prime(long p) {
    SuiteConfig c;
    c.primes = {p};
    c.ramified.clear();
    return c;
}

void summary_matches(const Report& r) {
    auto j = r.to_json();
    std::size_t pass = 0, fail = 0, skipped = 0;
    for (const auto& c : j["cases"]) {
        auto s = c["status"].get<std::string>();
        pass += s == "pass";
        fail += s == "fail";
        skipped += s == "skipped";
    }
    CHECK(j["summary"]["pass"] == pass);
    CHECK(j["summary"]["fail"] == fail);
    CHECK(j["summary"]["skipped"] == skipped);
    CHECK(pass + fail + skipped == j["cases"].size());
}

}  // namespace

TEST_CASE("config validation") {
    SuiteConfig ok;
    CHECK_NOTHROW(validate(ok));
    auto bad = [](auto mutate) {
        SuiteConfig c;
        mutate(c);
        CHECK_THROWS_AS(validate(c), ConfigError);
    };
    bad([](SuiteConfig& c) { c.primes = {2, 4}; });
    bad([](SuiteConfig& c) { c.ramified = {7}; });
    bad([](SuiteConfig& c) { c.primes = {2, 3}; c.ramified = {2}; });
    bad([](SuiteConfig& c) { c.grid = "medium"; });
    bad([](SuiteConfig& c) { c.ops = {3}; });
    bad([](SuiteConfig& c) { c.ops.clear(); });
    bad([](SuiteConfig& c) { c.kappas = {4}; });
    bad([](SuiteConfig& c) { c.checks = "abz"; });
    bad([](SuiteConfig& c) { c.tol = {{"q", 1e-3}}; });
    bad([](SuiteConfig& c) { c.tol = {{"d", -1.0}}; });
    bad([](SuiteConfig& c) { c.workers = 0; });
    CHECK_THROWS_AS(run_suite(ok, {"nope"}, "x"), ConfigError);
}

TEST_CASE("empty suite list gives an empty valid report") {
    Report r = run_suite(SuiteConfig{}, {}, "empty");
    CHECK(r.cases.empty());
    CHECK(r.ok());
    auto j = r.to_json();
    CHECK(j["schema"] == 1);
    CHECK(j["summary"]["pass"] == 0);
    CHECK(j["config"]["seed"] == 20240601u);
    CHECK_FALSE(j.contains("wall_seconds"));
}

TEST_CASE("ecr at p = 3 on the small grid passes") {
    Report r = run_suite(one_prime(3), {"ecr"}, "ecr.p3");
    CHECK(r.cases.size() == 4);
    CHECK(r.ok());
    CHECK(r.count("pass") == 4);
    summary_matches(r);
}

TEST_CASE("ramified suite at p = 2 is skipped") {
    Report r = run_suite(one_prime(2), {"jsum-ram"}, "ram.p2");
    REQUIRE(r.cases.size() == 1);
    CHECK(r.cases[0].status == "skipped");
    CHECK(r.cases[0].note.find("UnsupportedPrime") != std::string::npos);
    CHECK(r.ok());
}

TEST_CASE("reports are byte-identical for a fixed config") {
    SuiteConfig c = one_prime(3);
    c.ramified = {3};
    std::vector<std::string> suites{"coset", "jsum-unram", "jsum-ram", "satake"};
    std::string a = run_suite(c, suites, "det").to_json().dump(2);
    std::string b = run_suite(c, suites, "det").to_json().dump(2);
    CHECK(a == b);
    Report r = run_suite(c, suites, "det");
    CHECK(r.ok());
    summary_matches(r);
    // spot values are present as their own cases
    std::size_t spots = 0;
    for (const auto& cs : r.cases) spots += cs.id.find(".spot.") != std::string::npos;
    CHECK(spots == 4 + 3);

    c.timing = true;
    CHECK(run_suite(c, {"satake"}, "t").to_json().contains("wall_seconds"));
}

TEST_CASE("suite order does not depend on how suites are listed") {
    SuiteConfig c = one_prime(2);
    auto a = run_suite(c, {"satake", "coset"}, "o").to_json();
    auto b = run_suite(c, {"coset", "satake"}, "o").to_json();
    CHECK(a["cases"] == b["cases"]);
}

TEST_CASE("arch property letter through the report") {
    SuiteConfig c;
    c.primes.clear();
    c.ramified.clear();
    c.kappas = {6};
    c.checks = "e";
    c.tol = {{"e", 1e-9}};
    Report r = run_suite(c, {"arch"}, "arch");
    CHECK(r.ok());
    CHECK(r.cases.size() > 10);
    for (const auto& cs : r.cases) {
        CHECK(cs.residual.has_value());
        CHECK(cs.id.rfind("arch.", 0) == 0);
    }
    std::string text = r.to_text();
    CHECK(text.find("PASS  arch.ineq.tr") != std::string::npos);
}
