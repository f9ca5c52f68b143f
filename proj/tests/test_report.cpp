#include <doctest.h>

#include <cmath>
#include <limits>

#include <json.hpp>

#include "g2cubic/report.hpp"
#include "g2cubic/suite.hpp"

using namespace g2cubic;

namespace {

SuiteConfig small_finite() {
    SuiteConfig cfg;
    cfg.suites = {"finite"};
    cfg.moduli = {5};
    cfg.random_functions = 5;
    cfg.threads = 1;
    return cfg;
}

}  // namespace

TEST_CASE("fnv1a digests") {
    CHECK(fnv1a_hex("") == "cbf29ce484222325");
    CHECK(fnv1a_hex("a") == "af63dc4c8601ec8c");
    CHECK(fnv1a_hex("foobar") == "85944171f73967e8");
}

TEST_CASE("check records") {
    auto c = make_check("g2.jacobi", "x", 0, 0);
    CHECK(c.pass);
    CHECK(c.anchor == anchor_for("g2.jacobi"));
    CHECK(make_check("zeta.sigma1_arch.s2", "x", 1e-9, 1e-9).pass);
    CHECK_FALSE(make_check("zeta.sigma1_arch.s2", "x", 2e-9, 1e-9).pass);
    CHECK_FALSE(make_check("zeta.sigma1_arch.s2", "x", std::numeric_limits<double>::quiet_NaN(), 1.0).pass);
    CHECK(make_check("g2.jacobi", "x", 0, 0).inputs_digest != make_check("g2.jacobi", "y", 0, 0).inputs_digest);
    CHECK_THROWS_AS(anchor_for("g2.nonexistent"), std::out_of_range);
    CHECK_THROWS_AS(anchor_for("bogus"), std::out_of_range);
    for (const auto& [key, text] : anchor_registry()) {
        CHECK(!text.empty());
        CHECK(key.find('.') != std::string::npos);
    }
}

TEST_CASE("report json") {
    VerificationReport r;
    r.version = "1";
    r.toolchain = "t";
    r.seed = 3;
    r.config = {{"k", "v"}};
    r.checks = {make_check("g2.jacobi", "a", 0, 0), make_check("finite.plancherel.N5", "b", 1e-3, 1e-9),
                make_check("finite.plancherel.N7", "c", std::numeric_limits<double>::infinity(), 1e-9)};
    const auto s = r.summary();
    CHECK(s.total == 3);
    CHECK(s.passed == 1);
    CHECK(s.failed == 2);
    CHECK_FALSE(r.all_pass());
    const auto j = nlohmann::json::parse(r.to_json());
    CHECK(j["summary"]["failed"] == 2);
    CHECK(j["checks"][0]["check_id"] == "g2.jacobi");
    CHECK(j["checks"][2]["residual"].is_string());
    CHECK(r.to_json() == r.to_json());
    CHECK(r.to_json().find("time") == std::string::npos);
}

TEST_CASE("config parsing and validation") {
    const auto d = parse_suite_config("");
    CHECK(d.moduli == std::vector<int>{5, 7, 11});
    CHECK(d.max_disc == 300);
    CHECK(d.seed == 20240601);
    const auto c = parse_suite_config("# comment\nsuites = finite, zeta\nmoduli=5,7\nmax_disc = 100\ntolerance=1e-6\nheight_norm=sup\ngroup=SL2\n");
    CHECK(c.suites == std::vector<std::string>{"finite", "zeta"});
    CHECK(c.moduli == std::vector<int>{5, 7});
    CHECK(c.tolerance == 1e-6);
    CHECK(c.height_norm == HeightNorm::Sup);
    CHECK(c.group == ClassGroup::SL2);
    CHECK(suite_selected(c, "zeta"));
    CHECK_FALSE(suite_selected(c, "g2"));
    CHECK(suite_selected(d, "g2"));

    CHECK_THROWS_AS(parse_suite_config("nonsense=1\n"), std::invalid_argument);
    CHECK_THROWS_AS(parse_suite_config("seed=1\nseed=2\n"), std::invalid_argument);
    CHECK_THROWS_AS(parse_suite_config("max_disc=abc\n"), std::invalid_argument);
    CHECK_THROWS_AS(parse_suite_config("max_disc=12x\n"), std::invalid_argument);
    CHECK_THROWS_AS(parse_suite_config("tolerance=-1\n"), std::invalid_argument);
    CHECK_THROWS_AS(parse_suite_config("moduli=6\n"), std::invalid_argument);
    CHECK_THROWS_AS(parse_suite_config("moduli=29\n"), std::invalid_argument);
    CHECK_THROWS_AS(parse_suite_config("max_disc=1000000\n"), std::invalid_argument);
    CHECK_THROWS_AS(parse_suite_config("primes=4\n"), std::invalid_argument);
    CHECK_THROWS_AS(parse_suite_config("suites=everything\n"), std::invalid_argument);
    CHECK_THROWS_AS(parse_suite_config("exact_modulus=11\n"), std::invalid_argument);
    CHECK_THROWS_AS(parse_suite_config("just a line\n"), std::invalid_argument);

    SuiteConfig bad;
    bad.max_level = 50;
    CHECK_THROWS_AS(run_suite(bad), std::invalid_argument);

    // paths and thread counts do not enter the report
    SuiteConfig a, b;
    b.report_path = "/somewhere/else.json";
    b.threads = 3;
    CHECK(describe(a) == describe(b));
}

TEST_CASE("finite suite at N = 5: exact path has zero residual") {
    const auto r = run_suite(small_finite());
    CHECK(r.all_pass());
    bool exact_seen = false;
    for (const auto& c : r.checks) {
        CHECK(c.pass == (c.residual <= c.tolerance));
        if (c.check_id == "finite.exact_indicators.N5") {
            exact_seen = true;
            CHECK(c.residual == 0.0);
        }
    }
    CHECK(exact_seen);
}

TEST_CASE("tolerance 0 makes floating checks fail deterministically") {
    auto cfg = small_finite();
    cfg.tolerance = 0;
    cfg.exact_modulus = 0;
    const auto r1 = run_suite(cfg), r2 = run_suite(cfg);
    CHECK_FALSE(r1.all_pass());
    CHECK(r1.to_json() == r2.to_json());
    for (const auto& c : r1.checks)
        if (!c.pass) CHECK(c.residual > 0);
}

TEST_CASE("suites are deterministic and merged in a fixed order") {
    SuiteConfig cfg;
    cfg.suites = {"forms", "g2"};
    cfg.random_instances = 50;
    const auto r1 = run_suite(cfg), r2 = run_suite(cfg);
    CHECK(r1.all_pass());
    CHECK(r1.to_json() == r2.to_json());
    REQUIRE(!r1.checks.empty());
    CHECK(r1.checks.front().check_id.rfind("g2.", 0) == 0);
    CHECK(r1.checks.back().check_id.rfind("forms.", 0) == 0);
    cfg.seed += 1;
    CHECK(run_suite(cfg).to_json() != r1.to_json());
}
