// Validation-suite runner: canonical names, report shape, and byte-stable
// JSON. Full-size suite runs live in the acceptance binary; here we use a
// reduced n, which the suites accept for smoke runs. Thresholds are tuned
// for the default n, so only n-independent checks are asserted to pass.

#include <algorithm>
#include <string>
#include <vector>

#include "doctest.h"
#include "stablelat/errors.hpp"
#include "stablelat/suites.hpp"

using namespace stablelat;
using namespace stablelat::suites;

TEST_SUITE("suites") {

TEST_CASE("the canonical suite list is fixed") {
    const std::vector<std::string> expected = {"cf-convergence", "exactness", "lfsm-selfsim",
                                               "lf-conditions", "frac-identities"};
    CHECK(suite_names() == expected);
    CHECK_THROWS_AS(run_suite("bogus"), config_error);
}

TEST_CASE("noise models resolve by name") {
    CHECK_NOTHROW(make_noise("exact", 1.5));
    CHECK_NOTHROW(make_noise("pareto", 1.5));
    CHECK_THROWS_AS(make_noise("uniform", 1.5), config_error);
}

TEST_CASE("a reduced exactness run reports the expected shape") {
    SuiteOptions opts;
    opts.n = 2000;
    opts.seed = 5;
    const SuiteReport rep = run_suite("exactness", opts);
    CHECK(rep.suite == "exactness");
    REQUIRE(rep.checks.size() == 2);
    CHECK(rep.checks[0].name == "exact_norm_gap");
    CHECK(rep.checks[1].name == "exact_ks_p");

    // The config echoes every resolved parameter, overrides included.
    CHECK(rep.config.at("alpha") == "1.5");
    CHECK(rep.config.at("n") == "2000");
    CHECK(rep.config.at("seed") == "5");
    CHECK(rep.config.count("h") == 1);
    CHECK(rep.config.count("cells") == 1);

    // The norm identity of the signed-power scheme holds at any sample size.
    CHECK(rep.checks[0].pass);
    CHECK(rep.checks[0].value <= rep.checks[0].threshold);

    // pass flags are consistent with (value op threshold), and the report's
    // overall flag is their conjunction.
    bool all = true;
    for (const auto& c : rep.checks) {
        const bool expected_pass =
            c.op == "<=" ? c.value <= c.threshold : c.value >= c.threshold;
        CHECK(c.pass == expected_pass);
        all = all && c.pass;
    }
    CHECK(rep.pass == all);
}

TEST_CASE("reports are byte-stable across runs") {
    SuiteOptions opts;
    opts.n = 1000;
    opts.seed = 11;
    const std::string a = to_json(run_suite("exactness", opts));
    const std::string b = to_json(run_suite("exactness", opts));
    CHECK(a == b);
    // reports are pretty-printed (2-space indent, space after the colon)
    CHECK(a.find("\"suite\": \"exactness\"") != std::string::npos);
    CHECK(a.find("\"checks\": [") != std::string::npos);
}

}  // TEST_SUITE("suites")
