// Reduced criteria against direct total-space computations.
#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "skt/fixtures.hpp"
#include "skt/random_models.hpp"

using namespace skt;

TEST_CASE("every fixture manifest line holds") {
    for (const auto& f : fixtures()) {
        for (const auto& r : run_manifest(f)) {
            CAPTURE(f.name);
            CAPTURE(r.expected.command);
            CAPTURE(r.expected.check);
            CAPTURE(r.error);
            CHECK(r.ok());
        }
    }
}

TEST_CASE("seeded random cases show no reduced/direct mismatch") {
    for (std::uint64_t seed : {1u, 2u, 20240u}) {
        auto cases = random_crossval_cases(seed, 50);
        REQUIRE(cases.size() == 50);
        int compared = 0;
        for (const auto& c : cases) {
            CAPTURE(seed);
            CAPTURE(c.label);
            CHECK(d_squared_defects(c.frame).empty());
            Report r;
            CHECK_NOTHROW(r = crossval_report(c));
            CHECK_FALSE(r.mismatch);
            CHECK_FALSE(r.checks.empty());
            for (const auto& ch : r.checks)
                if (ch.name.find("crossval") != std::string::npos) {
                    ++compared;
                    CHECK(ch.holds);
                }
        }
        CHECK(compared >= 50);
    }
}

TEST_CASE("random cases are reproducible from the seed") {
    auto a = random_crossval_cases(99, 20), b = random_crossval_cases(99, 20);
    for (std::size_t i = 0; i < a.size(); ++i) {
        CHECK(a[i].label == b[i].label);
        CHECK(crossval_report(a[i]).json() == crossval_report(b[i]).json());
    }
}
