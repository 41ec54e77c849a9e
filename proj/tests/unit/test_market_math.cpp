#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>

#include "homebias/errors.hpp"
#include "homebias/market_math.hpp"

using namespace homebias;

namespace {

OddsTriple random_odds(std::mt19937_64& rng)
{
    std::uniform_real_distribution<double> u(1.01, 25.0);
    return {u(rng), u(rng), u(rng)};
}

}  // namespace

TEST_SUITE("market_math") {
    TEST_CASE("fair book demargins to inverse odds") {
        const auto p = demargin({2.0, 4.0, 4.0});
        CHECK(p.home == doctest::Approx(0.5).epsilon(1e-15));
        CHECK(p.draw == doctest::Approx(0.25).epsilon(1e-15));
        CHECK(p.away == doctest::Approx(0.25).epsilon(1e-15));
        CHECK(margin({2.0, 4.0, 4.0}) == doctest::Approx(0.0).epsilon(1e-15));
    }

    TEST_CASE("overround book (2.0, 3.5, 4.0)") {
        // Inverse odds 1/2, 2/7, 1/4 sum to 29/28, so the probabilities are 14/29, 8/29, 7/29.
        const auto p = demargin({2.0, 3.5, 4.0});
        CHECK(p.home == doctest::Approx(14.0 / 29.0).epsilon(1e-14));
        CHECK(p.draw == doctest::Approx(8.0 / 29.0).epsilon(1e-14));
        CHECK(p.away == doctest::Approx(7.0 / 29.0).epsilon(1e-14));
        CHECK(p.home == doctest::Approx(0.482759).epsilon(1e-6));
        CHECK(p.draw == doctest::Approx(0.275862).epsilon(1e-6));
        CHECK(p.away == doctest::Approx(0.241379).epsilon(1e-6));
        CHECK(std::abs(margin({2.0, 3.5, 4.0}) - 1.0 / 28.0) < 1e-15);
        CHECK(margin({2.0, 3.5, 4.0}) == doctest::Approx(0.0357143).epsilon(1e-6));
    }

    TEST_CASE("imp_prob_diff") {
        CHECK(imp_prob_diff({0.5, 0.25, 0.25}) == doctest::Approx(0.25));
        CHECK(imp_prob_diff({0.35, 0.3, 0.35}) == 0.0);
        CHECK(imp_prob_diff(demargin({4.0, 3.5, 2.0})) < 0.0);
    }

    TEST_CASE("odds at or below 1 are a domain error") {
        CHECK_THROWS_AS(demargin({1.0, 3.0, 4.0}), DomainError);
        CHECK_THROWS_AS(margin({2.0, 0.5, 4.0}), DomainError);
        CHECK_THROWS_AS(margin({2.0, 3.0, std::numeric_limits<double>::infinity()}), DomainError);
        CHECK_THROWS_AS(demargin({2.0, std::nan(""), 4.0}), DomainError);
        CHECK_FALSE(is_valid({2.0, 3.0, -4.0}));
    }

    TEST_CASE("property: probabilities sum to one and reconstruct the inverse odds") {
        std::mt19937_64 rng(12345);
        for (int i = 0; i < 10000; ++i) {
            const auto odds = random_odds(rng);
            const auto p = demargin(odds);
            REQUIRE(std::abs(p.home + p.draw + p.away - 1.0) < 1e-12);
            REQUIRE(p.home > 0.0);
            REQUIRE(p.home < 1.0);
            REQUIRE(p.draw > 0.0);
            REQUIRE(p.draw < 1.0);
            REQUIRE(p.away > 0.0);
            REQUIRE(p.away < 1.0);
            const double m = margin(odds);
            REQUIRE(std::abs(p.home * (1.0 + m) - 1.0 / odds.home) < 1e-12);
            REQUIRE(std::abs(p.draw * (1.0 + m) - 1.0 / odds.draw) < 1e-12);
            REQUIRE(std::abs(p.away * (1.0 + m) - 1.0 / odds.away) < 1e-12);
        }
    }

    TEST_CASE("property: common scaling of inverse odds leaves probabilities unchanged") {
        std::mt19937_64 rng(99);
        std::uniform_real_distribution<double> factor(0.5, 0.99);
        for (int i = 0; i < 2000; ++i) {
            const auto odds = random_odds(rng);
            const double c = factor(rng);
            // Inverse odds times c means odds divided by c, which stays above 1.
            const auto p = demargin(odds);
            const auto q = demargin({odds.home / c, odds.draw / c, odds.away / c});
            REQUIRE(std::abs(p.home - q.home) < 1e-12);
            REQUIRE(std::abs(p.draw - q.draw) < 1e-12);
            REQUIRE(std::abs(p.away - q.away) < 1e-12);
        }
    }

    TEST_CASE("property: margin is invariant under outcome permutation") {
        std::mt19937_64 rng(7);
        for (int i = 0; i < 2000; ++i) {
            const auto o = random_odds(rng);
            std::array<double, 3> v{o.home, o.draw, o.away};
            std::sort(v.begin(), v.end());
            const double ref = margin(o);
            do {
                REQUIRE(margin({v[0], v[1], v[2]}) == ref);
            } while (std::next_permutation(v.begin(), v.end()));
        }
    }

    TEST_CASE("property: shorter odds mean higher implied probability") {
        std::mt19937_64 rng(2024);
        for (int i = 0; i < 5000; ++i) {
            const auto o = random_odds(rng);
            const auto p = demargin(o);
            const std::array<double, 3> odds{o.home, o.draw, o.away};
            const std::array<double, 3> prob{p.home, p.draw, p.away};
            for (int a = 0; a < 3; ++a)
                for (int b = 0; b < 3; ++b)
                    if (a != b)
                        REQUIRE((odds[a] < odds[b]) == (prob[a] > prob[b]));
        }
    }
}
