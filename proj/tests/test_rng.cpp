#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <cstdint>
#include <vector>

#include "tic/error.hpp"
#include "tic/rng.hpp"

using tic::Rng;

TEST_CASE("seeded generator is deterministic and seed-sensitive") {
    Rng a = Rng::seeded(123);
    Rng b = Rng::seeded(123);
    for (int i = 0; i < 64; ++i) REQUIRE(a.next() == b.next());
    Rng c = Rng::seeded(124);
    int differing = 0;
    Rng a2 = Rng::seeded(123);
    for (int i = 0; i < 64; ++i) {
        if (a2.next() != c.next()) ++differing;
    }
    REQUIRE(differing > 60);
}

TEST_CASE("output sequence is frozen across platforms") {
    // These values pin the generator's bit-level behavior; a change here
    // silently breaks every golden file and seeded acceptance bound.
    Rng a = Rng::seeded(42);
    REQUIRE(a.next() == 1546998764402558742ull);
    REQUIRE(a.next() == 6990951692964543102ull);
    REQUIRE(a.next() == 12544586762248559009ull);
    Rng b = Rng::stream(7, 3);
    REQUIRE(b.next() == 15130145835265327391ull);
    REQUIRE(b.next() == 16283665871844108660ull);
    Rng c = Rng::seeded(42);
    REQUIRE(c.next_double() == Catch::Approx(0.08386297105988216).epsilon(0));
    REQUIRE(c.next_double() == Catch::Approx(0.3789802506626686).epsilon(0));
}

TEST_CASE("streams with different indices are unrelated") {
    Rng a = Rng::stream(99, 0);
    Rng b = Rng::stream(99, 1);
    int same = 0;
    for (int i = 0; i < 64; ++i) {
        if (a.next() == b.next()) ++same;
    }
    REQUIRE(same == 0);
    Rng c = Rng::stream(99, 1);
    Rng d = Rng::stream(99, 1);
    for (int i = 0; i < 16; ++i) REQUIRE(c.next() == d.next());
}

TEST_CASE("next_double stays in the unit interval with a centered mean") {
    Rng rng = Rng::seeded(7);
    const int n = 100000;
    double sum = 0.0;
    for (int i = 0; i < n; ++i) {
        const double x = rng.next_double();
        REQUIRE(x >= 0.0);
        REQUIRE(x < 1.0);
        sum += x;
    }
    const double mean = sum / n;
    const double sigma = 1.0 / std::sqrt(12.0 * n);
    REQUIRE(std::abs(mean - 0.5) < 4.0 * sigma);
}

TEST_CASE("next_index bounds and uniformity") {
    Rng rng = Rng::seeded(11);
    REQUIRE_THROWS_AS(rng.next_index(0), tic::InvalidArgument);
    for (int i = 0; i < 1000; ++i) REQUIRE(rng.next_index(1) == 0);
    const std::uint64_t buckets = 10;
    const int n = 100000;
    std::vector<int> hist(buckets, 0);
    for (int i = 0; i < n; ++i) {
        const std::uint64_t k = rng.next_index(buckets);
        REQUIRE(k < buckets);
        ++hist[k];
    }
    const double expected = static_cast<double>(n) / buckets;
    double chi2 = 0.0;
    for (const int h : hist) {
        const double d = h - expected;
        chi2 += d * d / expected;
    }
    // 1% critical value, chi-square with 9 degrees of freedom.
    REQUIRE(chi2 < 21.665994333461924);
}
