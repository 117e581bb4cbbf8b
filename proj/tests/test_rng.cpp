#include <doctest.h>

#include <cmath>
#include <cstdint>
#include <set>
#include <vector>

#include "sbpm/rng.hpp"

TEST_CASE("splitmix64_scramble matches the reference vector") {
    // First outputs of the splitmix64 reference generator from state 0:
    // scramble(0 + k * golden) for k = 1, 2.
    CHECK(sbpm::mix_seed(0, 0) == 0xE220A8397B1DCDAFULL);
    CHECK(sbpm::mix_seed(0, 1) == 0x6E789E6AA1B965F4ULL);
}

TEST_CASE("mix_seed is frozen: serialized configs depend on these values") {
    CHECK(sbpm::mix_seed(7, 0) == 0x63CBE1E459320DD7ULL);
    CHECK(sbpm::mix_seed(7, 4294967296ULL) == 0x962264E9A839C269ULL);
    CHECK(sbpm::mix_seed(12345, 999) == 0x9AAFDE9C029A030CULL);
}

TEST_CASE("mix_seed separates repetition indices from lane constants") {
    std::set<std::uint64_t> seen;
    for (std::uint64_t i = 0; i < 1000; ++i) seen.insert(sbpm::mix_seed(42, i));
    seen.insert(sbpm::mix_seed(42, sbpm::kLaneGauss));
    seen.insert(sbpm::mix_seed(42, sbpm::kLaneSplit));
    seen.insert(sbpm::mix_seed(42, sbpm::kLaneSynth));
    seen.insert(sbpm::mix_seed(42, sbpm::kLaneNoise));
    CHECK(seen.size() == 1004);
}

TEST_CASE("engine output is the standard-pinned mt19937_64 sequence") {
    sbpm::Rng rng(42);
    CHECK(rng.next_u64() == 0xC151DF7D6EE5E2D6ULL);
    CHECK(rng.next_u64() == 0xA3978FB9B92502A8ULL);
    CHECK(rng.next_u64() == 0xC08C967F0E5E7B0AULL);
}

TEST_CASE("uniform01 is the top-53-bits transform of the engine") {
    sbpm::Rng rng(42);
    CHECK(rng.uniform01() == doctest::Approx(0.755155532954539).epsilon(1e-15));
    CHECK(rng.uniform01() == doctest::Approx(0.6390313938546974).epsilon(1e-15));
}

TEST_CASE("same seed gives the same stream, different seeds differ") {
    sbpm::Rng a(99), b(99), c(100);
    bool all_equal = true, any_diff = false;
    for (int i = 0; i < 64; ++i) {
        const std::uint64_t va = a.next_u64();
        all_equal = all_equal && (va == b.next_u64());
        any_diff = any_diff || (va != c.next_u64());
    }
    CHECK(all_equal);
    CHECK(any_diff);
}

TEST_CASE("uniform01 stays in [0, 1)") {
    sbpm::Rng rng(1);
    for (int i = 0; i < 10000; ++i) {
        const double u = rng.uniform01();
        CHECK(u >= 0.0);
        CHECK(u < 1.0);
    }
}

TEST_CASE("below(n) is in range and hits every residue") {
    sbpm::Rng rng(2);
    std::vector<int> hits(7, 0);
    for (int i = 0; i < 7000; ++i) {
        const std::uint64_t x = rng.below(7);
        REQUIRE(x < 7);
        ++hits[static_cast<std::size_t>(x)];
    }
    for (int h : hits) CHECK(h > 0);
}

TEST_CASE("normal() has standard moments over a large sample") {
    sbpm::Rng rng(3);
    const int n = 200000;
    double sum = 0.0, sum_sq = 0.0;
    for (int i = 0; i < n; ++i) {
        const double x = rng.normal();
        sum += x;
        sum_sq += x * x;
    }
    const double mean = sum / n;
    const double var = sum_sq / n - mean * mean;
    CHECK(std::abs(mean) < 0.01);
    CHECK(var == doctest::Approx(1.0).epsilon(0.02));
}

TEST_CASE("normal() streams are reproducible") {
    sbpm::Rng a(11), b(11);
    for (int i = 0; i < 1000; ++i) CHECK(a.normal() == b.normal());
}
