#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "gncoset/quant.hpp"

using namespace gncoset;

TEST_CASE("parse accepts the documented forms") {
    CHECK(QuantSpec::parse("float").float_mode);
    CHECK(QuantSpec::parse("FLOAT").float_mode);
    const auto q62 = QuantSpec::parse("Q6F2");
    CHECK(q62.total_bits == 6);
    CHECK(q62.frac_bits == 2);
    CHECK(!q62.float_mode);
    CHECK(QuantSpec::parse("q5f1") == QuantSpec::fixed(5, 1));
    CHECK(QuantSpec::parse("Q6") == QuantSpec::fixed(6, 2)); // default split
    CHECK(QuantSpec::parse("Q6F2").to_string() == "Q6F2");
    CHECK(QuantSpec::floating().to_string() == "float");
}

TEST_CASE("parse rejects malformed or out-of-range specs") {
    for (const char* bad : {"", "Q", "QxFy", "F2", "Q3", "Q9", "Q6F5", "Q6F9", "6F2", "flo"})
        CHECK_THROWS_AS(QuantSpec::parse(bad), std::invalid_argument);
}

TEST_CASE("pinned quantizer values on the Q6F2 grid") {
    const auto qs = QuantSpec::fixed(6, 2);
    CHECK(qs.clip() == 31.0);
    CHECK(quantize(1.0, qs) == 4.0);
    CHECK(quantize(-1.0, qs) == -4.0);
    CHECK(quantize(100.0, qs) == 31.0);
    CHECK(quantize(-100.0, qs) == -31.0);
    CHECK(quantize(0.0, qs) == 0.0);
    // ties round away from zero
    CHECK(quantize(0.125, qs) == 1.0);
    CHECK(quantize(-0.125, qs) == -1.0);
    CHECK(quantize(0.124, qs) == 0.0);
}

TEST_CASE("saturating arithmetic stays on the grid") {
    const auto qs = QuantSpec::fixed(6, 2);
    CHECK(sat_add(30.0, 30.0, qs) == 31.0);
    CHECK(sat_add(-30.0, -30.0, qs) == -31.0);
    CHECK(sat_add(10.0, -3.0, qs) == 7.0);
    CHECK(g_comb(4.0, 2.0, 1, qs) == -2.0);
    CHECK(g_comb(4.0, 2.0, 0, qs) == 6.0);
    CHECK(g_comb(31.0, 31.0, 0, qs) == 31.0);
}

TEST_CASE("min-sum check update") {
    CHECK(f_min(5.0, -3.0) == -3.0);
    CHECK(f_min(-5.0, -3.0) == 3.0);
    CHECK(f_min(5.0, 3.0) == 3.0);
    CHECK(f_min(0.0, -7.0) == 0.0);
}

TEST_CASE("boxplus agrees with the tanh-domain definition") {
    std::mt19937_64 rng(7);
    std::uniform_real_distribution<double> d(-6.0, 6.0);
    for (int i = 0; i < 2000; ++i) {
        const double a = d(rng), b = d(rng);
        const double ref = 2.0 * std::atanh(std::tanh(a / 2.0) * std::tanh(b / 2.0));
        CHECK(f_boxplus(a, b) == doctest::Approx(ref).epsilon(1e-9));
    }
}

TEST_CASE("quantization error is bounded by half a step inside the range") {
    std::mt19937_64 rng(17);
    for (int q = 4; q <= 8; ++q) {
        for (int f = 0; f <= q - 2; ++f) {
            const auto qs = QuantSpec::fixed(q, f);
            const double limit = (qs.clip() - 0.5) / qs.scale();
            std::uniform_real_distribution<double> d(-limit, limit);
            for (int i = 0; i < 500; ++i) {
                const double x = d(rng);
                const double back = quantize(x, qs) / qs.scale();
                CHECK(std::abs(back - x) <= 0.5 / qs.scale() + 1e-12);
            }
        }
    }
}

TEST_CASE("float mode is a pass-through") {
    const auto qs = QuantSpec::floating();
    CHECK(quantize(1.2345, qs) == 1.2345);
    CHECK(sat_add(1e9, 1e9, qs) == 2e9);
}

TEST_CASE("hard decisions, zero counts as 0") {
    CHECK(hard_bit(-0.001) == 1);
    CHECK(hard_bit(0.001) == 0);
    CHECK(hard_bit(0.0) == 0);
}
