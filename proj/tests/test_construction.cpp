#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <random>
#include <set>

#include "gncoset/construction.hpp"
#include "gncoset/quant.hpp"

using namespace gncoset;

namespace {

// Genie-aided bit LLRs for the all-zero codeword: with every prior bit
// known to be zero, the update tree degenerates to checks on f-outputs and
// plain sums on g-outputs. Exact check-node update, matching the Gaussian
// analysis the ordering is built from.
std::vector<double> genie_bit_llrs(const std::vector<double>& ch) {
    if (ch.size() == 1) return ch;
    const std::size_t h = ch.size() / 2;
    std::vector<double> f(h), g(h);
    for (std::size_t l = 0; l < h; ++l) {
        f[l] = f_boxplus(ch[l], ch[l + h]);
        g[l] = ch[l] + ch[l + h];
    }
    auto left = genie_bit_llrs(f);
    const auto right = genie_bit_llrs(g);
    left.insert(left.end(), right.begin(), right.end());
    return left;
}

} // namespace

TEST_CASE("mean recursion pinned endpoints") {
    // Two channels: the check output degrades, the sum output doubles.
    const auto m = gaussian_approx_means(2, 0.0);
    REQUIRE(m.size() == 2);
    const double m0 = 2.0; // 2/sigma^2 at 0 dB
    CHECK(m[1] == doctest::Approx(2.0 * m0));
    CHECK(m[0] < m0);
    CHECK(m[0] > 0.0);
}

TEST_CASE("means are monotone in design SNR") {
    const auto lo = gaussian_approx_means(64, 2.0);
    const auto hi = gaussian_approx_means(64, 4.0);
    for (std::size_t i = 0; i < lo.size(); ++i) CHECK(lo[i] < hi[i]);
}

TEST_CASE("ordering endpoints: first index worst, last index best") {
    for (double snr : {0.0, 3.0, 6.3}) {
        for (std::size_t n : {8u, 32u, 128u}) {
            const auto order = reliability_order(n, snr);
            CHECK(order.front() == 0);
            CHECK(order.back() == n - 1);
            std::set<uint32_t> seen(order.begin(), order.end());
            CHECK(seen.size() == n); // a permutation
        }
    }
}

TEST_CASE("ordering agrees with genie Monte-Carlo bit errors") {
    // Cross-check the analytic ordering against measured genie-aided
    // bit-error counts on 10^5 all-zero frames. Only pairs whose counts
    // differ beyond sampling noise (two-proportion z > 5) must agree; the
    // analytic means carry a few percent of approximation error, which is
    // far below that gate.
    const std::size_t n = 64;
    const double esn0 = 2.0;
    const std::size_t frames = 100000;
    const auto means = gaussian_approx_means(n, esn0);
    const double sigma2 = std::pow(10.0, -esn0 / 10.0);
    const double sigma = std::sqrt(sigma2);

    std::vector<uint64_t> errors(n, 0);
    std::mt19937_64 rng(20260819);
    std::normal_distribution<double> noise(0.0, sigma);
    std::vector<double> ch(n);
    for (std::size_t f = 0; f < frames; ++f) {
        for (auto& v : ch) v = 2.0 * (1.0 + noise(rng)) / sigma2;
        const auto llr = genie_bit_llrs(ch);
        for (std::size_t i = 0; i < n; ++i) errors[i] += llr[i] < 0.0;
    }

    std::size_t significant = 0, disagreements = 0;
    for (std::size_t u = 0; u < n; ++u) {
        for (std::size_t v = 0; v < n; ++v) {
            if (means[u] >= means[v]) continue; // analytic: u less reliable
            const double pu = double(errors[u]) / double(frames);
            const double pv = double(errors[v]) / double(frames);
            const double pbar = 0.5 * (pu + pv);
            const double var = pbar * (1.0 - pbar) * 2.0 / double(frames);
            if (var <= 0.0) continue;
            const double z = (pu - pv) / std::sqrt(var);
            if (std::abs(z) > 5.0) {
                ++significant;
                // measured order must match: worse channel, more errors
                if (z < 0.0) ++disagreements;
            }
        }
    }
    CHECK(significant > 500); // the gate has teeth at this SNR
    CHECK(disagreements == 0);
}

TEST_CASE("product code pinned sizes") {
    const auto c115 = build_product_code(128, 115, 6.3);
    CHECK(c115.k_total == 13225);
    CHECK(c115.default_frozen.size() == 13);
    CHECK(c115.block_length() == 16384);
    const auto c119 = build_product_code(128, 119, 6.3);
    CHECK(c119.k_total == 14161);
    const auto c2 = build_product_code(2, 2, 0.0);
    CHECK(c2.k_total == 4);
    CHECK(c2.default_frozen.empty());
}

TEST_CASE("frozen mask counts info positions as a product") {
    const auto spec = build_product_code(16, 13, 5.0);
    const auto mask = spec.frozen_mask();
    std::size_t info = 0;
    for (uint8_t m : mask) info += !m;
    CHECK(info == spec.k_total);
    CHECK(info == 169);
}

TEST_CASE("spec JSON round trip") {
    auto spec = build_product_code(32, 29, 6.0, "roundtrip");
    // Freeze two top channels in one sub so the override genuinely differs
    // from the default frozen set.
    spec.overrides[{int(GraphId::Gpi), 3}] = {0, 30, 31};
    const std::string text = spec_to_json_text(spec);
    const CodeSpec back = spec_from_json_text(text);
    CHECK(back.n_sub == spec.n_sub);
    CHECK(back.k_total == spec.k_total);
    CHECK(back.default_frozen == spec.default_frozen);
    CHECK(back.label == spec.label);
    CHECK(back.overrides == spec.overrides);
    CHECK(back.frozen_set(GraphId::Gpi, 3) == std::vector<uint32_t>{0, 30, 31});
    CHECK(back.frozen_set(GraphId::Gpi, 4) == spec.default_frozen);
    CHECK(back.frozen_set(GraphId::G, 3) == spec.default_frozen);
    CHECK(!back.separable());
}

TEST_CASE("spec file round trip") {
    const auto dir = std::filesystem::temp_directory_path() / "gncoset_spec_test";
    std::filesystem::create_directories(dir);
    const auto path = (dir / "spec.json").string();
    const auto spec = build_product_code(64, 58, 6.3);
    save_spec(spec, path);
    const CodeSpec back = load_spec(path);
    CHECK(back.default_frozen == spec.default_frozen);
    CHECK(back.k_total == spec.k_total);
    std::filesystem::remove_all(dir);
}

TEST_CASE("spec parser rejects structural violations with context") {
    // unsorted frozen set
    CHECK_THROWS_WITH_AS(
        spec_from_json_text(R"({"version":1,"n_sub":8,"k_total":36,"default_frozen":[3,1]})"),
        doctest::Contains("ascending"), std::invalid_argument);
    // out of range index
    CHECK_THROWS_AS(
        spec_from_json_text(R"({"version":1,"n_sub":8,"k_total":36,"default_frozen":[9]})"),
        std::invalid_argument);
    // k_total inconsistent with the product structure
    CHECK_THROWS_AS(
        spec_from_json_text(R"({"version":1,"n_sub":8,"k_total":35,"default_frozen":[0,1]})"),
        std::invalid_argument);
    // bad version
    CHECK_THROWS_AS(
        spec_from_json_text(R"({"version":2,"n_sub":8,"k_total":36,"default_frozen":[0,1]})"),
        std::invalid_argument);
    // n_sub not a power of two
    CHECK_THROWS_AS(
        spec_from_json_text(R"({"version":1,"n_sub":12,"k_total":100,"default_frozen":[0,1]})"),
        std::invalid_argument);
    // malformed JSON carries the origin marker
    CHECK_THROWS_WITH_AS(spec_from_json_text("{nope", "bad.json"), doctest::Contains("bad.json"),
                         std::invalid_argument);
}

TEST_CASE("encode matches the transform of a hand-placed message") {
    const auto spec = build_product_code(4, 3, 3.0);
    REQUIRE(spec.default_frozen == std::vector<uint32_t>{0});
    // mask: positions with a=0 or b=0 frozen -> info at k in {5,6,7,9,10,11,13,14,15}
    BitVec msg = {1, 0, 1, 0, 1, 1, 0, 0, 1};
    BitVec u(16, 0);
    const std::size_t info_pos[] = {5, 6, 7, 9, 10, 11, 13, 14, 15};
    for (std::size_t i = 0; i < msg.size(); ++i) u[info_pos[i]] = msg[i];
    CHECK(encode_codeword(spec, msg) == gn_transformed(u));
}

TEST_CASE("encode rejects wrong message length and non-separable specs") {
    const auto spec = build_product_code(8, 6, 4.0);
    CHECK_THROWS_AS(encode_codeword(spec, BitVec(35, 0)), std::invalid_argument);
    auto with_override = spec;
    with_override.overrides[{int(GraphId::G), 1}] = {0};
    CHECK_THROWS_AS(encode_codeword(with_override, BitVec(36, 0)), std::invalid_argument);
}
