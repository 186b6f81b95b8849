#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <atomic>
#include <cmath>
#include <sstream>
#include <string>

#include "gncoset/channel_sim.hpp"
#include "gncoset/construction.hpp"

using namespace gncoset;

namespace {

SimConfig small_config() {
    SimConfig cfg;
    cfg.spec = build_product_code(16, 14, 6.3);
    cfg.quant = QuantSpec::floating();
    cfg.decode.t_max = 5;
    cfg.esn0_db = {5.0, 7.0};
    cfg.max_frames = 1024;
    cfg.target_block_errors = 100000; // fixed batch
    cfg.seed = 11;
    cfg.measure_time = false;
    return cfg;
}

std::size_t count_fields(const std::string& line) {
    return std::size_t(std::count(line.begin(), line.end(), ',')) + 1;
}

} // namespace

TEST_CASE("modulate maps 0 to +1 and 1 to -1") {
    const auto sym = modulate(BitVec{0, 1, 1, 0});
    CHECK(sym == std::vector<double>{1.0, -1.0, -1.0, 1.0});
}

TEST_CASE("noise variance follows the Es/N0 definition") {
    CHECK(awgn_sigma2(0.0) == doctest::Approx(1.0));
    CHECK(awgn_sigma2(10.0) == doctest::Approx(0.1));
    CHECK(awgn_sigma2(6.3) == doctest::Approx(0.2344228815));
    CHECK(awgn_sigma2(-3.0) == doctest::Approx(1.9952623150));
}

TEST_CASE("add_awgn matches the requested variance") {
    auto rng = frame_rng(3, 0);
    std::vector<double> x(200000, 0.0);
    add_awgn(x, 0.25, rng);
    double mean = 0.0, var = 0.0;
    for (double v : x) mean += v;
    mean /= double(x.size());
    for (double v : x) var += (v - mean) * (v - mean);
    var /= double(x.size());
    CHECK(std::abs(mean) < 0.01);
    CHECK(var == doctest::Approx(0.25).epsilon(0.02));
}

TEST_CASE("frame RNG is a pure function of seed and frame index") {
    auto a = frame_rng(42, 7);
    auto b = frame_rng(42, 7);
    for (int i = 0; i < 64; ++i) CHECK(a() == b());

    auto c = frame_rng(42, 8);
    auto d = frame_rng(43, 7);
    bool differs_frame = false, differs_seed = false;
    auto e = frame_rng(42, 7);
    for (int i = 0; i < 64; ++i) {
        const uint64_t r = e();
        differs_frame |= (c() != r);
        differs_seed |= (d() != r);
    }
    CHECK(differs_frame);
    CHECK(differs_seed);

    // High halves participate in the keying.
    auto hi = frame_rng(42, 7 | (uint64_t(1) << 40));
    bool differs_hi = false;
    auto f = frame_rng(42, 7);
    for (int i = 0; i < 64; ++i) differs_hi |= (hi() != f());
    CHECK(differs_hi);
}

TEST_CASE("sweep results do not depend on the worker count") {
    auto cfg = small_config();
    cfg.workers = 1;
    const auto one = run_sweep(cfg);
    cfg.workers = 3;
    const auto three = run_sweep(cfg);
    cfg.workers = 8;
    const auto eight = run_sweep(cfg);
    CHECK(one.to_csv() == three.to_csv());
    CHECK(one.to_csv() == eight.to_csv());
    CHECK(!one.interrupted);
}

TEST_CASE("sweep results depend on the seed") {
    auto cfg = small_config();
    cfg.esn0_db = {5.0};
    const auto a = run_sweep(cfg);
    cfg.seed = 12;
    const auto b = run_sweep(cfg);
    CHECK(a.to_csv() != b.to_csv());
}

TEST_CASE("replay with timing disabled is byte-identical") {
    auto cfg = small_config();
    const std::string first = run_sweep(cfg).to_csv();
    const std::string second = run_sweep(cfg).to_csv();
    CHECK(first == second);
}

TEST_CASE("error-target stopping lands on a round boundary") {
    auto cfg = small_config();
    cfg.esn0_db = {4.0}; // high BLER, target reached in the first rounds
    cfg.max_frames = 1u << 20;
    cfg.target_block_errors = 50;
    const auto rep = run_sweep(cfg);
    REQUIRE(rep.points.size() == 1);
    const auto& pt = rep.points[0];
    CHECK(pt.block_errors >= 50);
    CHECK(pt.frames % 512 == 0);
    CHECK(pt.frames < cfg.max_frames);
}

TEST_CASE("frame cap is honored exactly even off the round size") {
    auto cfg = small_config();
    cfg.esn0_db = {4.0};
    cfg.max_frames = 700; // not a multiple of the 512-frame round
    cfg.target_block_errors = 1u << 30;
    const auto rep = run_sweep(cfg);
    CHECK(rep.points[0].frames == 700);
}

TEST_CASE("report fields are internally consistent") {
    auto cfg = small_config();
    cfg.esn0_db = {6.0};
    const auto rep = run_sweep(cfg);
    const auto& pt = rep.points[0];
    CHECK(pt.esn0_db == 6.0);
    CHECK(pt.frames == 1024);
    CHECK(pt.bler == doctest::Approx(double(pt.block_errors) / double(pt.frames)));
    CHECK(pt.ber ==
          doctest::Approx(double(pt.bit_errors) / (double(pt.frames) * double(cfg.spec.k_total))));
    CHECK(pt.bit_errors >= pt.block_errors);
    CHECK(pt.mean_iterations >= 1.0);
    CHECK(pt.mean_iterations <= double(cfg.decode.t_max));
    CHECK(pt.skip_fraction >= 0.0);
    CHECK(pt.skip_fraction <= 1.0);
    CHECK(pt.seconds == 0.0);
}

TEST_CASE("CSV schema is pinned") {
    CHECK(std::string(SimReport::csv_header()) ==
          "esn0_db,frames,blk_err,bit_err,bler,ber,mean_iters,et_rate,skip_frac,seconds");

    auto cfg = small_config();
    cfg.esn0_db = {5.0};
    cfg.max_frames = 512;
    const auto rep = run_sweep(cfg);
    std::istringstream lines(rep.to_csv());
    std::string header, row, extra;
    REQUIRE(std::getline(lines, header));
    REQUIRE(std::getline(lines, row));
    CHECK(!std::getline(lines, extra));
    CHECK(header == SimReport::csv_header());
    CHECK(count_fields(row) == 10);
    CHECK(row.substr(0, 10) == "5.000,512,");
    CHECK(row.substr(row.size() - 6) == ",0.000"); // pinned seconds column
}

TEST_CASE("cancellation interrupts the sweep and flags the report") {
    auto cfg = small_config();
    cfg.esn0_db = {5.0, 6.0, 7.0};
    std::atomic<bool> stop{true};
    const auto rep = run_sweep(cfg, &stop);
    CHECK(rep.interrupted);
    CHECK(rep.points.size() < 3);
    CHECK(rep.points[0].frames == 0);
}

TEST_CASE("sweep rejects invalid configurations") {
    auto cfg = small_config();
    cfg.esn0_db.clear();
    CHECK_THROWS_AS(run_sweep(cfg), std::invalid_argument);
    cfg = small_config();
    cfg.workers = 0;
    CHECK_THROWS_AS(run_sweep(cfg), std::invalid_argument);
    cfg = small_config();
    cfg.max_frames = 0;
    CHECK_THROWS_AS(run_sweep(cfg), std::invalid_argument);
}
