#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <string>

#include "gncoset/manifest.hpp"

using namespace gncoset;

namespace {

SimConfig sample_config() {
    SimConfig cfg;
    cfg.spec = build_product_code(32, 29, 6.0, "manifest-sample");
    cfg.spec.overrides[{int(GraphId::G), 2}] = {0, 1, 2, 3};
    cfg.schedule = DampingSchedule{{DampingFactors{0.75, 0.25, 0.75},
                                    DampingFactors{0.5, 0.5, 1.0}}};
    cfg.quant = QuantSpec::fixed(6, 2);
    cfg.decode.t_max = 4;
    cfg.decode.early_termination = false;
    cfg.esn0_db = {4.0, 4.5, 5.0};
    cfg.max_frames = 4096;
    cfg.target_block_errors = 55;
    cfg.seed = 77;
    cfg.workers = 3;
    cfg.measure_time = false;
    return cfg;
}

} // namespace

TEST_CASE("manifest embeds the full configuration and round trips") {
    const auto cfg = sample_config();
    auto man = SimManifest::from_config(cfg);
    CHECK(man.tool_version == std::string(kToolVersion));
    CHECK(!man.created_utc.empty());

    const auto back = SimManifest::from_json_text(man.to_json_text());
    CHECK(back.config.spec.n_sub == cfg.spec.n_sub);
    CHECK(back.config.spec.k_total == cfg.spec.k_total);
    CHECK(back.config.spec.default_frozen == cfg.spec.default_frozen);
    CHECK(back.config.spec.overrides == cfg.spec.overrides);
    CHECK(back.config.spec.label == cfg.spec.label);
    REQUIRE(back.config.schedule.entries.size() == 2);
    CHECK(back.config.schedule.entries[1].gamma == 1.0);
    CHECK(back.config.quant.to_string() == "Q6F2");
    CHECK(back.config.decode.t_max == 4);
    CHECK(back.config.decode.early_termination == false);
    CHECK(back.config.esn0_db == cfg.esn0_db);
    CHECK(back.config.max_frames == cfg.max_frames);
    CHECK(back.config.target_block_errors == cfg.target_block_errors);
    CHECK(back.config.seed == cfg.seed);
    CHECK(back.config.workers == cfg.workers);
    CHECK(back.config.measure_time == cfg.measure_time);
    CHECK(back.tool_version == man.tool_version);
    CHECK(back.created_utc == man.created_utc);
}

TEST_CASE("manifest file save and load") {
    const auto dir = std::filesystem::temp_directory_path() / "gncoset_manifest_test";
    std::filesystem::create_directories(dir);
    const auto path = (dir / "manifest.json").string();
    const auto man = SimManifest::from_config(sample_config());
    man.save(path);
    const auto back = SimManifest::load(path);
    CHECK(back.to_json_text() == man.to_json_text());
    std::filesystem::remove_all(dir);
}

TEST_CASE("replaying a manifest reproduces the sweep byte for byte") {
    auto cfg = sample_config();
    cfg.spec.overrides.clear(); // sweeps need a separable frozen structure
    cfg.esn0_db = {5.0};
    cfg.max_frames = 512;
    cfg.target_block_errors = 1u << 30;
    const auto first = run_sweep(cfg).to_csv();

    const auto man = SimManifest::from_json_text(SimManifest::from_config(cfg).to_json_text());
    auto replay = man.config;
    replay.workers = 4; // worker count is advisory, not part of the result
    const auto second = run_sweep(replay).to_csv();
    CHECK(first == second);
}

TEST_CASE("manifest parser rejects malformed input") {
    CHECK_THROWS_AS(SimManifest::from_json_text("not json"), std::invalid_argument);
    CHECK_THROWS_AS(SimManifest::from_json_text("{}"), std::invalid_argument);
    CHECK_THROWS_AS(SimManifest::load("/nonexistent/manifest.json"), std::invalid_argument);
}
