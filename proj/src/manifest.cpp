#include "gncoset/manifest.hpp"

#include <chrono>
#include <cstdio>
#include <ctime>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include <json.hpp>

namespace gncoset {

const char* const kToolVersion = "0.1.0";

namespace {

std::string utc_now() {
    const auto now = std::chrono::system_clock::now();
    const std::time_t tt = std::chrono::system_clock::to_time_t(now);
    std::tm tm{};
    gmtime_r(&tt, &tm);
    char buf[48];
    std::snprintf(buf, sizeof(buf), "%04d%02d%02dT%02d%02d%02dZ", tm.tm_year + 1900,
                  tm.tm_mon + 1, tm.tm_mday, tm.tm_hour, tm.tm_min, tm.tm_sec);
    return buf;
}

} // namespace

SimManifest SimManifest::from_config(const SimConfig& cfg) {
    SimManifest m;
    m.config = cfg;
    m.created_utc = utc_now();
    m.tool_version = kToolVersion;
    return m;
}

std::string SimManifest::to_json_text() const {
    nlohmann::json j;
    j["tool"] = "gncoset";
    j["version"] = tool_version;
    j["created_utc"] = created_utc;
    j["spec"] = nlohmann::json::parse(spec_to_json_text(config.spec));
    j["schedule"] = nlohmann::json::parse(config.schedule.to_json_text());
    j["quant"] = config.quant.to_string();
    j["t_max"] = config.decode.t_max;
    j["early_termination"] = config.decode.early_termination;
    j["esn0_db"] = config.esn0_db;
    j["max_frames"] = config.max_frames;
    j["target_block_errors"] = config.target_block_errors;
    j["seed"] = config.seed;
    j["workers"] = config.workers;
    j["measure_time"] = config.measure_time;
    return j.dump(2) + "\n";
}

SimManifest SimManifest::from_json_text(const std::string& text, const std::string& origin) {
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(text);
    } catch (const nlohmann::json::parse_error& e) {
        throw std::invalid_argument(origin + ": " + e.what());
    }
    auto fail = [&](const std::string& msg) -> std::invalid_argument {
        return std::invalid_argument(origin + ": " + msg);
    };
    if (!j.is_object()) throw fail("manifest must be an object");
    for (const char* field : {"spec", "schedule", "quant", "t_max", "esn0_db", "seed",
                              "max_frames", "target_block_errors"}) {
        if (!j.contains(field)) throw fail(std::string("missing field '") + field + "'");
    }
    SimManifest m;
    m.tool_version = j.value("version", "");
    m.created_utc = j.value("created_utc", "");
    m.config.spec = spec_from_json_text(j["spec"].dump(), origin + "#spec");
    m.config.schedule = DampingSchedule::from_json_text(j["schedule"].dump(), origin + "#schedule");
    if (!j["quant"].is_string()) throw fail("'quant' must be a string");
    m.config.quant = QuantSpec::parse(j["quant"].get<std::string>());
    if (!j["t_max"].is_number_integer()) throw fail("'t_max' must be an integer");
    m.config.decode.t_max = j["t_max"].get<int>();
    m.config.decode.early_termination = j.value("early_termination", true);
    if (!j["esn0_db"].is_array() || j["esn0_db"].empty())
        throw fail("'esn0_db' must be a non-empty array");
    m.config.esn0_db.clear();
    for (const auto& v : j["esn0_db"]) {
        if (!v.is_number()) throw fail("'esn0_db' entries must be numeric");
        m.config.esn0_db.push_back(v.get<double>());
    }
    m.config.max_frames = j["max_frames"].get<uint64_t>();
    m.config.target_block_errors = j["target_block_errors"].get<uint64_t>();
    m.config.seed = j["seed"].get<uint64_t>();
    m.config.workers = j.value("workers", 1);
    m.config.measure_time = j.value("measure_time", true);
    return m;
}

SimManifest SimManifest::load(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::invalid_argument("cannot open manifest '" + path + "'");
    std::stringstream ss;
    ss << in.rdbuf();
    return from_json_text(ss.str(), path);
}

void SimManifest::save(const std::string& path) const {
    std::ofstream out(path);
    if (!out) throw std::invalid_argument("cannot write manifest '" + path + "'");
    out << to_json_text();
}

} // namespace gncoset
