// Run manifest: the fully resolved simulation configuration, embedded code
// spec and schedule included, so a finished run can be replayed bit-for-bit
// from its output directory alone.
#pragma once

#include <string>

#include "gncoset/channel_sim.hpp"

namespace gncoset {

struct SimManifest {
    SimConfig config;
    std::string created_utc; // metadata only, ignored on replay
    std::string tool_version;

    static SimManifest from_config(const SimConfig& cfg);
    static SimManifest load(const std::string& path);
    void save(const std::string& path) const;
    std::string to_json_text() const;
    static SimManifest from_json_text(const std::string& text,
                                      const std::string& origin = "<string>");
};

extern const char* const kToolVersion;

} // namespace gncoset
