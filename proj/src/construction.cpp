#include "gncoset/construction.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <numeric>
#include <sstream>
#include <stdexcept>

#include <json.hpp>

namespace gncoset {

namespace {

// Two-piece fit of phi(x) = 1 - E[tanh(L/2)] for L ~ N(x, 2x), accurate to
// about 2% relative error over the working range; the branch point is where
// the pieces cross. Means that saturate phi to zero propagate as +inf and
// sort as most reliable, which is the intended reading.
double ga_phi(double x) {
    if (x < 0.867861) return std::exp(0.0564 * x * x - 0.48560 * x);
    return std::exp(-0.4527 * std::pow(x, 0.86) + 0.0218);
}

double ga_phi_inv(double y) {
    if (y > 0.6846)
        return 4.304964539 * (1.0 - std::sqrt(1.0 + 0.9567131408 * std::log(y)));
    return std::pow((0.0218 - std::log(y)) / 0.4527, 1.0 / 0.86);
}

std::pair<int, uint32_t> override_key(GraphId g, std::size_t i) {
    return {int(g), uint32_t(i)};
}

void require_sorted_unique_in_range(const std::vector<uint32_t>& v, std::size_t n_sub,
                                    const std::string& what) {
    for (std::size_t idx = 0; idx < v.size(); ++idx) {
        if (v[idx] >= n_sub)
            throw std::invalid_argument(what + ": frozen index " + std::to_string(v[idx]) +
                                        " out of range for n_sub " + std::to_string(n_sub));
        if (idx > 0 && v[idx] <= v[idx - 1])
            throw std::invalid_argument(what + ": frozen indices must be strictly ascending");
    }
}

} // namespace

std::vector<double> gaussian_approx_means(std::size_t n_sub, double design_esn0_db) {
    if (!is_pow2(n_sub) || n_sub < 2 || n_sub > 1024)
        throw std::invalid_argument("gaussian_approx_means: n_sub must be a power of two in [2, 1024]");
    const double sigma2 = std::pow(10.0, -design_esn0_db / 10.0);
    std::vector<double> m{2.0 / sigma2};
    while (m.size() < n_sub) {
        std::vector<double> next(m.size() * 2);
        for (std::size_t i = 0; i < m.size(); ++i) {
            const double p = ga_phi(m[i]);
            // 1 - (1-p)^2 written cancellation-free; p underflows around
            // means of 5500, far past any working design point.
            next[2 * i] = ga_phi_inv(p * (2.0 - p));
            next[2 * i + 1] = 2.0 * m[i];
        }
        m = std::move(next);
    }
    return m;
}

std::vector<uint32_t> reliability_order(std::size_t n_sub, double design_esn0_db) {
    const auto means = gaussian_approx_means(n_sub, design_esn0_db);
    std::vector<uint32_t> order(n_sub);
    std::iota(order.begin(), order.end(), 0u);
    std::stable_sort(order.begin(), order.end(),
                     [&](uint32_t a, uint32_t b) { return means[a] < means[b]; });
    return order;
}

const std::vector<uint32_t>& CodeSpec::frozen_set(GraphId graph, std::size_t i) const {
    const auto it = overrides.find(override_key(graph, i));
    return it == overrides.end() ? default_frozen : it->second;
}

bool CodeSpec::separable() const {
    for (GraphId g : {GraphId::G, GraphId::Gpi}) {
        const auto& first = frozen_set(g, 0);
        for (std::size_t i = 1; i < n_sub; ++i) {
            if (frozen_set(g, i) != first) return false;
        }
    }
    return true;
}

std::vector<uint8_t> CodeSpec::frozen_mask() const {
    if (!separable())
        throw std::invalid_argument("frozen_mask: spec has per-sub-code overrides; no single "
                                    "transform-domain info set exists");
    const auto& fg = frozen_set(GraphId::G, 0);
    const auto& fp = frozen_set(GraphId::Gpi, 0);
    std::vector<uint8_t> row_frozen(n_sub, 0), col_frozen(n_sub, 0);
    for (uint32_t a : fg) row_frozen[a] = 1;
    for (uint32_t b : fp) col_frozen[b] = 1;
    std::vector<uint8_t> mask(block_length(), 0);
    for (std::size_t a = 0; a < n_sub; ++a) {
        for (std::size_t b = 0; b < n_sub; ++b) {
            mask[a * n_sub + b] = uint8_t(row_frozen[a] | col_frozen[b]);
        }
    }
    return mask;
}

void CodeSpec::validate() const {
    if (!is_pow2(n_sub) || n_sub < 2 || n_sub > 1024)
        throw std::invalid_argument("code spec: n_sub must be a power of two in [2, 1024]");
    require_sorted_unique_in_range(default_frozen, n_sub, "code spec default_frozen");
    for (const auto& [key, set] : overrides) {
        if (key.first != int(GraphId::G) && key.first != int(GraphId::Gpi))
            throw std::invalid_argument("code spec: override graph id out of range");
        if (key.second >= n_sub)
            throw std::invalid_argument("code spec: override sub-code index out of range");
        require_sorted_unique_in_range(set, n_sub, "code spec override");
    }
    if (k_total == 0 || k_total > block_length())
        throw std::invalid_argument("code spec: k_total out of range");
    if (separable()) {
        const std::size_t kg = n_sub - frozen_set(GraphId::G, 0).size();
        const std::size_t kp = n_sub - frozen_set(GraphId::Gpi, 0).size();
        if (k_total != kg * kp)
            throw std::invalid_argument("code spec: k_total " + std::to_string(k_total) +
                                        " does not match the product info count " +
                                        std::to_string(kg * kp));
    }
}

CodeSpec build_product_code(std::size_t n_sub, std::size_t k_sub,
                            double design_esn0_db, std::string label) {
    if (k_sub == 0 || k_sub > n_sub)
        throw std::invalid_argument("build_product_code: k_sub must be in [1, n_sub]");
    const auto order = reliability_order(n_sub, design_esn0_db);
    std::vector<uint32_t> frozen(order.begin(), order.begin() + (n_sub - k_sub));
    std::sort(frozen.begin(), frozen.end());
    CodeSpec spec;
    spec.n_sub = n_sub;
    spec.k_total = k_sub * k_sub;
    spec.default_frozen = std::move(frozen);
    spec.label = label.empty() ? "product-" + std::to_string(n_sub) + "-" + std::to_string(k_sub)
                               : std::move(label);
    spec.validate();
    return spec;
}

CodeSpec spec_from_json_text(const std::string& text, const std::string& origin) {
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(text);
    } catch (const nlohmann::json::parse_error& e) {
        throw std::invalid_argument(origin + ": " + e.what());
    }
    auto fail = [&](const std::string& msg) -> std::invalid_argument {
        return std::invalid_argument(origin + ": " + msg);
    };
    if (!j.is_object()) throw fail("top level must be an object");
    if (!j.contains("version") || !j["version"].is_number_integer() || j["version"].get<int>() != 1)
        throw fail("field 'version' must be the integer 1");
    CodeSpec spec;
    for (const char* field : {"n_sub", "k_total"}) {
        if (!j.contains(field) || !j[field].is_number_unsigned())
            throw fail(std::string("field '") + field + "' must be a non-negative integer");
    }
    spec.n_sub = j["n_sub"].get<std::size_t>();
    spec.k_total = j["k_total"].get<std::size_t>();
    if (!j.contains("default_frozen") || !j["default_frozen"].is_array())
        throw fail("field 'default_frozen' must be an array");
    for (const auto& v : j["default_frozen"]) {
        if (!v.is_number_unsigned()) throw fail("default_frozen entries must be non-negative integers");
        spec.default_frozen.push_back(v.get<uint32_t>());
    }
    if (j.contains("label")) {
        if (!j["label"].is_string()) throw fail("field 'label' must be a string");
        spec.label = j["label"].get<std::string>();
    }
    if (j.contains("overrides")) {
        if (!j["overrides"].is_array()) throw fail("field 'overrides' must be an array");
        for (const auto& o : j["overrides"]) {
            if (!o.is_object() || !o.contains("graph") || !o.contains("i") || !o.contains("frozen"))
                throw fail("override entries need fields 'graph', 'i', 'frozen'");
            if (!o["graph"].is_string()) throw fail("override 'graph' must be \"G\" or \"Gpi\"");
            GraphId g;
            try {
                g = graph_from_name(o["graph"].get<std::string>());
            } catch (const std::invalid_argument& e) {
                throw fail(e.what());
            }
            if (!o["i"].is_number_unsigned()) throw fail("override 'i' must be a non-negative integer");
            if (!o["frozen"].is_array()) throw fail("override 'frozen' must be an array");
            std::vector<uint32_t> set;
            for (const auto& v : o["frozen"]) {
                if (!v.is_number_unsigned()) throw fail("override frozen entries must be non-negative integers");
                set.push_back(v.get<uint32_t>());
            }
            const auto key = override_key(g, o["i"].get<std::size_t>());
            if (!spec.overrides.emplace(key, std::move(set)).second)
                throw fail("duplicate override for graph " + o["graph"].get<std::string>() +
                           ", sub-code " + std::to_string(key.second));
        }
    }
    try {
        spec.validate();
    } catch (const std::invalid_argument& e) {
        throw fail(e.what());
    }
    return spec;
}

std::string spec_to_json_text(const CodeSpec& spec) {
    nlohmann::json j;
    j["version"] = 1;
    j["n_sub"] = spec.n_sub;
    j["k_total"] = spec.k_total;
    j["default_frozen"] = spec.default_frozen;
    j["label"] = spec.label;
    if (!spec.overrides.empty()) {
        auto& arr = j["overrides"] = nlohmann::json::array();
        for (const auto& [key, set] : spec.overrides) {
            arr.push_back({{"graph", graph_name(GraphId(key.first))},
                           {"i", key.second},
                           {"frozen", set}});
        }
    }
    return j.dump(2) + "\n";
}

CodeSpec load_spec(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::invalid_argument("cannot open code spec '" + path + "'");
    std::stringstream ss;
    ss << in.rdbuf();
    return spec_from_json_text(ss.str(), path);
}

void save_spec(const CodeSpec& spec, const std::string& path) {
    spec.validate();
    std::ofstream out(path);
    if (!out) throw std::invalid_argument("cannot write code spec '" + path + "'");
    out << spec_to_json_text(spec);
}

BitVec encode_codeword(const CodeSpec& spec, const BitVec& message) {
    if (message.size() != spec.k_total)
        throw std::invalid_argument("encode_codeword: message length " +
                                    std::to_string(message.size()) + " != k_total " +
                                    std::to_string(spec.k_total));
    const auto mask = spec.frozen_mask();
    BitVec u(spec.block_length(), 0);
    std::size_t next = 0;
    for (std::size_t k = 0; k < u.size(); ++k) {
        if (!mask[k]) {
            if (next >= message.size())
                throw std::invalid_argument("encode_codeword: spec info count exceeds k_total");
            u[k] = uint8_t(message[next++] & 1u);
        }
    }
    if (next != message.size())
        throw std::invalid_argument("encode_codeword: spec info count is below k_total");
    gn_transform(u);
    return u;
}

} // namespace gncoset
