// Code construction: synthetic-channel reliability ordering and the product
// frozen-set layout, plus the on-disk code-spec format.
#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "gncoset/gn_core.hpp"

namespace gncoset {

// Mean decision LLRs of the 2^n synthetic channels of a length-n_sub kernel
// over BPSK/AWGN at the given design Es/N0, via the density-evolution
// mean recursion under a Gaussian assumption.
std::vector<double> gaussian_approx_means(std::size_t n_sub, double design_esn0_db);

// Channel indices sorted least reliable first, most reliable last.
// Ties (possible once means saturate) break toward the lower index.
std::vector<uint32_t> reliability_order(std::size_t n_sub, double design_esn0_db);

// A code over N = n_sub^2 bits: one default frozen set shared by all
// sub-codes, plus optional per-(graph, sub-code) overrides.
struct CodeSpec {
    std::size_t n_sub = 0;
    std::size_t k_total = 0;
    std::vector<uint32_t> default_frozen; // sorted ascending
    // key: (graph, sub-code index)
    std::map<std::pair<int, uint32_t>, std::vector<uint32_t>> overrides;
    std::string label;

    std::size_t block_length() const { return n_sub * n_sub; }
    std::size_t k_sub_default() const { return n_sub - default_frozen.size(); }

    const std::vector<uint32_t>& frozen_set(GraphId graph, std::size_t i) const;

    // True when every sub-code of a graph shares one frozen set. Encoding
    // and message recovery are defined only for such specs.
    bool separable() const;

    // Length-N mask over transform-domain positions k = a*n_sub + b:
    // frozen when a is G-frozen or b is Gpi-frozen. Requires separable().
    std::vector<uint8_t> frozen_mask() const;

    // Throws std::invalid_argument on any structural violation.
    void validate() const;
};

// Product construction: freeze the n_sub - k_sub least reliable channels of
// every sub-code on both graphs, giving K = k_sub^2.
CodeSpec build_product_code(std::size_t n_sub, std::size_t k_sub,
                            double design_esn0_db, std::string label = "");

CodeSpec load_spec(const std::string& path);
void save_spec(const CodeSpec& spec, const std::string& path);
CodeSpec spec_from_json_text(const std::string& text, const std::string& origin = "<string>");
std::string spec_to_json_text(const CodeSpec& spec);

// Message bits -> codeword, info positions filled in ascending k order.
BitVec encode_codeword(const CodeSpec& spec, const BitVec& message);

} // namespace gncoset
