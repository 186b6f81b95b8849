// Component-code machinery: special-node classification of a frozen pattern,
// hard-decision syndrome check, and a fast simplified SC decoder that falls
// back to plain SC semantics when the shortcuts are disabled.
#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "gncoset/gn_core.hpp"
#include "gncoset/quant.hpp"

namespace gncoset {

enum class NodeKind : uint8_t { Rate0, Rate1, Rep, Spc, Ml4, Branch };

const char* node_kind_name(NodeKind k);

struct ScNode {
    NodeKind kind;
    uint32_t start = 0; // leaf-domain offset of the span
    uint32_t len = 0;
    int32_t left = -1; // child indices into NodePlan::nodes, Branch only
    int32_t right = -1;
};

struct ScOptions {
    bool fast = true;       // false: descend to single-bit leaves everywhere
    bool enable_spc = true; // single-parity-check shortcut
    bool enable_ml4 = true; // exhaustive length-4 maximum-likelihood leaf
    uint32_t special_max_len = 32; // Rate1/Rep/Spc only strictly below this
    bool use_boxplus = false;      // exact check-node update, float mode only

    bool operator==(const ScOptions&) const = default;
};

// Pre-order decision tree over a frozen pattern; nodes[0] is the root.
struct NodePlan {
    std::vector<ScNode> nodes;
    uint32_t n_sub = 0;

    std::size_t count(NodeKind k) const;
};

NodePlan classify(const std::vector<uint32_t>& frozen, std::size_t n_sub,
                  const ScOptions& opt = {});

struct SubDecodeResult {
    BitVec c_hat;        // code-bit domain estimate
    bool error_detected; // syndrome failed on the hard decisions
    bool sc_invoked;     // decoder actually ran (only after a failed check)
};

// One sub-code's decoder; owns its scratch so instances can be reused
// across many calls without allocation.
class ComponentDecoder {
public:
    ComponentDecoder(std::vector<uint32_t> frozen, std::size_t n_sub,
                     ScOptions opt = {}, QuantSpec quant = QuantSpec::floating());

    const NodePlan& plan() const { return plan_; }
    const std::vector<uint32_t>& frozen() const { return frozen_; }

    // Hard decisions against the frozen constraints; true means error.
    bool syndrome_check(std::span<const uint8_t> c_hat);

    // Full SC pass; always emits a valid codeword of the sub-code.
    BitVec sc_decode(std::span<const double> llr);

    // Hard decisions, syndrome check, SC only on a detected error.
    SubDecodeResult subdecode(std::span<const double> llr);
    // Same, writing into caller storage (c_hat must be n_sub long).
    void subdecode_into(std::span<const double> llr, std::span<uint8_t> c_hat,
                        bool& error_detected, bool& sc_invoked);

private:
    void decode_node(int32_t idx, unsigned depth, const double* alpha, uint8_t* beta);

    std::vector<uint32_t> frozen_;
    std::vector<uint8_t> is_frozen_;
    std::size_t n_sub_;
    ScOptions opt_;
    QuantSpec quant_;
    NodePlan plan_;
    std::vector<std::vector<double>> alpha_;       // per-depth child LLR buffers
    std::vector<std::vector<uint8_t>> ml_words_;   // per-node Ml4 candidate codewords
    std::vector<int32_t> ml_slot_;                 // node index -> ml_words_ row, -1 otherwise
    std::vector<uint8_t> synd_;                    // syndrome scratch
};

// Conveniences for one-off calls; they build a throwaway decoder.
bool syndrome_check(std::span<const uint8_t> c_hat, const std::vector<uint32_t>& frozen);
BitVec sc_decode(std::span<const double> llr, const std::vector<uint32_t>& frozen,
                 const ScOptions& opt = {}, QuantSpec quant = QuantSpec::floating());
SubDecodeResult subdecode(std::span<const double> llr, const std::vector<uint32_t>& frozen,
                          const ScOptions& opt = {}, QuantSpec quant = QuantSpec::floating());

} // namespace gncoset
