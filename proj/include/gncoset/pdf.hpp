// Frame decoding: alternate component-code passes over the two graphs,
// regenerating each pass's input LLRs from the channel values and the two
// previous hard estimates through damped offsets.
#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "gncoset/component_sc.hpp"
#include "gncoset/construction.hpp"
#include "gncoset/gn_core.hpp"
#include "gncoset/quant.hpp"

namespace gncoset {

struct DampingFactors {
    double alpha = 0.0;
    double beta = 0.0;
    double gamma = 0.0;

    // Offset applied when the previous pass flagged the sub-code.
    double delta() const { return alpha + beta; }  // previous estimates disagree
    double theta() const { return alpha - beta; }  // previous estimates agree
    bool operator==(const DampingFactors&) const = default;
};

// Per-iteration factors, 1-based; iterations past the last entry reuse it.
struct DampingSchedule {
    std::vector<DampingFactors> entries;

    const DampingFactors& at(int t) const;
    static DampingSchedule constant(double alpha, double beta, double gamma);
    // The shipped default, produced by tools/tune_damping.
    static DampingSchedule tuned_default();
    static DampingSchedule load(const std::string& path);
    static DampingSchedule from_json_text(const std::string& text,
                                          const std::string& origin = "<string>");
    void save(const std::string& path) const;
    std::string to_json_text() const;
    void validate() const;
    bool operator==(const DampingSchedule&) const = default;
};

// Offset magnitude for one regenerated LLR: delta/theta when the sub-code
// was flagged (estimates disagreeing/agreeing), gamma when it passed.
double delta_select(bool error_flagged, int c_prev, int c_prev2, const DampingFactors& f);

// One regenerated LLR in the scaled domain: y + offset*(1-2*c_prev).
double lgen(double y_quantized, int c_prev, double offset_quantized, const QuantSpec& qs);

struct DecodeOptions {
    int t_max = 5;
    bool early_termination = true;
    ScOptions sc{};
    // Float-mode reference that keeps the explicit 2/sigma^2 channel factor
    // instead of the scale-cancelled form.
    bool unscaled_llrs = false;
};

struct DecodeStats {
    int iterations_used = 0;
    int worst_case_iterations = 0;
    bool early_terminated = false;  // stopped before t_max on an all-pass
    bool all_pass_reached = false;  // some iteration had every syndrome pass
    uint64_t subdecode_calls = 0;
    uint64_t sc_invocations = 0;
    std::vector<uint32_t> sc_per_iteration;
};

struct DecodeResult {
    BitVec x_hat; // codeword-domain estimate, length N
    DecodeStats stats;
};

// Reusable frame decoder; owns all component decoders and scratch, so one
// instance decodes any number of frames without allocating.
class FrameDecoder {
public:
    FrameDecoder(CodeSpec spec, DampingSchedule schedule, QuantSpec quant,
                 DecodeOptions opts = {});

    // y holds N channel observations (BPSK +1 for bit 0); sigma2 is only
    // read by the unscaled reference mode.
    DecodeResult decode(std::span<const double> y, double sigma2 = 1.0);

    const CodeSpec& spec() const { return spec_; }
    const DecodeOptions& options() const { return opts_; }
    const QuantSpec& quant() const { return quant_; }

private:
    CodeSpec spec_;
    DampingSchedule schedule_;
    QuantSpec quant_;
    DecodeOptions opts_;
    std::vector<ComponentDecoder> subs_[2]; // per graph, per sub-code
    std::vector<double> y_q_, llr_;
    BitVec c_curr_, c_prev_, c_prev2_, c_sub_;
    std::vector<uint8_t> e_prev_, e_curr_;
};

// One-off convenience wrapper around FrameDecoder.
DecodeResult decode_frame(std::span<const double> y, const CodeSpec& spec,
                          const DampingSchedule& schedule, QuantSpec quant,
                          const DecodeOptions& opts = {}, double sigma2 = 1.0);

// Transform-domain info bits of a codeword estimate, ascending position.
BitVec recover_message(const BitVec& x_hat, const CodeSpec& spec);

} // namespace gncoset
