#include "gncoset/pdf.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include <json.hpp>

namespace gncoset {

const DampingFactors& DampingSchedule::at(int t) const {
    if (t < 1) throw std::invalid_argument("damping schedule: iteration index is 1-based");
    if (entries.empty()) throw std::invalid_argument("damping schedule: empty");
    const std::size_t idx = std::min<std::size_t>(std::size_t(t) - 1, entries.size() - 1);
    return entries[idx];
}

DampingSchedule DampingSchedule::constant(double alpha, double beta, double gamma) {
    return DampingSchedule{{DampingFactors{alpha, beta, gamma}}};
}

DampingSchedule DampingSchedule::tuned_default() {
    // Winner of the coarse BLER grid search shipped as tools/tune_damping
    // (n_sub=16, k_sub=14, 7.0 dB, seed 7, 4000 frames per triple). Matches
    // data/damping_default.json.
    return DampingSchedule::constant(0.75, 0.25, 0.75);
}

void DampingSchedule::validate() const {
    if (entries.empty()) throw std::invalid_argument("damping schedule: needs at least one entry");
    for (const auto& f : entries) {
        if (!std::isfinite(f.alpha) || !std::isfinite(f.beta) || !std::isfinite(f.gamma))
            throw std::invalid_argument("damping schedule: factors must be finite");
        if (f.alpha < 0.0 || f.beta < 0.0 || f.gamma < 0.0)
            throw std::invalid_argument("damping schedule: factors must be non-negative");
    }
}

DampingSchedule DampingSchedule::from_json_text(const std::string& text,
                                                const std::string& origin) {
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(text);
    } catch (const nlohmann::json::parse_error& e) {
        throw std::invalid_argument(origin + ": " + e.what());
    }
    auto fail = [&](const std::string& msg) -> std::invalid_argument {
        return std::invalid_argument(origin + ": " + msg);
    };
    // Either a bare array of entries or {"version":1, "entries":[...]}.
    nlohmann::json arr;
    if (j.is_array()) {
        arr = j;
    } else if (j.is_object() && j.contains("entries")) {
        if (j.contains("version") && (!j["version"].is_number_integer() || j["version"].get<int>() != 1))
            throw fail("field 'version' must be the integer 1");
        arr = j["entries"];
    } else {
        throw fail("expected an array of {t, alpha, beta, gamma} entries");
    }
    if (!arr.is_array() || arr.empty()) throw fail("schedule must be a non-empty array");
    DampingSchedule sched;
    int expected_t = 1;
    for (const auto& e : arr) {
        if (!e.is_object()) throw fail("schedule entries must be objects");
        for (const char* field : {"t", "alpha", "beta", "gamma"}) {
            if (!e.contains(field) || !e[field].is_number())
                throw fail(std::string("schedule entry needs numeric field '") + field + "'");
        }
        if (e["t"].get<int>() != expected_t)
            throw fail("schedule entries must cover t = 1, 2, ... consecutively");
        ++expected_t;
        sched.entries.push_back(DampingFactors{e["alpha"].get<double>(), e["beta"].get<double>(),
                                               e["gamma"].get<double>()});
    }
    sched.validate();
    return sched;
}

std::string DampingSchedule::to_json_text() const {
    nlohmann::json arr = nlohmann::json::array();
    for (std::size_t i = 0; i < entries.size(); ++i) {
        arr.push_back({{"t", i + 1},
                       {"alpha", entries[i].alpha},
                       {"beta", entries[i].beta},
                       {"gamma", entries[i].gamma}});
    }
    nlohmann::json j{{"version", 1}, {"entries", arr}};
    return j.dump(2) + "\n";
}

DampingSchedule DampingSchedule::load(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::invalid_argument("cannot open damping schedule '" + path + "'");
    std::stringstream ss;
    ss << in.rdbuf();
    return from_json_text(ss.str(), path);
}

void DampingSchedule::save(const std::string& path) const {
    validate();
    std::ofstream out(path);
    if (!out) throw std::invalid_argument("cannot write damping schedule '" + path + "'");
    out << to_json_text();
}

double delta_select(bool error_flagged, int c_prev, int c_prev2, const DampingFactors& f) {
    if (!error_flagged) return f.gamma;
    return c_prev != c_prev2 ? f.delta() : f.theta();
}

double lgen(double y_quantized, int c_prev, double offset_quantized, const QuantSpec& qs) {
    return sat_add(y_quantized, c_prev ? -offset_quantized : offset_quantized, qs);
}

FrameDecoder::FrameDecoder(CodeSpec spec, DampingSchedule schedule, QuantSpec quant,
                           DecodeOptions opts)
    : spec_(std::move(spec)), schedule_(std::move(schedule)), quant_(quant), opts_(opts) {
    spec_.validate();
    schedule_.validate();
    if (opts_.t_max < 1) throw std::invalid_argument("decode options: t_max must be >= 1");
    if (opts_.unscaled_llrs && !quant_.float_mode)
        throw std::invalid_argument("decode options: the unscaled LLR form is float-only");
    const std::size_t n = spec_.n_sub;
    for (GraphId g : {GraphId::G, GraphId::Gpi}) {
        auto& bank = subs_[std::size_t(g)];
        bank.reserve(n);
        for (std::size_t i = 0; i < n; ++i)
            bank.emplace_back(spec_.frozen_set(g, i), n, opts_.sc, quant_);
    }
    y_q_.resize(spec_.block_length());
    llr_.resize(n);
    c_curr_.resize(spec_.block_length());
    c_prev_.resize(spec_.block_length());
    c_prev2_.resize(spec_.block_length());
    c_sub_.resize(n);
    e_prev_.resize(n);
    e_curr_.resize(n);
}

DecodeResult FrameDecoder::decode(std::span<const double> y, double sigma2) {
    const std::size_t n = spec_.n_sub;
    const std::size_t N = spec_.block_length();
    if (y.size() != N)
        throw std::invalid_argument("decode: expected " + std::to_string(N) + " channel values");
    if (opts_.unscaled_llrs && !(sigma2 > 0.0))
        throw std::invalid_argument("decode: unscaled LLR form needs sigma2 > 0");

    const double ch_gain = opts_.unscaled_llrs ? 2.0 / sigma2 : 1.0;
    for (std::size_t k = 0; k < N; ++k) y_q_[k] = quantize(ch_gain * y[k], quant_);
    std::fill(c_prev_.begin(), c_prev_.end(), uint8_t{0});
    std::fill(c_curr_.begin(), c_curr_.end(), uint8_t{0});
    std::fill(e_curr_.begin(), e_curr_.end(), uint8_t{0});

    DecodeResult res;
    res.stats.worst_case_iterations = opts_.t_max;

    for (int t = 1; t <= opts_.t_max; ++t) {
        if (t > 1) {
            std::swap(c_prev2_, c_prev_);
            std::swap(c_prev_, c_curr_);
            std::swap(e_prev_, e_curr_);
        }
        const GraphId graph = (t % 2 == 1) ? GraphId::G : GraphId::Gpi;
        const DampingFactors& f = schedule_.at(t);
        const double off_delta = quantize(ch_gain * f.delta(), quant_);
        const double off_theta = quantize(ch_gain * f.theta(), quant_);
        const double off_gamma = quantize(ch_gain * f.gamma, quant_);

        // Sub-code i of graph G reads global positions i, i+n, ...; of graph
        // Gpi the contiguous run starting at i*n. Equals map_index(i, j).
        const bool contiguous = graph == GraphId::Gpi;

        uint32_t sc_count = 0;
        bool all_pass = true;
        auto& bank = subs_[std::size_t(graph)];
        for (std::size_t i = 0; i < n; ++i) {
            const std::size_t start = contiguous ? i * n : i;
            const std::size_t stride = contiguous ? 1 : n;
            if (t == 1) {
                for (std::size_t j = 0, k = start; j < n; ++j, k += stride) llr_[j] = y_q_[k];
            } else {
                // Position k sat in sub-code j of the other graph last pass,
                // so that pass's error flag gates the offset choice.
                for (std::size_t j = 0, k = start; j < n; ++j, k += stride) {
                    const int c1 = c_prev_[k];
                    const double off = e_prev_[j] ? (c1 != c_prev2_[k] ? off_delta : off_theta)
                                                  : off_gamma;
                    llr_[j] = lgen(y_q_[k], c1, off, quant_);
                }
            }
            bool err = false, invoked = false;
            uint8_t* out = contiguous ? &c_curr_[start] : c_sub_.data();
            bank[i].subdecode_into(llr_, {out, n}, err, invoked);
            if (!contiguous) {
                for (std::size_t j = 0, k = start; j < n; ++j, k += stride) c_curr_[k] = c_sub_[j];
            }
            e_curr_[i] = uint8_t(err);
            sc_count += invoked;
            all_pass = all_pass && !err;
        }
        res.stats.iterations_used = t;
        res.stats.sc_per_iteration.push_back(sc_count);
        res.stats.subdecode_calls += n;
        res.stats.sc_invocations += sc_count;
        if (all_pass) {
            res.stats.all_pass_reached = true;
            if (opts_.early_termination) {
                res.stats.early_terminated = t < opts_.t_max;
                break;
            }
        }
    }

    res.x_hat = c_curr_;
    return res;
}

DecodeResult decode_frame(std::span<const double> y, const CodeSpec& spec,
                          const DampingSchedule& schedule, QuantSpec quant,
                          const DecodeOptions& opts, double sigma2) {
    FrameDecoder dec(spec, schedule, quant, opts);
    return dec.decode(y, sigma2);
}

BitVec recover_message(const BitVec& x_hat, const CodeSpec& spec) {
    if (x_hat.size() != spec.block_length())
        throw std::invalid_argument("recover_message: estimate length != N");
    const auto mask = spec.frozen_mask();
    BitVec u = gn_transformed(x_hat);
    BitVec msg;
    msg.reserve(spec.k_total);
    for (std::size_t k = 0; k < u.size(); ++k) {
        if (!mask[k]) msg.push_back(u[k]);
    }
    return msg;
}

} // namespace gncoset
