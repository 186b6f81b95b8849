#include "gncoset/channel_sim.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <stdexcept>
#include <thread>

namespace gncoset {

namespace {

// Frames per scheduling round. Stopping conditions are evaluated only at
// round boundaries, which keeps frame counts independent of the worker
// split (workers only partition the round).
constexpr uint64_t kRoundFrames = 512;

struct Accum {
    uint64_t frames = 0;
    uint64_t block_errors = 0;
    uint64_t bit_errors = 0;
    uint64_t iterations = 0;
    uint64_t all_pass_frames = 0;
    uint64_t subdecode_calls = 0;
    uint64_t sc_invocations = 0;

    void add(const Accum& o) {
        frames += o.frames;
        block_errors += o.block_errors;
        bit_errors += o.bit_errors;
        iterations += o.iterations;
        all_pass_frames += o.all_pass_frames;
        subdecode_calls += o.subdecode_calls;
        sc_invocations += o.sc_invocations;
    }
};

} // namespace

std::vector<double> modulate(const BitVec& bits) {
    std::vector<double> sym(bits.size());
    for (std::size_t i = 0; i < bits.size(); ++i) sym[i] = bits[i] ? -1.0 : 1.0;
    return sym;
}

double awgn_sigma2(double esn0_db) { return std::pow(10.0, -esn0_db / 10.0); }

void add_awgn(std::span<double> symbols, double sigma2, std::mt19937_64& rng) {
    std::normal_distribution<double> noise(0.0, std::sqrt(sigma2));
    for (double& s : symbols) s += noise(rng);
}

std::mt19937_64 frame_rng(uint64_t seed, uint64_t frame_index) {
    std::seed_seq sq{uint32_t(seed), uint32_t(seed >> 32), uint32_t(frame_index),
                     uint32_t(frame_index >> 32)};
    return std::mt19937_64(sq);
}

namespace {

// One frame: draw message, transmit over AWGN, decode, score.
void run_frame(const SimConfig& cfg, FrameDecoder& dec, const std::vector<uint8_t>& frozen_mask,
               double esn0, uint64_t frame_index, Accum& acc) {
    auto rng = frame_rng(cfg.seed, frame_index);
    const std::size_t N = cfg.spec.block_length();

    BitVec msg(cfg.spec.k_total);
    // One 64-bit draw per 64 message bits keeps frame setup cheap.
    uint64_t word = 0;
    for (std::size_t b = 0; b < msg.size(); ++b) {
        if (b % 64 == 0) word = rng();
        msg[b] = uint8_t((word >> (b % 64)) & 1u);
    }

    BitVec u(N, 0);
    std::size_t next = 0;
    for (std::size_t k = 0; k < N; ++k) {
        if (!frozen_mask[k]) u[k] = msg[next++];
    }
    gn_transform(u); // u is now the codeword
    std::vector<double> y = modulate(u);
    const double sigma2 = awgn_sigma2(esn0);
    add_awgn(y, sigma2, rng);

    DecodeResult res = dec.decode(y, sigma2);

    acc.frames += 1;
    acc.iterations += uint64_t(res.stats.iterations_used);
    acc.all_pass_frames += res.stats.all_pass_reached ? 1 : 0;
    acc.subdecode_calls += res.stats.subdecode_calls;
    acc.sc_invocations += res.stats.sc_invocations;

    // Score on the transform-domain info bits.
    gn_transform(res.x_hat); // involution: back to the u domain
    uint64_t biterr = 0;
    next = 0;
    for (std::size_t k = 0; k < N; ++k) {
        if (!frozen_mask[k]) biterr += uint64_t(res.x_hat[k] != msg[next++]);
    }
    acc.bit_errors += biterr;
    acc.block_errors += biterr ? 1 : 0;
}

} // namespace

SimReport run_sweep(const SimConfig& cfg, const std::atomic<bool>* cancel) {
    cfg.spec.validate();
    if (cfg.esn0_db.empty()) throw std::invalid_argument("run_sweep: no Es/N0 points");
    if (cfg.workers < 1) throw std::invalid_argument("run_sweep: workers must be >= 1");
    if (cfg.max_frames == 0) throw std::invalid_argument("run_sweep: max_frames must be >= 1");
    const auto frozen_mask = cfg.spec.frozen_mask(); // also rejects non-separable specs

    const int workers = std::min<int>(cfg.workers, int(kRoundFrames));
    std::vector<FrameDecoder> decoders;
    decoders.reserve(std::size_t(workers));
    for (int w = 0; w < workers; ++w)
        decoders.emplace_back(cfg.spec, cfg.schedule, cfg.quant, cfg.decode);

    SimReport report;
    for (double esn0 : cfg.esn0_db) {
        const auto t0 = std::chrono::steady_clock::now();
        Accum total;
        uint64_t next_frame = 0;
        while (next_frame < cfg.max_frames && total.block_errors < cfg.target_block_errors) {
            if (cancel && cancel->load()) {
                report.interrupted = true;
                break;
            }
            const uint64_t round = std::min(kRoundFrames, cfg.max_frames - next_frame);
            std::vector<Accum> part(static_cast<std::size_t>(workers));
            if (workers == 1) {
                for (uint64_t f = 0; f < round; ++f)
                    run_frame(cfg, decoders[0], frozen_mask, esn0, next_frame + f, part[0]);
            } else {
                std::vector<std::thread> pool;
                pool.reserve(std::size_t(workers));
                for (int w = 0; w < workers; ++w) {
                    const uint64_t lo = round * uint64_t(w) / uint64_t(workers);
                    const uint64_t hi = round * uint64_t(w + 1) / uint64_t(workers);
                    pool.emplace_back([&, w, lo, hi] {
                        for (uint64_t f = lo; f < hi; ++f)
                            run_frame(cfg, decoders[std::size_t(w)], frozen_mask, esn0,
                                      next_frame + f, part[std::size_t(w)]);
                    });
                }
                for (auto& th : pool) th.join();
            }
            for (const auto& p : part) total.add(p);
            next_frame += round;
        }
        const auto t1 = std::chrono::steady_clock::now();

        SnrPointReport pt;
        pt.esn0_db = esn0;
        pt.frames = total.frames;
        pt.block_errors = total.block_errors;
        pt.bit_errors = total.bit_errors;
        const double fr = double(total.frames);
        pt.bler = total.frames ? double(total.block_errors) / fr : 0.0;
        pt.ber = total.frames ? double(total.bit_errors) / (fr * double(cfg.spec.k_total)) : 0.0;
        pt.mean_iterations = total.frames ? double(total.iterations) / fr : 0.0;
        pt.et_rate = total.frames ? double(total.all_pass_frames) / fr : 0.0;
        pt.skip_fraction = total.subdecode_calls
                               ? 1.0 - double(total.sc_invocations) / double(total.subdecode_calls)
                               : 0.0;
        pt.seconds = cfg.measure_time ? std::chrono::duration<double>(t1 - t0).count() : 0.0;
        report.points.push_back(pt);
        if (report.interrupted) break;
    }
    return report;
}

const char* SimReport::csv_header() {
    return "esn0_db,frames,blk_err,bit_err,bler,ber,mean_iters,et_rate,skip_frac,seconds";
}

std::string SimReport::to_csv() const {
    std::string out = csv_header();
    out.push_back('\n');
    char line[256];
    for (const auto& p : points) {
        std::snprintf(line, sizeof(line),
                      "%.3f,%llu,%llu,%llu,%.6e,%.6e,%.6f,%.6f,%.6f,%.3f\n", p.esn0_db,
                      (unsigned long long)p.frames, (unsigned long long)p.block_errors,
                      (unsigned long long)p.bit_errors, p.bler, p.ber, p.mean_iterations,
                      p.et_rate, p.skip_fraction, p.seconds);
        out += line;
    }
    return out;
}

} // namespace gncoset
