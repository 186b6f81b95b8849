// BPSK/AWGN Monte-Carlo harness. Frames draw their randomness from a
// substream keyed by (seed, frame index), and sweeps advance in fixed-size
// frame rounds, so results do not depend on the worker count.
#pragma once

#include <atomic>
#include <cstdint>
#include <random>
#include <span>
#include <string>
#include <vector>

#include "gncoset/construction.hpp"
#include "gncoset/pdf.hpp"
#include "gncoset/quant.hpp"

namespace gncoset {

// BPSK: bit 0 -> +1, bit 1 -> -1.
std::vector<double> modulate(const BitVec& bits);

// Noise variance per real symbol at the given Es/N0.
double awgn_sigma2(double esn0_db);
void add_awgn(std::span<double> symbols, double sigma2, std::mt19937_64& rng);

// Deterministic per-frame generator: identical for a (seed, frame) pair
// regardless of which worker runs the frame.
std::mt19937_64 frame_rng(uint64_t seed, uint64_t frame_index);

struct SimConfig {
    CodeSpec spec;
    DampingSchedule schedule = DampingSchedule::tuned_default();
    QuantSpec quant = QuantSpec::floating();
    DecodeOptions decode{};
    std::vector<double> esn0_db;
    uint64_t max_frames = 1000000;
    uint64_t target_block_errors = 100;
    uint64_t seed = 1;
    int workers = 1;
    bool measure_time = true; // false pins the seconds column to 0.000
};

struct SnrPointReport {
    double esn0_db = 0.0;
    uint64_t frames = 0;
    uint64_t block_errors = 0;
    uint64_t bit_errors = 0;
    double bler = 0.0;
    double ber = 0.0;
    double mean_iterations = 0.0;
    double et_rate = 0.0;      // fraction of frames whose syndromes all passed
    double skip_fraction = 0.0; // sub-decoder calls that skipped the SC pass
    double seconds = 0.0;
};

struct SimReport {
    std::vector<SnrPointReport> points;
    bool interrupted = false; // cancelled before the sweep finished

    std::string to_csv() const;
    static const char* csv_header();
};

// Runs the sweep; checks `cancel` between frame rounds when non-null.
SimReport run_sweep(const SimConfig& cfg, const std::atomic<bool>* cancel = nullptr);

} // namespace gncoset
