// BLER comparison across quantizer widths and fraction splits against the
// float baseline; backs the default fraction-bit table.
#include <cstdio>
#include <string>

#include <CLI11.hpp>

#include "gncoset/channel_sim.hpp"
#include "gncoset/construction.hpp"

using namespace gncoset;

int main(int argc, char** argv) {
    CLI::App app{"quantizer width/fraction BLER sweep"};
    std::size_t nsub = 64, ksub = 58;
    double esn0 = 6.0, design = 6.3;
    uint64_t frames = 20000, seed = 1;
    int tmax = 5, workers = 1;
    app.add_option("--nsub", nsub);
    app.add_option("--ksub", ksub);
    app.add_option("--esn0", esn0);
    app.add_option("--design-esn0", design);
    app.add_option("--frames", frames);
    app.add_option("--seed", seed);
    app.add_option("--tmax", tmax);
    app.add_option("--workers", workers);
    CLI11_PARSE(app, argc, argv);

    SimConfig cfg;
    cfg.spec = build_product_code(nsub, ksub, design);
    cfg.decode.t_max = tmax;
    cfg.esn0_db = {esn0};
    cfg.max_frames = frames;
    cfg.target_block_errors = frames + 1;
    cfg.seed = seed;
    cfg.workers = workers;
    cfg.measure_time = false;

    std::printf("quant,frames,blk_err,bler,mean_iters\n");
    auto run_one = [&](QuantSpec qs) {
        cfg.quant = qs;
        const auto rep = run_sweep(cfg);
        const auto& p = rep.points[0];
        std::printf("%s,%llu,%llu,%.6e,%.4f\n", qs.to_string().c_str(),
                    (unsigned long long)p.frames, (unsigned long long)p.block_errors, p.bler,
                    p.mean_iterations);
        std::fflush(stdout);
    };
    run_one(QuantSpec::floating());
    for (int q = 4; q <= 8; ++q) {
        for (int f = 0; f <= q - 2; ++f) run_one(QuantSpec::fixed(q, f));
    }
    return 0;
}
