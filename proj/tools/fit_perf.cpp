// Fits the per-node-kind cycle costs to the published component-decoder
// cycle counts, and the per-pass overhead to the published iteration
// latencies. Non-negative least squares via projected coordinate descent.
#include <cstdio>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "gncoset/component_sc.hpp"
#include "gncoset/construction.hpp"
#include "gncoset/perf_model.hpp"

using namespace gncoset;

int main(int argc, char** argv) {
    CLI::App app{"node cost and overhead fit"};
    double design = 6.3;
    std::size_t nsub = 128;
    std::string out;
    app.add_option("--design-esn0", design, "construction Es/N0 for the reference codes");
    app.add_option("--nsub", nsub);
    app.add_option("--out", out, "write the fitted cost table as JSON");
    CLI11_PARSE(app, argc, argv);

    const std::vector<std::pair<uint32_t, double>> targets = {
        {111, 24.0}, {115, 19.0}, {119, 18.0}, {122, 13.0}};

    // Count visited nodes per kind for each reference code.
    const NodeKind kinds[] = {NodeKind::Rate1, NodeKind::Rep, NodeKind::Spc, NodeKind::Ml4,
                              NodeKind::Branch};
    std::vector<std::vector<double>> A; // rows: codes, cols: kinds
    std::vector<double> b;
    std::printf("k_sub rate0 rate1 rep spc ml4 branch target\n");
    for (const auto& [k_sub, cycles] : targets) {
        const auto spec = build_product_code(nsub, k_sub, design);
        const auto plan = classify(spec.default_frozen, nsub);
        std::vector<double> row;
        for (NodeKind k : kinds) row.push_back(double(plan.count(k)));
        std::printf("%5u %5zu %5zu %3zu %3zu %3zu %6zu %6.0f\n", k_sub,
                    plan.count(NodeKind::Rate0), plan.count(NodeKind::Rate1),
                    plan.count(NodeKind::Rep), plan.count(NodeKind::Spc),
                    plan.count(NodeKind::Ml4), plan.count(NodeKind::Branch), cycles);
        A.push_back(row);
        b.push_back(cycles);
    }

    // min ||A c - b||^2 over c >= 0.
    const std::size_t nk = std::size(kinds);
    std::vector<double> c(nk, 1.0);
    for (int sweep = 0; sweep < 200000; ++sweep) {
        for (std::size_t k = 0; k < nk; ++k) {
            double num = 0.0, den = 0.0;
            for (std::size_t r = 0; r < A.size(); ++r) {
                double resid = b[r];
                for (std::size_t k2 = 0; k2 < nk; ++k2) {
                    if (k2 != k) resid -= A[r][k2] * c[k2];
                }
                num += A[r][k] * resid;
                den += A[r][k] * A[r][k];
            }
            if (den > 0.0) c[k] = std::max(0.0, num / den);
        }
    }

    NodeCostTable table{c[0], c[1], c[2], c[3], c[4]};
    std::printf("\nfitted costs: rate1=%.6f rep=%.6f spc=%.6f ml4=%.6f branch=%.6f\n", table.rate1,
                table.rep, table.spc, table.ml4, table.branch);
    std::printf("k_sub model target error\n");
    for (const auto& [k_sub, cycles] : targets) {
        const auto spec = build_product_code(nsub, k_sub, design);
        const auto plan = classify(spec.default_frozen, nsub);
        const double model = cycle_count_model(plan, table);
        std::printf("%5u %7.3f %6.0f %+6.3f\n", k_sub, model, cycles, model - cycles);
    }

    // Per-pass overhead from the published iteration latencies: each
    // latency is t_max * (cycles + overhead) / clock.
    std::printf("\noverhead fit from published latencies (1.05 GHz):\n");
    const struct {
        uint32_t k_sub;
        int iters;
        double latency_ns;
    } published[] = {
        {115, 4, 91.2},  {115, 5, 114.0}, {115, 6, 136.8}, {115, 7, 159.6}, {115, 8, 182.4},
        {119, 4, 87.4},  {119, 5, 109.25}, {119, 6, 131.1}, {119, 7, 152.95}, {119, 8, 174.8},
    };
    double sum = 0.0;
    const auto base = LatencyTable::published_default();
    for (const auto& p : published) {
        const double cyc = base.cycles_by_k_sub.at(p.k_sub);
        const double oh = p.latency_ns * base.clock_ghz / p.iters - cyc;
        sum += oh;
        std::printf("k_sub=%u iters=%d latency=%.2fns -> overhead %.4f cycles\n", p.k_sub, p.iters,
                    p.latency_ns, oh);
    }
    std::printf("mean overhead: %.5f cycles\n", sum / std::size(published));

    if (!out.empty()) {
        table.save(out);
        std::fprintf(stderr, "wrote %s\n", out.c_str());
    }
    return 0;
}
