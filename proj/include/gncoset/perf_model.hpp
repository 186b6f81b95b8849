// Throughput-per-area bookkeeping: per-pass cycle counts from the node
// plan, iteration latency at a fixed clock, area efficiency, and the
// published technology-scaling ratios.
#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "gncoset/component_sc.hpp"
#include "gncoset/construction.hpp"

namespace gncoset {

// Cycle cost per visited node kind; Rate-0 spans are skipped for free.
struct NodeCostTable {
    double rate1 = 0.0;
    double rep = 0.0;
    double spc = 0.0;
    double ml4 = 0.0;
    double branch = 0.0;

    // Fitted to the published component-decoder cycle counts by
    // tools/fit_perf (see data/node_costs_default.json).
    static NodeCostTable fitted_default();
    static NodeCostTable load(const std::string& path);
    void save(const std::string& path) const;

    double cost(NodeKind k) const;
};

double cycle_count_model(const NodePlan& plan, const NodeCostTable& costs);

// Published per-pass cycle counts at n_sub = 128 and the 1.05 GHz clock.
struct LatencyTable {
    std::map<uint32_t, double> cycles_by_k_sub;
    double overhead_cycles = 0.0; // per-pass pipeline overhead, fitted
    double clock_ghz = 1.05;

    static LatencyTable published_default();
    double pass_ns(uint32_t k_sub) const; // throws on an unknown k_sub
};

// Worst sub-code pass latency times the iteration budget.
double iteration_latency_ns(const CodeSpec& spec, int t_max, const LatencyTable& table);

// Info throughput per area: K / (latency * area), in Gbps/mm^2 when latency
// is in ns and area in mm^2. The calibration factor absorbs the constant
// implementation derating used by the published numbers.
double area_efficiency(double info_bits, double latency_ns, double area_mm2,
                       double calibration = 1.0);

constexpr double kKpiCalibration = 0.9315;

// Published density ratios relative to the 16nm baseline.
double tech_scale_factor(const std::string& node); // "16nm" | "10nm" | "7nm"
double scale_efficiency(double eff_16nm, const std::string& node);

// One scenario row: a code point with its published reference numbers.
struct KpiRow {
    double info_bits = 0.0;
    int iterations = 0;
    double esn0_db = 0.0;
    double latency_ns = 0.0;
    double area_mm2 = 1.0;
    // Optional published values for cross-checking; NaN when absent.
    double reported_eff = 0.0;
    double reported_10nm = 0.0;
    double reported_7nm = 0.0;
    bool has_reported = false;
};

struct KpiScenario {
    std::vector<KpiRow> rows;
    double calibration = kKpiCalibration;

    static KpiScenario load(const std::string& path);
};

} // namespace gncoset
