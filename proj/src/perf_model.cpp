#include "gncoset/perf_model.hpp"

#include <cmath>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include <json.hpp>

namespace gncoset {

NodeCostTable NodeCostTable::fitted_default() {
    // tools/fit_perf at design Es/N0 6.3 dB, n_sub 128. Zero costs fall out
    // of the fit: rate-1 outputs and the branch f/g stages ride the wide PE
    // array, whose fixed depth sits in the per-pass overhead instead.
    return NodeCostTable{0.0, 3.451988, 3.627615, 6.752981, 0.0};
}

double NodeCostTable::cost(NodeKind k) const {
    switch (k) {
        case NodeKind::Rate0: return 0.0;
        case NodeKind::Rate1: return rate1;
        case NodeKind::Rep: return rep;
        case NodeKind::Spc: return spc;
        case NodeKind::Ml4: return ml4;
        case NodeKind::Branch: return branch;
    }
    return 0.0;
}

NodeCostTable NodeCostTable::load(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::invalid_argument("cannot open node cost table '" + path + "'");
    nlohmann::json j;
    try {
        in >> j;
    } catch (const nlohmann::json::parse_error& e) {
        throw std::invalid_argument(path + ": " + e.what());
    }
    NodeCostTable t;
    for (auto [name, dst] : {std::pair<const char*, double*>{"rate1", &t.rate1},
                             {"rep", &t.rep},
                             {"spc", &t.spc},
                             {"ml4", &t.ml4},
                             {"branch", &t.branch}}) {
        if (!j.contains(name) || !j[name].is_number())
            throw std::invalid_argument(path + ": missing numeric field '" + name + "'");
        *dst = j[name].get<double>();
        if (*dst < 0.0) throw std::invalid_argument(path + ": costs must be non-negative");
    }
    return t;
}

void NodeCostTable::save(const std::string& path) const {
    nlohmann::json j{{"rate1", rate1}, {"rep", rep}, {"spc", spc}, {"ml4", ml4}, {"branch", branch}};
    std::ofstream out(path);
    if (!out) throw std::invalid_argument("cannot write node cost table '" + path + "'");
    out << j.dump(2) << "\n";
}

double cycle_count_model(const NodePlan& plan, const NodeCostTable& costs) {
    double cycles = 0.0;
    for (const auto& nd : plan.nodes) cycles += costs.cost(nd.kind);
    return cycles;
}

LatencyTable LatencyTable::published_default() {
    LatencyTable t;
    t.cycles_by_k_sub = {{111, 24.0}, {115, 19.0}, {119, 18.0}, {122, 13.0}};
    // Fitted by tools/fit_perf against the published iteration latencies.
    t.overhead_cycles = 4.94125;
    return t;
}

double LatencyTable::pass_ns(uint32_t k_sub) const {
    const auto it = cycles_by_k_sub.find(k_sub);
    if (it == cycles_by_k_sub.end())
        throw std::invalid_argument("latency table has no entry for k_sub " +
                                    std::to_string(k_sub));
    return (it->second + overhead_cycles) / clock_ghz;
}

double iteration_latency_ns(const CodeSpec& spec, int t_max, const LatencyTable& table) {
    if (t_max < 1) throw std::invalid_argument("iteration_latency_ns: t_max must be >= 1");
    double worst = 0.0;
    for (GraphId g : {GraphId::G, GraphId::Gpi}) {
        for (std::size_t i = 0; i < spec.n_sub; ++i) {
            const uint32_t k_sub = uint32_t(spec.n_sub - spec.frozen_set(g, i).size());
            worst = std::max(worst, table.pass_ns(k_sub));
        }
    }
    return double(t_max) * worst;
}

double area_efficiency(double info_bits, double latency_ns, double area_mm2,
                       double calibration) {
    if (!(latency_ns > 0.0) || !(area_mm2 > 0.0))
        throw std::invalid_argument("area_efficiency: latency and area must be positive");
    return info_bits / (latency_ns * area_mm2) * calibration;
}

double tech_scale_factor(const std::string& node) {
    if (node == "16nm") return 1.0;
    if (node == "10nm") return 2.300;
    if (node == "7nm") return 4.416;
    throw std::invalid_argument("unknown technology node '" + node +
                                "', expected 16nm, 10nm or 7nm");
}

double scale_efficiency(double eff_16nm, const std::string& node) {
    return eff_16nm * tech_scale_factor(node);
}

KpiScenario KpiScenario::load(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::invalid_argument("cannot open KPI scenario '" + path + "'");
    nlohmann::json j;
    try {
        in >> j;
    } catch (const nlohmann::json::parse_error& e) {
        throw std::invalid_argument(path + ": " + e.what());
    }
    auto fail = [&](const std::string& msg) -> std::invalid_argument {
        return std::invalid_argument(path + ": " + msg);
    };
    if (!j.is_object() || !j.contains("rows") || !j["rows"].is_array())
        throw fail("expected an object with a 'rows' array");
    KpiScenario sc;
    if (j.contains("calibration")) {
        if (!j["calibration"].is_number()) throw fail("'calibration' must be numeric");
        sc.calibration = j["calibration"].get<double>();
    }
    for (const auto& r : j["rows"]) {
        KpiRow row;
        for (auto [name, dst] : {std::pair<const char*, double*>{"info_bits", &row.info_bits},
                                 {"esn0_db", &row.esn0_db},
                                 {"latency_ns", &row.latency_ns},
                                 {"area_mm2", &row.area_mm2}}) {
            if (!r.contains(name) || !r[name].is_number())
                throw fail(std::string("row needs numeric field '") + name + "'");
            *dst = r[name].get<double>();
        }
        if (!r.contains("iterations") || !r["iterations"].is_number_integer())
            throw fail("row needs integer field 'iterations'");
        row.iterations = r["iterations"].get<int>();
        row.has_reported = r.contains("reported_eff");
        if (row.has_reported) {
            for (auto [name, dst] : {std::pair<const char*, double*>{"reported_eff", &row.reported_eff},
                                     {"reported_10nm", &row.reported_10nm},
                                     {"reported_7nm", &row.reported_7nm}}) {
                if (!r.contains(name) || !r[name].is_number())
                    throw fail(std::string("row needs numeric field '") + name +
                               "' alongside reported_eff");
                *dst = r[name].get<double>();
            }
        }
        sc.rows.push_back(row);
    }
    return sc;
}

} // namespace gncoset
