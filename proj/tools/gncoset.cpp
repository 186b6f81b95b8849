// Command-line front end: code construction, Monte-Carlo sweeps, KPI tables
// and one-shot encode/decode.
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "gncoset/channel_sim.hpp"
#include "gncoset/construction.hpp"
#include "gncoset/manifest.hpp"
#include "gncoset/pdf.hpp"
#include "gncoset/perf_model.hpp"
#include "gncoset/quant.hpp"

namespace fs = std::filesystem;
using namespace gncoset;

namespace {

std::vector<double> parse_esn0(const std::string& text) {
    std::vector<double> points;
    if (text.find(':') != std::string::npos) {
        double start = 0, step = 0, stop = 0;
        char c1 = 0, c2 = 0;
        std::istringstream ss(text);
        if (!(ss >> start >> c1 >> step >> c2 >> stop) || c1 != ':' || c2 != ':' || !ss.eof())
            throw std::invalid_argument("--esn0 range must be start:step:stop");
        if (step <= 0 || stop < start)
            throw std::invalid_argument("--esn0 range needs step > 0 and stop >= start");
        for (double v = start; v <= stop + 1e-9; v += step) points.push_back(v);
        return points;
    }
    std::istringstream ss(text);
    std::string tok;
    while (std::getline(ss, tok, ',')) {
        if (tok.empty()) continue;
        std::size_t used = 0;
        const double v = std::stod(tok, &used);
        if (used != tok.size()) throw std::invalid_argument("bad --esn0 value '" + tok + "'");
        points.push_back(v);
    }
    if (points.empty()) throw std::invalid_argument("--esn0 needs at least one value");
    return points;
}

int default_workers() {
    if (const char* env = std::getenv("GNCOSET_THREADS")) {
        const int v = std::atoi(env);
        if (v >= 1) return v;
    }
    return 1;
}

BitVec read_bits(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::invalid_argument("cannot open bit file '" + path + "'");
    BitVec bits;
    char c;
    while (in.get(c)) {
        if (c == '0') bits.push_back(0);
        else if (c == '1') bits.push_back(1);
        else if (!std::isspace(static_cast<unsigned char>(c)))
            throw std::invalid_argument(path + ": bit files may contain only 0, 1 and whitespace");
    }
    return bits;
}

void write_bits(const BitVec& bits, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw std::invalid_argument("cannot write '" + path + "'");
    for (uint8_t b : bits) out.put(b ? '1' : '0');
    out.put('\n');
}

std::vector<double> read_llrs(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::invalid_argument("cannot open LLR file '" + path + "'");
    std::vector<double> v;
    double x;
    while (in >> x) v.push_back(x);
    if (!in.eof()) throw std::invalid_argument(path + ": expected whitespace-separated numbers");
    return v;
}

std::string default_run_dir(uint64_t seed) {
    const auto m = SimManifest::from_config(SimConfig{});
    return "runs/sim-" + m.created_utc + "-seed" + std::to_string(seed);
}

int cmd_construct(const std::string& out, std::size_t n_sub, std::size_t k_sub,
                  double design_esn0, const std::string& label, bool print) {
    const CodeSpec spec = build_product_code(n_sub, k_sub, design_esn0, label);
    if (!out.empty()) save_spec(spec, out);
    if (print || out.empty()) std::cout << spec_to_json_text(spec);
    return 0;
}

int cmd_simulate(SimConfig cfg, const std::string& out_dir) {
    const std::string dir = out_dir.empty() ? default_run_dir(cfg.seed) : out_dir;
    fs::create_directories(dir);
    SimManifest manifest = SimManifest::from_config(cfg);
    manifest.save(dir + "/manifest.json");

    const SimReport report = run_sweep(cfg);
    const std::string csv = report.to_csv();
    {
        std::ofstream out(dir + "/results.csv");
        if (!out) throw std::invalid_argument("cannot write '" + dir + "/results.csv'");
        out << csv;
    }
    std::cout << csv;
    if (report.interrupted) std::cerr << "note: sweep interrupted, results are partial\n";
    std::cerr << "wrote " << dir << "/results.csv\n";
    return 0;
}

int cmd_kpi(const std::string& scenario_path, double calibration_override, bool have_override,
            const std::string& format) {
    KpiScenario sc = KpiScenario::load(scenario_path);
    if (have_override) sc.calibration = calibration_override;
    const bool md = format == "md";
    if (md) {
        std::cout << "| K | iters | Es/N0 dB | latency ns | Gbps/mm2 | 10nm | 7nm |\n";
        std::cout << "|---|---|---|---|---|---|---|\n";
    } else {
        std::cout << "info_bits,iterations,esn0_db,latency_ns,gbps_per_mm2,gbps_10nm,gbps_7nm\n";
    }
    char line[256];
    for (const auto& r : sc.rows) {
        const double eff = area_efficiency(r.info_bits, r.latency_ns, r.area_mm2, sc.calibration);
        const double e10 = scale_efficiency(eff, "10nm");
        const double e7 = scale_efficiency(eff, "7nm");
        if (md)
            std::snprintf(line, sizeof(line), "| %.0f | %d | %.2f | %.2f | %.2f | %.2f | %.2f |\n",
                          r.info_bits, r.iterations, r.esn0_db, r.latency_ns, eff, e10, e7);
        else
            std::snprintf(line, sizeof(line), "%.0f,%d,%.2f,%.2f,%.2f,%.2f,%.2f\n", r.info_bits,
                          r.iterations, r.esn0_db, r.latency_ns, eff, e10, e7);
        std::cout << line;
        if (r.has_reported) {
            const double d1 = 100.0 * (eff - r.reported_eff) / r.reported_eff;
            const double d2 = 100.0 * (e10 - r.reported_10nm) / r.reported_10nm;
            const double d3 = 100.0 * (e7 - r.reported_7nm) / r.reported_7nm;
            std::snprintf(line, sizeof(line),
                          "#   vs reported: %+.3f%% (base), %+.3f%% (10nm), %+.3f%% (7nm)\n", d1,
                          d2, d3);
            std::cerr << line;
        }
    }
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"G_N-coset code construction, simulation and KPI tooling"};
    app.require_subcommand(1);

    // construct
    auto* construct = app.add_subcommand("construct", "build a product code spec");
    std::size_t c_nsub = 128, c_ksub = 115;
    double c_design = 6.3;
    std::string c_label, c_out;
    bool c_print = false;
    construct->add_option("--nsub", c_nsub, "sub-code length (power of two)");
    construct->add_option("--ksub", c_ksub, "info bits per sub-code");
    construct->add_option("--design-esn0", c_design, "construction Es/N0 in dB");
    construct->add_option("--label", c_label, "free-form label");
    construct->add_option("--out", c_out, "output spec path");
    construct->add_flag("--print", c_print, "also print the spec to stdout");

    // simulate
    auto* simulate = app.add_subcommand("simulate", "run a Monte-Carlo BLER sweep");
    std::string s_spec, s_esn0, s_quant = "float", s_schedule, s_out, s_manifest;
    int s_tmax = 5, s_workers = default_workers();
    uint64_t s_seed = 1, s_max_frames = 1000000, s_target_errors = 100;
    bool s_no_timing = false, s_no_et = false;
    simulate->add_option("--spec", s_spec, "code spec JSON path");
    simulate->add_option("--esn0", s_esn0, "Es/N0 points: single, a,b,c or start:step:stop");
    simulate->add_option("--tmax", s_tmax, "iteration budget");
    simulate->add_option("--quant", s_quant, "float, Q<bits> or Q<bits>F<frac>");
    simulate->add_option("--schedule", s_schedule, "damping schedule JSON path");
    simulate->add_option("--seed", s_seed, "RNG seed");
    simulate->add_option("--workers", s_workers, "worker threads (env GNCOSET_THREADS)");
    simulate->add_option("--max-frames", s_max_frames, "frame cap per point");
    simulate->add_option("--target-errors", s_target_errors, "stop after this many block errors");
    simulate->add_option("--out", s_out, "run directory (default runs/sim-<stamp>-seed<seed>)");
    simulate->add_flag("--no-timing", s_no_timing, "pin the seconds column to 0.000");
    simulate->add_flag("--no-early-term", s_no_et, "always run the full iteration budget");
    simulate->add_option("--from-manifest", s_manifest,
                         "replay a recorded run (only --workers/--out may accompany this)");

    // kpi
    auto* kpi = app.add_subcommand("kpi", "area-efficiency table from a scenario file");
    std::string k_scenario, k_format = "csv";
    double k_calibration = kKpiCalibration;
    kpi->add_option("--scenario", k_scenario, "scenario JSON path")->required();
    auto* k_cal_opt = kpi->add_option("--calibration", k_calibration, "calibration factor");
    kpi->add_option("--format", k_format, "csv or md")
        ->check(CLI::IsMember({"csv", "md"}));

    // codec
    auto* codec = app.add_subcommand("codec", "one-shot encode/decode for debugging");
    codec->require_subcommand(1);
    auto* enc = codec->add_subcommand("encode", "message bits -> codeword bits");
    std::string e_spec, e_in, e_out;
    enc->add_option("--spec", e_spec, "code spec JSON path")->required();
    enc->add_option("--in", e_in, "message bit file (ASCII 0/1)")->required();
    enc->add_option("--out", e_out, "codeword output path")->required();
    auto* dec = codec->add_subcommand("decode", "LLRs or hard bits -> message bits");
    std::string d_spec, d_llr, d_bits, d_out, d_quant = "float", d_schedule;
    int d_tmax = 5;
    dec->add_option("--spec", d_spec, "code spec JSON path")->required();
    dec->add_option("--llr", d_llr, "channel LLR file (floats)");
    dec->add_option("--bits", d_bits, "hard bit file, mapped to noiseless channel values");
    dec->add_option("--out", d_out, "decoded message output path")->required();
    dec->add_option("--quant", d_quant, "float, Q<bits> or Q<bits>F<frac>");
    dec->add_option("--tmax", d_tmax, "iteration budget");
    dec->add_option("--schedule", d_schedule, "damping schedule JSON path");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    }

    try {
        if (construct->parsed())
            return cmd_construct(c_out, c_nsub, c_ksub, c_design, c_label, c_print);

        if (simulate->parsed()) {
            SimConfig cfg;
            if (!s_manifest.empty()) {
                for (const auto* opt : {"--spec", "--esn0", "--tmax", "--quant", "--schedule",
                                        "--seed", "--max-frames", "--target-errors",
                                        "--no-timing", "--no-early-term"}) {
                    if (simulate->count(opt))
                        throw std::invalid_argument(std::string(opt) +
                                                    " cannot be combined with --from-manifest");
                }
                cfg = SimManifest::load(s_manifest).config;
                if (simulate->count("--workers")) cfg.workers = s_workers;
            } else {
                if (s_spec.empty()) throw std::invalid_argument("--spec is required");
                if (s_esn0.empty()) throw std::invalid_argument("--esn0 is required");
                cfg.spec = load_spec(s_spec);
                cfg.esn0_db = parse_esn0(s_esn0);
                cfg.quant = QuantSpec::parse(s_quant);
                cfg.schedule = s_schedule.empty() ? DampingSchedule::tuned_default()
                                                  : DampingSchedule::load(s_schedule);
                cfg.decode.t_max = s_tmax;
                cfg.decode.early_termination = !s_no_et;
                cfg.seed = s_seed;
                cfg.workers = s_workers;
                cfg.max_frames = s_max_frames;
                cfg.target_block_errors = s_target_errors;
                cfg.measure_time = !s_no_timing;
            }
            return cmd_simulate(std::move(cfg), s_out);
        }

        if (kpi->parsed())
            return cmd_kpi(k_scenario, k_calibration, k_cal_opt->count() > 0, k_format);

        if (enc->parsed()) {
            const CodeSpec spec = load_spec(e_spec);
            write_bits(encode_codeword(spec, read_bits(e_in)), e_out);
            return 0;
        }
        if (dec->parsed()) {
            const CodeSpec spec = load_spec(d_spec);
            if (d_llr.empty() == d_bits.empty())
                throw std::invalid_argument("decode needs exactly one of --llr or --bits");
            const QuantSpec qs = QuantSpec::parse(d_quant);
            std::vector<double> y;
            if (!d_llr.empty()) {
                y = read_llrs(d_llr);
            } else {
                const BitVec bits = read_bits(d_bits);
                y = modulate(bits);
            }
            DecodeOptions opts;
            opts.t_max = d_tmax;
            const DampingSchedule sched = d_schedule.empty() ? DampingSchedule::tuned_default()
                                                             : DampingSchedule::load(d_schedule);
            const DecodeResult res = decode_frame(y, spec, sched, qs, opts);
            write_bits(recover_message(res.x_hat, spec), d_out);
            std::cerr << "iterations used: " << res.stats.iterations_used
                      << (res.stats.all_pass_reached ? " (all syndromes passed)\n" : "\n");
            return 0;
        }
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
