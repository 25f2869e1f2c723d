// Command-line surface: compute rate regions, run sum-rate sweeps, project
// inequality systems, run key-extraction simulations, and execute the
// built-in verification suite.
//
// Exit codes: 0 success, 1 verification failure, 2 usage / parse / domain
// error, 3 I/O error.

#include <cmath>
#include <cstdint>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "secrate/channels.hpp"
#include "secrate/errors.hpp"
#include "secrate/jsonio.hpp"
#include "secrate/keysim.hpp"
#include "secrate/polytope.hpp"
#include "secrate/regions.hpp"
#include "secrate/svg.hpp"
#include "secrate/sysio.hpp"
#include "secrate/verify.hpp"

namespace {

using namespace secrate;

std::string g12(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.12g", v);
    return buf;
}

nlohmann::json load_json_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot open '" + path + "'");
    try {
        return nlohmann::json::parse(in);
    } catch (const nlohmann::json::exception& e) {
        throw ValueError("invalid JSON in '" + path + "': " + e.what());
    }
}

// Writes to the given path, or to stdout when the path is empty.
void write_output(const std::string& path, const std::string& content) {
    if (path.empty()) {
        std::cout << content;
        return;
    }
    std::ofstream file(path, std::ios::binary);
    if (!file) throw IoError("cannot open '" + path + "' for writing");
    file << content;
    file.flush();
    if (!file) throw IoError("failed while writing '" + path + "'");
}

// Fills `target` from config key `key` unless the flag was passed explicitly.
template <typename T>
void config_fill(const nlohmann::json& cfg, const char* key, const CLI::Option* opt,
                 T& target) {
    if (opt != nullptr && opt->count() > 0) return;
    auto it = cfg.find(key);
    if (it == cfg.end()) return;
    try {
        target = it->get<T>();
    } catch (const nlohmann::json::exception& e) {
        throw ValueError(std::string("config field '") + key + "': " + e.what());
    }
}

// ---------------------------------------------------------------------------
// region

struct RegionArgs {
    std::string example;
    int case_id = 1;
    double p = 0.05;
    double q = 0.05;
    double r = 0.05;
    double alpha = 1.0 / 3.0;
    double beta = 1.0 / 3.0;
    double alpha1 = 1.0 / 3.0;
    double alpha2 = 1.0 / 3.0;
    std::string dist_path;
    std::string format = "csv";
    std::string out;
    std::string config;
};

struct RegionOptionHandles {
    CLI::Option* example = nullptr;
    CLI::Option* case_id = nullptr;
    CLI::Option* p = nullptr;
    CLI::Option* q = nullptr;
    CLI::Option* r = nullptr;
    CLI::Option* alpha = nullptr;
    CLI::Option* beta = nullptr;
    CLI::Option* alpha1 = nullptr;
    CLI::Option* alpha2 = nullptr;
    CLI::Option* dist = nullptr;
    CLI::Option* format = nullptr;
    CLI::Option* out = nullptr;
};

// One-line parameter description used in CSV comments and SVG titles.
std::string region_param_note(const RegionArgs& a, const std::string& resolved) {
    std::ostringstream s;
    if (!a.dist_path.empty()) {
        s << "distribution=" << a.dist_path;
        return s.str();
    }
    s << "example=" << resolved;
    if (resolved == "blackwell")
        s << " p=" << g12(a.p) << " alpha=" << g12(a.alpha) << " beta=" << g12(a.beta)
          << " alpha1=" << g12(a.alpha1) << " alpha2=" << g12(a.alpha2);
    else
        s << " p=" << g12(a.p) << " q=" << g12(a.q) << " r=" << g12(a.r);
    return s.str();
}

std::vector<std::pair<std::string, HalfSpaceSystem>>
region_sections(const RegionArgs& a, std::string& resolved) {
    const bool has_example = !a.example.empty();
    const bool has_dist = !a.dist_path.empty();
    if (has_example == has_dist)
        throw ArgumentError("pass exactly one of --example and --dist");

    std::vector<std::pair<std::string, HalfSpaceSystem>> sections;
    if (has_dist) {
        resolved.clear();
        SchemeDistribution dist = load_scheme(a.dist_path);
        sections.emplace_back("nofeedback", region_nofeedback(dist));
        sections.emplace_back("inner1", region_inner1(dist));
        if (dist.has_extension()) sections.emplace_back("inner2", region_inner2(dist));
        sections.emplace_back("outer", region_outer(dist));
        return sections;
    }

    resolved = a.example;
    if (resolved == "dueck") {
        if (a.case_id != 1 && a.case_id != 2)
            throw ArgumentError("--case must be 1 or 2");
        resolved = a.case_id == 2 ? "dueck2" : "dueck1";
    }
    if (resolved == "dueck1" || resolved == "dueck2") {
        DueckParams dp;
        dp.noise_case = resolved == "dueck1" ? DueckNoiseCase::z0_z1_z2
                                             : DueckNoiseCase::z1_z0_z2;
        dp.p = a.p;
        dp.q = a.q;
        dp.r = a.r;
        sections.emplace_back("nofeedback", dueck_closed_nofeedback(dp));
        sections.emplace_back("inner1", dueck_closed_inner1(dp));
        sections.emplace_back("inner2", dueck_closed_inner2(dp));
        sections.emplace_back("outer", dueck_closed_outer(dp));
        return sections;
    }
    if (resolved == "blackwell") {
        BlackwellParams bp;
        bp.p = a.p;
        bp.alpha = a.alpha;
        bp.beta = a.beta;
        bp.alpha1 = a.alpha1;
        bp.alpha2 = a.alpha2;
        sections.emplace_back("nofeedback", blackwell_closed_nofeedback(bp));
        sections.emplace_back("inner1", blackwell_closed_inner1(bp));
        sections.emplace_back("inner2", blackwell_closed_inner2(bp));
        sections.emplace_back("outer", blackwell_closed_outer(bp));
        return sections;
    }
    throw ArgumentError("unknown example '" + a.example +
                        "' (use dueck1, dueck2, dueck, or blackwell)");
}

int cmd_region(RegionArgs& a, const RegionOptionHandles& h) {
    if (!a.config.empty()) {
        nlohmann::json cfg = load_json_file(a.config);
        config_fill(cfg, "example", h.example, a.example);
        config_fill(cfg, "case", h.case_id, a.case_id);
        config_fill(cfg, "p", h.p, a.p);
        config_fill(cfg, "q", h.q, a.q);
        config_fill(cfg, "r", h.r, a.r);
        config_fill(cfg, "alpha", h.alpha, a.alpha);
        config_fill(cfg, "beta", h.beta, a.beta);
        config_fill(cfg, "alpha1", h.alpha1, a.alpha1);
        config_fill(cfg, "alpha2", h.alpha2, a.alpha2);
        config_fill(cfg, "dist", h.dist, a.dist_path);
        config_fill(cfg, "format", h.format, a.format);
        config_fill(cfg, "out", h.out, a.out);
    }
    if (a.format != "csv" && a.format != "json" && a.format != "svg")
        throw ArgumentError("--format must be csv, json, or svg");

    std::string resolved;
    auto sections = region_sections(a, resolved);
    std::string note = region_param_note(a, resolved);

    if (a.format == "csv") {
        std::ostringstream out;
        out << "# rate regions: " << note << "\n";
        out << "# one block per region: its inequalities, then its vertices\n";
        out << "section,kind,coeff_R1,coeff_R2,rhs,vertex_R1,vertex_R2\n";
        for (const auto& [name, sys] : sections) {
            Region2D region = vertices2d(sys);
            for (const auto& row : sys.rows())
                out << name << ",inequality," << g12(row.coeffs[0].convert_to<double>())
                    << "," << g12(row.coeffs[1].convert_to<double>()) << ","
                    << g12(row.rhs.convert_to<double>()) << ",,\n";
            for (const auto& v : region.vertices)
                out << name << ",vertex,,,," << g12(v[0]) << "," << g12(v[1]) << "\n";
        }
        write_output(a.out, out.str());
        return 0;
    }
    if (a.format == "json") {
        nlohmann::json doc;
        doc["parameters"] = note;
        nlohmann::json arr = nlohmann::json::array();
        for (const auto& [name, sys] : sections) {
            nlohmann::json entry = region_to_json(vertices2d(sys));
            entry["name"] = name;
            arr.push_back(std::move(entry));
        }
        doc["sections"] = std::move(arr);
        write_output(a.out, doc.dump(2) + "\n");
        return 0;
    }
    // SVG: draw the outermost region first so smaller ones sit on top.
    std::vector<RegionSeries> series;
    for (auto it = sections.rbegin(); it != sections.rend(); ++it)
        series.push_back({it->first, vertices2d(it->second)});
    write_output(a.out, render_regions_svg(series, "Rate regions: " + note));
    return 0;
}

// ---------------------------------------------------------------------------
// sweep

struct SweepArgs {
    double p_min = 0.0;
    double p_max = 0.5;
    double p_step = 0.02;
    int grid = 201;
    std::string out;
    std::string config;
};

struct SweepOptionHandles {
    CLI::Option* p_min = nullptr;
    CLI::Option* p_max = nullptr;
    CLI::Option* p_step = nullptr;
    CLI::Option* grid = nullptr;
    CLI::Option* out = nullptr;
};

int cmd_sweep(SweepArgs& a, const SweepOptionHandles& h) {
    if (!a.config.empty()) {
        nlohmann::json cfg = load_json_file(a.config);
        config_fill(cfg, "p_min", h.p_min, a.p_min);
        config_fill(cfg, "p_max", h.p_max, a.p_max);
        config_fill(cfg, "p_step", h.p_step, a.p_step);
        config_fill(cfg, "grid", h.grid, a.grid);
        config_fill(cfg, "out", h.out, a.out);
    }
    if (!(a.p_step > 0.0))
        throw ArgumentError("--p-step must be positive");
    if (a.p_max < a.p_min)
        throw ArgumentError("--p-max must not be below --p-min");
    int count = static_cast<int>(std::floor((a.p_max - a.p_min) / a.p_step + 1e-9)) + 1;
    std::vector<double> p_grid;
    for (int i = 0; i < count; ++i)
        p_grid.push_back(a.p_min + static_cast<double>(i) * a.p_step);

    std::vector<SweepRow> rows = sweep_blackwell_sumrate(p_grid, a.grid);

    std::ostringstream out;
    out << "# sum-rate sweep, grid resolution " << a.grid << "\n";
    out << "p,sum_in1,sum_in2,sum_out,sum_nofb\n";
    for (const auto& row : rows)
        out << g12(row.p) << "," << g12(row.sum_inner1) << "," << g12(row.sum_inner2)
            << "," << g12(row.sum_outer) << "," << g12(row.sum_nofeedback) << "\n";
    write_output(a.out, out.str());
    return 0;
}

// ---------------------------------------------------------------------------
// fme

struct FmeArgs {
    std::string in_path;
    std::string eliminate;
    std::string out;
};

std::vector<std::string> split_names(const std::string& list) {
    std::vector<std::string> names;
    std::string item;
    std::istringstream stream(list);
    while (std::getline(stream, item, ',')) {
        const auto begin = item.find_first_not_of(" \t");
        if (begin == std::string::npos) continue;
        const auto end = item.find_last_not_of(" \t");
        names.push_back(item.substr(begin, end - begin + 1));
    }
    return names;
}

int cmd_fme(const FmeArgs& a) {
    HalfSpaceSystem sys = load_system(a.in_path);
    HalfSpaceSystem result = fme_eliminate(sys, split_names(a.eliminate));
    std::string text;
    if (result.has_contradiction_row()) text += "# system is infeasible\n";
    text += format_system(result);
    write_output(a.out, text);
    return 0;
}

// ---------------------------------------------------------------------------
// simulate

struct SimArgs {
    int blocklength = 8;
    double rate = 0.75;
    int trials = 10000;
    std::uint64_t seed = 1;
    std::string mode = "exhaustive";
    std::string channel = "uniform-independent";
    bool universal_hash = false;
    bool otp = false;
    int message_bits = -1;
    std::string out;
    std::string config;
};

struct SimOptionHandles {
    CLI::Option* blocklength = nullptr;
    CLI::Option* rate = nullptr;
    CLI::Option* trials = nullptr;
    CLI::Option* seed = nullptr;
    CLI::Option* mode = nullptr;
    CLI::Option* channel = nullptr;
    CLI::Option* universal_hash = nullptr;
    CLI::Option* otp = nullptr;
    CLI::Option* message_bits = nullptr;
    CLI::Option* out = nullptr;
};

PairChannel resolve_channel(const std::string& name) {
    if (name == "uniform-independent") return uniform_independent_channel();
    if (name == "identical") return identical_channel();
    return load_channel(name);  // anything else is a JSON file path
}

int cmd_simulate(SimArgs& a, const SimOptionHandles& h) {
    if (!a.config.empty()) {
        nlohmann::json cfg = load_json_file(a.config);
        config_fill(cfg, "blocklength", h.blocklength, a.blocklength);
        config_fill(cfg, "rate", h.rate, a.rate);
        config_fill(cfg, "trials", h.trials, a.trials);
        config_fill(cfg, "seed", h.seed, a.seed);
        config_fill(cfg, "mode", h.mode, a.mode);
        config_fill(cfg, "channel", h.channel, a.channel);
        config_fill(cfg, "universal_hash", h.universal_hash, a.universal_hash);
        config_fill(cfg, "otp", h.otp, a.otp);
        config_fill(cfg, "message_bits", h.message_bits, a.message_bits);
        config_fill(cfg, "out", h.out, a.out);
    }
    if (a.mode != "exhaustive" && a.mode != "monte_carlo")
        throw ArgumentError("--mode must be exhaustive or monte_carlo");

    KeySimConfig cfg;
    cfg.channel = resolve_channel(a.channel);
    cfg.blocklength = a.blocklength;
    cfg.rate = a.rate;
    cfg.mode = a.mode == "exhaustive" ? KeySimMode::exhaustive : KeySimMode::monte_carlo;
    cfg.seed = a.seed;
    cfg.trials = a.trials;
    cfg.universal_hash = a.universal_hash;

    nlohmann::json doc;
    doc["config"] = {{"blocklength", cfg.blocklength}, {"rate", cfg.rate},
                     {"mode", a.mode},                 {"seed", cfg.seed},
                     {"trials", cfg.trials},           {"universal_hash", cfg.universal_hash},
                     {"channel", a.channel}};

    if (a.otp) {
        int bits = a.message_bits >= 0
                       ? a.message_bits
                       : static_cast<int>(std::floor(cfg.blocklength * cfg.rate + 1e-12));
        OtpReport report = run_otp_roundtrip(cfg, bits, cfg.trials);
        doc["otp"] = {{"message_bits", report.message_bits},
                      {"trials", report.trials},
                      {"decode_ok", report.decode_ok},
                      {"message_leakage", report.message_leakage}};
        std::cerr << "otp roundtrip: m=" << report.message_bits << " trials="
                  << report.trials << " decode_ok=" << (report.decode_ok ? "true" : "false")
                  << " leakage=" << g12(report.message_leakage) << " bits\n";
    } else {
        KeySimReport report = run_key_extraction(cfg);
        doc["report"] = {{"gamma", report.gamma},
                         {"key_entropy", report.key_entropy},
                         {"conditional_key_entropy", report.conditional_key_entropy},
                         {"leakage", report.leakage},
                         {"total_variation", report.total_variation},
                         {"normalized_entropy", report.normalized_entropy},
                         {"conditional_entropy_stderr", report.conditional_entropy_stderr},
                         {"exhaustive", report.exhaustive}};
        std::cerr << "key extraction: gamma=" << report.gamma << " H(K)="
                  << g12(report.key_entropy) << " H(K|Y2^N)="
                  << g12(report.conditional_key_entropy) << " leakage="
                  << g12(report.leakage) << " TV=" << g12(report.total_variation) << "\n";
    }
    write_output(a.out, doc.dump(2) + "\n");
    return 0;
}

// ---------------------------------------------------------------------------
// verify

struct VerifyArgs {
    std::string only;
    bool perturb_inner1 = false;
    std::string out;
};

int cmd_verify(const VerifyArgs& a) {
    VerifyOptions opts;
    opts.only = a.only;
    if (a.perturb_inner1) opts.inner1_perturbation = 1e-3;
    std::vector<VerifyCheck> checks = run_verification(opts);

    bool all_pass = true;
    nlohmann::json arr = nlohmann::json::array();
    for (const auto& c : checks) {
        all_pass = all_pass && c.pass;
        arr.push_back({{"name", c.name},
                       {"pass", c.pass},
                       {"max_deviation", c.max_deviation},
                       {"tolerance", c.tolerance},
                       {"detail", c.detail}});
        std::cerr << (c.pass ? "[PASS] " : "[FAIL] ") << c.name << " (max deviation "
                  << g12(c.max_deviation) << ", tolerance " << g12(c.tolerance) << ")\n";
    }
    nlohmann::json doc;
    doc["checks"] = std::move(arr);
    doc["all_pass"] = all_pass;
    write_output(a.out, doc.dump(2) + "\n");
    return all_pass ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"secrecy-rate regions of the two-receiver broadcast channel "
                 "with feedback: computation, comparison, and simulation"};
    app.require_subcommand(1);

    // region ----------------------------------------------------------------
    RegionArgs ra;
    RegionOptionHandles rh;
    auto* region = app.add_subcommand(
        "region", "compute the no-feedback, feedback-inner, and outer rate regions");
    rh.example = region->add_option(
        "--example", ra.example, "named construction: dueck1, dueck2, dueck, blackwell");
    rh.case_id = region->add_option("--case", ra.case_id,
                                    "noise structure for --example dueck (1 or 2)")
                     ->capture_default_str();
    rh.p = region->add_option("--p", ra.p, "first noise bias")->capture_default_str();
    rh.q = region->add_option("--q", ra.q, "second noise bias")->capture_default_str();
    rh.r = region->add_option("--r", ra.r, "third noise bias")->capture_default_str();
    rh.alpha = region->add_option("--alpha", ra.alpha, "auxiliary weight (blackwell)")
                   ->capture_default_str();
    rh.beta = region->add_option("--beta", ra.beta, "auxiliary weight (blackwell)")
                  ->capture_default_str();
    rh.alpha1 = region->add_option("--alpha1", ra.alpha1, "input weight (blackwell outer)")
                    ->capture_default_str();
    rh.alpha2 = region->add_option("--alpha2", ra.alpha2, "input weight (blackwell outer)")
                    ->capture_default_str();
    rh.dist = region->add_option("--dist", ra.dist_path,
                                 "scheme distribution JSON (generic evaluators)");
    rh.format = region->add_option("--format", ra.format, "csv, json, or svg")
                    ->capture_default_str();
    rh.out = region->add_option("--out", ra.out, "output file (default: stdout)");
    region->add_option("--config", ra.config, "JSON config file; flags override it");

    // sweep -----------------------------------------------------------------
    SweepArgs sa;
    SweepOptionHandles sh;
    auto* sweep = app.add_subcommand(
        "sweep", "maximum sum rate of each bound across a noise grid");
    sh.p_min = sweep->add_option("--p-min", sa.p_min, "first noise level")
                   ->capture_default_str();
    sh.p_max = sweep->add_option("--p-max", sa.p_max, "last noise level")
                   ->capture_default_str();
    sh.p_step = sweep->add_option("--p-step", sa.p_step, "noise level increment")
                    ->capture_default_str();
    sh.grid = sweep->add_option("--grid", sa.grid, "simplex grid resolution per axis")
                  ->capture_default_str();
    sh.out = sweep->add_option("--out", sa.out, "output file (default: stdout)");
    sweep->add_option("--config", sa.config, "JSON config file; flags override it");

    // fme -------------------------------------------------------------------
    FmeArgs fa;
    auto* fme = app.add_subcommand(
        "fme", "eliminate variables from an inequality system and prune it");
    fme->add_option("--in", fa.in_path, "input system file")->required();
    fme->add_option("--eliminate", fa.eliminate,
                    "comma-separated variable names (empty: prune only)");
    fme->add_option("--out", fa.out, "output file (default: stdout)");

    // simulate --------------------------------------------------------------
    SimArgs ma;
    SimOptionHandles mh;
    auto* simulate = app.add_subcommand(
        "simulate", "key extraction from correlated observations, plus pad roundtrip");
    mh.blocklength = simulate->add_option("--blocklength", ma.blocklength,
                                          "observation symbols per trial")
                         ->capture_default_str();
    mh.rate = simulate->add_option("--rate", ma.rate, "key bits per symbol")
                  ->capture_default_str();
    mh.trials = simulate->add_option("--trials", ma.trials, "Monte Carlo / pad trials")
                    ->capture_default_str();
    mh.seed = simulate->add_option("--seed", ma.seed, "random seed")->capture_default_str();
    mh.mode = simulate->add_option("--mode", ma.mode, "exhaustive or monte_carlo")
                  ->capture_default_str();
    mh.channel = simulate->add_option("--channel", ma.channel,
                                      "uniform-independent, identical, or a JSON file")
                     ->capture_default_str();
    mh.universal_hash = simulate->add_flag("--universal-hash", ma.universal_hash,
                                           "use the arithmetic universal hash coloring");
    mh.otp = simulate->add_flag("--otp", ma.otp, "run the one-time-pad roundtrip");
    mh.message_bits = simulate->add_option("--message-bits", ma.message_bits,
                                           "pad message bits (default: floor(N*R))");
    mh.out = simulate->add_option("--out", ma.out, "output file (default: stdout)");
    simulate->add_option("--config", ma.config, "JSON config file; flags override it");

    // verify ----------------------------------------------------------------
    VerifyArgs va;
    auto* verify = app.add_subcommand("verify", "run the cross-validation suite");
    verify->add_option("--only", va.only, "run a single named check");
    verify->add_option("--out", va.out, "report file (default: stdout)");
    verify->add_flag("--perturb-inner1", va.perturb_inner1)->group("");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    try {
        if (app.got_subcommand(region)) return cmd_region(ra, rh);
        if (app.got_subcommand(sweep)) return cmd_sweep(sa, sh);
        if (app.got_subcommand(fme)) return cmd_fme(fa);
        if (app.got_subcommand(simulate)) return cmd_simulate(ma, mh);
        if (app.got_subcommand(verify)) return cmd_verify(va);
    } catch (const IoError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 3;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    return 2;  // unreachable: a subcommand is required
}
