#include <cstdio>
#include <fstream>
#include <limits>
#include <string>

#include <CLI11.hpp>
#include <json.hpp>

#ifdef _OPENMP
#include <omp.h>
#endif

#include "parallax/analysis.hpp"
#include "parallax/digest.hpp"
#include "parallax/edge_table.hpp"
#include "parallax/errors.hpp"
#include "parallax/flag_complex.hpp"
#include "parallax/geometry.hpp"
#include "parallax/model.hpp"
#include "parallax/persistence.hpp"
#include "parallax/report_io.hpp"
#include "parallax/stability.hpp"

namespace {

struct cli_flags {
    std::string data;
    std::string model;
    std::string out;
    int max_dim = 2;
    double max_radius = std::numeric_limits<double>::infinity();
    std::uint64_t seed = 0;
    int threads = 0;
    bool diameter = false;
    std::string segment_scheme = "uniform";
    int segment_samples = 9;
    int disk_steps = 16;
    int disk_samples = 64;
    double kappa = 0.0;
    std::size_t trials = 0;
};

void add_common_flags(CLI::App* cmd, cli_flags& f) {
    cmd->add_option("--data", f.data, "dataset CSV, one point per row")->required();
    cmd->add_option("--out", f.out, "output path for the JSON artifact");
    cmd->add_option("--max-dim", f.max_dim, "top simplex dimension (homology one below)")
        ->check(CLI::Range(1, 2))
        ->capture_default_str();
    cmd->add_option("--max-radius", f.max_radius, "drop edges with circumradius above this");
    cmd->add_option("--seed", f.seed, "master seed for all probing randomness")->capture_default_str();
    cmd->add_option("--threads", f.threads, "worker cap, 0 keeps the runtime default")->capture_default_str();
    cmd->add_flag("--diameter", f.diameter, "emit scale values doubled (diameter convention)");
}

void add_probe_flags(CLI::App* cmd, cli_flags& f) {
    cmd->add_option("--model", f.model, "model spec JSON")->required();
    cmd->add_option("--segment-scheme", f.segment_scheme, "edge segment sampling scheme")
        ->check(CLI::IsMember({"barycenter", "uniform"}))
        ->capture_default_str();
    cmd->add_option("--segment-samples", f.segment_samples, "interior samples per edge segment")
        ->check(CLI::PositiveNumber)
        ->capture_default_str();
    cmd->add_option("--disk-steps", f.disk_steps, "radii in the transverse disk schedule")
        ->check(CLI::PositiveNumber)
        ->capture_default_str();
    cmd->add_option("--disk-samples", f.disk_samples, "samples per transverse disk")
        ->check(CLI::PositiveNumber)
        ->capture_default_str();
}

parallax::analysis_config make_config(const cli_flags& f) {
    parallax::analysis_config config;
    config.max_dim = f.max_dim;
    config.max_radius = f.max_radius;
    config.seed = f.seed;
    config.threads = f.threads;
    config.probes.scheme = f.segment_scheme == "barycenter" ? parallax::segment_scheme::barycenter
                                                            : parallax::segment_scheme::uniform;
    config.probes.segment_samples = f.segment_samples;
    config.probes.disk_steps = f.disk_steps;
    config.probes.disk_samples = f.disk_samples;
    return config;
}

void write_file(const std::string& path, const std::string& text) {
    std::ofstream out(path, std::ios::binary);
    if (!out) parallax::throw_input("cannot open '" + path + "' for writing");
    out << text;
    if (!out.flush()) parallax::throw_input("write to '" + path + "' failed");
}

std::string scale_str(double v, bool diameter) {
    if (std::isinf(v)) return "inf";
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.9g", diameter ? 2 * v : v);
    return buf;
}

int cmd_analyze(const cli_flags& f) {
    const auto cloud = parallax::load_csv_file(f.data);
    const auto model = parallax::load_model_file(f.model);
    const parallax::digest_info digests{parallax::digest_file(f.data), parallax::digest_file(f.model)};
    const auto rep = parallax::analyze(cloud, *model, make_config(f), digests);

    if (!f.out.empty()) write_file(f.out, parallax::report_to_json(rep, f.diameter));
    const char* unit = f.diameter ? "diameter" : "radius";
    std::printf("points=%zu dim=%zu model=%s queries=%llu\n", rep.n_points, rep.dim, rep.model_kind.c_str(),
                static_cast<unsigned long long>(rep.total_queries));
    std::printf("scales (%s): lambda_ball=%s lambda_sup=%s lambda_lo=%s lambda_hi=%s hm_horizon=%s\n", unit,
                scale_str(rep.lambda_ball, f.diameter).c_str(), scale_str(rep.lambda_sup, f.diameter).c_str(),
                scale_str(rep.lambda_lo, f.diameter).c_str(), scale_str(rep.lambda_hi, f.diameter).c_str(),
                scale_str(rep.hm_horizon, f.diameter).c_str());
    std::printf("features=%zu void_certificates=%zu\n", rep.features.size(), rep.certificates.size());
    std::printf("verdict: %s (%s)\n", parallax::to_string(rep.verdict).c_str(), rep.reason.c_str());

    switch (rep.verdict) {
    case parallax::verdict_kind::matched: return 0;
    case parallax::verdict_kind::mismatched: return 2;
    case parallax::verdict_kind::inconclusive: return 3;
    }
    return 1;
}

std::string svg_path_for(const std::string& out) {
    const auto dot = out.rfind('.');
    if (dot == std::string::npos || out.find('/', dot) != std::string::npos) return out + ".svg";
    return out.substr(0, dot) + ".svg";
}

int cmd_diagram(const cli_flags& f) {
#ifdef _OPENMP
    if (f.threads > 0) omp_set_num_threads(f.threads);
#endif
    const auto cloud = parallax::load_csv_file(f.data);
    const auto table = parallax::build_edge_table(cloud, f.max_radius);
    std::vector<double> values;
    values.reserve(table.edges.size());
    for (const auto& e : table.edges) values.push_back(e.rho_v);
    const auto complex = parallax::flag_expand(table, values, f.max_dim);
    const auto diag = parallax::persistence(complex);

    const std::string json = parallax::diagram_to_json(diag, f.diameter);
    if (f.out.empty()) {
        std::fputs(json.c_str(), stdout);
        return 0;
    }
    write_file(f.out, json);
    const std::string svg = svg_path_for(f.out);
    write_file(svg, parallax::diagram_to_svg(diag, f.diameter));
    std::printf("wrote %s and %s (%zu dots)\n", f.out.c_str(), svg.c_str(), diag.dots.size());
    return 0;
}

int cmd_perturb_test(const cli_flags& f) {
    const auto cloud = parallax::load_csv_file(f.data);
    const auto model = parallax::load_model_file(f.model);
    const auto config = make_config(f);

    const auto rips = parallax::run_rips_stability_suite(cloud, f.kappa, f.max_dim, f.trials, f.seed);
    const auto hm = parallax::run_hm_stability_suite(cloud, *model, config, f.kappa, f.trials, f.seed);

    if (!f.out.empty()) {
        nlohmann::ordered_json j;
        j["rips"] = nlohmann::ordered_json::parse(parallax::trials_to_json(rips));
        j["hm"] = nlohmann::ordered_json::parse(parallax::trials_to_json(hm));
        write_file(f.out, j.dump(2) + "\n");
    }
    std::printf("rips: %zu trials, %zu failures\n", rips.trials.size(), rips.failures);
    std::printf("hm: %zu trials, %zu failures, %zu skips (%.0f%%)\n", hm.trials.size(), hm.failures, hm.skips,
                100.0 * hm.skip_fraction());
    if (!hm.trials.empty() && hm.skips == hm.trials.size()) {
        std::fprintf(stderr, "parallax: all-trials-skipped: every trial hit a hypothesis guard\n");
        return 1;
    }
    if (rips.failures + hm.failures > 0) {
        std::fprintf(stderr, "parallax: %zu stability failures\n", rips.failures + hm.failures);
        return 1;
    }
    std::puts("stability: ok");
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"parallax: decide whether a membership-query model matches the shape of a dataset"};
    app.require_subcommand(1);

    cli_flags flags;
    auto* analyze = app.add_subcommand("analyze", "full pipeline: probe, filter, match, verdict");
    add_common_flags(analyze, flags);
    add_probe_flags(analyze, flags);

    auto* diagram = app.add_subcommand("diagram", "Rips persistence of the dataset as JSON + SVG");
    add_common_flags(diagram, flags);

    auto* perturb = app.add_subcommand("perturb-test", "seeded perturbation stability suites");
    add_common_flags(perturb, flags);
    add_probe_flags(perturb, flags);
    perturb->add_option("--kappa", flags.kappa, "perturbation radius")->required()->check(CLI::PositiveNumber);
    perturb->add_option("--trials", flags.trials, "trial count")->required()->check(CLI::PositiveNumber);

    CLI11_PARSE(app, argc, argv);

    try {
        if (analyze->parsed()) return cmd_analyze(flags);
        if (diagram->parsed()) return cmd_diagram(flags);
        return cmd_perturb_test(flags);
    } catch (const parallax::error& e) {
        std::fprintf(stderr, "parallax: %s\n", e.what());
        return 1;
    } catch (const std::exception& e) {
        std::fprintf(stderr, "parallax: unexpected: %s\n", e.what());
        return 1;
    }
}
