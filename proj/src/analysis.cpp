#include "parallax/analysis.hpp"

#include <algorithm>
#include <cmath>

#ifdef _OPENMP
#include <omp.h>
#endif

#include "parallax/digest.hpp"
#include "parallax/errors.hpp"
#include "parallax/flag_complex.hpp"
#include "parallax/log.hpp"

namespace parallax {

namespace {

constexpr double inf = std::numeric_limits<double>::infinity();

} // namespace

std::string to_string(verdict_kind v) {
    switch (v) {
    case verdict_kind::matched: return "matched";
    case verdict_kind::mismatched: return "mismatched";
    default: return "inconclusive";
    }
}

std::vector<std::size_t> select_features(const persistence_diagram& diag, double gap_factor) {
    std::vector<std::size_t> out;
    for (std::size_t i = 0; i < diag.dots.size(); ++i) {
        const auto& dot = diag.dots[i];
        if (!std::isfinite(dot.death)) {
            if (dot.dim >= 1) out.push_back(i);
            continue;
        }
        std::vector<double> others;
        for (std::size_t j = 0; j < diag.dots.size(); ++j) {
            if (j == i || diag.dots[j].dim != dot.dim) continue;
            const double p = diag.dots[j].persistence();
            if (std::isfinite(p) && p > 0) others.push_back(p);
        }
        if (others.empty()) {
            out.push_back(i);
            continue;
        }
        std::sort(others.begin(), others.end());
        const std::size_t n = others.size();
        const double median = n % 2 ? others[n / 2] : (others[n / 2 - 1] + others[n / 2]) / 2.0;
        if (dot.persistence() > gap_factor * median) out.push_back(i);
    }
    return out;
}

namespace {

/// Death of the feature's class along the path, found through the kernel
/// pairs of a full-range match.
std::optional<double> path_death_of(const persistence_diagram& diag_r, const persistence_diagram& diag_path,
                                    const diagram_dot& dot, double lambda_lo) {
    if (!(dot.birth <= lambda_lo) || lambda_lo <= 0) return std::nullopt;
    if (!std::isfinite(dot.death)) return inf; // path deaths are never earlier
    const auto match = homological_match(diag_r, diag_path, dot.dim, lambda_lo, inf, inf);
    for (const auto& pair : match.matched)
        if (pair.in_r == dot) return pair.in_path.death;
    for (const auto& pair : match.violating)
        if (pair.in_r == dot) return pair.in_path.death;
    return std::nullopt;
}

} // namespace

report analyze(const point_cloud& cloud, perception_model& model, const analysis_config& config,
               const digest_info& digests) {
    if (config.max_dim < 1 || config.max_dim > 3) throw_input("max_dim must be 1, 2, or 3");
    if (cloud.size() < 2) throw_input("analysis needs at least 2 points");
    if (cloud.dim() != model.dim())
        throw_input("dataset dimension " + std::to_string(cloud.dim()) + " != model dimension " +
                    std::to_string(model.dim()));
#ifdef _OPENMP
    if (config.threads > 0) omp_set_num_threads(config.threads);
#endif

    report rep;
    rep.version = tool_version;
    rep.digests = digests;
    if (rep.digests.dataset == 0) rep.digests.dataset = digest_point_cloud(cloud);
    if (rep.digests.model_spec == 0) rep.digests.model_spec = fnv1a64(model.kind());
    rep.config = config;
    rep.config.probes.seed = config.seed;
    rep.model_kind = model.kind();
    rep.n_points = cloud.size();
    rep.dim = cloud.dim();

    const double diameter = cloud.diameter();
    const auto containment = validate_model_contains(model, cloud, config.interior_probe_frac * diameter);
    if (!containment.ok) {
        const auto& v = containment.violations.front();
        throw_input("model does not contain the dataset: point " + std::to_string(v.index) + " " + v.reason +
                    (containment.violations.size() > 1
                         ? " (+" + std::to_string(containment.violations.size() - 1) + " more)"
                         : ""));
    }
    rep.distance_collisions = has_distance_collisions(cloud);
    if (rep.distance_collisions)
        log_info("pairwise distance collisions present; matching falls back to representative order");

    const auto table = build_edge_table(cloud, config.max_radius);
    std::vector<double> rho(table.edges.size());
    for (std::size_t k = 0; k < rho.size(); ++k) rho[k] = table.edges[k].rho_v;
    const auto complex_r = flag_expand(table, rho, config.max_dim);
    rep.diag_r = persistence(complex_r);

    auto probes = config.probes;
    probes.seed = config.seed;
    const auto ptable = build_parallax_table(cloud, table, model, probes);
    rep.segment_probes = ptable.segment_probes();
    rep.disk_probes = ptable.disk_probes();

    const auto [lambda_lo, lambda_sup] = lambda_scales(ptable);
    rep.lambda_lo = lambda_lo;
    rep.lambda_sup = lambda_sup;
    rep.lambda_ball = lambda_ball_lower(cloud, model, static_cast<std::size_t>(config.ball_directions), config.seed,
                                        config.ball_tol, config.max_probe_frac * diameter);

    const auto f_inflexible = path_filtration(table, ptable, path_spec::inflexible());
    const auto f_diagonal = path_filtration(table, ptable, path_spec::diagonal());
    rep.diag_inflexible = persistence(flag_expand(table, f_inflexible, config.max_dim));
    rep.diag_diagonal = persistence(flag_expand(table, f_diagonal, config.max_dim));

    rep.lambda_hi = inf;
    rep.hm_horizon = inf;
    if (std::isfinite(lambda_sup)) {
        const auto realized = realized_values(complex_r);
        const auto overall = lambda_hi_overall(rep.diag_r, rep.diag_inflexible, lambda_lo, lambda_sup, realized);
        rep.lambda_hi = overall.lambda_hi;
        rep.hm_horizon = overall.hm_horizon;
        rep.birth_ties = overall.birth_ties;
        for (int d = 0; d < config.max_dim; ++d)
            rep.hm_by_dim.push_back(lambda_hi(rep.diag_r, rep.diag_inflexible, d, lambda_lo, lambda_sup, realized));
    }

    for (int d = 1; d < config.max_dim; ++d) {
        const auto certs = void_certificates(rep.diag_r, rep.diag_inflexible, d, lambda_lo, table, f_inflexible);
        rep.certificates.insert(rep.certificates.end(), certs.begin(), certs.end());
    }

    for (std::size_t i : select_features(rep.diag_r, config.gap_factor)) {
        feature_dot f;
        f.dot = rep.diag_r.dots[i];
        f.early_birth = f.dot.birth <= lambda_lo;
        f.path_death = path_death_of(rep.diag_r, rep.diag_inflexible, f.dot, lambda_lo);
        f.survives = f.path_death.has_value() && *f.path_death > rep.lambda_hi;
        rep.features.push_back(f);
    }

    if (rep.features.empty()) {
        rep.verdict = verdict_kind::inconclusive;
        rep.reason = "no-persistent-features";
    } else if (!std::isfinite(lambda_sup)) {
        rep.verdict = verdict_kind::mismatched;
        rep.reason = "convex-indistinguishable";
    } else if (lambda_lo <= 0) {
        rep.verdict = verdict_kind::mismatched;
        rep.reason = "lsm-zero";
    } else {
        const bool all_matched = std::all_of(rep.features.begin(), rep.features.end(),
                                             [](const feature_dot& f) { return f.early_birth && f.survives; });
        rep.verdict = all_matched ? verdict_kind::matched : verdict_kind::mismatched;
        rep.reason = all_matched ? "features-matched" : "feature-quadrant";
    }

    rep.total_queries = model.query_count();
    return rep;
}

} // namespace parallax
