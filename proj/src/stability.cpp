#include "parallax/stability.hpp"

#include <algorithm>
#include <cmath>

#include "parallax/bottleneck.hpp"
#include "parallax/errors.hpp"
#include "parallax/flag_complex.hpp"
#include "parallax/log.hpp"
#include "parallax/parallax_table.hpp"
#include "parallax/rng.hpp"

namespace parallax {

namespace {

constexpr double inf = std::numeric_limits<double>::infinity();
constexpr double slack = 1e-9;
constexpr std::uint64_t trial_phase = 0x94d049bb133111ebULL;

stability_check make_check(std::string name, double bound, double observed) {
    return {std::move(name), bound, observed, observed <= bound + slack};
}

persistence_diagram rips_diagram(const point_cloud& cloud, int max_dim) {
    const auto table = build_edge_table(cloud, inf);
    std::vector<double> rho(table.edges.size());
    for (std::size_t k = 0; k < rho.size(); ++k) rho[k] = table.edges[k].rho_v;
    return persistence(flag_expand(table, rho, max_dim));
}

} // namespace

bool stability_trial::failed() const {
    if (skipped) return false;
    return std::any_of(checks.begin(), checks.end(), [](const stability_check& c) { return !c.pass; });
}

bool verify_k_perturbation(const point_cloud& x, const point_cloud& xp, const correspondence& corr,
                           perception_model& model, segment_scheme scheme, int samples) {
    for (const auto& [i, j] : corr.pairs) {
        if (distance(x.point(i), xp.point(j)) == 0.0) continue;
        const auto seg = classify_edge_segment(x.point(i), xp.point(j), model, scheme, samples);
        if (seg.blocked) {
            log_info("perturbation segment for point " + std::to_string(i) + " leaves the model");
            return false;
        }
    }
    return true;
}

stability_trial verify_rips_stability(const point_cloud& x, const point_cloud& xp, const correspondence& corr,
                                      double kappa, int max_dim) {
    if (x.size() != xp.size() || corr.pairs.size() != x.size())
        throw_input("rips stability needs a full correspondence");
    stability_trial trial;
    trial.kappa = kappa;

    double worst = 0.0;
    for (std::size_t a = 0; a < corr.pairs.size(); ++a) {
        for (std::size_t b = a + 1; b < corr.pairs.size(); ++b) {
            const double rho = distance(x.point(corr.pairs[a].first), x.point(corr.pairs[b].first)) / 2.0;
            const double rho_p = distance(xp.point(corr.pairs[a].second), xp.point(corr.pairs[b].second)) / 2.0;
            worst = std::max(worst, std::abs(rho - rho_p));
        }
    }
    trial.checks.push_back(make_check("edgewise-rho-v", kappa, worst));

    const auto diag = rips_diagram(x, max_dim);
    const auto diag_p = rips_diagram(xp, max_dim);
    for (int d = 0; d < max_dim; ++d)
        trial.checks.push_back(make_check("bottleneck-dim-" + std::to_string(d), kappa, bottleneck(diag, diag_p, d)));
    return trial;
}

stability_trial verify_hm_stability(const report& base, const point_cloud& x, const point_cloud& xp,
                                    const correspondence& corr, perception_model& model,
                                    const analysis_config& config) {
    stability_trial trial;
    trial.kappa = corr.kappa;
    const double kappa = corr.kappa;

    const auto skip = [&](std::string reason) {
        trial.skipped = true;
        trial.skip_reason = std::move(reason);
        return trial;
    };

    if (!std::isfinite(base.lambda_sup) || !std::isfinite(base.lambda_hi)) return skip("base-not-hm");
    if (!(kappa < base.lambda_ball / 2.0)) return skip("kappa-not-below-half-lambda-ball");
    const double interior = config.interior_probe_frac * x.diameter();
    if (!validate_model_contains(model, xp, interior).ok) return skip("perturbed-point-outside-model");
    if (!verify_k_perturbation(x, xp, corr, model, config.probes.scheme, config.probes.segment_samples))
        return skip("perturbation-segment-left-model");

    const auto perturbed = analyze(xp, model, config);
    const double lambda = base.lambda_lo - kappa;
    const double delta = base.lambda_hi - kappa;
    if (!(perturbed.lambda_sup > lambda)) return skip("perturbed-not-lsm");

    trial.checks.push_back(
        make_check("lambda-sup-lower-bound", perturbed.lambda_sup, base.lambda_ball / 2.0 - kappa));

    std::size_t violations = 0;
    const int top = std::min(perturbed.diag_r.max_hom_dim, perturbed.diag_inflexible.max_hom_dim);
    for (int d = 0; d <= top; ++d) {
        const auto via_inflexible =
            homological_match(perturbed.diag_r, perturbed.diag_inflexible, d, lambda, delta, inf);
        if (via_inflexible.holds) continue;
        const auto via_diagonal = homological_match(perturbed.diag_r, perturbed.diag_diagonal, d, lambda, delta, inf);
        if (!via_diagonal.holds) violations += via_diagonal.violating.size();
    }
    trial.checks.push_back(make_check("hm-conclusion-violations", 0.0, double(violations)));
    return trial;
}

stability_trial verify_hm_stability(const point_cloud& x, const point_cloud& xp, const correspondence& corr,
                                    perception_model& model, const analysis_config& config) {
    return verify_hm_stability(analyze(x, model, config), x, xp, corr, model, config);
}

stability_summary run_rips_stability_suite(const point_cloud& cloud, double kappa, int max_dim,
                                           std::size_t trials, std::uint64_t master_seed) {
    stability_summary summary;
    for (std::size_t t = 0; t < trials; ++t) {
        rng gen(master_seed, derive_stream(trial_phase, t));
        auto [xp, corr] = perturb_pointwise(cloud, kappa, gen);
        auto trial = verify_rips_stability(cloud, xp, corr, kappa, max_dim);
        trial.master_seed = master_seed;
        trial.index = t;
        if (trial.failed()) ++summary.failures;
        summary.trials.push_back(std::move(trial));
    }
    return summary;
}

stability_summary run_hm_stability_suite(const point_cloud& cloud, perception_model& model,
                                         const analysis_config& config, double kappa, std::size_t trials,
                                         std::uint64_t master_seed) {
    stability_summary summary;
    auto base_config = config;
    base_config.seed = master_seed;
    const auto base = analyze(cloud, model, base_config);
    for (std::size_t t = 0; t < trials; ++t) {
        rng gen(master_seed, derive_stream(trial_phase, t));
        auto [xp, corr] = perturb_pointwise(cloud, kappa, gen);
        auto trial_config = base_config;
        trial_config.seed = master_seed + t + 1;
        auto trial = verify_hm_stability(base, cloud, xp, corr, model, trial_config);
        trial.master_seed = master_seed;
        trial.index = t;
        if (trial.failed()) ++summary.failures;
        if (trial.skipped) ++summary.skips;
        summary.trials.push_back(std::move(trial));
    }
    return summary;
}

} // namespace parallax
