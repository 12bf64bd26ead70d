#pragma once

#include <string>
#include <vector>

#include "parallax/analysis.hpp"
#include "parallax/geometry.hpp"
#include "parallax/model.hpp"

namespace parallax {

struct stability_check {
    std::string name;
    double bound = 0.0;
    double observed = 0.0;
    bool pass = false;
};

struct stability_trial {
    std::uint64_t master_seed = 0;
    std::uint64_t index = 0;
    double kappa = 0.0;
    bool skipped = false;
    std::string skip_reason;
    std::vector<stability_check> checks;

    bool failed() const;
};

struct stability_summary {
    std::vector<stability_trial> trials;
    std::size_t failures = 0;
    std::size_t skips = 0;

    double skip_fraction() const { return trials.empty() ? 0.0 : double(skips) / double(trials.size()); }
};

/// True when every straight segment x -> f(x) probes inside the model,
/// which certifies the perturbation stayed reachable within the model at
/// length <= kappa. Zero-length moves are trivially fine.
bool verify_k_perturbation(const point_cloud& x, const point_cloud& xp, const correspondence& corr,
                           perception_model& model, segment_scheme scheme, int samples);

/// Interleaving checks for a kappa-perturbation: edgewise |rho_v - rho_v'|
/// and per-dimension bottleneck between the Rips diagrams, both bounded by
/// kappa (+1e-9 float slack).
stability_trial verify_rips_stability(const point_cloud& x, const point_cloud& xp, const correspondence& corr,
                                      double kappa, int max_dim);

/// Checks that the conclusion survives a kappa-perturbation: lambda_sup of
/// the perturbed pair stays at least half the interior-reach estimate minus
/// kappa, and the perturbed pair still matches homologically at
/// (lambda-kappa, delta-kappa, inf). Trials whose preconditions cannot be
/// verified are skipped with a reason instead of failing.
stability_trial verify_hm_stability(const report& base, const point_cloud& x, const point_cloud& xp,
                                    const correspondence& corr, perception_model& model,
                                    const analysis_config& config);
stability_trial verify_hm_stability(const point_cloud& x, const point_cloud& xp, const correspondence& corr,
                                    perception_model& model, const analysis_config& config);

stability_summary run_rips_stability_suite(const point_cloud& cloud, double kappa, int max_dim,
                                           std::size_t trials, std::uint64_t master_seed);
stability_summary run_hm_stability_suite(const point_cloud& cloud, perception_model& model,
                                         const analysis_config& config, double kappa, std::size_t trials,
                                         std::uint64_t master_seed);

} // namespace parallax
