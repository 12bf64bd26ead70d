#pragma once

#include <limits>
#include <optional>
#include <string>
#include <vector>

#include "parallax/edge_table.hpp"
#include "parallax/geometry.hpp"
#include "parallax/model.hpp"
#include "parallax/parallax_table.hpp"
#include "parallax/path.hpp"
#include "parallax/persistence.hpp"
#include "parallax/scales.hpp"

namespace parallax {

inline constexpr const char* tool_version = "0.1.0";

struct analysis_config {
    int max_dim = 2; // simplex dimension cap; homology through max_dim - 1
    double max_radius = std::numeric_limits<double>::infinity();
    std::uint64_t seed = 0;
    int threads = 0; // 0 keeps the runtime default
    probe_config probes{};
    int ball_directions = 64;
    double ball_tol = 1e-4;
    double interior_probe_frac = 1e-6; // of the data diameter
    double max_probe_frac = 10.0;      // of the data diameter, interior-reach search cutoff
    double gap_factor = 3.0;           // persistence multiple that makes a dot a feature
};

enum class verdict_kind { matched, mismatched, inconclusive };
std::string to_string(verdict_kind v);

struct feature_dot {
    diagram_dot dot;                 // in the Rips diagram
    std::optional<double> path_death; // death along the inflexible path, when identified
    bool early_birth = false;        // birth <= lambda_lo
    bool survives = false;           // path death > lambda_hi
};

struct digest_info {
    std::uint64_t dataset = 0;
    std::uint64_t model_spec = 0;
};

struct report {
    std::string version;
    digest_info digests;
    analysis_config config;
    std::string model_kind;
    std::size_t n_points = 0;
    std::size_t dim = 0;
    bool distance_collisions = false;

    double lambda_ball = 0.0;
    double lambda_sup = 0.0;
    double lambda_lo = 0.0;
    double lambda_hi = 0.0;
    double hm_horizon = 0.0;

    persistence_diagram diag_r;
    persistence_diagram diag_inflexible;
    persistence_diagram diag_diagonal;
    std::vector<hm_scan> hm_by_dim; // index = homology dimension
    std::size_t birth_ties = 0;

    std::vector<void_certificate> certificates; // inflexible path, dimensions >= 1
    std::vector<feature_dot> features;

    verdict_kind verdict = verdict_kind::inconclusive;
    std::string reason;

    std::uint64_t segment_probes = 0;
    std::uint64_t disk_probes = 0;
    std::uint64_t total_queries = 0;
};

/// Indices into diag.dots of the highly persistent dots: persistence beyond
/// gap_factor times the median of the other positive finite persistences in
/// the same dimension (a lone dot qualifies). Infinite dots qualify in
/// dimensions >= 1; the essential component dot does not.
std::vector<std::size_t> select_features(const persistence_diagram& diag, double gap_factor);

/// Full pipeline: containment validation, Rips persistence, edge probing,
/// scales, path persistence, matching, void certificates, verdict.
report analyze(const point_cloud& cloud, perception_model& model, const analysis_config& config,
               const digest_info& digests = {});

} // namespace parallax
