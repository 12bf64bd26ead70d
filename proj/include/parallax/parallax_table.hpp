#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "parallax/edge_table.hpp"
#include "parallax/geometry.hpp"
#include "parallax/model.hpp"

namespace parallax {

enum class edge_status { unblocked, blocked };

/// Per-edge probe outcome. rho_k_lower is a certified lower bound for the
/// scale at which the two balls meet inside the model: rho_v when no
/// distortion was found, sqrt(rho_v^2 + blocking_radius^2) when a transverse
/// disk of radius blocking_radius was rejected entirely. Probing is
/// one-sided: "unblocked" records that no blocking was found at this budget.
struct parallax_edge {
    edge_status status = edge_status::unblocked;
    double rho_v = 0.0;
    double rho_k_lower = 0.0;
    double blocking_radius = 0.0;
    std::uint32_t segment_probes = 0;
    std::uint32_t disk_probes = 0;
};

/// Aligned with edge_table::edges.
struct parallax_table {
    std::vector<parallax_edge> edges;

    std::uint64_t segment_probes() const;
    std::uint64_t disk_probes() const;
};

struct probe_config {
    segment_scheme scheme = segment_scheme::uniform;
    int segment_samples = 9; // interior samples for the uniform scheme; odd counts place one at the barycenter
    bool disk_probing = true;
    int disk_steps = 16;
    int disk_samples = 64;
    double disk_min_frac = 0.05; // schedule spans [min_frac, max_frac] * rho_v, geometric
    double disk_max_frac = 1.0;
    std::uint64_t seed = 0;
};

struct segment_result {
    bool blocked = false;
    std::vector<double> witness; // a probed point outside the model; empty when unblocked
    std::uint32_t probes = 0;
};

/// Probes points of the segment x-y. Blocked iff some probed point falls
/// outside the model; the witness point is returned as evidence.
segment_result classify_edge_segment(std::span<const double> x, std::span<const double> y,
                                     perception_model& model, segment_scheme scheme, int samples);

struct disk_bound {
    double rho_k_lower = 0.0;
    double epsilon_lower = 0.0;
    double blocking_radius = 0.0;
    std::uint32_t probes = 0;
};

/// Geometric radius schedule for transverse disks around an edge midpoint.
std::vector<double> make_disk_schedule(double rho_v, int steps, double min_frac, double max_frac);

/// Walks the schedule ascending and keeps the largest radius whose disk
/// samples all fall outside the model, stopping at the first disk that
/// touches it. Returns (rho_v, 0, 0) when even the smallest disk touches.
/// Samples are drawn per (edge_index, radius), so refining the schedule or
/// raising samples_per_disk replays shared prefixes.
disk_bound bound_edge_disk(std::span<const double> x, std::span<const double> y, perception_model& model,
                           const std::vector<double>& schedule, int samples_per_disk, std::uint64_t seed,
                           std::size_t edge_index);

/// Segment-classifies every edge, then disk-bounds the blocked ones when the
/// ambient dimension allows (>= 2) and config.disk_probing is on.
parallax_table build_parallax_table(const point_cloud& cloud, const edge_table& table, perception_model& model,
                                    const probe_config& config);
parallax_table build_parallax_table_serial(const point_cloud& cloud, const edge_table& table,
                                           perception_model& model, const probe_config& config);
parallax_table build_parallax_table_parallel(const point_cloud& cloud, const edge_table& table,
                                             perception_model& model, const probe_config& config);

} // namespace parallax
