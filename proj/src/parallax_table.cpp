#include "parallax/parallax_table.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <exception>
#include <string>

#include "parallax/errors.hpp"
#include "parallax/log.hpp"
#include "parallax/rng.hpp"

namespace parallax {

namespace {

constexpr std::uint64_t disk_phase = 0x9e3779b97f4a7c15ULL;

std::vector<double> lerp_point(std::span<const double> x, std::span<const double> y, double t) {
    std::vector<double> p(x.size());
    for (std::size_t k = 0; k < x.size(); ++k) p[k] = (1.0 - t) * x[k] + t * y[k];
    return p;
}

} // namespace

std::uint64_t parallax_table::segment_probes() const {
    std::uint64_t n = 0;
    for (const auto& e : edges) n += e.segment_probes;
    return n;
}

std::uint64_t parallax_table::disk_probes() const {
    std::uint64_t n = 0;
    for (const auto& e : edges) n += e.disk_probes;
    return n;
}

segment_result classify_edge_segment(std::span<const double> x, std::span<const double> y,
                                     perception_model& model, segment_scheme scheme, int samples) {
    std::vector<std::vector<double>> points;
    points.push_back(lerp_point(x, y, 0.5));
    if (scheme == segment_scheme::uniform) {
        if (samples < 1) throw_input("uniform segment scheme needs at least 1 sample");
        for (int i = 1; i <= samples; ++i) points.push_back(lerp_point(x, y, double(i) / (samples + 1)));
    }
    const auto inside = model.membership_batch(points);
    segment_result result;
    result.probes = static_cast<std::uint32_t>(points.size());
    for (std::size_t i = 0; i < points.size(); ++i) {
        if (!inside[i]) {
            result.blocked = true;
            result.witness = std::move(points[i]);
            break;
        }
    }
    return result;
}

std::vector<double> make_disk_schedule(double rho_v, int steps, double min_frac, double max_frac) {
    if (steps < 1) throw_input("disk schedule needs at least 1 step");
    if (!(min_frac > 0) || !(max_frac >= min_frac)) throw_input("disk schedule fractions must satisfy 0 < min <= max");
    std::vector<double> schedule(static_cast<std::size_t>(steps));
    if (steps == 1) {
        schedule[0] = max_frac * rho_v;
        return schedule;
    }
    const double log_ratio = std::log(max_frac / min_frac);
    for (int i = 0; i < steps; ++i)
        schedule[static_cast<std::size_t>(i)] = min_frac * rho_v * std::exp(log_ratio * (double(i) / (steps - 1)));
    return schedule;
}

disk_bound bound_edge_disk(std::span<const double> x, std::span<const double> y, perception_model& model,
                           const std::vector<double>& schedule, int samples_per_disk, std::uint64_t seed,
                           std::size_t edge_index) {
    if (schedule.empty()) throw_input("disk schedule is empty");
    if (samples_per_disk < 1) throw_input("disk probing needs at least 1 sample per disk");
    if (!std::is_sorted(schedule.begin(), schedule.end())) throw_input("disk schedule must be ascending");
    const double rho_v = distance(x, y) / 2.0;
    disk_bound best{rho_v, 0.0, 0.0, 0};
    for (double r : schedule) {
        rng gen(seed, derive_stream(disk_phase ^ std::bit_cast<std::uint64_t>(r), edge_index));
        const auto disk = transverse_disk_samples(x, y, r, static_cast<std::size_t>(samples_per_disk), gen);
        const auto inside = model.membership_batch(disk);
        best.probes += static_cast<std::uint32_t>(disk.size());
        if (std::find(inside.begin(), inside.end(), std::uint8_t{1}) != inside.end()) break;
        best.blocking_radius = r;
        best.rho_k_lower = std::sqrt(rho_v * rho_v + r * r);
        best.epsilon_lower = best.rho_k_lower - rho_v;
    }
    return best;
}

namespace {

parallax_edge probe_edge(const point_cloud& cloud, const edge& e, perception_model& model,
                         const probe_config& config, std::size_t edge_index, bool disks) {
    parallax_edge out;
    out.rho_v = e.rho_v;
    out.rho_k_lower = e.rho_v;
    const auto x = cloud.point(e.i);
    const auto y = cloud.point(e.j);
    const auto seg = classify_edge_segment(x, y, model, config.scheme, config.segment_samples);
    out.segment_probes = seg.probes;
    if (!seg.blocked) return out;
    out.status = edge_status::blocked;
    if (disks) {
        const auto schedule = make_disk_schedule(e.rho_v, config.disk_steps, config.disk_min_frac, config.disk_max_frac);
        const auto bound = bound_edge_disk(x, y, model, schedule, config.disk_samples, config.seed, edge_index);
        out.rho_k_lower = bound.rho_k_lower;
        out.blocking_radius = bound.blocking_radius;
        out.disk_probes = bound.probes;
    }
    return out;
}

bool want_disks(const point_cloud& cloud, const probe_config& config) {
    if (!config.disk_probing) return false;
    if (cloud.dim() < 2) {
        log_info("ambient dimension 1: transverse disk probing skipped");
        return false;
    }
    return true;
}

[[noreturn]] void rethrow_partial(const error& e, std::size_t done, std::size_t total) {
    throw error(e.kind(), "parallax table incomplete (" + std::to_string(done) + " of " + std::to_string(total) +
                              " edges probed): " + e.what());
}

} // namespace

parallax_table build_parallax_table_serial(const point_cloud& cloud, const edge_table& table,
                                           perception_model& model, const probe_config& config) {
    const bool disks = want_disks(cloud, config);
    parallax_table out;
    out.edges.resize(table.edges.size());
    for (std::size_t k = 0; k < table.edges.size(); ++k) {
        try {
            out.edges[k] = probe_edge(cloud, table.edges[k], model, config, k, disks);
        } catch (const error& e) {
            rethrow_partial(e, k, table.edges.size());
        }
    }
    return out;
}

parallax_table build_parallax_table_parallel(const point_cloud& cloud, const edge_table& table,
                                             perception_model& model, const probe_config& config) {
    const bool disks = want_disks(cloud, config);
    parallax_table out;
    out.edges.resize(table.edges.size());
    const std::int64_t n = static_cast<std::int64_t>(table.edges.size());
    std::exception_ptr first_error;
    std::size_t done = 0;
#pragma omp parallel for schedule(dynamic, 8) shared(first_error)
    for (std::int64_t k = 0; k < n; ++k) {
        bool bail;
#pragma omp critical(parallax_probe_error)
        bail = static_cast<bool>(first_error);
        if (bail) continue;
        try {
            out.edges[static_cast<std::size_t>(k)] =
                probe_edge(cloud, table.edges[static_cast<std::size_t>(k)], model, config,
                           static_cast<std::size_t>(k), disks);
#pragma omp critical(parallax_probe_error)
            ++done;
        } catch (...) {
#pragma omp critical(parallax_probe_error)
            if (!first_error) first_error = std::current_exception();
        }
    }
    if (first_error) {
        try {
            std::rethrow_exception(first_error);
        } catch (const error& e) {
            rethrow_partial(e, done, table.edges.size());
        }
    }
    return out;
}

parallax_table build_parallax_table(const point_cloud& cloud, const edge_table& table, perception_model& model,
                                    const probe_config& config) {
    return build_parallax_table_parallel(cloud, table, model, config);
}

} // namespace parallax
