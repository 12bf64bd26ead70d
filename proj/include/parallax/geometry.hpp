#pragma once

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "parallax/rng.hpp"

namespace parallax {

/// A finite point set in R^n. Points keep their load order; index i always
/// refers to the same point. Duplicates are rejected on construction.
class point_cloud {
public:
    point_cloud() = default;
    point_cloud(std::size_t dim, std::vector<double> coords);

    std::size_t dim() const { return dim_; }
    std::size_t size() const { return dim_ == 0 ? 0 : coords_.size() / dim_; }

    std::span<const double> point(std::size_t i) const { return {coords_.data() + i * dim_, dim_}; }
    const std::vector<double>& coords() const { return coords_; }

    /// Largest pairwise distance (0 for fewer than two points).
    double diameter() const;

    bool operator==(const point_cloud&) const = default;

private:
    std::size_t dim_ = 0;
    std::vector<double> coords_; // row-major, size() * dim_
};

/// Bijection between two equal-size clouds with a per-pair displacement bound.
struct correspondence {
    std::vector<std::pair<std::size_t, std::size_t>> pairs;
    double kappa = 0.0;
};

enum class segment_scheme { barycenter, uniform };

double distance(std::span<const double> p, std::span<const double> q);

/// Interior samples of the segment from x to y. The barycenter scheme yields
/// the single midpoint; uniform(m) yields m points at parameters i/(m+1).
/// Endpoints are never included.
std::vector<std::vector<double>> segment_samples(std::span<const double> x, std::span<const double> y,
                                                 segment_scheme scheme, std::size_t m = 1);

/// `count` points sampled uniformly from the codimension-1 disk of radius r
/// centered at the midpoint of xy and orthogonal to y - x. Requires dim >= 2.
std::vector<std::vector<double>> transverse_disk_samples(std::span<const double> x, std::span<const double> y,
                                                         double r, std::size_t count, rng& gen);

/// Moves every point by an independent uniform-in-ball vector of norm <= kappa.
/// The correspondence records the identity pairing with bound kappa.
std::pair<point_cloud, correspondence> perturb_pointwise(const point_cloud& cloud, double kappa, rng& gen);

/// Loads a dataset from CSV: one point per line, comma-separated coordinates,
/// '#' lines ignored. Dimension is fixed by the first data line.
point_cloud load_csv(std::istream& in, const std::string& name = "<stream>");
point_cloud load_csv_file(const std::string& path);

void write_csv_file(const std::string& path, const point_cloud& cloud);

/// True when two pairwise distances collide within tol; such datasets break
/// the distinct-lengths hypothesis behind dot matching, so reports flag them.
bool has_distance_collisions(const point_cloud& cloud, double tol = 1e-9);

} // namespace parallax
