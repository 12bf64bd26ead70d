#pragma once

#include <cstdint>
#include <vector>

#include "parallax/geometry.hpp"

namespace parallax {

/// One candidate pair (i, j) with i < j. rho_v is half the Euclidean
/// distance: the radius at which the two balls first touch.
struct edge {
    std::uint32_t i = 0;
    std::uint32_t j = 0;
    double rho_v = 0.0;
};

inline bool operator==(const edge& a, const edge& b) {
    return a.i == b.i && a.j == b.j && a.rho_v == b.rho_v;
}

/// All pairs with rho_v <= max_radius, sorted by (rho_v, i, j).
struct edge_table {
    std::size_t n_vertices = 0;
    double max_radius = 0.0;
    std::vector<edge> edges;
};

edge_table build_edge_table(const point_cloud& cloud, double max_radius);
edge_table build_edge_table_serial(const point_cloud& cloud, double max_radius);
edge_table build_edge_table_parallel(const point_cloud& cloud, double max_radius);

} // namespace parallax
