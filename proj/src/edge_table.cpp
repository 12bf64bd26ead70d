#include "parallax/edge_table.hpp"

#include <algorithm>
#include <cmath>

#include "parallax/errors.hpp"

namespace parallax {

namespace {

bool edge_order(const edge& a, const edge& b) {
    if (a.rho_v != b.rho_v) return a.rho_v < b.rho_v;
    if (a.i != b.i) return a.i < b.i;
    return a.j < b.j;
}

void check_inputs(const point_cloud& cloud, double max_radius) {
    if (cloud.size() < 2) throw_precondition("edge table needs at least 2 points");
    if (std::isnan(max_radius) || max_radius <= 0) throw_input("max_radius must be positive");
}

} // namespace

edge_table build_edge_table_serial(const point_cloud& cloud, double max_radius) {
    check_inputs(cloud, max_radius);
    edge_table table{cloud.size(), max_radius, {}};
    const std::size_t n = cloud.size();
    for (std::uint32_t i = 0; i + 1 < n; ++i) {
        const auto pi = cloud.point(i);
        for (std::uint32_t j = i + 1; j < n; ++j) {
            const double r = distance(pi, cloud.point(j)) / 2.0;
            if (r <= max_radius) table.edges.push_back({i, j, r});
        }
    }
    std::sort(table.edges.begin(), table.edges.end(), edge_order);
    return table;
}

edge_table build_edge_table_parallel(const point_cloud& cloud, double max_radius) {
    check_inputs(cloud, max_radius);
    edge_table table{cloud.size(), max_radius, {}};
    const std::size_t n = cloud.size();
    std::vector<std::vector<edge>> rows(n);
#pragma omp parallel for schedule(dynamic, 16)
    for (std::int64_t i = 0; i < static_cast<std::int64_t>(n) - 1; ++i) {
        const auto pi = cloud.point(static_cast<std::size_t>(i));
        auto& row = rows[static_cast<std::size_t>(i)];
        for (std::uint32_t j = static_cast<std::uint32_t>(i) + 1; j < n; ++j) {
            const double r = distance(pi, cloud.point(j)) / 2.0;
            if (r <= max_radius) row.push_back({static_cast<std::uint32_t>(i), j, r});
        }
    }
    std::size_t total = 0;
    for (const auto& row : rows) total += row.size();
    table.edges.reserve(total);
    for (auto& row : rows) table.edges.insert(table.edges.end(), row.begin(), row.end());
    std::sort(table.edges.begin(), table.edges.end(), edge_order);
    return table;
}

edge_table build_edge_table(const point_cloud& cloud, double max_radius) {
    return build_edge_table_parallel(cloud, max_radius);
}

} // namespace parallax
