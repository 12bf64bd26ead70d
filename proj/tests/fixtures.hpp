#pragma once

// Shared geometric fixtures. All analytic values below follow from the
// regular 16-gon chord formula rho_v(k) = sin(k * 11.25 deg) and the shell
// blocking rule: a chord's midpoint sits at distance cos(k * 11.25 deg) from
// the center, so it leaves shell(0.8, 1.2) exactly when k >= 4.

#include <cmath>
#include <numbers>
#include <vector>

#include "parallax/edge_table.hpp"
#include "parallax/errors.hpp"
#include "parallax/flag_complex.hpp"
#include "parallax/geometry.hpp"
#include "parallax/model.hpp"
#include "parallax/persistence.hpp"
#include "parallax/rng.hpp"

namespace fixtures {

inline parallax::point_cloud regular_polygon(std::size_t n, double radius = 1.0, double phase = 0.0) {
    std::vector<double> coords;
    coords.reserve(2 * n);
    for (std::size_t k = 0; k < n; ++k) {
        const double a = phase + 2.0 * std::numbers::pi * double(k) / double(n);
        coords.push_back(radius * std::cos(a));
        coords.push_back(radius * std::sin(a));
    }
    return parallax::point_cloud(2, std::move(coords));
}

inline parallax::point_cloud ring16() { return regular_polygon(16); }

inline parallax::point_cloud unit_square() {
    return parallax::point_cloud(2, {0.0, 0.0, 1.0, 0.0, 1.0, 1.0, 0.0, 1.0});
}

inline std::unique_ptr<parallax::perception_model> shell_08_12() {
    return parallax::make_shell({0.0, 0.0}, 0.8, 1.2);
}

inline std::unique_ptr<parallax::perception_model> ball(double radius, std::vector<double> center = {0.0, 0.0}) {
    return parallax::make_union_of_balls(center.size(), {center}, {radius});
}

inline std::unique_ptr<parallax::perception_model> balls_at(const parallax::point_cloud& cloud, double radius) {
    std::vector<std::vector<double>> centers;
    for (std::size_t i = 0; i < cloud.size(); ++i) {
        auto p = cloud.point(i);
        centers.emplace_back(p.begin(), p.end());
    }
    return parallax::make_union_of_balls(cloud.dim(), std::move(centers), std::vector<double>(cloud.size(), radius));
}

/// Square frame [-3,3]^2 with an open rectangular window (-w,w) x (-h,h)
/// removed, assembled from four overlapping boxes. The segment between
/// (-2,0) and (2,0) crosses the window, and the transverse disk at the
/// midpoint stays outside the model exactly while its radius is below h.
inline std::unique_ptr<parallax::perception_model> window_frame(double w, double h) {
    return parallax::make_box_union(2,
                                    {{-3.0, h}, {-3.0, -3.0}, {-3.0, -3.0}, {w, -3.0}},
                                    {{3.0, 3.0}, {3.0, -h}, {-w, 3.0}, {3.0, 3.0}});
}

/// Eight-membered carbon rings: alternating-height crowns flattened to R^24,
/// one point per conformation angle. A lightweight stand-in with the same
/// ambient layout as ring-conformation datasets; carries a planted circular
/// H1 feature.
inline parallax::point_cloud crown_rings(std::size_t count, double radius = 1.5, double height = 0.4) {
    std::vector<double> coords;
    coords.reserve(count * 24);
    for (std::size_t s = 0; s < count; ++s) {
        const double theta = 2.0 * std::numbers::pi * double(s) / double(count);
        for (std::size_t atom = 0; atom < 8; ++atom) {
            const double a = theta + 2.0 * std::numbers::pi * double(atom) / 8.0;
            coords.push_back(radius * std::cos(a));
            coords.push_back(radius * std::sin(a));
            coords.push_back(atom % 2 == 0 ? height : -height);
        }
    }
    return parallax::point_cloud(24, std::move(coords));
}

inline double chord_rho(int k) { return std::sin(double(k) * std::numbers::pi / 16.0); }

/// Random flag complex with at most max_simplices simplices: a small random
/// cloud, a random radius cutoff, random max_dim, and occasional infinite
/// edge reassignments so path-style filtrations are covered.
inline parallax::filtered_complex random_complex(parallax::rng& gen, std::size_t max_simplices = 50) {
    while (true) {
        const std::size_t n = 4 + gen.next_u64() % 4;
        std::vector<double> coords;
        for (std::size_t k = 0; k < 2 * n; ++k) coords.push_back(gen.uniform(0, 1));
        parallax::point_cloud cloud;
        try {
            cloud = parallax::point_cloud(2, std::move(coords));
        } catch (const parallax::error&) {
            continue;
        }
        const double cutoff = gen.uniform(0.3, 0.9);
        auto table = parallax::build_edge_table(cloud, cutoff);
        if (table.edges.empty()) continue;
        std::vector<double> values;
        for (const auto& e : table.edges) values.push_back(e.rho_v);
        for (auto& v : values) {
            const double roll = gen.uniform01();
            if (roll < 0.1)
                v = std::numeric_limits<double>::infinity();
            else if (roll < 0.3)
                v += gen.uniform(0, 0.5);
        }
        const int max_dim = 1 + int(gen.next_u64() % 3);
        auto complex = parallax::flag_expand(table, values, max_dim);
        if (complex.simplices.size() <= max_simplices && complex.simplices.size() > n) return complex;
    }
}

/// Random diagram of up to max_dots single-dimension dots, occasionally
/// infinite, for matching tests.
inline parallax::persistence_diagram random_diagram(parallax::rng& gen, std::size_t max_dots, int dim = 0) {
    parallax::persistence_diagram diag;
    diag.max_hom_dim = dim;
    const std::size_t count = gen.next_u64() % (max_dots + 1);
    for (std::size_t k = 0; k < count; ++k) {
        parallax::diagram_dot dot;
        dot.dim = dim;
        dot.birth = gen.uniform(0, 2);
        dot.death = gen.uniform01() < 0.15 ? std::numeric_limits<double>::infinity()
                                           : dot.birth + gen.uniform(0.01, 1.5);
        dot.birth_simplex.v[0] = std::uint32_t(k);
        dot.birth_simplex.dim = 0;
        dot.birth_simplex.value = dot.birth;
        diag.dots.push_back(dot);
    }
    return diag;
}

} // namespace fixtures
