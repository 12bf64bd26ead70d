#pragma once

#include <string>
#include <utility>
#include <vector>

#include "parallax/edge_table.hpp"
#include "parallax/parallax_table.hpp"

namespace parallax {

/// Distortion budget curve epsilon(alpha): nondecreasing, epsilon(0) = 0,
/// constant after the last breakpoint. The inflexible path is epsilon == 0,
/// the diagonal is epsilon(alpha) = alpha.
struct path_spec {
    enum class kind_t { inflexible, diagonal, piecewise_linear };

    kind_t kind = kind_t::inflexible;
    std::vector<std::pair<double, double>> breakpoints; // (alpha, epsilon), piecewise_linear only

    static path_spec inflexible() { return {kind_t::inflexible, {}}; }
    static path_spec diagonal() { return {kind_t::diagonal, {}}; }
    static path_spec piecewise(std::vector<std::pair<double, double>> breakpoints);

    std::string name() const;

    /// epsilon at alpha (validated breakpoints, constant extension).
    double epsilon(double alpha) const;
};

/// Smallest scale t at which each edge enters the path's complex:
/// rho_v for unblocked edges; for blocked edges the smallest t covering both
/// the scale bound (rho_k_lower <= t) and the distortion bound
/// (epsilon(t) >= rho_k_lower - rho_v, strictly positive when the certified
/// gap is zero, since blocking proves some distortion exists). +inf when the
/// curve never grants the needed distortion.
std::vector<double> path_filtration(const edge_table& table, const parallax_table& probes, const path_spec& path);

} // namespace parallax
