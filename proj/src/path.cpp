#include "parallax/path.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "parallax/errors.hpp"

namespace parallax {

namespace {

constexpr double inf = std::numeric_limits<double>::infinity();

/// Smallest t with epsilon(t) >= gap along validated breakpoints, or +inf.
double first_reaching(const std::vector<std::pair<double, double>>& bp, double gap) {
    for (std::size_t k = 0; k < bp.size(); ++k) {
        if (bp[k].second < gap) continue;
        if (k == 0) return bp[0].first;
        const auto [a0, e0] = bp[k - 1];
        const auto [a1, e1] = bp[k];
        return a0 + (gap - e0) * (a1 - a0) / (e1 - e0);
    }
    return inf;
}

/// Smallest t with epsilon strictly positive beyond it, or +inf if the curve
/// is identically zero.
double first_positive(const std::vector<std::pair<double, double>>& bp) {
    for (std::size_t k = 0; k < bp.size(); ++k)
        if (bp[k].second > 0) return bp[k - 1].first; // k >= 1 since epsilon(0) = 0
    return inf;
}

} // namespace

path_spec path_spec::piecewise(std::vector<std::pair<double, double>> breakpoints) {
    for (const auto& [alpha, eps] : breakpoints) {
        if (!std::isfinite(alpha) || alpha < 0) throw_input("path breakpoints need finite alpha >= 0");
        if (!std::isfinite(eps) || eps < 0) throw_input("path breakpoints need finite epsilon >= 0");
    }
    for (std::size_t k = 1; k < breakpoints.size(); ++k) {
        if (breakpoints[k].first <= breakpoints[k - 1].first)
            throw_input("path breakpoints must have strictly increasing alpha");
        if (breakpoints[k].second < breakpoints[k - 1].second)
            throw_input("path breakpoints must have nondecreasing epsilon");
    }
    if (breakpoints.empty() || breakpoints.front().first > 0)
        breakpoints.insert(breakpoints.begin(), {0.0, 0.0});
    if (breakpoints.front().second != 0) throw_input("path needs epsilon(0) = 0");
    path_spec spec;
    spec.kind = kind_t::piecewise_linear;
    spec.breakpoints = std::move(breakpoints);
    return spec;
}

std::string path_spec::name() const {
    switch (kind) {
    case kind_t::inflexible: return "inflexible";
    case kind_t::diagonal: return "diagonal";
    default: return "piecewise_linear";
    }
}

double path_spec::epsilon(double alpha) const {
    switch (kind) {
    case kind_t::inflexible: return 0.0;
    case kind_t::diagonal: return alpha;
    default: break;
    }
    if (breakpoints.empty()) return 0.0;
    if (alpha >= breakpoints.back().first) return breakpoints.back().second;
    std::size_t k = 1;
    while (breakpoints[k].first < alpha) ++k;
    const auto [a0, e0] = breakpoints[k - 1];
    const auto [a1, e1] = breakpoints[k];
    return e0 + (e1 - e0) * (alpha - a0) / (a1 - a0);
}

std::vector<double> path_filtration(const edge_table& table, const parallax_table& probes, const path_spec& path) {
    if (table.edges.size() != probes.edges.size())
        throw_input("edge table and parallax table differ in edge count");
    std::vector<double> values(table.edges.size());
    for (std::size_t k = 0; k < table.edges.size(); ++k) {
        const auto& probe = probes.edges[k];
        if (table.edges[k].rho_v != probe.rho_v) throw_input("edge table and parallax table refer to different edges");
        if (probe.status == edge_status::unblocked) {
            values[k] = probe.rho_v;
            continue;
        }
        const double gap = probe.rho_k_lower - probe.rho_v;
        double t_eps;
        switch (path.kind) {
        case path_spec::kind_t::inflexible: t_eps = inf; break;
        case path_spec::kind_t::diagonal: t_eps = gap; break;
        default: t_eps = gap > 0 ? first_reaching(path.breakpoints, gap) : first_positive(path.breakpoints); break;
        }
        values[k] = std::max(probe.rho_k_lower, t_eps);
    }
    return values;
}

} // namespace parallax
