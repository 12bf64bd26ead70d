#include "parallax/scales.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <unordered_map>

#include "parallax/errors.hpp"

namespace parallax {

namespace {

constexpr double inf = std::numeric_limits<double>::infinity();

} // namespace

std::pair<double, double> lambda_scales(const parallax_table& probes) {
    double lambda_sup = inf;
    for (const auto& e : probes.edges)
        if (e.status == edge_status::blocked) lambda_sup = std::min(lambda_sup, e.rho_v);
    double lambda_lo = 0.0;
    for (const auto& e : probes.edges)
        if (e.rho_v < lambda_sup) lambda_lo = std::max(lambda_lo, e.rho_v);
    return {lambda_lo, lambda_sup};
}

bool check_lsm(const parallax_table& probes, double lambda) {
    for (const auto& e : probes.edges)
        if (e.status == edge_status::blocked && e.rho_v <= lambda) return false;
    return true;
}

namespace {

bool corr_order(const diagram_dot* a, const diagram_dot* b) {
    if (a->birth != b->birth) return a->birth < b->birth;
    return a->birth_simplex.v < b->birth_simplex.v;
}

struct correspondence_table {
    std::vector<std::pair<const diagram_dot*, const diagram_dot*>> pairs;
    std::size_t birth_ties = 0;
};

/// Pairs up dim-dots born by lambda across the two diagrams by (birth,
/// birth simplex). Below a valid scale both complexes share the same
/// positive simplices, so the lists must agree element-wise.
correspondence_table correspond(const persistence_diagram& diag_r, const persistence_diagram& diag_path, int dim,
                                double lambda) {
    std::vector<const diagram_dot*> in_r, in_path;
    for (const auto& dot : diag_r.dots)
        if (dot.dim == dim && dot.birth <= lambda) in_r.push_back(&dot);
    for (const auto& dot : diag_path.dots)
        if (dot.dim == dim && dot.birth <= lambda) in_path.push_back(&dot);
    if (in_r.size() != in_path.size())
        throw_structural("diagram correspondence failed: " + std::to_string(in_r.size()) + " vs " +
                         std::to_string(in_path.size()) + " dots born by " + std::to_string(lambda) +
                         " in dimension " + std::to_string(dim));
    std::sort(in_r.begin(), in_r.end(), corr_order);
    std::sort(in_path.begin(), in_path.end(), corr_order);
    correspondence_table out;
    out.pairs.reserve(in_r.size());
    for (std::size_t k = 0; k < in_r.size(); ++k) {
        if (in_r[k]->birth != in_path[k]->birth || !(in_r[k]->birth_simplex.v == in_path[k]->birth_simplex.v))
            throw_structural("diagram correspondence failed: birth mismatch in dimension " + std::to_string(dim));
        if (k > 0 && in_r[k]->birth == in_r[k - 1]->birth) ++out.birth_ties;
        out.pairs.emplace_back(in_r[k], in_path[k]);
    }
    return out;
}

} // namespace

match_report homological_match(const persistence_diagram& diag_r, const persistence_diagram& diag_path, int dim,
                               double lambda, double delta, double omega) {
    if (!(lambda < delta) || !(delta <= omega)) throw_precondition("homological match needs lambda < delta <= omega");
    const auto corr = correspond(diag_r, diag_path, dim, lambda);
    match_report report;
    report.birth_ties = corr.birth_ties;
    for (const auto& [r_dot, path_dot] : corr.pairs) {
        if (!(std::isfinite(r_dot->death) && r_dot->death <= delta)) continue; // not in the kernel
        const bool dies_by_omega = std::isfinite(path_dot->death) && path_dot->death <= omega;
        (dies_by_omega ? report.matched : report.violating).push_back({*r_dot, *path_dot});
    }
    report.holds = report.violating.empty();
    return report;
}

namespace {

std::vector<double> hm_candidates(const persistence_diagram& diag_r, int dim, bool all_dims, double lambda_sup,
                                  const std::vector<double>& realized) {
    std::vector<double> candidates;
    for (const auto& dot : diag_r.dots)
        if ((all_dims || dot.dim == dim) && std::isfinite(dot.death) && dot.death > lambda_sup)
            candidates.push_back(dot.death);
    for (double v : realized) {
        if (v > lambda_sup) {
            candidates.push_back(v);
            break;
        }
    }
    std::sort(candidates.begin(), candidates.end());
    candidates.erase(std::unique(candidates.begin(), candidates.end()), candidates.end());
    return candidates;
}

hm_scan scan_candidates(const persistence_diagram& diag_r, const persistence_diagram& diag_path, int dim,
                        bool all_dims, double lambda_lo, double lambda_sup, const std::vector<double>& realized) {
    if (!std::isfinite(lambda_sup)) throw_precondition("lambda_hi needs finite lambda_sup");
    hm_scan scan;
    scan.candidates = hm_candidates(diag_r, dim, all_dims, lambda_sup, realized);
    scan.lambda_hi = inf;
    scan.hm_horizon = inf;
    double last_pass = 0.0;
    bool any_pass = false, any_fail = false;
    const int dim_lo = all_dims ? 0 : dim;
    const int dim_hi = all_dims ? std::min(diag_r.max_hom_dim, diag_path.max_hom_dim) : dim;
    for (double delta : scan.candidates) {
        bool pass = true;
        for (int d = dim_lo; d <= dim_hi && pass; ++d) {
            const auto report = homological_match(diag_r, diag_path, d, lambda_lo, delta, inf);
            scan.birth_ties = std::max(scan.birth_ties, report.birth_ties);
            pass = report.holds;
        }
        if (!pass) {
            any_fail = true;
            break; // valid deltas form a prefix
        }
        if (!any_pass) scan.lambda_hi = delta;
        any_pass = true;
        last_pass = delta;
    }
    if (any_fail) scan.hm_horizon = any_pass ? last_pass : 0.0;
    return scan;
}

} // namespace

hm_scan lambda_hi(const persistence_diagram& diag_r, const persistence_diagram& diag_path, int dim,
                  double lambda_lo, double lambda_sup, const std::vector<double>& realized) {
    return scan_candidates(diag_r, diag_path, dim, false, lambda_lo, lambda_sup, realized);
}

hm_scan lambda_hi_overall(const persistence_diagram& diag_r, const persistence_diagram& diag_path,
                          double lambda_lo, double lambda_sup, const std::vector<double>& realized) {
    return scan_candidates(diag_r, diag_path, 0, true, lambda_lo, lambda_sup, realized);
}

std::vector<double> realized_values(const filtered_complex& complex) {
    std::vector<double> values;
    values.reserve(complex.simplices.size());
    for (const auto& s : complex.simplices) values.push_back(s.value);
    std::sort(values.begin(), values.end());
    values.erase(std::unique(values.begin(), values.end()), values.end());
    return values;
}

std::vector<void_certificate> void_certificates(const persistence_diagram& diag_r,
                                                const persistence_diagram& diag_path, int dim, double lambda_lo,
                                                const edge_table& table, const std::vector<double>& path_values) {
    if (path_values.size() != table.edges.size()) throw_input("path values do not align with the edge table");
    std::unordered_map<std::uint64_t, double> value_of;
    value_of.reserve(table.edges.size() * 2);
    for (std::size_t k = 0; k < table.edges.size(); ++k)
        value_of.emplace((std::uint64_t(table.edges[k].i) << 32) | table.edges[k].j, path_values[k]);

    const auto corr = correspond(diag_r, diag_path, dim, lambda_lo);
    std::vector<void_certificate> certificates;
    for (const auto& [r_dot, path_dot] : corr.pairs) {
        if (!(r_dot->birth < lambda_lo) || !(path_dot->death > r_dot->death)) continue;
        void_certificate cert;
        cert.dim = dim;
        cert.birth = r_dot->birth;
        cert.death_r = r_dot->death;
        cert.death_path = path_dot->death;
        cert.r_max = std::isfinite(path_dot->death)
                         ? 2.0 * (path_dot->death - r_dot->death) / (std::numbers::pi - 2.0)
                         : inf;
        const auto& killer = r_dot->death_simplex.value();
        double best = -inf;
        for (std::size_t a = 0; a <= killer.dim; ++a) {
            for (std::size_t b = a + 1; b <= killer.dim; ++b) {
                const auto it = value_of.find((std::uint64_t(killer.v[a]) << 32) | killer.v[b]);
                if (it == value_of.end()) throw_structural("death simplex edge missing from the edge table");
                if (it->second > best) {
                    best = it->second;
                    cert.blocking_edge = {killer.v[a], killer.v[b]};
                }
            }
        }
        certificates.push_back(cert);
    }
    return certificates;
}

} // namespace parallax
