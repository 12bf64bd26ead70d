#pragma once

#include <array>
#include <utility>
#include <vector>

#include "parallax/parallax_table.hpp"
#include "parallax/persistence.hpp"

namespace parallax {

/// (lambda_lo, lambda_sup). lambda_sup = min rho_v over blocked edges (+inf
/// when nothing is blocked); lambda_lo = max rho_v strictly below lambda_sup
/// (0 when the shortest edge is already blocked).
std::pair<double, double> lambda_scales(const parallax_table& probes);

/// True iff no blocked edge has rho_v <= lambda: the complexes agree with
/// plain Rips through scale lambda, as far as probing saw.
bool check_lsm(const parallax_table& probes, double lambda);

struct match_pair {
    diagram_dot in_r;
    diagram_dot in_path;
};

struct match_report {
    bool holds = true;
    std::vector<match_pair> matched;   // kernel dots whose path dot also dies by omega
    std::vector<match_pair> violating; // kernel dots whose path dot outlives omega
    std::size_t birth_ties = 0;        // birth-value collisions resolved by representative order
};

/// Checks that every dim-dot of diag_r born by lambda and dead by delta has
/// its corresponding path dot dead by omega. Dots born by lambda are
/// identified across the diagrams by (birth, birth simplex); lexicographic
/// representative order breaks birth ties. A birth present on one side only
/// is a structural error (the scale assumption the identification rests on
/// does not hold).
match_report homological_match(const persistence_diagram& diag_r, const persistence_diagram& diag_path, int dim,
                               double lambda, double delta, double omega);

struct hm_scan {
    double lambda_hi = 0.0;   // smallest passing candidate; +inf when none passes
    double hm_horizon = 0.0;  // largest passing candidate; +inf when no candidate fails, 0 when none passes
    std::vector<double> candidates;
    std::size_t birth_ties = 0;
};

/// Scans candidate delta values (realized death values of diag_r above
/// lambda_sup, plus the smallest realized filtration value above lambda_sup)
/// with homological_match at omega = +inf. Valid deltas form a prefix, so
/// the scan stops at the first failure.
hm_scan lambda_hi(const persistence_diagram& diag_r, const persistence_diagram& diag_path, int dim,
                  double lambda_lo, double lambda_sup, const std::vector<double>& realized);

/// Same scan but a candidate passes only if every dimension 0..max_hom_dim
/// passes; candidate deaths are drawn from all dimensions.
hm_scan lambda_hi_overall(const persistence_diagram& diag_r, const persistence_diagram& diag_path,
                          double lambda_lo, double lambda_sup, const std::vector<double>& realized);

/// Sorted unique finite filtration values of the complex.
std::vector<double> realized_values(const filtered_complex& complex);

struct void_certificate {
    int dim = 0;
    double birth = 0.0;      // c0
    double death_r = 0.0;    // c
    double death_path = 0.0; // d, +inf when the class never dies along the path
    std::array<std::uint32_t, 2> blocking_edge{0, 0};
    double r_max = 0.0; // 2(d - c) / (pi - 2); +inf marker when d is infinite
};

/// One certificate per dot born strictly before lambda_lo whose path death
/// exceeds its Rips death: the model contains a void of radius at least
/// r_max near the feature. The blocking edge is the edge of the Rips death
/// simplex with the largest path filtration value (lex tie-break).
std::vector<void_certificate> void_certificates(const persistence_diagram& diag_r,
                                                const persistence_diagram& diag_path, int dim, double lambda_lo,
                                                const edge_table& table, const std::vector<double>& path_values);

} // namespace parallax
