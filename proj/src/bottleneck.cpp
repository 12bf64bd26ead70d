#include "parallax/bottleneck.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace parallax {

namespace {

struct finite_dot {
    double birth, death;
};

double pair_cost(const finite_dot& a, const finite_dot& b) {
    return std::max(std::abs(a.birth - b.birth), std::abs(a.death - b.death));
}

double diag_cost(const finite_dot& a) { return (a.death - a.birth) / 2.0; }

/// Perfect-matching test on the padded bipartite graph at threshold c.
/// Left: A dots then diagonal copies of B dots. Right: B dots then diagonal
/// copies of A dots. Kuhn's augmenting paths.
class matcher {
public:
    matcher(const std::vector<finite_dot>& a, const std::vector<finite_dot>& b) : a_(a), b_(b) {}

    bool feasible(double c) {
        const std::size_t left = a_.size() + b_.size();
        const std::size_t right = b_.size() + a_.size();
        match_right_.assign(right, -1);
        std::size_t matched = 0;
        for (std::size_t u = 0; u < left; ++u) {
            visited_.assign(right, false);
            if (augment(u, c)) ++matched;
        }
        return matched == left;
    }

private:
    bool adjacent(std::size_t u, std::size_t r, double c) const {
        const std::size_t n = a_.size(), m = b_.size();
        if (u < n) {
            if (r < m) return pair_cost(a_[u], b_[r]) <= c;
            return r - m == u && diag_cost(a_[u]) <= c;
        }
        const std::size_t j = u - n;
        if (r < m) return r == j && diag_cost(b_[j]) <= c;
        return true; // diagonal copies pair freely at cost 0
    }

    bool augment(std::size_t u, double c) {
        const std::size_t right = b_.size() + a_.size();
        for (std::size_t r = 0; r < right; ++r) {
            if (visited_[r] || !adjacent(u, r, c)) continue;
            visited_[r] = true;
            if (match_right_[r] < 0 || augment(static_cast<std::size_t>(match_right_[r]), c)) {
                match_right_[r] = static_cast<int>(u);
                return true;
            }
        }
        return false;
    }

    const std::vector<finite_dot>& a_;
    const std::vector<finite_dot>& b_;
    std::vector<int> match_right_;
    std::vector<bool> visited_;
};

} // namespace

double bottleneck(const persistence_diagram& da, const persistence_diagram& db, int dim) {
    constexpr double inf = std::numeric_limits<double>::infinity();
    std::vector<finite_dot> a, b;
    std::vector<double> a_inf, b_inf;
    for (const auto& dot : da.dots) {
        if (dot.dim != dim) continue;
        if (std::isfinite(dot.death)) a.push_back({dot.birth, dot.death});
        else a_inf.push_back(dot.birth);
    }
    for (const auto& dot : db.dots) {
        if (dot.dim != dim) continue;
        if (std::isfinite(dot.death)) b.push_back({dot.birth, dot.death});
        else b_inf.push_back(dot.birth);
    }

    if (a_inf.size() != b_inf.size()) return inf;
    std::sort(a_inf.begin(), a_inf.end());
    std::sort(b_inf.begin(), b_inf.end());
    double inf_part = 0.0;
    for (std::size_t i = 0; i < a_inf.size(); ++i) inf_part = std::max(inf_part, std::abs(a_inf[i] - b_inf[i]));

    if (a.empty() && b.empty()) return inf_part;

    std::vector<double> candidates{0.0};
    for (const auto& x : a) candidates.push_back(diag_cost(x));
    for (const auto& y : b) candidates.push_back(diag_cost(y));
    for (const auto& x : a)
        for (const auto& y : b) candidates.push_back(pair_cost(x, y));
    std::sort(candidates.begin(), candidates.end());
    candidates.erase(std::unique(candidates.begin(), candidates.end()), candidates.end());

    matcher m(a, b);
    std::size_t lo = 0, hi = candidates.size() - 1;
    while (lo < hi) {
        const std::size_t mid = lo + (hi - lo) / 2;
        if (m.feasible(candidates[mid])) hi = mid;
        else lo = mid + 1;
    }
    return std::max(inf_part, candidates[lo]);
}

} // namespace parallax
