#include "parallax/persistence.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <unordered_map>

#include "parallax/errors.hpp"

namespace parallax {

bool operator==(const diagram_dot& a, const diagram_dot& b) {
    return a.dim == b.dim && a.birth == b.birth && a.death == b.death && a.birth_simplex == b.birth_simplex &&
           a.death_simplex == b.death_simplex;
}

std::vector<diagram_dot> persistence_diagram::dots_of(int dim) const {
    std::vector<diagram_dot> out;
    for (const auto& d : dots)
        if (d.dim == dim) out.push_back(d);
    return out;
}

namespace {

constexpr std::uint32_t none = std::numeric_limits<std::uint32_t>::max();

struct tuple_hash {
    std::size_t operator()(const std::array<std::uint32_t, 4>& key) const {
        std::uint64_t h = 1469598103934665603ULL;
        for (std::uint32_t w : key) {
            h ^= w;
            h *= 1099511628211ULL;
        }
        return static_cast<std::size_t>(h);
    }
};

std::vector<std::uint32_t> symmetric_difference(const std::vector<std::uint32_t>& a,
                                                const std::vector<std::uint32_t>& b) {
    std::vector<std::uint32_t> out;
    out.reserve(a.size() + b.size());
    std::set_symmetric_difference(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
    return out;
}

bool dot_order(const diagram_dot& a, const diagram_dot& b) {
    if (a.dim != b.dim) return a.dim < b.dim;
    if (a.birth != b.birth) return a.birth < b.birth;
    if (a.death != b.death) return a.death < b.death;
    return a.birth_simplex.v < b.birth_simplex.v;
}

} // namespace

persistence_diagram persistence(const filtered_complex& complex) {
    validate_complex(complex);
    const auto& s = complex.simplices;
    const std::size_t n = s.size();

    std::unordered_map<std::array<std::uint32_t, 4>, std::uint32_t, tuple_hash> index_of;
    index_of.reserve(n * 2);
    for (std::uint32_t i = 0; i < n; ++i) index_of.emplace(s[i].v, i);

    std::vector<std::vector<std::uint32_t>> col(n);
    for (std::uint32_t j = 0; j < n; ++j) {
        const auto& sx = s[j];
        if (sx.dim == 0) continue;
        auto& c = col[j];
        for (std::size_t drop = 0; drop <= sx.dim; ++drop) {
            std::array<std::uint32_t, 4> facet{no_vertex, no_vertex, no_vertex, no_vertex};
            std::size_t w = 0;
            for (std::size_t k = 0; k <= sx.dim; ++k)
                if (k != drop) facet[w++] = sx.v[k];
            c.push_back(index_of.find(facet)->second);
        }
        std::sort(c.begin(), c.end());
    }

    std::vector<std::uint32_t> pivot_col(n, none);
    std::vector<bool> negative(n, false), killed(n, false);
    std::vector<std::pair<std::uint32_t, std::uint32_t>> pairs;
    for (int d = complex.max_dim; d >= 1; --d) {
        for (std::uint32_t j = 0; j < n; ++j) {
            if (s[j].dim != d || killed[j]) continue;
            auto& c = col[j];
            while (!c.empty() && pivot_col[c.back()] != none) c = symmetric_difference(c, col[pivot_col[c.back()]]);
            if (c.empty()) continue;
            const std::uint32_t low = c.back();
            pivot_col[low] = j;
            negative[j] = true;
            killed[low] = true;
            pairs.emplace_back(low, j);
        }
    }

    persistence_diagram diagram;
    diagram.max_hom_dim = complex.max_dim - 1;
    for (const auto& [i, j] : pairs) {
        if (s[i].value == s[j].value) continue;
        diagram_dot dot;
        dot.dim = s[i].dim;
        dot.birth = s[i].value;
        dot.death = s[j].value;
        dot.birth_simplex = s[i];
        dot.death_simplex = s[j];
        diagram.dots.push_back(dot);
    }
    for (std::uint32_t j = 0; j < n; ++j) {
        if (negative[j] || killed[j] || s[j].dim >= complex.max_dim) continue;
        diagram_dot dot;
        dot.dim = s[j].dim;
        dot.birth = s[j].value;
        dot.death = std::numeric_limits<double>::infinity();
        dot.birth_simplex = s[j];
        diagram.dots.push_back(dot);
    }
    std::sort(diagram.dots.begin(), diagram.dots.end(), dot_order);
    return diagram;
}

std::vector<diagram_dot> transition_kernel(const persistence_diagram& diagram, int dim, double lambda,
                                           double delta) {
    if (!(lambda <= delta)) throw_precondition("transition kernel needs lambda <= delta");
    std::vector<diagram_dot> out;
    for (const auto& dot : diagram.dots)
        if (dot.dim == dim && dot.birth <= lambda && std::isfinite(dot.death) && dot.death <= delta)
            out.push_back(dot);
    return out;
}

} // namespace parallax
