#include "parallax/flag_complex.hpp"

#include <algorithm>
#include <cmath>
#include <string>
#include <unordered_map>

#include "parallax/errors.hpp"

namespace parallax {

bool operator==(const simplex& a, const simplex& b) {
    return a.dim == b.dim && a.v == b.v && a.value == b.value;
}

bool simplex_order(const simplex& a, const simplex& b) {
    if (a.value != b.value) return a.value < b.value;
    if (a.dim != b.dim) return a.dim < b.dim;
    return a.v < b.v;
}

namespace {

std::uint64_t edge_key(std::uint32_t i, std::uint32_t j) { return (std::uint64_t(i) << 32) | j; }

struct edge_graph {
    std::vector<std::vector<std::uint32_t>> higher; // neighbors > v, ascending
    std::unordered_map<std::uint64_t, double> value;

    double at(std::uint32_t i, std::uint32_t j) const { return value.find(edge_key(i, j))->second; }
};

edge_graph build_graph(const edge_table& table, const std::vector<double>& values) {
    edge_graph g;
    g.higher.resize(table.n_vertices);
    g.value.reserve(table.edges.size() * 2);
    for (std::size_t e = 0; e < table.edges.size(); ++e) {
        if (std::isinf(values[e])) continue;
        const auto& ed = table.edges[e];
        g.higher[ed.i].push_back(ed.j);
        g.value.emplace(edge_key(ed.i, ed.j), values[e]);
    }
    for (auto& nbrs : g.higher) std::sort(nbrs.begin(), nbrs.end());
    return g;
}

void check_inputs(const edge_table& table, const std::vector<double>& values, int max_dim) {
    if (max_dim < 1) throw_input("flag expansion needs max_dim >= 1");
    if (max_dim > 3) throw_unsupported("flag expansion capped at simplex dimension 3");
    if (values.size() != table.edges.size())
        throw_input("edge value assignment size " + std::to_string(values.size()) + " != edge count " +
                    std::to_string(table.edges.size()));
    for (double v : values)
        if (std::isnan(v) || v < 0) throw_input("edge values must lie in [0, inf]");
}

void intersect_sorted(const std::vector<std::uint32_t>& a, const std::vector<std::uint32_t>& b,
                      std::vector<std::uint32_t>& out) {
    out.clear();
    std::set_intersection(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
}

simplex make_vertex(std::uint32_t i) {
    simplex s;
    s.v[0] = i;
    s.dim = 0;
    s.value = 0.0;
    return s;
}

simplex make_edge(std::uint32_t i, std::uint32_t j, double value) {
    simplex s;
    s.v[0] = i;
    s.v[1] = j;
    s.dim = 1;
    s.value = value;
    return s;
}

simplex make_triangle(std::uint32_t i, std::uint32_t j, std::uint32_t k, double value) {
    simplex s;
    s.v[0] = i;
    s.v[1] = j;
    s.v[2] = k;
    s.dim = 2;
    s.value = value;
    return s;
}

void triangles_of_edge(const edge_graph& g, std::uint32_t i, std::uint32_t j, double eval,
                       std::vector<std::uint32_t>& scratch, std::vector<simplex>& out) {
    intersect_sorted(g.higher[i], g.higher[j], scratch);
    for (std::uint32_t k : scratch)
        out.push_back(make_triangle(i, j, k, std::max({eval, g.at(i, k), g.at(j, k)})));
}

void tets_of_triangle(const edge_graph& g, const simplex& tri, std::vector<std::uint32_t>& scratch1,
                      std::vector<std::uint32_t>& scratch2, std::vector<simplex>& out) {
    intersect_sorted(g.higher[tri.v[0]], g.higher[tri.v[1]], scratch1);
    intersect_sorted(scratch1, g.higher[tri.v[2]], scratch2);
    for (std::uint32_t l : scratch2) {
        simplex s;
        s.v = {tri.v[0], tri.v[1], tri.v[2], l};
        s.dim = 3;
        s.value = std::max({tri.value, g.at(tri.v[0], l), g.at(tri.v[1], l), g.at(tri.v[2], l)});
        out.push_back(s);
    }
}

filtered_complex assemble(const edge_table& table, const std::vector<double>& values, int max_dim,
                          std::vector<simplex>&& triangles, std::vector<simplex>&& tets) {
    filtered_complex complex{table.n_vertices, max_dim, {}};
    auto& out = complex.simplices;
    out.reserve(table.n_vertices + table.edges.size() + triangles.size() + tets.size());
    for (std::uint32_t i = 0; i < table.n_vertices; ++i) out.push_back(make_vertex(i));
    for (std::size_t e = 0; e < table.edges.size(); ++e)
        if (!std::isinf(values[e])) out.push_back(make_edge(table.edges[e].i, table.edges[e].j, values[e]));
    out.insert(out.end(), triangles.begin(), triangles.end());
    out.insert(out.end(), tets.begin(), tets.end());
    std::sort(out.begin(), out.end(), simplex_order);
    return complex;
}

} // namespace

filtered_complex flag_expand_serial(const edge_table& table, const std::vector<double>& values, int max_dim) {
    check_inputs(table, values, max_dim);
    const edge_graph g = build_graph(table, values);
    std::vector<simplex> triangles, tets;
    std::vector<std::uint32_t> s1, s2;
    if (max_dim >= 2)
        for (std::size_t e = 0; e < table.edges.size(); ++e)
            if (!std::isinf(values[e]))
                triangles_of_edge(g, table.edges[e].i, table.edges[e].j, values[e], s1, triangles);
    if (max_dim >= 3)
        for (const auto& tri : triangles) tets_of_triangle(g, tri, s1, s2, tets);
    return assemble(table, values, max_dim, std::move(triangles), std::move(tets));
}

filtered_complex flag_expand_parallel(const edge_table& table, const std::vector<double>& values, int max_dim) {
    check_inputs(table, values, max_dim);
    const edge_graph g = build_graph(table, values);
    std::vector<simplex> triangles, tets;
    if (max_dim >= 2) {
        const std::int64_t ne = static_cast<std::int64_t>(table.edges.size());
        std::vector<std::vector<simplex>> buf(table.edges.size());
#pragma omp parallel
        {
            std::vector<std::uint32_t> scratch;
#pragma omp for schedule(dynamic, 64)
            for (std::int64_t e = 0; e < ne; ++e)
                if (!std::isinf(values[static_cast<std::size_t>(e)]))
                    triangles_of_edge(g, table.edges[static_cast<std::size_t>(e)].i,
                                      table.edges[static_cast<std::size_t>(e)].j,
                                      values[static_cast<std::size_t>(e)], scratch,
                                      buf[static_cast<std::size_t>(e)]);
        }
        for (auto& b : buf) triangles.insert(triangles.end(), b.begin(), b.end());
    }
    if (max_dim >= 3) {
        const std::int64_t nt = static_cast<std::int64_t>(triangles.size());
        std::vector<std::vector<simplex>> buf(triangles.size());
#pragma omp parallel
        {
            std::vector<std::uint32_t> s1, s2;
#pragma omp for schedule(dynamic, 64)
            for (std::int64_t t = 0; t < nt; ++t)
                tets_of_triangle(g, triangles[static_cast<std::size_t>(t)], s1, s2,
                                 buf[static_cast<std::size_t>(t)]);
        }
        for (auto& b : buf) tets.insert(tets.end(), b.begin(), b.end());
    }
    return assemble(table, values, max_dim, std::move(triangles), std::move(tets));
}

filtered_complex flag_expand(const edge_table& table, const std::vector<double>& values, int max_dim) {
    return flag_expand_parallel(table, values, max_dim);
}

namespace {

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

} // namespace

void validate_complex(const filtered_complex& complex) {
    const auto& s = complex.simplices;
    for (std::size_t i = 0; i < s.size(); ++i) {
        for (std::size_t k = 0; k < s[i].dim; ++k)
            if (s[i].v[k] >= s[i].v[k + 1]) throw_structural("simplex vertices not strictly ascending");
        if (std::isnan(s[i].value) || s[i].value < 0 || std::isinf(s[i].value))
            throw_structural("simplex filtration value must be finite and nonnegative");
        if (i + 1 < s.size() && !simplex_order(s[i], s[i + 1]))
            throw_structural("complex not strictly sorted in reduction order");
    }
    std::unordered_map<std::array<std::uint32_t, 4>, double, tuple_hash> seen;
    seen.reserve(s.size() * 2);
    for (const auto& sx : s) seen.emplace(sx.v, sx.value);
    for (const auto& sx : s) {
        if (sx.dim == 0) continue;
        for (std::size_t drop = 0; drop <= sx.dim; ++drop) {
            std::array<std::uint32_t, 4> facet{no_vertex, no_vertex, no_vertex, no_vertex};
            std::size_t w = 0;
            for (std::size_t k = 0; k <= sx.dim; ++k)
                if (k != drop) facet[w++] = sx.v[k];
            auto it = seen.find(facet);
            if (it == seen.end()) throw_structural("complex not closed under faces");
            if (it->second > sx.value) throw_structural("face has larger filtration value than its coface");
        }
    }
}

} // namespace parallax
