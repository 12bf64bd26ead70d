#pragma once

#include <array>
#include <cstdint>
#include <limits>
#include <span>
#include <vector>

#include "parallax/edge_table.hpp"

namespace parallax {

inline constexpr std::uint32_t no_vertex = std::numeric_limits<std::uint32_t>::max();

/// Simplex of dimension <= 3. Vertices sorted ascending; unused slots hold
/// no_vertex so whole-array comparison matches lexicographic tuple order.
struct simplex {
    std::array<std::uint32_t, 4> v{no_vertex, no_vertex, no_vertex, no_vertex};
    std::uint8_t dim = 0;
    double value = 0.0;

    std::span<const std::uint32_t> vertices() const { return {v.data(), std::size_t(dim) + 1}; }
};

bool operator==(const simplex& a, const simplex& b);

/// Reduction order: (filtration value, dimension, vertex tuple).
bool simplex_order(const simplex& a, const simplex& b);

struct filtered_complex {
    std::size_t n_vertices = 0;
    int max_dim = 2;
    std::vector<simplex> simplices;
};

/// Clique complex of the finite-valued edge graph, through simplex dimension
/// max_dim (1..3). Vertices get value 0; a higher simplex gets the max of its
/// edges' values. Edges valued +inf are dropped along with their cofaces.
filtered_complex flag_expand(const edge_table& table, const std::vector<double>& values, int max_dim);
filtered_complex flag_expand_serial(const edge_table& table, const std::vector<double>& values, int max_dim);
filtered_complex flag_expand_parallel(const edge_table& table, const std::vector<double>& values, int max_dim);

/// Structural error unless simplices are strictly sorted in reduction order
/// and every facet is present with a value <= its coface's.
void validate_complex(const filtered_complex& complex);

} // namespace parallax
