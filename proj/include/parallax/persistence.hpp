#pragma once

#include <optional>
#include <vector>

#include "parallax/flag_complex.hpp"

namespace parallax {

struct diagram_dot {
    int dim = 0;
    double birth = 0.0;
    double death = 0.0; // +inf for essential classes
    simplex birth_simplex;
    std::optional<simplex> death_simplex;

    double persistence() const { return death - birth; }
};

bool operator==(const diagram_dot& a, const diagram_dot& b);

/// Dots sorted by (dim, birth, death, birth simplex). Zero-persistence pairs
/// are dropped. Scale convention: radius.
struct persistence_diagram {
    int max_hom_dim = 0;
    std::vector<diagram_dot> dots;

    std::vector<diagram_dot> dots_of(int dim) const;
};

/// Boundary-matrix reduction over Z/2 with the clearing optimization,
/// processing column dimensions from high to low. Homology in dimensions
/// 0 .. complex.max_dim - 1; top-dimensional essential classes are artifacts
/// of the dimension cap and are not reported.
persistence_diagram persistence(const filtered_complex& complex);

/// Dots of the given dimension born by lambda that die (finitely) by delta:
/// the classes the transition map HR_{lambda->delta} sends to zero. A dot
/// with infinite death never enters a kernel, delta = inf included.
std::vector<diagram_dot> transition_kernel(const persistence_diagram& diagram, int dim, double lambda,
                                           double delta);

} // namespace parallax
