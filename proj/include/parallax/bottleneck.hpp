#pragma once

#include "parallax/persistence.hpp"

namespace parallax {

/// Exact bottleneck distance between the dim-restricted diagrams, diagonal
/// matching allowed. Infinite dots pair only with infinite dots (sorted by
/// birth); if their counts differ the distance is +inf. Finite part solved
/// by binary search over candidate costs with a bipartite matching test.
double bottleneck(const persistence_diagram& a, const persistence_diagram& b, int dim);

} // namespace parallax
