#include <doctest.h>

#include <cmath>
#include <limits>

#include "parallax/bottleneck.hpp"

#include "fixtures.hpp"
#include "oracle_matching.hpp"

using namespace parallax;
constexpr double inf = std::numeric_limits<double>::infinity();

namespace {

persistence_diagram make_diag(std::vector<std::pair<double, double>> dots, int dim = 0) {
    persistence_diagram diag;
    diag.max_hom_dim = dim;
    std::uint32_t k = 0;
    for (auto [b, d] : dots) {
        diagram_dot dot;
        dot.dim = dim;
        dot.birth = b;
        dot.death = d;
        dot.birth_simplex.v[0] = k++;
        diag.dots.push_back(dot);
    }
    return diag;
}

} // namespace

TEST_CASE("identity distance is zero") {
    auto d = make_diag({{0.0, 1.0}, {0.2, 0.4}});
    CHECK(bottleneck(d, d, 0) == 0.0);
}

TEST_CASE("lone dot against the empty diagram matches the diagonal") {
    CHECK(bottleneck(make_diag({{0.0, 1.0}}), make_diag({}), 0) == doctest::Approx(0.5));
}

TEST_CASE("simple two-dot displacement") {
    auto a = make_diag({{0.0, 1.0}});
    auto b = make_diag({{0.1, 1.05}});
    CHECK(bottleneck(a, b, 0) == doctest::Approx(0.1));
}

TEST_CASE("mismatched infinite-dot counts give the infinite sentinel") {
    auto a = make_diag({{0.0, inf}});
    auto b = make_diag({{0.0, 1.0}});
    CHECK(std::isinf(bottleneck(a, b, 0)));
    CHECK(std::isinf(bottleneck(a, make_diag({}), 0)));
}

TEST_CASE("infinite dots pair by sorted birth") {
    auto a = make_diag({{0.0, inf}, {1.0, inf}});
    auto b = make_diag({{0.2, inf}, {0.9, inf}});
    CHECK(bottleneck(a, b, 0) == doctest::Approx(0.2));
}

TEST_CASE("dimension restriction ignores other dots") {
    auto a = make_diag({{0.0, 3.0}});
    auto b = make_diag({{0.0, 3.0}}, 1);
    CHECK(bottleneck(a, b, 1) == doctest::Approx(1.5)); // a has no dim-1 dots
    CHECK(bottleneck(a, b, 0) == doctest::Approx(1.5));
}

TEST_CASE("exhaustive matching agrees on 200 random small diagrams") {
    rng gen(555);
    for (int trial = 0; trial < 200; ++trial) {
        auto a = fixtures::random_diagram(gen, 6);
        auto b = fixtures::random_diagram(gen, 6);
        const double fast = bottleneck(a, b, 0);
        const double brute = oracle::bottleneck_brute(a, b, 0);
        if (std::isinf(brute)) {
            CHECK(std::isinf(fast));
        } else {
            CHECK(std::abs(fast - brute) < 1e-12);
        }
    }
}
