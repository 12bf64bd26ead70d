#include <doctest.h>

#include <cmath>
#include <limits>

#include "parallax/edge_table.hpp"
#include "parallax/errors.hpp"
#include "parallax/rng.hpp"

#include "fixtures.hpp"

using namespace parallax;
constexpr double inf = std::numeric_limits<double>::infinity();

TEST_CASE("unit square edge table") {
    auto table = build_edge_table(fixtures::unit_square(), inf);
    REQUIRE(table.edges.size() == 6);
    for (int k = 0; k < 4; ++k) CHECK(table.edges[k].rho_v == doctest::Approx(0.5));
    CHECK(table.edges[4].rho_v == doctest::Approx(std::sqrt(2.0) / 2));
    CHECK(table.edges[5].rho_v == doctest::Approx(std::sqrt(2.0) / 2));

    SUBCASE("sorted by (rho_v, i, j)") {
        for (std::size_t k = 1; k < table.edges.size(); ++k) {
            const auto& a = table.edges[k - 1];
            const auto& b = table.edges[k];
            const bool ordered = a.rho_v < b.rho_v ||
                                 (a.rho_v == b.rho_v && (a.i < b.i || (a.i == b.i && a.j < b.j)));
            CHECK(ordered);
        }
    }

    SUBCASE("cutoff 0.6 keeps only the four sides") {
        auto cut = build_edge_table(fixtures::unit_square(), 0.6);
        CHECK(cut.edges.size() == 4);
        for (const auto& e : cut.edges) CHECK(e.rho_v == doctest::Approx(0.5));
    }
}

TEST_CASE("two points at distance 2 give one edge of radius 1") {
    point_cloud cloud(1, {0.0, 2.0});
    auto table = build_edge_table(cloud, inf);
    REQUIRE(table.edges.size() == 1);
    CHECK(table.edges[0].rho_v == doctest::Approx(1.0));
    CHECK(table.edges[0].i == 0);
    CHECK(table.edges[0].j == 1);
}

TEST_CASE("16-gon chord radii follow sin(k * 11.25 deg)") {
    auto table = build_edge_table(fixtures::ring16(), inf);
    REQUIRE(table.edges.size() == 120);
    CHECK(table.edges.front().rho_v == doctest::Approx(fixtures::chord_rho(1)).epsilon(1e-12));
    CHECK(table.edges.back().rho_v == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("preconditions and input validation") {
    point_cloud one(2, {0.0, 0.0});
    CHECK_THROWS_AS(build_edge_table(one, 1.0), error);
    CHECK_THROWS_AS(build_edge_table(fixtures::unit_square(), -1.0), error);
    CHECK_THROWS_AS(build_edge_table(fixtures::unit_square(), std::nan("")), error);
}

TEST_CASE("serial and parallel construction agree") {
    rng gen(23);
    std::vector<double> coords;
    for (int k = 0; k < 60; ++k) coords.push_back(gen.uniform(-1, 1));
    point_cloud cloud(3, std::move(coords));
    auto serial = build_edge_table_serial(cloud, 0.9);
    auto parallel = build_edge_table_parallel(cloud, 0.9);
    CHECK(serial.edges == parallel.edges);
}
