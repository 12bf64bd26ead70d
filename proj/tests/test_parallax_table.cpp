#include <doctest.h>

#include <cmath>
#include <limits>

#include "parallax/edge_table.hpp"
#include "parallax/errors.hpp"
#include "parallax/parallax_table.hpp"

#include "fixtures.hpp"

using namespace parallax;
constexpr double inf = std::numeric_limits<double>::infinity();

TEST_CASE("segment classification") {
    std::vector<double> left{-1.0, 0.0}, right{1.0, 0.0};

    SUBCASE("shell blocks the diameter at the midpoint") {
        auto shell = fixtures::shell_08_12();
        auto res = classify_edge_segment(left, right, *shell, segment_scheme::barycenter, 0);
        CHECK(res.blocked);
        REQUIRE(res.witness.size() == 2);
        CHECK(res.witness[0] == doctest::Approx(0.0));
        CHECK(res.probes == 1);
    }

    SUBCASE("a large ball is convex, so the segment stays inside") {
        auto ball = fixtures::ball(1.5);
        auto res = classify_edge_segment(left, right, *ball, segment_scheme::uniform, 9);
        CHECK_FALSE(res.blocked);
        CHECK(res.witness.empty());
        CHECK(res.probes == 10);
    }

    SUBCASE("adjacent 16-gon chord midpoint stays inside the shell") {
        auto cloud = fixtures::ring16();
        auto shell = fixtures::shell_08_12();
        auto res = classify_edge_segment(cloud.point(0), cloud.point(1), *shell, segment_scheme::barycenter, 0);
        CHECK_FALSE(res.blocked);
        // midpoint distance from the center is cos(11.25 deg) > 0.8
        CHECK(std::cos(std::numbers::pi / 16.0) > 0.8);
    }
}

TEST_CASE("disk schedules are geometric and ascending") {
    auto sched = make_disk_schedule(2.0, 16, 0.05, 1.0);
    REQUIRE(sched.size() == 16);
    CHECK(sched.front() == doctest::Approx(0.1));
    CHECK(sched.back() == doctest::Approx(2.0));
    for (std::size_t k = 1; k < sched.size(); ++k) {
        CHECK(sched[k] > sched[k - 1]);
        if (k >= 2) CHECK(sched[k] / sched[k - 1] == doctest::Approx(sched[k - 1] / sched[k - 2]));
    }
    CHECK(make_disk_schedule(1.0, 1, 0.05, 0.7) == std::vector<double>{0.7});
}

TEST_CASE("bound_edge_disk evaluates the primal bound formula") {
    std::vector<double> left{-1.0, 0.0}, right{1.0, 0.0};

    SUBCASE("planted window of half-height 0.6 certifies r = 0.5 exactly") {
        auto frame = fixtures::window_frame(1.5, 0.6);
        auto bound = bound_edge_disk(left, right, *frame, {0.5}, 64, 7, 0);
        CHECK(bound.blocking_radius == 0.5);
        CHECK(bound.rho_k_lower == doctest::Approx(std::sqrt(1.25)).epsilon(1e-12));
        CHECK(bound.epsilon_lower == doctest::Approx(std::sqrt(1.25) - 1.0).epsilon(1e-9));
    }

    SUBCASE("diametral chord against the shell: disks at the center clear r = 0.8") {
        auto shell = fixtures::shell_08_12();
        auto bound = bound_edge_disk(left, right, *shell, {0.4, 0.6, 0.8}, 64, 7, 0);
        CHECK(bound.blocking_radius == 0.8);
        CHECK(bound.rho_k_lower == doctest::Approx(std::sqrt(1.64)).epsilon(1e-12));
        CHECK(bound.rho_k_lower == doctest::Approx(1.28062).epsilon(1e-5));
    }

    SUBCASE("convex model: the first disk touches, no distortion certified") {
        auto ball = fixtures::ball(1.5);
        auto bound = bound_edge_disk(left, right, *ball, {0.1, 0.5}, 16, 7, 0);
        CHECK(bound.blocking_radius == 0.0);
        CHECK(bound.rho_k_lower == 1.0);
        CHECK(bound.epsilon_lower == 0.0);
    }

    SUBCASE("empty schedule is an input error") {
        auto ball = fixtures::ball(1.5);
        CHECK_THROWS_AS(bound_edge_disk(left, right, *ball, {}, 16, 7, 0), error);
    }
}

TEST_CASE("planted slab: bound within one schedule step, monotone under refinement") {
    auto frame = fixtures::window_frame(1.5, 0.5);
    std::vector<double> left{-2.0, 0.0}, right{2.0, 0.0};
    const double rho_v = 2.0;
    const double planted = 0.5;

    auto sixteen = make_disk_schedule(rho_v, 16, 0.05, 1.0);
    auto bound16 = bound_edge_disk(left, right, *frame, sixteen, 64, 7, 0);

    std::size_t below = 0;
    while (below + 1 < sixteen.size() && sixteen[below + 1] <= planted) ++below;
    CHECK(bound16.blocking_radius >= sixteen[below]);
    CHECK(bound16.blocking_radius <= (below + 1 < sixteen.size() ? sixteen[below + 1] : planted));
    CHECK(bound16.rho_k_lower == doctest::Approx(std::sqrt(rho_v * rho_v + planted * planted))
                                     .epsilon((sixteen[below + 1] - sixteen[below]) / planted));

    SUBCASE("nested schedules never lower the bound") {
        auto thirtyone = make_disk_schedule(rho_v, 31, 0.05, 1.0);
        auto sixtyone = make_disk_schedule(rho_v, 61, 0.05, 1.0);
        // refinement keeps all old radii (2S - 1 rule)
        for (std::size_t k = 0; k < sixteen.size(); ++k)
            CHECK(thirtyone[2 * k] == doctest::Approx(sixteen[k]).epsilon(1e-14));

        auto bound31 = bound_edge_disk(left, right, *frame, thirtyone, 64, 7, 0);
        auto bound61 = bound_edge_disk(left, right, *frame, sixtyone, 64, 7, 0);
        CHECK(bound31.blocking_radius >= bound16.blocking_radius);
        CHECK(bound61.blocking_radius >= bound31.blocking_radius);
        CHECK(bound61.blocking_radius <= planted * 1.05);
    }

    SUBCASE("more samples per disk keep the deterministic verdicts") {
        auto again = bound_edge_disk(left, right, *frame, sixteen, 128, 7, 0);
        CHECK(again.blocking_radius == bound16.blocking_radius);
    }
}

TEST_CASE("16-gon shell table: blocked exactly when the chord midpoint leaves the shell") {
    auto cloud = fixtures::ring16();
    auto shell = fixtures::shell_08_12();
    auto table = build_edge_table(cloud, inf);

    probe_config config;
    config.scheme = segment_scheme::barycenter;
    config.segment_samples = 0;
    config.disk_probing = false;
    auto probes = build_parallax_table(cloud, table, *shell, config);
    REQUIRE(probes.edges.size() == table.edges.size());

    for (std::size_t k = 0; k < table.edges.size(); ++k) {
        const auto& e = table.edges[k];
        // chord step from the vertex index difference around the ring
        const int diff = int(e.j) - int(e.i);
        const int step = std::min(diff, 16 - diff);
        const bool expect_blocked = std::cos(double(step) * std::numbers::pi / 16.0) < 0.8;
        CHECK(probes.edges[k].rho_v == e.rho_v);
        CHECK((probes.edges[k].status == edge_status::blocked) == expect_blocked);
        if (!expect_blocked) {
            CHECK(probes.edges[k].rho_k_lower == e.rho_v);
            CHECK(probes.edges[k].blocking_radius == 0.0);
        }
    }
}

TEST_CASE("tiny balls block every edge, convex ball blocks none") {
    auto cloud = fixtures::ring16();
    auto table = build_edge_table(cloud, inf);
    probe_config config;
    config.disk_probing = false;

    auto balls = fixtures::balls_at(cloud, 0.05);
    auto blocked_all = build_parallax_table(cloud, table, *balls, config);
    for (const auto& e : blocked_all.edges) CHECK(e.status == edge_status::blocked);

    auto ball = fixtures::ball(1.5);
    auto blocked_none = build_parallax_table(cloud, table, *ball, config);
    for (const auto& e : blocked_none.edges) CHECK(e.status == edge_status::unblocked);
}

TEST_CASE("uniform probing is monotone: budgets 9, 19, 39 nest") {
    auto cloud = fixtures::ring16();
    auto shell = fixtures::shell_08_12();
    auto table = build_edge_table(cloud, inf);

    auto blocked_set = [&](int samples) {
        probe_config config;
        config.segment_samples = samples;
        config.disk_probing = false;
        auto probes = build_parallax_table(cloud, table, *shell, config);
        std::vector<bool> blocked;
        for (const auto& e : probes.edges) blocked.push_back(e.status == edge_status::blocked);
        return blocked;
    };

    auto b9 = blocked_set(9), b19 = blocked_set(19), b39 = blocked_set(39);
    for (std::size_t k = 0; k < b9.size(); ++k) {
        if (b9[k]) CHECK(b19[k]);
        if (b19[k]) CHECK(b39[k]);
    }
}

TEST_CASE("serial and parallel probing agree") {
    auto cloud = fixtures::ring16();
    auto shell = fixtures::shell_08_12();
    auto table = build_edge_table(cloud, inf);
    probe_config config;
    config.seed = 99;

    auto serial = build_parallax_table_serial(cloud, table, *shell, config);
    auto parallel = build_parallax_table_parallel(cloud, table, *shell, config);
    REQUIRE(serial.edges.size() == parallel.edges.size());
    for (std::size_t k = 0; k < serial.edges.size(); ++k) {
        CHECK(serial.edges[k].status == parallel.edges[k].status);
        CHECK(serial.edges[k].rho_k_lower == parallel.edges[k].rho_k_lower);
        CHECK(serial.edges[k].blocking_radius == parallel.edges[k].blocking_radius);
    }
    CHECK(serial.segment_probes() == parallel.segment_probes());
    CHECK(serial.disk_probes() == parallel.disk_probes());
}

TEST_CASE("blocked verdicts always carry evidence") {
    auto cloud = fixtures::ring16();
    auto shell = fixtures::shell_08_12();
    auto table = build_edge_table(cloud, inf);
    probe_config config;
    auto probes = build_parallax_table(cloud, table, *shell, config);

    for (const auto& e : probes.edges) {
        if (e.status == edge_status::blocked) {
            CHECK(e.rho_k_lower >= e.rho_v);
            CHECK(e.segment_probes > 0);
        } else {
            CHECK(e.rho_k_lower == e.rho_v);
            CHECK(e.disk_probes == 0);
        }
    }
}
