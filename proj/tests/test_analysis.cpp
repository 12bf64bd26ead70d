#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <limits>

#include "parallax/analysis.hpp"
#include "parallax/errors.hpp"
#include "parallax/model.hpp"
#include "parallax/scales.hpp"

#include "fixtures.hpp"

using namespace parallax;
constexpr double inf = std::numeric_limits<double>::infinity();

namespace {

diagram_dot feature_stub(int dim, double birth, double death, std::uint32_t tag) {
    diagram_dot d;
    d.dim = dim;
    d.birth = birth;
    d.death = death;
    d.birth_simplex.dim = dim ? 1 : 0;
    d.birth_simplex.v[0] = tag;
    if (dim) d.birth_simplex.v[1] = tag + 1;
    d.birth_simplex.value = birth;
    return d;
}

analysis_config quick_config(std::uint64_t seed) {
    analysis_config config;
    config.seed = seed;
    return config;
}

} // namespace

TEST_CASE("select_features picks dots that dwarf their dimension's median") {
    persistence_diagram diag;
    diag.max_hom_dim = 1;

    SUBCASE("a lone finite dot qualifies") {
        diag.dots = {feature_stub(1, 0.2, 0.9, 0)};
        CHECK(select_features(diag, 3.0) == std::vector<std::size_t>{0});
    }

    SUBCASE("one outlier among uniform noise") {
        diag.dots = {feature_stub(0, 0.0, 0.1, 0), feature_stub(0, 0.0, 0.1, 2), feature_stub(0, 0.0, 0.1, 4),
                     feature_stub(0, 0.0, 1.0, 6)};
        CHECK(select_features(diag, 3.0) == std::vector<std::size_t>{3});
    }

    SUBCASE("the factor is strict") {
        // 0.5 vs a leave-one-out median of 0.2: above 2x, not above 3x
        diag.dots = {feature_stub(0, 0.0, 0.2, 0), feature_stub(0, 0.0, 0.5, 2)};
        CHECK(select_features(diag, 3.0).empty());
        CHECK(select_features(diag, 2.0) == std::vector<std::size_t>{1});
    }

    SUBCASE("essential classes qualify above dimension zero only") {
        diag.dots = {feature_stub(0, 0.0, inf, 0), feature_stub(1, 0.3, inf, 2)};
        CHECK(select_features(diag, 3.0) == std::vector<std::size_t>{1});
    }
}

TEST_CASE("analyze matches the 16-gon against the shell") {
    auto cloud = fixtures::ring16();
    auto model = fixtures::shell_08_12();
    const auto rep = analyze(cloud, *model, quick_config(3));

    CHECK(rep.n_points == 16);
    CHECK(rep.dim == 2);
    CHECK(rep.model_kind == "shell");
    CHECK(rep.distance_collisions);
    CHECK(rep.digests.dataset != 0);

    CHECK(rep.lambda_sup == doctest::Approx(fixtures::chord_rho(4)).epsilon(1e-12));
    CHECK(rep.lambda_lo == doctest::Approx(fixtures::chord_rho(3)).epsilon(1e-12));
    CHECK(rep.lambda_ball > 0.15);
    CHECK(rep.lambda_ball < 0.21);
    CHECK(rep.lambda_hi > rep.lambda_sup);
    CHECK(std::isfinite(rep.lambda_hi));

    REQUIRE(rep.features.size() == 1);
    CHECK(rep.features[0].dot.dim == 1);
    CHECK(rep.features[0].early_birth);
    CHECK(rep.features[0].survives);
    REQUIRE(rep.features[0].path_death.has_value());
    CHECK(std::isinf(*rep.features[0].path_death));

    REQUIRE(rep.certificates.size() == 1);
    CHECK(std::isinf(rep.certificates[0].r_max));

    CHECK(rep.verdict == verdict_kind::matched);
    CHECK(rep.reason == "features-matched");

    REQUIRE(rep.hm_by_dim.size() == 2);
    CHECK(std::isinf(rep.hm_by_dim[0].hm_horizon)); // components match at every delta
    CHECK(rep.lambda_hi == rep.hm_by_dim[1].lambda_hi);
    CHECK(rep.hm_horizon == rep.hm_by_dim[1].hm_horizon);

    CHECK(rep.segment_probes > 0);
    CHECK(rep.disk_probes > 0);
    CHECK(rep.total_queries >= rep.segment_probes + rep.disk_probes);
}

TEST_CASE("analyze flags a convex model as indistinguishable") {
    auto cloud = fixtures::ring16();
    auto model = fixtures::ball(1.5);
    const auto rep = analyze(cloud, *model, quick_config(3));

    CHECK(std::isinf(rep.lambda_sup));
    CHECK(rep.lambda_lo == doctest::Approx(1.0).epsilon(1e-12)); // half the data diameter
    CHECK(std::isinf(rep.lambda_hi));
    CHECK(rep.hm_by_dim.empty());
    CHECK(rep.certificates.empty());
    CHECK(rep.disk_probes == 0);
    REQUIRE(rep.features.size() == 1);

    CHECK(rep.verdict == verdict_kind::mismatched);
    CHECK(rep.reason == "convex-indistinguishable");
}

TEST_CASE("analyze flags a model that blocks the shortest edges") {
    auto cloud = fixtures::ring16();
    auto model = fixtures::balls_at(cloud, 0.05);
    const auto rep = analyze(cloud, *model, quick_config(3));

    CHECK(rep.lambda_lo == 0.0);
    CHECK(rep.lambda_sup == doctest::Approx(fixtures::chord_rho(1)).epsilon(1e-12));
    CHECK(rep.verdict == verdict_kind::mismatched);
    CHECK(rep.reason == "lsm-zero");
}

TEST_CASE("analyze validates its inputs") {
    auto cloud = fixtures::ring16();

    SUBCASE("the model must contain the dataset") {
        auto tight = make_shell({0.0, 0.0}, 1.01, 1.2);
        CHECK_THROWS_AS(analyze(cloud, *tight, quick_config(0)), error);
        try {
            analyze(cloud, *tight, quick_config(0));
        } catch (const error& e) {
            CHECK(e.kind() == error_kind::input);
        }
    }

    SUBCASE("dimensions must agree") {
        auto model3d = make_union_of_balls(3, {{0.0, 0.0, 0.0}}, {3.0});
        CHECK_THROWS_AS(analyze(cloud, *model3d, quick_config(0)), error);
    }

    SUBCASE("degenerate settings") {
        auto model = fixtures::shell_08_12();
        auto config = quick_config(0);
        config.max_dim = 0;
        CHECK_THROWS_AS(analyze(cloud, *model, config), error);
        config.max_dim = 4;
        CHECK_THROWS_AS(analyze(cloud, *model, config), error);

        point_cloud lonely(2, {0.9, 0.0});
        CHECK_THROWS_AS(analyze(lonely, *model, quick_config(0)), error);
    }
}

TEST_CASE("scale and death orderings hold across the pipeline") {
    auto cloud = fixtures::ring16();
    auto model = fixtures::shell_08_12();
    const auto rep = analyze(cloud, *model, quick_config(17));

    CHECK(0.0 < rep.lambda_lo);
    CHECK(rep.lambda_lo < rep.lambda_sup);
    CHECK(rep.lambda_sup < rep.lambda_hi);
    CHECK(rep.lambda_hi <= rep.hm_horizon);
    CHECK(std::isfinite(rep.hm_horizon));
    CHECK(rep.lambda_ball < rep.lambda_sup);

    // corresponding classes never die earlier along a path than under Rips,
    // and a pointwise-larger distortion budget never delays a death
    for (int dim = 0; dim < 2; ++dim) {
        const auto to_inflexible = homological_match(rep.diag_r, rep.diag_inflexible, dim, rep.lambda_lo, inf, inf);
        for (const auto& bucket : {to_inflexible.matched, to_inflexible.violating})
            for (const auto& pair : bucket) CHECK(pair.in_path.death >= pair.in_r.death);

        const auto to_diagonal = homological_match(rep.diag_r, rep.diag_diagonal, dim, rep.lambda_lo, inf, inf);
        for (const auto& bucket : {to_diagonal.matched, to_diagonal.violating})
            for (const auto& pair : bucket) CHECK(pair.in_path.death >= pair.in_r.death);

        const auto across = homological_match(rep.diag_diagonal, rep.diag_inflexible, dim, rep.lambda_lo, inf, inf);
        for (const auto& bucket : {across.matched, across.violating})
            for (const auto& pair : bucket) CHECK(pair.in_path.death >= pair.in_r.death);
    }

    for (const auto& cert : rep.certificates) {
        CHECK(cert.birth < rep.lambda_lo);
        CHECK(cert.death_r > cert.birth);
        CHECK(cert.death_path > cert.death_r);
        CHECK(cert.r_max > 0);
        CHECK(cert.blocking_edge[0] < rep.n_points);
        CHECK(cert.blocking_edge[1] < rep.n_points);
        CHECK(cert.blocking_edge[0] != cert.blocking_edge[1]);
    }

    for (const auto& f : rep.features) {
        if (f.path_death.has_value()) CHECK(*f.path_death >= f.dot.death);
    }
}

TEST_CASE("analyze is deterministic for a fixed seed") {
    auto cloud = fixtures::ring16();
    auto model_a = fixtures::shell_08_12();
    auto model_b = fixtures::shell_08_12();
    const auto a = analyze(cloud, *model_a, quick_config(42));
    const auto b = analyze(cloud, *model_b, quick_config(42));

    CHECK(a.lambda_ball == b.lambda_ball);
    CHECK(a.lambda_sup == b.lambda_sup);
    CHECK(a.lambda_lo == b.lambda_lo);
    CHECK(a.lambda_hi == b.lambda_hi);
    CHECK(a.hm_horizon == b.hm_horizon);
    CHECK(a.segment_probes == b.segment_probes);
    CHECK(a.disk_probes == b.disk_probes);
    CHECK(a.total_queries == b.total_queries);
    CHECK(a.diag_r.dots == b.diag_r.dots);
    CHECK(a.diag_inflexible.dots == b.diag_inflexible.dots);
    CHECK(a.diag_diagonal.dots == b.diag_diagonal.dots);
    CHECK(a.verdict == b.verdict);
    CHECK(a.reason == b.reason);
}
