#include <doctest.h>

#include <cmath>
#include <fstream>
#include <sstream>

#include "parallax/errors.hpp"
#include "parallax/geometry.hpp"
#include "parallax/rng.hpp"

#include "fixtures.hpp"

using namespace parallax;

TEST_CASE("point_cloud basics and duplicate rejection") {
    point_cloud cloud(2, {0.0, 0.0, 1.0, 0.0});
    CHECK(cloud.size() == 2);
    CHECK(cloud.dim() == 2);
    CHECK(cloud.point(1)[0] == 1.0);
    CHECK(cloud.diameter() == doctest::Approx(1.0));

    CHECK_THROWS_AS(point_cloud(2, {0.0, 0.0, 0.0, 0.0}), error);
    CHECK_THROWS_AS(point_cloud(2, {0.0, 0.0, 1.0}), error);
}

TEST_CASE("distance satisfies the triangle inequality on random triples") {
    rng gen(42);
    for (int trial = 0; trial < 200; ++trial) {
        std::vector<double> p(3), q(3), r(3);
        for (int k = 0; k < 3; ++k) {
            p[k] = gen.uniform(-5, 5);
            q[k] = gen.uniform(-5, 5);
            r[k] = gen.uniform(-5, 5);
        }
        CHECK(distance(p, r) <= distance(p, q) + distance(q, r) + 1e-12);
    }
}

TEST_CASE("segment_samples barycenter and uniform schemes") {
    std::vector<double> x{0.0, 0.0}, y{1.0, 0.0};

    auto bary = segment_samples(x, y, segment_scheme::barycenter);
    REQUIRE(bary.size() == 1);
    CHECK(bary[0][0] == doctest::Approx(0.5));

    auto uni = segment_samples(x, y, segment_scheme::uniform, 9);
    REQUIRE(uni.size() == 9); // interior samples only; odd counts hit the barycenter
    bool has_midpoint = false;
    for (const auto& p : uni) {
        CHECK(p[0] > 0.0);
        CHECK(p[0] < 1.0);
        CHECK(p[1] == 0.0);
        if (p[0] == 0.5) has_midpoint = true;
    }
    CHECK(has_midpoint);

    SUBCASE("uniform positions nest when samples go 9 -> 19") {
        auto fine = segment_samples(x, y, segment_scheme::uniform, 19);
        for (const auto& p : uni) {
            bool found = false;
            for (const auto& q : fine)
                if (std::abs(p[0] - q[0]) < 1e-15) found = true;
            CHECK(found);
        }
    }
}

TEST_CASE("transverse_disk_samples stay on the orthogonal hyperplane") {
    std::vector<double> x{-1.0, 0.0}, y{1.0, 0.0};
    rng gen(7);

    SUBCASE("in the plane, samples sit on the vertical line through the midpoint") {
        auto pts = transverse_disk_samples(x, y, 0.5, 100, gen);
        REQUIRE(pts.size() == 100);
        for (const auto& p : pts) {
            CHECK(std::abs(p[0]) < 1e-9);
            CHECK(std::abs(p[1]) <= 0.5 + 1e-12);
        }
    }

    SUBCASE("r -> 0 collapses to the midpoint") {
        auto pts = transverse_disk_samples(x, y, 1e-15, 10, gen);
        for (const auto& p : pts) {
            CHECK(p[0] == doctest::Approx(0.0).epsilon(1e-12));
            CHECK(p[1] == doctest::Approx(0.0).epsilon(1e-12));
        }
    }

    SUBCASE("orthogonality in R^5 within 1e-9 relative") {
        std::vector<double> a{1.0, 2.0, 3.0, 4.0, 5.0}, b{2.0, 1.0, 3.0, 5.0, 4.0};
        auto pts = transverse_disk_samples(a, b, 0.3, 50, gen);
        for (const auto& p : pts) {
            double dot = 0.0, norm = 0.0;
            for (std::size_t k = 0; k < 5; ++k) {
                const double m = (a[k] + b[k]) / 2;
                dot += (p[k] - m) * (b[k] - a[k]);
                norm += (p[k] - m) * (p[k] - m);
            }
            CHECK(std::abs(dot) < 1e-9);
            CHECK(std::sqrt(norm) <= 0.3 + 1e-12);
        }
    }

    SUBCASE("empirical mean approaches the midpoint") {
        auto pts = transverse_disk_samples(x, y, 0.5, 10000, gen);
        double mean = 0.0;
        for (const auto& p : pts) mean += p[1];
        mean /= double(pts.size());
        // sigma of one coordinate is r/2; 3 sigma / sqrt(n) of the mean
        CHECK(std::abs(mean) < 3.0 * 0.25 / std::sqrt(10000.0));
    }

    SUBCASE("dimension 1 is unsupported") {
        std::vector<double> p{0.0}, q{1.0};
        CHECK_THROWS_AS(transverse_disk_samples(p, q, 0.1, 1, gen), error);
    }
}

TEST_CASE("perturb_pointwise") {
    auto cloud = fixtures::ring16();

    SUBCASE("kappa = 0 is the identity") {
        rng gen(3);
        auto [moved, corr] = perturb_pointwise(cloud, 0.0, gen);
        CHECK(moved == cloud);
        REQUIRE(corr.pairs.size() == 16);
        for (std::size_t i = 0; i < 16; ++i) {
            CHECK(corr.pairs[i].first == i);
            CHECK(corr.pairs[i].second == i);
        }
    }

    SUBCASE("no point moves farther than kappa, so Hausdorff <= kappa") {
        rng gen(5);
        auto [moved, corr] = perturb_pointwise(cloud, 0.05, gen);
        double worst = 0.0;
        for (std::size_t i = 0; i < 16; ++i) worst = std::max(worst, distance(cloud.point(i), moved.point(i)));
        CHECK(worst <= 0.05 + 1e-12);
        CHECK(worst > 0.0);

        // brute-force symmetric Hausdorff over all pairs
        double h = 0.0;
        for (std::size_t i = 0; i < 16; ++i) {
            double da = std::numeric_limits<double>::infinity();
            double db = std::numeric_limits<double>::infinity();
            for (std::size_t j = 0; j < 16; ++j) {
                da = std::min(da, distance(cloud.point(i), moved.point(j)));
                db = std::min(db, distance(moved.point(i), cloud.point(j)));
            }
            h = std::max(h, std::max(da, db));
        }
        CHECK(h <= 0.05 + 1e-12);
    }

    SUBCASE("fixed seed reproduces bit-identical output") {
        rng g1(9), g2(9);
        auto [a, ca] = perturb_pointwise(cloud, 0.02, g1);
        auto [b, cb] = perturb_pointwise(cloud, 0.02, g2);
        CHECK(a == b);
        CHECK(ca.kappa == cb.kappa);
    }
}

TEST_CASE("csv loading") {
    SUBCASE("round trip with comments") {
        std::istringstream in("# header\n0,0\n1.5,2.5\n");
        auto cloud = load_csv(in);
        REQUIRE(cloud.size() == 2);
        CHECK(cloud.point(1)[1] == 2.5);
    }

    SUBCASE("dimension enforced after the first row") {
        std::istringstream in("0,0\n1,2,3\n");
        CHECK_THROWS_AS(load_csv(in), error);
    }

    SUBCASE("empty input rejected") {
        std::istringstream in("# nothing\n");
        CHECK_THROWS_AS(load_csv(in), error);
    }

    SUBCASE("file round trip preserves coordinates exactly") {
        auto cloud = fixtures::ring16();
        const std::string path = "/tmp/parallax_test_ring.csv";
        write_csv_file(path, cloud);
        CHECK(load_csv_file(path) == cloud);
    }
}

TEST_CASE("distance collision detection") {
    CHECK(has_distance_collisions(fixtures::unit_square()));
    CHECK(has_distance_collisions(fixtures::ring16()));
    point_cloud scalene(2, {0.0, 0.0, 1.0, 0.0, 0.0, 1.7});
    CHECK_FALSE(has_distance_collisions(scalene));
}

TEST_CASE("rng streams are deterministic and decorrelated") {
    rng a(1, derive_stream(2, 3)), b(1, derive_stream(2, 3)), c(1, derive_stream(2, 4));
    const double va = a.uniform01();
    CHECK(va == b.uniform01());
    CHECK(va != c.uniform01());

    rng unit(11);
    auto v = unit.unit_vector(8);
    double norm = 0.0;
    for (double x : v) norm += x * x;
    CHECK(std::sqrt(norm) == doctest::Approx(1.0));
}
