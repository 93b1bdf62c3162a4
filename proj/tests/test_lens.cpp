#include <doctest.h>

#include <cmath>
#include <random>

#include "oracles.hpp"
#include "proxiskel/lens.hpp"

using namespace proxiskel;

namespace {

Point2 random_point(std::mt19937& rng, double lo = -10.0, double hi = 10.0) {
    std::uniform_real_distribution<double> coord(lo, hi);
    return {coord(rng), coord(rng)};
}

}  // namespace

TEST_CASE("euclidean reference pair (0,0)-(2,0) hits the expected centres") {
    MetricSpec m = MetricSpec::l2();
    Point2 a{0.0, 0.0}, b{2.0, 0.0};

    Lens l2 = lens_construct(m, a, b, Beta(2.0));
    CHECK(l2.radius == doctest::Approx(2.0));
    CHECK(l2.c1.x == doctest::Approx(2.0));
    CHECK(l2.c1.y == doctest::Approx(0.0));
    CHECK(l2.c2.x == doctest::Approx(0.0));
    CHECK(l2.c2.y == doctest::Approx(0.0));

    Lens l1 = lens_construct(m, a, b, Beta(1.0));
    CHECK(l1.radius == doctest::Approx(1.0));
    CHECK(l1.c1.x == doctest::Approx(1.0));
    CHECK(l1.c1.y == doctest::Approx(0.0));
    CHECK(l1.c2.x == doctest::Approx(1.0));
    CHECK(l1.c2.y == doctest::Approx(0.0));

    Lens l3 = lens_construct(m, a, b, Beta(3.0));
    CHECK(l3.radius == doctest::Approx(3.0));
    CHECK(l3.c1.x == doctest::Approx(3.0));
    CHECK(l3.c1.y == doctest::Approx(0.0));
    CHECK(l3.c2.x == doctest::Approx(-1.0));
    CHECK(l3.c2.y == doctest::Approx(0.0));

    Lens lh = lens_construct(m, a, b, Beta(0.5));
    CHECK(lh.radius == doctest::Approx(2.0));
    CHECK(lh.c1.x == doctest::Approx(1.0));
    CHECK(lh.c1.y == doctest::Approx(std::sqrt(3.0)));
    CHECK(lh.c2.x == doctest::Approx(1.0));
    CHECK(lh.c2.y == doctest::Approx(-std::sqrt(3.0)));
}

TEST_CASE("membership tie rules on the unit-beta lens") {
    MetricSpec m = MetricSpec::l2();
    Lens l = lens_construct(m, {0.0, 0.0}, {2.0, 0.0}, Beta(1.0));
    CHECK(point_in_lens(l, {1.0, 0.5}, Variant::Closed));
    CHECK(point_in_lens(l, {1.0, 0.5}, Variant::Open));
    CHECK(point_in_lens(l, {1.0, 1.0}, Variant::Closed));       // boundary point
    CHECK_FALSE(point_in_lens(l, {1.0, 1.0}, Variant::Open));   // boundary excluded
    CHECK_FALSE(point_in_lens(l, {3.5, 0.0}, Variant::Closed));
}

TEST_CASE("affine centre identities hold for beta >= 1 in every lp metric") {
    std::mt19937 rng(123);
    std::uniform_real_distribution<double> betas(1.0, 4.0);
    for (double p : {1.5, 2.0, 3.0}) {
        MetricSpec m = MetricSpec::lp(p);
        for (int i = 0; i < 100; ++i) {
            Point2 a = random_point(rng), b = random_point(rng);
            if (dist2(a, b) < 1e-3) continue;
            double beta = betas(rng);
            Lens l = lens_construct(m, a, b, Beta(beta));
            double d = l.gen_dist, tol = 1e-9 * d;
            CHECK(std::fabs(distance(m, l.c1, l.c2) - (beta - 1.0) * d) <= tol);
            CHECK(std::fabs(distance(m, a, l.c2) - std::fabs(beta - 2.0) * d / 2.0) <= tol);
            CHECK(std::fabs(distance(m, b, l.c1) - std::fabs(beta - 2.0) * d / 2.0) <= tol);
            CHECK(std::fabs(distance(m, a, l.c1) - beta * d / 2.0) <= tol);
            CHECK(std::fabs(distance(m, b, l.c2) - beta * d / 2.0) <= tol);
            // generators sit inside (closed) for beta >= 1
            CHECK(point_in_lens(l, a, Variant::Closed));
            CHECK(point_in_lens(l, b, Variant::Closed));
        }
    }
}

TEST_CASE("small-beta centres put both generators on both disc boundaries") {
    std::mt19937 rng(456);
    std::uniform_real_distribution<double> betas(0.15, 0.95);
    for (double p : {1.5, 2.0, 3.0}) {
        MetricSpec m = MetricSpec::lp(p);
        for (int i = 0; i < 40; ++i) {
            Point2 a = random_point(rng), b = random_point(rng);
            if (dist2(a, b) < 1e-2) continue;
            double beta = betas(rng);
            Lens l = lens_construct(m, a, b, Beta(beta));
            double d = l.gen_dist, tol = 1e-9 * d;
            CHECK(l.radius == doctest::Approx(d / (2.0 * beta)));
            for (Point2 c : {l.c1, l.c2}) {
                CHECK(std::fabs(distance(m, c, a) - l.radius) <= tol);
                CHECK(std::fabs(distance(m, c, b) - l.radius) <= tol);
            }
            // c1 lies on the positive side of the directed chord, c2 on the negative
            CHECK(cross(b - a, l.c1 - a) > 0.0);
            CHECK(cross(b - a, l.c2 - a) < 0.0);
        }
    }
}

TEST_CASE("small-beta centres agree with the boundary-scan reference") {
    std::mt19937 rng(789);
    std::uniform_real_distribution<double> betas(0.2, 0.9);
    for (double p : {1.5, 2.0, 3.0}) {
        MetricSpec m = MetricSpec::lp(p);
        for (int i = 0; i < 15; ++i) {
            Point2 a = random_point(rng), b = random_point(rng);
            if (dist2(a, b) < 1e-2) continue;
            double beta = betas(rng);
            Lens l = lens_construct(m, a, b, Beta(beta));
            auto centres = oracle::equiradial_centres(m, a, b, l.radius);
            REQUIRE(centres.size() == 2);
            for (Point2 c : {l.c1, l.c2}) {
                double best = std::fmin(dist2(c, centres[0]), dist2(c, centres[1]));
                CHECK(best <= 1e-7 * l.gen_dist);
            }
        }
    }
}

TEST_CASE("lenses grow with beta") {
    std::mt19937 rng(321);
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    for (double p : {1.5, 2.0, 3.0}) {
        MetricSpec m = MetricSpec::lp(p);
        for (int i = 0; i < 30; ++i) {
            Point2 a = random_point(rng), b = random_point(rng);
            if (dist2(a, b) < 1e-2) continue;
            double b1 = 0.3 + 1.5 * unit(rng);
            double b2 = b1 + 0.1 + unit(rng);
            Lens small = lens_construct(m, a, b, Beta(b1));
            Lens big = lens_construct(m, a, b, Beta(b2));
            for (int k = 0; k < 50; ++k) {
                Point2 q = random_point(rng, -15.0, 15.0);
                if (point_in_lens(small, q, Variant::Open))
                    CHECK(point_in_lens(big, q, Variant::Closed));
            }
        }
    }
}

TEST_CASE("lens region does not depend on generator order") {
    std::mt19937 rng(654);
    std::uniform_real_distribution<double> betas(0.3, 3.0);
    for (double p : {1.5, 2.0, 3.0}) {
        MetricSpec m = MetricSpec::lp(p);
        for (int i = 0; i < 20; ++i) {
            Point2 a = random_point(rng), b = random_point(rng);
            if (dist2(a, b) < 1e-2) continue;
            Beta beta(betas(rng));
            Lens fwd = lens_construct(m, a, b, beta);
            Lens rev = lens_construct(m, b, a, beta);
            for (int k = 0; k < 50; ++k) {
                Point2 q = random_point(rng, -15.0, 15.0);
                for (Variant v : {Variant::Closed, Variant::Open})
                    CHECK(point_in_lens(fwd, q, v) == point_in_lens(rev, q, v));
            }
        }
    }
}

TEST_CASE("zero and infinite beta limits") {
    MetricSpec m = MetricSpec::l2();
    Point2 a{0.0, 0.0}, b{2.0, 0.0};

    // beta = 0: the segment, with open variant excluding the endpoints
    CHECK(limit_membership(m, a, b, Beta(0.0), {1.0, 0.0}, Variant::Closed));
    CHECK(limit_membership(m, a, b, Beta(0.0), {1.0, 0.0}, Variant::Open));
    CHECK(limit_membership(m, a, b, Beta(0.0), {0.0, 0.0}, Variant::Closed));
    CHECK_FALSE(limit_membership(m, a, b, Beta(0.0), {0.0, 0.0}, Variant::Open));
    CHECK_FALSE(limit_membership(m, a, b, Beta(0.0), {1.0, 0.1}, Variant::Closed));

    // beta = inf in the euclidean case: the strip between the perpendiculars
    CHECK(limit_membership(m, a, b, Beta::infinity(), {1.0, 100.0}, Variant::Closed));
    CHECK(limit_membership(m, a, b, Beta::infinity(), {0.5, -7.0}, Variant::Open));
    CHECK_FALSE(limit_membership(m, a, b, Beta::infinity(), {-0.5, 0.0}, Variant::Closed));
    CHECK_FALSE(limit_membership(m, a, b, Beta::infinity(), {2.5, 3.0}, Variant::Closed));

    CHECK_THROWS_AS(limit_membership(m, a, b, Beta(1.5), {1.0, 0.0}, Variant::Closed),
                    BetaOutOfRange);
}

TEST_CASE("strip membership matches a very large finite beta away from boundaries") {
    std::mt19937 rng(987);
    MetricSpec m = MetricSpec::l2();
    for (int i = 0; i < 20; ++i) {
        Point2 a = random_point(rng), b = random_point(rng);
        double d = dist2(a, b);
        if (d < 1.0) continue;
        Lens huge = lens_construct(m, a, b, Beta(1e6));
        for (int k = 0; k < 100; ++k) {
            Point2 q = random_point(rng, -12.0, 12.0);
            Point2 dir = b - a;
            double t = dot(q - a, dir) / dot(dir, dir);
            if (std::fabs(t) < 1e-3 || std::fabs(t - 1.0) < 1e-3) continue;
            CHECK(limit_membership(m, a, b, Beta::infinity(), q, Variant::Closed) ==
                  point_in_lens(huge, q, Variant::Closed));
        }
    }
}

TEST_CASE("off-euclidean infinite-beta membership is stable in the cutoff") {
    std::mt19937 rng(555);
    for (double p : {1.5, 3.0}) {
        MetricSpec m = MetricSpec::lp(p);
        for (int i = 0; i < 10; ++i) {
            Point2 a = random_point(rng), b = random_point(rng);
            if (dist2(a, b) < 1.0) continue;
            Lens l6 = lens_construct(m, a, b, Beta(1e6));
            Lens l8 = lens_construct(m, a, b, Beta(1e8));
            for (int k = 0; k < 100; ++k) {
                Point2 q = random_point(rng, -12.0, 12.0);
                CHECK(point_in_lens(l6, q, Variant::Closed) ==
                      point_in_lens(l8, q, Variant::Closed));
            }
        }
    }
}

TEST_CASE("validation failures") {
    CHECK_THROWS_AS(lens_construct(MetricSpec::l2(), {1.0, 1.0}, {1.0, 1.0}, Beta(1.0)),
                    DegenerateGenerators);
    CHECK_THROWS_AS(lens_construct(MetricSpec::l1(), {0.0, 0.0}, {1.0, 0.0}, Beta(1.0)),
                    UnsupportedMetric);
    CHECK_THROWS_AS(limit_membership(MetricSpec::l1(), {0.0, 0.0}, {1.0, 0.0}, Beta(0.0),
                                     {0.5, 0.0}, Variant::Closed),
                    UnsupportedMetric);
}
