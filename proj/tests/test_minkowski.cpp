#include <doctest.h>

#include <random>

#include "hypstab/minkowski.hpp"
#include "oracles.hpp"

using namespace hypstab;

TEST_CASE("minkowski form and metric") {
    const MinkowskiVector u{2.0, 1.0, 3.0}, v{1.0, -1.0, 2.0};
    CHECK(mink(u, v) == doctest::Approx(-2.0 - 1.0 + 6.0));
    const Eigen::MatrixXd J = minkowski_metric(2);
    CHECK(J(0, 0) == -1.0);
    CHECK(J(1, 1) == 1.0);
    CHECK(J(0, 1) == 0.0);
    CHECK_THROWS_AS(mink(MinkowskiVector{1.0, 0.0, 0.0, 0.0}, MinkowskiVector{1.0, 0.0, 0.0}), DimensionMismatch);
    CHECK_THROWS_AS(MinkowskiVector({1.0, 0.0}), InvalidArgument);
}

TEST_CASE("point constructors validate their model") {
    CHECK_NOTHROW(ProjectivePoint::finite(MinkowskiVector{1.0, 0.0, 0.0}));
    CHECK_THROWS_AS(ProjectivePoint::finite(MinkowskiVector{2.0, 0.0, 0.0}), ConstraintViolation);
    CHECK_THROWS_AS(ProjectivePoint::finite(MinkowskiVector{-1.0, 0.0, 0.0}), ConstraintViolation);
    const ProjectivePoint p = ProjectivePoint::ideal(MinkowskiVector{3.0, 3.0, 0.0});
    CHECK(p.rep()[0] == doctest::Approx(1.0));
    CHECK_THROWS_AS(ProjectivePoint::ideal(MinkowskiVector{1.0, 0.5, 0.0}), ConstraintViolation);
    const ProjectivePoint c = ProjectivePoint::from_causal(MinkowskiVector{2.0, 1.0, 0.0});
    CHECK(c.is_finite());
    CHECK(mink(c.rep(), c.rep()) == doctest::Approx(-1.0));
}

TEST_CASE("distance agrees with the Poincare ball formula") {
    std::mt19937_64 rng(7);
    for (int n : {2, 3, 5}) {
        for (int trial = 0; trial < 50; ++trial) {
            const Eigen::VectorXd x = oracle::random_ball_point(n, rng), y = oracle::random_ball_point(n, rng);
            const double d = distance(lift_klein(x, false), lift_klein(y, false));
            CHECK(d == doctest::Approx(oracle::poincare_distance(x, y)).epsilon(1e-9));
        }
    }
    const ProjectivePoint o = lift_klein(Eigen::VectorXd::Zero(2), false);
    Eigen::VectorXd e(2);
    e << 1.0, 0.0;
    CHECK(std::isinf(distance(o, lift_klein(e, true))));
    CHECK(distance(lift_klein(e, true), lift_klein(e, true)) == 0.0);
}

TEST_CASE("Klein chart round trip") {
    std::mt19937_64 rng(11);
    for (int trial = 0; trial < 20; ++trial) {
        const Eigen::VectorXd x = oracle::random_ball_point(4, rng);
        CHECK((to_klein(lift_klein(x, false)) - x).norm() < 1e-12);
        const Eigen::VectorXd s = oracle::random_sphere_point(4, rng);
        CHECK((to_klein(lift_klein(s, true)) - s).norm() < 1e-12);
    }
}

TEST_CASE("random isometries preserve the form and distances") {
    std::mt19937_64 rng(3);
    for (int n : {2, 3, 4, 6}) {
        const Isometry g = random_isometry(n, 100 + static_cast<std::uint64_t>(n));
        CHECK(g.form_defect() < 1e-9);
        CHECK(g.compose(g.inverse()).form_defect() < 1e-9);
        const ProjectivePoint p = lift_klein(oracle::random_ball_point(n, rng), false);
        const ProjectivePoint q = lift_klein(oracle::random_ball_point(n, rng), false);
        CHECK(distance(g.apply(p), g.apply(q)) == doctest::Approx(distance(p, q)).epsilon(1e-9));
        const ProjectivePoint back = g.inverse().apply(g.apply(p));
        CHECK((back.rep().coords() - p.rep().coords()).norm() < 1e-9);
    }
    Eigen::MatrixXd bad = Eigen::MatrixXd::Identity(3, 3);
    bad(1, 1) = 2.0;
    CHECK_THROWS_AS(Isometry{bad}, ConstraintViolation);
}

TEST_CASE("distance to a hyperplane") {
    // Hyperplane x1 = 0 in H^2, dual q = (0, -1, 0) is nonpositive on x1 >= 0.
    const MinkowskiVector q{0.0, -1.0, 0.0};
    Eigen::VectorXd x(2);
    x << 0.5, 0.0;
    const double d = dist_to_hyperplane(lift_klein(x, false), q);
    CHECK(d == doctest::Approx(oracle::poincare_distance(x, Eigen::VectorXd::Zero(2))));
}
