#include <doctest.h>

#include <cmath>
#include <map>
#include <numbers>
#include <random>

#include "hypstab/simplex.hpp"
#include "hypstab/volume.hpp"
#include "oracles.hpp"

using namespace hypstab;

namespace {

GeodesicSimplex klein_simplex(const std::vector<Eigen::VectorXd>& pts, std::vector<bool> ideal = {}) {
    if (ideal.empty()) ideal.assign(pts.size(), false);
    return GeodesicSimplex::from_klein(pts, ideal);
}

Eigen::VectorXd v2(double a, double b) {
    Eigen::VectorXd x(2);
    x << a, b;
    return x;
}

// Nondegenerate random simplex with well separated vertices.
GeodesicSimplex random_nondegenerate(int n, Rng& rng) {
    for (;;) {
        GeodesicSimplex K = random_simplex(n, rng);
        if (!is_degenerate(K, 1e-6)) return K;
    }
}

}  // namespace

TEST_CASE("regular ideal simplex has dihedral angle arccos(1/(n-1))") {
    for (int n = 2; n <= 8; ++n) {
        const GeodesicSimplex K = regular_ideal_simplex(n, n);
        for (int i = 0; i <= n; ++i)
            for (int j = i + 1; j <= n; ++j) {
                if (n == 2) CHECK(dihedral_angle(K, i, j) < 1e-7);  // acos near 1 keeps half the digits
                else CHECK(dihedral_angle(K, i, j) == doctest::Approx(std::acos(1.0 / (n - 1))).epsilon(1e-10));
            }
    }
}

TEST_CASE("triangle angles match the hyperbolic law of cosines") {
    std::mt19937_64 rng(5);
    for (int trial = 0; trial < 40; ++trial) {
        std::vector<Eigen::VectorXd> pts;
        for (int i = 0; i < 3; ++i) pts.push_back(oracle::random_ball_point(2, rng, 0.9));
        const GeodesicSimplex K = klein_simplex(pts);
        if (is_degenerate(K, 1e-4)) continue;
        const auto angles = oracle::triangle_angles(pts);
        // Angle at vertex v lies between the facets not opposite v.
        CHECK(dihedral_angle(K, 1, 2) == doctest::Approx(angles[0]).epsilon(1e-8));
        CHECK(dihedral_angle(K, 0, 2) == doctest::Approx(angles[1]).epsilon(1e-8));
        CHECK(dihedral_angle(K, 0, 1) == doctest::Approx(angles[2]).epsilon(1e-8));
    }
}

TEST_CASE("incenter of the ideal triangle") {
    const GeodesicSimplex K = regular_ideal_simplex(2, 2);
    const IncenterResult r = incenter_inradius(K);
    CHECK(r.inradius == doctest::Approx(std::log(std::sqrt(3.0))).epsilon(1e-12));
    CHECK(to_klein(r.incenter).norm() < 1e-12);
}

TEST_CASE("incenter tangency, interiority and isometry invariance") {
    Rng rng(derive_seed(kDefaultSeed, {3}));
    for (int n : {3, 4, 5}) {
        for (int trial = 0; trial < 30; ++trial) {
            const GeodesicSimplex K = random_nondegenerate(n, rng);
            const IncenterResult r = incenter_inradius(K);
            for (const auto& d : facet_duals(K))
                CHECK(std::abs(std::sinh(r.inradius) + mink(r.incenter.rep(), d.q)) < 1e-9);
            const Eigen::VectorXd bary = barycentric_coordinates(K, r.incenter);
            CHECK(bary.minCoeff() > 0.0);
            const Isometry g = random_isometry(n, 1000 + static_cast<std::uint64_t>(trial), 0.5);
            const IncenterResult moved = incenter_inradius(K.transformed(g));
            CHECK(moved.inradius == doctest::Approx(r.inradius).epsilon(1e-8));
            CHECK(distance(moved.incenter, g.apply(r.incenter)) < 1e-8);
        }
    }
}

TEST_CASE("dual vectors are unit spacelike and nonpositive on the simplex") {
    Rng rng(17);
    for (int n : {2, 3, 4}) {
        const GeodesicSimplex K = random_nondegenerate(n, rng);
        const auto duals = facet_duals(K);
        for (int i = 0; i <= n; ++i) {
            CHECK(mink(duals[static_cast<std::size_t>(i)].q, duals[static_cast<std::size_t>(i)].q) ==
                  doctest::Approx(1.0));
            for (int j = 0; j <= n; ++j) {
                const double s = mink(K.vertex(j).rep(), duals[static_cast<std::size_t>(i)].q);
                if (j == i) CHECK(s < 0.0);
                else CHECK(std::abs(s) < 1e-9);
            }
        }
    }
}

TEST_CASE("degeneracy and orientation") {
    const GeodesicSimplex flat = klein_simplex({v2(0.0, 0.0), v2(0.5, 0.0), v2(0.25, 0.0)});
    CHECK(is_degenerate(flat));
    CHECK(orientation_sign(flat) == 0);
    const GeodesicSimplex K = klein_simplex({v2(0.0, 0.0), v2(0.5, 0.0), v2(0.0, 0.5)});
    const GeodesicSimplex swapped = klein_simplex({v2(0.5, 0.0), v2(0.0, 0.0), v2(0.0, 0.5)});
    CHECK(orientation_sign(K) == 1);
    CHECK(orientation_sign(swapped) == -1);
    CHECK_THROWS_AS(incenter_inradius(flat), DegenerateSimplex);
}

TEST_CASE("straightening maps vertices and barycentric coordinates consistently") {
    Rng rng(23);
    const GeodesicSimplex K = random_nondegenerate(3, rng);
    std::vector<double> w(4, 0.0);
    for (int i = 0; i < 4; ++i) {
        std::fill(w.begin(), w.end(), 0.0);
        w[static_cast<std::size_t>(i)] = 1.0;
        const ProjectivePoint p = straight_point(K, w);
        CHECK((to_klein(p) - to_klein(K.vertex(i))).norm() < 1e-9);
    }
    const std::vector<double> mix{0.1, 0.2, 0.3, 0.4};
    const ProjectivePoint p = straight_point(K, mix);
    const Eigen::VectorXd b = barycentric_coordinates(K, p);
    CHECK(b.minCoeff() > 0.0);
    CHECK(b.sum() == doctest::Approx(1.0));
    const GeodesicSimplex S = straighten(K.vertices());
    CHECK((S.gram() - K.gram()).norm() < 1e-12);
}

TEST_CASE("nearest point: exact enumeration against a barycentric grid and descent") {
    std::mt19937_64 rng(29);
    Rng srng(31);
    for (int trial = 0; trial < 25; ++trial) {
        GeodesicSimplex E = random_nondegenerate(2, srng);
        const Eigen::VectorXd x = oracle::random_ball_point(2, rng, 0.9);
        const ProjectivePoint p = lift_klein(x, false);
        const double exact = distance_point_to_simplex(p, E);

        double grid = kInfinity;
        const int steps = 200;
        const auto klein = std::vector<Eigen::VectorXd>{to_klein(E.vertex(0)), to_klein(E.vertex(1)), to_klein(E.vertex(2))};
        for (int i = 0; i <= steps; ++i)
            for (int j = 0; i + j <= steps; ++j) {
                const double a = double(i) / steps, b = double(j) / steps;
                const Eigen::VectorXd y = a * klein[0] + b * klein[1] + (1.0 - a - b) * klein[2];
                if (y.norm() >= 1.0 - 1e-12) continue;
                grid = std::min(grid, oracle::poincare_distance(x, y));
            }
        CHECK(exact <= grid + 1e-9);
        CHECK(exact >= grid - 0.05);
        CHECK(distance_point_to_simplex_descent(p, E, 99) == doctest::Approx(exact).epsilon(1e-6));
    }
}

TEST_CASE("nearest point inside the simplex is the point itself") {
    const GeodesicSimplex K = regular_ideal_simplex(3, 3);
    const ProjectivePoint o = lift_klein(Eigen::VectorXd::Zero(3), false);
    const NearestPoint np = nearest_point(o, K);
    CHECK(np.distance == doctest::Approx(0.0));
    CHECK(np.face.size() == 4);
}

TEST_CASE("face clearances of the regular ideal simplex") {
    for (int n : {3, 4, 5}) {
        const GeodesicSimplex K = regular_ideal_simplex(n, n);
        const auto pairs = face_clearances(K);
        REQUIRE(!pairs.empty());
        const double m = min_face_clearance(K);
        CHECK(m > 0.0);
        for (const auto& p : pairs) CHECK(p.distance >= m - 1e-12);
        // Symmetry: all (n-2)-face centers see the same minimum.
        std::map<std::vector<int>, double> per_face;
        for (const auto& p : pairs) {
            auto [it, fresh] = per_face.emplace(p.center_face, p.distance);
            if (!fresh) it->second = std::min(it->second, p.distance);
        }
        for (const auto& [f, d] : per_face) CHECK(d == doctest::Approx(m).epsilon(1e-9));
    }
}
