#pragma once

// Reference formulas written without the library, used as test oracles.

#include <cmath>
#include <numbers>
#include <random>
#include <vector>

#include <Eigen/Dense>
#include <boost/math/quadrature/tanh_sinh.hpp>

namespace oracle {

/// Distance between Klein points via the Poincare ball.
inline double poincare_distance(const Eigen::VectorXd& kx, const Eigen::VectorXd& ky) {
    auto to_ball = [](const Eigen::VectorXd& k) { return Eigen::VectorXd(k / (1.0 + std::sqrt(1.0 - k.squaredNorm()))); };
    const Eigen::VectorXd p = to_ball(kx), q = to_ball(ky);
    const double num = 2.0 * (p - q).squaredNorm();
    return std::acosh(1.0 + num / ((1.0 - p.squaredNorm()) * (1.0 - q.squaredNorm())));
}

/// Interior angles of a finite hyperbolic triangle with Klein vertices, by the law of cosines.
inline std::vector<double> triangle_angles(const std::vector<Eigen::VectorXd>& k) {
    const double a = poincare_distance(k[1], k[2]);
    const double b = poincare_distance(k[0], k[2]);
    const double c = poincare_distance(k[0], k[1]);
    auto angle = [](double opp, double s1, double s2) {
        return std::acos((std::cosh(s1) * std::cosh(s2) - std::cosh(opp)) / (std::sinh(s1) * std::sinh(s2)));
    };
    return {angle(a, b, c), angle(b, a, c), angle(c, a, b)};
}

/// Lobachevsky function as the integral -int_0^theta log|2 sin t| dt, 0 < theta <= pi/2.
inline double lobachevsky_integral(double theta) {
    boost::math::quadrature::tanh_sinh<double> q;
    return -q.integrate([](double t) { return std::log(2.0 * std::sin(t)); }, 0.0, theta);
}

inline Eigen::VectorXd random_ball_point(int n, std::mt19937_64& rng, double max_radius = 0.95) {
    std::normal_distribution<double> g;
    std::uniform_real_distribution<double> u(0.0, 1.0);
    Eigen::VectorXd x(n);
    for (int i = 0; i < n; ++i) x[i] = g(rng);
    return x.normalized() * max_radius * std::pow(u(rng), 1.0 / n);
}

inline Eigen::VectorXd random_sphere_point(int n, std::mt19937_64& rng) {
    std::normal_distribution<double> g;
    Eigen::VectorXd x(n);
    for (int i = 0; i < n; ++i) x[i] = g(rng);
    return x.normalized();
}

/// Ball volume in H^2 and H^3 in closed form.
inline double ball_volume_2(double r) { return 2.0 * std::numbers::pi * (std::cosh(r) - 1.0); }
inline double ball_volume_3(double r) { return std::numbers::pi * (std::sinh(2.0 * r) - 2.0 * r); }

}  // namespace oracle
