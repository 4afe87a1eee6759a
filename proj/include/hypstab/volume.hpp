#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "hypstab/random.hpp"
#include "hypstab/simplex.hpp"

namespace hypstab {

enum class VolumeMethod { MonteCarlo, ClosedForm, Series, Cubature };

std::string to_string(VolumeMethod m);

struct VolumeEstimate {
    double value = 0.0;
    double std_error = 0.0;  ///< nonzero only for MonteCarlo
    long long samples = 0;
    VolumeMethod method = VolumeMethod::ClosedForm;
};

inline constexpr long long kDefaultBudget = 2'000'000;

/// Lobachevsky function, pi-periodic and odd; accurate to about 1e-15.
double lobachevsky(double theta);

/// Volume of a radius-r ball in H^n.
double ball_volume(int n, double r);

/// Volume of a full-dimensional geodesic simplex by Monte Carlo in the Klein model.
/// The simplex is split into the n+1 regions where one barycentric coordinate
/// dominates; each region is a cone from its vertex, where the density's
/// singularity at an ideal apex is absorbed into the radial sampling law.
VolumeEstimate simplex_volume(const GeodesicSimplex& K, long long budget = kDefaultBudget,
                              std::uint64_t seed = kDefaultSeed);

/// Deterministic product-Gauss cubature over the barycentric subdivision.
/// `order` points per axis; 0 picks a default for the dimension. Practical for n <= 5.
VolumeEstimate simplex_volume_cubature(const GeodesicSimplex& K, int order = 0);

/// v_n: pi for n = 2, 3 Lambda(pi/3) for n = 3, Monte Carlo for n >= 4.
VolumeEstimate ideal_regular_volume(int n, long long budget = kDefaultBudget,
                                    std::uint64_t seed = kDefaultSeed);

/// Random simplex with a mixture of finite and ideal vertices; Klein coordinates.
GeodesicSimplex random_simplex(int n, Rng& rng, double ideal_probability = 0.5);

struct MaximalityReport {
    int n = 0;
    int trials = 0;
    int accepted = 0;
    int rejected_degenerate = 0;
    double v_n = 0.0;
    double max_volume = 0.0;
    double max_error = 0.0;         ///< error attached to the max (std error or cubature tolerance)
    Eigen::MatrixXd max_gram;       ///< vertex Gram data of the maximizer
    int exceedances = 0;            ///< volumes above v_n beyond tolerance
    bool passed() const { return exceedances == 0 && accepted > 0; }
};

/// Samples random nondegenerate simplices and checks vol <= v_n.
MaximalityReport maximality_probe(int n, int trials, std::uint64_t seed = kDefaultSeed);

struct PerturbationPoint {
    double scale = 0.0;
    double volume = 0.0;
};

/// Volumes of the regular ideal simplex with its ideal vertices moved along a
/// fixed seeded tangent direction by each scale; expected to rise to v_n as scale -> 0.
std::vector<PerturbationPoint> perturbation_sequence(int n, const std::vector<double>& scales,
                                                     std::uint64_t seed = kDefaultSeed);

}  // namespace hypstab
