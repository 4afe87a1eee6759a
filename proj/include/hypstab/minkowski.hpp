#pragma once

// Hyperboloid model of H^n inside Minkowski space R^{n,1}.
//
// Coordinate 0 is timelike; the form is <u,v> = -u0 v0 + sum_{i>=1} ui vi.
// Finite points satisfy <w,w> = -1, w0 > 0. Ideal points are light-cone rays,
// stored with the canonical representative w0 = 1.

#include <cstdint>
#include <limits>
#include <vector>

#include <Eigen/Dense>

#include "hypstab/errors.hpp"

namespace hypstab {

inline constexpr double kDefaultTolerance = 1e-9;
inline constexpr double kInfinity = std::numeric_limits<double>::infinity();

class MinkowskiVector {
public:
    MinkowskiVector() = default;
    explicit MinkowskiVector(Eigen::VectorXd coords);
    MinkowskiVector(std::initializer_list<double> coords);

    /// Ambient hyperbolic dimension n (the vector has n+1 coordinates).
    int dim() const { return static_cast<int>(coords_.size()) - 1; }
    double operator[](int i) const { return coords_[i]; }
    const Eigen::VectorXd& coords() const { return coords_; }

    MinkowskiVector operator+(const MinkowskiVector& o) const;
    MinkowskiVector operator-(const MinkowskiVector& o) const;
    MinkowskiVector operator*(double s) const;

private:
    Eigen::VectorXd coords_;
};

/// Minkowski bilinear form. Throws DimensionMismatch on unequal sizes.
double mink(const MinkowskiVector& u, const MinkowskiVector& v);
double mink(const Eigen::VectorXd& u, const Eigen::VectorXd& v);

/// J = diag(-1, 1, ..., 1) of size n+1.
Eigen::MatrixXd minkowski_metric(int n);

enum class PointKind { Finite, Ideal };

class ProjectivePoint {
public:
    /// Validates <rep,rep> = -1 and rep0 > 0 within tol.
    static ProjectivePoint finite(const MinkowskiVector& rep, double tol = kDefaultTolerance);
    /// Validates <rep,rep> = 0 (after scaling to rep0 = 1) within tol; stores rep0 = 1.
    static ProjectivePoint ideal(const MinkowskiVector& rep, double tol = kDefaultTolerance);
    /// Finite if <rep,rep> < 0, ideal if null; rescales onto the hyperboloid or cone.
    static ProjectivePoint from_causal(const MinkowskiVector& rep, double tol = kDefaultTolerance);

    PointKind kind() const { return kind_; }
    bool is_ideal() const { return kind_ == PointKind::Ideal; }
    bool is_finite() const { return kind_ == PointKind::Finite; }
    const MinkowskiVector& rep() const { return rep_; }
    int dim() const { return rep_.dim(); }

private:
    ProjectivePoint(MinkowskiVector rep, PointKind kind) : rep_(std::move(rep)), kind_(kind) {}

    MinkowskiVector rep_;
    PointKind kind_ = PointKind::Finite;
};

/// Hyperbolic distance; +inf when an ideal point meets a different point.
double distance(const ProjectivePoint& p, const ProjectivePoint& q, double tol = kDefaultTolerance);

/// Distance from a finite point to the hyperplane dual to the unit spacelike q.
/// Requires <w,q> <= 0; a positive pairing signals an orientation error upstream.
double dist_to_hyperplane(const ProjectivePoint& w, const MinkowskiVector& q,
                          double tol = kDefaultTolerance);

/// Klein (projective) model: rep spatial part divided by rep0.
Eigen::VectorXd to_klein(const ProjectivePoint& p);
ProjectivePoint lift_klein(const Eigen::VectorXd& x, bool ideal, double tol = kDefaultTolerance);

class Isometry {
public:
    /// Validates M^T J M = J and M00 > 0 within tol.
    explicit Isometry(Eigen::MatrixXd matrix, double tol = 1e-8);
    static Isometry identity(int n);

    int dim() const { return static_cast<int>(matrix_.rows()) - 1; }
    const Eigen::MatrixXd& matrix() const { return matrix_; }

    MinkowskiVector apply(const MinkowskiVector& v) const;
    ProjectivePoint apply(const ProjectivePoint& p) const;
    Isometry compose(const Isometry& inner) const;  // this ∘ inner
    Isometry inverse() const;

    /// max |M^T J M - J|, for audits.
    double form_defect() const;

private:
    Eigen::MatrixXd matrix_;
};

/// Deterministic pseudo-random isometry of H^n: Minkowski Gram-Schmidt on a
/// seeded Gaussian frame, with the time orientation fixed. `spread` scales the
/// boost (the timelike column is drawn as (sqrt(1+|x|^2), x) with x ~ N(0, spread^2)).
Isometry random_isometry(int n, std::uint64_t seed, double spread = 1.0);

}  // namespace hypstab
