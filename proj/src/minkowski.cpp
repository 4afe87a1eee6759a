#include "hypstab/minkowski.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "hypstab/random.hpp"

namespace hypstab {

namespace {

void require_same_dim(const Eigen::VectorXd& u, const Eigen::VectorXd& v) {
    if (u.size() != v.size())
        throw DimensionMismatch("Minkowski vectors of sizes " + std::to_string(u.size()) + " and " +
                                std::to_string(v.size()));
}

// Rounding in <w,w> grows with w0^2 for points far from the base point.
double scaled_tol(double tol, double w0) { return tol * std::max(1.0, w0 * w0); }

}  // namespace

MinkowskiVector::MinkowskiVector(Eigen::VectorXd coords) : coords_(std::move(coords)) {
    if (coords_.size() < 3)
        throw InvalidArgument("Minkowski vectors need n >= 2 (at least 3 coordinates)");
    if (!coords_.allFinite()) throw InvalidArgument("Minkowski vector has non-finite entries");
}

MinkowskiVector::MinkowskiVector(std::initializer_list<double> coords)
    : MinkowskiVector(Eigen::Map<const Eigen::VectorXd>(coords.begin(),
                                                        static_cast<Eigen::Index>(coords.size()))) {}

MinkowskiVector MinkowskiVector::operator+(const MinkowskiVector& o) const {
    require_same_dim(coords_, o.coords_);
    return MinkowskiVector(Eigen::VectorXd(coords_ + o.coords_));
}

MinkowskiVector MinkowskiVector::operator-(const MinkowskiVector& o) const {
    require_same_dim(coords_, o.coords_);
    return MinkowskiVector(Eigen::VectorXd(coords_ - o.coords_));
}

MinkowskiVector MinkowskiVector::operator*(double s) const {
    return MinkowskiVector(Eigen::VectorXd(coords_ * s));
}

double mink(const Eigen::VectorXd& u, const Eigen::VectorXd& v) {
    require_same_dim(u, v);
    return -u[0] * v[0] + u.tail(u.size() - 1).dot(v.tail(v.size() - 1));
}

double mink(const MinkowskiVector& u, const MinkowskiVector& v) { return mink(u.coords(), v.coords()); }

Eigen::MatrixXd minkowski_metric(int n) {
    Eigen::MatrixXd J = Eigen::MatrixXd::Identity(n + 1, n + 1);
    J(0, 0) = -1.0;
    return J;
}

ProjectivePoint ProjectivePoint::finite(const MinkowskiVector& rep, double tol) {
    if (rep[0] <= 0.0) throw ConstraintViolation("finite point must lie on the upper sheet (w0 > 0)");
    const double norm = mink(rep, rep);
    if (std::abs(norm + 1.0) > scaled_tol(tol, rep[0]))
        throw ConstraintViolation("finite point violates <w,w> = -1 (got " + std::to_string(norm) + ")");
    return ProjectivePoint(rep, PointKind::Finite);
}

ProjectivePoint ProjectivePoint::ideal(const MinkowskiVector& rep, double tol) {
    if (rep[0] <= 0.0) throw ConstraintViolation("ideal point must be future-directed (w0 > 0)");
    MinkowskiVector unit = rep * (1.0 / rep[0]);
    const double norm = mink(unit, unit);
    if (std::abs(norm) > tol)
        throw ConstraintViolation("ideal point violates <w,w> = 0 (got " + std::to_string(norm) + ")");
    return ProjectivePoint(std::move(unit), PointKind::Ideal);
}

ProjectivePoint ProjectivePoint::from_causal(const MinkowskiVector& rep, double tol) {
    if (rep[0] <= 0.0) throw ConstraintViolation("point must be future-directed (w0 > 0)");
    const double norm = mink(rep, rep) / (rep[0] * rep[0]);
    if (norm > tol) throw ConstraintViolation("vector is spacelike; not a point of the closed ball");
    if (norm >= -tol) return ideal(rep, tol);
    return ProjectivePoint(rep * (1.0 / std::sqrt(-mink(rep, rep))), PointKind::Finite);
}

double distance(const ProjectivePoint& p, const ProjectivePoint& q, double tol) {
    require_same_dim(p.rep().coords(), q.rep().coords());
    if (p.is_ideal() || q.is_ideal()) {
        if (p.is_ideal() && q.is_ideal() &&
            (p.rep().coords() - q.rep().coords()).lpNorm<Eigen::Infinity>() <= tol)
            return 0.0;
        return kInfinity;
    }
    const double x = -mink(p.rep(), q.rep());
    if (x < 2.0) {
        // cosh d - 1 = <p-q,p-q>/2 = 2 sinh^2(d/2); avoids cancellation in arccosh near 1.
        const Eigen::VectorXd diff = p.rep().coords() - q.rep().coords();
        const double chord2 = std::max(0.0, mink(diff, diff));
        return 2.0 * std::asinh(0.5 * std::sqrt(chord2));
    }
    return std::acosh(x);
}

double dist_to_hyperplane(const ProjectivePoint& w, const MinkowskiVector& q, double tol) {
    if (!w.is_finite()) throw ConstraintViolation("hyperplane distance needs a finite point");
    require_same_dim(w.rep().coords(), q.coords());
    if (std::abs(mink(q, q) - 1.0) > tol) throw ConstraintViolation("q is not unit spacelike");
    const double s = -mink(w.rep(), q);
    if (s < -scaled_tol(tol, w.rep()[0]))
        throw ConstraintViolation("point lies on the positive side of the dual vector");
    return std::asinh(std::max(0.0, s));
}

Eigen::VectorXd to_klein(const ProjectivePoint& p) {
    const auto& c = p.rep().coords();
    return c.tail(c.size() - 1) / c[0];
}

ProjectivePoint lift_klein(const Eigen::VectorXd& x, bool ideal, double tol) {
    const double r2 = x.squaredNorm();
    Eigen::VectorXd rep(x.size() + 1);
    if (ideal) {
        if (std::abs(std::sqrt(r2) - 1.0) > tol)
            throw ConstraintViolation("ideal Klein point must lie on the unit sphere");
        rep << 1.0, x / std::sqrt(r2);
        return ProjectivePoint::ideal(MinkowskiVector(rep), tol);
    }
    if (r2 >= 1.0) throw ConstraintViolation("finite Klein point must lie in the open unit ball");
    const double s = 1.0 / std::sqrt(1.0 - r2);
    rep << s, s * x;
    return ProjectivePoint::finite(MinkowskiVector(rep), tol);
}

Isometry::Isometry(Eigen::MatrixXd matrix, double tol) : matrix_(std::move(matrix)) {
    if (matrix_.rows() != matrix_.cols() || matrix_.rows() < 3)
        throw InvalidArgument("isometry matrix must be square of size n+1 >= 3");
    if (matrix_(0, 0) <= 0.0) throw ConstraintViolation("isometry must preserve the upper sheet");
    const double scale = std::max(1.0, matrix_.cwiseAbs().maxCoeff());
    if (form_defect() > tol * scale * scale)
        throw ConstraintViolation("matrix does not preserve the Minkowski form");
}

Isometry Isometry::identity(int n) {
    return Isometry(Eigen::MatrixXd::Identity(n + 1, n + 1));
}

double Isometry::form_defect() const {
    const Eigen::MatrixXd J = minkowski_metric(dim());
    return (matrix_.transpose() * J * matrix_ - J).cwiseAbs().maxCoeff();
}

MinkowskiVector Isometry::apply(const MinkowskiVector& v) const {
    require_same_dim(v.coords(), matrix_.col(0));
    return MinkowskiVector(Eigen::VectorXd(matrix_ * v.coords()));
}

ProjectivePoint Isometry::apply(const ProjectivePoint& p) const {
    const MinkowskiVector image = apply(p.rep());
    if (p.is_ideal()) return ProjectivePoint::ideal(image, 1e-6);
    // Renormalize onto the hyperboloid to keep rounding from accumulating.
    const double norm = mink(image, image);
    return ProjectivePoint::finite(image * (1.0 / std::sqrt(-norm)), 1e-6);
}

Isometry Isometry::compose(const Isometry& inner) const {
    if (inner.dim() != dim()) throw DimensionMismatch("composing isometries of different dimension");
    return Isometry(matrix_ * inner.matrix_, 1e-6);
}

Isometry Isometry::inverse() const {
    const Eigen::MatrixXd J = minkowski_metric(dim());
    return Isometry(J * matrix_.transpose() * J, 1e-6);
}

Isometry random_isometry(int n, std::uint64_t seed, double spread) {
    if (n < 2) throw InvalidArgument("random_isometry needs n >= 2");
    Rng rng(seed);
    std::normal_distribution<double> gauss(0.0, 1.0);

    Eigen::MatrixXd frame(n + 1, n + 1);
    Eigen::VectorXd x(n);
    for (int i = 0; i < n; ++i) x[i] = spread * gauss(rng);
    frame(0, 0) = std::sqrt(1.0 + x.squaredNorm());
    frame.col(0).tail(n) = x;

    for (int j = 1; j <= n; ++j) {
        Eigen::VectorXd v(n + 1);
        for (int i = 0; i <= n; ++i) v[i] = gauss(rng);
        for (int pass = 0; pass < 2; ++pass) {
            for (int i = 0; i < j; ++i) {
                const double self = i == 0 ? -1.0 : 1.0;
                v -= (mink(v, Eigen::VectorXd(frame.col(i))) / self) * frame.col(i);
            }
        }
        frame.col(j) = v / std::sqrt(mink(v, v));
    }
    return Isometry(frame, 1e-8);
}

}  // namespace hypstab
