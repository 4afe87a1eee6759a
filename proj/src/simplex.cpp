#include "hypstab/simplex.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

#include "hypstab/random.hpp"

namespace hypstab {

namespace {

Eigen::VectorXd as_vector(const Eigen::MatrixXd& m, int col) { return m.col(col); }

void require_nondegenerate(const GeodesicSimplex& K, double tol) {
    if (is_degenerate(K, tol))
        throw DegenerateSimplex("simplex of dimension " + std::to_string(K.dim()) + " is degenerate");
}

// Inverse Gram matrix with the degeneracy/conditioning split the callers report.
Eigen::MatrixXd inverse_gram(const GeodesicSimplex& K, double tol) {
    require_nondegenerate(K, tol);
    const Eigen::MatrixXd G = K.gram();
    Eigen::FullPivLU<Eigen::MatrixXd> lu(G);
    if (!lu.isInvertible() || lu.rcond() < 1e-14)
        throw NumericallySingular("vertex Gram matrix is numerically singular");
    return lu.inverse();
}

// Euclidean projection onto the probability simplex.
Eigen::VectorXd project_to_simplex(const Eigen::VectorXd& y) {
    const auto m = y.size();
    std::vector<double> u(y.data(), y.data() + m);
    std::sort(u.begin(), u.end(), std::greater<>());
    double cumulative = 0.0;
    double theta = 0.0;
    for (Eigen::Index j = 0; j < m; ++j) {
        cumulative += u[static_cast<std::size_t>(j)];
        const double t = (cumulative - 1.0) / static_cast<double>(j + 1);
        if (u[static_cast<std::size_t>(j)] - t > 0.0) theta = t;
    }
    return (y.array() - theta).max(0.0).matrix();
}

std::vector<std::vector<int>> subsets_of_size(int universe, int size) {
    std::vector<std::vector<int>> out;
    std::vector<int> pick(static_cast<std::size_t>(size));
    std::iota(pick.begin(), pick.end(), 0);
    if (size > universe || size <= 0) return out;
    while (true) {
        out.push_back(pick);
        int i = size - 1;
        while (i >= 0 && pick[static_cast<std::size_t>(i)] == universe - size + i) --i;
        if (i < 0) break;
        ++pick[static_cast<std::size_t>(i)];
        for (int j = i + 1; j < size; ++j)
            pick[static_cast<std::size_t>(j)] = pick[static_cast<std::size_t>(j - 1)] + 1;
    }
    return out;
}

bool contains_all(const std::vector<int>& outer, const std::vector<int>& inner) {
    return std::includes(outer.begin(), outer.end(), inner.begin(), inner.end());
}

}  // namespace

GeodesicSimplex::GeodesicSimplex(std::vector<ProjectivePoint> vertices) : vertices_(std::move(vertices)) {
    if (vertices_.size() < 2) throw InvalidArgument("a simplex needs at least two vertices");
    const int n = vertices_.front().dim();
    for (const auto& v : vertices_)
        if (v.dim() != n) throw DimensionMismatch("simplex vertices live in different dimensions");
    if (dim() > n)
        throw InvalidArgument("a " + std::to_string(dim()) + "-simplex does not fit in H^" + std::to_string(n));
}

GeodesicSimplex GeodesicSimplex::from_klein(const std::vector<Eigen::VectorXd>& points,
                                            const std::vector<bool>& ideal, double tol) {
    if (points.size() != ideal.size()) throw InvalidArgument("points and ideal flags differ in length");
    std::vector<ProjectivePoint> verts;
    verts.reserve(points.size());
    for (std::size_t i = 0; i < points.size(); ++i) verts.push_back(lift_klein(points[i], ideal[i], tol));
    return GeodesicSimplex(std::move(verts));
}

bool GeodesicSimplex::has_ideal_vertex() const {
    return std::any_of(vertices_.begin(), vertices_.end(), [](const auto& v) { return v.is_ideal(); });
}

Eigen::MatrixXd GeodesicSimplex::vertex_matrix() const {
    Eigen::MatrixXd V(ambient_dim() + 1, dim() + 1);
    for (int i = 0; i <= dim(); ++i) V.col(i) = vertices_[static_cast<std::size_t>(i)].rep().coords();
    return V;
}

Eigen::MatrixXd GeodesicSimplex::gram() const {
    const Eigen::MatrixXd V = vertex_matrix();
    return V.transpose() * minkowski_metric(ambient_dim()) * V;
}

GeodesicSimplex GeodesicSimplex::face(std::span<const int> indices) const {
    std::vector<ProjectivePoint> verts;
    for (int i : indices) {
        if (i < 0 || i > dim()) throw InvalidArgument("face index out of range");
        verts.push_back(vertices_[static_cast<std::size_t>(i)]);
    }
    return GeodesicSimplex(std::move(verts));
}

GeodesicSimplex GeodesicSimplex::facet(int i) const {
    std::vector<int> idx;
    for (int j = 0; j <= dim(); ++j)
        if (j != i) idx.push_back(j);
    return face(idx);
}

GeodesicSimplex GeodesicSimplex::transformed(const Isometry& g) const {
    std::vector<ProjectivePoint> verts;
    verts.reserve(vertices_.size());
    for (const auto& v : vertices_) verts.push_back(g.apply(v));
    return GeodesicSimplex(std::move(verts));
}

GeodesicSimplex regular_ideal_simplex(int n, int k) {
    if (k < 2 || k > n) throw InvalidArgument("regular_ideal_simplex needs 2 <= k <= n");
    // Helmert basis of the sum-zero hyperplane in R^{k+1}; the centred standard
    // basis vectors become k+1 unit vectors in R^k with pairwise dot -1/k.
    const double radius = std::sqrt(static_cast<double>(k) / (k + 1));
    std::vector<ProjectivePoint> verts;
    for (int i = 0; i <= k; ++i) {
        Eigen::VectorXd rep = Eigen::VectorXd::Zero(n + 1);
        rep[0] = 1.0;
        for (int j = 1; j <= k; ++j) {
            const double norm = std::sqrt(static_cast<double>(j) * (j + 1));
            double h = 0.0;
            if (i < j) h = 1.0 / norm;
            else if (i == j) h = -static_cast<double>(j) / norm;
            rep[j] = h / radius;
        }
        verts.push_back(ProjectivePoint::ideal(MinkowskiVector(rep)));
    }
    return GeodesicSimplex(std::move(verts));
}

std::vector<FacetDual> facet_duals(const GeodesicSimplex& K, double tol) {
    const Eigen::MatrixXd Ginv = inverse_gram(K, tol);
    const Eigen::MatrixXd V = K.vertex_matrix();
    std::vector<FacetDual> out;
    for (int i = 0; i <= K.dim(); ++i) {
        if (Ginv(i, i) <= 0.0)
            throw UndefinedIncenter("facet " + std::to_string(i) + " spans no Lorentzian subspace; no unit dual");
        Eigen::VectorXd q = V * Ginv.col(i);
        const double norm = mink(q, q);
        q /= std::sqrt(norm);
        if (mink(q, as_vector(V, i)) > 0.0) q = -q;
        out.push_back({MinkowskiVector(q), i});
    }
    return out;
}

FacetDual facet_dual(const GeodesicSimplex& K, int i, double tol) {
    if (i < 0 || i > K.dim()) throw InvalidArgument("facet index out of range");
    return facet_duals(K, tol)[static_cast<std::size_t>(i)];
}

double dihedral_angle(const GeodesicSimplex& K, int i, int j, double tol) {
    if (i == j) throw InvalidArgument("dihedral angle needs two distinct facets");
    if (K.dim() < 2) throw InvalidArgument("dihedral angles need a simplex of dimension >= 2");
    const auto duals = facet_duals(K, tol);
    const double c = -mink(duals.at(static_cast<std::size_t>(i)).q, duals.at(static_cast<std::size_t>(j)).q);
    return std::acos(std::clamp(c, -1.0, 1.0));
}

IncenterResult incenter_inradius(const GeodesicSimplex& K, double tol) {
    const auto duals = facet_duals(K, tol);
    const Eigen::MatrixXd V = K.vertex_matrix();
    const int m = K.dim() + 1;
    Eigen::MatrixXd Q(V.rows(), m);
    for (int i = 0; i < m; ++i) Q.col(i) = duals[static_cast<std::size_t>(i)].q.coords();
    // <V a, q_i> = -1 for all i.
    const Eigen::MatrixXd system = Q.transpose() * minkowski_metric(K.ambient_dim()) * V;
    Eigen::FullPivLU<Eigen::MatrixXd> lu(system);
    if (!lu.isInvertible() || lu.rcond() < 1e-14)
        throw NumericallySingular("incenter system is numerically singular");
    const Eigen::VectorXd a = lu.solve(Eigen::VectorXd::Constant(m, -1.0));
    const Eigen::VectorXd c = V * a;
    const double norm = mink(c, c);
    if (!(norm < 0.0)) throw NumericallySingular("incenter candidate is not timelike");
    const double scale = std::sqrt(-norm);
    return {ProjectivePoint::finite(MinkowskiVector(Eigen::VectorXd(c / scale)), 1e-6), std::asinh(1.0 / scale)};
}

bool is_degenerate(const GeodesicSimplex& K, double tol) {
    Eigen::MatrixXd V = K.vertex_matrix();
    for (Eigen::Index j = 0; j < V.cols(); ++j) V.col(j).normalize();
    const Eigen::MatrixXd G = V.transpose() * minkowski_metric(K.ambient_dim()) * V;
    Eigen::JacobiSVD<Eigen::MatrixXd> svd(G);
    const auto& s = svd.singularValues();
    return s[s.size() - 1] <= tol * s[0];
}

int orientation_sign(const GeodesicSimplex& K, double tol) {
    if (K.dim() != K.ambient_dim())
        throw InvalidArgument("orientation_sign needs a full-dimensional simplex");
    if (is_degenerate(K, tol)) return 0;
    const double det = K.vertex_matrix().determinant();
    return det > 0.0 ? 1 : (det < 0.0 ? -1 : 0);
}

GeodesicSimplex straighten(std::vector<ProjectivePoint> vertex_images) {
    return GeodesicSimplex(std::move(vertex_images));
}

ProjectivePoint straight_point(const GeodesicSimplex& K, std::span<const double> weights) {
    if (static_cast<int>(weights.size()) != K.dim() + 1)
        throw InvalidArgument("barycentric weight count does not match the simplex");
    Eigen::VectorXd w = Eigen::VectorXd::Zero(K.ambient_dim() + 1);
    double total = 0.0;
    for (int i = 0; i <= K.dim(); ++i) {
        const double l = weights[static_cast<std::size_t>(i)];
        if (l < 0.0) throw InvalidArgument("barycentric weights must be nonnegative");
        total += l;
        w += l * K.vertex(i).rep().coords();
    }
    if (total <= 0.0) throw InvalidArgument("barycentric weights must not all vanish");
    return ProjectivePoint::from_causal(MinkowskiVector(w), 1e-12);
}

Eigen::VectorXd barycentric_coordinates(const GeodesicSimplex& K, const ProjectivePoint& p) {
    const Eigen::VectorXd lambda = K.vertex_matrix().colPivHouseholderQr().solve(p.rep().coords());
    return lambda / lambda.sum();
}

NearestPoint nearest_point(const ProjectivePoint& p, const GeodesicSimplex& E, double tol) {
    if (!p.is_finite()) throw InvalidArgument("nearest_point needs a finite point");
    if (p.dim() != E.ambient_dim()) throw DimensionMismatch("point and simplex dimensions differ");
    require_nondegenerate(E, tol);

    const int m = E.dim() + 1;
    const Eigen::MatrixXd V = E.vertex_matrix();
    const Eigen::MatrixXd J = minkowski_metric(E.ambient_dim());
    const Eigen::VectorXd& x = p.rep().coords();

    double best = kInfinity;
    Eigen::VectorXd best_point;
    std::vector<int> best_face;
    for (unsigned mask = 1; mask < (1u << m); ++mask) {
        std::vector<int> face;
        for (int i = 0; i < m; ++i)
            if (mask & (1u << i)) face.push_back(i);
        if (face.size() == 1) {
            const auto& v = E.vertex(face[0]);
            if (v.is_ideal()) continue;
            const double d = distance(p, v);
            if (d < best) {
                best = d;
                best_point = v.rep().coords();
                best_face = face;
            }
            continue;
        }
        Eigen::MatrixXd VS(V.rows(), static_cast<Eigen::Index>(face.size()));
        for (std::size_t j = 0; j < face.size(); ++j) VS.col(static_cast<Eigen::Index>(j)) = V.col(face[j]);
        const Eigen::MatrixXd G = VS.transpose() * J * VS;
        const Eigen::VectorXd a = G.fullPivLu().solve(VS.transpose() * J * x);
        if ((a.array() <= 0.0).any()) continue;
        const Eigen::VectorXd inside = VS * a;
        const Eigen::VectorXd perp = x - inside;
        const double d = std::asinh(std::sqrt(std::max(0.0, mink(perp, perp))));
        if (d < best) {
            best = d;
            best_point = inside / std::sqrt(-mink(inside, inside));
            best_face = face;
        }
    }
    if (!std::isfinite(best)) throw NumericallySingular("no face projection landed inside the simplex");
    return {ProjectivePoint::finite(MinkowskiVector(best_point), 1e-6), best, best_face};
}

double distance_point_to_simplex(const ProjectivePoint& p, const GeodesicSimplex& E, double tol) {
    return nearest_point(p, E, tol).distance;
}

double distance_point_to_simplex_descent(const ProjectivePoint& p, const GeodesicSimplex& E,
                                         std::uint64_t seed, int starts) {
    if (!p.is_finite()) throw InvalidArgument("distance needs a finite point");
    require_nondegenerate(E, kDefaultTolerance);
    const int m = E.dim() + 1;
    const Eigen::MatrixXd V = E.vertex_matrix();
    const Eigen::MatrixXd J = minkowski_metric(E.ambient_dim());
    const Eigen::RowVectorXd pJV = p.rep().coords().transpose() * J * V;  // <p, v_i>
    const Eigen::MatrixXd G = V.transpose() * J * V;

    // f(lambda) = cosh d(p, x(lambda)) = -<p,w> / sqrt(-<w,w>), w = V lambda.
    auto value = [&](const Eigen::VectorXd& l) {
        const double A = -pJV.dot(l);
        const double B = -l.dot(G * l);
        return B > 0.0 ? A / std::sqrt(B) : kInfinity;
    };
    auto gradient = [&](const Eigen::VectorXd& l) {
        const double A = -pJV.dot(l);
        const double B = -l.dot(G * l);
        const Eigen::VectorXd dA = -pJV.transpose();
        const Eigen::VectorXd dB = -2.0 * (G * l);
        return Eigen::VectorXd(dA / std::sqrt(B) - 0.5 * A * std::pow(B, -1.5) * dB);
    };

    Rng rng(seed);
    std::exponential_distribution<double> expo(1.0);
    double best = kInfinity;
    for (int s = 0; s < std::max(1, starts); ++s) {
        Eigen::VectorXd l(m);
        if (s == 0) {
            l.setConstant(1.0 / m);
        } else if (s <= m && s < starts) {
            l.setConstant(0.3 / m);
            l[s - 1] += 0.7;
        } else {
            for (int i = 0; i < m; ++i) l[i] = expo(rng);
            l /= l.sum();
        }
        double f = value(l);
        double step = 1.0;
        for (int it = 0; it < 4000; ++it) {
            const Eigen::VectorXd g = gradient(l);
            bool moved = false;
            for (int ls = 0; ls < 60; ++ls) {
                const Eigen::VectorXd cand = project_to_simplex(l - step * g);
                const double fc = value(cand);
                if (fc < f - 1e-4 * g.dot(l - cand)) {
                    moved = (l - cand).norm() > 1e-15;
                    l = cand;
                    f = fc;
                    step *= 2.0;
                    break;
                }
                step *= 0.5;
            }
            if (!moved) break;
        }
        // Golden-section exchange of mass between coordinate pairs.
        constexpr double kGolden = 0.6180339887498949;
        for (int sweep = 0; sweep < 50; ++sweep) {
            const double before = f;
            for (int i = 0; i < m; ++i) {
                for (int j = 0; j < m; ++j) {
                    if (i == j || l[i] <= 0.0) continue;
                    auto along = [&](double t) {
                        Eigen::VectorXd c = l;
                        c[i] -= t;
                        c[j] += t;
                        return value(c);
                    };
                    double lo = -l[j], hi = l[i];
                    double x1 = hi - kGolden * (hi - lo), x2 = lo + kGolden * (hi - lo);
                    double f1 = along(x1), f2 = along(x2);
                    for (int it = 0; it < 80 && hi - lo > 1e-16; ++it) {
                        if (f1 < f2) {
                            hi = x2; x2 = x1; f2 = f1;
                            x1 = hi - kGolden * (hi - lo);
                            f1 = along(x1);
                        } else {
                            lo = x1; x1 = x2; f1 = f2;
                            x2 = lo + kGolden * (hi - lo);
                            f2 = along(x2);
                        }
                    }
                    const double t = 0.5 * (lo + hi);
                    const double ft = along(t);
                    if (ft < f) {
                        l[i] -= t;
                        l[j] += t;
                        l = l.cwiseMax(0.0);
                        l /= l.sum();
                        f = value(l);
                    }
                }
            }
            if (before - f <= 1e-16 * before) break;
        }
        best = std::min(best, f);
    }
    return std::acosh(std::max(1.0, best));
}

ProjectivePoint face_center(const GeodesicSimplex& parent, std::span<const int> face, double tol) {
    const GeodesicSimplex sub = parent.face(face);
    try {
        return incenter_inradius(sub, tol).incenter;
    } catch (const UndefinedIncenter&) {
        if (sub.dim() != 1) throw;
        return nearest_point(incenter_inradius(parent, tol).incenter, sub, tol).point;
    }
}

std::vector<ClearancePair> face_clearances(const GeodesicSimplex& K, double tol) {
    const int n = K.ambient_dim();
    if (n < 3) throw InvalidArgument("face clearance needs n >= 3");
    if (K.dim() != n) throw InvalidArgument("face clearance needs a full-dimensional simplex");
    require_nondegenerate(K, tol);

    const auto ridges = subsets_of_size(n + 1, n - 1);
    const auto facets = subsets_of_size(n + 1, n);
    std::vector<ClearancePair> out;
    for (const auto& E : ridges) {
        const ProjectivePoint center = face_center(K, E, tol);
        auto add = [&](const std::vector<int>& other) {
            const GeodesicSimplex target = K.face(other);
            out.push_back({E, other, nearest_point(center, target, tol).distance});
        };
        for (const auto& other : ridges)
            if (other != E) add(other);
        for (const auto& other : facets)
            if (!contains_all(other, E)) add(other);
    }
    return out;
}

double min_face_clearance(const GeodesicSimplex& K, double tol) {
    double best = kInfinity;
    for (const auto& pair : face_clearances(K, tol)) best = std::min(best, pair.distance);
    return best;
}

}  // namespace hypstab
