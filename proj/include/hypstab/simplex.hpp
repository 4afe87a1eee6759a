#pragma once

// Geodesic simplices in the compactified hyperbolic space, possibly with ideal
// vertices: dual vectors, dihedral angles, incenters, nearest points and the
// face-clearance quantity used to separate face incenters from other faces.

#include <cstdint>
#include <span>
#include <vector>

#include <Eigen/Dense>

#include "hypstab/minkowski.hpp"

namespace hypstab {

class GeodesicSimplex {
public:
    /// k+1 vertices of a common ambient dimension n with 1 <= k <= n.
    explicit GeodesicSimplex(std::vector<ProjectivePoint> vertices);

    /// Builds the simplex from Klein-model coordinates; `ideal[i]` marks sphere points.
    static GeodesicSimplex from_klein(const std::vector<Eigen::VectorXd>& points,
                                      const std::vector<bool>& ideal,
                                      double tol = kDefaultTolerance);

    int ambient_dim() const { return vertices_.front().dim(); }
    int dim() const { return static_cast<int>(vertices_.size()) - 1; }
    const std::vector<ProjectivePoint>& vertices() const { return vertices_; }
    const ProjectivePoint& vertex(int i) const { return vertices_.at(static_cast<std::size_t>(i)); }
    bool has_ideal_vertex() const;

    /// Columns are the vertex representatives, shape (n+1) x (k+1).
    Eigen::MatrixXd vertex_matrix() const;
    /// Minkowski Gram matrix of the representatives.
    Eigen::MatrixXd gram() const;

    /// The face spanned by the listed vertex indices, in the listed order.
    GeodesicSimplex face(std::span<const int> indices) const;
    /// Facet opposite vertex i.
    GeodesicSimplex facet(int i) const;
    GeodesicSimplex transformed(const Isometry& g) const;

private:
    std::vector<ProjectivePoint> vertices_;
};

struct FacetDual {
    MinkowskiVector q;
    int facet_index = 0;
};

struct IncenterResult {
    ProjectivePoint incenter;
    double inradius = 0.0;
};

struct NearestPoint {
    ProjectivePoint point;
    double distance = 0.0;
    std::vector<int> face;  ///< vertex indices of the face whose relative interior holds the point
};

/// Regular ideal k-simplex in H^n with vertices (1, u_i), u_i . u_j = -1/k,
/// centred at the base point (1, 0, ..., 0).
GeodesicSimplex regular_ideal_simplex(int n, int k);

FacetDual facet_dual(const GeodesicSimplex& K, int i, double tol = kDefaultTolerance);
std::vector<FacetDual> facet_duals(const GeodesicSimplex& K, double tol = kDefaultTolerance);

/// Dihedral angle of a full-dimensional simplex at the codimension-2 face F_i ∩ F_j.
double dihedral_angle(const GeodesicSimplex& K, int i, int j, double tol = kDefaultTolerance);

IncenterResult incenter_inradius(const GeodesicSimplex& K, double tol = kDefaultTolerance);

bool is_degenerate(const GeodesicSimplex& K, double tol = kDefaultTolerance);

/// Sign of det of the vertex matrix; 0 exactly when degenerate. The sign agrees
/// with the orientation of the straight simplex in the Klein chart.
int orientation_sign(const GeodesicSimplex& K, double tol = kDefaultTolerance);

/// Geodesic simplex spanned by ordered vertex images.
GeodesicSimplex straighten(std::vector<ProjectivePoint> vertex_images);

/// Image of barycentric coordinates under the straightening map (hyperboloid
/// barycentric combination, rescaled). Weights must be nonnegative, not all zero.
ProjectivePoint straight_point(const GeodesicSimplex& K, std::span<const double> weights);

/// Coefficients of a point of span(K) in terms of the vertex representatives,
/// normalized to sum to one.
Eigen::VectorXd barycentric_coordinates(const GeodesicSimplex& K, const ProjectivePoint& p);

/// Exact nearest point of a nondegenerate simplex to a finite point: enumerates
/// faces and keeps Minkowski projections that land in a face's relative interior.
NearestPoint nearest_point(const ProjectivePoint& p, const GeodesicSimplex& E,
                           double tol = kDefaultTolerance);
double distance_point_to_simplex(const ProjectivePoint& p, const GeodesicSimplex& E,
                                 double tol = kDefaultTolerance);

/// Same quantity by multi-start projected gradient on the barycentric simplex
/// followed by golden-section exchanges between active coordinates.
double distance_point_to_simplex_descent(const ProjectivePoint& p, const GeodesicSimplex& E,
                                         std::uint64_t seed, int starts = 8);

/// Center used for clearance: the incenter when it exists; for a 1-face with an
/// ideal endpoint, the point of the face nearest the incenter of the parent simplex.
ProjectivePoint face_center(const GeodesicSimplex& parent, std::span<const int> face,
                            double tol = kDefaultTolerance);

struct ClearancePair {
    std::vector<int> center_face;  ///< E, an (n-2)-face
    std::vector<int> other_face;   ///< E', an (n-2)- or (n-1)-face with E ⊄ E'
    double distance = 0.0;
};

/// All (E, E') pairs entering the clearance minimum, with their distances.
std::vector<ClearancePair> face_clearances(const GeodesicSimplex& K, double tol = kDefaultTolerance);

/// min over the pairs of d(center(E), E').
double min_face_clearance(const GeodesicSimplex& K, double tol = kDefaultTolerance);

}  // namespace hypstab
