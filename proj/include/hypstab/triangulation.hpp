#pragma once

// Loose triangulations given as facet-pairing data. Facets are indexed by the
// opposite vertex; a pairing glues facet a.facet of simplex a.simplex to facet
// b.facet of simplex b.simplex, and `map` lists the images (vertex indices of b)
// of a's facet vertices taken in increasing order.

#include <optional>
#include <string>
#include <vector>

#include "hypstab/errors.hpp"

namespace hypstab {

struct Slot {
    int simplex = 0;
    int facet = 0;
    bool operator==(const Slot&) const = default;
    auto operator<=>(const Slot&) const = default;
};

struct Pairing {
    Slot a;
    Slot b;
    std::vector<int> map;
};

class Triangulation {
public:
    Triangulation(int dim, int simplex_count, std::vector<Pairing> pairings, std::vector<std::string> labels = {});

    int dim() const { return dim_; }
    int simplex_count() const { return simplex_count_; }
    const std::vector<Pairing>& pairings() const { return pairings_; }
    const std::vector<std::string>& labels() const { return labels_; }

    /// Full vertex permutation a -> b of pairing p, with a.facet -> b.facet.
    std::vector<int> full_map(int p) const;

    /// Pairing index and side (true if the slot is side a) at a slot, if paired.
    std::optional<std::pair<int, bool>> pairing_at(Slot s) const;

private:
    int dim_;
    int simplex_count_;
    std::vector<Pairing> pairings_;
    std::vector<std::string> labels_;
    std::vector<int> slot_pairing_;  // (simplex * (dim+1) + facet) -> pairing index or -1
    std::vector<char> slot_side_a_;
};

struct ValidationReport {
    bool valid = false;
    bool closed = false;
    std::vector<Slot> boundary;
    std::vector<std::string> issues;
};

ValidationReport validate(const Triangulation& T);

/// Throws InvalidTriangulation carrying the issues when T is invalid.
void require_valid(const Triangulation& T);

struct CellCounts {
    std::vector<long long> f;  ///< f[i] = number of i-cells
    long long euler = 0;
};

CellCounts cell_counts(const Triangulation& T);

/// Class id of every (simplex, vertex) pair under the face identifications.
std::vector<int> vertex_classes(const Triangulation& T, int* count = nullptr);

struct Orientability {
    bool orientable = false;
    std::vector<int> orientation;      ///< +1/-1 per simplex when orientable
    std::vector<int> violating_cycle;  ///< pairing indices of an odd cycle otherwise
};

/// Pairing p is orientation-reversing for (o_a, o_b) iff o_a o_b sgn(full_map(p)) = -1.
Orientability orientability(const Triangulation& T);

int permutation_sign(const std::vector<int>& perm);

struct VertexLink {
    int vertex = 0;  ///< vertex class id
    int triangles = 0;
    int edges = 0;
    int vertices = 0;
    long long euler = 0;
    bool closed = false;
};

struct EdgeValence {
    int edge = 0;      ///< edge class id
    int valence = 0;   ///< incident tetrahedra counted with multiplicity
};

struct LinkReport {
    std::vector<VertexLink> links;
    std::vector<EdgeValence> valences;
};

/// Vertex links and edge valences of a 3-dimensional triangulation.
LinkReport links(const Triangulation& T);

}  // namespace hypstab
