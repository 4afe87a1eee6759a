#pragma once

#include <map>
#include <string>
#include <vector>

#include "hypstab/lattice.hpp"
#include "hypstab/random.hpp"
#include "hypstab/triangulation.hpp"

namespace hypstab {

/// Degree and a permutation of {0..d-1} per pairing id (one-line form);
/// pairings without an entry carry the identity. Copy k of side a is glued
/// to copy perm[k] of side b.
struct CoverSpec {
    int degree = 1;
    std::map<int, std::vector<int>> perms;
};

/// Closed walk around a codimension-2 face: the pairings crossed, with the
/// direction (true = from side a to side b).
struct RidgeCycle {
    std::string description;
    std::vector<std::pair<int, bool>> steps;
};

/// Every interior codimension-2 cycle of T, each listed once.
std::vector<RidgeCycle> ridge_cycles(const Triangulation& T);

/// Permutation picked up walking the cycle (composition of the crossed perms).
std::vector<int> holonomy(const RidgeCycle& cycle, const CoverSpec& spec);

struct Cover {
    Triangulation triangulation;
    std::vector<int> projection;  ///< cover simplex -> base simplex
    std::vector<int> sheet;       ///< cover simplex -> copy index
    int degree = 1;
    int components = 1;
};

/// Cover simplex (s, k) gets id s d + k; pairing (p, k) gets id p d + k.
/// Throws BranchedCover naming the first cycle with nontrivial holonomy.
Cover build_cover(const Triangulation& T, const CoverSpec& spec);

/// Checks that `projection` is a degree-(t'/t) simplicial covering map.
bool verify_covering(const Triangulation& base, const Triangulation& cover, const std::vector<int>& projection);

int connected_components(const Triangulation& T);

/// Coset action of Z x Z on Z x Z / S transported to the built-in two-triangle torus.
CoverSpec torus_subgroup_spec(const LatticeSubgroup& S);

/// Disjoint union of random subgroup actions, relabelled by a random gauge per simplex.
CoverSpec random_admissible_torus_spec(Rng& rng, int max_degree = 12);

/// Cyclic covers: shifts in Z/d on pairings off a spanning tree of the dual graph,
/// enumerated exhaustively and kept when every ridge holonomy vanishes.
std::vector<CoverSpec> cyclic_cover_specs(const Triangulation& T, int degree, std::size_t limit = 64);

}  // namespace hypstab
