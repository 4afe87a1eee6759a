#pragma once

#include <cstdint>
#include <map>
#include <vector>

#include <boost/rational.hpp>

#include "hypstab/triangulation.hpp"

namespace hypstab {

using Rational = boost::rational<std::int64_t>;

/// An affine simplex of the complex: simplex id plus the order its vertices are traversed in.
struct LabeledSimplex {
    int simplex = 0;
    std::vector<int> order;
    auto operator<=>(const LabeledSimplex&) const = default;
};

class Chain {
public:
    void add(const LabeledSimplex& s, Rational c);
    const std::map<LabeledSimplex, Rational>& terms() const { return terms_; }
    bool empty() const { return terms_.empty(); }
    Rational l1_norm() const;

private:
    std::map<LabeledSimplex, Rational> terms_;
};

/// Sum over simplices of o_s alt(s), with alt(s) = 1/(n+1)! sum_tau sgn(tau) s o tau.
Chain alternation_chain(const Triangulation& T, const std::vector<int>& orientation);

/// The alternated fundamental cycle; T must be valid, closed and orientable.
Chain fundamental_cycle(const Triangulation& T);

/// Boundary of a chain with facets rewritten in their canonical slot
/// (side a of the pairing, or the slot itself when unpaired).
Chain boundary(const Triangulation& T, const Chain& z);

bool verify_cycle(const Triangulation& T, const Chain& z);

}  // namespace hypstab
