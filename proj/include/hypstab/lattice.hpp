#pragma once

#include <array>
#include <vector>

namespace hypstab {

/// Finite-index subgroup of Z x Z generated by the rows (a, b) and (0, d) of its
/// Hermite normal form: a > 0, d > 0, 0 <= b < d.
struct LatticeSubgroup {
    long long a = 1;
    long long b = 0;
    long long d = 1;
    bool operator==(const LatticeSubgroup&) const = default;
};

/// Subgroup generated by u and v; throws InvalidArgument when they are dependent.
LatticeSubgroup lattice_from_generators(std::array<long long, 2> u, std::array<long long, 2> v);

/// x (Z x Z), generated by (x, 0) and (0, x).
LatticeSubgroup x_characteristic(long long x);

long long index(const LatticeSubgroup& S);
bool lattice_contains(const LatticeSubgroup& S, std::array<long long, 2> w);
/// True iff S' is a subgroup of S.
bool contains(const LatticeSubgroup& S, const LatticeSubgroup& S_prime);
bool is_characteristic(const LatticeSubgroup& S);

/// All subgroups of index m, one per Hermite normal form.
std::vector<LatticeSubgroup> enumerate_subgroups(long long m);

/// Sum of the divisors of m.
long long sigma1(long long m);

/// Canonical coset representative (x, y), 0 <= x < a, 0 <= y < d, and its index x d + y.
std::array<long long, 2> reduce(const LatticeSubgroup& S, std::array<long long, 2> w);
long long coset_index(const LatticeSubgroup& S, std::array<long long, 2> w);

}  // namespace hypstab
