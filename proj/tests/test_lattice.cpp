#include <doctest.h>

#include <cstdlib>
#include <set>
#include <tuple>

#include "hypstab/errors.hpp"
#include "hypstab/lattice.hpp"

using namespace hypstab;

namespace {

long long divisor_sum(long long m) {
    // Multiplicative formula over the prime factorization.
    long long result = 1;
    for (long long p = 2; p * p <= m; ++p) {
        long long term = 1, power = 1;
        while (m % p == 0) {
            m /= p;
            power *= p;
            term += power;
        }
        result *= term;
    }
    if (m > 1) result *= m + 1;
    return result;
}

}  // namespace

TEST_CASE("characteristic subgroups") {
    CHECK(index(x_characteristic(3)) == 9);
    CHECK(is_characteristic(x_characteristic(5)));
    CHECK_FALSE(is_characteristic({2, 1, 2}));
    CHECK_THROWS_AS(x_characteristic(0), InvalidArgument);
}

TEST_CASE("subgroup generated by (2,0) and (1,1)") {
    const LatticeSubgroup S = lattice_from_generators({2, 0}, {1, 1});
    CHECK(index(S) == 2);
    CHECK(lattice_contains(S, {0, 2}));
    CHECK(contains(S, x_characteristic(2)));
    CHECK_THROWS_AS(lattice_from_generators({1, 2}, {2, 4}), InvalidArgument);
}

TEST_CASE("generators reduce to a Hermite basis of the same lattice") {
    for (long long a = -4; a <= 4; ++a)
        for (long long b = -4; b <= 4; ++b)
            for (long long c = -4; c <= 4; ++c)
                for (long long d = -4; d <= 4; ++d) {
                    if (a * d - b * c == 0) continue;
                    const LatticeSubgroup S = lattice_from_generators({a, b}, {c, d});
                    CHECK(S.a > 0);
                    CHECK(S.d > 0);
                    CHECK(S.b >= 0);
                    CHECK(S.b < S.d);
                    CHECK(index(S) == std::llabs(a * d - b * c));
                    CHECK(lattice_contains(S, {a, b}));
                    CHECK(lattice_contains(S, {c, d}));
                }
}

TEST_CASE("exhaustive subgroup enumeration up to index 12") {
    for (long long m = 1; m <= 12; ++m) {
        CAPTURE(m);
        const auto subs = enumerate_subgroups(m);
        CHECK(static_cast<long long>(subs.size()) == divisor_sum(m));
        CHECK(sigma1(m) == divisor_sum(m));
        std::set<std::tuple<long long, long long, long long>> distinct;
        for (const auto& S : subs) {
            distinct.insert({S.a, S.b, S.d});
            CHECK(index(S) == m);
            CHECK(contains(S, x_characteristic(m)));
            // Coset labels are a bijection onto [0, m).
            std::set<long long> labels;
            for (long long x = -m; x <= m; ++x)
                for (long long y = -m; y <= m; ++y) labels.insert(coset_index(S, {x, y}));
            CHECK(static_cast<long long>(labels.size()) == m);
            CHECK(*labels.begin() == 0);
            CHECK(*labels.rbegin() == m - 1);
        }
        CHECK(distinct.size() == subs.size());
    }
}

TEST_CASE("brute-force sublattices of index m are exactly the enumerated ones") {
    for (long long m = 1; m <= 6; ++m) {
        std::set<std::tuple<long long, long long, long long>> found;
        for (long long a = -m; a <= m; ++a)
            for (long long b = -m; b <= m; ++b)
                for (long long c = -m; c <= m; ++c)
                    for (long long d = -m; d <= m; ++d)
                        if (std::llabs(a * d - b * c) == m) {
                            const auto S = lattice_from_generators({a, b}, {c, d});
                            found.insert({S.a, S.b, S.d});
                        }
        std::set<std::tuple<long long, long long, long long>> listed;
        for (const auto& S : enumerate_subgroups(m)) listed.insert({S.a, S.b, S.d});
        CHECK(found == listed);
    }
}

TEST_CASE("containment between subgroups") {
    CHECK(contains(x_characteristic(2), x_characteristic(4)));
    CHECK_FALSE(contains(x_characteristic(4), x_characteristic(2)));
    CHECK_FALSE(contains(x_characteristic(2), x_characteristic(3)));
    const auto r = reduce({2, 1, 3}, {5, -7});
    CHECK(r[0] >= 0);
    CHECK(r[0] < 2);
    CHECK(r[1] >= 0);
    CHECK(r[1] < 3);
}
