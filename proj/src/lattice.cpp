#include "hypstab/lattice.hpp"

#include <numeric>
#include <tuple>
#include <utility>
#include <string>

#include "hypstab/errors.hpp"

namespace hypstab {

namespace {

long long floor_div(long long x, long long m) {
    long long q = x / m;
    if ((x % m != 0) && ((x < 0) != (m < 0))) --q;
    return q;
}

long long mod(long long x, long long m) { return x - floor_div(x, m) * m; }

// Extended gcd: returns g and sets s, t with s x + t y = g >= 0.
long long ext_gcd(long long x, long long y, long long& s, long long& t) {
    long long s0 = 1, s1 = 0, t0 = 0, t1 = 1;
    while (y != 0) {
        const long long q = floor_div(x, y);
        std::tie(x, y) = std::pair{y, x - q * y};
        std::tie(s0, s1) = std::pair{s1, s0 - q * s1};
        std::tie(t0, t1) = std::pair{t1, t0 - q * t1};
    }
    if (x < 0) {
        x = -x;
        s0 = -s0;
        t0 = -t0;
    }
    s = s0;
    t = t0;
    return x;
}

}  // namespace

LatticeSubgroup lattice_from_generators(std::array<long long, 2> u, std::array<long long, 2> v) {
    if (u[0] * v[1] - u[1] * v[0] == 0)
        throw InvalidArgument("generators span a subgroup of infinite index (zero determinant)");
    long long s = 0, t = 0;
    const long long g = ext_gcd(u[0], v[0], s, t);
    // Unimodular row operations: first column becomes (g, 0).
    std::array<long long, 2> r1{g, s * u[1] + t * v[1]};
    std::array<long long, 2> r2{0, (v[0] / g) * u[1] - (u[0] / g) * v[1]};
    if (r2[1] < 0) r2[1] = -r2[1];
    LatticeSubgroup S{r1[0], mod(r1[1], r2[1]), r2[1]};
    return S;
}

LatticeSubgroup x_characteristic(long long x) {
    if (x < 1) throw InvalidArgument("x-characteristic subgroup needs x >= 1");
    return {x, 0, x};
}

long long index(const LatticeSubgroup& S) {
    if (S.a <= 0 || S.d <= 0) throw InvalidArgument("lattice basis has zero determinant");
    return S.a * S.d;
}

bool lattice_contains(const LatticeSubgroup& S, std::array<long long, 2> w) {
    if (mod(w[0], S.a) != 0) return false;
    return mod(w[1] - (w[0] / S.a) * S.b, S.d) == 0;
}

bool contains(const LatticeSubgroup& S, const LatticeSubgroup& S_prime) {
    return lattice_contains(S, {S_prime.a, S_prime.b}) && lattice_contains(S, {0, S_prime.d});
}

bool is_characteristic(const LatticeSubgroup& S) { return S.b == 0 && S.a == S.d; }

std::vector<LatticeSubgroup> enumerate_subgroups(long long m) {
    if (m < 1) throw InvalidArgument("subgroup index must be positive");
    std::vector<LatticeSubgroup> out;
    for (long long a = 1; a <= m; ++a) {
        if (m % a != 0) continue;
        const long long d = m / a;
        for (long long b = 0; b < d; ++b) out.push_back({a, b, d});
    }
    return out;
}

long long sigma1(long long m) {
    long long s = 0;
    for (long long k = 1; k <= m; ++k)
        if (m % k == 0) s += k;
    return s;
}

std::array<long long, 2> reduce(const LatticeSubgroup& S, std::array<long long, 2> w) {
    const long long q = floor_div(w[0], S.a);
    const long long x = w[0] - q * S.a;
    const long long y = mod(w[1] - q * S.b, S.d);
    return {x, y};
}

long long coset_index(const LatticeSubgroup& S, std::array<long long, 2> w) {
    const auto r = reduce(S, w);
    return r[0] * S.d + r[1];
}

}  // namespace hypstab
