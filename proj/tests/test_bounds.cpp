#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <string>

#include "hypstab/bounds.hpp"
#include "hypstab/cover.hpp"
#include "hypstab/errors.hpp"
#include "hypstab/fixtures.hpp"
#include "hypstab/random.hpp"

using namespace hypstab;

namespace {

// Direct evaluation of d v_A + 2 h n (v_B + v_D) + h v_C with d = h n^2.
double jsj_oracle(double vA, double vB, double vC, double vD, long long h, long long n) {
    double total = 0.0;
    for (long long i = 0; i < h * n * n; ++i) total += vA;
    for (long long i = 0; i < 2 * h * n; ++i) total += vB + vD;
    for (long long i = 0; i < h; ++i) total += vC;
    return total;
}

bool has_annotation(const Dashboard& d, const std::string& needle) {
    return std::any_of(d.annotations.begin(), d.annotations.end(),
                       [&](const std::string& a) { return a.find(needle) != std::string::npos; });
}

const DashboardCheck* find_check(const Dashboard& d, const std::string& name) {
    for (const auto& c : d.checks)
        if (c.name == name) return &c;
    return nullptr;
}

}  // namespace

TEST_CASE("jsj bound worked example") {
    const JsjBound b = jsj_cover_bound(5, 3, 2, 1, 1, 10);
    CHECK(b.bound == doctest::Approx(582.0));
    CHECK(b.normalized == doctest::Approx(5.82));
    CHECK(b.limit == 5.0);
}

TEST_CASE("jsj bound matches direct summation") {
    for (long long h : {1, 2, 3})
        for (long long n : {1, 2, 5, 17}) {
            const JsjBound b = jsj_cover_bound(1.5, 0.25, 3.0, 0.75, h, n);
            CHECK(b.bound == doctest::Approx(jsj_oracle(1.5, 0.25, 3.0, 0.75, h, n)));
            CHECK(b.normalized == doctest::Approx(b.bound / static_cast<double>(h * n * n)));
        }
}

TEST_CASE("jsj normalized bound tends to v_A") {
    const JsjBound b = jsj_cover_bound(5, 3, 2, 1, 1, 1000);
    CHECK(std::abs(b.normalized - b.limit) < 0.01);
    double prev = 1e300;
    for (long long n = 1; n <= 64; n *= 2) {
        const double v = jsj_cover_bound(5, 3, 2, 1, 1, n).normalized;
        CHECK(v <= prev);
        prev = v;
    }
    CHECK(jsj_cover_bound(0, 0, 0, 0, 4, 9).bound == 0.0);
}

TEST_CASE("jsj bound rejects bad input") {
    CHECK_THROWS_AS(jsj_cover_bound(-1, 0, 0, 0, 1, 1), InvalidArgument);
    CHECK_THROWS_AS(jsj_cover_bound(1, 0, 0, 0, 0, 1), InvalidArgument);
    CHECK_THROWS_AS(jsj_cover_bound(1, 0, 0, 0, 1, 0), InvalidArgument);
}

TEST_CASE("filling bound") {
    CHECK(filling_bound(2, 4, 1, 100).normalized == doctest::Approx(2.05));
    CHECK(filling_bound(2, 4, 1, 1).normalized == doctest::Approx(7.0));
    CHECK(filling_bound(2, 4, 1, 1).limit == 2.0);
    // figure-eight complement has volume 2 v_3 and norm 2
    const FillingBound fe = filling_bound(2, 0, 0, 50);
    CHECK(fe.normalized == doctest::Approx(2.0));
    CHECK(fe.limit == 2.0);
    CHECK_THROWS_AS(filling_bound(1, 1, 1, 0), InvalidArgument);
}

TEST_CASE("seifert sequence") {
    const SeifertSequence s = seifert_bound(0, -2, {1, 10, 100, 1000});
    REQUIRE(s.points.size() == 4);
    // (e + 6 d chi_- + 6) / d^2 with e = 0, chi_- = 2
    CHECK(s.points[0].value == doctest::Approx(18.0));
    CHECK(s.points[1].value == doctest::Approx(1.26));
    CHECK(s.points[2].value == doctest::Approx(0.1206));
    CHECK(s.points[3].value == doctest::Approx(0.012006));
    CHECK(s.monotone);
    for (const auto& p : s.points) {
        const double d = static_cast<double>(p.d);
        CHECK(p.value == doctest::Approx((12.0 * d + 6.0) / (d * d)));
    }
}

TEST_CASE("seifert sequence with positive chi drops chi_-") {
    const SeifertSequence s = seifert_bound(4, 3, {1, 2});
    CHECK(s.points[0].value == doctest::Approx(10.0));
    CHECK(s.points[1].value == doctest::Approx(2.5));
    CHECK_THROWS_AS(seifert_bound(-1, 0, {1}), InvalidArgument);
    CHECK_THROWS_AS(seifert_bound(0, 0, {0}), InvalidArgument);
}

TEST_CASE("dashboard on the sphere") {
    const Dashboard d = inequality_dashboard(fixture("sphere"), "sphere");
    CHECK(d.t == 2);
    CHECK(d.euler == 2);
    CHECK(d.closed);
    CHECK(d.orientable);
    CHECK(d.cycle_verified);
    CHECK(d.l1_norm == "2");
    CHECK(d.all_hold());
    CHECK(has_annotation(d, "sigma(S^2) = 2"));
}

TEST_CASE("dashboard on the torus and klein bottle") {
    const Dashboard d = inequality_dashboard(fixture("torus"), "torus");
    const DashboardCheck* chi = find_check(d, "|chi| <= 2^(n+1) t");
    REQUIRE(chi != nullptr);
    CHECK(chi->lhs == "0");
    CHECK(chi->rhs == std::to_string(8 * d.t));
    CHECK(d.all_hold());

    const Dashboard k = inequality_dashboard(fixture("klein-bottle"), "klein-bottle");
    CHECK_FALSE(k.orientable);
    CHECK(k.l1_norm.empty());
    CHECK(find_check(k, "L1(z) <= t") == nullptr);
    CHECK(k.all_hold());
}

TEST_CASE("dashboard on the figure-eight") {
    const Dashboard d = inequality_dashboard(fixture("figure-eight"), "figure-eight");
    CHECK(d.t == 2);
    CHECK(d.dim == 3);
    CHECK(has_annotation(d, "c(N) = 2"));
    CHECK(has_annotation(d, "vol(N) = 2 v_3"));
    CHECK(has_annotation(d, "||N||"));
    CHECK(d.all_hold());
}

TEST_CASE("dashboard on random torus covers") {
    Rng rng(derive_seed(kDefaultSeed, {31}));
    const Triangulation base = fixture("torus");
    const Dashboard db = inequality_dashboard(base);
    for (int trial = 0; trial < 20; ++trial) {
        const CoverSpec spec = random_admissible_torus_spec(rng);
        const Cover c = build_cover(base, spec);
        const Dashboard dc = inequality_dashboard(c.triangulation);
        CHECK(dc.t == spec.degree * db.t);
        CHECK(dc.t / spec.degree == db.t);
        CHECK(dc.euler == 0);
        CHECK(dc.all_hold());
    }
}
