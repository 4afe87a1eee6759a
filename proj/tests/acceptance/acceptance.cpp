// Acceptance runner: one PASS/FAIL line per criterion.
// Usage: acceptance [--criterion K]...

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <functional>
#include <numbers>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "hypstab/bounds.hpp"
#include "hypstab/chain.hpp"
#include "hypstab/constants.hpp"
#include "hypstab/cover.hpp"
#include "hypstab/errors.hpp"
#include "hypstab/fixtures.hpp"
#include "hypstab/lattice.hpp"
#include "hypstab/simplex.hpp"
#include "hypstab/volume.hpp"

using namespace hypstab;

namespace {

struct Outcome {
    bool ok = true;
    std::ostringstream detail;

    void require(bool cond, const std::string& what) {
        if (!cond) {
            if (!ok) detail << "; ";
            else detail.str("");
            ok = false;
            detail << "failed: " << what;
        }
    }
    void note(const std::string& s) {
        if (ok) detail << (detail.str().empty() ? "" : ", ") << s;
    }
};

std::string num(double x, int digits = 6) {
    std::ostringstream os;
    os.precision(digits);
    os << x;
    return os.str();
}

GeodesicSimplex random_nondegenerate(int n, Rng& rng) {
    for (;;) {
        GeodesicSimplex K = random_simplex(n, rng);
        if (!is_degenerate(K, 1e-6)) return K;
    }
}

// 1. dihedral table
void dihedral_table(Outcome& o) {
    for (int n = 3; n <= 8; ++n) {
        const double oracle = std::acos(1.0 / (n - 1));
        o.require(std::abs(alpha_n(n) - oracle) < 1e-10, "alpha_" + std::to_string(n));
        const double measured = dihedral_angle(regular_ideal_simplex(n, n), 0, 1);
        o.require(std::abs(measured - oracle) < 1e-9, "measured dihedral angle n=" + std::to_string(n));
        const int k = k_n(n);
        o.require(k * alpha_n(n) < 2 * std::numbers::pi || (n == 3 && k == 6), "lower bracket n=" + std::to_string(n));
        o.require(2 * std::numbers::pi < (k + 1) * alpha_n(n), "upper bracket n=" + std::to_string(n));
        o.require(k == (n == 3 ? 6 : n == 4 ? 5 : 4), "k_" + std::to_string(n));
    }
    o.require(2 * std::numbers::pi / alpha_n(3) == 6.0, "2 pi / alpha_3 = 6");
    for (int n = 4; n <= 8; ++n) {
        const double q = 2 * std::numbers::pi / alpha_n(n);
        o.require(std::abs(q - std::round(q)) > 1e-6, "2 pi / alpha_n non-integral n=" + std::to_string(n));
    }
    o.note("k = 6,5,4,4,4,4");
}

// 2. volumes
void volumes(Outcome& o) {
    const VolumeEstimate v2 = ideal_regular_volume(2);
    o.require(v2.value == std::numbers::pi, "v_2 = pi");
    const double oracle = 3.0 * lobachevsky(std::numbers::pi / 3.0);
    const VolumeEstimate mc = simplex_volume(regular_ideal_simplex(3, 3), kDefaultBudget, kDefaultSeed);
    o.require(mc.method == VolumeMethod::MonteCarlo, "v_3 estimate is Monte Carlo");
    o.require(mc.std_error > 0.0 && mc.std_error <= 1e-3, "sigma <= 1e-3");
    const double z = std::abs(mc.value - oracle) / mc.std_error;
    o.require(z <= 3.0, "v_3 within 3 sigma");
    const MaximalityReport probe = maximality_probe(3, 1000, kDefaultSeed);
    o.require(probe.passed(), "maximality probe");
    o.note("v_3 = " + num(mc.value) + " +- " + num(mc.std_error, 2) + " (" + num(z, 2) + " sigma), probe max " +
           num(probe.max_volume) + " over " + std::to_string(probe.accepted) + " simplices");
}

// 3. incenters
void incenters(Outcome& o) {
    Rng rng(derive_seed(kDefaultSeed, {3}));
    double worst_tangency = 0.0, worst_shift = 0.0;
    for (int n : {3, 4, 5}) {
        for (int trial = 0; trial < 200; ++trial) {
            const GeodesicSimplex K = random_nondegenerate(n, rng);
            const IncenterResult r = incenter_inradius(K);
            for (const auto& d : facet_duals(K))
                worst_tangency = std::max(worst_tangency, std::abs(std::sinh(r.inradius) + mink(r.incenter.rep(), d.q)));
            o.require(barycentric_coordinates(K, r.incenter).minCoeff() > 0.0, "incenter interior");
            const Isometry g = random_isometry(n, derive_seed(kDefaultSeed, {3, static_cast<std::uint64_t>(n),
                                                                             static_cast<std::uint64_t>(trial)}),
                                               0.5);
            const IncenterResult moved = incenter_inradius(K.transformed(g));
            worst_shift = std::max(worst_shift, distance(moved.incenter, g.apply(r.incenter)));
            worst_shift = std::max(worst_shift, std::abs(moved.inradius - r.inradius));
        }
    }
    o.require(worst_tangency < 1e-9, "tangency residual " + num(worst_tangency, 3));
    o.require(worst_shift < 1e-8, "isometry invariance " + num(worst_shift, 3));
    o.note("600 simplices, max tangency residual " + num(worst_tangency, 3) + ", max isometry drift " +
           num(worst_shift, 3));
}

// 4. constants pipeline
void constants_pipeline(Outcome& o) {
    for (int n : {4, 5}) {
        const std::string tag = " n=" + std::to_string(n);
        const auto start = std::chrono::steady_clock::now();
        const ConstantsRow row = constants_row(n);
        const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
        o.require(row.error.empty(), "row completes" + tag + " (" + row.error + ")");
        if (!row.error.empty()) continue;
        o.require(row.delta > 0.0, "delta > 0" + tag);
        o.require(row.eta == ball_volume(n, row.delta), "eta = ball_volume(n, delta)" + tag);
        o.require(row.eps > 0.0, "eps > 0" + tag);
        o.require(row.a > 0.0, "a > 0" + tag);
        const double c = std::max(
            {1.0 - row.eps / 12.0, 1.0 - row.eta / (3.0 * row.v.value), 1.0 - row.a * row.eta / (2.0 * row.v.value)});
        o.require(row.C == c, "C_n formula" + tag);
        o.require(row.C < 1.0, "C_n < 1" + tag);
        o.require(row.audit.has_value() && row.audit->regular_passes(), "regular simplex passes at eps = 0" + tag);
        o.require(row.audit.has_value() && replay_audit(*row.audit), "audit replays" + tag);
        o.require(secs < 1800.0, "runtime < 30 min" + tag);
        o.note("C_" + std::to_string(n) + " = 1 - " + num(1.0 - row.C, 4) + " (eps " + num(row.eps, 4) + ", " +
               num(secs, 3) + " s)");
    }
}

// 5. budget identities
void budget(Outcome& o) {
    const int n = 4;
    ConstantsRow row;
    row.n = n;
    row.v = ideal_regular_volume(n, 20000, kDefaultSeed);
    row.k = k_n(n);
    row.delta = delta_n(n);
    row.eta = ball_volume(n, row.delta);
    row.a = a_n(n);
    row.eps = 1.0 / 64.0;
    const long long t = 1200;
    auto verdict = [](const BudgetVerdicts& v, const std::string& name) -> std::optional<LemmaVerdict> {
        for (const auto& l : v.lemmas)
            if (l.name == name) return l;
        return std::nullopt;
    };
    const auto s1 = verdict(budget_check({t, t - t / 12, t / 12, t / 2, 5 * t}, row), "many-small");
    o.require(s1 && s1->applicable && s1->exact_equality, "small-simplex bound exact at t_s = t/12");
    const auto s2 = verdict(budget_check({t, t, 0, t / 2, 5 * t}, row), "few-full-faces");
    o.require(s2 && s2->applicable && s2->holds && s2->exact_equality, "full-face bound exact at e_f = t/2, N = 5t");
    const auto s3 = verdict(budget_check({t, t, 0, t / 2, (row.k + 1) * (t / 2)}, row), "many-full-faces");
    o.require(s3 && s3->applicable && s3->holds && s3->exact_equality, "big-simplex bound exact at N = (k+1) e_f");
    o.note("three identities exact in rational arithmetic");
}

// 6. fundamental cycles
void fundamental_cycles(Outcome& o) {
    int checked = 0;
    auto check = [&](const Triangulation& T, const std::string& what) {
        const Chain z = fundamental_cycle(T);
        o.require(verify_cycle(T, z), "boundary of z vanishes on " + what);
        o.require(z.l1_norm() <= Rational(T.simplex_count()), "L1(z) <= t on " + what);
        ++checked;
    };
    for (const std::string name : {"sphere", "torus", "s3", "figure-eight"}) {
        const Triangulation T = fixture(name);
        check(T, name);
        for (int d = 2; d <= 4; ++d)
            for (const auto& spec : cyclic_cover_specs(T, d, 8))
                check(build_cover(T, spec).triangulation, name + " degree " + std::to_string(d) + " cover");
    }
    const Triangulation torus = fixture("torus");
    for (long long x = 2; x <= 3; ++x)
        check(build_cover(torus, torus_subgroup_spec(x_characteristic(x))).triangulation, "characteristic cover");
    Rng rng(derive_seed(kDefaultSeed, {6}));
    for (int i = 0; i < 20; ++i) check(build_cover(torus, random_admissible_torus_spec(rng)).triangulation, "torus cover");
    o.note(std::to_string(checked) + " complexes");
}

// 7. coverings
void coverings(Outcome& o) {
    const Triangulation torus = fixture("torus");
    const CellCounts base = cell_counts(torus);
    Rng rng(derive_seed(kDefaultSeed, {7}));
    for (int i = 0; i < 20; ++i) {
        const CoverSpec spec = random_admissible_torus_spec(rng);
        const Cover c = build_cover(torus, spec);
        const CellCounts up = cell_counts(c.triangulation);
        o.require(up.euler == spec.degree * base.euler, "chi multiplies");
        for (std::size_t k = 0; k < base.f.size(); ++k) o.require(up.f[k] == spec.degree * base.f[k], "f_i multiplies");
        o.require(verify_covering(torus, c.triangulation, c.projection), "covering map");
    }
    for (long long x = 2; x <= 3; ++x) {
        const Cover c = build_cover(torus, torus_subgroup_spec(x_characteristic(x)));
        o.require(c.degree == x * x, "characteristic cover has degree x^2");
    }
    CoverSpec branched;
    branched.degree = 2;
    branched.perms[0] = {1, 0};
    bool rejected = false;
    try {
        build_cover(fixture("sphere"), branched);
    } catch (const BranchedCover& e) {
        rejected = !e.cycle().empty();
    }
    o.require(rejected, "branched spec rejected with a named cycle");
    for (long long m = 1; m <= 12; ++m) {
        const auto subs = enumerate_subgroups(m);
        o.require(static_cast<long long>(subs.size()) == sigma1(m), "subgroup count = sigma1");
        for (const auto& S : subs) o.require(contains(S, x_characteristic(m)), "contains x(Z x Z)");
    }
    o.note("20 random covers, degrees 4 and 9, index <= 12 exhaustive");
}

// 8. figure-eight
void figure_eight(Outcome& o) {
    const Triangulation T = fixture("figure-eight");
    const CellCounts c = cell_counts(T);
    o.require(c.f == std::vector<long long>{1, 2, 4, 2}, "f-vector (1,2,4,2)");
    const LinkReport l = links(T);
    o.require(l.links.size() == 1 && l.links[0].euler == 0, "vertex link chi = 0");
    bool six = l.valences.size() == 2;
    for (const auto& e : l.valences) six = six && e.valence == 6;
    o.require(six, "both edge valences 6");
    o.require(2 * std::numbers::pi / alpha_n(3) == 6.0, "6 = 2 pi / alpha_3");
    const Dashboard d = inequality_dashboard(T, "figure-eight");
    auto has = [&](const std::string& s) {
        for (const auto& a : d.annotations)
            if (a.find(s) != std::string::npos) return true;
        return false;
    };
    o.require(has("vol(N) = 2 v_3"), "annotates vol = 2 v_3");
    o.require(has("||N|| = vol(N) / v_3 = 2"), "annotates ||N|| = 2");
    o.note("f = (1,2,4,2), link chi 0, valences 6 6");
}

// 9. bound calculators
void bound_calculators(Outcome& o) {
    const SeifertSequence s = seifert_bound(0, -2, {1, 10, 100, 1000});
    o.require(s.monotone, "seifert sequence non-increasing");
    o.require(s.points.back().value < s.points.front().value / 1000.0, "seifert sequence tends to 0");
    o.require(s.points[2].value < 0.02, "seifert bound < 0.02 at d = 100 (got " + num(s.points[2].value) + ")");
    const JsjBound j = jsj_cover_bound(5, 3, 2, 1, 1, 1000);
    o.require(std::abs(j.normalized - j.limit) < 0.01, "jsj within 0.01 of v_A at n = 1000");
    o.require(filling_bound(2, 0, 0, 1).limit == 2.0, "filling preset limit 2");
    o.note("seifert d=100 " + num(s.points[2].value) + ", jsj gap " + num(j.normalized - j.limit, 3));
}

struct Criterion {
    int id;
    const char* title;
    double budget_seconds;
    std::function<void(Outcome&)> run;
};

}  // namespace

int main(int argc, char** argv) {
    const std::vector<Criterion> all{
        {1, "dihedral table", 1.0, dihedral_table},
        {2, "volumes", 120.0, volumes},
        {3, "incenter correctness", 60.0, incenters},
        {4, "constants pipeline", 3600.0, constants_pipeline},
        {5, "budget identities", 1.0, budget},
        {6, "fundamental cycles", 10.0, fundamental_cycles},
        {7, "coverings", 30.0, coverings},
        {8, "figure-eight fixture", 5.0, figure_eight},
        {9, "bound calculators", 1.0, bound_calculators},
    };
    std::vector<int> selected;
    for (int i = 1; i < argc; ++i) {
        const std::string arg = argv[i];
        if (arg == "--criterion" && i + 1 < argc) {
            selected.push_back(std::atoi(argv[++i]));
        } else {
            std::fprintf(stderr, "usage: %s [--criterion K]...\n", argv[0]);
            return 2;
        }
    }
    int failures = 0;
    for (const auto& c : all) {
        if (!selected.empty() && std::find(selected.begin(), selected.end(), c.id) == selected.end()) continue;
        Outcome o;
        const auto start = std::chrono::steady_clock::now();
        try {
            c.run(o);
        } catch (const std::exception& e) {
            o.require(false, std::string("exception: ") + e.what());
        }
        const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
        o.require(secs < c.budget_seconds, "runtime " + num(secs, 3) + " s over budget");
        std::printf("%s %d %s: %s [%.2f s]\n", o.ok ? "PASS" : "FAIL", c.id, c.title, o.detail.str().c_str(), secs);
        std::fflush(stdout);
        if (!o.ok) ++failures;
    }
    return failures == 0 ? 0 : 1;
}
