#include "hypstab/constants.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include <boost/multiprecision/cpp_int.hpp>

#include "hypstab/parallel.hpp"

namespace hypstab {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

// A seeded deformation of the regular ideal simplex: ideal vertices slide along
// the sphere, and vertices with positive radial rate move inward and become finite.
struct Deformation {
    std::vector<Eigen::VectorXd> tangent;
    std::vector<double> radial;
};

Deformation random_deformation(int n, Rng& rng, const GeodesicSimplex& reg) {
    std::normal_distribution<double> gauss(0.0, 1.0);
    std::uniform_real_distribution<double> unif(0.0, 1.0);
    Deformation d;
    double norm2 = 0.0;
    for (int i = 0; i <= n; ++i) {
        const Eigen::VectorXd u = to_klein(reg.vertex(i));
        Eigen::VectorXd v(n);
        for (int j = 0; j < n; ++j) v[j] = gauss(rng);
        v -= v.dot(u) * u;
        norm2 += v.squaredNorm();
        d.tangent.push_back(v);
    }
    for (auto& v : d.tangent) v /= std::sqrt(norm2);
    const bool radial = unif(rng) < 0.5;
    for (int i = 0; i <= n; ++i) d.radial.push_back(radial && unif(rng) < 0.5 ? 0.5 * unif(rng) : 0.0);
    return d;
}

Deformation jitter(const Deformation& base, double sigma, Rng& rng, const GeodesicSimplex& reg) {
    const int n = reg.ambient_dim();
    const Deformation noise = random_deformation(n, rng, reg);
    std::uniform_real_distribution<double> unif(-1.0, 1.0);
    Deformation d;
    double norm2 = 0.0;
    for (int i = 0; i <= n; ++i) {
        const Eigen::VectorXd u = to_klein(reg.vertex(i));
        Eigen::VectorXd v = base.tangent[static_cast<std::size_t>(i)] + sigma * noise.tangent[static_cast<std::size_t>(i)];
        v -= v.dot(u) * u;
        norm2 += v.squaredNorm();
        d.tangent.push_back(v);
        const double r = base.radial[static_cast<std::size_t>(i)];
        d.radial.push_back(r > 0.0 ? std::clamp(r + 0.25 * sigma * unif(rng), 0.0, 1.0) : 0.0);
    }
    for (auto& v : d.tangent) v /= std::sqrt(norm2);
    return d;
}

struct Shape {
    std::vector<Eigen::VectorXd> klein;
    std::vector<bool> ideal;
};

Shape deformed(const GeodesicSimplex& reg, const Deformation& d, double t) {
    const int n = reg.ambient_dim();
    Shape s;
    for (int i = 0; i <= n; ++i) {
        Eigen::VectorXd u = (to_klein(reg.vertex(i)) + t * d.tangent[static_cast<std::size_t>(i)]).normalized();
        const double rate = d.radial[static_cast<std::size_t>(i)];
        const bool ideal = rate == 0.0 || t == 0.0;
        if (!ideal) u *= std::max(0.05, 1.0 - t * rate);
        s.klein.push_back(u);
        s.ideal.push_back(ideal);
    }
    return s;
}

double violation_of(const Shape& s, ViolationKind kind, double a, double delta) {
    try {
        const GeodesicSimplex K = GeodesicSimplex::from_klein(s.klein, s.ideal);
        if (is_degenerate(K)) return kInfinity;
        return kind == ViolationKind::Angle ? angle_violation(K, a) : clearance_violation(K, delta);
    } catch (const Error&) {
        return kInfinity;
    }
}

double volume_of(const Shape& s, int order) {
    try {
        const GeodesicSimplex K = GeodesicSimplex::from_klein(s.klein, s.ideal);
        if (is_degenerate(K)) return 0.0;
        return simplex_volume_cubature(K, order).value;
    } catch (const Error&) {
        return 0.0;
    }
}

int search_order(int n, int requested) {
    if (requested > 0) return requested;
    return n <= 4 ? 10 : 6;
}

struct PathHit {
    bool found = false;
    double t = 0.0;
    Shape shape;
    double violation = 0.0;
};

// First parameter along the deformation path where the violation becomes >= 0,
// located by a geometric scan and then bisection; the stored point violates.
PathHit first_violation(const GeodesicSimplex& reg, const Deformation& d, ViolationKind kind, double a,
                        double delta) {
    constexpr double kMaxT = 2.0;
    double prev = 0.0;
    for (double t = 0.004; t <= kMaxT; t *= 1.3) {
        if (violation_of(deformed(reg, d, t), kind, a, delta) < 0.0) {
            prev = t;
            continue;
        }
        double lo = prev, hi = t;
        for (int it = 0; it < 24; ++it) {
            const double mid = 0.5 * (lo + hi);
            if (violation_of(deformed(reg, d, mid), kind, a, delta) < 0.0) lo = mid;
            else hi = mid;
        }
        PathHit hit;
        hit.found = true;
        hit.t = hi;
        hit.shape = deformed(reg, d, hi);
        hit.violation = violation_of(hit.shape, kind, a, delta);
        return hit;
    }
    return {};
}

std::optional<Counterexample> search_restart(int n, int restart, ViolationKind kind, double a, double delta,
                                             int climb_steps, int order, std::uint64_t seed) {
    const GeodesicSimplex reg = regular_ideal_simplex(n, n);
    Rng rng(derive_seed(seed, {static_cast<std::uint64_t>(n), static_cast<std::uint64_t>(restart),
                               static_cast<std::uint64_t>(kind)}));
    Deformation dir = random_deformation(n, rng, reg);
    PathHit best = first_violation(reg, dir, kind, a, delta);
    double best_volume = best.found ? volume_of(best.shape, order) : -1.0;

    // Hill-climb on the direction to push the violating simplex towards larger volume.
    double sigma = 0.5;
    for (int step = 0; step < climb_steps; ++step) {
        const Deformation cand = jitter(dir, sigma, rng, reg);
        const PathHit hit = first_violation(reg, cand, kind, a, delta);
        const double vol = hit.found ? volume_of(hit.shape, order) : -1.0;
        if (hit.found && vol > best_volume) {
            dir = cand;
            best = hit;
            best_volume = vol;
        } else {
            sigma *= 0.7;
        }
    }
    if (!best.found) return std::nullopt;
    Counterexample c;
    c.restart = restart;
    c.kind = kind;
    c.t = best.t;
    c.volume = best_volume;
    c.violation = best.violation;
    c.klein = best.shape.klein;
    c.ideal = best.shape.ideal;
    return c;
}

std::vector<Counterexample> build_pool(int n, int restarts, double a, double delta, int climb_steps, int order,
                                       std::uint64_t seed) {
    std::vector<std::optional<Counterexample>> slots(static_cast<std::size_t>(2 * restarts));
    parallel_for(slots.size(), [&](std::size_t job) {
        const int restart = static_cast<int>(job / 2);
        const ViolationKind kind = job % 2 == 0 ? ViolationKind::Angle : ViolationKind::Clearance;
        slots[job] = search_restart(n, restart, kind, a, delta, climb_steps, order, seed);
    });
    std::vector<Counterexample> pool;
    for (auto& s : slots)
        if (s) pool.push_back(std::move(*s));
    return pool;
}

bool admissible(const std::vector<Counterexample>& pool, ViolationKind kind, double eps, double v_ref) {
    for (const auto& c : pool)
        if (c.kind == kind && c.volume >= (1.0 - eps) * v_ref) return false;
    return true;
}

double bisect_eps(const std::vector<Counterexample>& pool, ViolationKind kind, double v_ref, int depth,
                  std::vector<BisectionStep>& steps) {
    double lo = 0.0, hi = 1.0;
    for (int i = 0; i < depth; ++i) {
        const double mid = 0.5 * (lo + hi);
        const bool ok = admissible(pool, kind, mid, v_ref);
        steps.push_back({lo, hi, mid, ok});
        if (ok) lo = mid;
        else hi = mid;
    }
    return lo;
}

using Rational = boost::multiprecision::cpp_rational;

double to_double(const Rational& r) { return r.convert_to<double>(); }

}  // namespace

std::string to_string(Certification c) {
    switch (c) {
        case Certification::Exact: return "exact";
        case Certification::Series: return "series";
        case Certification::MonteCarlo: return "monte-carlo";
        case Certification::EmpiricalSearch: return "empirical-search";
        case Certification::Formula: return "formula";
    }
    return "unknown";
}

Certification certification_of(VolumeMethod m) {
    switch (m) {
        case VolumeMethod::MonteCarlo: return Certification::MonteCarlo;
        case VolumeMethod::ClosedForm: return Certification::Exact;
        case VolumeMethod::Series:
        case VolumeMethod::Cubature: return Certification::Series;
    }
    return Certification::Formula;
}

std::string to_string(ViolationKind k) { return k == ViolationKind::Angle ? "angle" : "clearance"; }

double alpha_n(int n) {
    if (n < 3) throw InvalidArgument("alpha_n needs n >= 3");
    // acos(1/2) = pi/3; the library acos is one ulp off there.
    if (n == 3) return std::numbers::pi / 3.0;
    return std::acos(1.0 / (n - 1));
}

int k_n(int n) {
    const double ratio = kTwoPi / alpha_n(n);
    const double nearest = std::round(ratio);
    if (std::abs(ratio - nearest) <= 1e-14 * ratio) return static_cast<int>(nearest);
    return static_cast<int>(std::floor(ratio));
}

std::vector<AlphaRow> alpha_k_table(int n_min, int n_max) {
    if (n_min < 3 || n_max < n_min) throw InvalidArgument("alpha_k_table needs 3 <= n_min <= n_max");
    std::vector<AlphaRow> rows;
    for (int n = n_min; n <= n_max; ++n) {
        AlphaRow r;
        r.n = n;
        r.alpha = alpha_n(n);
        r.ratio = kTwoPi / r.alpha;
        r.k = k_n(n);
        r.integer_ratio = std::abs(r.ratio - std::round(r.ratio)) <= 1e-14 * r.ratio;
        constexpr double kSlack = 1e-14;
        if (r.integer_ratio) {
            r.bracket_ok = n == 3;
        } else {
            r.bracket_ok = r.k * r.alpha + kSlack < kTwoPi && kTwoPi < (r.k + 1) * r.alpha - kSlack;
            if (!r.bracket_ok) throw ConstraintViolation("k_n bracket fails at n = " + std::to_string(n));
        }
        rows.push_back(r);
    }
    return rows;
}

double a_n(int n) {
    if (n < 4) throw InvalidArgument("a_n needs n >= 4");
    const double alpha = alpha_n(n);
    const int k = k_n(n);
    return 0.5 * std::min(alpha * (k + 1) / kTwoPi - 1.0, 1.0 - alpha * k / kTwoPi);
}

AngleBracket angle_bracket(int n, double a) {
    const int k = k_n(n);
    return {kTwoPi / (k + 1) * (1.0 + a), kTwoPi / k * (1.0 - a)};
}

double delta_n(int n) {
    if (n < 3) throw InvalidArgument("delta_n needs n >= 3");
    return min_face_clearance(regular_ideal_simplex(n, n)) / 3.0;
}

double angle_violation(const GeodesicSimplex& K, double a) {
    const int n = K.ambient_dim();
    const AngleBracket b = angle_bracket(n, a);
    const auto duals = facet_duals(K);
    double worst = -kInfinity;
    for (int i = 0; i <= n; ++i) {
        for (int j = i + 1; j <= n; ++j) {
            const double c = -mink(duals[static_cast<std::size_t>(i)].q, duals[static_cast<std::size_t>(j)].q);
            const double alpha = std::acos(std::clamp(c, -1.0, 1.0));
            worst = std::max({worst, b.lower - alpha, alpha - b.upper});
        }
    }
    return worst;
}

double clearance_violation(const GeodesicSimplex& K, double delta) {
    return 2.0 * delta - min_face_clearance(K);
}

EpsResult estimate_a_eps(int n, const SearchOptions& options) {
    if (n < 4) throw InvalidArgument("estimate_a_eps needs n >= 4");
    if (options.restarts < 1 || options.bisection_depth < 1)
        throw InvalidArgument("search needs at least one restart and one bisection step");
    EpsResult out;
    out.a = a_n(n);
    AuditTrail& audit = out.audit;
    audit.n = n;
    audit.a = out.a;
    audit.delta = delta_n(n);
    audit.cubature_order = search_order(n, options.cubature_order);
    const GeodesicSimplex reg = regular_ideal_simplex(n, n);
    audit.v_reference = simplex_volume_cubature(reg, audit.cubature_order).value;
    audit.regular_angle_violation = angle_violation(reg, audit.a);
    audit.regular_clearance_violation = clearance_violation(reg, audit.delta);
    if (!audit.regular_passes())
        throw SearchExhausted("the regular ideal simplex violates a bracket at eps = 0");

    audit.pool = build_pool(n, options.restarts, audit.a, audit.delta, options.climb_steps, audit.cubature_order,
                            options.seed);
    audit.eps_angle = bisect_eps(audit.pool, ViolationKind::Angle, audit.v_reference, options.bisection_depth,
                                 audit.angle_steps);
    audit.eps_clearance = bisect_eps(audit.pool, ViolationKind::Clearance, audit.v_reference,
                                     options.bisection_depth, audit.clearance_steps);
    out.eps = std::min(audit.eps_angle, audit.eps_clearance);
    if (!(out.eps > 0.0))
        throw SearchExhausted("no admissible eps within " + std::to_string(options.bisection_depth) +
                              " bisection steps");

    audit.audit_pool = build_pool(n, options.audit_restarts, audit.a, audit.delta, options.climb_steps,
                                  audit.cubature_order, derive_seed(options.seed, {0x61756469ULL}));
    audit.monotone_ok = admissible(audit.audit_pool, ViolationKind::Angle, 0.5 * out.eps, audit.v_reference) &&
                        admissible(audit.audit_pool, ViolationKind::Clearance, 0.5 * out.eps, audit.v_reference);
    return out;
}

bool replay_audit(const AuditTrail& audit) {
    for (const auto* pool : {&audit.pool, &audit.audit_pool}) {
        for (const auto& c : *pool) {
            const Shape s{c.klein, c.ideal};
            const double viol = violation_of(s, c.kind, audit.a, audit.delta);
            if (!(viol >= 0.0)) return false;
            if (volume_of(s, audit.cubature_order) != c.volume) return false;
        }
    }
    auto replay_steps = [&](ViolationKind kind, const std::vector<BisectionStep>& steps, double eps) {
        std::vector<BisectionStep> again;
        const double got = bisect_eps(audit.pool, kind, audit.v_reference, static_cast<int>(steps.size()), again);
        if (got != eps || again.size() != steps.size()) return false;
        for (std::size_t i = 0; i < steps.size(); ++i)
            if (again[i].accepted != steps[i].accepted || again[i].mid != steps[i].mid) return false;
        return true;
    };
    return replay_steps(ViolationKind::Angle, audit.angle_steps, audit.eps_angle) &&
           replay_steps(ViolationKind::Clearance, audit.clearance_steps, audit.eps_clearance);
}

double compute_Cn(double eps, double eta, double a, double v_n) {
    if (!(eps > 0.0) || !(eta > 0.0) || !(a > 0.0) || !(v_n > 0.0))
        throw InvalidArgument("compute_Cn needs positive eps, eta, a and v_n");
    if (!(eta < 3.0 * v_n)) throw InvalidArgument("compute_Cn needs eta < 3 v_n");
    return std::max({1.0 - eps / 12.0, 1.0 - eta / (3.0 * v_n), 1.0 - a * eta / (2.0 * v_n)});
}

ConstantsRow constants_row(int n, long long budget, const SearchOptions& options) {
    if (n < 4 || n > 8) throw InvalidArgument("constants rows cover 4 <= n <= 8");
    ConstantsRow row;
    row.n = n;
    row.v = ideal_regular_volume(n, budget, options.seed);
    row.alpha = alpha_n(n);
    row.k = k_n(n);
    row.delta = delta_n(n);
    row.eta = ball_volume(n, row.delta);
    row.a = a_n(n);
    row.certified = {{"v_n", certification_of(row.v.method)},
                     {"alpha_n", Certification::Exact},
                     {"k_n", Certification::Exact},
                     {"delta_n", Certification::Exact},
                     {"eta_n", Certification::Series},
                     {"a_n", Certification::Formula},
                     {"eps_n", Certification::EmpiricalSearch},
                     {"C_n", Certification::EmpiricalSearch}};
    try {
        EpsResult r = estimate_a_eps(n, options);
        row.eps = r.eps;
        row.audit = std::move(r.audit);
        row.C = compute_Cn(row.eps, row.eta, row.a, row.v.value);
    } catch (const Error& e) {
        row.error = e.what();
    }
    return row;
}

bool BudgetVerdicts::all_hold() const {
    return std::all_of(lemmas.begin(), lemmas.end(), [](const LemmaVerdict& v) { return !v.applicable || v.holds; });
}

BudgetVerdicts budget_check(const BudgetReport& r, const ConstantsRow& row) {
    if (r.t < 0 || r.t_b < 0 || r.t_s < 0 || r.e_f < 0 || r.N < 0)
        throw InvalidArgument("budget counts must be nonnegative");
    if (r.t != r.t_b + r.t_s) throw InvalidArgument("inconsistent counts: t != t_b + t_s");
    if (row.k < 1) throw InvalidArgument("constants row has no k_n");

    const Rational t(r.t), ts(r.t_s), tb(r.t_b), ef(r.e_f), N(r.N);
    const Rational v(row.v.value), eps(row.eps), eta(row.eta), a(row.a), kp1(row.k + 1);
    const Rational one(1);

    BudgetVerdicts out;
    const Rational m1 = ef * eta;
    const Rational m2 = tb * v - eta * (one + a) * N / kp1;
    const Rational m3 = ts * v;
    const Rational mass_budget = t * v + eta * (ef - (one + a) * N / kp1);
    out.m1 = to_double(m1);
    out.m2 = to_double(m2);
    out.m3 = to_double(m3);
    out.mass_budget = to_double(mass_budget);

    const bool few_small = 12 * r.t_s <= r.t;
    const Rational c1 = one - eps / 12, c2 = one - eta / (3 * v), c3 = one - a * eta / (2 * v);
    const Rational cn = std::max({c1, c2, c3});

    {
        LemmaVerdict l{"many-small"};
        l.applicable = 12 * r.t_s >= r.t;
        const Rational lhs = v * (t - eps * ts), rhs = c1 * t * v;
        l.holds = lhs <= rhs;
        l.exact_equality = lhs == rhs;
        l.lhs = to_double(lhs);
        l.rhs = to_double(rhs);
        out.lemmas.push_back(l);
    }
    {
        LemmaVerdict l{"face-count"};
        l.applicable = few_small && row.n >= 4;
        l.holds = N >= 5 * t;
        l.exact_equality = N == 5 * t;
        l.lhs = static_cast<double>(r.N);
        l.rhs = 5.0 * static_cast<double>(r.t);
        out.lemmas.push_back(l);
    }
    {
        LemmaVerdict l{"mass-budget"};
        l.applicable = true;
        const Rational sum = m1 + m2 + m3;
        l.holds = sum <= mass_budget;
        l.exact_equality = sum == mass_budget;
        l.lhs = to_double(sum);
        l.rhs = out.mass_budget;
        out.lemmas.push_back(l);
    }
    {
        LemmaVerdict l{"few-full-faces"};
        l.applicable = few_small && 2 * r.e_f <= r.t;
        const Rational mid = t * v + eta * (ef - Rational(5) * t / 6);
        const Rational rhs = t * v * c2;
        l.holds = mass_budget <= mid && mid <= rhs;
        l.exact_equality = mid == rhs;
        l.lhs = to_double(mid);
        l.rhs = to_double(rhs);
        out.lemmas.push_back(l);
    }
    {
        LemmaVerdict l{"many-full-faces"};
        l.applicable = few_small && 2 * r.e_f >= r.t;
        const Rational mid = t * v - a * eta * ef;
        const Rational rhs = t * v * c3;
        l.holds = mass_budget <= mid && mid <= rhs;
        l.exact_equality = mid == rhs && mass_budget == mid;
        l.lhs = to_double(mid);
        l.rhs = to_double(rhs);
        out.lemmas.push_back(l);
    }
    {
        LemmaVerdict l{"C_n"};
        l.applicable = true;
        Rational bound;
        if (!few_small) bound = c1 * t * v;
        else if (2 * r.e_f <= r.t) bound = t * v * c2;
        else bound = t * v * c3;
        const Rational implied = t * v * cn;
        l.holds = bound <= implied;
        l.exact_equality = bound == implied;
        l.lhs = to_double(bound);
        l.rhs = to_double(implied);
        out.implied_bound = l.rhs;
        out.lemmas.push_back(l);
    }
    return out;
}

}  // namespace hypstab
