#include "hypstab/volume.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <numeric>

#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <boost/math/special_functions/gamma.hpp>
#include <boost/math/special_functions/zeta.hpp>

#include "hypstab/parallel.hpp"

namespace hypstab {

namespace {

constexpr double kPi = std::numbers::pi;

struct Rule {
    std::vector<double> nodes;    // on [0, 1]
    std::vector<double> weights;  // sum to 1
};

// Gauss-Legendre via Golub-Welsch, mapped to [0, 1].
Rule gauss_legendre(int m) {
    Eigen::MatrixXd T = Eigen::MatrixXd::Zero(m, m);
    for (int k = 1; k < m; ++k) {
        const double b = k / std::sqrt(4.0 * k * k - 1.0);
        T(k, k - 1) = b;
        T(k - 1, k) = b;
    }
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(T);
    Rule r;
    for (int i = 0; i < m; ++i) {
        const double v0 = eig.eigenvectors()(0, i);
        r.nodes.push_back(0.5 * (eig.eigenvalues()[i] + 1.0));
        r.weights.push_back(v0 * v0);
    }
    return r;
}

struct KleinSimplex {
    Eigen::MatrixXd X;        // n x (n+1), columns are vertices
    std::vector<bool> ideal;
};

KleinSimplex klein_data(const GeodesicSimplex& K) {
    if (K.dim() != K.ambient_dim())
        throw InvalidArgument("volume needs a full-dimensional simplex (k = n)");
    if (is_degenerate(K)) throw DegenerateSimplex("cannot integrate over a degenerate simplex");
    const int n = K.ambient_dim();
    KleinSimplex out{Eigen::MatrixXd(n, n + 1), {}};
    for (int i = 0; i <= n; ++i) {
        out.X.col(i) = to_klein(K.vertex(i));
        out.ideal.push_back(K.vertex(i).is_ideal());
    }
    return out;
}

// x^{-(n+1)/2} without a general pow.
inline double density_power(double x, int n) {
    const double r = 1.0 / x;
    double out = (n % 2 == 0) ? std::sqrt(r) : 1.0;
    for (int k = 0; k < (n + 1) / 2; ++k) out *= r;
    return out;
}

double cone_determinant(const Eigen::MatrixXd& X, int apex) {
    const auto n = X.rows();
    Eigen::MatrixXd E(n, n);
    for (Eigen::Index j = 0, c = 0; j <= n; ++j)
        if (j != apex) E.col(c++) = X.col(j) - X.col(apex);
    return std::abs(E.determinant());
}

// Integral of the Klein density over the cone from w0 (column 0) to the face
// spanned by columns 1..n, by product Gauss rules in collapsed coordinates.
double cone_cubature(const Eigen::MatrixXd& W, bool apex_ideal, const Rule& rule) {
    const int n = static_cast<int>(W.rows());
    const int m = static_cast<int>(rule.nodes.size());
    const Eigen::VectorXd w0 = W.col(0);
    const double c = apex_ideal ? 0.0 : 1.0 - w0.squaredNorm();

    Eigen::MatrixXd E(n, n);
    for (int k = 1; k <= n; ++k) E.col(k - 1) = W.col(k) - w0;
    const double jac = std::abs(E.determinant());
    if (jac == 0.0) return 0.0;

    // Radial factors that do not depend on the face point.
    std::vector<double> radial(static_cast<std::size_t>(m));
    for (int q = 0; q < m; ++q) {
        const double u = rule.nodes[static_cast<std::size_t>(q)];
        radial[static_cast<std::size_t>(q)] =
            rule.weights[static_cast<std::size_t>(q)] * (apex_ideal ? 2.0 * std::pow(u, n - 2) : std::pow(u, n - 1));
    }

    const int axes = n - 1;
    // collapse[l][i] = w_i (1 - t_i)^{axes-1-l}
    std::vector<std::vector<double>> collapse(static_cast<std::size_t>(std::max(axes, 1)),
                                              std::vector<double>(static_cast<std::size_t>(m)));
    for (int l = 0; l < axes; ++l)
        for (int i = 0; i < m; ++i)
            collapse[static_cast<std::size_t>(l)][static_cast<std::size_t>(i)] =
                rule.weights[static_cast<std::size_t>(i)] *
                std::pow(1.0 - rule.nodes[static_cast<std::size_t>(i)], axes - 1 - l);

    const Eigen::MatrixXd F = W.rightCols(n);
    std::vector<int> idx(static_cast<std::size_t>(axes), 0);
    Eigen::VectorXd mu(n);
    Eigen::VectorXd d(n);
    double total = 0.0;
    while (true) {
        double weight = 1.0;
        double rest = 1.0;
        for (int l = 0; l < axes; ++l) {
            const auto i = static_cast<std::size_t>(idx[static_cast<std::size_t>(l)]);
            const double t = rule.nodes[i];
            weight *= collapse[static_cast<std::size_t>(l)][i];
            mu[l] = rest * t;
            rest *= 1.0 - t;
        }
        mu[n - 1] = rest;
        d.noalias() = F * mu;
        d -= w0;
        const double a1 = -2.0 * w0.dot(d);
        const double b = d.squaredNorm();
        double inner = 0.0;
        for (int q = 0; q < m; ++q) {
            const double u = rule.nodes[static_cast<std::size_t>(q)];
            // For an ideal apex s = u^2 absorbs the s^{(n-3)/2} singularity.
            const double q_val = apex_ideal ? a1 - u * u * b : c + u * a1 - u * u * b;
            inner += radial[static_cast<std::size_t>(q)] * density_power(q_val, n);
        }
        total += weight * inner;

        int l = axes - 1;
        while (l >= 0 && ++idx[static_cast<std::size_t>(l)] == m) idx[static_cast<std::size_t>(l--)] = 0;
        if (l < 0) break;
    }
    return jac * total;
}

double factorial(int k) {
    double f = 1.0;
    for (int i = 2; i <= k; ++i) f *= i;
    return f;
}

int default_order(int n) {
    switch (n) {
        case 2: return 24;
        case 3: return 20;
        case 4: return 14;
        case 5: return 9;
        default: return 6;
    }
}

GeodesicSimplex perturbed_regular(int n, const std::vector<Eigen::VectorXd>& directions, double scale) {
    const GeodesicSimplex reg = regular_ideal_simplex(n, n);
    std::vector<Eigen::VectorXd> pts;
    for (int i = 0; i <= n; ++i) {
        Eigen::VectorXd u = to_klein(reg.vertex(i)) + scale * directions[static_cast<std::size_t>(i)];
        pts.push_back(u.normalized());
    }
    return GeodesicSimplex::from_klein(pts, std::vector<bool>(static_cast<std::size_t>(n + 1), true));
}

}  // namespace

std::string to_string(VolumeMethod m) {
    switch (m) {
        case VolumeMethod::MonteCarlo: return "monte-carlo";
        case VolumeMethod::ClosedForm: return "exact";
        case VolumeMethod::Series: return "series";
        case VolumeMethod::Cubature: return "cubature";
    }
    return "unknown";
}

double lobachevsky(double theta) {
    // Lambda(theta) = Cl_2(2 theta) / 2 with x = 2 theta reduced to (-pi, pi].
    double x = std::remainder(2.0 * theta, 2.0 * kPi);
    if (x == 0.0) return 0.0;
    const double ratio2 = (x / (2.0 * kPi)) * (x / (2.0 * kPi));
    double sum = 0.0;
    double power = 1.0;
    for (int k = 1; k <= 60; ++k) {
        power *= ratio2;
        const double term = boost::math::zeta(2.0 * k) / (k * (2.0 * k + 1.0)) * power;
        sum += term;
        if (term < 1e-18 * std::abs(sum)) break;
    }
    const double cl2 = x - x * std::log(std::abs(x)) + x * sum;
    return 0.5 * cl2;
}

double ball_volume(int n, double r) {
    if (n < 1) throw InvalidArgument("ball_volume needs n >= 1");
    if (r < 0.0) throw InvalidArgument("ball_volume needs r >= 0");
    if (r == 0.0) return 0.0;
    const double sphere = 2.0 * std::pow(kPi, 0.5 * n) / boost::math::tgamma(0.5 * n);
    auto f = [n](double t) { return std::pow(std::sinh(t), n - 1); };
    const double radial = boost::math::quadrature::gauss_kronrod<double, 31>::integrate(f, 0.0, r, 20, 1e-14);
    return sphere * radial;
}

VolumeEstimate simplex_volume(const GeodesicSimplex& K, long long budget, std::uint64_t seed) {
    if (budget < 2 * (K.ambient_dim() + 1)) throw InvalidArgument("sample budget too small");
    const KleinSimplex data = klein_data(K);
    const int n = K.ambient_dim();
    constexpr long long kChunkPairs = 32768;

    const long long pairs_per_region = std::max<long long>(1, budget / (2LL * (n + 1)));
    const long long chunks = (pairs_per_region + kChunkPairs - 1) / kChunkPairs;

    struct Partial {
        double sum = 0.0;
        double sum_sq = 0.0;
        long long count = 0;
    };
    std::vector<Partial> partials(static_cast<std::size_t>((n + 1) * chunks));

    parallel_for(partials.size(), [&](std::size_t job) {
        const int region = static_cast<int>(job / static_cast<std::size_t>(chunks));
        const long long chunk = static_cast<long long>(job % static_cast<std::size_t>(chunks));
        const long long count = std::min(kChunkPairs, pairs_per_region - chunk * kChunkPairs);

        const Eigen::VectorXd v = data.X.col(region);
        const bool ideal = data.ideal[static_cast<std::size_t>(region)];
        const double e = ideal ? 0.5 * (n - 3) : n - 1.0;
        const double c = ideal ? 0.0 : 1.0 - v.squaredNorm();
        const double region_weight = cone_determinant(data.X, region) / factorial(n - 1);
        Eigen::MatrixXd F(n, n);
        for (int j = 0, col = 0; j <= n; ++j)
            if (j != region) F.col(col++) = data.X.col(j);

        Rng rng(derive_seed(seed, {static_cast<std::uint64_t>(region), static_cast<std::uint64_t>(chunk)}));
        std::uniform_real_distribution<double> unif(0.0, 1.0);
        std::exponential_distribution<double> expo(1.0);
        Eigen::VectorXd mu(n);
        Partial p;
        for (long long s = 0; s < count; ++s) {
            for (int j = 0; j < n; ++j) mu[j] = expo(rng);
            mu /= mu.sum();
            const double s_max = 1.0 / (1.0 + mu.maxCoeff());
            const Eigen::VectorXd d = F * mu - v;
            const double a1 = -2.0 * v.dot(d);
            const double b = d.squaredNorm();
            const double scale = region_weight * std::pow(s_max, e + 1.0) / (e + 1.0);
            const double u = unif(rng);
            double pair = 0.0;
            for (double uu : {u, 1.0 - u}) {
                const double sr = s_max * std::pow(uu, 1.0 / (e + 1.0));
                const double g = density_power(ideal ? a1 - sr * b : c + sr * a1 - sr * sr * b, n);
                pair += 0.5 * scale * g;
            }
            p.sum += pair;
            p.sum_sq += pair * pair;
            ++p.count;
        }
        partials[job] = p;
    });

    double value = 0.0;
    double variance = 0.0;
    for (int region = 0; region <= n; ++region) {
        Partial r;
        for (long long ch = 0; ch < chunks; ++ch) {
            const auto& p = partials[static_cast<std::size_t>(region * chunks + ch)];
            r.sum += p.sum;
            r.sum_sq += p.sum_sq;
            r.count += p.count;
        }
        const double mean = r.sum / static_cast<double>(r.count);
        const double var = std::max(0.0, r.sum_sq / static_cast<double>(r.count) - mean * mean);
        value += mean;
        variance += var / static_cast<double>(r.count);
    }
    return {value, std::sqrt(variance), 2 * pairs_per_region * (n + 1), VolumeMethod::MonteCarlo};
}

VolumeEstimate simplex_volume_cubature(const GeodesicSimplex& K, int order) {
    const KleinSimplex data = klein_data(K);
    const int n = K.ambient_dim();
    const int m = order > 0 ? order : default_order(n);
    const Rule rule = gauss_legendre(m);

    std::vector<int> perm(static_cast<std::size_t>(n + 1));
    std::iota(perm.begin(), perm.end(), 0);
    std::vector<std::vector<int>> perms;
    do perms.push_back(perm);
    while (std::next_permutation(perm.begin(), perm.end()));

    std::vector<double> parts(perms.size());
    parallel_for(perms.size(), [&](std::size_t job) {
        const auto& p = perms[job];
        Eigen::MatrixXd W(n, n + 1);
        Eigen::VectorXd acc = Eigen::VectorXd::Zero(n);
        for (int k = 0; k <= n; ++k) {
            acc += data.X.col(p[static_cast<std::size_t>(k)]);
            W.col(k) = acc / (k + 1.0);
        }
        parts[job] = cone_cubature(W, data.ideal[static_cast<std::size_t>(p[0])], rule);
    });
    double total = 0.0;
    for (double v : parts) total += v;
    const long long nodes = static_cast<long long>(perms.size()) * static_cast<long long>(std::pow(m, n));
    return {total, 0.0, nodes, VolumeMethod::Cubature};
}

VolumeEstimate ideal_regular_volume(int n, long long budget, std::uint64_t seed) {
    if (n < 2 || n > 8) throw InvalidArgument("ideal_regular_volume supports 2 <= n <= 8");
    if (n == 2) return {kPi, 0.0, 0, VolumeMethod::ClosedForm};
    if (n == 3) return {3.0 * lobachevsky(kPi / 3.0), 0.0, 0, VolumeMethod::Series};
    return simplex_volume(regular_ideal_simplex(n, n), budget, seed);
}

GeodesicSimplex random_simplex(int n, Rng& rng, double ideal_probability) {
    std::normal_distribution<double> gauss(0.0, 1.0);
    std::uniform_real_distribution<double> unif(0.0, 1.0);
    std::vector<Eigen::VectorXd> pts;
    std::vector<bool> ideal;
    for (int i = 0; i <= n; ++i) {
        Eigen::VectorXd x(n);
        for (int j = 0; j < n; ++j) x[j] = gauss(rng);
        x.normalize();
        const bool is_ideal = unif(rng) < ideal_probability;
        if (!is_ideal) x *= 0.999 * std::pow(unif(rng), 1.0 / n);
        pts.push_back(x);
        ideal.push_back(is_ideal);
    }
    return GeodesicSimplex::from_klein(pts, ideal);
}

MaximalityReport maximality_probe(int n, int trials, std::uint64_t seed) {
    if (n < 2 || n > 5) throw InvalidArgument("maximality_probe supports 2 <= n <= 5");
    MaximalityReport report;
    report.n = n;
    report.trials = trials;
    // Same method on both sides so discretization error cancels to first order.
    const int order = n <= 3 ? 14 : (n == 4 ? 8 : 6);
    report.v_n = simplex_volume_cubature(regular_ideal_simplex(n, n), order).value;
    const double tolerance = 1e-6 * report.v_n;

    struct Trial {
        bool degenerate = false;
        double volume = 0.0;
        Eigen::MatrixXd gram;
    };
    std::vector<Trial> results(static_cast<std::size_t>(trials));
    parallel_for(results.size(), [&](std::size_t i) {
        Rng rng(derive_seed(seed, {static_cast<std::uint64_t>(n), i}));
        const GeodesicSimplex K = random_simplex(n, rng);
        Trial t;
        if (is_degenerate(K, 1e-6)) {
            t.degenerate = true;
        } else {
            t.volume = simplex_volume_cubature(K, order).value;
            t.gram = K.gram();
        }
        results[i] = std::move(t);
    });
    for (auto& t : results) {
        if (t.degenerate) {
            ++report.rejected_degenerate;
            continue;
        }
        ++report.accepted;
        if (t.volume > report.v_n + tolerance) ++report.exceedances;
        if (t.volume > report.max_volume) {
            report.max_volume = t.volume;
            report.max_gram = t.gram;
        }
    }
    report.max_error = tolerance;
    return report;
}

std::vector<PerturbationPoint> perturbation_sequence(int n, const std::vector<double>& scales,
                                                     std::uint64_t seed) {
    const GeodesicSimplex reg = regular_ideal_simplex(n, n);
    Rng rng(derive_seed(seed, {0x7065727475ULL, static_cast<std::uint64_t>(n)}));
    std::normal_distribution<double> gauss(0.0, 1.0);
    std::vector<Eigen::VectorXd> dirs;
    for (int i = 0; i <= n; ++i) {
        const Eigen::VectorXd u = to_klein(reg.vertex(i));
        Eigen::VectorXd d(n);
        for (int j = 0; j < n; ++j) d[j] = gauss(rng);
        d -= d.dot(u) * u;
        dirs.push_back(d.normalized());
    }
    std::vector<PerturbationPoint> out;
    for (double s : scales) out.push_back({s, simplex_volume_cubature(perturbed_regular(n, dirs, s)).value});
    return out;
}

}  // namespace hypstab
