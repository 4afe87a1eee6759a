#include "hypstab/bounds.hpp"

#include <algorithm>
#include <sstream>

#include "hypstab/chain.hpp"
#include "hypstab/errors.hpp"

namespace hypstab {

namespace {

void require_nonnegative(std::initializer_list<double> xs) {
    for (double x : xs)
        if (!(x >= 0.0)) throw InvalidArgument("bound inputs must be nonnegative");
}

std::string rational_string(const Rational& r) {
    std::ostringstream os;
    os << r.numerator();
    if (r.denominator() != 1) os << "/" << r.denominator();
    return os.str();
}

}  // namespace

JsjBound jsj_cover_bound(double v_A, double v_B, double v_C, double v_D, long long h, long long n) {
    require_nonnegative({v_A, v_B, v_C, v_D});
    if (h < 1 || n < 1) throw InvalidArgument("covering parameters h and n must be >= 1");
    const double hd = static_cast<double>(h), nd = static_cast<double>(n);
    const double d = hd * nd * nd;
    JsjBound out;
    out.bound = d * v_A + 2.0 * hd * nd * (v_B + v_D) + hd * v_C;
    out.normalized = v_A + 2.0 * (v_B + v_D) / nd + v_C / (nd * nd);
    out.limit = v_A;
    return out;
}

FillingBound filling_bound(double v_A, double v_B, double v_D, long long n) {
    require_nonnegative({v_A, v_B, v_D});
    if (n < 1) throw InvalidArgument("covering parameter n must be >= 1");
    return {v_A + (v_B + v_D) / static_cast<double>(n), v_A};
}

SeifertSequence seifert_bound(long long e, long long chi, const std::vector<long long>& d_list) {
    if (e < 0) throw InvalidArgument("Euler number must be >= 0");
    const long long chi_minus = std::max(-chi, 0LL);
    SeifertSequence out;
    for (long long d : d_list) {
        if (d < 1) throw InvalidArgument("degrees must be >= 1");
        const double dd = static_cast<double>(d);
        out.points.push_back({d, static_cast<double>(e + 6 * d * chi_minus + 6) / (dd * dd)});
    }
    std::vector<SeifertPoint> sorted = out.points;
    std::sort(sorted.begin(), sorted.end(), [](const auto& x, const auto& y) { return x.d < y.d; });
    out.monotone = std::adjacent_find(sorted.begin(), sorted.end(), [](const auto& x, const auto& y) {
                       return y.value > x.value;
                   }) == sorted.end();
    return out;
}

bool Dashboard::all_hold() const {
    return std::all_of(checks.begin(), checks.end(), [](const DashboardCheck& c) { return c.holds; });
}

Dashboard inequality_dashboard(const Triangulation& T, const std::string& name) {
    require_valid(T);
    const ValidationReport rep = validate(T);
    const CellCounts cc = cell_counts(T);
    const Orientability o = orientability(T);
    Dashboard db;
    db.dim = T.dim();
    db.t = T.simplex_count();
    db.euler = cc.euler;
    db.closed = rep.closed;
    db.orientable = o.orientable;

    const long long chi_abs = cc.euler < 0 ? -cc.euler : cc.euler;
    const long long factor = 1LL << (T.dim() + 1);
    db.checks.push_back({"|chi| <= 2^(n+1) t", std::to_string(chi_abs), std::to_string(factor * db.t),
                         chi_abs <= factor * db.t});
    if (rep.closed && o.orientable) {
        const Chain z = alternation_chain(T, o.orientation);
        db.cycle_verified = verify_cycle(T, z);
        const Rational l1 = z.l1_norm();
        db.l1_norm = rational_string(l1);
        db.checks.push_back({"boundary of z = 0", db.cycle_verified ? "0" : "nonzero", "0", db.cycle_verified});
        db.checks.push_back({"L1(z) <= t", db.l1_norm, std::to_string(db.t), l1 <= Rational(db.t)});
    }
    db.annotations.push_back("sigma(M) <= t = " + std::to_string(db.t));
    if (name == "sphere") db.annotations.push_back("sigma(S^2) = 2, attained by this triangulation (t = 2)");
    if (name == "figure-eight") {
        db.annotations.push_back("c(N) = 2");
        db.annotations.push_back("vol(N) = 2 v_3 (two regular ideal tetrahedra)");
        db.annotations.push_back("||N|| = vol(N) / v_3 = 2");
        db.annotations.push_back("chi = 1 counts the cone point; the compact core has chi = 0");
    }
    return db;
}

}  // namespace hypstab
