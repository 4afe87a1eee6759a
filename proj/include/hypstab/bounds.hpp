#pragma once

#include <string>
#include <vector>

#include "hypstab/triangulation.hpp"

namespace hypstab {

struct JsjBound {
    double bound = 0.0;       ///< d v_A + 2 h n (v_B + v_D) + h v_C with d = h n^2
    double normalized = 0.0;  ///< bound / d
    double limit = 0.0;       ///< v_A
};

JsjBound jsj_cover_bound(double v_A, double v_B, double v_C, double v_D, long long h, long long n);

struct FillingBound {
    double normalized = 0.0;  ///< v_A + (v_B + v_D) / n
    double limit = 0.0;       ///< v_A
};

FillingBound filling_bound(double v_A, double v_B, double v_D, long long n);

struct SeifertPoint {
    long long d = 1;
    double value = 0.0;  ///< (e + 6 d chi_- + 6) / d^2
};

struct SeifertSequence {
    std::vector<SeifertPoint> points;
    bool monotone = false;  ///< non-increasing along increasing d
};

SeifertSequence seifert_bound(long long e, long long chi, const std::vector<long long>& d_list);

struct DashboardCheck {
    std::string name;
    std::string lhs;
    std::string rhs;
    bool holds = false;
};

struct Dashboard {
    int dim = 0;
    long long t = 0;
    long long euler = 0;
    bool closed = false;
    bool orientable = false;
    std::string l1_norm;      ///< exact rational, empty when no fundamental cycle exists
    bool cycle_verified = false;
    std::vector<DashboardCheck> checks;
    std::vector<std::string> annotations;
    bool all_hold() const;
};

/// Instance-level sides of the norm/complexity inequalities; `name` selects
/// annotations for built-in fixtures.
Dashboard inequality_dashboard(const Triangulation& T, const std::string& name = "");

}  // namespace hypstab
