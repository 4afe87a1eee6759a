#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "hypstab/random.hpp"
#include "hypstab/simplex.hpp"
#include "hypstab/volume.hpp"

namespace hypstab {

enum class Certification { Exact, Series, MonteCarlo, EmpiricalSearch, Formula };

std::string to_string(Certification c);
Certification certification_of(VolumeMethod m);

struct AlphaRow {
    int n = 0;
    double alpha = 0.0;
    int k = 0;
    double ratio = 0.0;             ///< 2 pi / alpha
    bool integer_ratio = false;     ///< true only for n = 3
    bool bracket_ok = false;        ///< k alpha < 2 pi < (k+1) alpha, or the n = 3 exception
};

double alpha_n(int n);
int k_n(int n);
std::vector<AlphaRow> alpha_k_table(int n_min, int n_max);

/// Half the relative margin of alpha_n inside (2 pi/(k+1), 2 pi/k).
double a_n(int n);

/// Open interval that every dihedral angle must lie in for the given a.
struct AngleBracket {
    double lower = 0.0;
    double upper = 0.0;
};
AngleBracket angle_bracket(int n, double a);

/// One third of the minimal face clearance of the regular ideal n-simplex.
double delta_n(int n);

/// Worst dihedral angle excursion outside the bracket; >= 0 means a violation.
double angle_violation(const GeodesicSimplex& K, double a);
/// 2 delta - min face clearance; >= 0 means a violation.
double clearance_violation(const GeodesicSimplex& K, double delta);

enum class ViolationKind { Angle, Clearance };
std::string to_string(ViolationKind k);

struct Counterexample {
    int restart = 0;
    ViolationKind kind = ViolationKind::Angle;
    double t = 0.0;
    double volume = 0.0;
    double violation = 0.0;
    std::vector<Eigen::VectorXd> klein;
    std::vector<bool> ideal;
};

struct BisectionStep {
    double lo = 0.0;
    double hi = 0.0;
    double mid = 0.0;
    bool accepted = false;
};

struct SearchOptions {
    int restarts = 64;
    int bisection_depth = 20;
    int climb_steps = 12;
    int cubature_order = 0;   ///< 0: dimension default used by the search
    int audit_restarts = 16;
    std::uint64_t seed = kDefaultSeed;
};

struct AuditTrail {
    int n = 0;
    double a = 0.0;
    double delta = 0.0;
    double v_reference = 0.0;      ///< cubature v_n used for the volume ratios
    int cubature_order = 0;
    double regular_angle_violation = 0.0;
    double regular_clearance_violation = 0.0;
    std::vector<Counterexample> pool;
    std::vector<BisectionStep> angle_steps;
    std::vector<BisectionStep> clearance_steps;
    double eps_angle = 0.0;
    double eps_clearance = 0.0;
    std::vector<Counterexample> audit_pool;  ///< independent-seed re-search
    bool monotone_ok = false;                ///< nothing in audit_pool at eps/2
    bool regular_passes() const { return regular_angle_violation < 0.0 && regular_clearance_violation < 0.0; }
};

struct EpsResult {
    double a = 0.0;
    double eps = 0.0;
    AuditTrail audit;
};

/// Empirical (a_n, eps_n): builds a pool of lemma counterexamples along seeded
/// deformations of the regular ideal simplex, then bisects eps per lemma so that
/// no pooled counterexample has volume >= (1 - eps) v_n. eps_n is the smaller one.
EpsResult estimate_a_eps(int n, const SearchOptions& options = {});

/// Rebuilds every stored counterexample and bisection step and checks that the
/// verdicts come out identical.
bool replay_audit(const AuditTrail& audit);

/// max{1 - eps/12, 1 - eta/(3 v), 1 - a eta/(2 v)}.
double compute_Cn(double eps, double eta, double a, double v_n);

struct ConstantsRow {
    int n = 0;
    VolumeEstimate v;
    double alpha = 0.0;
    int k = 0;
    double delta = 0.0;
    double eta = 0.0;
    double a = 0.0;
    double eps = 0.0;
    double C = 0.0;
    std::map<std::string, Certification> certified;
    std::optional<AuditTrail> audit;
    std::string error;  ///< non-empty when the search failed; numeric fields then partial
};

ConstantsRow constants_row(int n, long long budget = kDefaultBudget, const SearchOptions& options = {});

struct BudgetReport {
    long long t = 0;
    long long t_b = 0;
    long long t_s = 0;
    long long e_f = 0;
    long long N = 0;
};

struct LemmaVerdict {
    std::string name;
    bool applicable = false;   ///< hypothesis holds for the report
    bool holds = false;        ///< conclusion holds as an inequality
    bool exact_equality = false;
    double lhs = 0.0;          ///< bound derived from the counts
    double rhs = 0.0;          ///< the lemma's closed form
};

struct BudgetVerdicts {
    std::vector<LemmaVerdict> lemmas;
    double m1 = 0.0;
    double m2 = 0.0;
    double m3 = 0.0;
    double mass_budget = 0.0;
    double implied_bound = 0.0;   ///< t v_n C_n
    bool all_hold() const;
};

/// Evaluates the counting lemmas over the report in exact rational arithmetic
/// (double inputs are converted exactly).
BudgetVerdicts budget_check(const BudgetReport& report, const ConstantsRow& row);

}  // namespace hypstab
