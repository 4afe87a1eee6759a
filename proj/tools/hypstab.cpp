#include <cmath>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "hypstab/bounds.hpp"
#include "hypstab/chain.hpp"
#include "hypstab/constants.hpp"
#include "hypstab/cover.hpp"
#include "hypstab/errors.hpp"
#include "hypstab/fixtures.hpp"
#include "hypstab/io.hpp"
#include "hypstab/lattice.hpp"
#include "hypstab/simplex.hpp"
#include "hypstab/triangulation.hpp"
#include "hypstab/volume.hpp"

using namespace hypstab;

namespace {

struct RunConfig {
    std::uint64_t seed = kDefaultSeed;
    long long samples = kDefaultBudget;
    double tolerance = kDefaultTolerance;
    std::string format = "text";
    std::string out;
};

std::string num(double x, int precision = 10) {
    std::ostringstream os;
    os << std::setprecision(precision) << x;
    return os.str();
}

std::string yes_no(bool b) { return b ? "yes" : "no"; }

class Table {
public:
    explicit Table(std::vector<std::string> headers) : headers_(std::move(headers)) {}
    void add(std::vector<std::string> row) { rows_.push_back(std::move(row)); }
    void print(std::ostream& os) const {
        std::vector<std::size_t> width(headers_.size());
        for (std::size_t c = 0; c < headers_.size(); ++c) {
            width[c] = headers_[c].size();
            for (const auto& r : rows_) width[c] = std::max(width[c], r[c].size());
        }
        auto line = [&](const std::vector<std::string>& r) {
            for (std::size_t c = 0; c < r.size(); ++c)
                os << (c ? "  " : "") << std::left << std::setw(static_cast<int>(width[c])) << r[c];
            os << "\n";
        };
        line(headers_);
        std::vector<std::string> rule;
        for (auto w : width) rule.emplace_back(w, '-');
        line(rule);
        for (const auto& r : rows_) line(r);
    }

private:
    std::vector<std::string> headers_;
    std::vector<std::vector<std::string>> rows_;
};

class Output {
public:
    explicit Output(const RunConfig& cfg) : cfg_(cfg) {}
    std::ostream& stream() { return buffer_; }
    void json(const Json& j) { buffer_ << j.dump(2) << "\n"; }
    void flush() {
        if (cfg_.out.empty()) {
            std::cout << buffer_.str();
            return;
        }
        std::ofstream f(cfg_.out, std::ios::binary);
        if (!f) throw InvalidArgument("cannot write '" + cfg_.out + "'");
        f << buffer_.str();
    }
    bool text() const { return cfg_.format == "text"; }
    bool csv() const { return cfg_.format == "csv"; }

private:
    const RunConfig& cfg_;
    std::ostringstream buffer_;
};

// constants

struct ConstantsArgs {
    int n_min = 4;
    int n_max = 5;
    int restarts = SearchOptions{}.restarts;
    int audit_restarts = SearchOptions{}.audit_restarts;
    int climb_steps = SearchOptions{}.climb_steps;
    bool audit = false;
};

int cmd_constants(const RunConfig& cfg, const ConstantsArgs& args) {
    if (args.n_min < 4 || args.n_max > 8 || args.n_min > args.n_max)
        throw InvalidArgument("need 4 <= n-min <= n-max <= 8");
    SearchOptions opt;
    opt.seed = cfg.seed;
    opt.restarts = args.restarts;
    opt.audit_restarts = args.audit_restarts;
    opt.climb_steps = args.climb_steps;
    std::vector<ConstantsRow> rows;
    for (int n = args.n_min; n <= args.n_max; ++n) rows.push_back(constants_row(n, cfg.samples, opt));

    bool ok = true;
    for (const auto& r : rows) {
        const bool row_ok = r.error.empty() && r.C < 1.0 && r.eps > 0.0 && r.audit && r.audit->regular_passes() &&
                            r.audit->monotone_ok;
        ok = ok && row_ok;
    }
    Output out(cfg);
    if (out.csv()) {
        out.stream() << constants_csv(rows);
    } else if (!out.text()) {
        Json arr = Json::array();
        for (const auto& r : rows) arr.push_back(to_json(r, args.audit));
        out.json({{"seed", cfg.seed}, {"samples", cfg.samples}, {"rows", arr}, {"passed", ok}});
    } else {
        Table t({"n", "v_n", "+/-", "alpha_n", "k_n", "delta_n", "eta_n", "a_n", "eps_n", "C_n", "status"});
        for (const auto& r : rows) {
            std::string status = r.error.empty() ? (r.C < 1.0 ? "C_n < 1" : "C_n >= 1") : "error: " + r.error;
            t.add({std::to_string(r.n), num(r.v.value), num(r.v.std_error, 3), num(r.alpha), std::to_string(r.k),
                   num(r.delta), num(r.eta), num(r.a), num(r.eps), num(r.C, 12), status});
        }
        t.print(out.stream());
        out.stream() << "\nflags:";
        if (!rows.empty())
            for (const auto& [k, c] : rows.front().certified) out.stream() << " " << k << "=" << to_string(c);
        out.stream() << "\n";
        for (const auto& r : rows) {
            if (!r.audit) continue;
            const auto& a = *r.audit;
            out.stream() << "n=" << r.n << " audit: pool " << a.pool.size() << ", eps_angle " << num(a.eps_angle)
                         << ", eps_clearance " << num(a.eps_clearance) << ", regular simplex passes "
                         << yes_no(a.regular_passes()) << ", audit re-search clean " << yes_no(a.monotone_ok) << "\n";
        }
        out.stream() << (ok ? "all checks passed" : "some checks failed") << "\n";
    }
    out.flush();
    return ok ? 0 : 1;
}

int cmd_alpha(const RunConfig& cfg, int n_min, int n_max) {
    const auto rows = alpha_k_table(n_min, n_max);
    bool ok = true;
    for (const auto& r : rows) ok = ok && r.bracket_ok;
    Output out(cfg);
    if (out.csv()) {
        out.stream() << "n,alpha,k,ratio,integer_ratio,bracket_ok,flag\n";
        for (const auto& r : rows)
            out.stream() << r.n << "," << num(r.alpha, 17) << "," << r.k << "," << num(r.ratio, 17) << ","
                         << r.integer_ratio << "," << r.bracket_ok << ",exact\n";
    } else if (!out.text()) {
        Json arr = Json::array();
        for (const auto& r : rows) arr.push_back(to_json(r));
        out.json({{"rows", arr}, {"passed", ok}});
    } else {
        Table t({"n", "alpha_n", "k_n", "2pi/alpha_n", "integer", "bracket"});
        for (const auto& r : rows)
            t.add({std::to_string(r.n), num(r.alpha, 15), std::to_string(r.k), num(r.ratio, 15),
                   yes_no(r.integer_ratio), r.bracket_ok ? "ok" : "FAIL"});
        t.print(out.stream());
    }
    out.flush();
    return ok ? 0 : 1;
}

// volume

struct VolumeArgs {
    std::string file;
    int regular_ideal = 0;
    std::string method = "auto";
    int order = 0;
};

int cmd_volume(const RunConfig& cfg, const VolumeArgs& args) {
    if (args.file.empty() == (args.regular_ideal == 0))
        throw InvalidArgument("give exactly one of a simplex file or --regular-ideal n");
    VolumeEstimate v;
    std::optional<VolumeEstimate> reference;
    int n = 0;
    if (args.regular_ideal) {
        n = args.regular_ideal;
        if (args.method == "auto") {
            v = ideal_regular_volume(n, cfg.samples, cfg.seed);
        } else {
            const GeodesicSimplex K = regular_ideal_simplex(n, n);
            v = args.method == "cubature" ? simplex_volume_cubature(K, args.order)
                                          : simplex_volume(K, cfg.samples, cfg.seed);
            if (n <= 3) reference = ideal_regular_volume(n);
        }
    } else {
        const KleinSimplex ks = parse_klein_simplex(read_text_file(args.file));
        n = ks.dim;
        const GeodesicSimplex K = GeodesicSimplex::from_klein(ks.points, ks.ideal, cfg.tolerance);
        if (is_degenerate(K, cfg.tolerance)) throw DegenerateSimplex("simplex in '" + args.file + "' is degenerate");
        if (args.method == "cubature")
            v = simplex_volume_cubature(K, args.order);
        else
            v = simplex_volume(K, cfg.samples, cfg.seed);
    }
    bool ok = true;
    double z = 0.0;
    if (reference && v.std_error > 0.0) {
        z = std::abs(v.value - reference->value) / v.std_error;
        ok = z <= 3.0;
    }
    Output out(cfg);
    if (out.csv()) {
        out.stream() << "n,value,std_error,samples,method,flag\n"
                     << n << "," << num(v.value, 17) << "," << num(v.std_error, 17) << "," << v.samples << ","
                     << to_string(v.method) << "," << to_string(certification_of(v.method)) << "\n";
    } else if (!out.text()) {
        Json j{{"n", n}, {"volume", to_json(v)}};
        if (reference) j["reference"] = to_json(*reference), j["z_score"] = z;
        j["passed"] = ok;
        out.json(j);
    } else {
        out.stream() << "n = " << n << "\nvolume = " << num(v.value, 12);
        if (v.std_error > 0.0) out.stream() << " +/- " << num(v.std_error, 3);
        out.stream() << "  [" << to_string(certification_of(v.method)) << ", " << v.samples << " samples]\n";
        if (reference)
            out.stream() << "reference = " << num(reference->value, 12) << " [" << to_string(reference->method)
                         << "], deviation " << num(z, 3) << " sigma\n";
    }
    out.flush();
    return ok ? 0 : 1;
}

// triangulation

struct TriArgs {
    std::string file;
    std::string fixture;
    std::string spec;
    long long characteristic = 0;
    int cyclic = 0;
    int cyclic_index = 0;
    std::string emit;
};

Triangulation load(const TriArgs& a) {
    if (a.file.empty() == a.fixture.empty()) throw InvalidArgument("give exactly one of a file or --fixture");
    return a.fixture.empty() ? parse_triangulation(read_text_file(a.file)) : fixture(a.fixture);
}

Json counts_json(const CellCounts& c) { return {{"f", c.f}, {"euler", c.euler}}; }

std::string fvec(const std::vector<long long>& f) {
    std::string s = "(";
    for (std::size_t i = 0; i < f.size(); ++i) s += (i ? "," : "") + std::to_string(f[i]);
    return s + ")";
}

std::string rational(const Rational& r) {
    return r.denominator() == 1 ? std::to_string(r.numerator())
                                : std::to_string(r.numerator()) + "/" + std::to_string(r.denominator());
}

int cmd_tri_info(const RunConfig& cfg, const TriArgs& args) {
    const Triangulation T = load(args);
    const ValidationReport rep = validate(T);
    Output out(cfg);
    if (!rep.valid) {
        if (out.text()) {
            out.stream() << "invalid triangulation:\n";
            for (const auto& i : rep.issues) out.stream() << "  " << i << "\n";
        } else {
            out.json({{"validation", to_json(rep)}});
        }
        out.flush();
        return 1;
    }
    const CellCounts cc = cell_counts(T);
    const Orientability o = orientability(T);
    std::optional<LinkReport> lr;
    if (T.dim() == 3) lr = links(T);
    if (!out.text()) {
        Json j{{"validation", to_json(rep)}, {"dim", T.dim()}, {"simplices", T.simplex_count()},
               {"cells", counts_json(cc)}, {"orientable", o.orientable}};
        if (!o.orientable) j["violating_cycle"] = o.violating_cycle;
        if (lr) {
            Json ls = Json::array(), vs = Json::array();
            for (const auto& l : lr->links)
                ls.push_back({{"vertex", l.vertex}, {"triangles", l.triangles}, {"edges", l.edges},
                              {"vertices", l.vertices}, {"euler", l.euler}, {"closed", l.closed}});
            for (const auto& e : lr->valences) vs.push_back({{"edge", e.edge}, {"valence", e.valence}});
            j["links"] = ls;
            j["edge_valences"] = vs;
        }
        out.json(j);
    } else {
        out.stream() << "dimension " << T.dim() << ", " << T.simplex_count() << " simplices, "
                     << (rep.closed ? "closed" : std::to_string(rep.boundary.size()) + " boundary facets") << "\n"
                     << "f-vector " << fvec(cc.f) << ", euler characteristic " << cc.euler << "\n"
                     << (o.orientable ? "orientable" : "nonorientable") << "\n";
        if (lr) {
            for (const auto& l : lr->links) {
                const std::string kind = !l.closed ? "surface with boundary"
                                         : l.euler == 2 ? "sphere"
                                         : l.euler == 0 ? "torus or Klein bottle"
                                                        : "closed surface";
                out.stream() << "vertex " << l.vertex << " link: euler " << l.euler << " (" << kind << ")\n";
            }
            out.stream() << "edge valences:";
            for (const auto& e : lr->valences) out.stream() << " " << e.valence;
            out.stream() << "\n";
        }
    }
    out.flush();
    return 0;
}

int cmd_tri_cycle(const RunConfig& cfg, const TriArgs& args) {
    const Triangulation T = load(args);
    const Orientability o = orientability(T);
    if (!o.orientable) throw InvalidArgument("triangulation is not orientable");
    const Chain z = alternation_chain(T, o.orientation);
    const bool ok = verify_cycle(T, z);
    const Rational l1 = z.l1_norm();
    const bool bounded = l1 <= Rational(T.simplex_count());
    Output out(cfg);
    if (!out.text()) {
        out.json({{"terms", z.terms().size()},
                  {"cycle_verified", ok},
                  {"l1_norm", rational(l1)},
                  {"simplices", T.simplex_count()},
                  {"l1_at_most_t", bounded},
                  {"flag", "exact"}});
    } else {
        out.stream() << (ok ? "cycle verified" : "boundary is nonzero") << ", L1 = " << rational(l1) << " (t = "
                     << T.simplex_count() << ", " << z.terms().size() << " terms)\n";
    }
    out.flush();
    return ok && bounded ? 0 : 1;
}

int cmd_tri_cover(const RunConfig& cfg, const TriArgs& args) {
    const Triangulation T = load(args);
    const int chosen = (args.spec.empty() ? 0 : 1) + (args.characteristic ? 1 : 0) + (args.cyclic ? 1 : 0);
    if (chosen != 1) throw InvalidArgument("give exactly one of --spec, --characteristic or --cyclic");
    CoverSpec spec;
    if (!args.spec.empty()) {
        spec = parse_cover_spec(read_text_file(args.spec));
    } else if (args.characteristic) {
        if (T.dim() != 2 || T.simplex_count() != 2 || T.pairings().size() != 3)
            throw InvalidArgument("--characteristic applies to the two-triangle torus");
        spec = torus_subgroup_spec(x_characteristic(args.characteristic));
    } else {
        const auto specs = cyclic_cover_specs(T, args.cyclic, static_cast<std::size_t>(args.cyclic_index) + 1);
        if (static_cast<int>(specs.size()) <= args.cyclic_index)
            throw InvalidArgument("only " + std::to_string(specs.size()) + " cyclic specs of degree " +
                                  std::to_string(args.cyclic));
        spec = specs[static_cast<std::size_t>(args.cyclic_index)];
    }

    Output out(cfg);
    std::optional<Cover> built;
    try {
        built = build_cover(T, spec);
    } catch (const BranchedCover& e) {
        if (out.text())
            out.stream() << "rejected: " << e.what() << "\n  cycle: " << e.cycle() << "\n";
        else
            out.json({{"rejected", true}, {"reason", e.what()}, {"cycle", e.cycle()}});
        out.flush();
        return 1;
    }
    const Cover& cover = *built;
    const CellCounts base = cell_counts(T);
    const CellCounts up = cell_counts(cover.triangulation);
    // Cone points over non-spherical vertex links count cusps, not sheets.
    bool cusped = false;
    if (T.dim() == 3 && validate(T).closed)
        for (const auto& l : links(T).links) cusped = cusped || l.euler != 2;
    const std::size_t first = cusped ? 1 : 0;
    bool multiplies = up.euler - (cusped ? up.f[0] : 0) == cover.degree * (base.euler - (cusped ? base.f[0] : 0));
    for (std::size_t i = first; i < base.f.size(); ++i) multiplies = multiplies && up.f[i] == cover.degree * base.f[i];
    const bool covering = verify_covering(T, cover.triangulation, cover.projection);
    const ValidationReport rep = validate(cover.triangulation);
    const Orientability o = orientability(cover.triangulation);
    std::optional<bool> cycle;
    if (rep.closed && o.orientable) cycle = verify_cycle(cover.triangulation, alternation_chain(cover.triangulation, o.orientation));
    const bool ok = multiplies && covering && cycle.value_or(true);

    if (!args.emit.empty()) {
        std::ofstream f(args.emit, std::ios::binary);
        if (!f) throw InvalidArgument("cannot write '" + args.emit + "'");
        f << to_json(cover.triangulation).dump(2) << "\n";
    }
    if (!out.text()) {
        Json j{{"spec", to_json(spec)},
               {"degree", cover.degree},
               {"simplices", cover.triangulation.simplex_count()},
               {"components", cover.components},
               {"base_cells", counts_json(base)},
               {"cover_cells", counts_json(up)},
               {"cusped", cusped},
               {"multiplicative", multiplies},
               {"covering_verified", covering},
               {"projection", cover.projection}};
        if (cycle) j["cycle_verified"] = *cycle;
        j["passed"] = ok;
        out.json(j);
    } else {
        out.stream() << "degree " << cover.degree << " cover: " << cover.triangulation.simplex_count()
                     << " simplices, " << cover.components << " component(s)\n"
                     << "base f " << fvec(base.f) << " chi " << base.euler << "; cover f " << fvec(up.f) << " chi "
                     << up.euler << " (" << (multiplies ? "multiplies by d" : "NOT multiplicative")
                     << (cusped ? " away from the cusp vertices" : "") << ")\n"
                     << "covering map " << (covering ? "verified" : "INVALID") << "\n";
        if (cycle) out.stream() << "fundamental cycle of the cover " << (*cycle ? "verified" : "FAILED") << "\n";
    }
    out.flush();
    return ok ? 0 : 1;
}

int cmd_tri_dashboard(const RunConfig& cfg, const TriArgs& args) {
    const Triangulation T = load(args);
    const Dashboard d = inequality_dashboard(T, args.fixture);
    Output out(cfg);
    if (!out.text()) {
        Json j = to_json(d);
        j["passed"] = d.all_hold();
        out.json(j);
    } else {
        out.stream() << "t = " << d.t << ", chi = " << d.euler << ", " << (d.closed ? "closed" : "with boundary")
                     << ", " << (d.orientable ? "orientable" : "nonorientable") << "\n";
        Table t({"check", "lhs", "rhs", "holds"});
        for (const auto& c : d.checks) t.add({c.name, c.lhs, c.rhs, yes_no(c.holds)});
        t.print(out.stream());
        for (const auto& a : d.annotations) out.stream() << "note: " << a << "\n";
    }
    out.flush();
    return d.all_hold() ? 0 : 1;
}

// bounds

int cmd_seifert(const RunConfig& cfg, long long e, long long chi, const std::vector<long long>& d_list) {
    const SeifertSequence s = seifert_bound(e, chi, d_list);
    Output out(cfg);
    if (out.csv()) {
        out.stream() << "d,bound,flag\n";
        for (const auto& p : s.points) out.stream() << p.d << "," << num(p.value, 17) << ",formula\n";
    } else if (!out.text()) {
        Json pts = Json::array();
        for (const auto& p : s.points) pts.push_back({{"d", p.d}, {"value", p.value}, {"flag", "formula"}});
        out.json({{"e", e}, {"chi", chi}, {"points", pts}, {"monotone", s.monotone}, {"limit", 0.0}});
    } else {
        Table t({"d", "(e + 6 d chi_- + 6) / d^2"});
        for (const auto& p : s.points) t.add({std::to_string(p.d), num(p.value, 10)});
        t.print(out.stream());
        out.stream() << "non-increasing: " << yes_no(s.monotone) << ", limit 0\n";
    }
    out.flush();
    return s.monotone ? 0 : 1;
}

int cmd_jsj(const RunConfig& cfg, double vA, double vB, double vC, double vD, long long h,
            const std::vector<long long>& ns) {
    Output out(cfg);
    std::vector<std::pair<long long, JsjBound>> rows;
    for (long long n : ns) rows.emplace_back(n, jsj_cover_bound(vA, vB, vC, vD, h, n));
    if (out.csv()) {
        out.stream() << "n,d,bound,normalized,limit,flag\n";
        for (const auto& [n, b] : rows)
            out.stream() << n << "," << h * n * n << "," << num(b.bound, 17) << "," << num(b.normalized, 17) << ","
                         << num(b.limit, 17) << ",formula\n";
    } else if (!out.text()) {
        Json arr = Json::array();
        for (const auto& [n, b] : rows)
            arr.push_back({{"n", n}, {"d", h * n * n}, {"bound", b.bound}, {"normalized", b.normalized},
                           {"flag", "formula"}});
        out.json({{"rows", arr}, {"limit", vA}});
    } else {
        Table t({"n", "d", "bound", "bound/d"});
        for (const auto& [n, b] : rows)
            t.add({std::to_string(n), std::to_string(h * n * n), num(b.bound, 12), num(b.normalized, 12)});
        t.print(out.stream());
        out.stream() << "limit as n -> infinity: v_A = " << num(vA) << "\n";
    }
    out.flush();
    return 0;
}

int cmd_filling(const RunConfig& cfg, double vA, double vB, double vD, const std::vector<long long>& ns) {
    Output out(cfg);
    std::vector<std::pair<long long, FillingBound>> rows;
    for (long long n : ns) rows.emplace_back(n, filling_bound(vA, vB, vD, n));
    if (out.csv()) {
        out.stream() << "n,normalized,limit,flag\n";
        for (const auto& [n, b] : rows) out.stream() << n << "," << num(b.normalized, 17) << "," << num(b.limit, 17) << ",formula\n";
    } else if (!out.text()) {
        Json arr = Json::array();
        for (const auto& [n, b] : rows) arr.push_back({{"n", n}, {"normalized", b.normalized}, {"flag", "formula"}});
        out.json({{"rows", arr}, {"limit", vA}});
    } else {
        Table t({"n", "v_A + (v_B + v_D)/n"});
        for (const auto& [n, b] : rows) t.add({std::to_string(n), num(b.normalized, 12)});
        t.print(out.stream());
        out.stream() << "limit: " << num(vA) << " (c_inf(M) <= c(N))\n";
    }
    out.flush();
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Hyperbolic simplex geometry, stability constants and triangulation invariants"};
    app.require_subcommand(1);
    RunConfig cfg;
    app.add_option("--seed", cfg.seed, "random seed")->capture_default_str();
    app.add_option("--samples", cfg.samples, "Monte Carlo sample budget")
        ->check(CLI::Range(1000LL, 1LL << 40))
        ->capture_default_str();
    app.add_option("--tolerance", cfg.tolerance, "geometric tolerance")->check(CLI::PositiveNumber)->capture_default_str();
    app.add_option("--format", cfg.format, "output format")->check(CLI::IsMember({"text", "json", "csv"}))->capture_default_str();
    app.add_option("--out", cfg.out, "write output to a file");

    int exit_code = 0;

    ConstantsArgs cargs;
    auto* constants = app.add_subcommand("constants", "C_n table with audit trails");
    constants->add_option("--n-min", cargs.n_min)->capture_default_str();
    constants->add_option("--n-max", cargs.n_max)->capture_default_str();
    constants->add_option("--restarts", cargs.restarts)->check(CLI::PositiveNumber)->capture_default_str();
    constants->add_option("--audit-restarts", cargs.audit_restarts)->check(CLI::NonNegativeNumber)->capture_default_str();
    constants->add_option("--climb-steps", cargs.climb_steps)->check(CLI::NonNegativeNumber)->capture_default_str();
    constants->add_flag("--audit", cargs.audit, "include full audit trails in JSON");
    constants->callback([&] { exit_code = cmd_constants(cfg, cargs); });

    int a_min = 3, a_max = 8;
    auto* alpha = app.add_subcommand("alpha", "dihedral angles alpha_n and k_n");
    alpha->add_option("--n-min", a_min)->check(CLI::Range(2, 64))->capture_default_str();
    alpha->add_option("--n-max", a_max)->check(CLI::Range(2, 64))->capture_default_str();
    alpha->callback([&] { exit_code = cmd_alpha(cfg, a_min, a_max); });

    VolumeArgs vargs;
    auto* volume = app.add_subcommand("volume", "volume of a simplex file or of the regular ideal simplex");
    volume->add_option("file", vargs.file, "Klein-coordinate simplex JSON");
    volume->add_option("--regular-ideal", vargs.regular_ideal, "dimension n")->check(CLI::Range(2, 8));
    volume->add_option("--method", vargs.method)
        ->check(CLI::IsMember({"auto", "monte-carlo", "cubature"}))
        ->capture_default_str();
    volume->add_option("--order", vargs.order, "cubature points per axis (0: default)");
    volume->callback([&] { exit_code = cmd_volume(cfg, vargs); });

    TriArgs targs;
    auto* tri = app.add_subcommand("triangulation", "triangulation invariants");
    tri->require_subcommand(1);
    auto add_input = [&](CLI::App* sub) {
        sub->add_option("file", targs.file, "triangulation JSON");
        sub->add_option("--fixture", targs.fixture, "built-in triangulation")->check(CLI::IsMember(fixture_names()));
    };
    auto* info = tri->add_subcommand("info", "validation, cell counts, orientability, links");
    add_input(info);
    info->callback([&] { exit_code = cmd_tri_info(cfg, targs); });
    auto* cycle = tri->add_subcommand("cycle", "alternated fundamental cycle");
    add_input(cycle);
    cycle->callback([&] { exit_code = cmd_tri_cycle(cfg, targs); });
    auto* cover = tri->add_subcommand("cover", "finite cover from a permutation spec");
    add_input(cover);
    cover->add_option("--spec", targs.spec, "cover spec JSON");
    cover->add_option("--characteristic", targs.characteristic, "x for the x-characteristic torus cover")
        ->check(CLI::PositiveNumber);
    cover->add_option("--cyclic", targs.cyclic, "degree of a cyclic cover")->check(CLI::PositiveNumber);
    cover->add_option("--cyclic-index", targs.cyclic_index, "which admissible cyclic spec")->check(CLI::NonNegativeNumber);
    cover->add_option("--emit", targs.emit, "write the cover triangulation JSON here");
    cover->callback([&] { exit_code = cmd_tri_cover(cfg, targs); });
    auto* dash = tri->add_subcommand("dashboard", "instance-level inequality checks");
    add_input(dash);
    dash->callback([&] { exit_code = cmd_tri_dashboard(cfg, targs); });

    auto* bounds = app.add_subcommand("bounds", "covering complexity bounds");
    bounds->require_subcommand(1);
    long long e = 0, chi = -2, h = 1;
    std::vector<long long> d_list{1, 10, 100, 1000};
    auto* seifert = bounds->add_subcommand("seifert", "(e + 6 d chi_- + 6) / d^2");
    seifert->add_option("--e", e)->capture_default_str();
    seifert->add_option("--chi", chi)->capture_default_str();
    seifert->add_option("--d", d_list)->delimiter(',')->capture_default_str();
    seifert->callback([&] { exit_code = cmd_seifert(cfg, e, chi, d_list); });

    double vA = 0, vB = 0, vC = 0, vD = 0;
    std::vector<long long> n_list{1, 10, 100, 1000};
    auto* jsj = bounds->add_subcommand("jsj", "d v_A + 2 h n (v_B + v_D) + h v_C with d = h n^2");
    jsj->add_option("--vA", vA)->required();
    jsj->add_option("--vB", vB)->capture_default_str();
    jsj->add_option("--vC", vC)->capture_default_str();
    jsj->add_option("--vD", vD)->capture_default_str();
    jsj->add_option("--copies", h, "h, the number of pieces")->capture_default_str();
    jsj->add_option("--n", n_list)->delimiter(',')->capture_default_str();
    jsj->callback([&] { exit_code = cmd_jsj(cfg, vA, vB, vC, vD, h, n_list); });

    std::string preset;
    auto* filling = bounds->add_subcommand("filling", "v_A + (v_B + v_D) / n");
    filling->add_option("--vA", vA);
    filling->add_option("--vB", vB)->capture_default_str();
    filling->add_option("--vD", vD)->capture_default_str();
    filling->add_option("--n", n_list)->delimiter(',')->capture_default_str();
    filling->add_option("--preset", preset, "figure-eight: v_A = c(N) = 2")->check(CLI::IsMember({"figure-eight"}));
    filling->callback([&] {
        if (preset == "figure-eight") vA = 2.0;
        exit_code = cmd_filling(cfg, vA, vB, vD, n_list);
    });

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& err) {
        return app.exit(err);
    } catch (const ParseError& err) {
        std::cerr << "parse error: " << err.what() << "\n";
        return 2;
    } catch (const InvalidTriangulation& err) {
        std::cerr << "error: " << err.what() << "\n";
        for (const auto& i : err.issues()) std::cerr << "  " << i << "\n";
        return 2;
    } catch (const std::exception& err) {
        std::cerr << "error: " << err.what() << "\n";
        return 2;
    }
    return exit_code;
}
