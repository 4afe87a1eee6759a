#include "hypstab/io.hpp"

#include <algorithm>
#include <fstream>
#include <iomanip>
#include <sstream>

#include "hypstab/errors.hpp"

namespace hypstab {

namespace {

int line_of(const std::string& text, std::size_t byte) {
    byte = std::min(byte, text.size());
    return 1 + static_cast<int>(std::count(text.begin(), text.begin() + static_cast<std::ptrdiff_t>(byte), '\n'));
}

Json parse_json(const std::string& text) {
    try {
        return Json::parse(text);
    } catch (const nlohmann::json::parse_error& e) {
        throw ParseError("line " + std::to_string(line_of(text, e.byte == 0 ? 0 : e.byte - 1)) + ": " + e.what());
    }
}

// Line of the n-th occurrence (0-based) of a quoted key, for schema errors.
int key_line(const std::string& text, const std::string& key, int occurrence = 0) {
    const std::string needle = "\"" + key + "\"";
    std::size_t pos = 0;
    for (int i = 0; i <= occurrence; ++i) {
        pos = text.find(needle, i == 0 ? 0 : pos + 1);
        if (pos == std::string::npos) return 1;
    }
    return line_of(text, pos);
}

[[noreturn]] void schema_error(int line, const std::string& what) {
    throw ParseError("line " + std::to_string(line) + ": " + what);
}

std::string fmt(double x) {
    std::ostringstream os;
    os << std::setprecision(17) << x;
    return os.str();
}

Json slot_json(const Slot& s) { return Json::array({s.simplex, s.facet}); }

Json vec_json(const Eigen::VectorXd& v) {
    Json a = Json::array();
    for (Eigen::Index i = 0; i < v.size(); ++i) a.push_back(v[i]);
    return a;
}

Json counterexample_json(const Counterexample& c) {
    Json pts = Json::array();
    for (std::size_t i = 0; i < c.klein.size(); ++i)
        pts.push_back({{"x", vec_json(c.klein[i])}, {"ideal", static_cast<bool>(c.ideal[i])}});
    return {{"restart", c.restart}, {"kind", to_string(c.kind)}, {"t", c.t},
            {"volume", c.volume},   {"violation", c.violation},   {"vertices", pts}};
}

Json steps_json(const std::vector<BisectionStep>& steps) {
    Json a = Json::array();
    for (const auto& s : steps) a.push_back({{"lo", s.lo}, {"hi", s.hi}, {"mid", s.mid}, {"accepted", s.accepted}});
    return a;
}

}  // namespace

std::string read_text_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw InvalidArgument("cannot read '" + path + "'");
    std::ostringstream os;
    os << in.rdbuf();
    return os.str();
}

Triangulation parse_triangulation(const std::string& text) {
    const Json j = parse_json(text);
    try {
        const int dim = j.at("dim").get<int>();
        const int t = j.at("simplices").get<int>();
        std::vector<Pairing> pairings;
        for (const auto& p : j.at("pairings")) {
            const auto a = p.at("a").get<std::vector<int>>();
            const auto b = p.at("b").get<std::vector<int>>();
            if (a.size() != 2 || b.size() != 2) schema_error(key_line(text, "a", static_cast<int>(pairings.size())),
                                                             "slots must be [simplex, facet]");
            pairings.push_back({{a[0], a[1]}, {b[0], b[1]}, p.at("map").get<std::vector<int>>()});
        }
        std::vector<std::string> labels;
        if (j.contains("labels")) labels = j.at("labels").get<std::vector<std::string>>();
        return Triangulation(dim, t, std::move(pairings), std::move(labels));
    } catch (const nlohmann::json::exception& e) {
        schema_error(1, std::string("triangulation: ") + e.what());
    }
}

Json to_json(const Triangulation& T) {
    Json pairs = Json::array();
    for (const auto& p : T.pairings()) pairs.push_back({{"a", slot_json(p.a)}, {"b", slot_json(p.b)}, {"map", p.map}});
    Json j{{"dim", T.dim()}, {"simplices", T.simplex_count()}};
    if (!T.labels().empty()) j["labels"] = T.labels();
    j["pairings"] = pairs;
    return j;
}

CoverSpec parse_cover_spec(const std::string& text) {
    const Json j = parse_json(text);
    CoverSpec spec;
    try {
        spec.degree = j.at("degree").get<int>();
        if (j.contains("perms")) {
            for (const auto& [key, value] : j.at("perms").items()) {
                std::size_t used = 0;
                int id = -1;
                try {
                    id = std::stoi(key, &used);
                } catch (const std::exception&) {
                    used = 0;
                }
                if (used != key.size()) schema_error(key_line(text, key), "pairing id '" + key + "' is not an integer");
                std::vector<int> perm = value.get<std::vector<int>>();
                for (int& k : perm) --k;
                spec.perms[id] = std::move(perm);
            }
        }
    } catch (const nlohmann::json::exception& e) {
        schema_error(1, std::string("cover spec: ") + e.what());
    }
    return spec;
}

Json to_json(const CoverSpec& spec) {
    Json perms = Json::object();
    for (const auto& [p, perm] : spec.perms) {
        std::vector<int> one_based = perm;
        for (int& k : one_based) ++k;
        perms[std::to_string(p)] = one_based;
    }
    return {{"degree", spec.degree}, {"perms", perms}};
}

KleinSimplex parse_klein_simplex(const std::string& text) {
    const Json j = parse_json(text);
    KleinSimplex out;
    if (!j.is_object() || !j.contains("dim") || !j["dim"].is_number_integer())
        schema_error(key_line(text, "dim"), "missing integer \"dim\"");
    out.dim = j["dim"].get<int>();
    if (out.dim < 1) schema_error(key_line(text, "dim"), "\"dim\" must be >= 1");
    if (!j.contains("vertices") || !j["vertices"].is_array())
        schema_error(key_line(text, "vertices"), "missing array \"vertices\"");
    const Json& verts = j["vertices"];
    if (static_cast<int>(verts.size()) != out.dim + 1)
        schema_error(key_line(text, "vertices"), "expected " + std::to_string(out.dim + 1) + " vertices, got " +
                                                     std::to_string(verts.size()));
    for (std::size_t i = 0; i < verts.size(); ++i) {
        const Json& v = verts[i];
        const int line = key_line(text, "x", static_cast<int>(i));
        if (!v.is_object() || !v.contains("x") || !v["x"].is_array())
            schema_error(line, "vertex " + std::to_string(i) + " lacks an \"x\" array");
        if (static_cast<int>(v["x"].size()) != out.dim)
            schema_error(line, "vertex " + std::to_string(i) + " has " + std::to_string(v["x"].size()) +
                                   " coordinates, expected " + std::to_string(out.dim));
        Eigen::VectorXd x(out.dim);
        for (int k = 0; k < out.dim; ++k) {
            if (!v["x"][static_cast<std::size_t>(k)].is_number())
                schema_error(line, "vertex " + std::to_string(i) + " has a non-numeric coordinate");
            x[k] = v["x"][static_cast<std::size_t>(k)].get<double>();
        }
        bool ideal = false;
        if (v.contains("ideal")) {
            if (!v["ideal"].is_boolean()) schema_error(line, "\"ideal\" must be a boolean");
            ideal = v["ideal"].get<bool>();
        }
        out.points.push_back(std::move(x));
        out.ideal.push_back(ideal);
    }
    return out;
}

Json to_json(const VolumeEstimate& v) {
    return {{"value", v.value},
            {"std_error", v.std_error},
            {"samples", v.samples},
            {"method", to_string(v.method)},
            {"flag", to_string(certification_of(v.method))}};
}

Json to_json(const AlphaRow& r) {
    return {{"n", r.n},
            {"alpha", r.alpha},
            {"k", r.k},
            {"ratio", r.ratio},
            {"integer_ratio", r.integer_ratio},
            {"bracket_ok", r.bracket_ok},
            {"flag", to_string(Certification::Exact)}};
}

Json to_json(const AuditTrail& a) {
    Json pool = Json::array(), audit_pool = Json::array();
    for (const auto& c : a.pool) pool.push_back(counterexample_json(c));
    for (const auto& c : a.audit_pool) audit_pool.push_back(counterexample_json(c));
    return {{"n", a.n},
            {"a", a.a},
            {"delta", a.delta},
            {"v_reference", a.v_reference},
            {"cubature_order", a.cubature_order},
            {"regular_angle_violation", a.regular_angle_violation},
            {"regular_clearance_violation", a.regular_clearance_violation},
            {"regular_passes", a.regular_passes()},
            {"eps_angle", a.eps_angle},
            {"eps_clearance", a.eps_clearance},
            {"monotone_ok", a.monotone_ok},
            {"angle_steps", steps_json(a.angle_steps)},
            {"clearance_steps", steps_json(a.clearance_steps)},
            {"pool", pool},
            {"audit_pool", audit_pool}};
}

Json to_json(const ConstantsRow& r, bool include_audit) {
    auto flag = [&](const std::string& key) {
        auto it = r.certified.find(key + "_n");
        return it == r.certified.end() ? std::string() : to_string(it->second);
    };
    auto value = [&](const std::string& key, double x) { return Json{{"value", x}, {"flag", flag(key)}}; };
    Json j{{"n", r.n}};
    j["v"] = {{"value", r.v.value}, {"std_error", r.v.std_error}, {"samples", r.v.samples}, {"flag", flag("v")}};
    j["alpha"] = value("alpha", r.alpha);
    j["k"] = {{"value", r.k}, {"flag", flag("k")}};
    j["delta"] = value("delta", r.delta);
    j["eta"] = value("eta", r.eta);
    j["a"] = value("a", r.a);
    j["eps"] = value("eps", r.eps);
    j["C"] = value("C", r.C);
    j["error"] = r.error;
    if (include_audit && r.audit) j["audit"] = to_json(*r.audit);
    return j;
}

Json to_json(const ValidationReport& r) {
    Json boundary = Json::array();
    for (const auto& s : r.boundary) boundary.push_back(slot_json(s));
    return {{"valid", r.valid}, {"closed", r.closed}, {"boundary", boundary}, {"issues", r.issues}};
}

Json to_json(const Dashboard& d) {
    Json checks = Json::array();
    for (const auto& c : d.checks)
        checks.push_back({{"name", c.name}, {"lhs", c.lhs}, {"rhs", c.rhs}, {"holds", c.holds}, {"flag", "exact"}});
    return {{"dim", d.dim},
            {"t", d.t},
            {"euler", d.euler},
            {"closed", d.closed},
            {"orientable", d.orientable},
            {"l1_norm", d.l1_norm},
            {"cycle_verified", d.cycle_verified},
            {"checks", checks},
            {"annotations", d.annotations}};
}

std::string constants_csv(const std::vector<ConstantsRow>& rows) {
    static const std::vector<std::string> keys{"v", "alpha", "k", "delta", "eta", "a", "eps", "C"};
    std::ostringstream os;
    os << "n,v,v_std_error,alpha,k,delta,eta,a,eps,C";
    for (const auto& k : keys) os << "," << k << "_flag";
    os << ",error\n";
    for (const auto& r : rows) {
        os << r.n << "," << fmt(r.v.value) << "," << fmt(r.v.std_error) << "," << fmt(r.alpha) << "," << r.k << ","
           << fmt(r.delta) << "," << fmt(r.eta) << "," << fmt(r.a) << "," << fmt(r.eps) << "," << fmt(r.C);
        for (const auto& k : keys) {
            auto it = r.certified.find(k + "_n");
            os << "," << (it == r.certified.end() ? "" : to_string(it->second));
        }
        std::string err = r.error;
        std::replace(err.begin(), err.end(), ',', ';');
        std::replace(err.begin(), err.end(), '\n', ' ');
        os << "," << err << "\n";
    }
    return os.str();
}

}  // namespace hypstab
