#include <doctest.h>

#include <algorithm>
#include <sstream>
#include <string>

#include "hypstab/errors.hpp"
#include "hypstab/fixtures.hpp"
#include "hypstab/io.hpp"

using namespace hypstab;

namespace {

std::string error_of(const std::string& text) {
    try {
        parse_klein_simplex(text);
    } catch (const ParseError& e) {
        return e.what();
    }
    return "";
}

bool starts_with(const std::string& s, const std::string& prefix) { return s.rfind(prefix, 0) == 0; }

bool same_triangulation(const Triangulation& a, const Triangulation& b) {
    if (a.dim() != b.dim() || a.simplex_count() != b.simplex_count()) return false;
    if (a.pairings().size() != b.pairings().size() || a.labels() != b.labels()) return false;
    for (std::size_t i = 0; i < a.pairings().size(); ++i) {
        const Pairing& p = a.pairings()[i];
        const Pairing& q = b.pairings()[i];
        if (p.a.simplex != q.a.simplex || p.a.facet != q.a.facet) return false;
        if (p.b.simplex != q.b.simplex || p.b.facet != q.b.facet) return false;
        if (p.map != q.map) return false;
    }
    return true;
}

}  // namespace

TEST_CASE("triangulation json round trip") {
    for (const auto& name : fixture_names()) {
        CAPTURE(name);
        const Triangulation T = fixture(name);
        const std::string text = to_json(T).dump(2);
        const Triangulation U = parse_triangulation(text);
        CHECK(same_triangulation(T, U));
        CHECK(to_json(U).dump() == to_json(T).dump());
    }
}

TEST_CASE("triangulation parse errors") {
    CHECK_THROWS_AS(parse_triangulation("{\"dim\": 2}"), ParseError);
    CHECK_THROWS_AS(parse_triangulation("{\"dim\": 2, \"simplices\": 1, \"pairings\": [{\"a\": [0], \"b\": [0, 1], "
                                        "\"map\": [0, 1, 2]}]}"),
                    ParseError);
    const std::string broken = "{\n  \"dim\": 2,\n  \"simplices\": 2,\n  \"pairings\": [,]\n}";
    try {
        parse_triangulation(broken);
        FAIL("expected a parse error");
    } catch (const ParseError& e) {
        CHECK(starts_with(e.what(), "line 4:"));
    }
}

TEST_CASE("cover spec uses 1-based permutations on the wire") {
    const CoverSpec spec = parse_cover_spec("{\"degree\": 3, \"perms\": {\"0\": [2, 3, 1], \"2\": [1, 2, 3]}}");
    CHECK(spec.degree == 3);
    REQUIRE(spec.perms.count(0) == 1);
    CHECK(spec.perms.at(0) == std::vector<int>{1, 2, 0});
    CHECK(spec.perms.at(2) == std::vector<int>{0, 1, 2});
    const CoverSpec back = parse_cover_spec(to_json(spec).dump());
    CHECK(back.degree == spec.degree);
    CHECK(back.perms == spec.perms);
    CHECK(to_json(spec)["perms"]["0"] == Json::array({2, 3, 1}));
    CHECK_THROWS_AS(parse_cover_spec("{\"degree\": 2, \"perms\": {\"x\": [2, 1]}}"), ParseError);
}

TEST_CASE("klein simplex parsing") {
    const KleinSimplex k = parse_klein_simplex(
        "{\"dim\": 2, \"vertices\": [{\"x\": [0, 0]}, {\"x\": [0.5, 0]}, {\"x\": [0, 1], \"ideal\": true}]}");
    CHECK(k.dim == 2);
    REQUIRE(k.points.size() == 3);
    CHECK(k.points[1][0] == 0.5);
    CHECK_FALSE(k.ideal[0]);
    CHECK(k.ideal[2]);
}

TEST_CASE("klein simplex errors carry line numbers") {
    const std::string wrong_arity =
        "{\n"
        "  \"dim\": 2,\n"
        "  \"vertices\": [\n"
        "    {\"x\": [0, 0]},\n"
        "    {\"x\": [0.5]},\n"
        "    {\"x\": [0, 0.5]}\n"
        "  ]\n"
        "}\n";
    CHECK(starts_with(error_of(wrong_arity), "line 5:"));

    const std::string bad_ideal =
        "{\n"
        "  \"dim\": 1,\n"
        "  \"vertices\": [\n"
        "    {\"x\": [0]},\n"
        "    {\"x\": [1], \"ideal\": \"yes\"}\n"
        "  ]\n"
        "}\n";
    CHECK(starts_with(error_of(bad_ideal), "line 5:"));

    const std::string too_few = "{\n  \"dim\": 3,\n  \"vertices\": [{\"x\": [0, 0, 0]}]\n}";
    CHECK(starts_with(error_of(too_few), "line 3:"));

    const std::string malformed = "{\n  \"dim\": 2,\n  \"vertices\": [\n    {\"x\": [0, 0}\n  ]\n}";
    CHECK(starts_with(error_of(malformed), "line 4:"));

    CHECK(starts_with(error_of("{\"vertices\": []}"), "line 1:"));
}

TEST_CASE("constants csv layout") {
    ConstantsRow r;
    r.n = 3;
    r.v = {1.0149416064096536, 0.0, 0, VolumeMethod::Series};
    r.alpha = 1.0471975511965976;
    r.k = 6;
    r.certified["v_n"] = Certification::Series;
    r.certified["alpha_n"] = Certification::Exact;
    r.error = "a, b\nc";
    const std::string csv = constants_csv({r});
    std::istringstream in(csv);
    std::string header, row;
    std::getline(in, header);
    std::getline(in, row);
    CHECK(starts_with(header, "n,v,v_std_error,alpha,k,delta,eta,a,eps,C,v_flag,alpha_flag"));
    CHECK(starts_with(row, "3,"));
    CHECK(std::stod(row.substr(2)) == r.v.value);
    const auto columns = [](const std::string& s) { return std::count(s.begin(), s.end(), ',') + 1; };
    CHECK(columns(header) == columns(row));
    CHECK(row.find("a; b c") != std::string::npos);
}

TEST_CASE("json output is deterministic") {
    const Dashboard d = inequality_dashboard(fixture("torus"), "torus");
    CHECK(to_json(d).dump() == to_json(inequality_dashboard(fixture("torus"), "torus")).dump());
    const ValidationReport v = validate(fixture("figure-eight"));
    const Json j = to_json(v);
    CHECK(j.dump() == to_json(validate(fixture("figure-eight"))).dump());
    CHECK(j.begin().key() == j.items().begin().key());
}
