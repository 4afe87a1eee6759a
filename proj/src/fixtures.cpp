#include "hypstab/fixtures.hpp"

#include <map>

#include "hypstab/errors.hpp"
#include "hypstab/io.hpp"

namespace hypstab {

namespace {

const std::map<std::string, std::string>& table() {
    static const std::map<std::string, std::string> t{
        {"sphere", R"({"dim": 2, "simplices": 2, "pairings": [
            {"a": [0, 0], "b": [1, 0], "map": [1, 2]},
            {"a": [0, 1], "b": [1, 1], "map": [0, 2]},
            {"a": [0, 2], "b": [1, 2], "map": [0, 1]}]})"},
        // Triangles (00,10,11) and (00,01,11) of the unit square.
        {"torus", R"({"dim": 2, "simplices": 2, "pairings": [
            {"a": [0, 2], "b": [1, 0], "map": [1, 2]},
            {"a": [0, 0], "b": [1, 2], "map": [0, 1]},
            {"a": [0, 1], "b": [1, 1], "map": [0, 2]}]})"},
        {"klein-bottle", R"({"dim": 2, "simplices": 2, "pairings": [
            {"a": [0, 2], "b": [1, 0], "map": [2, 1]},
            {"a": [0, 0], "b": [1, 2], "map": [0, 1]},
            {"a": [0, 1], "b": [1, 1], "map": [0, 2]}]})"},
        // Boundary of the 4-simplex; tetrahedron i omits vertex i.
        {"s3", R"({"dim": 3, "simplices": 5, "pairings": [
            {"a": [0, 0], "b": [1, 0], "map": [1, 2, 3]},
            {"a": [0, 1], "b": [2, 0], "map": [1, 2, 3]},
            {"a": [0, 2], "b": [3, 0], "map": [1, 2, 3]},
            {"a": [0, 3], "b": [4, 0], "map": [1, 2, 3]},
            {"a": [1, 1], "b": [2, 1], "map": [0, 2, 3]},
            {"a": [1, 2], "b": [3, 1], "map": [0, 2, 3]},
            {"a": [1, 3], "b": [4, 1], "map": [0, 2, 3]},
            {"a": [2, 2], "b": [3, 2], "map": [0, 1, 3]},
            {"a": [2, 3], "b": [4, 2], "map": [0, 1, 3]},
            {"a": [3, 3], "b": [4, 3], "map": [0, 1, 2]}]})"},
        // Two ideal tetrahedra; the standard census gluing.
        {"figure-eight", R"({"dim": 3, "simplices": 2, "labels": ["r", "s"], "pairings": [
            {"a": [0, 0], "b": [1, 1], "map": [3, 0, 2]},
            {"a": [0, 1], "b": [1, 0], "map": [2, 3, 1]},
            {"a": [0, 2], "b": [1, 2], "map": [0, 3, 1]},
            {"a": [0, 3], "b": [1, 3], "map": [2, 1, 0]}]})"},
        {"disk", R"({"dim": 2, "simplices": 2, "pairings": [
            {"a": [0, 0], "b": [1, 0], "map": [1, 2]}]})"},
    };
    return t;
}

}  // namespace

std::vector<std::string> fixture_names() {
    return {"sphere", "torus", "klein-bottle", "s3", "figure-eight", "disk"};
}

const std::string& fixture_json(const std::string& name) {
    auto it = table().find(name);
    if (it == table().end()) throw InvalidArgument("unknown fixture '" + name + "'");
    return it->second;
}

Triangulation fixture(const std::string& name) { return parse_triangulation(fixture_json(name)); }

}  // namespace hypstab
