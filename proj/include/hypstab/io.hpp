#pragma once

#include <string>
#include <vector>

#include <Eigen/Dense>
#include <json.hpp>

#include "hypstab/bounds.hpp"
#include "hypstab/constants.hpp"
#include "hypstab/cover.hpp"
#include "hypstab/triangulation.hpp"
#include "hypstab/volume.hpp"

namespace hypstab {

using Json = nlohmann::ordered_json;

/// Whole file as a string; throws InvalidArgument when unreadable.
std::string read_text_file(const std::string& path);

/// Wire format: {"dim", "simplices", "pairings": [{"a", "b", "map"}], "labels"?}.
Triangulation parse_triangulation(const std::string& text);
Json to_json(const Triangulation& T);

/// {"degree": d, "perms": {"<pairing id>": [1-based one-line permutation]}}.
CoverSpec parse_cover_spec(const std::string& text);
Json to_json(const CoverSpec& spec);

struct KleinSimplex {
    int dim = 0;
    std::vector<Eigen::VectorXd> points;
    std::vector<bool> ideal;
};

/// {"dim": n, "vertices": [{"x": [...], "ideal": bool}, ...]}; ParseError messages carry the line number.
KleinSimplex parse_klein_simplex(const std::string& text);

Json to_json(const VolumeEstimate& v);
Json to_json(const AlphaRow& r);
Json to_json(const AuditTrail& a);
Json to_json(const ConstantsRow& r, bool include_audit = true);
Json to_json(const ValidationReport& r);
Json to_json(const Dashboard& d);

/// One line per row; columns n, value columns, then one flag column per value.
std::string constants_csv(const std::vector<ConstantsRow>& rows);

}  // namespace hypstab
