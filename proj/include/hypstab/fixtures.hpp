#pragma once

#include <string>
#include <vector>

#include "hypstab/triangulation.hpp"

namespace hypstab {

/// Names of the built-in triangulations: sphere, torus, klein-bottle, s3, figure-eight, disk.
std::vector<std::string> fixture_names();

/// Wire-format JSON of a built-in triangulation.
const std::string& fixture_json(const std::string& name);

Triangulation fixture(const std::string& name);

}  // namespace hypstab
