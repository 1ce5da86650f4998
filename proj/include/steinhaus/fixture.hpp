#pragma once

#include <vector>

#include "steinhaus/core.hpp"

namespace steinhaus {

/// The known 27-point 3-partial Steinhaus set, all coordinates over 3.
std::vector<RationalPoint> fixture_points();

/// The same set as a map L : X_3 -> X_3.
PartialMap fixture_map();

}  // namespace steinhaus
