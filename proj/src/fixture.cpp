#include "steinhaus/fixture.hpp"

#include <array>

namespace steinhaus {

namespace {

// Numerators over 3, row by row as the set is usually tabulated.
constexpr std::array<std::array<std::int64_t, 3>, 27> kNumerators{{
    {3, 6, 6}, {6, 6, 1}, {3, 6, 5},
    {6, 1, 6}, {0, 1, 1}, {6, 1, 5},
    {3, 5, 6}, {6, 5, 1}, {3, 5, 5},
    {1, 6, 6}, {7, 6, 1}, {1, 6, 5},
    {7, 1, 6}, {4, 1, 1}, {7, 1, 5},
    {1, 5, 6}, {7, 5, 1}, {1, 5, 5},
    {2, 0, 0}, {2, 0, 1}, {2, 0, 2},
    {2, 1, 0}, {2, 1, 1}, {2, 1, 2},
    {2, 2, 0}, {2, 2, 1}, {2, 2, 2},
}};

}  // namespace

std::vector<RationalPoint> fixture_points() {
  std::vector<RationalPoint> pts;
  pts.reserve(kNumerators.size());
  for (const auto& n : kNumerators) pts.push_back({{n[0], n[1], n[2]}, 3});
  return pts;
}

PartialMap fixture_map() {
  const auto pts = fixture_points();
  return from_point_set(pts, 3);
}

}  // namespace steinhaus
