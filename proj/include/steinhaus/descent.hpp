#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "steinhaus/core.hpp"

namespace steinhaus {

using BigInt = boost::multiprecision::cpp_int;

enum class SquaresDimension { Two, Three, FourPlus };

struct LatticeDistanceAnswer {
  bool representable = false;
  /// Integer vector with |v|^2 = N when representable (2, 3 or 4 entries).
  std::vector<std::int64_t> witness;
};

/// Is N a sum of 2, 3 or 4 integer squares? Decided by the classical
/// criteria; every positive answer carries a witness found by search.
LatticeDistanceAnswer is_squared_lattice_distance(std::int64_t n, SquaresDimension dim);

/// The classical three-square criterion alone: N is not 4^a(8b+7).
bool is_sum_of_three_squares(std::int64_t n);

/// Rational point num/den on the sphere |P|^2 = n_value, reduced so that
/// gcd(num, den) = 1.
struct SphereRationalPoint {
  std::array<BigInt, 3> num;
  BigInt den;
  BigInt n_value;

  /// Throws NotOnSphere unless |num|^2 = n_value * den^2 and den > 0.
  static SphereRationalPoint make(std::array<BigInt, 3> num, BigInt den, BigInt n_value);
  static SphereRationalPoint from(const RationalPoint& p, std::int64_t n_value);
};

/// One descent step, recorded before moving P.
struct DescentStep {
  BigInt den;
  IntVec3 nearest;
  /// |P - Z|^2 as an exact fraction.
  BigInt gap_num;
  BigInt gap_den;
};

struct DescentResult {
  IntVec3 vector;
  std::vector<DescentStep> steps;
};

/// Moves P to the second intersection of the line through P and its nearest
/// lattice point until P is integral. Throws NotOnSphere on bad input.
IntVec3 descend(const SphereRationalPoint& start);
DescentResult descend_traced(const SphereRationalPoint& start);

/// Rational point on the sphere of squared radius N with den > 1 (den = 1
/// only for N = 0). Throws NotRepresentable when N is not a sum of three squares.
SphereRationalPoint random_sphere_rational(std::int64_t n, std::uint64_t seed);

}  // namespace steinhaus
