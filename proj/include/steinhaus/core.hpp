#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <variant>
#include <vector>

#include "steinhaus/error.hpp"
#include "steinhaus/lattice.hpp"

namespace steinhaus {

/// L : X_m -> X_m, possibly partially assigned. Entry for x = (a,b,c) sits
/// at a*m^2 + b*m + c. The associated point is F(x) = x/m + L(x).
class PartialMap {
 public:
  /// All m^3 entries unassigned. m >= 1 (m = 1 only arises from restriction).
  explicit PartialMap(std::int64_t m);

  static PartialMap constant(std::int64_t m, IntVec3 value);
  /// Complete map from m^3 values in lexicographic order.
  static PartialMap from_values(std::int64_t m, std::span<const IntVec3> values);

  std::int64_t modulus() const noexcept { return m_; }
  std::int64_t size() const noexcept { return static_cast<std::int64_t>(entries_.size()); }

  const std::optional<IntVec3>& at(std::int64_t index) const { return entries_.at(index); }
  const std::optional<IntVec3>& at(IntVec3 x) const { return at(cube_index(x, m_)); }

  /// Assigned value at x; throws IncompleteMap if unassigned.
  IntVec3 value(std::int64_t index) const;
  IntVec3 value(IntVec3 x) const { return value(cube_index(x, m_)); }

  /// Throws InvalidArgument if x or value lies outside X_m.
  void set(IntVec3 x, IntVec3 value);
  void set(std::int64_t index, IntVec3 value);
  void clear(std::int64_t index) { entries_.at(index).reset(); }

  bool complete() const;
  std::int64_t assigned_count() const;
  const std::vector<std::optional<IntVec3>>& entries() const noexcept { return entries_; }

  friend bool operator==(const PartialMap&, const PartialMap&) = default;

 private:
  std::int64_t m_;
  std::vector<std::optional<IntVec3>> entries_;
};

/// L : X_m -> Z^3 before normalization.
struct RawMap {
  std::int64_t m;
  std::vector<IntVec3> values;  // m^3, lexicographic
};

/// Point of Q^3 as num/den, den > 0. Not necessarily reduced.
struct RationalPoint {
  IntVec3 num;
  std::int64_t den = 1;

  friend bool operator==(const RationalPoint& a, const RationalPoint& b) {
    return a.den * b.num.x == b.den * a.num.x && a.den * b.num.y == b.den * a.num.y &&
           a.den * b.num.z == b.den * a.num.z;
  }
};

std::ostream& operator<<(std::ostream& os, const RationalPoint& p);

/// Two points whose squared distance is an integer.
struct PairWitness {
  IntVec3 x;
  IntVec3 z;
  std::int64_t squared_distance;
};

/// Same, for a point set given by rational coordinates.
struct PointPairWitness {
  RationalPoint a;
  RationalPoint b;
  std::int64_t squared_distance;
};

/// pi^lambda_x takes the same value at t and s (t < s).
struct PermutationWitness {
  IntVec3 lambda;
  IntVec3 x;
  std::int64_t t;
  std::int64_t s;
  std::int64_t value;
};

struct Verdict {
  bool valid = true;
  std::variant<std::monostate, PairWitness, PointPairWitness, PermutationWitness> witness;
  /// Number of pi tables (or pairs) examined.
  std::int64_t checks = 0;

  explicit operator bool() const noexcept { return valid; }
};

struct PiTable {
  IsoVector lambda;
  CubePoint x;
  std::vector<std::int64_t> values;  // values[t] = pi(t), length p

  bool is_permutation() const;
  /// First (t, s), t < s, with equal values.
  std::optional<std::pair<std::int64_t, std::int64_t>> first_collision() const;
};

/// pi^lambda_x(t) = t d/2 + lambda . [L(y(x + t lambda)) - eps(x + t lambda)] mod p.
/// x may be any integer vector; the formula reduces x + t*lambda itself.
std::int64_t pi_value(const PartialMap& L, const IsoVector& lambda, IntVec3 x, std::int64_t t);

PiTable pi_table(const PartialMap& L, const IsoVector& lambda, const CubePoint& x);

/// Condition (+) over all pairs, as |(z-x) + m(L(z)-L(x))|^2 mod m^2.
Verdict verify_bruteforce(const PartialMap& L);
Verdict verify_condition_plus(const RawMap& L);

/// (p+1)p^2 permutation tests over lambda in W, x in C_lambda.
Verdict verify_perms(const PartialMap& L);

/// Permutation test over every lambda in Lambda and every x in X_p.
Verdict verify_all_perms(const PartialMap& L);

/// Cosets (as points of X_m) that are missing, hit twice, or not hit at all.
class CosetCoverageError : public Error {
 public:
  CosetCoverageError(std::vector<IntVec3> missing, std::vector<IntVec3> duplicated,
                     std::vector<RationalPoint> stray);

  const std::vector<IntVec3>& missing() const noexcept { return missing_; }
  const std::vector<IntVec3>& duplicated() const noexcept { return duplicated_; }
  /// Points lying in no coset (1/m)x + Z^3.
  const std::vector<RationalPoint>& stray() const noexcept { return stray_; }

 private:
  std::vector<IntVec3> missing_;
  std::vector<IntVec3> duplicated_;
  std::vector<RationalPoint> stray_;
};

/// Checks one point per coset, then that no squared distance is an integer.
Verdict verify_point_set(std::span<const RationalPoint> points, std::int64_t m);

/// Point set {x/m + L(x)} with common denominator m.
std::vector<RationalPoint> to_point_set(const PartialMap& L);

/// Inverse of to_point_set; coverage failures throw CosetCoverageError.
PartialMap from_point_set(std::span<const RationalPoint> points, std::int64_t m);

/// Replaces each value by its remainder y(L(x)).
PartialMap normalize_map(const RawMap& raw);

/// Selects from each coset x'/m' + Z^3 the point of the m-set lying in it.
PartialMap restrict_map(const PartialMap& L, std::int64_t m_prime);

/// One identity evaluated at every t in GF(p).
struct IdentityCheck {
  bool evaluated = false;
  std::vector<std::int64_t> lhs;
  std::vector<std::int64_t> rhs;

  bool holds() const { return evaluated && lhs == rhs; }
  /// First t where the sides differ.
  std::optional<std::int64_t> first_failure() const;
};

/// Translation identity pi_x(t+a) = a d/2 + pi_{x+a lambda}(t) and scaling
/// identity pi_x^lambda(alpha t) = pi_x^{alpha lambda}(t), with subscripts
/// reduced into X_p and alpha*lambda reduced componentwise mod p. The
/// corrected forms are what holds exactly under that reduction:
///   pi_x(t+a) = a d/2 + pi_{y(x+a lambda)}(t) - lambda . eps(x+a lambda)
///   pi_x^{alpha lambda}(t) = alpha * pi_x^lambda(alpha t)
struct PiIdentityReport {
  IdentityCheck translation;
  IdentityCheck scaling;  // not evaluated when alpha = 0
  IdentityCheck translation_corrected;
  IdentityCheck scaling_corrected;
  /// Translation identity with the subscript x + a lambda left unreduced.
  IdentityCheck translation_unreduced;
};

PiIdentityReport pi_identity_check(const PartialMap& L, const IsoVector& lambda, const CubePoint& x,
                            FpElement a, FpElement alpha);

}  // namespace steinhaus
