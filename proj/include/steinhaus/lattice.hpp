#pragma once

#include <array>
#include <compare>
#include <cstdint>
#include <ostream>
#include <vector>

#include "steinhaus/gf.hpp"

namespace steinhaus {

/// Integer vector in Z^3.
struct IntVec3 {
  std::int64_t x = 0;
  std::int64_t y = 0;
  std::int64_t z = 0;

  std::int64_t operator[](int i) const { return i == 0 ? x : (i == 1 ? y : z); }
  std::int64_t& operator[](int i) { return i == 0 ? x : (i == 1 ? y : z); }

  friend IntVec3 operator+(IntVec3 a, IntVec3 b) { return {a.x + b.x, a.y + b.y, a.z + b.z}; }
  friend IntVec3 operator-(IntVec3 a, IntVec3 b) { return {a.x - b.x, a.y - b.y, a.z - b.z}; }
  friend IntVec3 operator*(std::int64_t s, IntVec3 a) { return {s * a.x, s * a.y, s * a.z}; }
  friend auto operator<=>(const IntVec3&, const IntVec3&) = default;
};

inline std::int64_t dot(IntVec3 a, IntVec3 b) { return a.x * b.x + a.y * b.y + a.z * b.z; }
inline std::int64_t norm2(IntVec3 a) { return dot(a, a); }
inline bool is_zero(IntVec3 a) { return a.x == 0 && a.y == 0 && a.z == 0; }

std::ostream& operator<<(std::ostream& os, IntVec3 v);

/// A point of the cube X_m = {0..m-1}^3.
class CubePoint {
 public:
  /// Throws InvalidArgument if any coordinate lies outside [0, m).
  CubePoint(IntVec3 coords, std::int64_t m);

  const IntVec3& coords() const noexcept { return v_; }
  std::int64_t modulus() const noexcept { return m_; }
  std::int64_t operator[](int i) const { return v_[i]; }

  /// Position a*m^2 + b*m + c in lexicographic order.
  std::int64_t index() const noexcept { return (v_.x * m_ + v_.y) * m_ + v_.z; }
  static CubePoint from_index(std::int64_t index, std::int64_t m);

  friend auto operator<=>(const CubePoint&, const CubePoint&) = default;

 private:
  IntVec3 v_;
  std::int64_t m_;
};

inline std::int64_t cube_index(IntVec3 v, std::int64_t m) { return (v.x * m + v.y) * m + v.z; }
inline IntVec3 cube_point(std::int64_t index, std::int64_t m) {
  return {index / (m * m), (index / m) % m, index % m};
}

/// v = y + m*eps with y in X_m.
struct Decomposition {
  CubePoint y;
  IntVec3 eps;
  std::int64_t m;

  IntVec3 reconstruct() const { return y.coords() + m * eps; }
};

/// Componentwise division with non-negative remainder. Throws InvalidModulus for m <= 1.
Decomposition decompose(IntVec3 v, std::int64_t m);

/// Remainder part y(v) only; m > 0.
inline IntVec3 reduce(IntVec3 v, std::int64_t m) {
  return {mod_floor(v.x, m), mod_floor(v.y, m), mod_floor(v.z, m)};
}

/// Nonzero lambda in X_p with |lambda|^2 = d*p (mod p^2).
class IsoVector {
 public:
  /// Throws InvalidArgument unless lambda is a nonzero point of X_p with p | |lambda|^2.
  IsoVector(IntVec3 lambda, Prime p);

  const IntVec3& lambda() const noexcept { return lambda_; }
  Prime prime() const noexcept { return p_; }
  FpElement d() const noexcept { return FpElement(d_, p_); }
  std::int64_t d_value() const noexcept { return d_; }

  /// alpha * lambda reduced componentwise into X_p (alpha nonzero mod p).
  IsoVector scaled(std::int64_t alpha) const;

  friend bool operator==(const IsoVector& a, const IsoVector& b) {
    return a.lambda_ == b.lambda_ && a.p_ == b.p_;
  }
  friend auto operator<=>(const IsoVector& a, const IsoVector& b) { return a.lambda_ <=> b.lambda_; }

 private:
  IntVec3 lambda_;
  Prime p_;
  std::int64_t d_;
};

/// Point of P^2(GF(p)) with first nonzero coordinate 1.
class ProjectivePoint {
 public:
  /// Normalizes any nonzero triple; throws InvalidArgument on (0,0,0) mod p.
  ProjectivePoint(IntVec3 coords, Prime p);

  const IntVec3& coords() const noexcept { return v_; }
  friend auto operator<=>(const ProjectivePoint& a, const ProjectivePoint& b) { return a.v_ <=> b.v_; }
  friend bool operator==(const ProjectivePoint& a, const ProjectivePoint& b) { return a.v_ == b.v_; }

 private:
  IntVec3 v_;
};

/// Two-dimensional complement C_lambda of the line spanned by lambda.
struct ComplementPlane {
  IsoVector lambda;
  std::array<IntVec3, 2> basis;
  std::vector<CubePoint> points;  // sorted, p^2 entries
};

/// All nonzero isotropic vectors of X_p, sorted lexicographically.
std::vector<IsoVector> enumerate_lambda(Prime p);

/// Projective solutions of x^2+y^2+z^2 = 0 via the line-sweep parametrization,
/// cross-checked against brute force (mismatch throws std::logic_error).
std::vector<ProjectivePoint> conic_points(Prime p);

/// Brute-force projective enumeration of the conic.
std::vector<ProjectivePoint> conic_points_bruteforce(Prime p);

/// Base point (1, beta, gamma) on the conic: first beta with -(1+beta^2) a square.
IntVec3 conic_base_point(Prime p);

/// One representative in X_p per conic point; p+1 entries.
std::vector<IsoVector> build_w(Prime p);

/// Canonical complement: drop the first index where lambda is nonzero.
ComplementPlane complement_plane(const IsoVector& lambda);

/// True iff lambda is not in the GF(p)-span of the two basis vectors.
bool is_direct_sum(const IsoVector& lambda, const std::array<IntVec3, 2>& basis);

}  // namespace steinhaus
