#include "steinhaus/lattice.hpp"

#include <algorithm>
#include <set>
#include <stdexcept>
#include <string>

#include "steinhaus/error.hpp"

namespace steinhaus {

std::ostream& operator<<(std::ostream& os, IntVec3 v) {
  return os << '(' << v.x << ',' << v.y << ',' << v.z << ')';
}

CubePoint::CubePoint(IntVec3 coords, std::int64_t m) : v_(coords), m_(m) {
  if (m < 1) throw Error(ErrorCode::InvalidModulus, "cube modulus must be positive");
  for (int i = 0; i < 3; ++i) {
    if (v_[i] < 0 || v_[i] >= m) {
      throw Error(ErrorCode::InvalidArgument,
                  "coordinate " + std::to_string(v_[i]) + " outside [0," + std::to_string(m) + ")");
    }
  }
}

CubePoint CubePoint::from_index(std::int64_t index, std::int64_t m) {
  return CubePoint(cube_point(index, m), m);
}

Decomposition decompose(IntVec3 v, std::int64_t m) {
  if (m <= 1) throw Error(ErrorCode::InvalidModulus, "m must exceed 1, got " + std::to_string(m));
  IntVec3 eps{div_floor(v.x, m), div_floor(v.y, m), div_floor(v.z, m)};
  return {CubePoint(reduce(v, m), m), eps, m};
}

IsoVector::IsoVector(IntVec3 lambda, Prime p) : lambda_(lambda), p_(p), d_(0) {
  const std::int64_t q = p.value();
  static_cast<void>(CubePoint(lambda, q));  // range check
  if (is_zero(lambda)) throw Error(ErrorCode::InvalidArgument, "lambda must be nonzero");
  const std::int64_t n = norm2(lambda);
  if (n % q != 0) {
    throw Error(ErrorCode::InvalidArgument, "|lambda|^2 is not divisible by p");
  }
  d_ = mod_floor(n / q, q);
}

IsoVector IsoVector::scaled(std::int64_t alpha) const {
  return IsoVector(reduce(alpha * lambda_, p_.value()), p_);
}

ProjectivePoint::ProjectivePoint(IntVec3 coords, Prime p) {
  const std::int64_t q = p.value();
  v_ = reduce(coords, q);
  int lead = 0;
  while (lead < 3 && v_[lead] == 0) ++lead;
  if (lead == 3) throw Error(ErrorCode::InvalidArgument, "projective point cannot be zero");
  const std::int64_t inv = mod_inv(FpElement(v_[lead], p)).value();
  v_ = reduce(inv * v_, q);
}

std::vector<IsoVector> enumerate_lambda(Prime p) {
  const std::int64_t q = p.value();
  std::vector<IsoVector> out;
  for (std::int64_t i = 1; i < q * q * q; ++i) {
    const IntVec3 v = cube_point(i, q);
    if (norm2(v) % q == 0) out.emplace_back(v, p);
  }
  return out;
}

std::vector<ProjectivePoint> conic_points_bruteforce(Prime p) {
  const std::int64_t q = p.value();
  std::set<ProjectivePoint> found;
  for (std::int64_t i = 1; i < q * q * q; ++i) {
    const IntVec3 v = cube_point(i, q);
    if (norm2(v) % q == 0) found.emplace(v, p);
  }
  return {found.begin(), found.end()};
}

IntVec3 conic_base_point(Prime p) {
  for (std::int64_t beta = 0; beta < p.value(); ++beta) {
    const auto roots = sqrt_mod(FpElement(-(1 + beta * beta), p));
    if (!roots.empty()) return {1, beta, roots.front().value()};
  }
  // (p+1)/2 values of 1+beta^2 against (p+1)/2 values of -gamma^2.
  throw std::logic_error("no base point on conic");
}

std::vector<ProjectivePoint> conic_points(Prime p) {
  const std::int64_t q = p.value();
  const IntVec3 base = conic_base_point(p);
  const std::int64_t a = base.x, b = base.y, g = base.z;
  std::set<ProjectivePoint> pts;
  pts.emplace(IntVec3{a, -b, g}, p);  // vertical line
  for (std::int64_t t = 0; t < q; ++t) {
    const IntVec3 v{a * t * t - 2 * b * t - a, -b * t * t - 2 * a * t + b, g * (1 + t * t)};
    if (is_zero(reduce(v, q))) {
      throw std::logic_error("conic sweep degenerated at t=" + std::to_string(t));
    }
    pts.emplace(v, p);
  }
  std::vector<ProjectivePoint> out(pts.begin(), pts.end());
  if (out != conic_points_bruteforce(p) || static_cast<std::int64_t>(out.size()) != q + 1) {
    throw std::logic_error("conic parametrization disagrees with brute force for p=" +
                           std::to_string(q));
  }
  return out;
}

std::vector<IsoVector> build_w(Prime p) {
  std::vector<IsoVector> w;
  for (const auto& pt : conic_points(p)) w.emplace_back(pt.coords(), p);
  return w;
}

bool is_direct_sum(const IsoVector& lambda, const std::array<IntVec3, 2>& basis) {
  const std::int64_t q = lambda.prime().value();
  for (std::int64_t s = 0; s < q; ++s) {
    for (std::int64_t t = 0; t < q; ++t) {
      if (reduce(s * basis[0] + t * basis[1], q) == lambda.lambda()) return false;
    }
  }
  return true;
}

ComplementPlane complement_plane(const IsoVector& lambda) {
  const std::int64_t q = lambda.prime().value();
  int lead = 0;
  while (lambda.lambda()[lead] == 0) ++lead;
  std::array<IntVec3, 2> basis{};
  int k = 0;
  for (int i = 0; i < 3; ++i) {
    if (i == lead) continue;
    IntVec3 e{};
    e[i] = 1;
    basis[k++] = e;
  }
  std::vector<CubePoint> points;
  points.reserve(static_cast<std::size_t>(q * q));
  for (std::int64_t s = 0; s < q; ++s) {
    for (std::int64_t t = 0; t < q; ++t) {
      points.emplace_back(reduce(s * basis[0] + t * basis[1], q), q);
    }
  }
  std::sort(points.begin(), points.end());
  return {lambda, basis, std::move(points)};
}

}  // namespace steinhaus
