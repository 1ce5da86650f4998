#include "steinhaus/descent.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>
#include <stdexcept>

namespace steinhaus {

namespace {

std::int64_t isqrt(std::int64_t n) {
  auto r = static_cast<std::int64_t>(std::sqrt(static_cast<double>(n)));
  while (r * r > n) --r;
  while ((r + 1) * (r + 1) <= n) ++r;
  return r;
}

bool is_square(std::int64_t n, std::int64_t& root) {
  if (n < 0) return false;
  root = isqrt(n);
  return root * root == n;
}

std::optional<std::vector<std::int64_t>> two_squares(std::int64_t n) {
  for (std::int64_t a = 0; 2 * a * a <= n; ++a) {
    std::int64_t b = 0;
    if (is_square(n - a * a, b)) return std::vector<std::int64_t>{a, b};
  }
  return std::nullopt;
}

std::optional<std::vector<std::int64_t>> three_squares(std::int64_t n) {
  for (std::int64_t a = 0; 3 * a * a <= n; ++a) {
    if (auto rest = two_squares(n - a * a)) return std::vector<std::int64_t>{a, (*rest)[0], (*rest)[1]};
  }
  return std::nullopt;
}

std::vector<std::int64_t> four_squares(std::int64_t n) {
  for (std::int64_t a = 0; 4 * a * a <= n; ++a) {
    if (auto rest = three_squares(n - a * a)) {
      return {a, (*rest)[0], (*rest)[1], (*rest)[2]};
    }
  }
  throw std::logic_error("four-square search failed");
}

bool is_sum_of_two_squares(std::int64_t n) {
  if (n == 0) return true;
  for (std::int64_t q = 2; q * q <= n; ++q) {
    int e = 0;
    while (n % q == 0) {
      n /= q;
      ++e;
    }
    if (q % 4 == 3 && e % 2 == 1) return false;
  }
  return n % 4 != 3;
}

BigInt gcd_all(const std::array<BigInt, 3>& num, const BigInt& den) {
  BigInt g = den;
  for (const auto& c : num) g = boost::multiprecision::gcd(g, c);
  return g;
}

// Nearest integer to a/b (b > 0), halves rounded toward -infinity.
BigInt nearest(const BigInt& a, const BigInt& b) {
  // ceil((2a - b) / 2b)
  const BigInt n = 2 * a - b;
  const BigInt d = 2 * b;
  BigInt q = n / d;
  if (n % d != 0 && n > 0) ++q;
  return q;
}

std::int64_t to_i64(const BigInt& v) {
  if (v > std::numeric_limits<std::int64_t>::max() || v < std::numeric_limits<std::int64_t>::min()) {
    throw std::overflow_error("coordinate exceeds 64 bits");
  }
  return static_cast<std::int64_t>(v);
}

}  // namespace

bool is_sum_of_three_squares(std::int64_t n) {
  if (n < 0) return false;
  if (n == 0) return true;
  while (n % 4 == 0) n /= 4;
  return n % 8 != 7;
}

LatticeDistanceAnswer is_squared_lattice_distance(std::int64_t n, SquaresDimension dim) {
  LatticeDistanceAnswer out;
  if (n < 0) return out;
  switch (dim) {
    case SquaresDimension::FourPlus:
      out.representable = true;
      out.witness = four_squares(n);
      break;
    case SquaresDimension::Three:
      out.representable = is_sum_of_three_squares(n);
      if (out.representable) {
        auto w = three_squares(n);
        if (!w) throw std::logic_error("three-square criterion and search disagree");
        out.witness = *w;
      }
      break;
    case SquaresDimension::Two:
      out.representable = is_sum_of_two_squares(n);
      if (out.representable) {
        auto w = two_squares(n);
        if (!w) throw std::logic_error("two-square criterion and search disagree");
        out.witness = *w;
      }
      break;
  }
  return out;
}

SphereRationalPoint SphereRationalPoint::make(std::array<BigInt, 3> num, BigInt den,
                                              BigInt n_value) {
  if (den <= 0 || n_value < 0) throw Error(ErrorCode::NotOnSphere, "bad denominator or radius");
  const BigInt lhs = num[0] * num[0] + num[1] * num[1] + num[2] * num[2];
  if (lhs != n_value * den * den) {
    throw Error(ErrorCode::NotOnSphere, "point does not lie on the sphere |P|^2 = " +
                                            n_value.str());
  }
  const BigInt g = gcd_all(num, den);
  for (auto& c : num) c /= g;
  den /= g;
  return {std::move(num), std::move(den), std::move(n_value)};
}

SphereRationalPoint SphereRationalPoint::from(const RationalPoint& p, std::int64_t n_value) {
  return make({BigInt(p.num.x), BigInt(p.num.y), BigInt(p.num.z)}, BigInt(p.den), BigInt(n_value));
}

DescentResult descend_traced(const SphereRationalPoint& start) {
  SphereRationalPoint cur = SphereRationalPoint::make(start.num, start.den, start.n_value);
  DescentResult result;
  while (cur.den > 1) {
    const BigInt& m = cur.den;
    std::array<BigInt, 3> z;
    std::array<BigInt, 3> w;  // m * (Z - P)
    for (int i = 0; i < 3; ++i) {
      z[i] = nearest(cur.num[i], m);
      w[i] = z[i] * m - cur.num[i];
    }
    const BigInt ww = w[0] * w[0] + w[1] * w[1] + w[2] * w[2];
    const BigInt aw = cur.num[0] * w[0] + cur.num[1] * w[1] + cur.num[2] * w[2];
    // |P - Z|^2 = ww / m^2 must lie in (0, 3/4].
    if (ww <= 0 || 4 * ww > 3 * m * m) throw std::logic_error("nearest lattice point bound violated");
    result.steps.push_back({m, {to_i64(z[0]), to_i64(z[1]), to_i64(z[2])}, ww, m * m});

    // P' = P + t(Z - P) with t = -2 P.(Z-P) / |Z-P|^2 = -2 m aw / (m ww) ... over m:
    // P' = (a ww - 2 aw w) / (m ww).
    std::array<BigInt, 3> next;
    for (int i = 0; i < 3; ++i) next[i] = cur.num[i] * ww - 2 * aw * w[i];
    SphereRationalPoint moved = SphereRationalPoint::make(next, m * ww, cur.n_value);
    if (moved.den >= m) throw std::logic_error("descent failed to shrink the denominator");
    cur = std::move(moved);
  }
  result.vector = {to_i64(cur.num[0]), to_i64(cur.num[1]), to_i64(cur.num[2])};
  return result;
}

IntVec3 descend(const SphereRationalPoint& start) { return descend_traced(start).vector; }

SphereRationalPoint random_sphere_rational(std::int64_t n, std::uint64_t seed) {
  const auto answer = is_squared_lattice_distance(n, SquaresDimension::Three);
  if (!answer.representable) {
    throw Error(ErrorCode::NotRepresentable,
                std::to_string(n) + " is not a sum of three squares");
  }
  if (n == 0) return SphereRationalPoint::make({0, 0, 0}, 1, 0);

  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<int> coord(-7, 7);
  std::uniform_int_distribution<int> sign(0, 1);
  std::array<std::int64_t, 3> v{answer.witness[0], answer.witness[1], answer.witness[2]};
  std::shuffle(v.begin(), v.end(), rng);
  for (auto& c : v) c = sign(rng) ? -c : c;

  for (;;) {
    const std::array<std::int64_t, 3> r{coord(rng), coord(rng), coord(rng)};
    const std::int64_t rr = r[0] * r[0] + r[1] * r[1] + r[2] * r[2];
    if (rr == 0) continue;
    const std::int64_t vr = v[0] * r[0] + v[1] * r[1] + v[2] * r[2];
    // Second intersection of v + s r with the sphere: s = -2 v.r / |r|^2.
    std::array<BigInt, 3> num;
    for (int i = 0; i < 3; ++i) num[i] = BigInt(v[i]) * rr - BigInt(2 * vr) * r[i];
    auto pt = SphereRationalPoint::make(num, BigInt(rr), BigInt(n));
    if (pt.den > 1) return pt;
  }
}

}  // namespace steinhaus
