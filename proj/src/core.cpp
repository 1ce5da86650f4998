#include "steinhaus/core.hpp"

#include <algorithm>
#include <sstream>

namespace steinhaus {

namespace {

void require_complete(const PartialMap& L) {
  if (!L.complete()) {
    throw Error(ErrorCode::IncompleteMap,
                std::to_string(L.size() - L.assigned_count()) + " cells are unassigned");
  }
}

Prime require_odd_prime(std::int64_t m) {
  if (m == 2 || !is_prime(m)) {
    throw Error(ErrorCode::UnsupportedModulus,
                "permutation route needs an odd prime modulus, got m=" + std::to_string(m));
  }
  return Prime(m);
}

std::string describe(const std::vector<IntVec3>& cells) {
  std::ostringstream os;
  for (std::size_t i = 0; i < cells.size(); ++i) os << (i ? " " : "") << cells[i];
  return os.str();
}

std::string coverage_message(const std::vector<IntVec3>& missing,
                             const std::vector<IntVec3>& duplicated, std::size_t stray) {
  std::string msg = "coset coverage failed:";
  if (!missing.empty()) msg += " missing " + describe(missing) + ";";
  if (!duplicated.empty()) msg += " duplicated " + describe(duplicated) + ";";
  if (stray) msg += " " + std::to_string(stray) + " point(s) in no coset;";
  return msg;
}

// Perm test over a family of (lambda, x); stops at the first collision.
template <typename Family>
Verdict perms_over(const PartialMap& L, Family&& family) {
  Verdict verdict;
  family([&](const IsoVector& lambda, const CubePoint& x) {
    const PiTable table = pi_table(L, lambda, x);
    ++verdict.checks;
    if (auto hit = table.first_collision()) {
      verdict.valid = false;
      verdict.witness = PermutationWitness{lambda.lambda(), x.coords(), hit->first, hit->second,
                                           table.values[hit->first]};
      return false;
    }
    return true;
  });
  return verdict;
}

}  // namespace

std::ostream& operator<<(std::ostream& os, const RationalPoint& p) {
  return os << p.num.x << '/' << p.den << ' ' << p.num.y << '/' << p.den << ' ' << p.num.z << '/'
            << p.den;
}

PartialMap::PartialMap(std::int64_t m) : m_(m) {
  if (m < 1) throw Error(ErrorCode::InvalidModulus, "m must be positive");
  entries_.resize(static_cast<std::size_t>(m * m * m));
}

PartialMap PartialMap::constant(std::int64_t m, IntVec3 value) {
  PartialMap L(m);
  for (std::int64_t i = 0; i < L.size(); ++i) L.set(i, value);
  return L;
}

PartialMap PartialMap::from_values(std::int64_t m, std::span<const IntVec3> values) {
  PartialMap L(m);
  if (static_cast<std::int64_t>(values.size()) != L.size()) {
    throw Error(ErrorCode::InvalidArgument, "expected " + std::to_string(L.size()) +
                                                " entries, got " + std::to_string(values.size()));
  }
  for (std::int64_t i = 0; i < L.size(); ++i) L.set(i, values[static_cast<std::size_t>(i)]);
  return L;
}

IntVec3 PartialMap::value(std::int64_t index) const {
  const auto& e = entries_.at(static_cast<std::size_t>(index));
  if (!e) {
    std::ostringstream os;
    os << "cell " << cube_point(index, m_) << " is unassigned";
    throw Error(ErrorCode::IncompleteMap, os.str());
  }
  return *e;
}

void PartialMap::set(IntVec3 x, IntVec3 value) {
  set(CubePoint(x, m_).index(), value);
}

void PartialMap::set(std::int64_t index, IntVec3 value) {
  if (index < 0 || index >= size()) throw Error(ErrorCode::InvalidArgument, "cell index out of range");
  entries_[static_cast<std::size_t>(index)] = CubePoint(value, m_).coords();
}

bool PartialMap::complete() const {
  return std::all_of(entries_.begin(), entries_.end(), [](const auto& e) { return e.has_value(); });
}

std::int64_t PartialMap::assigned_count() const {
  return std::count_if(entries_.begin(), entries_.end(), [](const auto& e) { return e.has_value(); });
}

bool PiTable::is_permutation() const { return !first_collision().has_value(); }

std::optional<std::pair<std::int64_t, std::int64_t>> PiTable::first_collision() const {
  // values are all in [0, p) and there are exactly p of them.
  std::vector<std::int64_t> seen(values.size(), -1);
  std::optional<std::pair<std::int64_t, std::int64_t>> best;
  for (std::size_t s = 0; s < values.size(); ++s) {
    auto& slot = seen[static_cast<std::size_t>(values[s])];
    if (slot >= 0) {
      std::pair<std::int64_t, std::int64_t> hit{slot, static_cast<std::int64_t>(s)};
      if (!best || hit < *best) best = hit;
    } else {
      slot = static_cast<std::int64_t>(s);
    }
  }
  return best;
}

std::int64_t pi_value(const PartialMap& L, const IsoVector& lambda, IntVec3 x, std::int64_t t) {
  const std::int64_t p = lambda.prime().value();
  const IntVec3 v = x + t * lambda.lambda();
  const Decomposition dec = decompose(v, p);
  const IntVec3 image = L.value(dec.y.coords());
  const std::int64_t linear = mod_floor(t, p) * lambda.d_value() % p * half(lambda.prime()) % p;
  return mod_floor(linear + dot(lambda.lambda(), image - dec.eps), p);
}

PiTable pi_table(const PartialMap& L, const IsoVector& lambda, const CubePoint& x) {
  const std::int64_t p = lambda.prime().value();
  if (L.modulus() != p || x.modulus() != p) {
    throw Error(ErrorCode::InvalidArgument, "map, lambda and x must share the modulus p");
  }
  PiTable table{lambda, x, {}};
  table.values.reserve(static_cast<std::size_t>(p));
  for (std::int64_t t = 0; t < p; ++t) table.values.push_back(pi_value(L, lambda, x.coords(), t));
  return table;
}

Verdict verify_condition_plus(const RawMap& L) {
  const std::int64_t m = L.m;
  const std::int64_t n = m * m * m;
  if (m < 1 || static_cast<std::int64_t>(L.values.size()) != n) {
    throw Error(ErrorCode::InvalidArgument, "raw map needs m^3 values");
  }
  const std::int64_t m2 = m * m;
  Verdict verdict;
  for (std::int64_t i = 0; i < n; ++i) {
    const IntVec3 x = cube_point(i, m);
    const IntVec3 lx = L.values[static_cast<std::size_t>(i)];
    for (std::int64_t j = i + 1; j < n; ++j) {
      const IntVec3 z = cube_point(j, m);
      const IntVec3 diff = (z - x) + m * (L.values[static_cast<std::size_t>(j)] - lx);
      const std::int64_t sq = norm2(diff);
      ++verdict.checks;
      if (sq % m2 == 0) {
        verdict.valid = false;
        verdict.witness = PairWitness{x, z, sq / m2};
        return verdict;
      }
    }
  }
  return verdict;
}

Verdict verify_bruteforce(const PartialMap& L) {
  require_complete(L);
  RawMap raw{L.modulus(), {}};
  raw.values.reserve(static_cast<std::size_t>(L.size()));
  for (const auto& e : L.entries()) raw.values.push_back(*e);
  return verify_condition_plus(raw);
}

Verdict verify_perms(const PartialMap& L) {
  const Prime p = require_odd_prime(L.modulus());
  require_complete(L);
  const auto w = build_w(p);
  return perms_over(L, [&](auto&& visit) {
    for (const auto& lambda : w) {
      for (const auto& x : complement_plane(lambda).points) {
        if (!visit(lambda, x)) return;
      }
    }
  });
}

Verdict verify_all_perms(const PartialMap& L) {
  const Prime p = require_odd_prime(L.modulus());
  require_complete(L);
  const auto all = enumerate_lambda(p);
  const std::int64_t cells = p.value() * p.value() * p.value();
  return perms_over(L, [&](auto&& visit) {
    for (const auto& lambda : all) {
      for (std::int64_t i = 0; i < cells; ++i) {
        if (!visit(lambda, CubePoint::from_index(i, p.value()))) return;
      }
    }
  });
}

CosetCoverageError::CosetCoverageError(std::vector<IntVec3> missing,
                                       std::vector<IntVec3> duplicated,
                                       std::vector<RationalPoint> stray)
    : Error(ErrorCode::CosetCoverage, coverage_message(missing, duplicated, stray.size())),
      missing_(std::move(missing)),
      duplicated_(std::move(duplicated)),
      stray_(std::move(stray)) {}

namespace {

// Numerators over the common denominator m; throws on coverage failure.
std::vector<IntVec3> scaled_numerators(std::span<const RationalPoint> points, std::int64_t m) {
  if (m <= 1) throw Error(ErrorCode::InvalidModulus, "m must exceed 1, got " + std::to_string(m));
  std::vector<IntVec3> scaled;
  std::vector<RationalPoint> stray;
  std::vector<int> hits(static_cast<std::size_t>(m * m * m), 0);
  for (const auto& pt : points) {
    if (pt.den <= 0) throw Error(ErrorCode::InvalidArgument, "denominators must be positive");
    IntVec3 k{};
    bool integral = true;
    for (int i = 0; i < 3; ++i) {
      if ((m * pt.num[i]) % pt.den != 0) integral = false;
      k[i] = m * pt.num[i] / pt.den;
    }
    if (!integral) {
      stray.push_back(pt);
      continue;
    }
    ++hits[static_cast<std::size_t>(cube_index(reduce(k, m), m))];
    scaled.push_back(k);
  }
  std::vector<IntVec3> missing, duplicated;
  for (std::size_t i = 0; i < hits.size(); ++i) {
    if (hits[i] == 0) missing.push_back(cube_point(static_cast<std::int64_t>(i), m));
    if (hits[i] > 1) duplicated.push_back(cube_point(static_cast<std::int64_t>(i), m));
  }
  if (!missing.empty() || !duplicated.empty() || !stray.empty()) {
    throw CosetCoverageError(std::move(missing), std::move(duplicated), std::move(stray));
  }
  return scaled;
}

}  // namespace

Verdict verify_point_set(std::span<const RationalPoint> points, std::int64_t m) {
  const auto k = scaled_numerators(points, m);
  const std::int64_t m2 = m * m;
  Verdict verdict;
  for (std::size_t i = 0; i < k.size(); ++i) {
    for (std::size_t j = i + 1; j < k.size(); ++j) {
      const std::int64_t sq = norm2(k[j] - k[i]);
      ++verdict.checks;
      if (sq % m2 == 0) {
        verdict.valid = false;
        verdict.witness = PointPairWitness{points[i], points[j], sq / m2};
        return verdict;
      }
    }
  }
  return verdict;
}

std::vector<RationalPoint> to_point_set(const PartialMap& L) {
  require_complete(L);
  const std::int64_t m = L.modulus();
  std::vector<RationalPoint> out;
  out.reserve(static_cast<std::size_t>(L.size()));
  for (std::int64_t i = 0; i < L.size(); ++i) {
    out.push_back({cube_point(i, m) + m * L.value(i), m});
  }
  return out;
}

PartialMap from_point_set(std::span<const RationalPoint> points, std::int64_t m) {
  RawMap raw{m, std::vector<IntVec3>(static_cast<std::size_t>(m * m * m))};
  for (const IntVec3& k : scaled_numerators(points, m)) {
    const Decomposition dec = decompose(k, m);
    raw.values[static_cast<std::size_t>(dec.y.index())] = dec.eps;
  }
  return normalize_map(raw);
}

PartialMap normalize_map(const RawMap& raw) {
  PartialMap L(raw.m);
  if (static_cast<std::int64_t>(raw.values.size()) != L.size()) {
    throw Error(ErrorCode::InvalidArgument, "raw map needs m^3 values");
  }
  for (std::int64_t i = 0; i < L.size(); ++i) {
    L.set(i, decompose(raw.values[static_cast<std::size_t>(i)], raw.m).y.coords());
  }
  return L;
}

PartialMap restrict_map(const PartialMap& L, std::int64_t m_prime) {
  const std::int64_t m = L.modulus();
  if (m_prime <= 0 || m % m_prime != 0) {
    throw Error(ErrorCode::InvalidDivisor,
                std::to_string(m_prime) + " does not divide m=" + std::to_string(m));
  }
  require_complete(L);
  PartialMap out(m_prime);
  const std::int64_t scale = m / m_prime;
  for (std::int64_t i = 0; i < out.size(); ++i) {
    const IntVec3 x = scale * cube_point(i, m_prime);
    // x'/m' + L(x) = x/m + L(x): same point, re-expressed over m'.
    out.set(i, reduce(L.value(x), m_prime));
  }
  return out;
}

std::optional<std::int64_t> IdentityCheck::first_failure() const {
  for (std::size_t t = 0; t < lhs.size(); ++t) {
    if (lhs[t] != rhs[t]) return static_cast<std::int64_t>(t);
  }
  return std::nullopt;
}

PiIdentityReport pi_identity_check(const PartialMap& L, const IsoVector& lambda, const CubePoint& x,
                            FpElement a, FpElement alpha) {
  const Prime prime = lambda.prime();
  const std::int64_t p = prime.value();
  require_odd_prime(L.modulus());
  require_complete(L);
  if (L.modulus() != p || x.modulus() != p || a.modulus() != prime || alpha.modulus() != prime) {
    throw Error(ErrorCode::InvalidArgument, "all arguments must share the modulus p");
  }
  const IntVec3 shifted = x.coords() + a.value() * lambda.lambda();
  const Decomposition dec = decompose(shifted, p);
  const std::int64_t shift_const = a.value() * lambda.d_value() % p * half(prime) % p;
  const std::int64_t eps_term = dot(lambda.lambda(), dec.eps);

  PiIdentityReport r;
  for (auto* c : {&r.translation, &r.translation_corrected, &r.translation_unreduced}) {
    c->evaluated = true;
  }
  for (std::int64_t t = 0; t < p; ++t) {
    const std::int64_t lhs = pi_value(L, lambda, x.coords(), (t + a.value()) % p);
    const std::int64_t reduced = pi_value(L, lambda, dec.y.coords(), t);
    r.translation.lhs.push_back(lhs);
    r.translation.rhs.push_back(mod_floor(shift_const + reduced, p));
    r.translation_corrected.lhs.push_back(lhs);
    r.translation_corrected.rhs.push_back(mod_floor(shift_const + reduced - eps_term, p));
    r.translation_unreduced.lhs.push_back(lhs);
    r.translation_unreduced.rhs.push_back(
        mod_floor(shift_const + pi_value(L, lambda, shifted, t), p));
  }
  if (alpha.value() != 0) {
    const IsoVector scaled = lambda.scaled(alpha.value());
    r.scaling.evaluated = r.scaling_corrected.evaluated = true;
    for (std::int64_t t = 0; t < p; ++t) {
      const std::int64_t base = pi_value(L, lambda, x.coords(), alpha.value() * t % p);
      const std::int64_t other = pi_value(L, scaled, x.coords(), t);
      r.scaling.lhs.push_back(base);
      r.scaling.rhs.push_back(other);
      r.scaling_corrected.lhs.push_back(other);
      r.scaling_corrected.rhs.push_back(alpha.value() * base % p);
    }
  }
  return r;
}

}  // namespace steinhaus
