#include "steinhaus/gf.hpp"

#include <string>

#include "steinhaus/error.hpp"

namespace steinhaus {

std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::NotPrime: return "NotPrime";
    case ErrorCode::NotInvertible: return "NotInvertible";
    case ErrorCode::InvalidModulus: return "InvalidModulus";
    case ErrorCode::InvalidDivisor: return "InvalidDivisor";
    case ErrorCode::IncompleteMap: return "IncompleteMap";
    case ErrorCode::UnsupportedModulus: return "UnsupportedModulus";
    case ErrorCode::CosetCoverage: return "CosetCoverageError";
    case ErrorCode::NotOnSphere: return "NotOnSphere";
    case ErrorCode::NotRepresentable: return "NotRepresentable";
    case ErrorCode::InvalidArgument: return "InvalidArgument";
    case ErrorCode::ParseError: return "ParseError";
  }
  return "Unknown";
}

bool is_prime(std::int64_t n) {
  if (n < 2) return false;
  if (n < 4) return true;
  if (n % 2 == 0) return false;
  for (std::int64_t d = 3; d * d <= n; d += 2) {
    if (n % d == 0) return false;
  }
  return true;
}

Prime::Prime(std::int64_t p) : p_(p) {
  if (p == 2 || !is_prime(p)) {
    throw Error(ErrorCode::NotPrime, "p=" + std::to_string(p) + " is not an odd prime");
  }
}

FpElement mod_inv(FpElement a) {
  const std::int64_t p = a.modulus().value();
  if (a.value() == 0) {
    throw Error(ErrorCode::NotInvertible, "0 has no inverse modulo " + std::to_string(p));
  }
  // Extended Euclid on (a, p).
  std::int64_t r0 = p, r1 = a.value();
  std::int64_t s0 = 0, s1 = 1;
  while (r1 != 0) {
    const std::int64_t q = r0 / r1;
    r0 -= q * r1;
    std::swap(r0, r1);
    s0 -= q * s1;
    std::swap(s0, s1);
  }
  return FpElement(s0, a.modulus());
}

std::vector<FpElement> sqrt_mod(FpElement a) {
  const Prime p = a.modulus();
  if (a.value() == 0) return {FpElement(0, p)};
  // Exhaustive scan; every modulus used here is tiny.
  for (std::int64_t r = 1; r <= p.value() / 2; ++r) {
    if ((r * r) % p.value() == a.value()) {
      return {FpElement(r, p), FpElement(p.value() - r, p)};
    }
  }
  return {};
}

}  // namespace steinhaus
