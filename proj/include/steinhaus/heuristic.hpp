#pragma once

#include <cstdint>
#include <string>

#include <boost/multiprecision/cpp_dec_float.hpp>
#include <boost/multiprecision/cpp_int.hpp>

#include "steinhaus/gf.hpp"

namespace steinhaus {

using HighPrecision = boost::multiprecision::cpp_dec_float_100;

/// log10 of a positive quantity too large or small to hold directly.
struct LogMagnitude {
  HighPrecision log10_value;
  double mantissa;       // in [1, 10)
  std::int64_t exponent;

  static LogMagnitude from_log10(const HighPrecision& v);

  /// "m.mEe" with `digits` significant mantissa digits, e.g. "1.4E15".
  std::string display(int digits = 2) const;
};

/// log10 M_p where M_p = p^(3p^3) (p!/p^p)^((p+1)p^2).
LogMagnitude log_m_p(std::int64_t p);

/// Same quantity at a chosen working precision.
template <typename Real>
Real log10_m_p_at(std::int64_t p) {
  using std::log10;
  using boost::multiprecision::log10;
  Real log_fact = 0;
  for (std::int64_t k = 2; k <= p; ++k) log_fact += log10(Real(k));
  const Real lp = log10(Real(p));
  const Real p3 = Real(p) * p * p;
  const Real tables = Real(p + 1) * p * p;
  return 3 * p3 * lp + tables * (log_fact - Real(p) * lp);
}

/// ln M_p - (-p^4 + 3.5 p^3 ln p).
HighPrecision stirling_residual(std::int64_t p);

/// Exact M_3 = 3^81 (6/27)^36 = 3^9 2^36.
boost::multiprecision::cpp_int exact_m3();

}  // namespace steinhaus
