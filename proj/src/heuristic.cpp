#include "steinhaus/heuristic.hpp"

#include <cmath>
#include <cstdio>

#include "steinhaus/error.hpp"

namespace steinhaus {

LogMagnitude LogMagnitude::from_log10(const HighPrecision& v) {
  const HighPrecision e = boost::multiprecision::floor(v);
  const HighPrecision frac = v - e;
  return {v, std::pow(10.0, frac.convert_to<double>()), e.convert_to<std::int64_t>()};
}

std::string LogMagnitude::display(int digits) const {
  // Round the mantissa first; 9.96 at two digits becomes 1.0 with exponent + 1.
  const double scale = std::pow(10.0, digits - 1);
  double m = std::round(mantissa * scale) / scale;
  std::int64_t e = exponent;
  if (m >= 10.0) {
    m /= 10.0;
    e += 1;
  }
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*fE%lld", digits - 1, m, static_cast<long long>(e));
  return buf;
}

LogMagnitude log_m_p(std::int64_t p) {
  if (p < 2) throw Error(ErrorCode::InvalidArgument, "p must be at least 2");
  return LogMagnitude::from_log10(log10_m_p_at<HighPrecision>(p));
}

HighPrecision stirling_residual(std::int64_t p) {
  const HighPrecision ln_m = log10_m_p_at<HighPrecision>(p) * boost::multiprecision::log(HighPrecision(10));
  const HighPrecision q = p;
  return ln_m - (-q * q * q * q + HighPrecision(3.5) * q * q * q * boost::multiprecision::log(q));
}

boost::multiprecision::cpp_int exact_m3() {
  using boost::multiprecision::cpp_int;
  using boost::multiprecision::pow;
  // 3^81 * 6^36 / 27^36, divided exactly.
  const cpp_int num = pow(cpp_int(3), 81) * pow(cpp_int(6), 36);
  const cpp_int den = pow(cpp_int(27), 36);
  return num / den;
}

}  // namespace steinhaus
