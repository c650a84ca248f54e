#include "vvmf/numeric.hpp"

#include <algorithm>
#include <cmath>

#include "vvmf/error.hpp"

namespace vvmf {

std::string precision_name(Precision p) {
  return p == Precision::Double ? "double" : "extended";
}

Precision parse_precision(const std::string& s) {
  if (s == "double") return Precision::Double;
  if (s == "extended") return Precision::Extended;
  throw Error(ErrorKind::ValidationError, "unknown precision '" + s + "'");
}

unsigned digits_for_order(int order) {
  if (order < 0) order = 0;
  return 40u + static_cast<unsigned>(std::ceil(3.5 * order));
}

bool snap_rational(double x, long& p, long& q, long max_den) {
  if (!std::isfinite(x)) return false;
  // Continued-fraction convergents.
  long p0 = 0, q0 = 1, p1 = 1, q1 = 0;
  double r = x;
  for (int iter = 0; iter < 40; ++iter) {
    double a = std::floor(r);
    if (std::abs(a) > 1e15) break;
    long ai = static_cast<long>(a);
    long p2 = ai * p1 + p0, q2 = ai * q1 + q0;
    if (q2 > max_den) break;
    p0 = p1; q0 = q1; p1 = p2; q1 = q2;
    if (std::abs(x - static_cast<double>(p1) / static_cast<double>(q1)) <= 1e-13 * std::max(1.0, std::abs(x))) {
      p = p1;
      q = q1;
      return true;
    }
    double frac = r - a;
    if (frac == 0.0) break;
    r = 1.0 / frac;
  }
  return false;
}

PrecisionScope::PrecisionScope(unsigned digits) : saved_(Mp::default_precision()) {
  Mp::default_precision(digits);
}

PrecisionScope::~PrecisionScope() { Mp::default_precision(saved_); }

}  // namespace vvmf
