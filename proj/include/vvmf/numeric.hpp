#pragma once

#include <boost/multiprecision/mpfr.hpp>

#include <cmath>
#include <complex>
#include <string>
#include <type_traits>

namespace vvmf {

using Mp = boost::multiprecision::number<boost::multiprecision::mpfr_float_backend<0>,
                                         boost::multiprecision::et_off>;

template <class Real>
using Cx = std::complex<Real>;

using cd = std::complex<double>;

enum class Precision { Double, Extended };

std::string precision_name(Precision p);
Precision parse_precision(const std::string& s);

// Absolute tolerance for structural equalities (integer gaps, traces,
// eigenvector residuals).
inline constexpr double kStructuralTol = 1e-9;
// Default relative tolerance for series residuals.
inline constexpr double kResidualTol = 1e-9;

// Working decimal digits for jobs that substitute a hauptmodul into a series
// of the given order. Substitution into K loses roughly 3.2 digits per order.
unsigned digits_for_order(int order);

// Sets the MPFR default precision for the lifetime of the scope. The default
// is process-global, so set it before spawning workers, never inside them.
class PrecisionScope {
 public:
  explicit PrecisionScope(unsigned digits);
  ~PrecisionScope();
  PrecisionScope(const PrecisionScope&) = delete;
  PrecisionScope& operator=(const PrecisionScope&) = delete;

 private:
  unsigned saved_;
};

template <class Real>
Real pi() {
  using std::acos;
  return acos(Real(-1));
}

template <class Real>
double to_double(const Real& x) {
  return static_cast<double>(x);
}

template <class Real>
cd to_cd(const Cx<Real>& z) {
  return {static_cast<double>(z.real()), static_cast<double>(z.imag())};
}

template <class Real>
Cx<Real> from_cd(const cd& z) {
  return {Real(z.real()), Real(z.imag())};
}

// e^{2 pi i num/den}, exact at multiples of a quarter turn.
template <class Real>
Cx<Real> unit_root(long num, long den) {
  long n = ((num % den) + den) % den;
  if ((4 * n) % den == 0) {
    switch ((4 * n) / den) {
      case 0: return {Real(1), Real(0)};
      case 1: return {Real(0), Real(1)};
      case 2: return {Real(-1), Real(0)};
      default: return {Real(0), Real(-1)};
    }
  }
  using std::cos;
  using std::sin;
  Real t = 2 * pi<Real>() * Real(n) / Real(den);
  return {cos(t), sin(t)};
}

// e^{2 pi i z} for complex z.
template <class Real>
Cx<Real> exp_2pi_i(const Cx<Real>& z) {
  using std::exp;
  return exp(Cx<Real>(Real(0), 2 * pi<Real>()) * z);
}

// e^{pi i z} for complex z.
template <class Real>
Cx<Real> exp_pi_i(const Cx<Real>& z) {
  using std::exp;
  return exp(Cx<Real>(Real(0), pi<Real>()) * z);
}

// p/q with q <= max_den approximating x to 1e-13 relative, if one exists.
bool snap_rational(double x, long& p, long& q, long max_den = 10000);

// Lifts a double parameter into Real. In extended precision, values that are
// rationals with small denominators in double are lifted exactly.
template <class Real>
Real lift_real(double x) {
  if constexpr (std::is_same_v<Real, double>) {
    return x;
  } else {
    long p = 0, q = 1;
    if (snap_rational(x, p, q)) return Real(p) / Real(q);
    return Real(x);
  }
}

template <class Real>
Cx<Real> lift(const cd& z) {
  return {lift_real<Real>(z.real()), lift_real<Real>(z.imag())};
}

inline bool near_integer(cd z, double tol = kStructuralTol) {
  return std::abs(z.imag()) < tol && std::abs(z.real() - std::round(z.real())) < tol;
}

inline long nearest_integer(cd z) { return std::lround(z.real()); }

inline long mod(long a, long m) { return ((a % m) + m) % m; }

}  // namespace vvmf
