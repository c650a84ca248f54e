#pragma once

#include <doctest.h>

#include <complex>
#include <random>
#include <vector>

#include "vvmf/error.hpp"
#include "vvmf/series.hpp"

namespace vt {

using vvmf::cd;
using S = vvmf::PuiseuxSeries<double>;

inline S ser(vvmf::Nome n, cd lead, std::vector<cd> cs) { return S(n, lead, std::move(cs)); }
inline S q(cd lead, std::vector<cd> cs) { return ser(vvmf::Nome::Q, lead, std::move(cs)); }

inline double max_diff(const std::vector<cd>& a, const std::vector<cd>& b) {
  REQUIRE(a.size() == b.size());
  double m = 0;
  for (size_t i = 0; i < a.size(); ++i) m = std::max(m, std::abs(a[i] - b[i]));
  return m;
}

template <class Real>
std::vector<cd> coeffs_cd(const vvmf::PuiseuxSeries<Real>& s) {
  std::vector<cd> out;
  for (const auto& c : s.coeffs()) out.push_back(vvmf::to_cd(c));
  return out;
}

// b_n = max_{i <= n} |s_i|: the coefficient scale seen so far, used as the
// floor when a coefficient cancels to zero.
template <class Real>
vvmf::PuiseuxSeries<Real> running_max(const vvmf::PuiseuxSeries<Real>& s) {
  std::vector<vvmf::Cx<Real>> out;
  Real m(0);
  for (const auto& c : s.coeffs()) {
    using std::abs;
    Real a = abs(c);
    if (a > m) m = a;
    out.emplace_back(m);
  }
  return vvmf::PuiseuxSeries<Real>(s.nome(), s.lead(), out);
}

inline bool close(cd a, cd b, double tol = 1e-12) { return std::abs(a - b) <= tol * std::max(1.0, std::abs(b)); }

// Rational in [lo, hi) with the given denominator.
inline double rand_rational(std::mt19937_64& g, int den, int lo_num, int hi_num) {
  std::uniform_int_distribution<int> d(lo_num, hi_num - 1);
  return static_cast<double>(d(g)) / den;
}

inline cd rand_cd(std::mt19937_64& g, double r = 1.0) {
  std::uniform_real_distribution<double> u(-r, r);
  return {u(g), u(g)};
}

inline S rand_series(std::mt19937_64& g, vvmf::Nome n, cd lead, int order, double r = 1.0) {
  std::vector<cd> cs;
  for (int i = 0; i <= order; ++i) cs.push_back(rand_cd(g, r));
  return S(n, lead, cs);
}

}  // namespace vt

#define CHECK_KIND(expr, k)                                   \
  do {                                                        \
    bool caught_ = false;                                     \
    try {                                                     \
      (void)(expr);                                           \
    } catch (const vvmf::Error& e_) {                         \
      caught_ = true;                                         \
      CHECK_MESSAGE(e_.kind() == (k), vvmf::kind_name(e_.kind())); \
    }                                                         \
    CHECK_MESSAGE(caught_, "expected " << vvmf::kind_name(k)); \
  } while (0)
