#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "vvmf/numeric.hpp"

namespace vvmf {

// The formal variable of a series: q = e^{2 pi i tau}, q2 = e^{pi i tau},
// or one of the hauptmoduln K = 1728/j and Z.
enum class Nome { Q, Q2, K, Z };

std::string_view nome_name(Nome n);
Nome parse_nome(std::string_view s);

// x^lead * sum_{n=0}^{order} a_n x^n, truncated at x^{lead+order} inclusive.
template <class Real>
class PuiseuxSeries {
 public:
  using C = Cx<Real>;

  PuiseuxSeries();
  PuiseuxSeries(Nome nome, C lead, std::vector<C> coeffs);

  static PuiseuxSeries zero(Nome nome, int order, C lead = C());
  static PuiseuxSeries constant(Nome nome, C value, int order);
  // value * x^lead, padded with zeros to the given order.
  static PuiseuxSeries monomial(Nome nome, C lead, C value, int order);

  Nome nome() const { return nome_; }
  const C& lead() const { return lead_; }
  int order() const { return static_cast<int>(coeffs_.size()) - 1; }
  const std::vector<C>& coeffs() const { return coeffs_; }
  const C& operator[](int n) const { return coeffs_[static_cast<size_t>(n)]; }

  PuiseuxSeries truncated(int order) const;
  PuiseuxSeries retagged(Nome nome) const;
  PuiseuxSeries with_lead(C lead) const;

  Real max_abs() const;
  // |a_n| in every slot; used to build scale bounds for relative errors.
  PuiseuxSeries magnitude() const;
  // Index of the first coefficient with modulus above tol, if any.
  std::optional<int> first_nonzero(const Real& tol) const;
  // Drops leading zero coefficients, moving them into the exponent.
  PuiseuxSeries stripped(const Real& tol) const;

 private:
  Nome nome_;
  C lead_;
  std::vector<C> coeffs_;
};

template <class Real>
PuiseuxSeries<Real> add(const PuiseuxSeries<Real>& s, const PuiseuxSeries<Real>& t);
template <class Real>
PuiseuxSeries<Real> sub(const PuiseuxSeries<Real>& s, const PuiseuxSeries<Real>& t);
template <class Real>
PuiseuxSeries<Real> scale(const PuiseuxSeries<Real>& s, const Cx<Real>& c);
template <class Real>
PuiseuxSeries<Real> mul(const PuiseuxSeries<Real>& s, const PuiseuxSeries<Real>& t);
// Euler operator x d/dx in the series' own variable.
template <class Real>
PuiseuxSeries<Real> theta(const PuiseuxSeries<Real>& s);
template <class Real>
PuiseuxSeries<Real> invert(const PuiseuxSeries<Real>& s);
// (x^lead (1 + u))^r = x^{r lead} (1 + u)^r, with a_0 = 1 required.
template <class Real>
PuiseuxSeries<Real> pow_binomial(const PuiseuxSeries<Real>& s, const Cx<Real>& r);
// sum a_n x(q)^{lead+n} as a series in the variable of x_of_q.
template <class Real>
PuiseuxSeries<Real> compose_frobenius(const PuiseuxSeries<Real>& f_in_x,
                                      const PuiseuxSeries<Real>& x_of_q);
// Coefficient of q2^{lead+n} times e^{-pi i (lead+n)}.
template <class Real>
PuiseuxSeries<Real> slash_t_inverse(const PuiseuxSeries<Real>& s);
// Rewrites a q-series as a q2-series via q = q2^2.
template <class Real>
PuiseuxSeries<Real> to_q2(const PuiseuxSeries<Real>& s);

// max |r_n| / max over terms of max |t_n|.
template <class Real>
Real relative_residual(const PuiseuxSeries<Real>& r,
                       const std::vector<PuiseuxSeries<Real>>& terms);

// max_n |l_n - r_n| / max(|l_n|, |r_n|, bound_n). The bound carries the size
// of the products that produced the two sides, so cancellation is not
// mistaken for error.
template <class Real>
Real coefficient_relative_error(const PuiseuxSeries<Real>& lhs,
                                const PuiseuxSeries<Real>& rhs,
                                const PuiseuxSeries<Real>& bound);

template <class Real>
PuiseuxSeries<Real> operator+(const PuiseuxSeries<Real>& s, const PuiseuxSeries<Real>& t) {
  return add(s, t);
}
template <class Real>
PuiseuxSeries<Real> operator-(const PuiseuxSeries<Real>& s, const PuiseuxSeries<Real>& t) {
  return sub(s, t);
}
template <class Real>
PuiseuxSeries<Real> operator-(const PuiseuxSeries<Real>& s) {
  return scale(s, Cx<Real>(Real(-1)));
}
template <class Real>
PuiseuxSeries<Real> operator*(const PuiseuxSeries<Real>& s, const PuiseuxSeries<Real>& t) {
  return mul(s, t);
}
template <class Real>
PuiseuxSeries<Real> operator*(const Cx<Real>& c, const PuiseuxSeries<Real>& s) {
  return scale(s, c);
}
template <class Real>
PuiseuxSeries<Real> operator*(const PuiseuxSeries<Real>& s, const Cx<Real>& c) {
  return scale(s, c);
}

// A vector-valued form: components share nome and order.
template <class Real>
struct VectorSeries {
  std::vector<PuiseuxSeries<Real>> components;
  int weight = 0;

  VectorSeries() = default;
  // Truncates every component to the common minimum order.
  VectorSeries(std::vector<PuiseuxSeries<Real>> comps, int weight);

  size_t rank() const { return components.size(); }
  int order() const { return components.empty() ? -1 : components.front().order(); }
  Nome nome() const { return components.front().nome(); }
};

}  // namespace vvmf
