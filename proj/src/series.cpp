#include "vvmf/series.hpp"

#include <algorithm>
#include <cmath>

#include "vvmf/error.hpp"

namespace vvmf {

std::string_view nome_name(Nome n) {
  switch (n) {
    case Nome::Q: return "Q";
    case Nome::Q2: return "Q2";
    case Nome::K: return "K";
    case Nome::Z: return "Z";
  }
  return "?";
}

Nome parse_nome(std::string_view s) {
  if (s == "Q") return Nome::Q;
  if (s == "Q2") return Nome::Q2;
  if (s == "K") return Nome::K;
  if (s == "Z") return Nome::Z;
  throw Error(ErrorKind::ValidationError, "unknown nome '" + std::string(s) + "'");
}

namespace {

template <class Real>
void require_same_nome(const PuiseuxSeries<Real>& s, const PuiseuxSeries<Real>& t) {
  if (s.nome() != t.nome()) {
    throw Error(ErrorKind::NomeMismatch, std::string(nome_name(s.nome())) + " vs " +
                                             std::string(nome_name(t.nome())));
  }
}

// Integer m with lead(t) = lead(s) + m.
template <class Real>
long integer_gap(const Cx<Real>& from, const Cx<Real>& to) {
  cd gap = to_cd<Real>(to - from);
  if (!near_integer(gap)) {
    throw Error(ErrorKind::NonIntegralExponentGap,
                "exponent gap " + std::to_string(gap.real()) + (gap.imag() >= 0 ? "+" : "") +
                    std::to_string(gap.imag()) + "i");
  }
  return nearest_integer(gap);
}

}  // namespace

template <class Real>
PuiseuxSeries<Real>::PuiseuxSeries() : nome_(Nome::Q), lead_(), coeffs_(1) {}

template <class Real>
PuiseuxSeries<Real>::PuiseuxSeries(Nome nome, C lead, std::vector<C> coeffs)
    : nome_(nome), lead_(std::move(lead)), coeffs_(std::move(coeffs)) {
  if (coeffs_.empty()) throw Error(ErrorKind::ValidationError, "series needs at least one coefficient");
}

template <class Real>
PuiseuxSeries<Real> PuiseuxSeries<Real>::zero(Nome nome, int order, C lead) {
  return PuiseuxSeries(nome, lead, std::vector<C>(static_cast<size_t>(order) + 1));
}

template <class Real>
PuiseuxSeries<Real> PuiseuxSeries<Real>::constant(Nome nome, C value, int order) {
  return monomial(nome, C(), value, order);
}

template <class Real>
PuiseuxSeries<Real> PuiseuxSeries<Real>::monomial(Nome nome, C lead, C value, int order) {
  std::vector<C> c(static_cast<size_t>(order) + 1);
  c[0] = value;
  return PuiseuxSeries(nome, lead, std::move(c));
}

template <class Real>
PuiseuxSeries<Real> PuiseuxSeries<Real>::truncated(int order) const {
  if (order >= this->order()) return *this;
  return PuiseuxSeries(nome_, lead_,
                       std::vector<C>(coeffs_.begin(), coeffs_.begin() + order + 1));
}

template <class Real>
PuiseuxSeries<Real> PuiseuxSeries<Real>::retagged(Nome nome) const {
  return PuiseuxSeries(nome, lead_, coeffs_);
}

template <class Real>
PuiseuxSeries<Real> PuiseuxSeries<Real>::with_lead(C lead) const {
  return PuiseuxSeries(nome_, lead, coeffs_);
}

template <class Real>
Real PuiseuxSeries<Real>::max_abs() const {
  using std::abs;
  Real m(0);
  for (const auto& c : coeffs_) m = std::max<Real>(m, abs(c));
  return m;
}

template <class Real>
PuiseuxSeries<Real> PuiseuxSeries<Real>::magnitude() const {
  using std::abs;
  std::vector<C> c;
  c.reserve(coeffs_.size());
  for (const auto& a : coeffs_) c.emplace_back(abs(a));
  return PuiseuxSeries(nome_, lead_, std::move(c));
}

template <class Real>
std::optional<int> PuiseuxSeries<Real>::first_nonzero(const Real& tol) const {
  using std::abs;
  for (size_t n = 0; n < coeffs_.size(); ++n) {
    if (abs(coeffs_[n]) > tol) return static_cast<int>(n);
  }
  return std::nullopt;
}

template <class Real>
PuiseuxSeries<Real> PuiseuxSeries<Real>::stripped(const Real& tol) const {
  auto k = first_nonzero(tol);
  if (!k || *k == 0) return *this;
  return PuiseuxSeries(nome_, lead_ + C(Real(*k)),
                       std::vector<C>(coeffs_.begin() + *k, coeffs_.end()));
}

template <class Real>
PuiseuxSeries<Real> add(const PuiseuxSeries<Real>& s, const PuiseuxSeries<Real>& t) {
  require_same_nome(s, t);
  long m = integer_gap<Real>(s.lead(), t.lead());
  if (m < 0) return add(t, s);
  int n_out = std::min<long>(s.order(), t.order() + m);
  std::vector<Cx<Real>> c(static_cast<size_t>(n_out) + 1);
  for (int i = 0; i <= n_out; ++i) {
    c[i] = s[i];
    if (i - m >= 0) c[i] += t[static_cast<int>(i - m)];
  }
  return PuiseuxSeries<Real>(s.nome(), s.lead(), std::move(c));
}

template <class Real>
PuiseuxSeries<Real> sub(const PuiseuxSeries<Real>& s, const PuiseuxSeries<Real>& t) {
  return add(s, scale(t, Cx<Real>(Real(-1))));
}

template <class Real>
PuiseuxSeries<Real> scale(const PuiseuxSeries<Real>& s, const Cx<Real>& k) {
  std::vector<Cx<Real>> c(s.coeffs());
  for (auto& a : c) a *= k;
  return PuiseuxSeries<Real>(s.nome(), s.lead(), std::move(c));
}

namespace {

// Cauchy product of a and b truncated to indices 0..n_out.
template <class Real>
std::vector<Cx<Real>> cauchy(const std::vector<Cx<Real>>& a, const std::vector<Cx<Real>>& b,
                             int n_out) {
  std::vector<Cx<Real>> c(static_cast<size_t>(n_out) + 1);
  const int na = std::min<int>(n_out, static_cast<int>(a.size()) - 1);
  const int nb = static_cast<int>(b.size()) - 1;
  const Cx<Real> zero;
  for (int i = 0; i <= na; ++i) {
    if (a[i] == zero) continue;
    const int top = std::min(nb, n_out - i);
    for (int j = 0; j <= top; ++j) c[i + j] += a[i] * b[j];
  }
  return c;
}

}  // namespace

template <class Real>
PuiseuxSeries<Real> mul(const PuiseuxSeries<Real>& s, const PuiseuxSeries<Real>& t) {
  require_same_nome(s, t);
  int n_out = std::min(s.order(), t.order());
  return PuiseuxSeries<Real>(s.nome(), s.lead() + t.lead(), cauchy(s.coeffs(), t.coeffs(), n_out));
}

template <class Real>
PuiseuxSeries<Real> theta(const PuiseuxSeries<Real>& s) {
  std::vector<Cx<Real>> c(s.coeffs());
  for (int n = 0; n <= s.order(); ++n) c[n] *= s.lead() + Cx<Real>(Real(n));
  return PuiseuxSeries<Real>(s.nome(), s.lead(), std::move(c));
}

template <class Real>
PuiseuxSeries<Real> invert(const PuiseuxSeries<Real>& s) {
  using std::abs;
  const auto& a = s.coeffs();
  if (abs(a[0]) <= Real(kStructuralTol)) {
    throw Error(ErrorKind::NonUnitLeadingCoefficient, "leading coefficient vanishes");
  }
  const int n_max = s.order();
  std::vector<Cx<Real>> b(static_cast<size_t>(n_max) + 1);
  const Cx<Real> inv0 = Cx<Real>(Real(1)) / a[0];
  b[0] = inv0;
  for (int n = 1; n <= n_max; ++n) {
    Cx<Real> acc;
    for (int k = 1; k <= n; ++k) acc += a[k] * b[n - k];
    b[n] = -acc * inv0;
  }
  return PuiseuxSeries<Real>(s.nome(), -s.lead(), std::move(b));
}

template <class Real>
PuiseuxSeries<Real> pow_binomial(const PuiseuxSeries<Real>& s, const Cx<Real>& r) {
  using std::abs;
  const auto& a = s.coeffs();
  if (abs(a[0] - Cx<Real>(Real(1))) > Real(kStructuralTol)) {
    throw Error(ErrorKind::NonMonicLeadingCoefficient, "binomial power needs a_0 = 1");
  }
  const int n_max = s.order();
  std::vector<Cx<Real>> b(static_cast<size_t>(n_max) + 1);
  b[0] = Cx<Real>(Real(1));
  const Cx<Real> r1 = r + Cx<Real>(Real(1));
  for (int n = 1; n <= n_max; ++n) {
    Cx<Real> acc;
    for (int k = 1; k <= n; ++k) {
      if (a[k] == Cx<Real>()) continue;
      acc += (r1 * Real(k) - Cx<Real>(Real(n))) * a[k] * b[n - k];
    }
    b[n] = acc / Real(n);
  }
  return PuiseuxSeries<Real>(s.nome(), r * s.lead(), std::move(b));
}

template <class Real>
PuiseuxSeries<Real> compose_frobenius(const PuiseuxSeries<Real>& f, const PuiseuxSeries<Real>& x) {
  using C = Cx<Real>;
  using std::abs;
  if (f.nome() != Nome::K && f.nome() != Nome::Z) {
    throw Error(ErrorKind::WrongNome, "substitution needs a series in K or Z");
  }
  cd mu_c = to_cd<Real>(x.lead());
  if (!near_integer(mu_c) || nearest_integer(mu_c) < 1) {
    throw Error(ErrorKind::ValidationError, "substituted series must start at a positive integer power");
  }
  const int mu = static_cast<int>(nearest_integer(mu_c));
  const C c0 = x[0];
  if (abs(c0) <= Real(kStructuralTol)) {
    throw Error(ErrorKind::ZeroLeadingCoefficient, "substituted series has vanishing leading term");
  }
  // Terms a_n x^n with n > order(f) start at q^{mu (order(f)+1)}.
  const int n_out = std::min(x.order(), mu * (f.order() + 1) - 1);
  const C inv_c0 = C(Real(1)) / c0;

  std::vector<C> unit(static_cast<size_t>(n_out) + 1);
  for (int n = 0; n <= n_out; ++n) unit[n] = x[n] * inv_c0;
  unit[0] = C(Real(1));
  auto unit_pow = pow_binomial(PuiseuxSeries<Real>(x.nome(), C(), std::move(unit)), f.lead());

  // Horner in X = x(q) viewed as a power series; the accumulator for the
  // coefficient a_n only needs order n_out - mu n.
  const int top = std::min(f.order(), n_out / mu);
  std::vector<C> acc{f[top]};
  for (int n = top - 1; n >= 0; --n) {
    const int len = n_out - mu * n;
    std::vector<C> next(static_cast<size_t>(len) + 1);
    for (int j = mu; j <= len; ++j) {
      const C& xj = x[j - mu];
      if (xj == C()) continue;
      const int kmax = std::min<int>(len - j, static_cast<int>(acc.size()) - 1);
      for (int k = 0; k <= kmax; ++k) next[j + k] += xj * acc[k];
    }
    next[0] += f[n];
    acc = std::move(next);
  }

  auto c = cauchy(unit_pow.coeffs(), acc, n_out);
  const C scale_c0 = f.lead() == C() ? C(Real(1)) : pow(c0, f.lead());
  for (auto& v : c) v *= scale_c0;
  return PuiseuxSeries<Real>(x.nome(), C(Real(mu)) * f.lead(), std::move(c));
}

template <class Real>
PuiseuxSeries<Real> slash_t_inverse(const PuiseuxSeries<Real>& s) {
  if (s.nome() != Nome::Q2) throw Error(ErrorKind::WrongNome, "slash by T^-1 acts on q2-series");
  const Cx<Real> phase = exp_pi_i<Real>(-s.lead());
  std::vector<Cx<Real>> c(s.coeffs());
  for (int n = 0; n <= s.order(); ++n) c[n] *= (n % 2 == 0) ? phase : -phase;
  return PuiseuxSeries<Real>(Nome::Q2, s.lead(), std::move(c));
}

template <class Real>
PuiseuxSeries<Real> to_q2(const PuiseuxSeries<Real>& s) {
  if (s.nome() != Nome::Q) throw Error(ErrorKind::WrongNome, "index doubling starts from a q-series");
  std::vector<Cx<Real>> c(2 * static_cast<size_t>(s.order()) + 1);
  for (int n = 0; n <= s.order(); ++n) c[2 * n] = s[n];
  return PuiseuxSeries<Real>(Nome::Q2, s.lead() * Real(2), std::move(c));
}

template <class Real>
Real relative_residual(const PuiseuxSeries<Real>& r, const std::vector<PuiseuxSeries<Real>>& terms) {
  Real denom(0);
  for (const auto& t : terms) denom = std::max<Real>(denom, t.max_abs());
  Real num = r.max_abs();
  if (denom == Real(0)) return num;
  return num / denom;
}

template <class Real>
Real coefficient_relative_error(const PuiseuxSeries<Real>& lhs, const PuiseuxSeries<Real>& rhs,
                                const PuiseuxSeries<Real>& bound) {
  using std::abs;
  require_same_nome(lhs, rhs);
  require_same_nome(lhs, bound);
  const PuiseuxSeries<Real>* all[3] = {&lhs, &rhs, &bound};
  long off[3];
  for (int i = 0; i < 3; ++i) off[i] = integer_gap<Real>(lhs.lead(), all[i]->lead());
  const long base = *std::min_element(off, off + 3);
  long top = -1;
  for (int i = 0; i < 3; ++i) {
    long t = off[i] - base + all[i]->order();
    top = (i == 0) ? t : std::min(top, t);
  }
  auto at = [&](int i, long n) -> Cx<Real> {
    long k = n - (off[i] - base);
    return k < 0 ? Cx<Real>() : (*all[i])[static_cast<int>(k)];
  };
  Real worst(0);
  for (long n = 0; n <= top; ++n) {
    Cx<Real> l = at(0, n), r = at(1, n);
    Real diff = abs(l - r);
    if (diff == Real(0)) continue;
    Real den = std::max<Real>({Real(abs(l)), Real(abs(r)), Real(abs(at(2, n)))});
    worst = std::max<Real>(worst, den == Real(0) ? diff : diff / den);
  }
  return worst;
}

template <class Real>
VectorSeries<Real>::VectorSeries(std::vector<PuiseuxSeries<Real>> comps, int w)
    : components(std::move(comps)), weight(w) {
  if (components.empty()) return;
  int n = components.front().order();
  for (const auto& c : components) {
    require_same_nome(components.front(), c);
    n = std::min(n, c.order());
  }
  for (auto& c : components) c = c.truncated(n);
}

#define VVMF_SERIES_INSTANTIATE(R)                                                              \
  template class PuiseuxSeries<R>;                                                              \
  template struct VectorSeries<R>;                                                              \
  template PuiseuxSeries<R> add(const PuiseuxSeries<R>&, const PuiseuxSeries<R>&);              \
  template PuiseuxSeries<R> sub(const PuiseuxSeries<R>&, const PuiseuxSeries<R>&);              \
  template PuiseuxSeries<R> scale(const PuiseuxSeries<R>&, const Cx<R>&);                       \
  template PuiseuxSeries<R> mul(const PuiseuxSeries<R>&, const PuiseuxSeries<R>&);              \
  template PuiseuxSeries<R> theta(const PuiseuxSeries<R>&);                                     \
  template PuiseuxSeries<R> invert(const PuiseuxSeries<R>&);                                    \
  template PuiseuxSeries<R> pow_binomial(const PuiseuxSeries<R>&, const Cx<R>&);                \
  template PuiseuxSeries<R> compose_frobenius(const PuiseuxSeries<R>&, const PuiseuxSeries<R>&); \
  template PuiseuxSeries<R> slash_t_inverse(const PuiseuxSeries<R>&);                           \
  template PuiseuxSeries<R> to_q2(const PuiseuxSeries<R>&);                                     \
  template R relative_residual(const PuiseuxSeries<R>&, const std::vector<PuiseuxSeries<R>>&);  \
  template R coefficient_relative_error(const PuiseuxSeries<R>&, const PuiseuxSeries<R>&,       \
                                        const PuiseuxSeries<R>&);

VVMF_SERIES_INSTANTIATE(double)
VVMF_SERIES_INSTANTIATE(Mp)

}  // namespace vvmf
