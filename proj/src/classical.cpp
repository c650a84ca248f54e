#include "vvmf/classical.hpp"

#include <charconv>
#include <cstdint>

#include "vvmf/error.hpp"

namespace vvmf {

namespace {

std::vector<std::int64_t> divisor_sums(int power, int order) {
  std::vector<std::int64_t> sigma(static_cast<size_t>(order) + 1, 0);
  for (int d = 1; d <= order; ++d) {
    std::int64_t dk = 1;
    for (int i = 0; i < power; ++i) dk *= d;
    for (int n = d; n <= order; n += d) sigma[n] += dk;
  }
  return sigma;
}

template <class Real>
PuiseuxSeries<Real> magnitude_sum(std::initializer_list<PuiseuxSeries<Real>> parts) {
  auto it = parts.begin();
  PuiseuxSeries<Real> acc = it->magnitude();
  for (++it; it != parts.end(); ++it) acc = add(acc, it->magnitude());
  return acc;
}

template <class Real>
Diagnostic identity(std::string name, const PuiseuxSeries<Real>& lhs, const PuiseuxSeries<Real>& rhs,
                    const PuiseuxSeries<Real>& bound, double tol) {
  return {std::move(name), to_double(coefficient_relative_error(lhs, rhs, bound)), tol};
}

}  // namespace

template <class Real>
PuiseuxSeries<Real> eisenstein(int k, int order) {
  long scale_k;
  switch (k) {
    case 2: scale_k = -24; break;
    case 4: scale_k = 240; break;
    case 6: scale_k = -504; break;
    default: throw Error(ErrorKind::ValidationError, "Eisenstein weight must be 2, 4 or 6");
  }
  auto sigma = divisor_sums(k - 1, order);
  std::vector<Cx<Real>> c(static_cast<size_t>(order) + 1);
  c[0] = Cx<Real>(Real(1));
  for (int n = 1; n <= order; ++n) c[n] = Cx<Real>(Real(scale_k) * Real(static_cast<long long>(sigma[n])));
  return PuiseuxSeries<Real>(Nome::Q, Cx<Real>(), std::move(c));
}

template <class Real>
PuiseuxSeries<Real> euler_product(int order) {
  // Pentagonal number theorem.
  std::vector<Cx<Real>> c(static_cast<size_t>(order) + 1);
  c[0] = Cx<Real>(Real(1));
  for (long k = 1;; ++k) {
    long p1 = k * (3 * k - 1) / 2;
    long p2 = k * (3 * k + 1) / 2;
    if (p1 > order) break;
    Real sign = (k % 2 == 0) ? Real(1) : Real(-1);
    c[p1] += Cx<Real>(sign);
    if (p2 <= order) c[p2] += Cx<Real>(sign);
  }
  return PuiseuxSeries<Real>(Nome::Q, Cx<Real>(), std::move(c));
}

template <class Real>
PuiseuxSeries<Real> eta_power(int m, int order, Nome nome) {
  if (nome == Nome::Q2) {
    return to_q2(eta_power<Real>(m, (order + 1) / 2, Nome::Q)).truncated(order);
  }
  if (nome != Nome::Q) throw Error(ErrorKind::WrongNome, "eta powers live in q or q2");
  auto p = pow_binomial(euler_product<Real>(order), Cx<Real>(Real(m)));
  return p.with_lead(Cx<Real>(Real(m) / Real(24)));
}

template <class Real>
PuiseuxSeries<Real> delta(int order) {
  return eta_power<Real>(24, order);
}

template <class Real>
PuiseuxSeries<Real> j_invariant(int order) {
  auto e4 = eisenstein<Real>(4, order);
  return mul(mul(mul(e4, e4), e4), invert(delta<Real>(order)));
}

template <class Real>
PuiseuxSeries<Real> k_hauptmodul(int order) {
  auto e4 = eisenstein<Real>(4, order);
  auto e4c = mul(mul(e4, e4), e4);
  return scale(mul(delta<Real>(order), invert(e4c)), Cx<Real>(Real(1728)));
}

template <class Real>
ThetaFourthPowers<Real> theta_fourth_powers(int order) {
  using C = Cx<Real>;
  std::vector<C> t3(static_cast<size_t>(order) + 1), t4(t3.size()), t2(t3.size());
  for (long n = 0; n * n <= order; ++n) {
    const Real mult = n == 0 ? Real(1) : Real(2);
    t3[n * n] += C(mult);
    t4[n * n] += C((n % 2 == 0) ? mult : -mult);
  }
  // theta_2 = q2^{1/4} sum_{n in Z} q2^{n^2 + n}; n and -1-n give equal exponents.
  for (long n = 0; n * n + n <= order; ++n) t2[n * n + n] += C(Real(2));
  auto fourth = [](const std::vector<C>& v) {
    PuiseuxSeries<Real> s(Nome::Q2, C(), v);
    auto sq = mul(s, s);
    return mul(sq, sq);
  };
  auto t2_4 = fourth(t2);
  std::vector<C> shifted(static_cast<size_t>(order) + 1);
  for (int n = 1; n <= order; ++n) shifted[n] = t2_4[n - 1];
  return {PuiseuxSeries<Real>(Nome::Q2, C(), std::move(shifted)), fourth(t3), fourth(t4)};
}

template <class Real>
FGPair<Real> fg_generators(int order) {
  using C = Cx<Real>;
  auto th = theta_fourth_powers<Real>(order);
  const C x = xi<Real>();
  auto f = sub(scale(th.theta2, C(Real(1)) + x), scale(add(th.theta3, th.theta4), x * x * x * x * x));
  std::vector<C> gc(f.coeffs());
  for (int n = 1; n <= order; n += 2) gc[n] = -gc[n];
  return {f, PuiseuxSeries<Real>(Nome::Q2, f.lead(), std::move(gc))};
}

template <class Real>
PuiseuxSeries<Real> z_hauptmodul(int order) {
  using C = Cx<Real>;
  const Real c = twelve_three_halves<Real>();
  auto eta12 = eta_power<Real>(12, order, Nome::Q2);
  auto e6 = to_q2(eisenstein<Real>(6, (order + 1) / 2)).truncated(order);
  auto den = add(scale(eta12, C(c)), scale(e6, C(Real(0), Real(1))));
  return scale(mul(eta12, invert(den)), C(Real(2) * c));
}

template <class Real>
PuiseuxSeries<Real> h_function(int order) {
  const Real c = twelve_three_halves<Real>();
  auto eta12 = eta_power<Real>(12, order, Nome::Q2);
  auto e6 = to_q2(eisenstein<Real>(6, (order + 1) / 2)).truncated(order);
  return scale(mul(e6, invert(eta12)), Cx<Real>(Real(1) / c));
}

template <class Real>
Real z_of_fg_check(int order) {
  auto fg = fg_generators<Real>(order);
  auto z = z_hauptmodul<Real>(order);
  auto f3 = mul(mul(fg.f, fg.f), fg.f);
  auto g3 = mul(mul(fg.g, fg.g), fg.g);
  auto rhs = mul(z, f3);
  return coefficient_relative_error(sub(f3, g3), rhs, mul(z.magnitude(), f3.magnitude()));
}

template <class Real>
ClassicalCatalog<Real>::ClassicalCatalog(int order)
    : order_(order),
      e2_(eisenstein<Real>(2, order)),
      e4_(eisenstein<Real>(4, order)),
      e6_(eisenstein<Real>(6, order)),
      delta_(vvmf::delta<Real>(order)),
      j_(j_invariant<Real>(order)),
      k_(k_hauptmodul<Real>(order)),
      e2_q2_(to_q2(e2_).truncated(order)),
      e4_q2_(to_q2(e4_).truncated(order)),
      e6_q2_(to_q2(e6_).truncated(order)),
      theta_(theta_fourth_powers<Real>(order)),
      fg_(fg_generators<Real>(order)),
      h_(h_function<Real>(order)),
      z_(z_hauptmodul<Real>(order)) {
  if (order < 1) throw Error(ErrorKind::ValidationError, "catalog order must be at least 1");
}

template <class Real>
PuiseuxSeries<Real> ClassicalCatalog<Real>::eta_power(int m, Nome nome) const {
  return vvmf::eta_power<Real>(m, order_, nome);
}

template <class Real>
std::vector<std::string> ClassicalCatalog<Real>::names() {
  return {"E2",       "E4",       "E6",    "Delta", "J",       "K",       "Theta2_4",
          "Theta3_4", "Theta4_4", "F_gen", "G_gen", "H_haupt", "Z_haupt", "EtaPow(m)"};
}

template <class Real>
PuiseuxSeries<Real> ClassicalCatalog<Real>::get(std::string_view name) const {
  if (name == "E2") return e2_;
  if (name == "E4") return e4_;
  if (name == "E6") return e6_;
  if (name == "Delta") return delta_;
  if (name == "J") return j_;
  if (name == "K") return k_;
  if (name == "Theta2_4") return theta_.theta2;
  if (name == "Theta3_4") return theta_.theta3;
  if (name == "Theta4_4") return theta_.theta4;
  if (name == "F_gen") return fg_.f;
  if (name == "G_gen") return fg_.g;
  if (name == "H_haupt") return h_;
  if (name == "Z_haupt") return z_;
  constexpr std::string_view prefix = "EtaPow(";
  if (name.substr(0, prefix.size()) == prefix && name.back() == ')') {
    auto body = name.substr(prefix.size(), name.size() - prefix.size() - 1);
    int m = 0;
    auto [ptr, ec] = std::from_chars(body.data(), body.data() + body.size(), m);
    if (ec == std::errc() && ptr == body.data() + body.size()) return eta_power(m);
  }
  throw Error(ErrorKind::ValidationError, "unknown classical series '" + std::string(name) + "'");
}

template <class Real>
PuiseuxSeries<Real> modular_derivative(const PuiseuxSeries<Real>& f, int k,
                                       const ClassicalCatalog<Real>& cat) {
  using C = Cx<Real>;
  if (f.nome() != Nome::Q && f.nome() != Nome::Q2) {
    throw Error(ErrorKind::WrongNome, "modular derivative acts on q- or q2-series");
  }
  // theta_q = theta_{q2} / 2.
  auto th = theta(f);
  if (f.nome() == Nome::Q2) th = scale(th, C(Real(1) / Real(2)));
  return sub(th, scale(mul(cat.e2(f.nome()), f), C(Real(k) / Real(12))));
}

template <class Real>
std::vector<Diagnostic> classical_identities(const ClassicalCatalog<Real>& cat, double tol) {
  using C = Cx<Real>;
  using S = PuiseuxSeries<Real>;
  const S& e2 = cat.e2();
  const S& e4 = cat.e4();
  const S& e6 = cat.e6();
  const S& dl = cat.delta();
  const S m2 = e2.magnitude(), m4 = e4.magnitude(), m6 = e6.magnitude();
  std::vector<Diagnostic> out;

  out.push_back(identity<Real>("E4^3 - E6^2 = 1728 Delta", sub(mul(mul(e4, e4), e4), mul(e6, e6)),
                               scale(dl, C(Real(1728))), add(mul(mul(m4, m4), m4), mul(m6, m6)), tol));

  // Independent route to eta^24: repeated squaring of the Euler product.
  auto e = euler_product<Real>(cat.order());
  auto e2p = mul(e, e), e4p = mul(e2p, e2p), e8p = mul(e4p, e4p), e16p = mul(e8p, e8p);
  auto me = e.magnitude();
  auto me2 = mul(me, me), me4 = mul(me2, me2), me8 = mul(me4, me4), me16 = mul(me8, me8);
  const C one_lead(Real(1));
  out.push_back(identity<Real>("Delta = eta^24", dl, mul(e16p, e8p).with_lead(one_lead),
                               mul(me16, me8).with_lead(one_lead), tol));

  out.push_back(identity<Real>("j K = 1728", mul(cat.j(), cat.k()),
                               S::constant(Nome::Q, C(Real(1728)), cat.order()),
                               mul(cat.j().magnitude(), cat.k().magnitude()), tol));

  out.push_back(identity<Real>("D_12 Delta = 0", theta(dl), mul(e2, dl), mul(m2, dl.magnitude()), tol));

  const C r12(Real(1) / Real(12)), r3(Real(1) / Real(3)), r2(Real(1) / Real(2));
  out.push_back(identity<Real>("theta E2 = (E2^2 - E4)/12", theta(e2), scale(sub(mul(e2, e2), e4), r12),
                               scale(add(mul(m2, m2), m4), r12), tol));
  out.push_back(identity<Real>("theta E4 = (E2 E4 - E6)/3", theta(e4), scale(sub(mul(e2, e4), e6), r3),
                               scale(add(mul(m2, m4), m6), r3), tol));
  out.push_back(identity<Real>("theta E6 = (E2 E6 - E4^2)/2", theta(e6), scale(sub(mul(e2, e6), mul(e4, e4)), r2),
                               scale(add(mul(m2, m6), mul(m4, m4)), r2), tol));
  return out;
}

template <class Real>
std::vector<Diagnostic> level2_identities(const ClassicalCatalog<Real>& cat, double tol) {
  using C = Cx<Real>;
  using S = PuiseuxSeries<Real>;
  const int n = cat.order();
  const S& f = cat.f();
  const S& g = cat.g();
  const S& z = cat.z();
  const S& e2 = cat.e2(Nome::Q2);
  const S& e4 = cat.e4(Nome::Q2);
  const S& e6 = cat.e6(Nome::Q2);
  const C x = xi<Real>();
  const S mf = f.magnitude(), mg = g.magnitude(), mz = z.magnitude();
  std::vector<Diagnostic> out;

  out.push_back(identity<Real>("f g = -4 xi E4", mul(f, g), scale(e4, C(Real(-4)) * x), mul(mf, mg), tol));

  auto f3 = mul(mul(f, f), f);
  auto g3 = mul(mul(g, g), g);
  out.push_back(identity<Real>("f^3 + g^3 = 16 E6", add(f3, g3), scale(e6, C(Real(16))),
                               add(mul(mul(mf, mf), mf), mul(mul(mg, mg), mg)), tol));

  auto df = modular_derivative(f, 2, cat);
  auto half_theta_f = scale(theta(f), C(Real(1) / Real(2)));
  out.push_back(identity<Real>("D f = (xi/12) g^2", df, scale(mul(g, g), x / Real(12)),
                               magnitude_sum<Real>({half_theta_f, scale(mul(e2.magnitude(), mf), C(Real(1) / Real(6))),
                                                    scale(mul(mg, mg), C(Real(1) / Real(12)))}),
                               tol));

  auto d2f = modular_derivative(df, 4, cat);
  out.push_back(identity<Real>(
      "D^2 f = E4 f / 18", d2f, scale(mul(e4, f), C(Real(1) / Real(18))),
      magnitude_sum<Real>({scale(theta(df), C(Real(1) / Real(2))), scale(mul(e2.magnitude(), df.magnitude()), C(Real(1) / Real(3))),
                           scale(mul(e4.magnitude(), mf), C(Real(1) / Real(18)))}),
      tol));

  auto four_zm1 = scale(sub(z, S::constant(Nome::Q2, C(Real(1)), n)), C(Real(4)));
  auto inv_den = invert(four_zm1);
  out.push_back(identity<Real>("K(q2^2) = Z^2 / (4(Z - 1))", to_q2(cat.k()).truncated(n), mul(mul(z, z), inv_den),
                               mul(mul(mz, mz), inv_den.magnitude()), tol));

  auto inv_f3 = invert(f3);
  auto diff = sub(f3, g3);
  out.push_back(identity<Real>("Z = (f^3 - g^3)/f^3", z, mul(diff, inv_f3),
                               mul(diff.magnitude(), inv_f3.magnitude()), tol));

  auto inv_4f = invert(scale(f, C(Real(4)) * (x - C(Real(1)))));
  auto rhs = mul(mul(mul(g, g), z), inv_4f);
  out.push_back(identity<Real>("theta_q Z = g^2 Z / (4(xi - 1) f)", scale(theta(z), C(Real(1) / Real(2))), rhs,
                               mul(mul(mul(mg, mg), mz), inv_4f.magnitude()), tol));
  return out;
}

#define VVMF_CLASSICAL_INSTANTIATE(R)                                                         \
  template PuiseuxSeries<R> eisenstein<R>(int, int);                                          \
  template PuiseuxSeries<R> euler_product<R>(int);                                            \
  template PuiseuxSeries<R> eta_power<R>(int, int, Nome);                                     \
  template PuiseuxSeries<R> delta<R>(int);                                                    \
  template PuiseuxSeries<R> j_invariant<R>(int);                                              \
  template PuiseuxSeries<R> k_hauptmodul<R>(int);                                             \
  template ThetaFourthPowers<R> theta_fourth_powers<R>(int);                                  \
  template FGPair<R> fg_generators<R>(int);                                                   \
  template PuiseuxSeries<R> z_hauptmodul<R>(int);                                             \
  template PuiseuxSeries<R> h_function<R>(int);                                               \
  template R z_of_fg_check<R>(int);                                                           \
  template class ClassicalCatalog<R>;                                                         \
  template PuiseuxSeries<R> modular_derivative(const PuiseuxSeries<R>&, int,                  \
                                               const ClassicalCatalog<R>&);                   \
  template std::vector<Diagnostic> classical_identities(const ClassicalCatalog<R>&, double);  \
  template std::vector<Diagnostic> level2_identities(const ClassicalCatalog<R>&, double);

VVMF_CLASSICAL_INSTANTIATE(double)
VVMF_CLASSICAL_INSTANTIATE(Mp)

}  // namespace vvmf
