#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "vvmf/diagnostic.hpp"
#include "vvmf/series.hpp"

namespace vvmf {

// e^{2 pi i/6}
template <class Real>
Cx<Real> xi() {
  return unit_root<Real>(1, 6);
}

// 12^{3/2}, the positive root.
template <class Real>
Real twelve_three_halves() {
  using std::sqrt;
  return Real(12) * sqrt(Real(12));
}

// E_2, E_4, E_6 with constant term 1, nome Q.
template <class Real>
PuiseuxSeries<Real> eisenstein(int k, int order);

// Euler product prod (1 - q^n), nome Q.
template <class Real>
PuiseuxSeries<Real> euler_product(int order);

// eta^m = q^{m/24} prod (1 - q^n)^m; in nome Q2 the same function in q2.
template <class Real>
PuiseuxSeries<Real> eta_power(int m, int order, Nome nome = Nome::Q);

template <class Real>
PuiseuxSeries<Real> delta(int order);

template <class Real>
PuiseuxSeries<Real> j_invariant(int order);

// K = 1728/j = 1728 Delta / E_4^3.
template <class Real>
PuiseuxSeries<Real> k_hauptmodul(int order);

template <class Real>
struct ThetaFourthPowers {
  PuiseuxSeries<Real> theta2, theta3, theta4;
};

// theta_2^4, theta_3^4, theta_4^4 as q2-series, all with lead exponent 0.
template <class Real>
ThetaFourthPowers<Real> theta_fourth_powers(int order);

template <class Real>
struct FGPair {
  PuiseuxSeries<Real> f, g;
};

// The weight-2 generators of forms on the index-2 subgroup; g = f(-q2).
template <class Real>
FGPair<Real> fg_generators(int order);

// Hauptmodul of the index-2 subgroup as a q2-series, Z = -2i 12^{3/2} q2 + ...
template <class Real>
PuiseuxSeries<Real> z_hauptmodul(int order);

// h = E_6 / (12^{3/2} eta^12) as a q2-series.
template <class Real>
PuiseuxSeries<Real> h_function(int order);

// Relative error of f^3 - g^3 = Z f^3 through the given q2-order.
template <class Real>
Real z_of_fg_check(int order);

// Immutable cache of the classical series at one truncation order. Level-one
// series are generated in q and re-expressed in q2 by index doubling.
template <class Real>
class ClassicalCatalog {
 public:
  using S = PuiseuxSeries<Real>;

  explicit ClassicalCatalog(int order);

  int order() const { return order_; }

  const S& e2() const { return e2_; }
  const S& e4() const { return e4_; }
  const S& e6() const { return e6_; }
  const S& delta() const { return delta_; }
  const S& j() const { return j_; }
  const S& k() const { return k_; }

  // Eisenstein series in the requested nome (Q or Q2).
  const S& e2(Nome n) const { return n == Nome::Q2 ? e2_q2_ : e2_; }
  const S& e4(Nome n) const { return n == Nome::Q2 ? e4_q2_ : e4_; }
  const S& e6(Nome n) const { return n == Nome::Q2 ? e6_q2_ : e6_; }

  const S& theta2_4() const { return theta_.theta2; }
  const S& theta3_4() const { return theta_.theta3; }
  const S& theta4_4() const { return theta_.theta4; }
  const S& f() const { return fg_.f; }
  const S& g() const { return fg_.g; }
  const S& h() const { return h_; }
  const S& z() const { return z_; }

  S eta_power(int m, Nome nome = Nome::Q) const;

  // Lookup by catalog name: E2, E4, E6, Delta, J, K, Theta2_4, Theta3_4,
  // Theta4_4, F_gen, G_gen, H_haupt, Z_haupt, EtaPow(m).
  S get(std::string_view name) const;
  static std::vector<std::string> names();

 private:
  int order_;
  S e2_, e4_, e6_, delta_, j_, k_;
  S e2_q2_, e4_q2_, e6_q2_;
  ThetaFourthPowers<Real> theta_;
  FGPair<Real> fg_;
  S h_, z_;
};

// D_k = theta_q - (k/12) E_2 on a scalar q- or q2-series.
template <class Real>
PuiseuxSeries<Real> modular_derivative(const PuiseuxSeries<Real>& f, int k,
                                       const ClassicalCatalog<Real>& cat);

// Level-one identities: E4^3 - E6^2 = 1728 Delta, Delta = eta^24, j K = 1728,
// D_12 Delta = 0 and the three Ramanujan derivative identities.
template <class Real>
std::vector<Diagnostic> classical_identities(const ClassicalCatalog<Real>& cat, double tol = 1e-10);

// Identities among f, g, Z and the level-one forms in q2.
template <class Real>
std::vector<Diagnostic> level2_identities(const ClassicalCatalog<Real>& cat, double tol = 1e-10);

}  // namespace vvmf
