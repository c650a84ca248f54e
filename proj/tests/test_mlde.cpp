#include "support.hpp"

#include "vvmf/mlde.hpp"

using namespace vvmf;

namespace {

using F4 = std::array<cd, 4>;

cd turn(double t) { return std::polar(1.0, 2 * M_PI * t); }

// Monic polynomial with the given roots, coefficients from degree 0 up.
std::vector<cd> from_roots(const std::vector<cd>& roots) {
  std::vector<cd> p{1.0};
  for (const auto& r : roots) {
    std::vector<cd> next(p.size() + 1, 0.0);
    for (size_t i = 0; i < p.size(); ++i) {
      next[i + 1] += p[i];
      next[i] -= r * p[i];
    }
    p = next;
  }
  return p;
}

double poly_distance_monic(const std::vector<cd>& p, const std::vector<cd>& q) {
  REQUIRE(p.size() == q.size());
  const cd lead = p.back();
  double m = 0;
  for (size_t i = 0; i < p.size(); ++i) m = std::max(m, std::abs(p[i] / lead - q[i]));
  return m;
}

struct Rank4Case {
  Rank4Rep rep;
  ExponentData L;
};

// Random rep with exponents in (1/denom) Z and integral 3 Tr(L).
Rank4Case random_rank4(std::mt19937_64& g, int denom = 24) {
  std::vector<cd> e;
  double s = 0;
  for (int i = 0; i < 3; ++i) {
    e.push_back(vt::rand_rational(g, denom, 0, 2 * denom));
    s += e.back().real();
  }
  const int m = static_cast<int>(g() % 12);
  e.push_back(m / 3.0 - s);
  const int par = static_cast<int>(g() % 2);
  auto rep = Rank4Rep::from_spectrum(turn(e[0].real()), turn(e[1].real()), turn(e[2].real()), turn(e[3].real()), par);
  return {rep, {e, std::nullopt, Group::Gamma}};
}

}  // namespace

TEST_CASE("cyclic coefficients") {
  auto co = cyclic_coeffs<double>(F4{0, 1.0 / 12, 1.0 / 3, 7.0 / 12});
  CHECK(vt::close(co.a, -5.0 / 144, 1e-14));
  CHECK(vt::close(co.b, 5.0 / 864, 1e-14));
  CHECK(std::abs(co.c) < 1e-15);
  auto z = cyclic_coeffs<double>(F4{0, 1.0 / 6, 1.0 / 3, 0.5});
  CHECK(std::abs(z.a) < 1e-15);
  CHECK(std::abs(z.b) < 1e-15);
  CHECK(std::abs(z.c) < 1e-15);
  CHECK_KIND(cyclic_coeffs<double>(F4{0, 0, 0, 0.5}), ErrorKind::ExponentSumMismatch);
}

TEST_CASE("noncyclic coefficients") {
  auto co = noncyclic_coeffs<double>(F4{0, 1.0 / 12, 0.25, 1.0 / 3});
  CHECK(vt::close(co.a, 1.0 / 288, 1e-14));
  CHECK(vt::close(co.b, 1.0 / 288, 1e-14));
  CHECK(vt::close(co.c, -1.0 / 5184, 1e-14));
  auto z = noncyclic_coeffs<double>(F4{0, 1.0 / 6, 1.0 / 6, 1.0 / 3});
  CHECK(std::abs(z.a) < 1e-15);
  CHECK(std::abs(z.b) < 1e-15);
  CHECK(std::abs(z.c) < 1e-15);
  CHECK_KIND(noncyclic_coeffs<double>(F4{0, 0, 0, 1}), ErrorKind::ExponentSumMismatch);
}

TEST_CASE("extended precision coefficients are exact for rational input") {
  PrecisionScope ps(80);
  using C = Cx<Mp>;
  auto co = cyclic_coeffs<Mp>({lift<Mp>(0), lift<Mp>(1.0 / 12), lift<Mp>(1.0 / 3), lift<Mp>(7.0 / 12)});
  CHECK(abs(co.a - C(Mp(-5) / 144)) < Mp("1e-70"));
  CHECK(abs(co.b - C(Mp(5) / 864)) < Mp("1e-70"));
}

TEST_CASE("cyclic operator") {
  auto co = cyclic_coeffs<double>(F4{0, 1.0 / 6, 1.0 / 3, 0.5});
  auto op = build_cyclic_operator(co);
  CHECK(op.order() == 4);
  CHECK(op.polys.size() == 3);
  CHECK(op.nome == Nome::K);
  CHECK(vt::close(op.polys[0][4], 36));
  CHECK(vt::close(op.polys[0][1], -1, 1e-14));
  CHECK(poly_distance_monic(op.polys[0], from_roots({0, 1.0 / 6, 1.0 / 3, 0.5})) < 1e-14);
}

TEST_CASE("noncyclic operator and system") {
  const F4 f{0, 1.0 / 12, 0.25, 1.0 / 3};
  auto co = noncyclic_coeffs<double>(f);
  auto op = build_noncyclic_operator(co);
  CHECK(op.order() == 4);
  const auto& p0 = op.polys[0];
  CHECK(vt::close(p0[3] / p0[4], -2.0 / 3, 1e-14));
  CHECK(vt::close(p0[0] / p0[4], -(co.a + 18.0 * co.c) / 18.0, 1e-12));
  CHECK(poly_distance_monic(p0, from_roots({f.begin(), f.end()})) < 1e-14);

  auto sys = build_noncyclic_system(co);
  CHECK(vt::close(sys.b0[1][1], 1.0 / 6, 1e-14));
  CHECK(vt::close(sys.b0[3][3], 1.0 / 3, 1e-14));
  Eigen::MatrixXcd b0(4, 4);
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j) b0(i, j) = sys.b0[static_cast<size_t>(i)][static_cast<size_t>(j)];
  auto ev = eigenvalues_of(b0);
  auto pe = from_roots(ev);
  CHECK(poly_distance_monic(pe, from_roots({f.begin(), f.end()})) < 1e-12);

  CHECK_KIND(build_noncyclic_system(noncyclic_coeffs<double>(F4{0, 1.0 / 6, 1.0 / 6, 1.0 / 3})),
             ErrorKind::DegenerateC);
}

TEST_CASE("frobenius_solve") {
  const cd a(0.3, 0.1), b(-0.7, 0.2), c(1.4, -0.3);
  auto op = build_hypergeometric_operator(a, b, c);
  auto y = frobenius_solve(op, cd(0), 30);
  cd term = 1;
  for (int n = 0; n <= 30; ++n) {
    CHECK(vt::close(y[n], term, 1e-13));
    term *= (a + double(n)) * (b + double(n)) / ((c + double(n)) * double(n + 1));
  }

  auto cyc = build_cyclic_operator(cyclic_coeffs<double>(F4{0, 1.0 / 6, 1.0 / 3, 0.5}));
  auto s = frobenius_solve(cyc, cd(0), 50);
  CHECK(vt::close(s[0], 1));
  CHECK(apply_operator(cyc, s).relative() < 1e-9);
  CHECK_KIND(frobenius_solve(cyc, cd(0.25), 10), ErrorKind::NotAnExponent);
  // Exponents 0 and 1 are resonant for the solution at 0.
  auto res = build_hypergeometric_operator(cd(0.5), cd(0.5), cd(0));
  CHECK_KIND(frobenius_solve(res, cd(0), 10), ErrorKind::Resonance);
  CHECK(frobenius_solve(res, cd(1), 10)[0] == cd(1));
}

TEST_CASE("hypergeom_2f1") {
  auto g = hypergeom_2f1(cd(1), cd(1), cd(1), 20);
  for (int n = 0; n <= 20; ++n) CHECK(vt::close(g[n], 1, 1e-15));
  auto h = hypergeom_2f1(cd(0.2), cd(0.4), cd(0.9), 5);
  CHECK(h[0] == cd(1));
  CHECK_KIND(hypergeom_2f1(cd(1), cd(1), cd(-2), 10), ErrorKind::PoleInC);
}

TEST_CASE("frobenius_solve_system") {
  // The system carries a (1-K) on the left, so the constant system is
  // B1 = -B0 rather than B1 = 0.
  CMatrix<double> b0{{0.1, 0}, {0, 0.4}}, b1{{-0.1, 0}, {0, -0.4}};
  auto x = frobenius_solve_system(b0, b1, cd(0.1), {1.0, 0.0}, 8);
  CHECK(std::abs(x[0].lead() - cd(0.1)) < 1e-15);
  CHECK(x[0][0] == cd(1));
  for (int n = 1; n <= 8; ++n) CHECK(std::abs(x[0][n]) == 0.0);
  for (int n = 0; n <= 8; ++n) CHECK(std::abs(x[1][n]) == 0.0);
  CHECK_KIND(frobenius_solve_system(b0, b1, cd(0.1), {0.0, 1.0}, 4), ErrorKind::NotLeftEigenvector);

  const F4 f{0, 1.0 / 12, 0.25, 1.0 / 3};
  auto co = noncyclic_coeffs<double>(f);
  auto sys = build_noncyclic_system(co);
  for (const auto& r : f) {
    auto v = left_eigenvector(sys.b0, r);
    auto sol = frobenius_solve_system(sys.b0, sys.b1, r, v, 50);
    CHECK(system_residual(sys, sol) < 1e-9);
    double m = 0;
    for (const auto& e : v) m = std::max(m, std::abs(e));
    CHECK(m == doctest::Approx(1.0));
  }
}

TEST_CASE("classification") {
  // 3 Tr = 3, e = 0: cyclic with k1 = 0.
  ExponentData L{{0, 1.0 / 12, 1.0 / 3, 7.0 / 12}, std::nullopt, Group::Gamma};
  auto spec = [](const ExponentData& l) {
    std::vector<cd> s;
    for (const auto& e : l.eigenvalues) s.push_back(turn(e.real()));
    return s;
  };
  auto s = spec(L);
  auto rep = Rank4Rep::from_spectrum(s[0], s[1], s[2], s[3], 0);
  auto r = classify(rep, L);
  CHECK(r.kind == CaseKind::Cyclic);
  CHECK(r.k1 == r.three_trace - 3);
  CHECK(r.weights == std::array<int, 4>{r.k1, r.k1 + 2, r.k1 + 4, r.k1 + 6});

  // Shifting one exponent by 1 flips the case.
  ExponentData L2 = L;
  L2.eigenvalues[0] += 1.0;
  auto r2 = classify(rep, L2);
  CHECK(r2.kind == CaseKind::Noncyclic);

  ExponentData bad = L;
  bad.eigenvalues[0] += 0.5;
  CHECK_KIND(classify(rep, bad), ErrorKind::NonIntegralThreeTrace);
  ExponentData moved = L;
  moved.eigenvalues[0] += 1.0 / 3;
  moved.eigenvalues[1] -= 1.0 / 3;
  CHECK_KIND(classify(rep, moved), ErrorKind::InconsistentRep);
  ExponentData g2 = L;
  g2.group = Group::G;
  CHECK_KIND(classify(rep, g2), ErrorKind::GroupMismatch);
}

TEST_CASE("dimension examples") {
  std::mt19937_64 g(0x5eed31);
  int seen = 0;
  for (int t = 0; t < 200 && seen < 10; ++t) {
    auto c = random_rank4(g);
    auto r = classify(c.rep, c.L);
    if (mod(r.three_trace - r.d, 6) != 0) continue;
    ++seen;
    CHECK(r.kind == CaseKind::Cyclic);
    CHECK(dimension(r.three_trace - 3, c.rep, c.L) == 1);
    CHECK(dimension(r.three_trace - 2, c.rep, c.L) == 0);
  }
  CHECK(seen >= 5);
}

TEST_CASE("property: indicial round trip") {
  std::mt19937_64 g(0x5eed32);
  for (int t = 0; t < 40; ++t) {
    const bool cyc = t % 2 == 0;
    F4 f;
    cd s = 0;
    for (int i = 0; i < 3; ++i) {
      f[static_cast<size_t>(i)] = vt::rand_cd(g);
      s += f[static_cast<size_t>(i)];
    }
    f[3] = (cyc ? 1.0 : 2.0 / 3) - s;
    auto op = cyc ? build_cyclic_operator(cyclic_coeffs<double>(f)) : build_noncyclic_operator(noncyclic_coeffs<double>(f));
    CHECK(poly_distance_monic(op.polys[0], from_roots({f.begin(), f.end()})) < 1e-9);
    for (const auto& r : f) CHECK(std::abs(op.eval(0, r)) < 1e-9 * std::abs(op.polys[0][4]));
  }
}

TEST_CASE("property: Frobenius self-residual and the hypergeometric cross-oracle") {
  std::mt19937_64 g(0x5eed33);
  for (int t = 0; t < 20; ++t) {
    const cd a = vt::rand_cd(g, 3), b = vt::rand_cd(g, 3);
    cd c = vt::rand_cd(g, 3);
    if (std::abs(c.imag()) < 0.05) c += cd(0, 0.1);
    auto op = build_hypergeometric_operator(a, b, c);
    auto y = frobenius_solve(op, cd(0), 100);
    auto h = hypergeom_2f1(a, b, c, 100);
    CHECK(coefficient_relative_error(y, h, h.magnitude()) < 1e-12);
    CHECK(apply_operator(op, y).relative() < 1e-9);
  }
}

TEST_CASE("property: dimension generating function") {
  std::mt19937_64 g(0x5eed34);
  int count[2] = {0, 0};
  for (int t = 0; t < 400 && (count[0] < 20 || count[1] < 20); ++t) {
    auto c = random_rank4(g);
    CaseReport r;
    try {
      r = classify(c.rep, c.L);
    } catch (const Error&) {
      continue;
    }
    ++count[r.kind == CaseKind::Cyclic ? 0 : 1];
    for (int k = r.k1 - 8; k <= r.k1 + 24; ++k) {
      int want = 0;
      for (int w : r.weights)
        for (int a = 0; 4 * a <= k - w; ++a)
          if ((k - w - 4 * a) % 6 == 0) ++want;
      CHECK_MESSAGE(dimension(k, c.rep, c.L) == want, "k = " << k << ", k1 = " << r.k1);
    }
  }
  CHECK(count[0] >= 20);
  CHECK(count[1] >= 20);
}
