#include "support.hpp"

#include "vvmf/constructions.hpp"
#include "vvmf/rep.hpp"

#include <unsupported/Eigen/MatrixFunctions>

using namespace vvmf;

namespace {

cd turn(double t) { return std::polar(1.0, 2 * M_PI * t); }
const cd kZeta = turn(1.0 / 3);

ExponentData diag(std::vector<cd> e, Group g = Group::Gamma) { return {std::move(e), std::nullopt, g}; }

std::vector<double> sorted_real(const ExponentData& l) {
  std::vector<double> v;
  for (const auto& e : l.eigenvalues) v.push_back(e.real());
  std::sort(v.begin(), v.end());
  return v;
}

void check_multiset(const ExponentData& l, std::vector<double> want) {
  std::sort(want.begin(), want.end());
  auto got = sorted_real(l);
  REQUIRE(got.size() == want.size());
  for (size_t i = 0; i < got.size(); ++i) CHECK(got[i] == doctest::Approx(want[i]).epsilon(1e-12));
}

}  // namespace

TEST_CASE("rank-2 irreducibility") {
  CHECK(rank2_is_irreducible({1.0, -1.0, 3, false}));
  CHECK_FALSE(rank2_is_irreducible({1.0, turn(1.0 / 6), 1, false}));
  CHECK(rank2_is_irreducible({turn(5.0 / 12), turn(5.0 / 12), 5, true}));
  validate(Rank2Rep{1.0, -1.0, 3, false});
  CHECK_KIND(validate(Rank2Rep{1.0, -1.0, 2, false}), ErrorKind::InconsistentRep);
  CHECK(parity(Rank2Rep{1.0, -1.0, 3, false}) == 0);
}

TEST_CASE("d invariant") {
  auto r = Rank4Rep::from_spectrum(1, 1, 1, 1, 1);
  CHECK(r.d == 0);
  CHECK(d_invariant(r) == 0);
  auto r0 = Rank4Rep::from_spectrum(1, 1, 1, 1, 0);
  CHECK(r0.d == 3);
  // xyzw = zeta: d is 1 or 4, fixed by the parity.
  CHECK(Rank4Rep::from_spectrum(kZeta, 1, 1, 1, 0).d == 1);
  CHECK(Rank4Rep::from_spectrum(kZeta, 1, 1, 1, 1).d == 4);
  CHECK(d_invariant(Rank4Rep{kZeta, 1, 1, 1, 4, 1}) == 4);
  CHECK_KIND(d_invariant(Rank4Rep{turn(0.01), 1, 1, 1, 0, 1}), ErrorKind::InconsistentRep);
  CHECK_KIND(Rank4Rep::from_spectrum(turn(0.01), 1, 1, 1, 1), ErrorKind::InconsistentRep);
}

TEST_CASE("tensor and symmetric cube irreducibility") {
  const Rank2Rep reg{turn(1.0 / 7), turn(5.0 / 14), 3, false};
  validate(reg);
  const Rank2Rep nu{turn(1.0 / 12), turn(1.0 / 12), 1, true};
  validate(nu);
  CHECK(tensor_is_irreducible(reg, nu));
  CHECK_FALSE(tensor_is_irreducible(nu, nu));
  const Rank2Rep ii{cd(0, 1), cd(0, -1), 0, false};
  CHECK_FALSE(tensor_is_irreducible(ii, ii));

  CHECK(sym3_is_irreducible(nu));
  const Rank2Rep quarter{turn(1.0 / 8), turn(-1.0 / 8), 0, false};
  validate(quarter);
  CHECK(sym3_is_irreducible(quarter));
  CHECK_FALSE(sym3_is_irreducible(Rank2Rep{1.0, -1.0, 3, false}));
}

TEST_CASE("induction irreducibility") {
  CHECK_FALSE(induction_is_irreducible({0, 1.0, kZeta, kZeta * kZeta, 0.5}));
  CHECK(induction_is_irreducible({0, 1.0, kZeta, 1.0, 5.0}));
  const cd excluded = (2.0 * kZeta + 1.0) / (1.0 - kZeta);
  CHECK_FALSE(induction_is_irreducible({0, 1.0, kZeta, 1.0, excluded}));
  CHECK(induction_is_irreducible({1, 1.0, kZeta, 1.0, excluded}));
  CHECK_FALSE(induction_is_irreducible({1, 1.0, kZeta, 1.0, -excluded}));
}

TEST_CASE("property: restriction trichotomy over beta twists") {
  std::mt19937_64 g(0x5eed21);
  int tried = 0;
  for (int t = 0; t < 200 && tried < 40; ++t) {
    const cd z1 = std::pow(kZeta, static_cast<int>(g() % 3));
    const cd z2 = std::pow(kZeta, static_cast<int>(g() % 3));
    const cd z3 = std::pow(kZeta, static_cast<int>(g() % 3));
    GRank2Rep r{static_cast<int>(g() % 2), z1, z2, z3, vt::rand_cd(g, 3)};
    if (std::abs(z1 - z2) < 1e-9 || !induction_is_irreducible(r)) continue;
    ++tried;
    int count = 0;
    for (int j = 0; j < 3; ++j) count += restricts_from_gamma(twist(r, j)) ? 1 : 0;
    CHECK(count == 1);
  }
  CHECK(tried >= 20);
}

TEST_CASE("exponent functors") {
  auto t = tensor_exponents(diag({1.0 / 3, 1.0 / 6}), diag({1.0 / 4, 1.0 / 12}));
  check_multiset(t, {7.0 / 12, 5.0 / 12, 5.0 / 12, 1.0 / 4});
  CHECK(t.trace().real() == doctest::Approx(5.0 / 3));
  check_multiset(tensor_exponents(diag({0.2, 0.7}), diag({0, 0})), {0.2, 0.2, 0.7, 0.7});
  CHECK_KIND(tensor_exponents(diag({0.1}), diag({0.1}, Group::G)), ErrorKind::GroupMismatch);

  auto s = sym3_exponents(diag({1.0 / 4, 1.0 / 12}));
  check_multiset(s, {3.0 / 4, 7.0 / 12, 5.0 / 12, 1.0 / 4});
  CHECK(s.trace().real() == doctest::Approx(2.0));
  check_multiset(sym3_exponents(diag({0, 0})), {0, 0, 0, 0});

  Eigen::MatrixXcd m(2, 2);
  m << 0.1, 0.2, 0.3, 0.4;
  auto sm = sym3_exponents(exponents_from_matrix(m, Group::Gamma));
  REQUIRE(sm.matrix);
  CHECK(std::abs((*sm.matrix)(0, 0) - 0.3) < 1e-15);
  CHECK(std::abs((*sm.matrix)(0, 1) - 0.2) < 1e-15);
  CHECK(std::abs((*sm.matrix)(0, 2)) == 0.0);
  CHECK(std::abs(sm.matrix->trace() - 6.0 * m.trace()) < 1e-14);
}

TEST_CASE("induced exponents") {
  auto job = induction_job_from_exponent(3, 1.0 / 8);
  auto ind = induced_exponents(job.L, twist(job.rep, 1));
  check_multiset(ind, {5.0 / 16, 3.0 / 16, 13.0 / 16, 11.0 / 16});
  CHECK(ind.trace().real() == doctest::Approx(job.L.trace().real() + 1));
  CHECK_KIND(induced_exponents(diag({0.1, 0.2}), job.rep), ErrorKind::GroupMismatch);

  // Full matrix: its spectrum reproduces the halving rule and Ind(rho)(T).
  Eigen::MatrixXcd L(2, 2);
  L << job.L.eigenvalues[0], 0, 0, job.L.eigenvalues[1];
  auto indm = induced_exponents(exponents_from_matrix(L, Group::G), twist(job.rep, 1));
  REQUIRE(indm.matrix);
  Eigen::MatrixXcd e = (cd(0, 2 * M_PI) * *indm.matrix).exp();
  auto spec = eigenvalues_of(e);
  check_exponents_match(ind, spec);
}

TEST_CASE("property: functor exponents land in the constructed T-spectrum") {
  std::mt19937_64 g(0x5eed22);
  for (int t = 0; t < 30; ++t) {
    const double e1 = vt::rand_rational(g, 60, -60, 60), e2 = vt::rand_rational(g, 60, -60, 60);
    const double f1 = vt::rand_rational(g, 60, -60, 60), f2 = vt::rand_rational(g, 60, -60, 60);
    const cd x = turn(e1), y = turn(e2), u = turn(f1), v = turn(f2);
    check_exponents_match(tensor_exponents(diag({e1, e2}), diag({f1, f2})), {x * u, x * v, y * u, y * v});
    check_exponents_match(sym3_exponents(diag({e1, e2})), {x * x * x, x * x * y, x * y * y, y * y * y});
    // Symmetry of the tensor functor up to order; exact bilinear trace law.
    auto a = sorted_real(tensor_exponents(diag({e1, e2}), diag({f1, f2})));
    auto b = sorted_real(tensor_exponents(diag({f1, f2}), diag({e1, e2})));
    for (size_t i = 0; i < 4; ++i) CHECK(a[i] == doctest::Approx(b[i]).epsilon(1e-14));
    CHECK(tensor_exponents(diag({e1, e2}), diag({f1, f2})).trace().real() ==
          doctest::Approx(2 * (e1 + e2) + 2 * (f1 + f2)).epsilon(1e-14));
    CHECK(sym3_exponents(diag({e1, e2})).trace().real() == doctest::Approx(6 * (e1 + e2)).epsilon(1e-14));

    const int k1 = static_cast<int>(g() % 12);
    const double r = vt::rand_rational(g, 60, 1, 30);
    InductionJob job;
    try {
      job = induction_job_from_exponent(k1, r);
    } catch (const Error& e) {
      // Parameters where the rank-2 rep degenerates.
      CHECK(e.kind() == ErrorKind::InconsistentRep);
      continue;
    }
    for (int j : {1, 2}) {
      auto rho = twist(job.rep, j);
      auto ind = induced_exponents(job.L, rho);
      check_exponents_match(ind, eigenvalues_of(Eigen::MatrixXcd(induced_t_matrix(rho))));
    }
  }
}

TEST_CASE("property: Tuba-Wenzl normal form relations") {
  std::mt19937_64 g(0x5eed23);
  for (int t = 0; t < 30; ++t) {
    const double a = vt::rand_rational(g, 24, 0, 24), b = vt::rand_rational(g, 24, 0, 24);
    const double c = vt::rand_rational(g, 24, 0, 24);
    const int d3 = static_cast<int>(g() % 3);
    const double w = d3 / 3.0 - a - b - c;
    const int e = static_cast<int>(g() % 2);
    auto rep = Rank4Rep::from_spectrum(turn(a), turn(b), turn(c), turn(w), e);
    auto m = tuba_wenzl_matrices(rep);
    const double sign = e == 0 ? 1.0 : -1.0;
    Eigen::Matrix4cd id = Eigen::Matrix4cd::Identity();
    CHECK((m.S * m.S - sign * id).norm() < 1e-9);
    CHECK((m.R * m.R * m.R - sign * id).norm() < 1e-9);
    CHECK(std::abs(m.S.trace()) < 1e-9);
    const cd tr_r = -std::pow(turn(1.0 / 6), -rep.d);
    CHECK(std::abs(m.R.trace() - tr_r) < 1e-9);
  }
}
