#include "vvmf/mlde.hpp"

#include <Eigen/SVD>
#include <algorithm>
#include <cmath>

#include "vvmf/error.hpp"

namespace vvmf {

namespace {

template <class Real>
double mag(const Cx<Real>& z) {
  using std::abs;
  return static_cast<double>(abs(z));
}

template <class Real>
Cx<Real> rat(long p, long q) {
  return Cx<Real>(Real(p) / Real(q));
}

// Solves A x = b by Gaussian elimination with partial pivoting. Returns
// |det A| divided by the product of row norms (Hadamard ratio), so callers can
// decide whether A was numerically singular.
template <class Real>
double solve_in_place(CMatrix<Real> a, std::vector<Cx<Real>>& b) {
  const size_t n = a.size();
  double hadamard = 1.0;
  for (size_t i = 0; i < n; ++i) {
    double s = 0.0;
    for (size_t j = 0; j < n; ++j) s += mag(a[i][j]) * mag(a[i][j]);
    hadamard *= std::sqrt(s);
  }
  double det = 1.0;
  for (size_t col = 0; col < n; ++col) {
    size_t piv = col;
    for (size_t i = col + 1; i < n; ++i)
      if (mag(a[i][col]) > mag(a[piv][col])) piv = i;
    std::swap(a[col], a[piv]);
    std::swap(b[col], b[piv]);
    det *= mag(a[col][col]);
    if (mag(a[col][col]) == 0.0) return 0.0;
    for (size_t i = col + 1; i < n; ++i) {
      Cx<Real> m = a[i][col] / a[col][col];
      for (size_t j = col; j < n; ++j) a[i][j] -= m * a[col][j];
      b[i] -= m * b[col];
    }
  }
  for (size_t ii = n; ii-- > 0;) {
    Cx<Real> s = b[ii];
    for (size_t j = ii + 1; j < n; ++j) s -= a[ii][j] * b[j];
    b[ii] = s / a[ii][ii];
  }
  return hadamard > 0.0 ? det / hadamard : 0.0;
}

// A vector spanning the kernel of a corank-1 matrix, by elimination with
// complete pivoting.
template <class Real>
std::vector<Cx<Real>> null_vector(CMatrix<Real> a) {
  const size_t n = a.size();
  std::vector<size_t> cols(n);
  for (size_t j = 0; j < n; ++j) cols[j] = j;
  for (size_t k = 0; k + 1 < n; ++k) {
    size_t pr = k, pc = k;
    for (size_t i = k; i < n; ++i)
      for (size_t j = k; j < n; ++j)
        if (mag(a[i][cols[j]]) > mag(a[pr][cols[pc]])) {
          pr = i;
          pc = j;
        }
    std::swap(a[k], a[pr]);
    std::swap(cols[k], cols[pc]);
    if (mag(a[k][cols[k]]) == 0.0) break;
    for (size_t i = k + 1; i < n; ++i) {
      Cx<Real> m = a[i][cols[k]] / a[k][cols[k]];
      for (size_t j = k; j < n; ++j) a[i][cols[j]] -= m * a[k][cols[j]];
    }
  }
  std::vector<Cx<Real>> x(n);
  x[cols[n - 1]] = Cx<Real>(Real(1));
  for (size_t kk = n - 1; kk-- > 0;) {
    Cx<Real> s;
    for (size_t j = kk + 1; j < n; ++j) s -= a[kk][cols[j]] * x[cols[j]];
    if (mag(a[kk][cols[kk]]) == 0.0) {
      x[cols[kk]] = Cx<Real>();
    } else {
      x[cols[kk]] = s / a[kk][cols[kk]];
    }
  }
  return x;
}

template <class Real>
std::vector<Cx<Real>> row_times(const std::vector<Cx<Real>>& v, const CMatrix<Real>& m) {
  std::vector<Cx<Real>> out(m.front().size());
  for (size_t j = 0; j < out.size(); ++j)
    for (size_t i = 0; i < v.size(); ++i) out[j] += v[i] * m[i][j];
  return out;
}

template <class Real>
double poly_scale(const std::vector<Cx<Real>>& p, const Cx<Real>& t) {
  double s = 0.0, tp = 1.0, at = mag(t);
  for (const auto& c : p) {
    s += mag(c) * tp;
    tp *= at;
  }
  return s;
}

template <class Real>
PuiseuxSeries<Real> sum_all(const std::vector<PuiseuxSeries<Real>>& terms) {
  PuiseuxSeries<Real> acc = terms.front();
  for (size_t i = 1; i < terms.size(); ++i) acc = acc + terms[i];
  return acc;
}

template <class Real>
std::array<Cx<Real>, 5> elementary_symmetric(const std::array<Cx<Real>, 4>& f) {
  std::array<Cx<Real>, 5> s{};
  s[0] = Cx<Real>(Real(1));
  for (const auto& x : f)
    for (int k = 4; k >= 1; --k) s[k] += s[k - 1] * x;
  return s;
}

template <class Real>
void check_nonzero(const VectorSeries<Real>& f) {
  for (const auto& c : f.components)
    if (c.max_abs() != 0) return;
  throw Error(ErrorKind::ZeroForm, "input form is identically zero");
}

template <class Real>
Real vector_relative(const std::vector<PuiseuxSeries<Real>>& residuals,
                     const std::vector<std::vector<PuiseuxSeries<Real>>>& terms) {
  Real num(0), den(0);
  for (const auto& r : residuals) num = std::max(num, r.max_abs());
  for (const auto& ts : terms)
    for (const auto& t : ts) den = std::max(den, t.max_abs());
  if (den == 0) return num;
  return num / den;
}

}  // namespace

std::string case_name(CaseKind c) { return c == CaseKind::Cyclic ? "cyclic" : "noncyclic"; }

CaseReport classify(const Rank4Rep& rep, const ExponentData& L) {
  if (L.group != Group::Gamma) throw Error(ErrorKind::GroupMismatch, "rank-4 exponents must be for Gamma");
  if (L.rank() != 4) throw Error(ErrorKind::WrongRank, "expected 4 exponents");
  int d = d_invariant(rep);
  cd t3 = 3.0 * L.trace();
  if (!near_integer(t3)) throw Error(ErrorKind::NonIntegralThreeTrace, "3 Tr(L) is not an integer");
  long t = nearest_integer(t3);
  if (mod(t - d, 3) != 0)
    throw Error(ErrorKind::TraceDCongruenceViolation,
                "3 Tr(L) = " + std::to_string(t) + " but d = " + std::to_string(d));
  check_exponents_match(L, rep.spectrum());

  CaseReport out;
  out.d = d;
  out.e = rep.e;
  out.three_trace = static_cast<int>(t);
  if (mod(t - rep.e, 2) == 1) {
    out.kind = CaseKind::Cyclic;
    out.k1 = static_cast<int>(t) - 3;
    out.weights = {out.k1, out.k1 + 2, out.k1 + 4, out.k1 + 6};
  } else {
    out.kind = CaseKind::Noncyclic;
    out.k1 = static_cast<int>(t) - 2;
    out.weights = {out.k1, out.k1 + 2, out.k1 + 2, out.k1 + 4};
  }
  return out;
}

int dimension(int k, const Rank4Rep& rep, const ExponentData& L) {
  CaseReport cr = classify(rep, L);
  if (k < cr.three_trace - 3) return 0;
  if (mod(k - cr.d, 2) == 0) return 0;
  const cd zeta = unit_root<double>(1, 3);
  long kd = k - cr.d;
  cd chi = cd((5.0 + k - cr.three_trace) / 3.0) - unit_root<double>(kd, 6) / (3.0 * (1.0 - zeta)) +
           unit_root<double>(kd, 3) / (3.0 * (1.0 - std::conj(zeta)));
  if (!near_integer(chi, 1e-8))
    throw Error(ErrorKind::ValidationError, "Euler characteristic is not an integer");
  long v = nearest_integer(chi);
  return static_cast<int>(std::max(0L, v));
}

template <class Real>
std::array<Cx<Real>, 4> shifted_exponents(const std::vector<cd>& e, CaseKind kind) {
  if (e.size() != 4) throw Error(ErrorKind::WrongRank, "expected 4 exponents");
  std::array<Cx<Real>, 4> ex;
  Cx<Real> tr;
  for (size_t j = 0; j < 4; ++j) {
    ex[j] = lift<Real>(e[j]);
    tr += ex[j];
  }
  Cx<Real> shift = kind == CaseKind::Cyclic ? (Cx<Real>(Real(1)) - tr) / Real(4)
                                            : rat<Real>(1, 6) - tr / Real(4);
  for (auto& x : ex) x += shift;
  return ex;
}

template <class Real>
ODECoefficients<Real> cyclic_coeffs(const std::array<Cx<Real>, 4>& f) {
  auto s = elementary_symmetric(f);
  if (mag(s[1] - Cx<Real>(Real(1))) > 1e-9)
    throw Error(ErrorKind::ExponentSumMismatch, "cyclic exponents must sum to 1");
  ODECoefficients<Real> co;
  co.kind = CaseKind::Cyclic;
  co.f = f;
  co.a = s[2] - rat<Real>(11, 36);
  co.b = -s[3] + co.a / Real(6) + rat<Real>(1, 36);
  co.c = s[4];
  return co;
}

template <class Real>
ODECoefficients<Real> noncyclic_coeffs(const std::array<Cx<Real>, 4>& f) {
  auto s = elementary_symmetric(f);
  if (mag(s[1] - rat<Real>(2, 3)) > 1e-9)
    throw Error(ErrorKind::ExponentSumMismatch, "noncyclic exponents must sum to 2/3");
  ODECoefficients<Real> co;
  co.kind = CaseKind::Noncyclic;
  co.f = f;
  co.a = Real(-3) * s[3] + s[2] / Real(2) - rat<Real>(1, 24);
  co.b = Real(3) * s[3] - Real(3) * s[2] / Real(2) + rat<Real>(13, 72);
  co.c = -s[4] - co.a / Real(18);
  return co;
}

template <class Real>
Cx<Real> FuchsianOperator<Real>::eval(size_t i, const Cx<Real>& t) const {
  Cx<Real> acc;
  const auto& p = polys[i];
  for (size_t k = p.size(); k-- > 0;) acc = acc * t + p[k];
  return acc;
}

template <class Real>
FuchsianOperator<Real> build_cyclic_operator(const ODECoefficients<Real>& co) {
  using C = Cx<Real>;
  const C a = co.a, b = co.b, c = co.c;
  const Real r36(36);
  FuchsianOperator<Real> op;
  op.nome = Nome::K;
  op.polys = {
      {r36 * c, r36 * b - Real(6) * a - Real(1), r36 * a + Real(11), C(Real(-36)), C(r36)},
      {C(), -(Real(12) * a + r36 * b + Real(4)), -(r36 * a + Real(28)), C(Real(-36)), C(Real(-72))},
      {C(), C(Real(8)), C(Real(44)), C(Real(72)), C(r36)},
  };
  return op;
}

template <class Real>
FuchsianOperator<Real> build_noncyclic_operator(const ODECoefficients<Real>& co) {
  using C = Cx<Real>;
  const C a = co.a, b = co.b, c = co.c;
  const Real r108(108);
  FuchsianOperator<Real> op;
  op.nome = Nome::K;
  op.polys = {
      {Real(-6) * a - r108 * c, Real(54) * a + Real(18) * b - Real(1), Real(15) - r108 * (a + b), C(Real(-72)),
       C(r108)},
      {Real(-12) * a, Real(36) * b - Real(22), r108 * (a + b) - Real(102), C(Real(-180)), C(Real(-216))},
      {C(), C(Real(32)), C(Real(168)), C(Real(252)), C(r108)},
  };
  return op;
}

template <class Real>
FuchsianOperator<Real> build_hypergeometric_operator(const Cx<Real>& a, const Cx<Real>& b, const Cx<Real>& c,
                                                     Nome nome) {
  using C = Cx<Real>;
  FuchsianOperator<Real> op;
  op.nome = nome;
  op.polys = {{C(), c - Real(1), C(Real(1))}, {-a * b, -(a + b), C(Real(-1))}};
  return op;
}

template <class Real>
FuchsianOperator<Real> build_rank2_operator(const Cx<Real>& s) {
  using C = Cx<Real>;
  FuchsianOperator<Real> op;
  op.nome = Nome::K;
  op.polys = {{s, -rat<Real>(1, 6), C(Real(1))}, {C(), -rat<Real>(1, 3), C(Real(-1))}};
  return op;
}

template <class Real>
NoncyclicSystem<Real> build_noncyclic_system(const ODECoefficients<Real>& co) {
  using C = Cx<Real>;
  if (mag(co.c) < kStructuralTol) throw Error(ErrorKind::DegenerateC, "c = 0 in the noncyclic system");
  const C z, one(Real(1));
  const C s6 = rat<Real>(1, 6), s3 = rat<Real>(1, 3);
  NoncyclicSystem<Real> sys;
  sys.b0 = {{z, co.a, one, z}, {one, s6, z, co.b}, {z, z, s6, co.c}, {z, one, z, s3}};
  sys.b1 = {{z, z, z, z}, {-one, s3, z, -co.b}, {z, z, s3, -co.c}, {z, z, z, -s3}};
  return sys;
}

template <class Real>
std::vector<Cx<Real>> left_eigenvector(const CMatrix<Real>& b0, const Cx<Real>& r) {
  const size_t n = b0.size();
  // v (rI - B0) = 0  <=>  (rI - B0)^T v^T = 0.
  CMatrix<Real> at(n, std::vector<Cx<Real>>(n));
  double norm = mag(r);
  for (size_t i = 0; i < n; ++i)
    for (size_t j = 0; j < n; ++j) {
      at[j][i] = (i == j ? r : Cx<Real>()) - b0[i][j];
      norm = std::max(norm, mag(b0[i][j]));
    }
  auto v = null_vector(at);
  size_t big = 0;
  for (size_t i = 1; i < n; ++i)
    if (mag(v[i]) > mag(v[big])) big = i;
  Cx<Real> piv = v[big];
  for (auto& x : v) x /= piv;
  for (size_t j = 0; j < n; ++j) {
    Cx<Real> s;
    for (size_t i = 0; i < n; ++i) s += v[i] * at[j][i];
    if (mag(s) > kStructuralTol * (1.0 + norm))
      throw Error(ErrorKind::NotLeftEigenvector, "r is not an eigenvalue of B0");
  }
  return v;
}

template <class Real>
PuiseuxSeries<Real> frobenius_solve(const FuchsianOperator<Real>& op, const Cx<Real>& r, int order) {
  using C = Cx<Real>;
  const auto& p0 = op.polys.front();
  double sc = std::max(poly_scale(p0, r), mag(p0.back()));
  if (mag(op.eval(0, r)) > kStructuralTol * sc)
    throw Error(ErrorKind::NotAnExponent, "P0(r) != 0");
  std::vector<C> c(static_cast<size_t>(order) + 1);
  c[0] = C(Real(1));
  for (int n = 1; n <= order; ++n) {
    C t = r + Real(n);
    C den = op.eval(0, t);
    if (mag(den) <= 1e-10 * std::max(poly_scale(p0, t), mag(p0.back())))
      throw Error(ErrorKind::Resonance, "P0(r + " + std::to_string(n) + ") = 0");
    C acc;
    for (size_t i = 1; i < op.polys.size() && static_cast<int>(i) <= n; ++i)
      acc += op.eval(i, r + Real(n - static_cast<int>(i))) * c[static_cast<size_t>(n) - i];
    c[static_cast<size_t>(n)] = -acc / den;
  }
  return PuiseuxSeries<Real>(op.nome, r, std::move(c));
}

template <class Real>
std::vector<PuiseuxSeries<Real>> frobenius_solve_system(const CMatrix<Real>& b0, const CMatrix<Real>& b1,
                                                        const Cx<Real>& r, const std::vector<Cx<Real>>& v0,
                                                        int order, Nome nome) {
  using C = Cx<Real>;
  const size_t m = b0.size();
  if (v0.size() != m) throw Error(ErrorKind::WrongRank, "initial vector has wrong length");
  {
    double norm = mag(r);
    for (const auto& row : b0)
      for (const auto& x : row) norm = std::max(norm, mag(x));
    double vn = 0.0;
    for (const auto& x : v0) vn = std::max(vn, mag(x));
    auto vb = row_times(v0, b0);
    for (size_t j = 0; j < m; ++j)
      if (mag(r * v0[j] - vb[j]) > kStructuralTol * (1.0 + norm) * std::max(vn, 1e-300))
        throw Error(ErrorKind::NotLeftEigenvector, "v0 (rI - B0) != 0");
  }
  std::vector<std::vector<C>> cs(m, std::vector<C>(static_cast<size_t>(order) + 1));
  for (size_t j = 0; j < m; ++j) cs[j][0] = v0[j];
  std::vector<C> prev = v0;
  for (int n = 1; n <= order; ++n) {
    // c_n ((r+n) I - B0) = c_{n-1} ((r+n-1) I + B1)
    std::vector<C> rhs = row_times(prev, b1);
    for (size_t j = 0; j < m; ++j) rhs[j] += (r + Real(n - 1)) * prev[j];
    CMatrix<Real> at(m, std::vector<C>(m));
    for (size_t i = 0; i < m; ++i)
      for (size_t j = 0; j < m; ++j) at[j][i] = (i == j ? r + Real(n) : C()) - b0[i][j];
    double ratio = solve_in_place(at, rhs);
    if (ratio < 1e-10) throw Error(ErrorKind::Resonance, "(r + " + std::to_string(n) + ") I - B0 is singular");
    for (size_t j = 0; j < m; ++j) cs[j][static_cast<size_t>(n)] = rhs[j];
    prev = rhs;
  }
  std::vector<PuiseuxSeries<Real>> out;
  for (size_t j = 0; j < m; ++j) out.emplace_back(nome, r, std::move(cs[j]));
  return out;
}

template <class Real>
PuiseuxSeries<Real> hypergeom_2f1(const Cx<Real>& a, const Cx<Real>& b, const Cx<Real>& c, int order, Nome nome) {
  using C = Cx<Real>;
  std::vector<C> t(static_cast<size_t>(order) + 1);
  t[0] = C(Real(1));
  for (int n = 0; n < order; ++n) {
    C cn = c + Real(n);
    if (mag(cn) < kStructuralTol) throw Error(ErrorKind::PoleInC, "c + " + std::to_string(n) + " = 0");
    t[static_cast<size_t>(n) + 1] =
        t[static_cast<size_t>(n)] * (a + Real(n)) * (b + Real(n)) / (cn * Real(n + 1));
  }
  return PuiseuxSeries<Real>(nome, C(), std::move(t));
}

template <class Real>
OperatorApplication<Real> apply_operator(const FuchsianOperator<Real>& op, const PuiseuxSeries<Real>& s) {
  std::vector<PuiseuxSeries<Real>> pows{s};
  for (int k = 1; k <= op.order(); ++k) pows.push_back(theta(pows.back()));
  OperatorApplication<Real> out;
  for (size_t i = 0; i < op.polys.size(); ++i) {
    const auto& p = op.polys[i];
    PuiseuxSeries<Real> t = PuiseuxSeries<Real>::zero(s.nome(), s.order(), s.lead());
    for (size_t k = 0; k < p.size(); ++k)
      if (p[k] != Cx<Real>()) t = t + p[k] * pows[k];
    out.terms.push_back(t.with_lead(t.lead() + Real(static_cast<long>(i))));
  }
  out.result = sum_all(out.terms);
  return out;
}

template <class Real>
Real system_residual(const NoncyclicSystem<Real>& sys, const std::vector<PuiseuxSeries<Real>>& x) {
  const size_t m = sys.b0.size();
  if (x.size() != m) throw Error(ErrorKind::WrongRank, "solution vector has wrong length");
  std::vector<PuiseuxSeries<Real>> res;
  std::vector<std::vector<PuiseuxSeries<Real>>> terms;
  for (size_t j = 0; j < m; ++j) {
    auto th = theta(x[j]);
    std::vector<PuiseuxSeries<Real>> ts{th, -(th.with_lead(th.lead() + Real(1)))};
    for (size_t i = 0; i < m; ++i) {
      if (sys.b0[i][j] != Cx<Real>()) ts.push_back(-(sys.b0[i][j] * x[i]));
      if (sys.b1[i][j] != Cx<Real>()) {
        auto t = -(sys.b1[i][j] * x[i]);
        ts.push_back(t.with_lead(t.lead() + Real(1)));
      }
    }
    res.push_back(sum_all(ts));
    terms.push_back(ts);
  }
  return vector_relative(res, terms);
}

template <class Real>
OperatorApplication<Real> apply_operator_on_q(const FuchsianOperator<Real>& op, const PuiseuxSeries<Real>& s,
                                              const ClassicalCatalog<Real>& cat) {
  if (s.nome() != Nome::Q) throw Error(ErrorKind::WrongNome, "expected a q-series");
  const auto w = cat.e4() * invert(cat.e6());
  std::vector<PuiseuxSeries<Real>> pows{s};
  for (int k = 1; k <= op.order(); ++k) pows.push_back(w * theta(pows.back()));
  OperatorApplication<Real> out;
  PuiseuxSeries<Real> kpow = PuiseuxSeries<Real>::constant(Nome::Q, Cx<Real>(Real(1)), cat.order());
  for (size_t i = 0; i < op.polys.size(); ++i) {
    const auto& p = op.polys[i];
    PuiseuxSeries<Real> t = PuiseuxSeries<Real>::zero(Nome::Q, s.order(), s.lead());
    for (size_t k = 0; k < p.size(); ++k)
      if (p[k] != Cx<Real>()) t = t + p[k] * pows[k];
    out.terms.push_back(i == 0 ? t : kpow * t);
    kpow = kpow * cat.k();
  }
  out.result = sum_all(out.terms);
  return out;
}

template <class Real>
VectorSeries<Real> modular_derivative(const VectorSeries<Real>& f, const ClassicalCatalog<Real>& cat) {
  std::vector<PuiseuxSeries<Real>> out;
  for (const auto& c : f.components) out.push_back(modular_derivative(c, f.weight, cat));
  return VectorSeries<Real>(std::move(out), f.weight + 2);
}

template <class Real>
FormBasis<Real> assemble_cyclic_basis(const VectorSeries<Real>& f, const ODECoefficients<Real>& co,
                                      const CaseReport& report, const ClassicalCatalog<Real>& cat,
                                      double tol) {
  check_nonzero(f);
  FormBasis<Real> basis;
  basis.report = report;
  basis.forms.push_back(f);
  for (int i = 0; i < 4; ++i) basis.forms.push_back(modular_derivative(basis.forms.back(), cat));
  VectorSeries<Real> d4 = basis.forms.back();
  basis.forms.pop_back();

  const Nome nm = f.nome();
  const auto& e4 = cat.e4(nm);
  const auto& e6 = cat.e6(nm);
  const auto e44 = e4 * e4;
  std::vector<PuiseuxSeries<Real>> res;
  std::vector<std::vector<PuiseuxSeries<Real>>> terms;
  for (size_t j = 0; j < f.rank(); ++j) {
    std::vector<PuiseuxSeries<Real>> ts{d4.components[j], co.a * (e4 * basis.forms[2].components[j]),
                                        co.b * (e6 * basis.forms[1].components[j]),
                                        co.c * (e44 * f.components[j])};
    res.push_back(sum_all(ts));
    terms.push_back(ts);
  }
  basis.diagnostics.push_back({"cyclic MLDE residual", static_cast<double>(vector_relative(res, terms)), tol});
  basis.diagnostics.push_back({"leading coefficient rank", leading_rank_ratio(basis.forms), 1e-6, false});
  return basis;
}

template <class Real>
FormBasis<Real> assemble_noncyclic_basis(const VectorSeries<Real>& f, const ODECoefficients<Real>& co,
                                         const CaseReport& report, const ClassicalCatalog<Real>& cat,
                                         double tol) {
  check_nonzero(f);
  if (mag(co.c) < kStructuralTol) throw Error(ErrorKind::DegenerateC, "c = 0 in the noncyclic basis");
  const Nome nm = f.nome();
  const auto& e4 = cat.e4(nm);
  const auto inv_ce4 = invert(co.c * e4);

  const auto df = modular_derivative(f, cat);
  const auto d2f = modular_derivative(df, cat);
  std::vector<PuiseuxSeries<Real>> hc;
  for (size_t j = 0; j < f.rank(); ++j) hc.push_back(d2f.components[j] - co.a * (e4 * f.components[j]));
  const VectorSeries<Real> h(std::move(hc), f.weight + 4);
  const auto dh = modular_derivative(h, cat);
  std::vector<PuiseuxSeries<Real>> gc;
  for (size_t j = 0; j < f.rank(); ++j)
    gc.push_back((dh.components[j] - co.b * (e4 * df.components[j])) * inv_ce4);
  const VectorSeries<Real> g(std::move(gc), f.weight + 2);
  const auto dg = modular_derivative(g, cat);

  std::vector<PuiseuxSeries<Real>> r1, r2;
  std::vector<std::vector<PuiseuxSeries<Real>>> t1, t2;
  double drop = 0.0;
  for (size_t j = 0; j < f.rank(); ++j) {
    std::vector<PuiseuxSeries<Real>> a{dg.components[j], -(e4 * f.components[j])};
    r1.push_back(sum_all(a));
    t1.push_back(a);
    std::vector<PuiseuxSeries<Real>> b{dh.components[j], -(co.b * (e4 * df.components[j])),
                                       -(co.c * (e4 * g.components[j]))};
    r2.push_back(sum_all(b));
    t2.push_back(b);
    drop = std::max(drop, static_cast<double>(f.components[j].lead().real() - g.components[j].lead().real()));
  }

  FormBasis<Real> basis;
  basis.report = report;
  basis.forms = {f, df, g, h};
  basis.diagnostics.push_back({"DG = E4 F", static_cast<double>(vector_relative(r1, t1)), tol});
  basis.diagnostics.push_back({"DH = b E4 DF + c E4 G", static_cast<double>(vector_relative(r2, t2)), tol});
  basis.diagnostics.push_back({"G exponent drop", std::max(drop, 0.0), kStructuralTol});
  basis.diagnostics.push_back({"leading coefficient rank", leading_rank_ratio(basis.forms), 1e-6, false});
  return basis;
}

template <class Real>
double leading_rank_ratio(const std::vector<VectorSeries<Real>>& forms) {
  if (forms.empty()) return 0.0;
  constexpr int kWindow = 4;
  const auto& ref = forms.front();
  std::vector<std::vector<cd>> cols;
  for (size_t j = 0; j < ref.rank(); ++j) {
    for (int n = 0; n < kWindow && n <= ref.order(); ++n) {
      std::vector<cd> col;
      for (const auto& fm : forms) {
        const auto& s = fm.components[j];
        Cx<Real> gap = ref.components[j].lead() + Real(n) - s.lead();
        cd gd = to_cd(gap);
        cd v = 0.0;
        if (near_integer(gd)) {
          long idx = nearest_integer(gd);
          if (idx >= 0 && idx <= s.order()) v = to_cd(s[static_cast<int>(idx)]);
        }
        col.push_back(v);
      }
      cols.push_back(col);
    }
  }
  double gmax = 0.0;
  for (const auto& c : cols)
    for (const auto& v : c) gmax = std::max(gmax, std::abs(v));
  if (gmax == 0.0) return 0.0;
  std::vector<std::vector<cd>> kept;
  for (auto& c : cols) {
    double cm = 0.0;
    for (const auto& v : c) cm = std::max(cm, std::abs(v));
    if (cm <= 1e-8 * gmax) continue;
    for (auto& v : c) v /= cm;
    kept.push_back(c);
  }
  if (kept.size() < forms.size()) return 0.0;
  Eigen::MatrixXcd m(static_cast<Eigen::Index>(forms.size()), static_cast<Eigen::Index>(kept.size()));
  for (size_t c = 0; c < kept.size(); ++c)
    for (size_t r = 0; r < forms.size(); ++r)
      m(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c)) = kept[c][r];
  Eigen::JacobiSVD<Eigen::MatrixXcd> svd(m);
  const auto& sv = svd.singularValues();
  return sv(sv.size() - 1) / sv(0);
}

#define VVMF_INSTANTIATE_MLDE(R)                                                                                \
  template std::array<Cx<R>, 4> shifted_exponents<R>(const std::vector<cd>&, CaseKind);                        \
  template ODECoefficients<R> cyclic_coeffs<R>(const std::array<Cx<R>, 4>&);                                   \
  template ODECoefficients<R> noncyclic_coeffs<R>(const std::array<Cx<R>, 4>&);                                \
  template struct FuchsianOperator<R>;                                                                          \
  template FuchsianOperator<R> build_cyclic_operator<R>(const ODECoefficients<R>&);                            \
  template FuchsianOperator<R> build_noncyclic_operator<R>(const ODECoefficients<R>&);                         \
  template FuchsianOperator<R> build_hypergeometric_operator<R>(const Cx<R>&, const Cx<R>&, const Cx<R>&,      \
                                                                Nome);                                          \
  template FuchsianOperator<R> build_rank2_operator<R>(const Cx<R>&);                                          \
  template NoncyclicSystem<R> build_noncyclic_system<R>(const ODECoefficients<R>&);                            \
  template std::vector<Cx<R>> left_eigenvector<R>(const CMatrix<R>&, const Cx<R>&);                            \
  template PuiseuxSeries<R> frobenius_solve<R>(const FuchsianOperator<R>&, const Cx<R>&, int);                 \
  template std::vector<PuiseuxSeries<R>> frobenius_solve_system<R>(const CMatrix<R>&, const CMatrix<R>&,       \
                                                                   const Cx<R>&, const std::vector<Cx<R>>&,    \
                                                                   int, Nome);                                  \
  template PuiseuxSeries<R> hypergeom_2f1<R>(const Cx<R>&, const Cx<R>&, const Cx<R>&, int, Nome);             \
  template OperatorApplication<R> apply_operator<R>(const FuchsianOperator<R>&, const PuiseuxSeries<R>&);      \
  template R system_residual<R>(const NoncyclicSystem<R>&, const std::vector<PuiseuxSeries<R>>&);              \
  template OperatorApplication<R> apply_operator_on_q<R>(const FuchsianOperator<R>&, const PuiseuxSeries<R>&,  \
                                                         const ClassicalCatalog<R>&);                           \
  template VectorSeries<R> modular_derivative<R>(const VectorSeries<R>&, const ClassicalCatalog<R>&);          \
  template FormBasis<R> assemble_cyclic_basis<R>(const VectorSeries<R>&, const ODECoefficients<R>&,            \
                                                 const CaseReport&, const ClassicalCatalog<R>&, double);        \
  template FormBasis<R> assemble_noncyclic_basis<R>(const VectorSeries<R>&, const ODECoefficients<R>&,         \
                                                    const CaseReport&, const ClassicalCatalog<R>&, double);     \
  template double leading_rank_ratio<R>(const std::vector<VectorSeries<R>>&);

VVMF_INSTANTIATE_MLDE(double)
VVMF_INSTANTIATE_MLDE(Mp)

}  // namespace vvmf
