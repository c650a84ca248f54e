#include "vvmf/constructions.hpp"

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
void require_order(const ClassicalCatalog<Real>& cat, int order) {
  if (order < 1) throw Error(ErrorKind::ValidationError, "order must be at least 1");
  if (cat.order() < order)
    throw Error(ErrorKind::ValidationError, "catalog order " + std::to_string(cat.order()) +
                                                " is below the requested order " + std::to_string(order));
}

// Largest distance in a greedy nearest matching of two multisets.
double multiset_distance(const std::vector<cd>& got, const std::vector<cd>& want) {
  if (got.size() != want.size()) return INFINITY;
  std::vector<bool> used(want.size(), false);
  double worst = 0.0;
  for (const auto& g : got) {
    size_t best = want.size();
    for (size_t i = 0; i < want.size(); ++i)
      if (!used[i] && (best == want.size() || std::abs(g - want[i]) < std::abs(g - want[best]))) best = i;
    used[best] = true;
    worst = std::max(worst, std::abs(g - want[best]));
  }
  return worst;
}

template <class Real>
Real relative_pair(const std::vector<PuiseuxSeries<Real>>& lhs, const std::vector<PuiseuxSeries<Real>>& rhs) {
  Real num(0), den(0);
  for (size_t j = 0; j < lhs.size(); ++j) {
    num = std::max(num, (lhs[j] - rhs[j]).max_abs());
    den = std::max({den, lhs[j].max_abs(), rhs[j].max_abs()});
  }
  return den == 0 ? num : num / den;
}

template <class Real>
PuiseuxSeries<Real> times_eta(const PuiseuxSeries<Real>& s, int m, const ClassicalCatalog<Real>& cat) {
  return s * cat.eta_power(m, s.nome());
}

void require_series_form(const Rank2Rep& r) {
  if (r.jordan)
    throw Error(ErrorKind::ResonantExponents, "a Jordan-type factor has no Frobenius expansion in series form");
}

// First nonzero index relative to the size of the opening coefficients.
template <class Real>
std::optional<int> leading_index(const PuiseuxSeries<Real>& s, const PuiseuxSeries<Real>& ref) {
  Real scale(0);
  for (int n = 0; n <= std::min(ref.order(), 8); ++n) {
    using std::abs;
    scale = std::max(scale, Real(abs(ref[n])));
  }
  if (scale == 0) return std::nullopt;
  return s.first_nonzero(scale * Real(1e-8));
}

}  // namespace

std::string rank2_source_name(Rank2Source s) { return s == Rank2Source::Hypergeometric ? "hypergeometric" : "nu_chi"; }

template <class Real>
Rank2MinimalForm<Real> rank2_minimal(const Rank2Rep& rep, const ExponentData& L, int order,
                                     const ClassicalCatalog<Real>& cat) {
  using C = Cx<Real>;
  require_order(cat, order);
  validate(rep);
  if (!rank2_is_irreducible(rep)) throw Error(ErrorKind::ReducibleRep, "rank-2 representation is reducible");
  if (L.group != Group::Gamma) throw Error(ErrorKind::GroupMismatch, "rank-2 exponents must be for Gamma");
  if (L.rank() != 2) throw Error(ErrorKind::WrongRank, "expected 2 exponents");
  check_exponents_match(L, rep.jordan ? std::vector<cd>{rep.x, rep.x} : std::vector<cd>{rep.x, rep.y});

  const cd six_tr = 6.0 * L.trace();
  if (!near_integer(six_tr)) throw Error(ErrorKind::ValidationError, "6 Tr(L) is not an integer");
  Rank2MinimalForm<Real> out;
  out.k1 = static_cast<int>(nearest_integer(six_tr)) - 1;

  if (rep.jordan) {
    if (std::abs(L.eigenvalues[0] - L.eigenvalues[1]) > kStructuralTol)
      throw Error(ErrorKind::InconsistentRep, "a Jordan block needs a repeated exponent");
    out.source = Rank2Source::NuChi;
    out.symbolic_first = true;
    auto second = cat.eta_power(2 * out.k1 + 2).truncated(order);
    auto first = PuiseuxSeries<Real>::zero(Nome::Q, order, second.lead());
    out.form = VectorSeries<Real>({first, second}, out.k1);
    return out;
  }

  const C r1 = lift<Real>(L.eigenvalues[0]), r2 = lift<Real>(L.eigenvalues[1]);
  if (near_integer(L.eigenvalues[0] - L.eigenvalues[1]))
    throw Error(ErrorKind::ResonantExponents, "r1 - r2 is an integer");
  const C third(Real(1) / Real(3));
  std::vector<PuiseuxSeries<Real>> comps;
  for (int j = 0; j < 2; ++j) {
    const C d = j == 0 ? r1 - r2 : r2 - r1;
    const C alpha = (Real(6) * d + Real(1)) / Real(12);
    auto h = hypergeom_2f1(alpha, alpha + third, d + Real(1), order).with_lead(alpha);
    comps.push_back(times_eta(compose_frobenius(h, cat.k()), 2 * out.k1, cat).truncated(order));
  }
  out.form = VectorSeries<Real>(std::move(comps), out.k1);
  return out;
}

template <class Real>
VectorSeries<Real> rank2_via_frobenius(const Rank2Rep& rep, const ExponentData& L, int order,
                                       const ClassicalCatalog<Real>& cat) {
  using C = Cx<Real>;
  require_order(cat, order);
  validate(rep);
  require_series_form(rep);
  if (!rank2_is_irreducible(rep)) throw Error(ErrorKind::ReducibleRep, "rank-2 representation is reducible");
  if (L.rank() != 2) throw Error(ErrorKind::WrongRank, "expected 2 exponents");
  check_exponents_match(L, {rep.x, rep.y});
  const cd six_tr = 6.0 * L.trace();
  if (!near_integer(six_tr)) throw Error(ErrorKind::ValidationError, "6 Tr(L) is not an integer");
  const int k1 = static_cast<int>(nearest_integer(six_tr)) - 1;
  const C shift(Real(k1) / Real(12));
  const C f1 = lift<Real>(L.eigenvalues[0]) - shift, f2 = lift<Real>(L.eigenvalues[1]) - shift;
  auto op = build_rank2_operator(f1 * f2);
  std::vector<PuiseuxSeries<Real>> comps;
  for (const auto& f : {f1, f2})
    comps.push_back(times_eta(compose_frobenius(frobenius_solve(op, f, order), cat.k()), 2 * k1, cat).truncated(order));
  return VectorSeries<Real>(std::move(comps), k1);
}

template <class Real>
FormBasis<Real> tensor_pipeline(const Rank2Rep& alpha, const Rank2Rep& beta, const ExponentData& l1,
                                const ExponentData& l2, int order, const ClassicalCatalog<Real>& cat) {
  if (!tensor_is_irreducible(alpha, beta)) throw Error(ErrorKind::NotIrreducible, "tensor product is reducible");
  require_series_form(alpha);
  require_series_form(beta);
  auto a = rank2_minimal(alpha, l1, order, cat);
  auto b = rank2_minimal(beta, l2, order, cat);
  std::vector<PuiseuxSeries<Real>> comps;
  for (const auto& x : a.form.components)
    for (const auto& y : b.form.components) comps.push_back(x * y);
  VectorSeries<Real> f(std::move(comps), a.k1 + b.k1);

  const ExponentData L = tensor_exponents(l1, l2);
  const Rank4Rep rep4 = Rank4Rep::from_spectrum(alpha.x * beta.x, alpha.x * beta.y, alpha.y * beta.x,
                                                alpha.y * beta.y, static_cast<int>(mod(parity(alpha) + parity(beta), 2)));
  const CaseReport report = classify(rep4, L);
  if (report.kind != CaseKind::Noncyclic)
    throw Error(ErrorKind::ValidationError, "tensor product classified as cyclic");
  const auto co = noncyclic_coeffs(shifted_exponents<Real>(L.eigenvalues, CaseKind::Noncyclic));
  FormBasis<Real> basis = assemble_noncyclic_basis(f, co, report, cat);

  const auto op = build_noncyclic_operator(co);
  double worst = 0.0;
  for (const auto& c : f.components) {
    auto ft = times_eta(c, -2 * report.k1, cat);
    worst = std::max(worst, static_cast<double>(apply_operator_on_q(op, ft, cat).relative()));
  }
  basis.diagnostics.insert(basis.diagnostics.begin(), Diagnostic{"noncyclic ODE residual", worst, kResidualTol});
  basis.diagnostics.push_back({"minimal weight", std::abs(static_cast<double>(report.k1 - f.weight)), 0.5});
  return basis;
}

template <class Real>
FormBasis<Real> sym3_pipeline(const Rank2Rep& alpha, const ExponentData& L, int order,
                              const ClassicalCatalog<Real>& cat) {
  if (!sym3_is_irreducible(alpha)) throw Error(ErrorKind::NotIrreducible, "symmetric cube is reducible");
  require_series_form(alpha);
  auto a = rank2_minimal(alpha, L, order, cat);
  const auto& f = a.form.components[0];
  const auto& g = a.form.components[1];
  const auto f2 = f * f, g2 = g * g;
  VectorSeries<Real> F({f2 * f, f2 * g, f * g2, g2 * g}, 3 * a.k1);

  const ExponentData L3 = sym3_exponents(L);
  const cd x = alpha.x, y = alpha.y;
  const Rank4Rep rep4 = Rank4Rep::from_spectrum(x * x * x, x * x * y, x * y * y, y * y * y, parity(alpha));
  const CaseReport report = classify(rep4, L3);
  if (report.kind != CaseKind::Cyclic) throw Error(ErrorKind::ValidationError, "symmetric cube classified as noncyclic");
  const auto co = cyclic_coeffs(shifted_exponents<Real>(L3.eigenvalues, CaseKind::Cyclic));
  FormBasis<Real> basis = assemble_cyclic_basis(F, co, report, cat);
  basis.diagnostics.push_back({"minimal weight", std::abs(static_cast<double>(report.k1 - F.weight)), 0.5});
  return basis;
}

template <class Real>
FuchsianOperator<Real> build_fuchsian_z(const Cx<Real>& u) {
  using C = Cx<Real>;
  const C xu = xi<Real>() * u * Real(1296);
  FuchsianOperator<Real> op;
  op.nome = Nome::Z;
  op.polys = {
      {xu, C(), C(Real(81))},
      {-(xu + Real(27)), C(Real(-81)), C(Real(-162))},
      {C(Real(18)), C(Real(81)), C(Real(81))},
  };
  return op;
}

template <class Real>
Cx<Real> u_from_local_exponent(const Cx<Real>& r) {
  return -r * r * std::conj(xi<Real>()) / Real(16);
}

InductionJob make_induction_job(const GRank2Rep& rep, const ExponentData& L, std::optional<cd> u) {
  validate(rep);
  if (!restricts_from_gamma(rep))
    throw Error(ErrorKind::NormalizationError, "the first member of the orbit must restrict from Gamma");
  for (int j = 1; j <= 2; ++j)
    if (!induction_is_irreducible(twist(rep, j)))
      throw Error(ErrorKind::NormalizationError, "induction of twist " + std::to_string(j) + " is reducible");
  if (L.group != Group::G) throw Error(ErrorKind::GroupMismatch, "induction exponents must be for G");
  if (L.rank() != 2) throw Error(ErrorKind::WrongRank, "expected 2 exponents");
  check_exponents_match(L, eigenvalues_of(Eigen::MatrixXcd(t2_matrix(rep))));

  const cd t3 = 3.0 * L.trace();
  if (!near_integer(t3)) throw Error(ErrorKind::NonIntegralThreeTrace, "3 Tr(L) is not an integer");
  const long t = nearest_integer(t3);

  InductionJob job;
  job.rep = rep;
  job.L = L;
  // Forms of weight k exist only when k and e have the same parity.
  job.trace_branch = mod(t - rep.e, 2) == 0;
  job.k1 = static_cast<int>(job.trace_branch ? t : t + 1);

  if (job.trace_branch) {
    job.r = L.eigenvalues[0] - job.k1 / 6.0;
    const cd derived = u_from_local_exponent<double>(job.r);
    if (u && std::abs(*u - derived) > kStructuralTol * (1.0 + std::abs(derived)))
      throw Error(ErrorKind::ValidationError, "u does not match the exponents");
    job.u = derived;
  } else {
    if (!u) throw Error(ErrorKind::ValidationError, "u is required when k1 = 3 Tr(L) + 1");
    job.u = *u;
    job.r = std::sqrt(-16.0 * xi<double>() * job.u);
  }
  if (std::abs(job.u) < kStructuralTol) throw Error(ErrorKind::DegenerateU, "u = 0");
  return job;
}

InductionJob induction_job_from_exponent(int k1, cd r) {
  GRank2Rep rep;
  rep.e = static_cast<int>(mod(k1, 2));
  rep.zeta3 = unit_root<double>(k1, 3);
  rep.zeta1 = unit_root<double>(k1 + 1, 3);
  rep.zeta2 = unit_root<double>(k1 + 2, 3);
  ExponentData L;
  L.group = Group::G;
  L.eigenvalues = {k1 / 6.0 + r, k1 / 6.0 - r};
  const cd tr = exp_2pi_i<double>(L.eigenvalues[0]) + exp_2pi_i<double>(L.eigenvalues[1]);
  rep.a = a_for_t2_trace(rep.e, rep.zeta1, rep.zeta2, rep.zeta3, tr);
  return make_induction_job(rep, L);
}

template <class Real>
InductionPair<Real> induction_minimal_pair(const InductionJob& job, int order, const ClassicalCatalog<Real>& cat) {
  using C = Cx<Real>;
  using S = PuiseuxSeries<Real>;
  require_order(cat, order);
  if (std::abs(job.u) < kStructuralTol) throw Error(ErrorKind::DegenerateU, "u = 0");
  C r, u;
  if (job.trace_branch) {
    r = lift<Real>(job.r);
    u = u_from_local_exponent(r);
  } else {
    using std::sqrt;
    u = lift<Real>(job.u);
    r = sqrt(Real(-16) * xi<Real>() * u);
    if (mag(r - from_cd<Real>(job.r)) > mag(r + from_cd<Real>(job.r))) r = -r;
  }

  const auto op = build_fuchsian_z(u);
  const S& z = cat.z();
  const S& f = cat.f();
  const S& g = cat.g();
  const S eta = cat.eta_power(2 * job.k1, Nome::Q2);
  const S g_over_f = g * invert(f);
  const S f_over_g = f * invert(g);
  const S z_minus_1 = z + S::constant(Nome::Q2, C(Real(-1)), z.order());
  const C scale_b = xi<Real>() / Real(12);

  std::vector<S> ac, bc;
  for (const C& root : {r, -r}) {
    const S y = frobenius_solve(op, root, order);
    const S yz = compose_frobenius(y, z);
    const S tyz = compose_frobenius(theta(y), z);
    ac.push_back((eta * g_over_f * yz).truncated(order));
    bc.push_back((scale_b * (eta * f_over_g * (z * yz + C(Real(3)) * (z_minus_1 * tyz)))).truncated(order));
  }

  InductionPair<Real> out;
  out.a = VectorSeries<Real>(ac, job.k1);
  out.b = VectorSeries<Real>(bc, job.k1);
  const auto da = modular_derivative(out.a, cat);
  const auto db = modular_derivative(out.b, cat);
  std::vector<S> gb, ufa;
  for (size_t j = 0; j < 2; ++j) {
    gb.push_back(g * out.b.components[j]);
    ufa.push_back(u * (f * out.a.components[j]));
  }
  out.diagnostics.push_back({"D A = g B", static_cast<double>(relative_pair(da.components, gb)), kResidualTol});
  out.diagnostics.push_back({"D B = u f A", static_cast<double>(relative_pair(db.components, ufa)), kResidualTol});
  for (const auto& c : out.a.components) out.exponents.push_back(to_cd(c.lead()));
  out.diagnostics.push_back({"pair exponents match L", multiset_distance(out.exponents, job.L.eigenvalues),
                             kStructuralTol});
  return out;
}

template <class Real>
InducedForm<Real> induce_to_gamma(const VectorSeries<Real>& f, const ExponentData& L, const GRank2Rep& rho) {
  using S = PuiseuxSeries<Real>;
  if (f.rank() == 0 || f.nome() != Nome::Q2) throw Error(ErrorKind::WrongNome, "induction needs a q2-series");
  std::vector<S> comps = f.components;
  for (const auto& c : f.components) comps.push_back(slash_t_inverse(c));
  InducedForm<Real> out;
  out.form = VectorSeries<Real>(comps, f.weight);

  std::vector<S> plus, minus;
  double leak = 0.0;
  std::vector<cd> odd_part;
  for (size_t j = 0; j < f.rank(); ++j) {
    const S& a = f.components[j];
    const S phased = exp_pi_i(a.lead()) * out.form.components[f.rank() + j];
    plus.push_back(a + phased);
    minus.push_back(a - phased);
    const double scale = std::max(static_cast<double>(a.max_abs()), 1e-300);
    for (int n = 0; n <= a.order(); ++n) {
      const auto& wrong = (n % 2 == 1) ? plus.back()[n] : minus.back()[n];
      leak = std::max(leak, mag(wrong) / scale);
    }
    auto ip = leading_index(plus.back(), a);
    auto im = leading_index(minus.back(), a);
    const cd lead = to_cd(a.lead());
    if (ip) out.exponents.push_back((lead + static_cast<double>(*ip)) / 2.0);
    if (im) odd_part.push_back((lead + static_cast<double>(*im)) / 2.0);
  }
  out.exponents.insert(out.exponents.end(), odd_part.begin(), odd_part.end());
  plus.insert(plus.end(), minus.begin(), minus.end());
  out.split = VectorSeries<Real>(std::move(plus), f.weight);

  const ExponentData ind = induced_exponents(L, rho);
  out.diagnostics.push_back({"even/odd split", leak, 1e-12});
  out.diagnostics.push_back({"induced exponents", multiset_distance(out.exponents, ind.eigenvalues), kStructuralTol});
  return out;
}

template <class Real>
std::pair<FormBasis<Real>, FormBasis<Real>> induction_pipeline(const InductionJob& job, int order,
                                                               const ClassicalCatalog<Real>& cat) {
  for (int j = 1; j <= 2; ++j)
    if (!induction_is_irreducible(twist(job.rep, j)))
      throw Error(ErrorKind::NotIrreducible, "induction of twist " + std::to_string(j) + " is reducible");
  const auto pair = induction_minimal_pair(job, order, cat);
  std::vector<FormBasis<Real>> out;
  for (int j = 1; j <= 2; ++j) {
    const GRank2Rep rho = twist(job.rep, j);
    const auto ind = induce_to_gamma(j == 1 ? pair.a : pair.b, job.L, rho);
    const auto spec = eigenvalues_of(Eigen::MatrixXcd(induced_t_matrix(rho)));
    const Rank4Rep rep4 = Rank4Rep::from_spectrum(spec[0], spec[1], spec[2], spec[3], job.rep.e);
    const ExponentData ind_l = induced_exponents(job.L, rho);
    const CaseReport report = classify(rep4, ind_l);
    const auto f = shifted_exponents<Real>(ind_l.eigenvalues, report.kind);
    FormBasis<Real> basis =
        report.kind == CaseKind::Cyclic
            ? assemble_cyclic_basis(ind.form, cyclic_coeffs(f), report, cat)
            : assemble_noncyclic_basis(ind.form, noncyclic_coeffs(f), report, cat);
    std::vector<Diagnostic> ds = pair.diagnostics;
    ds.insert(ds.end(), ind.diagnostics.begin(), ind.diagnostics.end());
    ds.push_back({"minimal weight", std::abs(static_cast<double>(report.k1 - job.k1)), 0.5});
    basis.diagnostics.insert(basis.diagnostics.begin(), ds.begin(), ds.end());
    out.push_back(std::move(basis));
  }
  return {std::move(out[0]), std::move(out[1])};
}

template <class Real>
FormBasis<Real> rank4_pipeline(const Rank4Rep& rep, const ExponentData& L, int order,
                               const ClassicalCatalog<Real>& cat) {
  using S = PuiseuxSeries<Real>;
  require_order(cat, order);

  in_step('a', [&] {
    const int d = d_invariant(rep);
    const cd tr = tuba_wenzl_matrices(rep).R.trace();
    for (int c = 0; c < 6; ++c)
      if (std::abs(tr + unit_root<double>(-c, 6)) < kStructuralTol) {
        if (c != d) throw Error(ErrorKind::InconsistentRep, "Tr rho(R) disagrees with d");
        return 0;
      }
    throw Error(ErrorKind::InconsistentRep, "Tr rho(R) is not of the form -e^{-2 pi i d/6}");
  });

  const CaseReport report = in_step('b', [&] { return classify(rep, L); });

  const ODECoefficients<Real> co = in_step('c', [&] {
    const auto f = shifted_exponents<Real>(L.eigenvalues, report.kind);
    return report.kind == CaseKind::Cyclic ? cyclic_coeffs(f) : noncyclic_coeffs(f);
  });

  double frob_residual = 0.0;
  const std::vector<S> sols = in_step('d', [&] {
    for (size_t i = 0; i < 4; ++i)
      for (size_t j = i + 1; j < 4; ++j)
        if (near_integer(L.eigenvalues[i] - L.eigenvalues[j]))
          throw Error(ErrorKind::ResonantExponents, "exponents differ by an integer");
    const auto op = report.kind == CaseKind::Cyclic ? build_cyclic_operator(co) : build_noncyclic_operator(co);
    std::vector<S> out;
    for (const auto& f : co.f) {
      out.push_back(frobenius_solve(op, f, order));
      frob_residual = std::max(frob_residual, static_cast<double>(apply_operator(op, out.back()).relative()));
    }
    return out;
  });

  const std::vector<S> in_q = in_step('e', [&] {
    std::vector<S> out;
    for (const auto& s : sols) out.push_back(compose_frobenius(s, cat.k()));
    return out;
  });

  return in_step('f', [&] {
    std::vector<S> comps;
    for (const auto& s : in_q) comps.push_back(times_eta(s, 2 * report.k1, cat).truncated(order));
    VectorSeries<Real> F(std::move(comps), report.k1);
    FormBasis<Real> basis = report.kind == CaseKind::Cyclic ? assemble_cyclic_basis(F, co, report, cat)
                                                            : assemble_noncyclic_basis(F, co, report, cat);
    basis.diagnostics.insert(basis.diagnostics.begin(), Diagnostic{"Frobenius residual", frob_residual, kResidualTol});
    return basis;
  });
}

#define VVMF_INSTANTIATE_CONSTRUCTIONS(R)                                                                        \
  template Rank2MinimalForm<R> rank2_minimal<R>(const Rank2Rep&, const ExponentData&, int,                     \
                                                const ClassicalCatalog<R>&);                                    \
  template VectorSeries<R> rank2_via_frobenius<R>(const Rank2Rep&, const ExponentData&, int,                   \
                                                  const ClassicalCatalog<R>&);                                  \
  template FormBasis<R> tensor_pipeline<R>(const Rank2Rep&, const Rank2Rep&, const ExponentData&,              \
                                           const ExponentData&, int, const ClassicalCatalog<R>&);               \
  template FormBasis<R> sym3_pipeline<R>(const Rank2Rep&, const ExponentData&, int, const ClassicalCatalog<R>&); \
  template FuchsianOperator<R> build_fuchsian_z<R>(const Cx<R>&);                                              \
  template Cx<R> u_from_local_exponent<R>(const Cx<R>&);                                                       \
  template InductionPair<R> induction_minimal_pair<R>(const InductionJob&, int, const ClassicalCatalog<R>&);   \
  template InducedForm<R> induce_to_gamma<R>(const VectorSeries<R>&, const ExponentData&, const GRank2Rep&);   \
  template std::pair<FormBasis<R>, FormBasis<R>> induction_pipeline<R>(const InductionJob&, int,               \
                                                                       const ClassicalCatalog<R>&);             \
  template FormBasis<R> rank4_pipeline<R>(const Rank4Rep&, const ExponentData&, int, const ClassicalCatalog<R>&);

VVMF_INSTANTIATE_CONSTRUCTIONS(double)
VVMF_INSTANTIATE_CONSTRUCTIONS(Mp)

}  // namespace vvmf
