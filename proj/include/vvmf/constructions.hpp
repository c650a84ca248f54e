#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "vvmf/classical.hpp"
#include "vvmf/mlde.hpp"
#include "vvmf/rep.hpp"
#include "vvmf/series.hpp"

namespace vvmf {

enum class Rank2Source { Hypergeometric, NuChi };

std::string rank2_source_name(Rank2Source s);

// Minimal-weight form of a rank-2 representation, nome Q. For NuChi the first
// component is tau * eta^{2k1+2}, which has no q-expansion; it is left as a
// zero series and flagged.
template <class Real>
struct Rank2MinimalForm {
  int k1 = 0;
  VectorSeries<Real> form;
  Rank2Source source = Rank2Source::Hypergeometric;
  bool symbolic_first = false;
};

template <class Real>
Rank2MinimalForm<Real> rank2_minimal(const Rank2Rep& rep, const ExponentData& L, int order,
                                     const ClassicalCatalog<Real>& cat);

// The same form from Frobenius solutions of the rank-2 K-line equation at
// the shifted exponents r_j - k1/12, substituted into K(q) and rescaled by
// eta^{2k1}.
template <class Real>
VectorSeries<Real> rank2_via_frobenius(const Rank2Rep& rep, const ExponentData& L, int order,
                                       const ClassicalCatalog<Real>& cat);

// F = A (x) B and its noncyclic basis; also records the scalar noncyclic
// equation on eta^{-2k1} F.
template <class Real>
FormBasis<Real> tensor_pipeline(const Rank2Rep& alpha, const Rank2Rep& beta, const ExponentData& l1,
                                const ExponentData& l2, int order, const ClassicalCatalog<Real>& cat);

// F = (f^3, f^2 g, f g^2, g^3) and its cyclic basis.
template <class Real>
FormBasis<Real> sym3_pipeline(const Rank2Rep& alpha, const ExponentData& L, int order,
                              const ClassicalCatalog<Real>& cat);

// Weight-0 equation of the induction pair on the Z-line, cleared by
// 81(1-Z)^2. Local exponents at Z = 0 are +-r with r^2 = -16 xi u.
template <class Real>
FuchsianOperator<Real> build_fuchsian_z(const Cx<Real>& u);

// u = -r^2 xi^{-1} / 16.
template <class Real>
Cx<Real> u_from_local_exponent(const Cx<Real>& r);

struct InductionJob {
  GRank2Rep rep;
  ExponentData L;
  cd u;
  // Local exponent at Z = 0 used for the first component; -r for the second.
  cd r;
  int k1 = 0;
  // k1 = 3 Tr(L); otherwise k1 = 3 Tr(L) + 1.
  bool trace_branch = true;
};

// Validates the orbit normalization and the exponents, fixes k1, and derives
// u from L when k1 = 3 Tr(L). In the other branch u must be supplied.
InductionJob make_induction_job(const GRank2Rep& rep, const ExponentData& L, std::optional<cd> u = std::nullopt);

// A consistent job with L = diag(k1/6 + r, k1/6 - r).
InductionJob induction_job_from_exponent(int k1, cd r);

template <class Real>
struct InductionPair {
  VectorSeries<Real> a, b;
  std::vector<cd> exponents;
  std::vector<Diagnostic> diagnostics;
};

// A = eta^{2k1} (g/f) (a, b) and B = (xi/12) eta^{2k1} (f/g)(Z y + 3(Z-1) theta_Z y)
// for the two Frobenius solutions y of build_fuchsian_z(u); nome Q2. Records
// D A = g B and D B = u f A.
template <class Real>
InductionPair<Real> induction_minimal_pair(const InductionJob& job, int order, const ClassicalCatalog<Real>& cat);

template <class Real>
struct InducedForm {
  VectorSeries<Real> form;
  // F + e^{pi i lambda} F|T^-1 followed by F - e^{pi i lambda} F|T^-1.
  VectorSeries<Real> split;
  std::vector<cd> exponents;
  std::vector<Diagnostic> diagnostics;
};

// (F, F|T^-1) in nome Q2, with the even/odd split and the exhibited exponent
// multiset checked against induced_exponents(L, rho).
template <class Real>
InducedForm<Real> induce_to_gamma(const VectorSeries<Real>& f, const ExponentData& L, const GRank2Rep& rho);

// Both members of the pair induced to Gamma with their bases; the first uses
// the twist by beta, the second by beta^2.
template <class Real>
std::pair<FormBasis<Real>, FormBasis<Real>> induction_pipeline(const InductionJob& job, int order,
                                                               const ClassicalCatalog<Real>& cat);

// The six-step route for a rank-4 representation in normal form: (a) d from
// Tr rho(R), (b) classification, (c) ODE coefficients, (d) Frobenius basis at
// K = 0, (e) substitution of K(q), (f) eta rescaling and basis assembly.
// Errors carry the step letter.
template <class Real>
FormBasis<Real> rank4_pipeline(const Rank4Rep& rep, const ExponentData& L, int order,
                               const ClassicalCatalog<Real>& cat);

}  // namespace vvmf
