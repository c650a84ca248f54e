#pragma once

#include <array>
#include <string>
#include <vector>

#include "vvmf/classical.hpp"
#include "vvmf/diagnostic.hpp"
#include "vvmf/rep.hpp"
#include "vvmf/series.hpp"

namespace vvmf {

enum class CaseKind { Cyclic, Noncyclic };

std::string case_name(CaseKind c);

struct CaseReport {
  CaseKind kind = CaseKind::Cyclic;
  int k1 = 0;
  std::array<int, 4> weights{};
  int d = 0;
  int e = 0;
  int three_trace = 0;
};

// Cyclic iff 3 Tr(L) and e have opposite parity.
CaseReport classify(const Rank4Rep& rep, const ExponentData& L);

// dim M_k(rho, L) for rank 4, from the Riemann-Roch Euler characteristic.
int dimension(int k, const Rank4Rep& rep, const ExponentData& L);

template <class Real>
struct ODECoefficients {
  Cx<Real> a, b, c;
  CaseKind kind = CaseKind::Cyclic;
  std::array<Cx<Real>, 4> f;
};

// Indicial exponents of the weight-0 equation: e_j + (1 - Tr)/4 in the
// cyclic case, e_j - Tr/4 + 1/6 in the noncyclic case.
template <class Real>
std::array<Cx<Real>, 4> shifted_exponents(const std::vector<cd>& e, CaseKind kind);

template <class Real>
ODECoefficients<Real> cyclic_coeffs(const std::array<Cx<Real>, 4>& f);
template <class Real>
ODECoefficients<Real> noncyclic_coeffs(const std::array<Cx<Real>, 4>& f);

// sum_i x^i P_i(theta); polys[i] holds the coefficients of P_i from theta^0 up.
template <class Real>
struct FuchsianOperator {
  Nome nome = Nome::K;
  std::vector<std::vector<Cx<Real>>> polys;

  int order() const { return static_cast<int>(polys.front().size()) - 1; }
  Cx<Real> eval(size_t i, const Cx<Real>& t) const;
};

// The cyclic equation cleared by 36(1-K)^2.
template <class Real>
FuchsianOperator<Real> build_cyclic_operator(const ODECoefficients<Real>& co);
// The scalar noncyclic equation cleared by 108(1-K)^2.
template <class Real>
FuchsianOperator<Real> build_noncyclic_operator(const ODECoefficients<Real>& co);
// theta(theta + c - 1) - x (theta + a)(theta + b).
template <class Real>
FuchsianOperator<Real> build_hypergeometric_operator(const Cx<Real>& a, const Cx<Real>& b,
                                                     const Cx<Real>& c, Nome nome = Nome::K);
// D^2 F + s E_4 F = 0 at weight 0 on the K-line, cleared by (1-K).
template <class Real>
FuchsianOperator<Real> build_rank2_operator(const Cx<Real>& s);

// Small dense complex matrix, row-major.
template <class Real>
using CMatrix = std::vector<std::vector<Cx<Real>>>;

// (1-K) theta X = X (B0 + B1 K) for a row vector X.
template <class Real>
struct NoncyclicSystem {
  CMatrix<Real> b0, b1;
};

template <class Real>
NoncyclicSystem<Real> build_noncyclic_system(const ODECoefficients<Real>& co);

// Unit left eigenvector of B0 for eigenvalue r, largest entry equal to 1.
template <class Real>
std::vector<Cx<Real>> left_eigenvector(const CMatrix<Real>& b0, const Cx<Real>& r);

template <class Real>
PuiseuxSeries<Real> frobenius_solve(const FuchsianOperator<Real>& op, const Cx<Real>& r, int order);

template <class Real>
std::vector<PuiseuxSeries<Real>> frobenius_solve_system(const CMatrix<Real>& b0, const CMatrix<Real>& b1,
                                                        const Cx<Real>& r, const std::vector<Cx<Real>>& v0,
                                                        int order, Nome nome = Nome::K);

template <class Real>
PuiseuxSeries<Real> hypergeom_2f1(const Cx<Real>& a, const Cx<Real>& b, const Cx<Real>& c, int order,
                                  Nome nome = Nome::K);

// sum_i x^i P_i(theta) s, together with the individual terms.
template <class Real>
struct OperatorApplication {
  PuiseuxSeries<Real> result;
  std::vector<PuiseuxSeries<Real>> terms;
  Real relative() const { return relative_residual(result, terms); }
};

template <class Real>
OperatorApplication<Real> apply_operator(const FuchsianOperator<Real>& op, const PuiseuxSeries<Real>& s);

// Relative residual of (1-K) theta X - X (B0 + B1 K).
template <class Real>
Real system_residual(const NoncyclicSystem<Real>& sys, const std::vector<PuiseuxSeries<Real>>& x);

// The K-line operator applied to a weight-0 q-series through
// theta_K = (E4/E6) theta_q.
template <class Real>
OperatorApplication<Real> apply_operator_on_q(const FuchsianOperator<Real>& op, const PuiseuxSeries<Real>& s,
                                              const ClassicalCatalog<Real>& cat);

// D_k componentwise at the vector's weight; the result has weight k + 2.
template <class Real>
VectorSeries<Real> modular_derivative(const VectorSeries<Real>& f, const ClassicalCatalog<Real>& cat);

template <class Real>
struct FormBasis {
  std::vector<VectorSeries<Real>> forms;
  CaseReport report;
  std::vector<Diagnostic> diagnostics;
};

// F, DF, D^2F, D^3F with the residual of D^4F + aE4 D^2F + bE6 DF + cE4^2 F.
template <class Real>
FormBasis<Real> assemble_cyclic_basis(const VectorSeries<Real>& f, const ODECoefficients<Real>& co,
                                      const CaseReport& report, const ClassicalCatalog<Real>& cat,
                                      double tol = kResidualTol);

// F, DF, G, H with H = D^2F - aE4F and G = (DH - bE4 DF)/(cE4); records the
// relations DG = E4 F and DH = bE4 DF + cE4 G.
template <class Real>
FormBasis<Real> assemble_noncyclic_basis(const VectorSeries<Real>& f, const ODECoefficients<Real>& co,
                                         const CaseReport& report, const ClassicalCatalog<Real>& cat,
                                         double tol = kResidualTol);

// Smallest over largest singular value of the leading-coefficient matrix.
template <class Real>
double leading_rank_ratio(const std::vector<VectorSeries<Real>>& forms);

}  // namespace vvmf
