#pragma once

#include <Eigen/Dense>
#include <optional>
#include <string>
#include <vector>

#include "vvmf/numeric.hpp"

namespace vvmf {

// Rank-2 representation of SL2(Z) in normal form: rho(T) has eigenvalues x, y
// with xy = e^{2 pi i a/6}; x = y is the single Jordan block twisted by a
// character, where a is kept mod 12 and x = e^{2 pi i a/12}.
struct Rank2Rep {
  cd x, y;
  int a = 0;
  bool jordan = false;
};

void validate(const Rank2Rep& r);
// rho(-I) = (-1)^e.
int parity(const Rank2Rep& r);
bool rank2_is_irreducible(const Rank2Rep& r);
bool rank2_is_t_regular(const Rank2Rep& r);

// Rank-4 representation in Tuba-Wenzl normal form: rho(T) eigenvalues
// x, y, z, w with xyzw = e^{2 pi i d/3}, d mod 6 fixing the sign of
// D = e^{2 pi i d/6}/(xw), and rho(-I) = (-1)^e.
struct Rank4Rep {
  cd x, y, z, w;
  int d = 0;
  int e = 0;

  // Chooses the unique d with xyzw = e^{2 pi i d/3} and d of parity opposite to e.
  static Rank4Rep from_spectrum(cd x, cd y, cd z, cd w, int e);
  std::vector<cd> spectrum() const { return {x, y, z, w}; }
};

// Validates xyzw = zeta^d and e != d (mod 2); returns d mod 6.
int d_invariant(const Rank4Rep& r);

struct TubaWenzlMatrices {
  Eigen::Matrix4cd T, B, S, R;
};

// rho(T), rho(B) of the normal form with S = B^-1 T^-1 B^-1 and R = S T.
TubaWenzlMatrices tuba_wenzl_matrices(const Rank4Rep& r);

// Rank-2 representation of the index-2 subgroup G:
// rho(R0) = (-1)^e diag(zeta1, zeta2),
// rho(R1) = (-1)^e [[a, 1], [-a^2 - zeta3 a - zeta3^2, -zeta3 - a]].
struct GRank2Rep {
  int e = 0;
  cd zeta1, zeta2, zeta3;
  cd a;
};

void validate(const GRank2Rep& r);
bool induction_is_irreducible(const GRank2Rep& r);
// rho tensored with the j-th power of the cuspidal character beta.
GRank2Rep twist(const GRank2Rep& r, int j);
// True iff zeta1 + zeta2 + zeta3 = 0, i.e. rho extends to SL2(Z).
bool restricts_from_gamma(const GRank2Rep& r);
Eigen::Matrix2cd r0_matrix(const GRank2Rep& r);
Eigen::Matrix2cd r1_matrix(const GRank2Rep& r);
// rho(T^2) = rho(-1) rho(R1) rho(R0).
Eigen::Matrix2cd t2_matrix(const GRank2Rep& r);
// (Ind rho)(T) = [[0, rho(T^2)], [1, 0]].
Eigen::Matrix4cd induced_t_matrix(const GRank2Rep& r);
// Parameter a making rho(T^2) have the given trace.
cd a_for_t2_trace(int e, cd zeta1, cd zeta2, cd zeta3, cd trace);

bool tensor_is_irreducible(const Rank2Rep& alpha, const Rank2Rep& beta);
bool sym3_is_irreducible(const Rank2Rep& alpha);

// Exponent for T (Gamma) or for T^2 (G).
enum class Group { Gamma, G };

std::string group_name(Group g);
Group parse_group(const std::string& s);

struct ExponentData {
  std::vector<cd> eigenvalues;
  std::optional<Eigen::MatrixXcd> matrix;
  Group group = Group::Gamma;

  size_t rank() const { return eigenvalues.size(); }
  cd trace() const;
};

ExponentData exponents_from_matrix(const Eigen::MatrixXcd& m, Group g);
// Every e^{2 pi i e_j} must be an eigenvalue of the given monodromy.
void check_exponents_match(const ExponentData& L, const std::vector<cd>& spectrum);
std::vector<cd> eigenvalues_of(const Eigen::MatrixXcd& m);

// L1 (x) I + I (x) L2, eigenvalues e_i + f_j with i outer.
ExponentData tensor_exponents(const ExponentData& l1, const ExponentData& l2);
ExponentData sym3_exponents(const ExponentData& l);
ExponentData induced_exponents(const ExponentData& l, const GRank2Rep& rho);

}  // namespace vvmf
