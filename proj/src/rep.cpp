#include "vvmf/rep.hpp"

#include <unsupported/Eigen/KroneckerProduct>
#include <unsupported/Eigen/MatrixFunctions>

#include <algorithm>
#include <cmath>

#include "vvmf/error.hpp"

namespace vvmf {

namespace {

const double kTwoPi = 2.0 * M_PI;

cd root_of_unity(double turns) { return std::polar(1.0, kTwoPi * turns); }

bool close(cd a, cd b, double tol = kStructuralTol) { return std::abs(a - b) < tol; }

bool pairwise_distinct(const std::vector<cd>& v) {
  for (size_t i = 0; i < v.size(); ++i)
    for (size_t j = i + 1; j < v.size(); ++j)
      if (close(v[i], v[j])) return false;
  return true;
}

bool is_cube_root_of_unity(cd z) { return close(z * z * z, 1.0); }

}  // namespace

void validate(const Rank2Rep& r) {
  if (!close(r.x * r.y, root_of_unity(r.a / 6.0))) {
    throw Error(ErrorKind::InconsistentRep, "xy must equal e^{2 pi i a/6}");
  }
  if (r.jordan != close(r.x, r.y)) {
    throw Error(ErrorKind::InconsistentRep, "the single-block case is exactly x = y");
  }
  if (r.jordan && !close(r.x, root_of_unity(r.a / 12.0))) {
    throw Error(ErrorKind::InconsistentRep, "single-block case needs x = e^{2 pi i a/12}");
  }
}

int parity(const Rank2Rep& r) { return static_cast<int>(mod(r.a + 1, 2)); }

bool rank2_is_irreducible(const Rank2Rep& r) {
  if (r.jordan) return true;
  return std::abs(r.x * r.x - r.x * r.y + r.y * r.y) > kStructuralTol;
}

bool rank2_is_t_regular(const Rank2Rep& r) { return !r.jordan && !close(r.x, r.y); }

Rank4Rep Rank4Rep::from_spectrum(cd x, cd y, cd z, cd w, int e) {
  cd prod = x * y * z * w;
  for (int d = 0; d < 6; ++d) {
    if (mod(d - e, 2) == 1 && close(prod, root_of_unity(d / 3.0))) return {x, y, z, w, d, static_cast<int>(mod(e, 2))};
  }
  throw Error(ErrorKind::InconsistentRep, "xyzw is not a cube root of unity");
}

int d_invariant(const Rank4Rep& r) {
  const int d = static_cast<int>(mod(r.d, 6));
  if (!close(r.x * r.y * r.z * r.w, root_of_unity(d / 3.0))) {
    throw Error(ErrorKind::InconsistentRep, "xyzw must equal e^{2 pi i d/3}");
  }
  if (mod(d - r.e, 2) != 1) {
    throw Error(ErrorKind::InconsistentRep, "parity e must differ from d mod 2");
  }
  return d;
}

TubaWenzlMatrices tuba_wenzl_matrices(const Rank4Rep& r) {
  const int d = d_invariant(r);
  const cd x = r.x, y = r.y, z = r.z, w = r.w;
  const cd D = root_of_unity(d / 6.0) / (x * w);
  const cd Di = 1.0 / D;
  Eigen::Matrix4cd T;
  T << x, (1.0 + Di + Di * Di) * y, (1.0 + Di + Di * Di) * z, w,  //
      0, y, (1.0 + Di) * z, w,                                    //
      0, 0, z, w,                                                 //
      0, 0, 0, w;
  Eigen::Matrix4cd B;
  B << w, 0, 0, 0,                                                  //
      -z, z, 0, 0,                                                  //
      D * y, -(D + 1.0) * y, y, 0,                                  //
      -D * D * D * x, (D * D * D + D * D + D) * x, -(D * D + D + 1.0) * x, x;
  Eigen::Matrix4cd Bi = B.inverse();
  Eigen::Matrix4cd S = Bi * T.inverse() * Bi;
  return {T, B, S, S * T};
}

void validate(const GRank2Rep& r) {
  if (r.e != 0 && r.e != 1) throw Error(ErrorKind::InconsistentRep, "parity must be 0 or 1");
  if (!is_cube_root_of_unity(r.zeta1) || !is_cube_root_of_unity(r.zeta2) || !is_cube_root_of_unity(r.zeta3)) {
    throw Error(ErrorKind::InconsistentRep, "zeta1, zeta2, zeta3 must be cube roots of unity");
  }
  if (close(r.zeta1, r.zeta2)) throw Error(ErrorKind::InconsistentRep, "zeta1 must differ from zeta2");
  if (std::abs(r.a * r.a + r.zeta3 * r.a + r.zeta3 * r.zeta3) < kStructuralTol) {
    throw Error(ErrorKind::InconsistentRep, "a^2 + zeta3 a + zeta3^2 must not vanish");
  }
}

bool restricts_from_gamma(const GRank2Rep& r) {
  return std::abs(r.zeta1 + r.zeta2 + r.zeta3) < kStructuralTol;
}

bool induction_is_irreducible(const GRank2Rep& r) {
  if (restricts_from_gamma(r)) return false;
  const double sign = r.e == 0 ? 1.0 : -1.0;
  const cd excluded =
      sign * (r.zeta1 * r.zeta2 + r.zeta2 * r.zeta3 + r.zeta3 * r.zeta3) / (r.zeta1 - r.zeta2);
  return !close(r.a, excluded);
}

GRank2Rep twist(const GRank2Rep& r, int j) {
  const cd z = root_of_unity(mod(j, 3) / 3.0);
  const cd z2 = z * z;
  return {r.e, r.zeta1 * z, r.zeta2 * z, r.zeta3 * z2, r.a * z2};
}

Eigen::Matrix2cd r0_matrix(const GRank2Rep& r) {
  const double s = r.e == 0 ? 1.0 : -1.0;
  Eigen::Matrix2cd m;
  m << s * r.zeta1, 0, 0, s * r.zeta2;
  return m;
}

Eigen::Matrix2cd r1_matrix(const GRank2Rep& r) {
  const double s = r.e == 0 ? 1.0 : -1.0;
  Eigen::Matrix2cd m;
  m << r.a, 1.0, -r.a * r.a - r.zeta3 * r.a - r.zeta3 * r.zeta3, -r.zeta3 - r.a;
  return s * m;
}

Eigen::Matrix2cd t2_matrix(const GRank2Rep& r) {
  const double s = r.e == 0 ? 1.0 : -1.0;
  return s * r1_matrix(r) * r0_matrix(r);
}

Eigen::Matrix4cd induced_t_matrix(const GRank2Rep& r) {
  Eigen::Matrix4cd m = Eigen::Matrix4cd::Zero();
  m.topRightCorner<2, 2>() = t2_matrix(r);
  m.bottomLeftCorner<2, 2>() = Eigen::Matrix2cd::Identity();
  return m;
}

cd a_for_t2_trace(int e, cd zeta1, cd zeta2, cd zeta3, cd trace) {
  const double s = e == 0 ? 1.0 : -1.0;
  return (s * trace + zeta3 * zeta2) / (zeta1 - zeta2);
}

bool tensor_is_irreducible(const Rank2Rep& alpha, const Rank2Rep& beta) {
  if (!rank2_is_irreducible(alpha) || !rank2_is_irreducible(beta)) return false;
  const bool ra = rank2_is_t_regular(alpha), rb = rank2_is_t_regular(beta);
  if (ra != rb) return true;
  if (!ra) return false;
  return pairwise_distinct({alpha.x * beta.x, alpha.x * beta.y, alpha.y * beta.x, alpha.y * beta.y});
}

bool sym3_is_irreducible(const Rank2Rep& alpha) {
  if (alpha.jordan) return true;
  if (!rank2_is_irreducible(alpha) || !rank2_is_t_regular(alpha)) return false;
  const cd x = alpha.x, y = alpha.y;
  return pairwise_distinct({x * x * x, x * x * y, x * y * y, y * y * y});
}

std::string group_name(Group g) { return g == Group::Gamma ? "Gamma" : "G"; }

Group parse_group(const std::string& s) {
  if (s == "Gamma") return Group::Gamma;
  if (s == "G") return Group::G;
  throw Error(ErrorKind::ValidationError, "unknown group '" + s + "'");
}

cd ExponentData::trace() const {
  cd t = 0;
  for (const auto& e : eigenvalues) t += e;
  return t;
}

std::vector<cd> eigenvalues_of(const Eigen::MatrixXcd& m) {
  Eigen::ComplexEigenSolver<Eigen::MatrixXcd> es(m, false);
  std::vector<cd> out(es.eigenvalues().data(), es.eigenvalues().data() + es.eigenvalues().size());
  return out;
}

ExponentData exponents_from_matrix(const Eigen::MatrixXcd& m, Group g) {
  if (m.rows() != m.cols()) throw Error(ErrorKind::ValidationError, "exponent matrix must be square");
  return {eigenvalues_of(m), m, g};
}

void check_exponents_match(const ExponentData& L, const std::vector<cd>& spectrum) {
  if (L.rank() != spectrum.size()) throw Error(ErrorKind::WrongRank, "exponent count differs from rank");
  // Match as multisets.
  std::vector<bool> used(spectrum.size(), false);
  for (const auto& e : L.eigenvalues) {
    const cd t = std::exp(cd(0, kTwoPi) * e);
    bool found = false;
    for (size_t i = 0; i < spectrum.size() && !found; ++i) {
      if (!used[i] && std::abs(t - spectrum[i]) < kStructuralTol) used[i] = found = true;
    }
    if (!found) throw Error(ErrorKind::InconsistentRep, "e^{2 pi i L} does not match the T-spectrum");
  }
}

ExponentData tensor_exponents(const ExponentData& l1, const ExponentData& l2) {
  if (l1.group != l2.group) throw Error(ErrorKind::GroupMismatch, "tensor of exponents for different groups");
  ExponentData out;
  out.group = l1.group;
  for (const auto& e : l1.eigenvalues)
    for (const auto& f : l2.eigenvalues) out.eigenvalues.push_back(e + f);
  if (l1.matrix && l2.matrix) {
    const auto n = l2.matrix->rows(), m = l1.matrix->rows();
    Eigen::MatrixXcd k = Eigen::kroneckerProduct(*l1.matrix, Eigen::MatrixXcd::Identity(n, n)).eval();
    k += Eigen::kroneckerProduct(Eigen::MatrixXcd::Identity(m, m), *l2.matrix).eval();
    out.matrix = k;
  }
  return out;
}

ExponentData sym3_exponents(const ExponentData& l) {
  if (l.rank() != 2) throw Error(ErrorKind::WrongRank, "symmetric cube exponents need rank 2");
  const cd r = l.eigenvalues[0], s = l.eigenvalues[1];
  ExponentData out;
  out.group = l.group;
  out.eigenvalues = {3.0 * r, 2.0 * r + s, r + 2.0 * s, 3.0 * s};
  if (l.matrix) {
    const auto& m = *l.matrix;
    const cd e1 = m(0, 0), e2 = m(0, 1), e3 = m(1, 0), e4 = m(1, 1);
    Eigen::MatrixXcd s3(4, 4);
    s3 << 3.0 * e1, e2, 0, 0,                  //
        3.0 * e3, 2.0 * e1 + e4, 2.0 * e2, 0,  //
        0, 2.0 * e3, e1 + 2.0 * e4, 3.0 * e2,  //
        0, 0, e3, 3.0 * e4;
    out.matrix = s3;
  }
  return out;
}

ExponentData induced_exponents(const ExponentData& l, const GRank2Rep& rho) {
  if (l.group != Group::G) throw Error(ErrorKind::GroupMismatch, "induction starts from exponents for G");
  if (l.rank() != 2) throw Error(ErrorKind::WrongRank, "induction is implemented for rank 2");
  ExponentData out;
  out.group = Group::Gamma;
  for (const auto& e : l.eigenvalues) out.eigenvalues.push_back(e / 2.0);
  for (const auto& e : l.eigenvalues) out.eigenvalues.push_back((e + 1.0) / 2.0);
  if (l.matrix) {
    const Eigen::MatrixXcd& L = *l.matrix;
    const auto n = L.rows();
    Eigen::MatrixXcd E = (cd(0, M_PI) * L).exp();
    Eigen::MatrixXcd I = Eigen::MatrixXcd::Identity(n, n);
    Eigen::MatrixXcd P(2 * n, 2 * n), Dg = Eigen::MatrixXcd::Zero(2 * n, 2 * n);
    P << I, E, I, -E;
    Dg.topLeftCorner(n, n) = L;
    Dg.bottomRightCorner(n, n) = L + I;
    out.matrix = 0.5 * P.inverse() * Dg * P;
  }
  auto t = induced_t_matrix(rho);
  check_exponents_match(out, eigenvalues_of(Eigen::MatrixXcd(t)));
  return out;
}

}  // namespace vvmf
