#include "gamowlab/wigner_symmetry.hpp"

#include <array>
#include <cmath>

#include "gamowlab/corpus.hpp"

namespace gamowlab {

namespace {

using Mat = Eigen::MatrixXcd;

void check_two_j(int two_j) {
  if (two_j < 0 || two_j > kMaxTwoJ) {
    throw ValidationError("spin: 2j must be an integer in [0, 8]");
  }
}

int sign_of_two_j(int two_j) { return two_j % 2 == 0 ? 1 : -1; }

Mat blocks(const Mat& a, const Mat& b, const Mat& c, const Mat& d) {
  const Eigen::Index n = a.rows();
  Mat out(2 * n, 2 * n);
  out << a, b, c, d;
  return out;
}

double max_abs(const Mat& X) { return X.size() == 0 ? 0.0 : X.cwiseAbs().maxCoeff(); }

// Basis index of (r, m) in the case basis.
int basis_index(const ExtensionCase& c, int r, int two_m) {
  const int a = (c.two_j - two_m) / 2;
  if (!c.doubled) return a;
  return r > 0 ? a : a + c.two_j + 1;
}

}  // namespace

SpinRep spin_rep(int two_j) {
  check_two_j(two_j);
  const int n = two_j + 1;
  const double j = 0.5 * two_j;
  Mat Jp = Mat::Zero(n, n);
  Mat J3 = Mat::Zero(n, n);
  for (int a = 0; a < n; ++a) {
    const double m = j - a;
    J3(a, a) = m;
    // J+ |m> = sqrt(j(j+1) - m(m+1)) |m+1>, index a-1.
    if (a > 0) Jp(a - 1, a) = std::sqrt(j * (j + 1) - m * (m + 1));
  }
  const Mat Jm = Jp.adjoint();
  SpinRep rep;
  rep.two_j = two_j;
  rep.J1 = 0.5 * (Jp + Jm);
  rep.J2 = (Jp - Jm) / cplx(0.0, 2.0);
  rep.J3 = J3;
  return rep;
}

Mat block_copy(const Mat& X) {
  const Mat Z = Mat::Zero(X.rows(), X.cols());
  return blocks(X, Z, Z, X);
}

Mat AntiunitaryOperator::compose(const AntiunitaryOperator& o) const {
  return M * o.M.conjugate();
}

Mat AntiunitaryOperator::conjugate(const Mat& X) const {
  // M is unitary, so M^{-1} = M^H.
  return M * X.conjugate() * M.adjoint();
}

AntiunitaryOperator AntiunitaryOperator::premultiply(const Mat& U) const {
  return AntiunitaryOperator{U * M, true};
}

Mat c_matrix(int two_j) {
  check_two_j(two_j);
  const int n = two_j + 1;
  Mat C = Mat::Zero(n, n);
  for (int a = 0; a < n; ++a) C(a, two_j - a) = (a % 2 == 0) ? 1.0 : -1.0;
  return C;
}

std::pair<int, int> table_epsilons(int row, int two_j) {
  const int s = sign_of_two_j(two_j);
  switch (row) {
    case 1:
      return {s, s};
    case 2:
      return {-s, s};
    case 3:
      return {s, -s};
    case 4:
      return {-s, -s};
    default:
      throw ValidationError("build_extension: row must be 1, 2, 3 or 4");
  }
}

ExtensionCase build_extension(int row, int two_j) {
  const auto [eT, eI] = table_epsilons(row, two_j);
  const Mat C = c_matrix(two_j);
  const Eigen::Index n = C.rows();
  const Mat I = Mat::Identity(n, n);
  const Mat Z = Mat::Zero(n, n);
  ExtensionCase c;
  c.row = row;
  c.two_j = two_j;
  c.eps_T = eT;
  c.eps_I = eI;
  c.doubled = row != 1;
  switch (row) {
    case 1:
      c.U_P = I;
      c.A_T.M = C;
      break;
    case 2:
      c.U_P = blocks(I, Z, Z, -I);
      c.A_T.M = blocks(Z, C, -C, Z);
      break;
    case 3:
      c.U_P = blocks(I, Z, Z, -I);
      c.A_T.M = blocks(Z, C, C, Z);
      break;
    case 4:
      c.U_P = blocks(I, Z, Z, I);
      c.A_T.M = blocks(Z, C, -C, Z);
      break;
  }
  return c;
}

RelationReport check_relations(const ExtensionCase& c, const SpinRep& rep, double tolerance) {
  std::array<Mat, 3> J{rep.J1, rep.J2, rep.J3};
  if (c.doubled && rep.dim() * 2 == c.dim()) {
    for (auto& x : J) x = block_copy(x);
  }
  for (const auto& x : J) {
    if (x.rows() != c.dim() || x.cols() != c.dim()) {
      throw DimensionError("check_relations: representation dimension " +
                           std::to_string(x.rows()) + " does not match case dimension " +
                           std::to_string(c.dim()));
    }
  }
  const Eigen::Index n = c.dim();
  const Mat I = Mat::Identity(n, n);
  const AntiunitaryOperator& A = c.A_T;
  const AntiunitaryOperator UA = A.premultiply(c.U_P);
  const Mat A2 = A.compose(A);
  const Mat UA2 = UA.compose(UA);

  RelationReport r;
  r.row = c.row;
  r.two_j = c.two_j;
  r.eps_T = c.eps_T;
  r.eps_I = c.eps_I;
  r.tolerance = tolerance;
  r.eps_T_measured = static_cast<int>(std::lround(A2(0, 0).real()));
  r.eps_I_measured = static_cast<int>(std::lround(UA2(0, 0).real()));
  auto add = [&](std::string name, double dev) { r.checks.push_back({std::move(name), dev}); };
  add("A_T unitary", max_abs(A.M * A.M.adjoint() - I));
  add("U_P unitary", max_abs(c.U_P * c.U_P.adjoint() - I));
  add("A_T^2 = eps_T", max_abs(A2 - double(c.eps_T) * I));
  add("(U_P A_T)^2 = eps_I", max_abs(UA2 - double(c.eps_I) * I));
  add("U_P^2 = 1", max_abs(c.U_P * c.U_P - I));
  const char* names[3] = {"A_T J1 A_T^-1 = -J1", "A_T J2 A_T^-1 = -J2", "A_T J3 A_T^-1 = -J3"};
  for (int i = 0; i < 3; ++i) add(names[i], max_abs(A.conjugate(J[i]) + J[i]));
  add("A_T U_P A_T^-1 = eps_T eps_I U_P",
      max_abs(A.conjugate(c.U_P) - double(c.eps_T * c.eps_I) * c.U_P));
  add("[J1, J2] = i J3", max_abs(J[0] * J[1] - J[1] * J[0] - cplx(0.0, 1.0) * J[2]));
  add("[J2, J3] = i J1", max_abs(J[1] * J[2] - J[2] * J[1] - cplx(0.0, 1.0) * J[0]));
  add("[J3, J1] = i J2", max_abs(J[2] * J[0] - J[0] * J[2] - cplx(0.0, 1.0) * J[1]));
  add("[1, A_T] = 0", max_abs(A.conjugate(I) - I));
  r.pass = r.eps_T_measured == r.eps_T && r.eps_I_measured == r.eps_I;
  for (const auto& ch : r.checks) r.pass = r.pass && ch.deviation <= tolerance;
  return r;
}

const char* to_string(Space s) {
  switch (s) {
    case Space::phi_minus:
      return "Phi_-";
    case Space::phi_plus:
      return "Phi_+";
    case Space::phi_minus_dual:
      return "Phi_-^x";
    case Space::phi_plus_dual:
      return "Phi_+^x";
  }
  return "?";
}

TaggedKet transform_ket(const ExtensionCase& c, const TaggedKet& k) {
  if (!c.doubled && k.r != 0) {
    throw ValidationError("transform_ket: row 1 carries no r label, r-flip requested");
  }
  if (c.doubled && k.r != 1 && k.r != -1) {
    throw ValidationError("transform_ket: doubled cases require r = +1 or -1");
  }
  if (std::abs(k.two_m) > c.two_j || (c.two_j - k.two_m) % 2 != 0) {
    throw ValidationError("transform_ket: m out of range for spin j");
  }
  TaggedKet out;
  out.r = -k.r;
  out.two_m = -k.two_m;
  const cplx entry = c.A_T.M(basis_index(c, out.r, out.two_m), basis_index(c, k.r, k.two_m));
  out.phase = entry * std::conj(k.phase);
  switch (k.space) {
    case Space::phi_minus:
      out.space = Space::phi_plus;
      break;
    case Space::phi_plus:
      out.space = Space::phi_minus;
      break;
    case Space::phi_minus_dual:
      out.space = Space::phi_plus_dual;
      break;
    case Space::phi_plus_dual:
      out.space = Space::phi_minus_dual;
      break;
  }
  if (k.wave) {
    RationalFunction w = k.wave->reflect();
    // Validate against the invariant of the target space.
    if (out.space == Space::phi_plus) {
      out.wave = ObservableWave(std::move(w)).g();
    } else if (out.space == Space::phi_minus) {
      out.wave = StateWave(std::move(w)).f();
    } else {
      out.wave = std::move(w);
    }
  }
  if (k.gamow) {
    const GamowKet& g = *k.gamow;
    const KetKind kind = g.kind == KetKind::decaying ? KetKind::growing : KetKind::decaying;
    RTag r = g.r;
    if (c.doubled) r = out.r > 0 ? RTag::plus : RTag::minus;
    out.gamow = GamowKet(g.pole, g.order, kind, r);
  }
  return out;
}

ReciprocityReport reciprocity_check(const SMatrixModel& m, double E, const ObservableWave& probe,
                                    double tolerance) {
  if (!(E > 0.0)) throw ValidationError("reciprocity_check: E must be > 0");
  const cplx w = std::sqrt(E);
  const RationalFunction K = reflect(probe);
  const RationalFunction in_ket = K * m.rational();
  ReciprocityReport rep;
  rep.E = E;
  rep.tolerance = tolerance;
  rep.pass = true;
  // The dynamics is r-diagonal: both sectors evaluate the same expressions.
  for (int r : {1, -1}) {
    ReciprocitySector s;
    s.r = r;
    s.in_route = in_ket(w);
    s.out_route = K(w) * std::exp(cplx(0.0, 2.0 * phase_shift(m, E)));
    s.deviation = std::abs(s.in_route - s.out_route);
    rep.pass = rep.pass && s.deviation <= tolerance * std::max(1.0, std::abs(s.out_route));
    rep.sectors.push_back(s);
  }
  return rep;
}

ReciprocityReport reciprocity_check(const SMatrixModel& m, double E) {
  return reciprocity_check(m, E, corpus_wave_pair("broad").probe);
}

}  // namespace gamowlab
