#pragma once

#include <Eigen/Dense>
#include <optional>
#include <string>
#include <vector>

#include "gamowlab/gamow_dynamics.hpp"
#include "gamowlab/hardy_waves.hpp"
#include "gamowlab/smatrix_model.hpp"

namespace gamowlab {

// Spins are passed as two_j = 2j, 0 <= two_j <= 8. Basis ordered
// m = j, j-1, ..., -j; doubled spaces put the r = + block first.
inline constexpr int kMaxTwoJ = 8;

struct SpinRep {
  int two_j = 0;
  Eigen::MatrixXcd J1, J2, J3;

  int dim() const { return two_j + 1; }
};

SpinRep spin_rep(int two_j);

// Block-diagonal copy diag(X, X).
Eigen::MatrixXcd block_copy(const Eigen::MatrixXcd& X);

// Antilinear operator X -> M conj(X), M unitary.
struct AntiunitaryOperator {
  Eigen::MatrixXcd M;
  bool antilinear = true;

  // (M1 K)(M2 K) = M1 conj(M2), a linear operator.
  Eigen::MatrixXcd compose(const AntiunitaryOperator& o) const;
  // A X A^{-1} = M conj(X) M^{-1}.
  Eigen::MatrixXcd conjugate(const Eigen::MatrixXcd& X) const;
  // U A as an antiunitary operator.
  AntiunitaryOperator premultiply(const Eigen::MatrixXcd& U) const;
};

struct ExtensionCase {
  int row = 1;
  int two_j = 0;
  int eps_T = 1;
  int eps_I = 1;
  Eigen::MatrixXcd U_P;
  AntiunitaryOperator A_T;
  bool doubled = false;

  int dim() const { return static_cast<int>(U_P.rows()); }
};

// C_{mu nu} = (-1)^{j - mu} delta_{mu, -nu}.
Eigen::MatrixXcd c_matrix(int two_j);

// Rows: 1 (U_P = 1, A_T = C), 2 (diag(1,-1), [[0,C],[-C,0]]),
// 3 (diag(1,-1), [[0,C],[C,0]]), 4 (1, [[0,C],[-C,0]]).
ExtensionCase build_extension(int row, int two_j);

// Prescribed (eps_T, eps_I) of a row.
std::pair<int, int> table_epsilons(int row, int two_j);

struct RelationCheck {
  std::string name;
  double deviation = 0.0;
};

struct RelationReport {
  int row = 1;
  int two_j = 0;
  int eps_T = 1;
  int eps_I = 1;
  int eps_T_measured = 0;
  int eps_I_measured = 0;
  double tolerance = 1e-12;
  std::vector<RelationCheck> checks;
  bool pass = false;
};

// rep may be the plain spin representation (block-copied for doubled
// cases) or already of the case dimension.
RelationReport check_relations(const ExtensionCase& c, const SpinRep& rep,
                               double tolerance = 1e-12);

enum class Space { phi_minus, phi_plus, phi_minus_dual, phi_plus_dual };

const char* to_string(Space s);

// Basis ket |m; r> with scalar phase, the realized wave of its space and an
// optional Gamow label. r = 0 on undoubled spaces, +1 / -1 otherwise.
struct TaggedKet {
  Space space = Space::phi_minus;
  int r = 0;
  int two_m = 0;
  cplx phase = 1.0;
  std::optional<RationalFunction> wave;
  std::optional<GamowKet> gamow;
};

// Antilinear action of A_T: phase -> A_T matrix entry * conj(phase),
// m -> -m, r -> -r on doubled cases, Phi_+- -> Phi_-+ (dual spaces alike),
// wave -> Schwarz reflection, decaying(z) <-> growing(conj z).
TaggedKet transform_ket(const ExtensionCase& c, const TaggedKet& k);

struct ReciprocitySector {
  int r = 1;
  cplx in_route;   // (K S)(w) as one rational function
  cplx out_route;  // K(w) exp(2 i delta(E))
  double deviation = 0.0;
};

struct ReciprocityReport {
  double E = 0.0;
  double tolerance = 1e-10;
  std::vector<ReciprocitySector> sectors;
  bool pass = false;
};

ReciprocityReport reciprocity_check(const SMatrixModel& m, double E, const ObservableWave& probe,
                                    double tolerance = 1e-10);
// With the broad corpus probe.
ReciprocityReport reciprocity_check(const SMatrixModel& m, double E);

}  // namespace gamowlab
