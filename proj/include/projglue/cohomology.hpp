#pragma once

#include <optional>
#include <span>
#include <string>
#include <vector>

#include "projglue/mathkit/linalg.hpp"

namespace projglue::cohomology {

struct Letter {
  int generator = 0;
  int exponent = 1;  // +1 or -1
  friend bool operator==(const Letter&, const Letter&) = default;
};
using Word = std::vector<Letter>;

struct Presentation {
  std::vector<std::string> generators;
  std::vector<Word> relators;

  int index_of(const std::string& name) const;  // -1 when absent
  void validate() const;                         // throws invalid-input
  void validate_word(const Word& w) const;       // throws invalid-input
};

// <g1, g2 | g1 g2 g1^-1 g2^-1>
Presentation torus_presentation();
// True for two generators and a single commutator relator.
bool is_torus_presentation(const Presentation& p);

struct Representation {
  Presentation presentation;
  std::vector<Mat4> matrices;

  Mat4 evaluate(const Word& w) const;
};

// sl4 basis: E_ij (i != j, row-major) then H_k = E_kk - E_{k+1,k+1}.
constexpr int kDim = 15;
using AlgebraVector = Eigen::Matrix<double, kDim, 1>;
Mat4 algebra_basis(int k);
Mat4 from_algebra(const AlgebraVector& v);
// Coordinates of a traceless matrix (the trace part is discarded).
AlgebraVector to_algebra(const Mat4& m);
// Matrix of Ad_g = (X -> g X g^-1) in the sl4 basis.
Eigen::Matrix<double, kDim, kDim> adjoint_matrix(const Mat4& g);

// Extends generator values u by u(xy) = u(x) + Ad_x u(y) and
// u(x^-1) = -Ad_{x^-1} u(x).
AlgebraVector cocycle_value(const Representation& rep, std::span<const AlgebraVector> u,
                            const Word& w);

struct CocycleSystem {
  // Row block r: cocycle_value on relator r; column block g: u(generator g).
  MatX fox_matrix;
  // Column c belongs to (generator, basis element) = columns[c].
  std::vector<std::pair<int, int>> columns;
  // Largest Frobenius norm of the Ad products summed into the matrix; the
  // reference scale for its rank.
  double scale = 1.0;
};
CocycleSystem cocycle_system(const Representation& rep);

// Rows stack (Ad_{rho(g)} - I) over generators; its kernel is H^0.
MatX invariants_system(const Representation& rep);

struct CohomologyDims {
  int h0 = 0, z1 = 0, b1 = 0, h1 = 0;
  // Set only for torus presentations, where H^2 has the dimension of H^0
  // by duality. Never computed directly.
  std::optional<int> h2_by_duality;
  double h0_gap = 0.0;  // singular-value gap at the rank cut
  double z1_gap = 0.0;
};

// Throws not-a-representation if a relator is off the identity by more than
// 1e-6 (a relator evaluating to -I is rejected too).
void check_relators(const Representation& rep);

CohomologyDims dims(const Representation& rep, double tol);
inline CohomologyDims dims(const Representation& rep) { return dims(rep, default_rank_tol()); }

// Z x Z with g1 -> U(1,0), g2 -> U(u,v), where U(u,v) is the parabolic
// translation by (u,v) fixing [1,0,0,0].
Mat4 unipotent_translation(double u, double v);
Representation cusp_rep(double u, double v);

struct RestrictionReport {
  int h1 = 0;
  int rank = 0;
  int kernel_dim = 0;
  bool rigid_rel_boundary = false;
};

// Each peripheral subgroup is given by one or more words whose images must
// commute.
RestrictionReport restriction_rank(const Representation& rep,
                                   const std::vector<std::vector<Word>>& peripherals, double tol);
inline RestrictionReport restriction_rank(const Representation& rep,
                                          const std::vector<std::vector<Word>>& peripherals) {
  return restriction_rank(rep, peripherals, default_rank_tol());
}

}  // namespace projglue::cohomology
