#pragma once

#include <array>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "projglue/mathkit/linalg.hpp"

namespace projglue::gluing {

struct PeripheralRep {
  Mat4 M1, M2;
};

using IntMat2x2 = Eigen::Matrix<long long, 2, 2>;

// M1^m M2^n.
Mat4 peripheral_element(const PeripheralRep& rep, long long m, long long n);

struct EigenFrame {
  Mat4 lines;  // unit columns p1..p4; p4 is the distinguished fixed point
  Vec4 log1, log2;    // log|eigenvalue| of M1, M2 on each line
  Vec4 sign1, sign2;  // eigenvalue signs
  double residual = 0;
};

// Common eigenbasis from a generic pencil a*M1 + b*M2. p4 is the line where
// both eigenvalues are 1 (to 1e-8); if there is none, `distinguished` must
// name the line in the pencil's order (ascending log1, then log2).
EigenFrame eigen_frame(const PeripheralRep& rep, std::optional<int> distinguished = std::nullopt);

struct MiddleEigenReport {
  bool holds = false;
  // False only when the verdict rests on a boundary case: a failing cone that
  // is a single ray.
  bool strict = true;
  // Bounding rays of the failing cone {v : d_j(v) <= 0 for all j} when the
  // condition fails; equal rays for a single-ray cone.
  std::optional<std::pair<Eigen::Vector2d, Eigen::Vector2d>> failing_cone;
  // d_j(m, n) = c_j . (m, n) with c_j the difference of log functionals.
  std::array<Eigen::Vector2d, 3> differences;
};
MiddleEigenReport middle_eigenvalue_condition(const EigenFrame& frame);

struct MatchingSolution {
  Mat4 g;
  std::array<int, 4> permutation;  // line j of rep1 goes to line permutation[j] of rep2
  double residual = 0;
  int scaling_freedom = 3;  // diagonal rescalings of the eigenbasis left free
};

// f acts on peripheral exponent columns: f_*(g1^m g2^n) = g1'^{m'} g2'^{n'}
// with (m', n') = f (m, n). Returns every g with rep2(f_* gamma) =
// g rep1(gamma) g^-1 up to tolerance.
std::vector<MatchingSolution> solve_matching(const PeripheralRep& rep1, const PeripheralRep& rep2,
                                             const IntMat2x2& f);
// Largest relative residual of rep2(f_* gamma) = g rep1(gamma) g^-1 over the
// given exponent pairs.
double matching_residual(const PeripheralRep& rep1, const PeripheralRep& rep2, const IntMat2x2& f,
                         const Mat4& g, const std::vector<std::pair<long long, long long>>& words);

struct PrincipalGeometry {
  // Lifts of p1..p4 scaled so that the interior point has positive
  // coordinates; the open tetrahedron T+ is their positive cone.
  Mat4 vertices;
  Mat4 covectors;  // rows phi_1..phi_4 = vertices^-1; P_j = ker phi_j
  Vec4 interior_coordinates;

  std::array<Vec4, 4> tetra_plus() const;   // p1, p2, p3, p4
  std::array<Vec4, 4> tetra_minus() const;  // p1, p2, p3, -p4
  std::array<Vec4, 3> triangle() const;     // p1, p2, p3

  bool in_prism(const Vec4& x, double tol = 0) const;
  bool in_tetra_plus(const Vec4& x, double tol = 0) const;
  bool in_tetra_minus(const Vec4& x, double tol = 0) const;
};

PrincipalGeometry principal_geometry(const EigenFrame& frame, const Vec4& interior_point);

struct PingPongViolation {
  std::string word;
  std::string reason;       // "not-contained" or "containment-test-inconclusive"
  double min_coordinate = 0;
};

struct PingPongReport {
  bool pass = false;
  bool inconclusive = false;
  int words_checked = 0;
  std::vector<PingPongViolation> violations;
};

// Alternating words up to `depth` in the letters a<i>/A<i> (gens1 and
// inverses) and b<i>/B<i> (gens2). Piece 1 must send closure(T-) into T+,
// piece 2 must send closure(T+) into T-.
PingPongReport pingpong_check(const std::vector<Mat4>& gens1, const std::vector<Mat4>& gens2,
                              const PrincipalGeometry& shared, int depth);

// Two cyclic groups sharing the coordinate frame: piece 1 generated by a
// hyperbolic element with eigenvalue ratio mu attracting into T+, piece 2 its
// conjugate by diag(1,1,1,-1). Large mu plays ping-pong, mu near 1 does not.
struct SyntheticConfiguration {
  std::vector<Mat4> gens1, gens2;
  PeripheralRep peripheral;
  Vec4 interior_point;
};
SyntheticConfiguration synthetic_pingpong_configuration(double mu);

struct GluedGroup {
  enum class Kind { kAmalgam, kHnn };
  Kind kind = Kind::kAmalgam;
  std::map<std::string, Mat4> gens1, gens2;
  std::vector<std::vector<std::pair<std::string, int>>> peripheral_words;
  Mat4 gluing = Mat4::Identity();
  std::string stable_letter = "t";
};

using GroupWord = std::vector<std::pair<std::string, int>>;
// "a b^-1 t" or "a*b^-1*t".
GroupWord parse_group_word(const std::string& text);

// Amalgam: piece 1 is moved by the gluing matrix, g M g^-1, piece 2 is the
// inclusion. HNN: the stable letter maps to the gluing matrix.
Mat4 word_holonomy(const GluedGroup& group, const GroupWord& word);

}  // namespace projglue::gluing
