#pragma once

#include <array>
#include <utility>
#include <vector>

#include "projglue/mathkit/linalg.hpp"

namespace projglue::slice {

struct SliceParams {
  double a = 0, b = 0, x = 0, y = 0;
};

// a = t cos(3 theta), b = t sin(3 theta); t >= 0.
struct PolarParams {
  double t = 0, theta = 0, x = 0, y = 0;
};

SliceParams to_slice(const PolarParams& p);
// Branch: t >= 0 and 3 theta in [0, 2 pi); theta = 0 when t = 0.
PolarParams to_polar(const SliceParams& p);

struct AbelianBasis {
  Mat4 xp, yp, zp;
};

struct ConjugatorPair {
  Mat4 Q, R;
};

// Points of the paraboloid [(x1^2 + x2^2)/2, x1, x2, 1], in coordinates
// [x3, x1, x2, 1].
struct ParaboloidPoints {
  Vec4 p1, p2, p3, p_inf;
};

// The log-generators (x'_{a,b}, x x'_{a,b} + y y'_{a,b}).
std::pair<Mat4, Mat4> phi_log_generators(const SliceParams& p);
// Images of gamma1, gamma2 under Phi(a, b, x, y).
std::pair<Mat4, Mat4> phi_generators(const SliceParams& p);

// Closed-form eigenvalues of Phi(gamma1^m gamma2^n), the common fixed point
// p_inf first. Throws invalid-word for (0, 0).
std::array<double, 4> phi_eigenvalues(const PolarParams& p, int m, int n);

AbelianBasis abelian_basis(double a, double b);
// Partial derivatives of x'_{a,b} and y'_{a,b} in a and in b.
struct AbelianPartials {
  Mat4 dx_da, dy_da, dx_db, dy_db;
};
AbelianPartials abelian_partials(double a, double b);

// Diagonal basis x_{t,theta}, y_{t,theta}, z_{t,theta} of the Cartan algebra.
AbelianBasis diagonal_basis(double t, double theta);
ConjugatorPair conjugators(double t, double theta);
ParaboloidPoints vertex_points(double t, double theta);

struct TransversalityReport {
  int z1_dim = 0;
  int b1_dim = 0;
  int tangent_rank = 0;
  int stacked_rank = 0;
  bool pass = false;
};
TransversalityReport check_slice_transversality(double x, double y);

// Coordinates of A ^ B over pairs (p, q), p < q, of flat gl4 indices
// p = 4i + j; 120 entries.
Eigen::VectorXd wedge(const Mat4& a, const Mat4& b);
int wedge_index(int i, int j, int m, int n);  // 0-based entries, (i,j) before (m,n)

struct BivectorReport {
  bool pass = false;
  int rank_all = 0;
  int rank_conjugation = 0;  // conjugation directions plus scaling
  double coeff_a_e13_e33 = 0;
  double coeff_b_e12_e22 = 0;
  // Largest |coefficient| of the same coordinates across the conjugation span.
  double conj_e13_e33 = 0;
  double conj_e12_e22 = 0;
};
BivectorReport bivector_transversality_check();

struct PitfallSample {
  double t = 0;
  std::array<double, 2> m1_eigenvalues{};
  std::array<double, 2> m2_eigenvalues{};
  bool m2_exact_double_root = false;
};
struct PitfallReport {
  std::vector<PitfallSample> samples;
  double initial_difference = 0;     // |M1(0) - M2(0)|
  double derivative_difference = 0;  // |M1'(0) - M2'(0)|, central differences
  bool pass = false;
};
Mat2 pitfall_m1(double t);
Mat2 pitfall_m2(double t);
PitfallReport eigenvalue_pitfall_demo(const std::vector<double>& ts = {0.1, 0.3, 1.0});

}  // namespace projglue::slice
