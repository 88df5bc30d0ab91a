#pragma once

#include <complex>
#include <string_view>
#include <vector>

#include <Eigen/Core>

namespace projglue {

using Mat2 = Eigen::Matrix2d;
using Mat3 = Eigen::Matrix3d;
using Mat4 = Eigen::Matrix4d;
using Vec3 = Eigen::Vector3d;
using Vec4 = Eigen::Vector4d;
using MatX = Eigen::MatrixXd;
using VecX = Eigen::VectorXd;

// e^m by scaling and squaring with a Taylor series truncated once terms stop
// changing the sum. Throws invalid-input on non-finite entries.
MatX mat_exp(const MatX& m);

template <int N>
Eigen::Matrix<double, N, N> mat_exp(const Eigen::Matrix<double, N, N>& m) {
  return mat_exp(MatX(m));
}

enum class SpectrumKind { kRealDiagonalizable, kComplex, kDefective };
std::string_view to_string(SpectrumKind kind);

struct Spectrum {
  // Sorted by real part, then imaginary part.
  std::vector<std::complex<double>> eigenvalues;
  // Aligned with eigenvalues, unit length; empty when kind is kDefective.
  std::vector<Eigen::VectorXcd> eigenvectors;
  SpectrumKind kind = SpectrumKind::kRealDiagonalizable;
};

Spectrum eigen_decomp(const MatX& m);

// Relative rank tolerance shared by every rank decision in the library.
// Defaults to 1e-8; PROJGLUE_RANK_TOL overrides it at first use.
double default_rank_tol();
void set_default_rank_tol(double tol);

// Number of singular values above tol * max(largest singular value,
// reference). A positive reference is the magnitude of the data the matrix
// was assembled from; without it, a matrix that is zero up to roundoff
// (entries near 1e-16 after exact cancellation) would have full rank.
int rank_tol(const MatX& m, double tol, double reference = 0.0);
inline int rank_tol(const MatX& m) { return rank_tol(m, default_rank_tol()); }

struct RankInfo {
  int rank = 0;
  // sigma_rank / sigma_{rank-1} style margin: smallest kept over largest
  // dropped relative singular value. Infinity when nothing was dropped.
  double gap = 0.0;
  std::vector<double> singular_values;
};
RankInfo rank_info(const MatX& m, double tol, double reference = 0.0);

// Orthonormal basis (columns) of the numerical null space of m.
MatX null_space(const MatX& m, double tol, double reference = 0.0);

double commutator_norm(const MatX& a, const MatX& b);

}  // namespace projglue
