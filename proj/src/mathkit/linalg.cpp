#include "projglue/mathkit/linalg.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdlib>
#include <limits>
#include <numeric>

#include <Eigen/Eigenvalues>
#include <Eigen/SVD>

#include "projglue/errors.hpp"

namespace projglue {

MatX mat_exp(const MatX& m) {
  if (m.rows() != m.cols()) throw Error(ErrorKind::kInvalidInput, "mat_exp needs a square matrix");
  if (!m.allFinite()) throw Error(ErrorKind::kInvalidInput, "mat_exp: non-finite entry");
  const Eigen::Index n = m.rows();
  double norm = m.cwiseAbs().rowwise().sum().maxCoeff();
  int squarings = 0;
  if (norm > 0.5) squarings = static_cast<int>(std::ceil(std::log2(norm / 0.5)));
  MatX a = m / std::ldexp(1.0, squarings);

  MatX sum = MatX::Identity(n, n);
  MatX term = MatX::Identity(n, n);
  for (int k = 1; k < 60; ++k) {
    term = term * a / static_cast<double>(k);
    MatX next = sum + term;
    if (next == sum) break;
    sum.swap(next);
  }
  for (int i = 0; i < squarings; ++i) sum = sum * sum;
  return sum;
}

std::string_view to_string(SpectrumKind kind) {
  switch (kind) {
    case SpectrumKind::kRealDiagonalizable: return "real-diagonalizable";
    case SpectrumKind::kComplex: return "complex";
    case SpectrumKind::kDefective: return "defective";
  }
  return "unknown";
}

namespace {

bool eig_less(const std::complex<double>& a, const std::complex<double>& b) {
  if (a.real() != b.real()) return a.real() < b.real();
  return a.imag() < b.imag();
}

}  // namespace

Spectrum eigen_decomp(const MatX& m) {
  if (m.rows() != m.cols()) throw Error(ErrorKind::kInvalidInput, "eigen_decomp needs a square matrix");
  if (!m.allFinite()) throw Error(ErrorKind::kInvalidInput, "eigen_decomp: non-finite entry");
  const Eigen::Index n = m.rows();
  Spectrum out;
  if (n == 0) return out;

  Eigen::EigenSolver<MatX> es(m, true);
  if (es.info() != Eigen::Success) {
    throw Error(ErrorKind::kInvalidInput, "eigen_decomp: iteration did not converge");
  }
  Eigen::VectorXcd vals = es.eigenvalues();
  Eigen::MatrixXcd vecs = es.eigenvectors();
  for (Eigen::Index j = 0; j < n; ++j) {
    double nv = vecs.col(j).norm();
    if (nv > 0) vecs.col(j) /= nv;
  }

  double scale = std::max(1.0, m.norm());
  // Nearly parallel eigenvectors mean the eigensolver split a Jordan block.
  Eigen::JacobiSVD<Eigen::MatrixXcd> svd(vecs);
  const auto& sv = svd.singularValues();
  bool defective = sv(n - 1) < 1e-7 * sv(0);

  std::vector<Eigen::Index> order(static_cast<std::size_t>(n));
  std::iota(order.begin(), order.end(), 0);

  if (defective) {
    // Replace each cluster of split eigenvalues by its mean; a Jordan block of
    // size k perturbs eigenvalues by about eps^{1/k}.
    std::vector<std::complex<double>> v(vals.data(), vals.data() + n);
    std::vector<int> cluster(static_cast<std::size_t>(n));
    std::iota(cluster.begin(), cluster.end(), 0);
    const double ctol = 1e-3 * scale;
    for (Eigen::Index i = 0; i < n; ++i)
      for (Eigen::Index j = i + 1; j < n; ++j)
        if (std::abs(v[i] - v[j]) < ctol) {
          int from = cluster[j], to = cluster[i];
          for (auto& c : cluster)
            if (c == from) c = to;
        }
    std::vector<std::complex<double>> merged(v.size());
    for (std::size_t i = 0; i < v.size(); ++i) {
      std::complex<double> sum = 0;
      int count = 0;
      for (std::size_t j = 0; j < v.size(); ++j)
        if (cluster[j] == cluster[i]) {
          sum += v[j];
          ++count;
        }
      merged[i] = sum / static_cast<double>(count);
      if (std::abs(merged[i].imag()) < 1e-9 * scale) merged[i].imag(0.0);
    }
    std::sort(merged.begin(), merged.end(), eig_less);
    out.eigenvalues = std::move(merged);
    out.kind = SpectrumKind::kDefective;
    return out;
  }

  bool complex = false;
  for (Eigen::Index j = 0; j < n; ++j)
    if (std::abs(vals(j).imag()) > 1e-12 * scale) complex = true;

  std::sort(order.begin(), order.end(),
            [&](Eigen::Index a, Eigen::Index b) { return eig_less(vals(a), vals(b)); });
  for (Eigen::Index idx : order) {
    std::complex<double> lam = vals(idx);
    Eigen::VectorXcd vec = vecs.col(idx);
    if (!complex) {
      lam.imag(0.0);
      // Real eigenvector: rotate the phase away, then fix the sign so the
      // largest entry is positive.
      Eigen::Index k;
      vec.cwiseAbs().maxCoeff(&k);
      vec *= std::conj(vec(k)) / std::abs(vec(k));
      vec = vec.real().cast<std::complex<double>>();
      vec.normalize();
    }
    out.eigenvalues.push_back(lam);
    out.eigenvectors.push_back(vec);
  }
  out.kind = complex ? SpectrumKind::kComplex : SpectrumKind::kRealDiagonalizable;
  return out;
}

namespace {

double initial_rank_tol() {
  if (const char* env = std::getenv("PROJGLUE_RANK_TOL")) {
    char* end = nullptr;
    double v = std::strtod(env, &end);
    if (end != env && v > 0 && std::isfinite(v)) return v;
  }
  return 1e-8;
}

std::atomic<double>& rank_tol_slot() {
  static std::atomic<double> slot{initial_rank_tol()};
  return slot;
}

}  // namespace

double default_rank_tol() { return rank_tol_slot().load(); }

void set_default_rank_tol(double tol) {
  if (!(tol > 0)) throw Error(ErrorKind::kInvalidInput, "rank tolerance must be positive");
  rank_tol_slot().store(tol);
}

RankInfo rank_info(const MatX& m, double tol, double reference) {
  if (!(tol > 0)) throw Error(ErrorKind::kInvalidInput, "rank tolerance must be positive");
  RankInfo info;
  if (m.size() == 0) {
    info.gap = std::numeric_limits<double>::infinity();
    return info;
  }
  Eigen::JacobiSVD<MatX> svd(m);
  const VecX& sv = svd.singularValues();
  info.singular_values.assign(sv.data(), sv.data() + sv.size());
  double top = sv.size() ? sv(0) : 0.0;
  const double cut = tol * std::max(top, reference);
  if (top <= cut) {
    info.gap = std::numeric_limits<double>::infinity();
    return info;
  }
  for (Eigen::Index i = 0; i < sv.size(); ++i)
    if (sv(i) > cut) ++info.rank;
  if (info.rank == sv.size()) {
    info.gap = std::numeric_limits<double>::infinity();
  } else {
    double kept = info.rank > 0 ? sv(info.rank - 1) : top;
    double dropped = sv(info.rank);
    info.gap = dropped > 0 ? kept / dropped : std::numeric_limits<double>::infinity();
  }
  return info;
}

int rank_tol(const MatX& m, double tol, double reference) { return rank_info(m, tol, reference).rank; }

MatX null_space(const MatX& m, double tol, double reference) {
  const Eigen::Index cols = m.cols();
  if (m.rows() == 0) return MatX::Identity(cols, cols);
  Eigen::JacobiSVD<MatX> svd(m, Eigen::ComputeFullV);
  const VecX& sv = svd.singularValues();
  const double cut = tol * std::max(sv.size() ? sv(0) : 0.0, reference);
  Eigen::Index r = 0;
  for (Eigen::Index i = 0; i < sv.size(); ++i)
    if (sv(i) > cut) ++r;
  return svd.matrixV().rightCols(cols - r);
}

double commutator_norm(const MatX& a, const MatX& b) { return (a * b - b * a).norm(); }

}  // namespace projglue
