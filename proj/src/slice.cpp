#include "projglue/slice.hpp"

#include <cmath>
#include <numbers>

#include <Eigen/LU>

#include "projglue/cohomology.hpp"
#include "projglue/errors.hpp"
#include "projglue/mathkit/rational.hpp"

namespace projglue::slice {

namespace {

constexpr double kPi = std::numbers::pi;
const double kSqrt3 = std::sqrt(3.0);

Mat4 rotation(double theta) {
  Mat4 r = Mat4::Identity();
  r(1, 1) = std::cos(theta);
  r(1, 2) = -std::sin(theta);
  r(2, 1) = std::sin(theta);
  r(2, 2) = std::cos(theta);
  return r;
}

}  // namespace

SliceParams to_slice(const PolarParams& p) {
  return {p.t * std::cos(3 * p.theta), p.t * std::sin(3 * p.theta), p.x, p.y};
}

PolarParams to_polar(const SliceParams& p) {
  double t = std::hypot(p.a, p.b);
  double angle = t > 0 ? std::atan2(p.b, p.a) : 0.0;
  if (angle < 0) angle += 2 * kPi;
  if (angle >= 2 * kPi) angle -= 2 * kPi;
  return {t, angle / 3.0, p.x, p.y};
}

AbelianBasis abelian_basis(double a, double b) {
  const double r = a * a + b * b;
  AbelianBasis out{Mat4::Zero(), Mat4::Zero(), Mat4::Zero()};
  Mat4& x = out.xp;
  x(0, 1) = 1;
  x(1, 1) = a;
  x(1, 2) = b;
  x(1, 3) = 1;
  x(2, 1) = b;
  x(2, 2) = -a;
  x(3, 1) = 2 * r;
  Mat4& y = out.yp;
  y(0, 2) = 1;
  y(1, 1) = b;
  y(1, 2) = -a;
  y(2, 1) = -a;
  y(2, 2) = -b;
  y(2, 3) = 1;
  y(3, 2) = 2 * r;
  Mat4& z = out.zp;
  z.diagonal() << -3 * r, r, r, r;
  z(0, 3) = 2;
  return out;
}

AbelianPartials abelian_partials(double a, double b) {
  AbelianPartials d{Mat4::Zero(), Mat4::Zero(), Mat4::Zero(), Mat4::Zero()};
  d.dx_da(1, 1) = 1;
  d.dx_da(2, 2) = -1;
  d.dx_da(3, 1) = 4 * a;
  d.dy_da(1, 2) = -1;
  d.dy_da(2, 1) = -1;
  d.dy_da(3, 2) = 4 * a;
  d.dx_db(1, 2) = 1;
  d.dx_db(2, 1) = 1;
  d.dx_db(3, 1) = 4 * b;
  d.dy_db(1, 1) = 1;
  d.dy_db(2, 2) = -1;
  d.dy_db(3, 2) = 4 * b;
  return d;
}

std::pair<Mat4, Mat4> phi_log_generators(const SliceParams& p) {
  AbelianBasis basis = abelian_basis(p.a, p.b);
  return {basis.xp, p.x * basis.xp + p.y * basis.yp};
}

std::pair<Mat4, Mat4> phi_generators(const SliceParams& p) {
  auto [l1, l2] = phi_log_generators(p);
  return {mat_exp(l1), mat_exp(l2)};
}

std::array<double, 4> phi_eigenvalues(const PolarParams& p, int m, int n) {
  if (m == 0 && n == 0) throw Error(ErrorKind::kInvalidWord, "word (0, 0) is the identity");
  const double c = std::cos(p.theta), s = std::sin(p.theta);
  // Log-eigenvalues on the eigenlines p1, p2, p3 (p_inf has log 0).
  const std::array<double, 3> g1 = {2 * p.t * c, -p.t * (c + kSqrt3 * s), p.t * (-c + kSqrt3 * s)};
  const std::array<double, 3> g2 = {
      2 * p.t * (p.x * c + p.y * s),
      -p.t * ((p.x - kSqrt3 * p.y) * c + (kSqrt3 * p.x + p.y) * s),
      -p.t * ((p.x + kSqrt3 * p.y) * c + (-kSqrt3 * p.x + p.y) * s)};
  std::array<double, 4> out{1.0, 0, 0, 0};
  for (int i = 0; i < 3; ++i) out[i + 1] = std::exp(m * g1[i] + n * g2[i]);
  return out;
}

AbelianBasis diagonal_basis(double t, double theta) {
  AbelianBasis out{Mat4::Zero(), Mat4::Zero(), Mat4::Zero()};
  for (int i = 0; i < 3; ++i) {
    double ang = theta + 2 * kPi * i / 3.0;
    out.xp(i, i) = 2 * t * std::cos(ang);
    out.yp(i, i) = 2 * t * std::sin(ang);
  }
  out.zp.diagonal() << t * t, t * t, t * t, -3 * t * t;
  return out;
}

ConjugatorPair conjugators(double t, double theta) {
  if (t == 0.0) throw Error(ErrorKind::kSingularConjugator, "Q(t) is singular at t = 0");
  Mat4 q;
  q << 1, 1, 1, 1,
       2 * t, -t, -t, 0,
       0, kSqrt3 * t, -kSqrt3 * t, 0,
       2 * t * t, 2 * t * t, 2 * t * t, 0;
  return {q, rotation(theta)};
}

ParaboloidPoints vertex_points(double t, double theta) {
  if (t == 0.0) throw Error(ErrorKind::kDegenerate, "vertices collapse to p_inf at t = 0");
  const Vec4 base(1.0 / (2 * t * t), 1.0 / t, 0.0, 1.0);
  return {rotation(theta) * base, rotation(theta + 2 * kPi / 3) * base,
          rotation(theta + 4 * kPi / 3) * base, Vec4(1, 0, 0, 0)};
}

TransversalityReport check_slice_transversality(double x, double y) {
  if (y == 0.0) throw Error(ErrorKind::kDegenerateCuspShape, "cusp shape needs y != 0");
  using cohomology::kDim;
  const SliceParams base{0, 0, x, y};
  auto [g1, g2] = phi_generators(base);
  const Mat4 g1i = g1.inverse(), g2i = g2.inverse();

  const double h = 1e-5;
  MatX tangent(2 * kDim, 4);
  for (int k = 0; k < 4; ++k) {
    SliceParams plus = base, minus = base;
    double* fp[] = {&plus.a, &plus.b, &plus.x, &plus.y};
    double* fm[] = {&minus.a, &minus.b, &minus.x, &minus.y};
    *fp[k] += h;
    *fm[k] -= h;
    auto [p1, p2] = phi_generators(plus);
    auto [m1, m2] = phi_generators(minus);
    tangent.block<kDim, 1>(0, k) = cohomology::to_algebra((p1 - m1) / (2 * h) * g1i);
    tangent.block<kDim, 1>(kDim, k) = cohomology::to_algebra((p2 - m2) / (2 * h) * g2i);
  }

  const auto ad1 = cohomology::adjoint_matrix(g1);
  const auto ad2 = cohomology::adjoint_matrix(g2);
  MatX cob(2 * kDim, kDim);
  cob.topRows(kDim) = Eigen::Matrix<double, kDim, kDim>::Identity() - ad1;
  cob.bottomRows(kDim) = Eigen::Matrix<double, kDim, kDim>::Identity() - ad2;

  MatX stacked(2 * kDim, 4 + kDim);
  stacked << tangent, cob;

  cohomology::Representation rep{cohomology::torus_presentation(), {g1, g2}};
  TransversalityReport r;
  r.z1_dim = cohomology::dims(rep).z1;
  r.b1_dim = rank_tol(cob);
  r.tangent_rank = rank_tol(tangent);
  r.stacked_rank = rank_tol(stacked);
  r.pass = r.tangent_rank == 4 && r.stacked_rank == 4 + r.b1_dim;
  return r;
}

int wedge_index(int i, int j, int m, int n) {
  int p = 4 * i + j, q = 4 * m + n;
  if (p < 0 || q > 15 || p >= q) throw Error(ErrorKind::kInvalidInput, "wedge index needs (i,j) < (m,n)");
  // Pairs before p: sum over r < p of (15 - r).
  return p * (31 - p) / 2 + (q - p - 1);
}

Eigen::VectorXd wedge(const Mat4& a, const Mat4& b) {
  Eigen::VectorXd w(120);
  int idx = 0;
  for (int p = 0; p < 16; ++p)
    for (int q = p + 1; q < 16; ++q) {
      // Eigen defaults to column-major, so address entries by (row, col).
      double ap = a(p / 4, p % 4), aq = a(q / 4, q % 4);
      double bp = b(p / 4, p % 4), bq = b(q / 4, q % 4);
      w(idx++) = ap * bq - aq * bp;
    }
  return w;
}

BivectorReport bivector_transversality_check() {
  const AbelianBasis base = abelian_basis(0, 0);
  const AbelianPartials d = abelian_partials(0, 0);
  const Mat4& x = base.xp;
  const Mat4& y = base.yp;

  MatX conj(120, cohomology::kDim + 1);
  for (int k = 0; k < cohomology::kDim; ++k) {
    Mat4 v = cohomology::algebra_basis(k);
    conj.col(k) = wedge(v * x - x * v, y) + wedge(x, v * y - y * v);
  }
  conj.col(cohomology::kDim) = wedge(x, y);

  Eigen::VectorXd da = wedge(d.dx_da, y) + wedge(x, d.dy_da);
  Eigen::VectorXd db = wedge(d.dx_db, y) + wedge(x, d.dy_db);

  MatX all(120, conj.cols() + 2);
  all << conj, da, db;

  BivectorReport r;
  r.rank_conjugation = rank_tol(conj);
  r.rank_all = rank_tol(all);
  const int i13_33 = wedge_index(0, 2, 2, 2);
  const int i12_22 = wedge_index(0, 1, 1, 1);
  r.coeff_a_e13_e33 = da(i13_33);
  r.coeff_b_e12_e22 = db(i12_22);
  r.conj_e13_e33 = conj.row(i13_33).cwiseAbs().maxCoeff();
  r.conj_e12_e22 = conj.row(i12_22).cwiseAbs().maxCoeff();
  r.pass = r.rank_all == r.rank_conjugation + 2;
  return r;
}

Mat2 pitfall_m1(double t) {
  Mat2 m;
  m << std::exp(t), 1, 0, std::exp(-t);
  return m;
}

Mat2 pitfall_m2(double t) {
  Mat2 m;
  m << 1 + t, 1, -t * t, 1 - t;
  return m;
}

namespace {

// Eigenvalues of M2(t) with t taken as an exact rational, so the entries
// 1 + t, 1 - t, -t^2 are not rounded. Returns true when the root is double.
bool exact_m2_eigenvalues(double t, std::array<double, 2>& out) {
  const Rational tq = rational_from_double(t);
  const Rational a = 1 + tq, b = 1, c = -tq * tq, d = 1 - tq;
  const Rational tr = a + d, det = a * d - b * c;
  const Rational disc = tr * tr - 4 * det;
  if (disc == 0) {
    const double root = Rational(tr / 2).get_d();
    out = {root, root};
    return true;
  }
  double sq = disc > 0 ? std::sqrt(disc.get_d()) : 0.0;
  out = {(tr.get_d() - sq) / 2, (tr.get_d() + sq) / 2};
  return false;
}

}  // namespace

PitfallReport eigenvalue_pitfall_demo(const std::vector<double>& ts) {
  PitfallReport r;
  r.initial_difference = (pitfall_m1(0) - pitfall_m2(0)).norm();
  const double h = 1e-6;
  Mat2 d1 = (pitfall_m1(h) - pitfall_m1(-h)) / (2 * h);
  Mat2 d2 = (pitfall_m2(h) - pitfall_m2(-h)) / (2 * h);
  r.derivative_difference = (d1 - d2).norm();
  bool ok = r.initial_difference == 0.0 && r.derivative_difference < 1e-6;
  for (double t : ts) {
    PitfallSample s;
    s.t = t;
    Spectrum sp = eigen_decomp(pitfall_m1(t));
    s.m1_eigenvalues = {sp.eigenvalues[0].real(), sp.eigenvalues[1].real()};
    s.m2_exact_double_root = exact_m2_eigenvalues(t, s.m2_eigenvalues);
    ok = ok && s.m2_exact_double_root && std::abs(s.m2_eigenvalues[0] - 1) <= 1e-12 &&
         std::abs(s.m2_eigenvalues[1] - 1) <= 1e-12 &&
         std::abs(s.m1_eigenvalues[0] - std::exp(-t)) <= 1e-12 * std::exp(t) &&
         std::abs(s.m1_eigenvalues[1] - std::exp(t)) <= 1e-12 * std::exp(t);
    r.samples.push_back(s);
  }
  r.pass = ok;
  return r;
}

}  // namespace projglue::slice
