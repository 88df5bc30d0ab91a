#include "projglue/gluing.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <numeric>
#include <sstream>

#include <Eigen/LU>

#include "projglue/errors.hpp"

namespace projglue::gluing {

namespace {

Mat4 matrix_power(const Mat4& m, long long e) {
  Mat4 base = e >= 0 ? m : Mat4(m.inverse());
  Mat4 out = Mat4::Identity();
  for (long long k = std::llabs(e); k > 0; k >>= 1) {
    if (k & 1) out = out * base;
    base = base * base;
  }
  return out;
}

void require_real_diagonalizable(const Mat4& m, const char* which) {
  Spectrum sp = eigen_decomp(m);
  if (sp.kind != SpectrumKind::kRealDiagonalizable) {
    throw Error(ErrorKind::kNotDiagonalizable,
                std::string(which) + " is " + std::string(to_string(sp.kind)) + ", not real-diagonalizable");
  }
}

struct CommonBasis {
  Mat4 lines;
  Vec4 lam1, lam2;  // signed eigenvalues
  double residual = 0;
};

// Deterministic pencil directions, tried in order.
constexpr std::array<std::array<double, 2>, 8> kPencil = {{{1.0, 0.6180339887498949},
                                                           {0.7548776662466927, 1.0},
                                                           {1.0, -0.4142135623730950},
                                                           {0.5698402909980532, 0.8191725133961645},
                                                           {1.0, 0.0},
                                                           {0.0, 1.0},
                                                           {-0.3247179572447460, 1.0},
                                                           {1.0, 2.2360679774997897}}};

CommonBasis common_basis(const PeripheralRep& rep) {
  if (!rep.M1.allFinite() || !rep.M2.allFinite()) {
    throw Error(ErrorKind::kInvalidInput, "non-finite peripheral matrix");
  }
  const double scale = std::max(1.0, rep.M1.norm() * rep.M2.norm());
  if (commutator_norm(rep.M1, rep.M2) > 1e-9 * scale) {
    throw Error(ErrorKind::kInvalidPair, "peripheral generators do not commute");
  }
  require_real_diagonalizable(rep.M1, "M1");
  require_real_diagonalizable(rep.M2, "M2");

  for (const auto& [a, b] : kPencil) {
    Mat4 p = a * rep.M1 + b * rep.M2;
    Spectrum sp = eigen_decomp(p);
    if (sp.kind != SpectrumKind::kRealDiagonalizable) continue;
    double gap = std::numeric_limits<double>::infinity();
    for (int i = 0; i + 1 < 4; ++i)
      gap = std::min(gap, sp.eigenvalues[i + 1].real() - sp.eigenvalues[i].real());
    if (gap < 1e-6 * std::max(1.0, p.norm())) continue;

    CommonBasis cb;
    for (int j = 0; j < 4; ++j) {
      Vec4 v = sp.eigenvectors[j].real();
      v.normalize();
      Eigen::Index k;
      v.cwiseAbs().maxCoeff(&k);
      if (v(k) < 0) v = -v;
      cb.lines.col(j) = v;
      cb.lam1(j) = v.dot(rep.M1 * v);
      cb.lam2(j) = v.dot(rep.M2 * v);
      double r1 = (rep.M1 * v - cb.lam1(j) * v).norm() / std::max(1.0, rep.M1.norm());
      double r2 = (rep.M2 * v - cb.lam2(j) * v).norm() / std::max(1.0, rep.M2.norm());
      cb.residual = std::max({cb.residual, r1, r2});
    }
    if (cb.residual > 1e-8) continue;
    if ((cb.lam1.array().abs() < 1e-300).any() || (cb.lam2.array().abs() < 1e-300).any()) {
      throw Error(ErrorKind::kInvalidInput, "singular peripheral matrix");
    }
    return cb;
  }
  throw Error(ErrorKind::kDegeneratePencil, "no pencil combination separates the eigenlines");
}

}  // namespace

Mat4 peripheral_element(const PeripheralRep& rep, long long m, long long n) {
  return matrix_power(rep.M1, m) * matrix_power(rep.M2, n);
}

EigenFrame eigen_frame(const PeripheralRep& rep, std::optional<int> distinguished) {
  CommonBasis cb = common_basis(rep);
  Vec4 l1 = cb.lam1.array().abs().log(), l2 = cb.lam2.array().abs().log();

  std::array<int, 4> order;
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(), [&](int a, int b) {
    if (l1(a) != l1(b)) return l1(a) < l1(b);
    return l2(a) < l2(b);
  });

  int p4 = -1;
  if (distinguished) {
    if (*distinguished < 0 || *distinguished > 3) {
      throw Error(ErrorKind::kInvalidInput, "distinguished line index must be in 0..3");
    }
    p4 = order[*distinguished];
  } else {
    double best = std::numeric_limits<double>::infinity();
    for (int j = 0; j < 4; ++j) {
      if (cb.lam1(j) < 0 || cb.lam2(j) < 0) continue;
      double d = std::max(std::abs(l1(j)), std::abs(l2(j)));
      if (d < 1e-8 && d < best) {
        best = d;
        p4 = j;
      }
    }
    if (p4 < 0) {
      throw Error(ErrorKind::kDistinguishedLineUnspecified,
                  "no common unit-eigenvalue line; the distinguished line must be given");
    }
  }

  EigenFrame f;
  int col = 0;
  auto put = [&](int j, int c) {
    f.lines.col(c) = cb.lines.col(j);
    f.log1(c) = l1(j);
    f.log2(c) = l2(j);
    f.sign1(c) = cb.lam1(j) < 0 ? -1.0 : 1.0;
    f.sign2(c) = cb.lam2(j) < 0 ? -1.0 : 1.0;
  };
  for (int j : order)
    if (j != p4) put(j, col++);
  put(p4, 3);
  f.residual = cb.residual;
  return f;
}

MiddleEigenReport middle_eigenvalue_condition(const EigenFrame& frame) {
  MiddleEigenReport r;
  double scale = std::max({1.0, frame.log1.cwiseAbs().maxCoeff(), frame.log2.cwiseAbs().maxCoeff()});
  std::array<double, 3> angles;
  for (int j = 0; j < 3; ++j) {
    r.differences[j] = {frame.log1(j) - frame.log1(3), frame.log2(j) - frame.log2(3)};
    if (r.differences[j].norm() < 1e-9 * scale) {
      throw Error(ErrorKind::kDegenerateSpectrum,
                  "eigenvalue functional of line " + std::to_string(j + 1) + " equals that of p4");
    }
    angles[j] = std::atan2(r.differences[j].y(), r.differences[j].x());
  }
  std::sort(angles.begin(), angles.end());
  // The cone {v : c_j . v <= 0} is nonzero iff the c_j fit in a closed half
  // plane, i.e. some circular gap between consecutive directions is >= pi.
  const double two_pi = 2 * std::numbers::pi;
  double gap = 0, gap_start = 0;
  for (int j = 0; j < 3; ++j) {
    double next = j == 2 ? angles[0] + two_pi : angles[j + 1];
    if (next - angles[j] > gap) {
      gap = next - angles[j];
      gap_start = angles[j];
    }
  }
  const double tol = 1e-9;
  if (gap < std::numbers::pi - tol) {
    r.holds = true;
    r.strict = true;
    return r;
  }
  r.holds = false;
  r.strict = gap > std::numbers::pi + tol;
  // v fails when it is at least pi/2 away from every c_j.
  double lo = gap_start + std::numbers::pi / 2, hi = gap_start + gap - std::numbers::pi / 2;
  if (!r.strict) lo = hi = gap_start + gap / 2;
  r.failing_cone = std::make_pair(Eigen::Vector2d(std::cos(lo), std::sin(lo)),
                                  Eigen::Vector2d(std::cos(hi), std::sin(hi)));
  return r;
}

double matching_residual(const PeripheralRep& rep1, const PeripheralRep& rep2, const IntMat2x2& f,
                         const Mat4& g, const std::vector<std::pair<long long, long long>>& words) {
  const Mat4 gi = g.inverse();
  double worst = 0;
  for (const auto& [m, n] : words) {
    Mat4 lhs = peripheral_element(rep2, f(0, 0) * m + f(0, 1) * n, f(1, 0) * m + f(1, 1) * n);
    Mat4 rhs = g * peripheral_element(rep1, m, n) * gi;
    worst = std::max(worst, (lhs - rhs).norm() / std::max(1e-300, lhs.norm()));
  }
  return worst;
}

std::vector<MatchingSolution> solve_matching(const PeripheralRep& rep1, const PeripheralRep& rep2,
                                             const IntMat2x2& f) {
  long long det = f(0, 0) * f(1, 1) - f(0, 1) * f(1, 0);
  if (det != 1 && det != -1) throw Error(ErrorKind::kInvalidGluingMap, "gluing map must have det +-1");
  CommonBasis b1 = common_basis(rep1), b2 = common_basis(rep2);

  // Signed eigenvalues of rep2 at f_* gamma1 and f_* gamma2 on each line.
  Vec4 mu1, mu2;
  for (int j = 0; j < 4; ++j) {
    auto pw = [](double x, long long e) { return std::pow(x, static_cast<double>(e)); };
    mu1(j) = pw(b2.lam1(j), f(0, 0)) * pw(b2.lam2(j), f(1, 0));
    mu2(j) = pw(b2.lam1(j), f(0, 1)) * pw(b2.lam2(j), f(1, 1));
  }
  auto same = [](double a, double b) {
    return (a < 0) == (b < 0) && std::abs(std::log(std::abs(a)) - std::log(std::abs(b))) < 1e-7;
  };

  std::vector<MatchingSolution> out;
  std::array<int, 4> perm = {0, 1, 2, 3};
  const Mat4 v1_inv = b1.lines.inverse();
  do {
    bool ok = true;
    for (int j = 0; j < 4 && ok; ++j)
      ok = same(b1.lam1(j), mu1(perm[j])) && same(b1.lam2(j), mu2(perm[j]));
    if (!ok) continue;
    Mat4 target;
    for (int j = 0; j < 4; ++j) target.col(j) = b2.lines.col(perm[j]);
    Mat4 g = target * v1_inv;
    g /= std::pow(std::abs(g.determinant()), 0.25);
    MatchingSolution s;
    s.g = g;
    s.permutation = perm;
    s.residual = matching_residual(rep1, rep2, f, g, {{1, 0}, {0, 1}});
    out.push_back(s);
  } while (std::next_permutation(perm.begin(), perm.end()));
  return out;
}

std::array<Vec4, 4> PrincipalGeometry::tetra_plus() const {
  return {vertices.col(0), vertices.col(1), vertices.col(2), vertices.col(3)};
}

std::array<Vec4, 4> PrincipalGeometry::tetra_minus() const {
  return {vertices.col(0), vertices.col(1), vertices.col(2), -vertices.col(3)};
}

std::array<Vec4, 3> PrincipalGeometry::triangle() const {
  return {vertices.col(0), vertices.col(1), vertices.col(2)};
}

namespace {

// Coordinates of x lifted so that phi_1 + phi_2 + phi_3 >= 0.
Vec4 lifted(const PrincipalGeometry& g, const Vec4& x) {
  Vec4 c = g.covectors * x;
  if (c(0) + c(1) + c(2) < 0) c = -c;
  return c / std::max(1e-300, c.cwiseAbs().maxCoeff());
}

}  // namespace

bool PrincipalGeometry::in_prism(const Vec4& x, double tol) const {
  Vec4 c = lifted(*this, x);
  return c(0) > tol && c(1) > tol && c(2) > tol;
}

bool PrincipalGeometry::in_tetra_plus(const Vec4& x, double tol) const {
  Vec4 c = lifted(*this, x);
  return in_prism(x, tol) && c(3) > tol;
}

bool PrincipalGeometry::in_tetra_minus(const Vec4& x, double tol) const {
  Vec4 c = lifted(*this, x);
  return in_prism(x, tol) && c(3) < -tol;
}

PrincipalGeometry principal_geometry(const EigenFrame& frame, const Vec4& interior_point) {
  PrincipalGeometry g;
  g.vertices = frame.lines;
  Vec4 c = frame.lines.inverse() * interior_point;
  const double tol = 1e-9 * std::max(1e-300, c.cwiseAbs().maxCoeff());
  for (int j = 0; j < 4; ++j) {
    if (std::abs(c(j)) <= tol) {
      throw Error(ErrorKind::kAmbiguousSide,
                  "interior point lies on plane P" + std::to_string(j + 1));
    }
    if (c(j) < 0) g.vertices.col(j) = -g.vertices.col(j);
  }
  g.covectors = g.vertices.inverse();
  g.interior_coordinates = g.covectors * interior_point;
  return g;
}

namespace {

struct Containment {
  enum class Kind { kInside, kOutside, kInconclusive } kind;
  double min_coordinate;
};

// Does the projective image of the closed simplex spanned by `src` lifts lie
// in the open simplex cone spanned by `dst`?
Containment image_contained(const Mat4& a, const std::array<Vec4, 4>& src, const Mat4& dst_inv,
                            int refinements) {
  std::array<Vec4, 4> bary;
  std::array<double, 4> psi;
  for (int i = 0; i < 4; ++i) {
    bary[i] = dst_inv * (a * src[i]);
    bary[i] /= std::max(1e-300, bary[i].cwiseAbs().maxCoeff());
    psi[i] = bary[i].sum();
  }
  const double tol = 1e-10;
  bool near_zero = std::any_of(psi.begin(), psi.end(), [&](double p) { return std::abs(p) <= tol; });
  if (near_zero) {
    if (refinements == 0) return {Containment::Kind::kInconclusive, 0.0};
    // Midpoint refinement into 8 pieces: 4 corner simplices and the central
    // octahedron split along one diagonal.
    std::array<std::array<Vec4, 4>, 8> pieces;
    auto mid = [&](int i, int j) { return Vec4(0.5 * (src[i] + src[j])); };
    Vec4 m01 = mid(0, 1), m02 = mid(0, 2), m03 = mid(0, 3), m12 = mid(1, 2), m13 = mid(1, 3),
         m23 = mid(2, 3);
    pieces[0] = {src[0], m01, m02, m03};
    pieces[1] = {m01, src[1], m12, m13};
    pieces[2] = {m02, m12, src[2], m23};
    pieces[3] = {m03, m13, m23, src[3]};
    pieces[4] = {m01, m02, m03, m13};
    pieces[5] = {m01, m02, m12, m13};
    pieces[6] = {m02, m03, m13, m23};
    pieces[7] = {m02, m12, m13, m23};
    Containment worst{Containment::Kind::kInside, std::numeric_limits<double>::infinity()};
    for (const auto& p : pieces) {
      Containment c = image_contained(a, p, dst_inv, refinements - 1);
      if (c.kind == Containment::Kind::kOutside) return c;
      if (c.kind == Containment::Kind::kInconclusive) worst.kind = c.kind;
      worst.min_coordinate = std::min(worst.min_coordinate, c.min_coordinate);
    }
    return worst;
  }
  bool pos = psi[0] > 0;
  for (int i = 1; i < 4; ++i)
    if ((psi[i] > 0) != pos) return {Containment::Kind::kOutside, -1.0};
  double worst = std::numeric_limits<double>::infinity();
  for (int i = 0; i < 4; ++i) {
    Vec4 b = pos ? bary[i] : Vec4(-bary[i]);
    worst = std::min(worst, b.minCoeff() / b.sum());
  }
  return {worst > 0 ? Containment::Kind::kInside : Containment::Kind::kOutside, worst};
}

}  // namespace

PingPongReport pingpong_check(const std::vector<Mat4>& gens1, const std::vector<Mat4>& gens2,
                              const PrincipalGeometry& shared, int depth) {
  if (depth < 0) throw Error(ErrorKind::kInvalidInput, "depth must be >= 0");
  struct LetterInfo {
    std::string name;
    Mat4 m;
  };
  std::array<std::vector<LetterInfo>, 2> letters;
  for (std::size_t i = 0; i < gens1.size(); ++i) {
    letters[0].push_back({"a" + std::to_string(i), gens1[i]});
    letters[0].push_back({"A" + std::to_string(i), gens1[i].inverse()});
  }
  for (std::size_t i = 0; i < gens2.size(); ++i) {
    letters[1].push_back({"b" + std::to_string(i), gens2[i]});
    letters[1].push_back({"B" + std::to_string(i), gens2[i].inverse()});
  }
  // Piece 1 targets T+ and piece 2 targets T-.
  const std::array<std::array<Vec4, 4>, 2> target_vertices = {shared.tetra_plus(), shared.tetra_minus()};
  std::array<Mat4, 2> target_inv;
  for (int p = 0; p < 2; ++p) {
    Mat4 w;
    for (int i = 0; i < 4; ++i) w.col(i) = target_vertices[p][i];
    target_inv[p] = w.inverse();
  }

  PingPongReport report;
  struct Frame {
    std::string word;
    Mat4 m;
    int first_piece, last_piece;
  };
  std::vector<Frame> level;
  for (int p = 0; p < 2; ++p)
    for (const auto& l : letters[p]) level.push_back({l.name, l.m, p, p});
  for (int d = 1; d <= depth && !level.empty(); ++d) {
    for (const auto& fr : level) {
      // The last letter moves the opposite tetrahedron; the first letter's
      // piece decides where the image must land.
      const auto& src = target_vertices[1 - fr.last_piece];
      Containment c = image_contained(fr.m, src, target_inv[fr.first_piece], 1);
      ++report.words_checked;
      if (c.kind == Containment::Kind::kInside) continue;
      bool inc = c.kind == Containment::Kind::kInconclusive;
      report.inconclusive = report.inconclusive || inc;
      report.violations.push_back(
          {fr.word, inc ? "containment-test-inconclusive" : "not-contained", c.min_coordinate});
    }
    if (d == depth) break;
    std::vector<Frame> next;
    for (const auto& fr : level) {
      int p = 1 - fr.last_piece;
      for (const auto& l : letters[p]) next.push_back({fr.word + l.name, fr.m * l.m, fr.first_piece, p});
    }
    level = std::move(next);
  }
  std::sort(report.violations.begin(), report.violations.end(), [](const auto& a, const auto& b) {
    if (a.word.size() != b.word.size()) return a.word.size() < b.word.size();
    return a.word < b.word;
  });
  report.pass = report.violations.empty();
  return report;
}

namespace {

Mat4 hyperbolic(const Vec4& attract, const Vec4& repel, double mu) {
  Mat4 b;
  b.col(0) = attract;
  b.col(1) = repel;
  b.col(2) = Vec4(1, -1, 0, 0);
  b.col(3) = Vec4(0, 1, -1, 0);
  return b * Vec4(mu, 1 / mu, 1, 1).asDiagonal() * b.inverse();
}

}  // namespace

SyntheticConfiguration synthetic_pingpong_configuration(double mu) {
  if (!(mu > 0)) throw Error(ErrorKind::kInvalidInput, "eigenvalue ratio must be positive");
  SyntheticConfiguration c;
  c.gens1 = {hyperbolic(Vec4(1, 1, 1, 1.5), Vec4(1, 1, 1, 3), mu),
             hyperbolic(Vec4(2, 1, 1, 1), Vec4(1, 2, 1, 2.5), mu)};
  const Mat4 flip = Vec4(1, 1, 1, -1).asDiagonal();
  for (const auto& g : c.gens1) c.gens2.push_back(flip * g * flip);
  c.peripheral = {Vec4(std::exp(1.0), std::exp(-0.25), std::exp(-0.75), 1.0).asDiagonal(),
                  Vec4(std::exp(-0.5), std::exp(1.25), std::exp(-0.75), 1.0).asDiagonal()};
  c.interior_point = Vec4(1, 1, 1, 1);
  return c;
}

GroupWord parse_group_word(const std::string& text) {
  GroupWord w;
  std::string cleaned = text;
  std::replace(cleaned.begin(), cleaned.end(), '*', ' ');
  std::istringstream is(cleaned);
  std::string tok;
  while (is >> tok) {
    int exp = 1;
    auto caret = tok.find('^');
    std::string name = tok.substr(0, caret);
    if (caret != std::string::npos) {
      std::string e = tok.substr(caret + 1);
      if (e == "-1") exp = -1;
      else if (e == "1" || e == "+1") exp = 1;
      else throw Error(ErrorKind::kInvalidWord, "exponent must be 1 or -1 in '" + tok + "'");
    }
    if (name.empty()) throw Error(ErrorKind::kInvalidWord, "empty letter in '" + text + "'");
    w.emplace_back(name, exp);
  }
  return w;
}

Mat4 word_holonomy(const GluedGroup& group, const GroupWord& word) {
  const Mat4 gi = group.gluing.inverse();
  Mat4 out = Mat4::Identity();
  for (const auto& [name, exp] : word) {
    if (exp != 1 && exp != -1) throw Error(ErrorKind::kInvalidWord, "exponent must be +-1");
    Mat4 m;
    if (group.kind == GluedGroup::Kind::kHnn && name == group.stable_letter) {
      m = group.gluing;
    } else if (auto it = group.gens1.find(name); it != group.gens1.end()) {
      m = group.kind == GluedGroup::Kind::kAmalgam ? Mat4(group.gluing * it->second * gi) : it->second;
    } else if (auto it2 = group.gens2.find(name);
               it2 != group.gens2.end() && group.kind == GluedGroup::Kind::kAmalgam) {
      m = it2->second;
    } else {
      throw Error(ErrorKind::kInvalidWord, "undeclared letter '" + name + "'");
    }
    out = out * (exp > 0 ? m : Mat4(m.inverse()));
  }
  return out;
}

}  // namespace projglue::gluing
