#include "projglue/triangle.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <cstdio>
#include <fstream>
#include <map>
#include <sstream>

#include <Eigen/LU>

#include "projglue/errors.hpp"

namespace projglue::triangle {

CoxeterWord CoxeterWord::parse(const std::string& text) {
  CoxeterWord w;
  std::size_t i = 0;
  while (i < text.size()) {
    if (text[i] == ' ' || text[i] == '*') {
      ++i;
      continue;
    }
    if (text[i] != 'r' || i + 1 >= text.size() || text[i + 1] < '1' || text[i + 1] > '3') {
      throw Error(ErrorKind::kInvalidWord, "cannot parse Coxeter word '" + text + "'");
    }
    w.letters.push_back(text[i + 1] - '1');
    i += 2;
  }
  if (!w.is_reduced()) throw Error(ErrorKind::kInvalidWord, "repeated letter in '" + text + "'");
  return w;
}

std::string CoxeterWord::to_string() const {
  if (letters.empty()) return "e";
  std::string s;
  for (int l : letters) s += "r" + std::to_string(l + 1);
  return s;
}

bool CoxeterWord::is_reduced() const {
  for (std::size_t i = 0; i < letters.size(); ++i) {
    if (letters[i] < 0 || letters[i] > 2) return false;
    if (i > 0 && letters[i] == letters[i - 1]) return false;
  }
  return true;
}

const std::array<LaurentMat3, 3>& reflection_matrices() {
  static const std::array<LaurentMat3, 3> r = [] {
    const LaurentPoly s = LaurentPoly::s(), si = LaurentPoly::s_inv();
    std::array<LaurentMat3, 3> m;
    m[0] = LaurentMat3{{-1, 0, 0}, {s, 1, 0}, {si, 0, 1}};
    m[1] = LaurentMat3{{1, si, 0}, {0, -1, 0}, {0, s, 1}};
    m[2] = LaurentMat3{{1, 0, s}, {0, 1, si}, {0, 0, -1}};
    return m;
  }();
  return r;
}

Mat3 evaluate(const LaurentMat3& m, double tau) {
  const double s = std::exp(tau / 3.0);
  return m.to_eigen([s](const LaurentPoly& p) { return p.evaluate_at(s); });
}

TriangleRep zeta(double tau) {
  TriangleRep rep;
  rep.tau = tau;
  rep.exact = reflection_matrices();
  for (int i = 0; i < 3; ++i) rep.numeric[i] = evaluate(rep.exact[i], tau);
  return rep;
}

LaurentMat3 exact_word(const CoxeterWord& w) {
  const auto& r = reflection_matrices();
  LaurentMat3 m = LaurentMat3::identity();
  for (int l : w.letters) {
    if (l < 0 || l > 2) throw Error(ErrorKind::kInvalidWord, "letter out of range");
    m = m * r[l];
  }
  return m;
}

CoxeterWord g_word(int i) {
  switch (i) {
    case 1: return CoxeterWord{{2, 1, 2, 0}};
    case 2: return CoxeterWord{{0, 2, 0, 1}};
    case 3: return CoxeterWord{{1, 0, 1, 2}};
  }
  throw Error(ErrorKind::kInvalidInput, "g index must be 1, 2 or 3");
}

const LaurentMat3& g_exact(int i) {
  static const std::array<LaurentMat3, 3> g = {exact_word(g_word(1)), exact_word(g_word(2)),
                                               exact_word(g_word(3))};
  if (i < 1 || i > 3) throw Error(ErrorKind::kInvalidInput, "g index must be 1, 2 or 3");
  return g[i - 1];
}

const LaurentMat3& g_inverse_exact(int i) {
  // Reflections are involutions, so the inverse is the reversed word.
  static const std::array<LaurentMat3, 3> g = [] {
    std::array<LaurentMat3, 3> out;
    for (int k = 1; k <= 3; ++k) {
      CoxeterWord w = g_word(k);
      std::reverse(w.letters.begin(), w.letters.end());
      out[k - 1] = exact_word(w);
    }
    return out;
  }();
  if (i < 1 || i > 3) throw Error(ErrorKind::kInvalidInput, "g index must be 1, 2 or 3");
  return g[i - 1];
}

namespace {

LaurentMat3 power(const LaurentMat3& g, const LaurentMat3& ginv, long long e) {
  LaurentMat3 out = LaurentMat3::identity();
  const LaurentMat3& base = e >= 0 ? g : ginv;
  for (long long k = 0; k < std::llabs(e); ++k) out = out * base;
  return out;
}

double eps_sign(double tau) { return tau > 0 ? 1.0 : -1.0; }

}  // namespace

LaurentMat3 lattice_element(long long m, long long n) {
  return power(g_exact(1), g_inverse_exact(1), m) * power(g_exact(2), g_inverse_exact(2), n);
}

Mat3 alpha(int i) {
  switch (i) {
    case 1: return Vec3(-1, 0, 1).asDiagonal();
    case 2: return Vec3(1, -1, 0).asDiagonal();
    case 3: return Vec3(0, 1, -1).asDiagonal();
  }
  throw Error(ErrorKind::kInvalidInput, "alpha index must be 1, 2 or 3");
}

std::optional<std::array<Vec3, 3>> domain_extreme_points(double tau) {
  if (tau == 0.0) return std::nullopt;
  const double s = std::exp(tau / 3.0), e = eps_sign(tau);
  return std::array<Vec3, 3>{e * Vec3(-1, s, 0), e * Vec3(0, -1, s), e * Vec3(s, 0, -1)};
}

Mat3 htau(double tau) {
  auto l = domain_extreme_points(tau);
  if (!l) throw Error(ErrorKind::kUndefinedBasis, "h_tau is undefined at tau = 0");
  Mat3 cols;
  for (int i = 0; i < 3; ++i) cols.col(i) = (*l)[i];
  return cols.inverse();
}

double speedup_check(double tau, int k, long long m, long long n) {
  if (tau == 0.0) throw Error(ErrorKind::kUndefinedBasis, "speedup check needs tau != 0");
  if (k < 1) throw Error(ErrorKind::kInvalidInput, "speedup factor must be >= 1");
  const LaurentMat3 g = lattice_element(m, n);
  const LaurentMat3 gk = lattice_element(k * m, k * n);
  Mat3 h1 = htau(tau), hk = htau(k * tau);
  Mat3 lhs = h1 * evaluate(gk, tau) * h1.inverse();
  Mat3 rhs = hk * evaluate(g, k * tau) * hk.inverse();
  return (lhs - rhs).norm() / std::max(1.0, rhs.norm());
}

double conjugation_residual(double tau, int i) {
  const Mat3 h = htau(tau);
  const Mat3 lhs = h * evaluate(g_exact(i), tau) * h.inverse();
  const Mat3 rhs = mat_exp<3>(tau * alpha(i));
  return (lhs - rhs).norm() / rhs.norm();
}

bool coxeter_relations_hold() {
  const auto& r = reflection_matrices();
  const LaurentMat3 id = LaurentMat3::identity();
  for (int i = 0; i < 3; ++i) {
    if (!(r[i] * r[i] == id)) return false;
    for (int j = i + 1; j < 3; ++j) {
      const LaurentMat3 p = r[i] * r[j];
      if (!(p * p * p == id) || p * p == id || p == id) return false;
    }
  }
  return true;
}

Vec3 to_chart(const Vec3& v) { return v / v.sum(); }

Eigen::Vector2d chart_to_plane(const Vec3& p) {
  return {(p(1) - p(0)) / std::sqrt(2.0), (2.0 * p(2) - p(0) - p(1)) / std::sqrt(6.0)};
}

std::vector<Tile> orbit_tiles(double tau, int depth) {
  if (depth < 0) throw Error(ErrorKind::kInvalidInput, "depth must be >= 0");
  const auto& r = reflection_matrices();
  std::map<LaurentMat3, CoxeterWord> seen;
  std::vector<std::pair<CoxeterWord, LaurentMat3>> level{{CoxeterWord{}, LaurentMat3::identity()}};
  seen.emplace(LaurentMat3::identity(), CoxeterWord{});
  std::vector<std::pair<CoxeterWord, LaurentMat3>> all = level;
  for (int d = 1; d <= depth; ++d) {
    std::vector<std::pair<CoxeterWord, LaurentMat3>> next;
    for (const auto& [w, m] : level) {
      for (int l = 0; l < 3; ++l) {
        if (!w.letters.empty() && w.letters.back() == l) continue;
        CoxeterWord nw = w;
        nw.letters.push_back(l);
        next.emplace_back(std::move(nw), m * r[l]);
      }
    }
    std::sort(next.begin(), next.end(),
              [](const auto& a, const auto& b) { return a.first < b.first; });
    level.clear();
    for (auto& [w, m] : next) {
      if (seen.emplace(m, w).second) level.emplace_back(w, m);
    }
    all.insert(all.end(), level.begin(), level.end());
  }

  std::vector<Tile> tiles;
  tiles.reserve(all.size());
  for (auto& [w, m] : all) {
    Mat3 f = evaluate(m, tau);
    Tile t{w, m, {}};
    for (int c = 0; c < 3; ++c) t.polygon[c] = to_chart(f.col(c));
    tiles.push_back(std::move(t));
  }
  return tiles;
}

double hull_margin(double tau, const Vec3& chart_point) {
  auto l = domain_extreme_points(tau);
  if (!l) return std::numeric_limits<double>::infinity();
  Mat3 cols;
  for (int i = 0; i < 3; ++i) cols.col(i) = to_chart((*l)[i]);
  Vec3 bary = cols.partialPivLu().solve(chart_point);
  return bary.minCoeff();
}

HexTorusRep hex_holonomy_3d(double tau, const hexlattice::HexShape& a) {
  const auto& m = a.matrix();
  LaurentMat3 w1 = lattice_element(to_int64(m(0, 0)), to_int64(m(0, 1)));
  LaurentMat3 w2 = lattice_element(to_int64(m(1, 0)), to_int64(m(1, 1)));
  return {evaluate(w1, tau), evaluate(w2, tau)};
}

std::pair<Mat4, Mat4> boundary_rep_4d(double tau, const hexlattice::HexShape& a) {
  HexTorusRep h = hex_holonomy_3d(tau, a);
  Mat4 m1 = Mat4::Identity(), m2 = Mat4::Identity();
  m1.topLeftCorner<3, 3>() = h.w1;
  m2.topLeftCorner<3, 3>() = h.w2;
  return {m1, m2};
}

namespace {

std::string fmt(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.4f", v);
  // Avoid "-0.0000" so output does not depend on the sign of tiny values.
  if (std::string(buf) == "-0.0000") return "0.0000";
  return buf;
}

}  // namespace

std::string svg_string(const std::vector<Tile>& tiles, double tau, const SvgStyle& style) {
  std::vector<Eigen::Vector2d> pts;
  for (const auto& t : tiles)
    for (const auto& p : t.polygon) pts.push_back(chart_to_plane(p));
  auto hull = domain_extreme_points(tau);
  std::array<Eigen::Vector2d, 3> hull2d;
  if (hull) {
    for (int i = 0; i < 3; ++i) {
      hull2d[i] = chart_to_plane(to_chart((*hull)[i]));
      pts.push_back(hull2d[i]);
    }
  }
  Eigen::Vector2d lo(-1, -1), hi(1, 1);
  if (!pts.empty()) {
    lo = hi = pts.front();
    for (const auto& p : pts) {
      lo = lo.cwiseMin(p);
      hi = hi.cwiseMax(p);
    }
  }
  const double margin = 0.04 * style.size;
  const double span = std::max({hi.x() - lo.x(), hi.y() - lo.y(), 1e-12});
  const double scale = (style.size - 2 * margin) / span;
  auto map = [&](const Eigen::Vector2d& p) {
    // SVG y grows downward.
    return Eigen::Vector2d(margin + (p.x() - lo.x()) * scale, style.size - margin - (p.y() - lo.y()) * scale);
  };

  std::ostringstream os;
  os << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << fmt(style.size) << "\" height=\""
     << fmt(style.size) << "\" viewBox=\"0 0 " << fmt(style.size) << " " << fmt(style.size) << "\">\n";
  os << "<g fill=\"" << style.tile_fill << "\" stroke=\"" << style.tile_stroke
     << "\" stroke-width=\"" << fmt(style.stroke_width) << "\" stroke-linejoin=\"round\">\n";
  for (const auto& t : tiles) {
    os << "<polygon data-word=\"" << t.word.to_string() << "\" points=\"";
    for (int i = 0; i < 3; ++i) {
      Eigen::Vector2d q = map(chart_to_plane(t.polygon[i]));
      os << (i ? " " : "") << fmt(q.x()) << "," << fmt(q.y());
    }
    os << "\"/>\n";
  }
  os << "</g>\n";
  if (hull) {
    os << "<polygon fill=\"none\" stroke=\"" << style.hull_stroke << "\" stroke-width=\""
       << fmt(2 * style.stroke_width) << "\" points=\"";
    for (int i = 0; i < 3; ++i) {
      Eigen::Vector2d q = map(hull2d[i]);
      os << (i ? " " : "") << fmt(q.x()) << "," << fmt(q.y());
    }
    os << "\"/>\n";
  }
  os << "</svg>\n";
  return os.str();
}

void render_svg(const std::vector<Tile>& tiles, double tau, const std::string& path,
                const SvgStyle& style) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error(ErrorKind::kIoError, "cannot open '" + path + "' for writing");
  out << svg_string(tiles, tau, style);
  if (!out) throw Error(ErrorKind::kIoError, "write to '" + path + "' failed");
}

}  // namespace projglue::triangle
