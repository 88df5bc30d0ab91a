#pragma once

#include <array>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "projglue/hexlattice.hpp"
#include "projglue/mathkit/exact_matrix.hpp"
#include "projglue/mathkit/laurent.hpp"
#include "projglue/mathkit/linalg.hpp"

namespace projglue::triangle {

using LaurentMat3 = ExactMatrix<LaurentPoly, 3>;

// Word in the reflections r1, r2, r3 stored as letters 0, 1, 2.
struct CoxeterWord {
  std::vector<int> letters;

  // Throws invalid-word on letters outside 0..2 or equal neighbours.
  static CoxeterWord parse(const std::string& text);  // e.g. "r3r2r3r1"
  std::string to_string() const;
  bool is_reduced() const;
  friend auto operator<=>(const CoxeterWord&, const CoxeterWord&) = default;
};

struct TriangleRep {
  double tau = 0.0;
  std::array<LaurentMat3, 3> exact;
  std::array<Mat3, 3> numeric;
};

// The exact reflection matrices in s = e^{tau/3}; independent of tau.
const std::array<LaurentMat3, 3>& reflection_matrices();
TriangleRep zeta(double tau);

LaurentMat3 exact_word(const CoxeterWord& w);
Mat3 evaluate(const LaurentMat3& m, double tau);

// g1 = r3 r2 r3 r1, g2 = r1 r3 r1 r2, g3 = r2 r1 r2 r3 (i in 1..3).
CoxeterWord g_word(int i);
const LaurentMat3& g_exact(int i);
const LaurentMat3& g_inverse_exact(int i);
// zeta(g1^m g2^n), exactly.
LaurentMat3 lattice_element(long long m, long long n);

// diag(-1,0,1), diag(1,-1,0), diag(0,1,-1).
Mat3 alpha(int i);

// Change of basis sending (l1, l2, l3) to the standard basis.
Mat3 htau(double tau);

// Residual of h_tau zeta_tau(g^k) h_tau^-1 = h_{k tau} zeta_{k tau}(g) h_{k tau}^-1
// for g = g1^m g2^n.
double speedup_check(double tau, int k, long long m, long long n);

// Relative residual of h_tau zeta_tau(g_i) h_tau^-1 = exp(tau alpha_i).
double conjugation_residual(double tau, int i);

// r_i^2 = 1 and (r_i r_j)^3 = 1 (with r_i r_j of order exactly three), exactly.
bool coxeter_relations_hold();

struct Tile {
  CoxeterWord word;
  LaurentMat3 matrix;
  // Images of e1, e2, e3 in the chart x1 + x2 + x3 = 1.
  std::array<Vec3, 3> polygon;
};

// Orbit of the base triangle under elements of word length <= depth,
// deduplicated by exact matrix, ordered by (length, word).
std::vector<Tile> orbit_tiles(double tau, int depth);

// (l1, l2, l3), or nullopt at tau = 0 where the domain is the whole chart.
std::optional<std::array<Vec3, 3>> domain_extreme_points(double tau);

// Smallest barycentric coordinate of chart point p relative to the hull
// triangle l1 l2 l3 (pushed into the same chart). Nonnegative means inside.
double hull_margin(double tau, const Vec3& chart_point);

Vec3 to_chart(const Vec3& v);
// Planar drawing coordinates of a chart point.
Eigen::Vector2d chart_to_plane(const Vec3& p);

struct HexTorusRep {
  Mat3 w1, w2;
};
HexTorusRep hex_holonomy_3d(double tau, const hexlattice::HexShape& a);
std::pair<Mat4, Mat4> boundary_rep_4d(double tau, const hexlattice::HexShape& a);

struct SvgStyle {
  double size = 800.0;
  std::string tile_fill = "#dfe8f5";
  std::string tile_stroke = "#23395b";
  std::string hull_stroke = "#c0392b";
  double stroke_width = 0.6;
};
std::string svg_string(const std::vector<Tile>& tiles, double tau, const SvgStyle& style = {});
void render_svg(const std::vector<Tile>& tiles, double tau, const std::string& path,
                const SvgStyle& style = {});

}  // namespace projglue::triangle
