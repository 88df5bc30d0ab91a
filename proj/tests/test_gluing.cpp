#include <doctest.h>

#include <Eigen/Dense>

#include <random>

#include "projglue/errors.hpp"
#include "projglue/gluing.hpp"
#include "projglue/triangle.hpp"

using namespace projglue;
using namespace projglue::gluing;

namespace {

PeripheralRep hex_rep(double tau, long long a, long long b, long long c, long long d) {
  auto [m1, m2] = triangle::boundary_rep_4d(tau, hexlattice::HexShape(a, b, c, d));
  return {m1, m2};
}

Mat4 random_matrix(std::mt19937& rng, double spread) {
  std::normal_distribution<double> nd;
  Mat4 m = Mat4::Identity();
  for (int i = 0; i < 16; ++i) m.data()[i] += spread * nd(rng);
  return m;
}

}  // namespace

TEST_CASE("peripheral elements") {
  auto rep = hex_rep(0.3, 2, 1, 0, 3);
  CHECK((peripheral_element(rep, 2, -1) - rep.M1 * rep.M1 * rep.M2.inverse()).norm() < 1e-12);
  CHECK(peripheral_element(rep, 0, 0) == Mat4::Identity());
}

TEST_CASE("eigen frame of a hex boundary representation") {
  auto rep = hex_rep(0.3, 3, 2, 2, 6);
  auto f = eigen_frame(rep);
  CHECK(f.residual < 1e-8);
  CHECK(std::abs(f.log1(3)) < 1e-8);
  CHECK(std::abs(f.log2(3)) < 1e-8);
  for (int j = 0; j < 4; ++j) {
    const Vec4 p = f.lines.col(j);
    CHECK(p.norm() == doctest::Approx(1.0));
    CHECK((rep.M1 * p - f.sign1(j) * std::exp(f.log1(j)) * p).norm() < 1e-9);
    CHECK((rep.M2 * p - f.sign2(j) * std::exp(f.log2(j)) * p).norm() < 1e-9);
  }
  for (int j = 0; j + 1 < 3; ++j) CHECK(f.log1(j) <= f.log1(j + 1));
}

TEST_CASE("eigen frame errors") {
  Mat4 a = Mat4::Identity(), b = Mat4::Identity();
  a(0, 1) = 1;
  b(1, 0) = 1;
  CHECK_THROWS_AS(eigen_frame({a, b}), Error);
  Mat4 j = Mat4::Identity();
  j(0, 1) = 1;  // Jordan block
  try {
    eigen_frame({j, Mat4::Identity()});
    FAIL("expected not-diagonalizable");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::kNotDiagonalizable);
  }
  // No common line with both eigenvalues 1.
  PeripheralRep d{Vec4(2, 0.5, 3, 1.0 / 3).asDiagonal(), Vec4(1, 2, 0.25, 2).asDiagonal()};
  try {
    eigen_frame(d);
    FAIL("expected distinguished-line-unspecified");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::kDistinguishedLineUnspecified);
  }
  CHECK_NOTHROW(eigen_frame(d, 1));
}

TEST_CASE("middle eigenvalue condition for hex cusps") {
  for (double tau : {0.3, -0.3, 1.2})
    for (auto s : std::vector<std::array<long long, 4>>{{3, 2, 2, 6}, {1, 0, 0, 2}, {2, 1, 0, 3}}) {
      auto r = middle_eigenvalue_condition(eigen_frame(hex_rep(tau, s[0], s[1], s[2], s[3])));
      CHECK(r.holds);
      CHECK_FALSE(r.failing_cone.has_value());
    }
}

TEST_CASE("middle eigenvalue condition brute force on lattice words") {
  std::mt19937 rng(9);
  std::uniform_real_distribution<double> u(-1, 1);
  for (int trial = 0; trial < 40; ++trial) {
    // Diagonal with p4 eigenvalue 1; random logs on the other three lines.
    Vec4 l1(u(rng), u(rng), u(rng), 0), l2(u(rng), u(rng), u(rng), 0);
    PeripheralRep rep{l1.array().exp().matrix().asDiagonal(), l2.array().exp().matrix().asDiagonal()};
    auto r = middle_eigenvalue_condition(eigen_frame(rep));
    // Oracle: some (m, n) with the p4 log an extreme value of all four.
    bool violated = false;
    for (int m = -12; m <= 12 && !violated; ++m)
      for (int n = -12; n <= 12 && !violated; ++n) {
        if (m == 0 && n == 0) continue;
        Vec4 l = m * l1 + n * l2;
        const double mx = l.head<3>().maxCoeff(), mn = l.head<3>().minCoeff();
        violated = l(3) >= mx - 1e-12 || l(3) <= mn + 1e-12;
      }
    if (r.holds) CHECK_FALSE(violated);
    if (!r.holds && r.strict) {
      REQUIRE(r.failing_cone.has_value());
      // The failing cone's first ray violates it.
      const Eigen::Vector2d v = r.failing_cone->first;
      for (const auto& c : r.differences) CHECK(c.dot(v) <= 1e-9);
    }
  }
}

TEST_CASE("matching a representation with its conjugate") {
  std::mt19937 rng(10);
  auto rep1 = hex_rep(0.3, 3, 2, 2, 6);
  const Mat4 c = random_matrix(rng, 0.3);
  PeripheralRep rep2{c * rep1.M1 * c.inverse(), c * rep1.M2 * c.inverse()};
  IntMat2x2 f = IntMat2x2::Identity();
  auto sols = solve_matching(rep1, rep2, f);
  REQUIRE_FALSE(sols.empty());
  for (const auto& s : sols) {
    CHECK(s.residual < 1e-7);
    CHECK(std::abs(std::abs(s.g.determinant()) - 1.0) < 1e-9);
    std::vector<std::pair<long long, long long>> words{{1, 0}, {0, 1}, {3, -2}, {-4, 5}};
    CHECK(matching_residual(rep1, rep2, f, s.g, words) < 1e-7);
  }
  IntMat2x2 bad;
  bad << 2, 0, 0, 1;
  CHECK_THROWS_AS(solve_matching(rep1, rep2, bad), Error);
}

TEST_CASE("matching with a non-trivial peripheral map") {
  auto rep1 = hex_rep(0.4, 1, 0, 0, 1);
  IntMat2x2 f;
  f << 0, -1, 1, 0;
  // rep2(f(m, n)) = rep1(m, n): rep2 M1 = rep1(f^-1 e1), rep2 M2 = rep1(f^-1 e2).
  IntMat2x2 finv;
  finv << 0, 1, -1, 0;
  PeripheralRep rep2{peripheral_element(rep1, finv(0, 0), finv(1, 0)),
                     peripheral_element(rep1, finv(0, 1), finv(1, 1))};
  auto sols = solve_matching(rep1, rep2, f);
  REQUIRE_FALSE(sols.empty());
  for (const auto& s : sols) CHECK(s.residual < 1e-7);
}

TEST_CASE("prism and tetrahedra membership against positive combinations") {
  std::mt19937 rng(11);
  std::uniform_real_distribution<double> pos(0.05, 1.0);
  std::bernoulli_distribution coin;
  auto cfg = synthetic_pingpong_configuration(std::exp(2.0));
  auto geom = principal_geometry(eigen_frame(cfg.peripheral), cfg.interior_point);
  CHECK((geom.interior_coordinates.array() > 0).all());
  const auto plus = geom.tetra_plus();
  for (int trial = 0; trial < 500; ++trial) {
    Vec4 lam(pos(rng), pos(rng), pos(rng), pos(rng));
    const double sign4 = coin(rng) ? 1.0 : -1.0;
    Vec4 x = lam(0) * plus[0] + lam(1) * plus[1] + lam(2) * plus[2] + sign4 * lam(3) * plus[3];
    if (coin(rng)) x = -x;  // same projective point
    CHECK(geom.in_prism(x));
    CHECK(geom.in_tetra_plus(x) == (sign4 > 0));
    CHECK(geom.in_tetra_minus(x) == (sign4 < 0));
    // Flip one of the triangle coordinates: outside the prism.
    const int k = trial % 3;
    Vec4 y = x;
    y -= 2 * lam(k) * plus[k] * (x.dot(geom.covectors.row(k)) > 0 ? 1.0 : -1.0);
    CHECK_FALSE(geom.in_prism(y));
  }
  CHECK_THROWS_AS(principal_geometry(eigen_frame(cfg.peripheral), geom.vertices.col(0) + geom.vertices.col(1)),
                  Error);
}

TEST_CASE("ping-pong on the synthetic configuration") {
  auto good = synthetic_pingpong_configuration(std::exp(3.0));
  auto geom = principal_geometry(eigen_frame(good.peripheral), good.interior_point);
  bool previous = true;
  for (int d = 1; d <= 4; ++d) {
    auto r = pingpong_check(good.gens1, good.gens2, geom, d);
    CHECK(r.pass);
    CHECK_FALSE(r.inconclusive);
    if (!previous) CHECK_FALSE(r.pass);
    previous = r.pass;
  }
  auto bad = synthetic_pingpong_configuration(1.05);
  auto g2 = principal_geometry(eigen_frame(bad.peripheral), bad.interior_point);
  auto r = pingpong_check(bad.gens1, bad.gens2, g2, 3);
  CHECK_FALSE(r.pass);
  REQUIRE_FALSE(r.violations.empty());
  CHECK(r.violations.front().word.size() == 2);
  CHECK(r.violations.front().reason == "not-contained");
  // Failure is monotone in depth.
  for (int d = 1; d <= 4; ++d) CHECK_FALSE(pingpong_check(bad.gens1, bad.gens2, g2, d).pass);
}

TEST_CASE("group words and holonomy") {
  auto w = parse_group_word("a b^-1 t");
  REQUIRE(w.size() == 3);
  CHECK(w[1] == std::make_pair(std::string("b"), -1));
  CHECK(parse_group_word("a*b^-1*t") == w);
  CHECK_THROWS_AS(parse_group_word("a^3"), Error);
  CHECK_THROWS_AS(parse_group_word("a^"), Error);

  std::mt19937 rng(12);
  GluedGroup g;
  g.gens1["a"] = random_matrix(rng, 0.2);
  g.gens2["b"] = random_matrix(rng, 0.2);
  g.gluing = random_matrix(rng, 0.2);
  const Mat4 a = g.gluing * g.gens1["a"] * g.gluing.inverse();
  CHECK((word_holonomy(g, parse_group_word("a b^-1")) - a * g.gens2["b"].inverse()).norm() < 1e-9);
  CHECK_THROWS_AS(word_holonomy(g, parse_group_word("t")), Error);
  g.kind = GluedGroup::Kind::kHnn;
  CHECK((word_holonomy(g, parse_group_word("t a t^-1")) - g.gluing * g.gens1["a"] * g.gluing.inverse()).norm() <
        1e-9);
}
