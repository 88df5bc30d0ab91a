// Acceptance gate: one PASS/FAIL line per criterion; exit status 0 only if
// all pass. Every tolerance used is a named constant below.

#include <Eigen/Dense>

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <random>
#include <string>
#include <vector>

#include "oracles.hpp"
#include "projglue/census.hpp"
#include "projglue/cohomology.hpp"
#include "projglue/gluing.hpp"
#include "projglue/hexlattice.hpp"
#include "projglue/slice.hpp"
#include "projglue/triangle.hpp"

using namespace projglue;

namespace {

constexpr double kCohomRuntime = 1.0;           // seconds
constexpr double kCommutatorTol = 1e-10;
constexpr double kEigenTol = 1e-8;
constexpr double kSliceRuntime = 10.0;          // seconds
constexpr double kBivectorTol = 1e-12;
constexpr double kPitfallTol = 1e-12;
constexpr double kTriangleTol = 1e-9;
constexpr double kHullTol = 1e-9;
constexpr double kTilingRuntime = 30.0;         // seconds
constexpr int kMaxWitnesses = 12;
constexpr double kCensusRuntime = 1.0;          // seconds
constexpr double kMatchingTol = 1e-7;
constexpr double kMu = 0.3;

struct Verdict {
  bool pass;
  std::string detail;
};

using Clock = std::chrono::steady_clock;
double seconds_since(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

Mat4 power(const Mat4& m, int e) {
  Mat4 out = Mat4::Identity();
  const Mat4 b = e >= 0 ? m : Mat4(m.inverse());
  for (int i = 0; i < std::abs(e); ++i) out *= b;
  return out;
}

std::string fmt(const char* f, double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, f, v);
  return buf;
}

Verdict criterion1() {
  std::mt19937 rng(101);
  std::uniform_real_distribution<double> u(-3, 3);
  const auto t0 = Clock::now();
  int exact = 0;
  for (int i = 0; i < 20; ++i) {
    double uu = u(rng), vv = u(rng);
    while (std::abs(vv) < 1e-3) vv = u(rng);
    auto d = cohomology::dims(cohomology::cusp_rep(uu, vv));
    exact += d.h0 == 3 && d.z1 == 18 && d.b1 == 12 && d.h1 == 6;
  }
  const double s = seconds_since(t0);
  return {exact == 20 && s < kCohomRuntime,
          std::to_string(exact) + "/20 give (h0,z1,b1,h1) = (3,18,12,6) in " + fmt("%.3f s", s)};
}

Verdict criterion2() {
  std::mt19937 rng(102);
  std::uniform_real_distribution<double> u(-1, 1);
  std::uniform_int_distribution<int> w(-5, 5);
  const auto t0 = Clock::now();
  double worst_comm = 0;
  for (int i = 0; i < 1000; ++i) {
    slice::SliceParams p{u(rng), u(rng), u(rng), u(rng)};
    auto [g1, g2] = slice::phi_generators(p);
    worst_comm = std::max(worst_comm, commutator_norm(g1, g2));
  }
  double worst_eig = 0;
  for (int i = 0; i < 200; ++i) {
    slice::PolarParams p{std::abs(u(rng)), 2 * M_PI * u(rng), u(rng), u(rng)};
    int m = w(rng), n = w(rng);
    if (m == 0 && n == 0) n = 1;
    auto closed = slice::phi_eigenvalues(p, m, n);
    auto [g1, g2] = slice::phi_generators(slice::to_slice(p));
    auto spec = eigen_decomp(power(g1, m) * power(g2, n));
    std::vector<double> a(closed.begin(), closed.end()), b;
    for (auto z : spec.eigenvalues) {
      b.push_back(z.real());
      worst_eig = std::max(worst_eig, std::abs(z.imag()));
    }
    std::sort(a.begin(), a.end());
    std::sort(b.begin(), b.end());
    for (int k = 0; k < 4; ++k) worst_eig = std::max(worst_eig, std::abs(a[k] - b[k]) / std::max(1.0, a[k]));
  }
  const double s = seconds_since(t0);
  return {worst_comm < kCommutatorTol && worst_eig < kEigenTol && s < kSliceRuntime,
          "max commutator " + fmt("%.2e", worst_comm) + ", max eigenvalue error " + fmt("%.2e", worst_eig) +
              " in " + fmt("%.3f s", s)};
}

Verdict criterion3() {
  std::mt19937 rng(103);
  std::uniform_real_distribution<double> u(-2, 2);
  int ok = 0;
  for (int i = 0; i < 20; ++i) {
    double x = u(rng), y = u(rng);
    while (std::abs(y) < 1e-2) y = u(rng);
    auto r = slice::check_slice_transversality(x, y);
    ok += r.pass && r.tangent_rank == 4 && r.stacked_rank == 16 && r.b1_dim == 12;
  }
  auto b = slice::bivector_transversality_check();
  const bool biv = b.pass && std::abs(b.coeff_a_e13_e33 - 1) <= kBivectorTol &&
                   std::abs(b.coeff_b_e12_e22 - 1) <= kBivectorTol && std::abs(b.conj_e13_e33) <= kBivectorTol &&
                   std::abs(b.conj_e12_e22) <= kBivectorTol;
  return {ok == 20 && biv, std::to_string(ok) + "/20 shapes with stacked rank 16; bivector coefficients " +
                               fmt("%.3g", b.coeff_a_e13_e33) + ", " + fmt("%.3g", b.coeff_b_e12_e22) +
                               " vs conjugation " + fmt("%.1e", std::max(b.conj_e13_e33, b.conj_e12_e22))};
}

Verdict criterion4() {
  auto r = slice::eigenvalue_pitfall_demo({0.1, 0.3, 1.0});
  double m2 = 0, m1 = 0;
  for (const auto& s : r.samples) {
    for (double e : s.m2_eigenvalues) m2 = std::max(m2, std::abs(e - 1));
    m1 = std::max(m1, std::abs(s.m1_eigenvalues[0] - std::exp(-s.t)) / std::exp(-s.t));
    m1 = std::max(m1, std::abs(s.m1_eigenvalues[1] - std::exp(s.t)) / std::exp(s.t));
  }
  return {r.samples.size() == 3 && m2 <= kPitfallTol && m1 <= kPitfallTol,
          "max |M2 eigenvalue - 1| " + fmt("%.1e", m2) + ", max relative M1 error vs e^{+-t} " + fmt("%.1e", m1)};
}

Verdict criterion5() {
  const bool coxeter = triangle::coxeter_relations_hold();
  double conj = 0, speed = 0;
  for (double tau : {0.75, -0.75, 0.1, -0.1})
    for (int i = 1; i <= 3; ++i) conj = std::max(conj, triangle::conjugation_residual(tau, i));
  for (double tau : {0.2, 0.3})
    for (int k : {2, 3})
      for (auto [m, n] : std::vector<std::pair<int, int>>{{1, 0}, {0, 1}, {1, 1}, {2, -1}, {-3, 2}})
        speed = std::max(speed, triangle::speedup_check(tau, k, m, n));
  return {coxeter && conj < kTriangleTol && speed < kTriangleTol,
          std::string("Coxeter relations ") + (coxeter ? "exact" : "FAIL") + ", conjugation residual " +
              fmt("%.1e", conj) + ", speed-up residual " + fmt("%.1e", speed)};
}

Verdict criterion6() {
  const auto t0 = Clock::now();
  const double tau = 0.75;
  auto margin_of = [&](const std::vector<triangle::Tile>& tiles) {
    double m = std::numeric_limits<double>::infinity();
    for (const auto& t : tiles)
      for (const auto& p : t.polygon) m = std::min(m, triangle::hull_margin(tau, p));
    return m;
  };
  const auto tiles8 = triangle::orbit_tiles(tau, 8);
  const auto tiles40 = triangle::orbit_tiles(tau, 40);
  const double m8 = margin_of(tiles8), m40 = margin_of(tiles40);
  const bool deterministic = triangle::svg_string(tiles8, tau) == triangle::svg_string(triangle::orbit_tiles(tau, 8), tau);
  const double s = seconds_since(t0);
  return {m8 >= -kHullTol && m40 >= -kHullTol && deterministic && s < kTilingRuntime,
          std::to_string(tiles8.size()) + " tiles at depth 8 (margin " + fmt("%.3g", m8) + "), " +
              std::to_string(tiles40.size()) + " at depth 40 (margin " + fmt("%.3g", m40) + "), SVG " +
              (deterministic ? "deterministic" : "NOT deterministic") + ", " + fmt("%.3f s", s)};
}

Verdict criterion7() {
  using hexlattice::HexShape;
  using hexlattice::IntMat2;
  const auto ws = hexlattice::find_q_isometries(HexShape(5, -5, 5, 5), HexShape(8, 0, 0, 4));
  const IntMat2 B{{1, 1}, {0, 1}}, C{{0, -1}, {1, 1}};
  bool found = false;
  for (const auto& w : ws) found = found || (w.factor() == make_rational(4, 5) && w.B == B && w.C.matrix == C);
  std::size_t most = ws.size();
  std::vector<HexShape> shapes;
  for (const auto& e : census::builtin_census())
    for (const auto& c : e.cusps) shapes.push_back(c);
  std::mt19937 rng(107);
  std::uniform_int_distribution<int> d(-6, 6);
  while (shapes.size() < 80) {
    long long a = d(rng), b = d(rng), c = d(rng), e = d(rng);
    if (a * e - b * c != 0) shapes.emplace_back(a, b, c, e);
  }
  for (const auto& x : shapes)
    for (const auto& y : shapes) most = std::max(most, hexlattice::find_q_isometries(x, y).size());
  // Maximal symmetry: the hexagonal lattice against itself.
  most = std::max(most, hexlattice::find_q_isometries(HexShape(1, 0, 0, 1), HexShape(1, 0, 0, 1)).size());
  return {found && most <= static_cast<std::size_t>(kMaxWitnesses),
          std::string("witness (4/5, [[1,1],[0,1]], [[0,-1],[1,1]]) ") + (found ? "found" : "MISSING") +
              " among " + std::to_string(ws.size()) + "; max witness count " + std::to_string(most)};
}

Verdict criterion8() {
  const auto t0 = Clock::now();
  int passed = 0;
  census::PlanReport row1;
  for (std::size_t i = 0; i < 5; ++i) {
    auto r = census::verify_plan(census::table2_plans()[i], census::builtin_census());
    passed += r.pass;
    if (i == 0) row1 = r;
  }
  const double s = seconds_since(t0);
  const bool factors = row1.pairings.size() == 2 && row1.pairings[0].factor == make_rational(3, 2) &&
                       row1.pairings[1].factor == make_rational(2, 1);
  std::string ks;
  for (const auto& k : row1.k) ks += (ks.empty() ? "" : ",") + to_string(k);
  return {passed == 5 && factors && s < kCensusRuntime,
          std::to_string(passed) + "/5 plans verified; row 1 factors " +
              (row1.pairings.size() == 2 ? to_string(row1.pairings[0].factor) + " and " +
                                               to_string(row1.pairings[1].factor)
                                         : std::string("?")) +
              ", k = (" + ks + ") in " + fmt("%.3f s", s)};
}

Verdict criterion9() {
  const auto plan = census::table2_plans()[3];
  const auto hol = census::instantiate_plan(plan, census::builtin_census(), kMu);
  std::mt19937 rng(109);
  std::uniform_int_distribution<int> letter(0, 3);
  long long m = 0, n = 0;
  for (int i = 0; i < 10; ++i) {
    switch (letter(rng)) {
      case 0: ++m; break;
      case 1: --m; break;
      case 2: ++n; break;
      default: --n; break;
    }
  }
  const std::vector<std::pair<long long, long long>> gens{{1, 0}, {0, 1}}, word{{m, n}};
  double worst = 0;
  int pairings_with_solution = 0, solutions = 0;
  bool midcond = true;
  for (const auto& h : hol) {
    bool any = false;
    for (const auto& wm : h.matches)
      for (const auto& s : wm.solutions) {
        any = true;
        ++solutions;
        worst = std::max({worst, s.residual, gluing::matching_residual(h.rep_from, h.rep_to, wm.f, s.g, gens),
                          gluing::matching_residual(h.rep_from, h.rep_to, wm.f, s.g, word)});
      }
    pairings_with_solution += any;
    for (const auto* rep : {&h.rep_from, &h.rep_to})
      midcond = midcond && gluing::middle_eigenvalue_condition(gluing::eigen_frame(*rep)).holds;
  }
  return {hol.size() == 2 && pairings_with_solution == 2 && worst < kMatchingTol && midcond,
          std::to_string(pairings_with_solution) + "/2 pairings matched (" + std::to_string(solutions) +
              " solutions), max residual " + fmt("%.1e", worst) + " incl. word (" + std::to_string(m) + "," +
              std::to_string(n) + "); middle eigenvalue condition " + (midcond ? "holds on all 4" : "FAILS")};
}

Verdict criterion10() {
  auto good = gluing::synthetic_pingpong_configuration(std::exp(3.0));
  auto bad = gluing::synthetic_pingpong_configuration(1.05);
  auto gg = gluing::principal_geometry(gluing::eigen_frame(good.peripheral), good.interior_point);
  auto gb = gluing::principal_geometry(gluing::eigen_frame(bad.peripheral), bad.interior_point);
  std::vector<bool> good_pass, bad_pass;
  int words = 0;
  std::string violating;
  for (int d = 1; d <= 4; ++d) {
    auto r = gluing::pingpong_check(good.gens1, good.gens2, gg, d);
    good_pass.push_back(r.pass && !r.inconclusive);
    if (d == 4) words = r.words_checked;
    auto b = gluing::pingpong_check(bad.gens1, bad.gens2, gb, d);
    bad_pass.push_back(b.pass);
    if (d == 4 && !b.violations.empty()) violating = b.violations.front().word;
  }
  bool monotone = true;
  for (int d = 1; d < 4; ++d) {
    if (good_pass[d] && !good_pass[d - 1]) monotone = false;
    if (bad_pass[d] && !bad_pass[d - 1]) monotone = false;
  }
  const bool detected = !bad_pass[3] && !violating.empty();
  return {good_pass[3] && detected && monotone,
          std::string("depth 4 ") + (good_pass[3] ? "passes" : "FAILS") + " (" + std::to_string(words) +
              " words); perturbed configuration violated by '" + violating + "'; monotone " +
              (monotone ? "yes" : "NO")};
}

Verdict criterion11() {
  std::mt19937 rng(111);
  int agree = 0;
  std::string first_mismatch;
  for (int i = 0; i < 10; ++i) {
    auto inst = fixture::random_instance(rng);
    auto d = cohomology::dims(inst.rep);
    auto o = oracle::brute_force_dims(inst.rep.matrices, inst.relators);
    if (d.h0 == o.h0 && d.z1 == o.z1 && d.b1 == o.b1 && d.h1 == o.h1) {
      ++agree;
    } else if (first_mismatch.empty()) {
      first_mismatch = " (instance " + std::to_string(i) + " differs)";
    }
  }
  return {agree == 10, std::to_string(agree) + "/10 random presentations agree exactly" + first_mismatch};
}

}  // namespace

int main() {
  const std::vector<std::pair<std::string, std::function<Verdict()>>> criteria{
      {"cohomology dimensions of cusp representations", criterion1},
      {"slice commutation and closed-form eigenvalues", criterion2},
      {"slice transversality and bivector coefficients", criterion3},
      {"eigenvalue pitfall", criterion4},
      {"triangle family identities", criterion5},
      {"tiling containment", criterion6},
      {"hex cusp matching", criterion7},
      {"census gluing table", criterion8},
      {"end-to-end holonomy matching", criterion9},
      {"ping-pong property suite", criterion10},
      {"cohomology oracle equivalence", criterion11},
  };
  int failures = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    Verdict v;
    try {
      v = criteria[i].second();
    } catch (const std::exception& e) {
      v = {false, std::string("exception: ") + e.what()};
    }
    failures += !v.pass;
    std::printf("[%s] %2zu %s: %s\n", v.pass ? "PASS" : "FAIL", i + 1, criteria[i].first.c_str(), v.detail.c_str());
  }
  std::printf("%d/%zu criteria passed\n", static_cast<int>(criteria.size()) - failures, criteria.size());
  return failures == 0 ? 0 : 1;
}
