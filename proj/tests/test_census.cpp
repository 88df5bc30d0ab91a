#include <doctest.h>

#include <set>

#include "projglue/census.hpp"
#include "projglue/errors.hpp"

using namespace projglue;
using namespace projglue::census;

TEST_CASE("built-in census") {
  const auto& c = builtin_census();
  CHECK(c.size() == 20);
  std::set<std::string> names;
  for (const auto& e : c) {
    names.insert(e.name);
    CHECK((e.cusps.size() == 1 || e.cusps.size() == 2));
  }
  CHECK(names.size() == 20);
  CHECK(find_entry(c, "s959").cusps.size() == 2);
  CHECK_THROWS_AS(find_entry(c, "m999"), Error);
}

TEST_CASE("all five census plans verify") {
  const auto plans = table2_plans();
  REQUIRE(plans.size() == 5);
  for (const auto& p : plans) {
    auto r = verify_plan(p, builtin_census());
    CHECK(r.pass);
    CHECK(r.closed);
    for (const auto& pr : r.pairings) {
      CHECK_FALSE(pr.witnesses.empty());
      CHECK(pr.witnesses.size() <= 12);
    }
    // k_to / k_from equals each pairing's factor.
    for (std::size_t i = 0; i < p.pairings.size(); ++i) {
      const auto& pp = p.pairings[i];
      CHECK(make_rational(r.k[pp.to.block], r.k[pp.from.block]) == r.pairings[i].factor);
    }
    for (const auto& k : r.k) CHECK(k >= 1);
  }
}

TEST_CASE("row one factors") {
  auto r = verify_plan(table2_plans()[0], builtin_census());
  REQUIRE(r.pass);
  CHECK(r.pairings[0].factor == make_rational(3, 2));
  CHECK(r.pairings[1].factor == make_rational(2, 1));
  CHECK(r.k == std::vector<BigInt>{2, 3, 6});
}

TEST_CASE("incompatible pairings are reported") {
  GluingPlan p{{"t12843", "t12844"}, {{{0, 0}, {1, 0}}}};
  auto ok = verify_plan(p, builtin_census());
  CHECK(ok.pass);
  CHECK_FALSE(ok.closed);
  // Equal areas do not imply isometric lattices.
  GluingPlan same_area{{"m003", "m004"}, {{{0, 0}, {1, 0}}}};
  auto sa = verify_plan(same_area, builtin_census());
  CHECK_FALSE(sa.pass);
  CHECK(sa.failure == std::string("incompatible-edge"));
  GluingPlan q{{"m003", "m202"}, {{{0, 0}, {1, 0}}}};  // areas 4 and 7
  auto r = verify_plan(q, builtin_census());
  CHECK_FALSE(r.pass);
  CHECK(r.failure == std::string("incompatible-edge"));
  CHECK(r.failing_pairing == 0);
}

TEST_CASE("inconsistent factors around a cycle") {
  const std::vector<CensusEntry> custom{
      {"A", "", {hexlattice::HexShape(1, 0, 0, 1), hexlattice::HexShape(2, 0, 0, 2)}},
      {"B", "", {hexlattice::HexShape(1, 0, 0, 1), hexlattice::HexShape(1, 0, 0, 1)}}};
  // A.d1 -> B.d1 (factor 1), A.d2 -> B.d2 (factor 1/2): contradiction.
  GluingPlan p{{"A", "B"}, {{{0, 0}, {1, 0}}, {{0, 1}, {1, 1}}}};
  auto r = verify_plan(p, custom);
  CHECK_FALSE(r.pass);
  CHECK(r.failure == std::string("inconsistent-factors"));
  // Self-gluing with factor 1 is fine.
  GluingPlan self{{"B"}, {{{0, 0}, {0, 1}}}};
  auto s = verify_plan(self, custom);
  CHECK(s.pass);
  CHECK(s.closed);
  // Self-gluing with factor 2 is not.
  GluingPlan self2{{"A"}, {{{0, 0}, {0, 1}}}};
  CHECK_FALSE(verify_plan(self2, custom).pass);
}

TEST_CASE("malformed plans") {
  GluingPlan p{{"m003"}, {{{0, 1}, {0, 0}}}};
  CHECK_THROWS_AS(verify_plan(p, builtin_census()), Error);
  GluingPlan q{{"m003", "m004", "m206"}, {{{0, 0}, {1, 0}}, {{0, 0}, {2, 0}}}};
  CHECK_THROWS_AS(verify_plan(q, builtin_census()), Error);
}

TEST_CASE("closed gluing search") {
  auto r = enumerate_closed_gluings(builtin_census(), {"t12843", "t12844"});
  CHECK_FALSE(r.partial);
  bool found = false;
  for (const auto& p : r.plans) {
    CHECK(verify_plan(p, builtin_census()).pass);
    if (p.pairings.size() == 2 && p.pairings[0].from == CuspRef{0, 0} && p.pairings[0].to == CuspRef{1, 0} &&
        p.pairings[1].from == CuspRef{0, 1} && p.pairings[1].to == CuspRef{1, 1})
      found = true;
  }
  CHECK(found);
  auto again = enumerate_closed_gluings(builtin_census(), {"t12843", "t12844"});
  CHECK(again.plans.size() == r.plans.size());

  SearchConstraints tight;
  tight.limit = 1;
  CHECK(enumerate_closed_gluings(builtin_census(), {"t12843", "t12844"}, tight).partial);
  CHECK_THROWS_AS(enumerate_closed_gluings(builtin_census(), {"m003"}), Error);
}

TEST_CASE("compatibility graph") {
  auto edges = compatibility_graph(builtin_census());
  CHECK_FALSE(edges.empty());
  bool m003_s959 = false;
  for (const auto& e : edges) {
    CHECK(e.witness_count >= 1);
    CHECK(e.witness_count <= 12);
    if (e.manifold_a == "m003" && e.manifold_b == "s959" && e.cusp_b == 0) {
      m003_s959 = true;
      CHECK(e.factor == make_rational(3, 2));
    }
  }
  CHECK(m003_s959);
}

TEST_CASE("instantiated plan matches boundary holonomy") {
  auto hol = instantiate_plan(table2_plans()[3], builtin_census(), 0.3);
  REQUIRE(hol.size() == 2);
  for (const auto& h : hol) {
    bool any = false;
    for (const auto& m : h.matches)
      for (const auto& s : m.solutions) {
        any = true;
        CHECK(s.residual < 1e-7);
      }
    CHECK(any);
  }
}
