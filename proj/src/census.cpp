#include "projglue/census.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <set>

#include "projglue/errors.hpp"
#include "projglue/triangle.hpp"

namespace projglue::census {

using hexlattice::HexShape;

const std::vector<CensusEntry>& builtin_census() {
  static const std::vector<CensusEntry> table = {
      {"m003", "otet02_0000", {HexShape(2, 0, 0, 2)}},
      {"m004", "otet02_0001", {HexShape(1, 0, 0, 4)}},
      {"m202", "otet04_0000", {HexShape(3, 1, 2, 3), HexShape(1, 0, 0, 1)}},
      {"m203", "otet04_0001", {HexShape(2, 1, 0, 3), HexShape(1, 0, 0, 2)}},
      {"m206", "otet04_0002", {HexShape(2, 0, 0, 4)}},
      {"m207", "otet04_0003", {HexShape(3, 1, 1, 3)}},
      {"s959", "otet06_0002", {HexShape(3, 0, 0, 3), HexShape(2, 1, 1, 2)}},
      {"s961", "otet06_0003", {HexShape(3, 0, 2, 4)}},
      {"s960", "otet06_0004", {HexShape(4, 2, 2, 4)}},
      {"s958", "otet06_0006", {HexShape(3, 2, 0, 4)}},
      {"t12845", "otet08_0001", {HexShape(3, 2, 1, 5), HexShape(1, 0, 0, 3)}},
      {"t12840", "otet08_0002", {HexShape(3, 0, 2, 4), HexShape(1, 0, 0, 4)}},
      {"t12842", "otet08_0003", {HexShape(3, 0, 2, 4), HexShape(2, 1, 0, 2)}},
      {"t12843", "otet08_0004", {HexShape(3, 2, 2, 6), HexShape(1, 0, 0, 2)}},
      {"t12844", "otet08_0005", {HexShape(3, 2, 2, 6), HexShape(1, 0, 0, 2)}},
      {"t12837", "otet08_0006", {HexShape(3, 1, 2, 6)}},
      {"t12839", "otet08_0007", {HexShape(4, 2, 0, 4)}},
      {"t12838", "otet08_0008", {HexShape(4, 2, 2, 5)}},
      {"t12836", "otet08_0009", {HexShape(3, 2, 0, 3), HexShape(2, 1, 1, 4)}},
      {"t12841", "otet08_0010", {HexShape(4, 2, 2, 4), HexShape(2, 0, 0, 2)}},
  };
  return table;
}

const CensusEntry& find_entry(const std::vector<CensusEntry>& entries, const std::string& name) {
  for (const auto& e : entries)
    if (e.name == name) return e;
  throw Error(ErrorKind::kInvalidInput, "unknown census manifold '" + name + "'");
}

std::vector<CompatibilityEdge> compatibility_graph(const std::vector<CensusEntry>& entries) {
  struct Cusp {
    std::size_t entry;
    int cusp;
  };
  std::vector<Cusp> cusps;
  for (std::size_t i = 0; i < entries.size(); ++i)
    for (std::size_t c = 0; c < entries[i].cusps.size(); ++c) cusps.push_back({i, static_cast<int>(c)});

  std::vector<CompatibilityEdge> edges;
  for (std::size_t x = 0; x < cusps.size(); ++x)
    for (std::size_t y = x + 1; y < cusps.size(); ++y) {
      const auto& a = entries[cusps[x].entry];
      const auto& b = entries[cusps[y].entry];
      const HexShape& sa = a.cusps[cusps[x].cusp];
      const HexShape& sb = b.cusps[cusps[y].cusp];
      auto w = hexlattice::find_q_isometries(sa, sb);
      if (w.empty()) continue;
      edges.push_back({a.name, cusps[x].cusp, b.name, cusps[y].cusp, w.front().factor(),
                       static_cast<int>(w.size())});
    }
  return edges;
}

namespace {

// Multiplicative weights: k[b] = weight[b] * k[root(b)].
struct WeightedUnionFind {
  std::vector<int> parent;
  std::vector<Rational> weight;

  explicit WeightedUnionFind(std::size_t n) : parent(n), weight(n, Rational(1)) {
    for (std::size_t i = 0; i < n; ++i) parent[i] = static_cast<int>(i);
  }

  int find(int x) {
    if (parent[x] == x) return x;
    int root = find(parent[x]);
    weight[x] *= weight[parent[x]];
    parent[x] = root;
    return root;
  }

  // Imposes k[b] = ratio * k[a]; false on a contradiction.
  bool unite(int a, int b, const Rational& ratio) {
    int ra = find(a), rb = find(b);
    if (ra == rb) return weight[b] == ratio * weight[a];
    // k[rb] = k[b] / weight[b] = ratio * weight[a] * k[ra] / weight[b].
    parent[rb] = ra;
    weight[rb] = ratio * weight[a] / weight[b];
    return true;
  }
};

BigInt lcm(const BigInt& a, const BigInt& b) {
  BigInt r;
  mpz_lcm(r.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  return r;
}

BigInt gcd(const BigInt& a, const BigInt& b) {
  BigInt r;
  mpz_gcd(r.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  return r;
}

void check_well_formed(const GluingPlan& plan, const std::vector<const CensusEntry*>& blocks) {
  std::set<CuspRef> used;
  for (const auto& p : plan.pairings) {
    for (const CuspRef& c : {p.from, p.to}) {
      if (c.block < 0 || c.block >= static_cast<int>(blocks.size()) || c.cusp < 0 ||
          c.cusp >= static_cast<int>(blocks[c.block]->cusps.size())) {
        throw Error(ErrorKind::kInvalidInput, "pairing references a missing cusp");
      }
      if (!used.insert(c).second) {
        throw Error(ErrorKind::kInvalidInput, "a cusp appears in more than one pairing");
      }
    }
  }
}

}  // namespace

PlanReport verify_plan(const GluingPlan& plan, const std::vector<CensusEntry>& entries) {
  std::vector<const CensusEntry*> blocks;
  for (const auto& name : plan.blocks) blocks.push_back(&find_entry(entries, name));
  check_well_formed(plan, blocks);

  PlanReport report;
  WeightedUnionFind uf(blocks.size());
  auto fail = [&](std::string kind, std::string detail, int idx) {
    report.pass = false;
    report.failure = std::move(kind);
    report.detail = std::move(detail);
    report.failing_pairing = idx;
    return report;
  };

  for (std::size_t i = 0; i < plan.pairings.size(); ++i) {
    const auto& p = plan.pairings[i];
    const HexShape& from = blocks[p.from.block]->cusps[p.from.cusp];
    const HexShape& to = blocks[p.to.block]->cusps[p.to.cusp];
    auto label = [&](const CuspRef& c) {
      return blocks[c.block]->name + ".d" + std::to_string(c.cusp + 1);
    };
    auto factor = hexlattice::conformal_factor(from, to);
    if (!factor) {
      return fail("incompatible-edge",
                  "area ratio of " + label(p.from) + " and " + label(p.to) + " is not a rational square",
                  static_cast<int>(i));
    }
    PairingReport pr{*factor, hexlattice::find_q_isometries(from, to)};
    if (pr.witnesses.empty()) {
      return fail("incompatible-edge", "no lattice isometry between " + label(p.from) + " and " + label(p.to),
                  static_cast<int>(i));
    }
    report.pairings.push_back(pr);
    if (!uf.unite(p.from.block, p.to.block, *factor)) {
      return fail("inconsistent-factors",
                  "conformal factors around a cycle through " + label(p.from) + " do not multiply to 1",
                  static_cast<int>(i));
    }
  }

  std::vector<Rational> k(blocks.size());
  for (std::size_t b = 0; b < blocks.size(); ++b) {
    uf.find(static_cast<int>(b));
    k[b] = uf.weight[b];
  }
  BigInt den = 1;
  for (const auto& q : k) den = lcm(den, q.get_den());
  BigInt num = 0;
  for (const auto& q : k) num = gcd(num, BigInt(q * den));
  for (auto& q : k) {
    Rational scaled = q * den / num;
    report.factors.push_back(scaled);
    report.k.push_back(scaled.get_num());
  }

  std::size_t total = 0;
  for (const auto* b : blocks) total += b->cusps.size();
  report.closed = 2 * plan.pairings.size() == total;
  report.pass = true;
  return report;
}

std::vector<GluingPlan> table2_plans() {
  auto pair = [](int b1, int c1, int b2, int c2) { return Pairing{{b1, c1 - 1}, {b2, c2 - 1}}; };
  return {
      {{"m003", "s959", "s960"}, {pair(0, 1, 1, 1), pair(1, 2, 2, 1)}},
      {{"m003", "t12841", "s960"}, {pair(0, 1, 1, 2), pair(1, 1, 2, 1)}},
      {{"m004", "t12840", "s961"}, {pair(0, 1, 1, 2), pair(1, 1, 2, 1)}},
      {{"t12843", "t12844"}, {pair(0, 1, 1, 1), pair(0, 2, 1, 2)}},
      {{"t12842", "t12839", "s961"}, {pair(0, 1, 2, 1), pair(0, 2, 1, 1)}},
  };
}

SearchResult enumerate_closed_gluings(const std::vector<CensusEntry>& entries,
                                      const std::vector<std::string>& names,
                                      const SearchConstraints& constraints) {
  std::vector<CuspRef> cusps;
  for (std::size_t b = 0; b < names.size(); ++b) {
    const auto& e = find_entry(entries, names[b]);
    for (std::size_t c = 0; c < e.cusps.size(); ++c)
      cusps.push_back({static_cast<int>(b), static_cast<int>(c)});
  }
  if (cusps.size() % 2 != 0) {
    throw Error(ErrorKind::kPrecondition, "closed gluings need an even number of cusps");
  }
  auto shape = [&](const CuspRef& c) -> const HexShape& {
    return find_entry(entries, names[c.block]).cusps[c.cusp];
  };
  const std::size_t n = cusps.size();
  std::vector<std::vector<bool>> ok(n, std::vector<bool>(n, false));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j) {
      if (!constraints.allow_self_gluing && cusps[i].block == cusps[j].block) continue;
      ok[i][j] = !hexlattice::find_q_isometries(shape(cusps[i]), shape(cusps[j])).empty();
    }

  SearchResult result;
  std::vector<bool> used(n, false);
  std::vector<Pairing> current;
  std::size_t visited = 0;
  // First unmatched cusp pairs with a later one, so each matching appears once.
  std::function<void()> dfs = [&]() {
    if (result.partial) return;
    if (++visited > constraints.limit) {
      result.partial = true;
      return;
    }
    std::size_t i = 0;
    while (i < n && used[i]) ++i;
    if (i == n) {
      GluingPlan plan{names, current};
      if (verify_plan(plan, entries).pass) result.plans.push_back(plan);
      return;
    }
    used[i] = true;
    for (std::size_t j = i + 1; j < n; ++j) {
      if (used[j] || !ok[i][j]) continue;
      used[j] = true;
      current.push_back({cusps[i], cusps[j]});
      dfs();
      current.pop_back();
      used[j] = false;
    }
    used[i] = false;
  };
  dfs();
  return result;
}

std::vector<PairingHolonomy> instantiate_plan(const GluingPlan& plan,
                                              const std::vector<CensusEntry>& entries, double mu) {
  if (!(mu > 0)) throw Error(ErrorKind::kInvalidInput, "mu must be positive");
  PlanReport report = verify_plan(plan, entries);
  if (!report.pass) throw Error(ErrorKind::kIncompatibleEdge, "plan does not verify: " + report.detail);
  std::vector<PairingHolonomy> out;
  for (std::size_t i = 0; i < plan.pairings.size(); ++i) {
    const auto& p = plan.pairings[i];
    const HexShape& from = find_entry(entries, plan.blocks[p.from.block]).cusps[p.from.cusp];
    const HexShape& to = find_entry(entries, plan.blocks[p.to.block]).cusps[p.to.cusp];
    PairingHolonomy h;
    h.tau_from = mu / report.k[p.from.block].get_d();
    h.tau_to = mu / report.k[p.to.block].get_d();
    auto [f1, f2] = triangle::boundary_rep_4d(h.tau_from, from);
    auto [t1, t2] = triangle::boundary_rep_4d(h.tau_to, to);
    h.rep_from = {f1, f2};
    h.rep_to = {t1, t2};
    for (const auto& w : report.pairings[i].witnesses) {
      gluing::IntMat2x2 f;
      for (int r = 0; r < 2; ++r)
        for (int c = 0; c < 2; ++c) f(r, c) = to_int64(w.B(c, r));
      h.matches.push_back({w, f, gluing::solve_matching(h.rep_from, h.rep_to, f)});
    }
    out.push_back(std::move(h));
  }
  return out;
}

}  // namespace projglue::census
