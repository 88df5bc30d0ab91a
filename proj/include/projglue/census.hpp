#pragma once

#include <optional>
#include <string>
#include <vector>

#include "projglue/gluing.hpp"
#include "projglue/hexlattice.hpp"

namespace projglue::census {

struct CensusEntry {
  std::string name;
  std::string otet_name;
  std::vector<hexlattice::HexShape> cusps;
};

// Hex cusp shapes of the twenty two-colourable tetrahedral manifolds.
const std::vector<CensusEntry>& builtin_census();
const CensusEntry& find_entry(const std::vector<CensusEntry>& entries, const std::string& name);

struct CuspRef {
  int block = 0;  // index into GluingPlan::blocks
  int cusp = 0;   // 0-based
  friend bool operator==(const CuspRef&, const CuspRef&) = default;
  friend auto operator<=>(const CuspRef&, const CuspRef&) = default;
};

struct Pairing {
  CuspRef from, to;
};

struct GluingPlan {
  std::vector<std::string> blocks;  // census names
  std::vector<Pairing> pairings;
};

struct CompatibilityEdge {
  std::string manifold_a;
  int cusp_a = 0;
  std::string manifold_b;
  int cusp_b = 0;
  Rational factor;  // sqrt(area_b / area_a)
  int witness_count = 0;
};

// Every unordered pair of distinct cusps with a Q-isometry, ordered by
// (entry, cusp) of both ends.
std::vector<CompatibilityEdge> compatibility_graph(const std::vector<CensusEntry>& entries);

struct PairingReport {
  Rational factor;  // k_to / k_from required by the pairing
  std::vector<hexlattice::QIsometryWitness> witnesses;
};

struct PlanReport {
  bool pass = false;
  std::optional<std::string> failure;  // error kind name when pass is false
  std::string detail;
  int failing_pairing = -1;
  std::vector<PairingReport> pairings;
  std::vector<Rational> factors;  // per block, normalised to integers
  std::vector<BigInt> k;          // same, as natural numbers
  bool closed = false;            // every cusp of every block is paired
};

// Checks each pairing has a witness and solves k_to / k_from = sqrt(area_to /
// area_from) over the gluing graph with a weighted union-find.
PlanReport verify_plan(const GluingPlan& plan, const std::vector<CensusEntry>& entries);

// The five gluings of the census theorem.
std::vector<GluingPlan> table2_plans();

struct SearchConstraints {
  std::size_t limit = 10000;  // visited search nodes before giving up
  bool allow_self_gluing = true;
};
struct SearchResult {
  std::vector<GluingPlan> plans;
  bool partial = false;
};
// All perfect matchings of the cusps of `names` (each name one block) whose
// plans pass verify_plan. Throws precondition-failed on an odd cusp count.
SearchResult enumerate_closed_gluings(const std::vector<CensusEntry>& entries,
                                      const std::vector<std::string>& names,
                                      const SearchConstraints& constraints = {});

// Boundary holonomies for one pairing at scale mu: the tau of each block is
// mu / k, and f is the transpose of each witness's B.
struct WitnessMatch {
  hexlattice::QIsometryWitness witness;
  gluing::IntMat2x2 f;
  std::vector<gluing::MatchingSolution> solutions;
};
struct PairingHolonomy {
  gluing::PeripheralRep rep_from, rep_to;
  double tau_from = 0, tau_to = 0;
  std::vector<WitnessMatch> matches;
};
std::vector<PairingHolonomy> instantiate_plan(const GluingPlan& plan,
                                              const std::vector<CensusEntry>& entries, double mu);

}  // namespace projglue::census
