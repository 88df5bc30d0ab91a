#include "projglue/json_io.hpp"

#include <Eigen/Dense>

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>

#include "projglue/errors.hpp"

namespace projglue::json_io {

namespace {

[[noreturn]] void bad(const std::string& what) { throw Error(ErrorKind::kInvalidInput, what); }

const Json& field(const Json& j, const char* key) {
  if (!j.is_object() || !j.contains(key)) bad(std::string("missing field '") + key + "'");
  return j.at(key);
}

long long integer_from_json(const Json& j) {
  if (!j.is_number_integer()) bad("expected an integer, got " + j.dump());
  return j.get<long long>();
}

template <class F>
auto guarded(F&& f) -> decltype(f()) {
  try {
    return f();
  } catch (const nlohmann::json::exception& e) {
    bad(e.what());
  }
}

cohomology::Word word_from_json(const Json& j, const cohomology::Presentation& p) {
  if (!j.is_array()) bad("a word must be an array of [generator, exponent] pairs");
  cohomology::Word w;
  for (const auto& letter : j) {
    if (!letter.is_array() || letter.size() != 2 || !letter[0].is_string()) {
      bad("a letter must be [generator, +-1]");
    }
    const int g = p.index_of(letter[0].get<std::string>());
    if (g < 0) bad("unknown generator '" + letter[0].get<std::string>() + "'");
    const long long e = integer_from_json(letter[1]);
    if (e != 1 && e != -1) bad("letter exponents must be +1 or -1");
    w.push_back({g, static_cast<int>(e)});
  }
  return w;
}

Json word_to_json(const cohomology::Word& w, const cohomology::Presentation& p) {
  Json out = Json::array();
  for (const auto& l : w) out.push_back(Json::array({p.generators[l.generator], l.exponent}));
  return out;
}

Json vec_to_json(const Eigen::VectorXd& v) {
  Json out = Json::array();
  for (Eigen::Index i = 0; i < v.size(); ++i) out.push_back(v(i));
  return out;
}

Json cusp_ref_to_json(const census::CuspRef& c) { return Json{{"block", c.block}, {"cusp", c.cusp}}; }

census::CuspRef cusp_ref_from_json(const Json& j) {
  return {static_cast<int>(integer_from_json(field(j, "block"))),
          static_cast<int>(integer_from_json(field(j, "cusp")))};
}

gluing::GroupWord group_word_from_json(const Json& j) {
  if (j.is_string()) return gluing::parse_group_word(j.get<std::string>());
  if (!j.is_array()) bad("a group word must be a string or an array of [letter, exponent]");
  gluing::GroupWord w;
  for (const auto& l : j) {
    if (!l.is_array() || l.size() != 2 || !l[0].is_string()) bad("a letter must be [name, exponent]");
    w.emplace_back(l[0].get<std::string>(), static_cast<int>(integer_from_json(l[1])));
  }
  return w;
}

std::map<std::string, Mat4> generator_map(const Json& j) {
  if (!j.is_object()) bad("generators must be an object of name -> 4x4 matrix");
  std::map<std::string, Mat4> out;
  for (auto it = j.begin(); it != j.end(); ++it) out[it.key()] = mat4_from_json(it.value());
  return out;
}

}  // namespace

Json parse(const std::string& text) {
  try {
    return Json::parse(text);
  } catch (const nlohmann::json::exception& e) {
    bad(std::string("malformed JSON: ") + e.what());
  }
}

Json read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorKind::kIoError, "cannot read '" + path + "'");
  std::stringstream ss;
  ss << in.rdbuf();
  return parse(ss.str());
}

double number_from_json(const Json& j) {
  if (j.is_number()) return j.get<double>();
  if (j.is_string()) {
    const std::string s = j.get<std::string>();
    char* end = nullptr;
    const double v = std::strtod(s.c_str(), &end);
    if (s.empty() || *end != '\0') bad("not a decimal number: '" + s + "'");
    return v;
  }
  bad("expected a number, got " + j.dump());
}

std::string decimal_string(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

Json matrix_to_json(const MatX& m) {
  Json out = Json::array();
  for (Eigen::Index r = 0; r < m.rows(); ++r) {
    Json row = Json::array();
    for (Eigen::Index c = 0; c < m.cols(); ++c) row.push_back(m(r, c));
    out.push_back(std::move(row));
  }
  return out;
}

MatX matrix_from_json(const Json& j, int rows, int cols) {
  if (!j.is_array() || static_cast<int>(j.size()) != rows) {
    bad("expected a " + std::to_string(rows) + "x" + std::to_string(cols) + " matrix");
  }
  MatX m(rows, cols);
  for (int r = 0; r < rows; ++r) {
    if (!j[r].is_array() || static_cast<int>(j[r].size()) != cols) {
      bad("expected a " + std::to_string(rows) + "x" + std::to_string(cols) + " matrix");
    }
    for (int c = 0; c < cols; ++c) m(r, c) = number_from_json(j[r][c]);
  }
  return m;
}

Mat4 mat4_from_json(const Json& j) { return matrix_from_json(j, 4, 4); }

Json rational_to_json(const Rational& q) { return to_string(q); }

Json exact_matrix_to_json(const hexlattice::IntMat2& m) {
  Json out = Json::array();
  for (int r = 0; r < 2; ++r) {
    Json row = Json::array();
    for (int c = 0; c < 2; ++c) row.push_back(to_int64(m(r, c)));
    out.push_back(std::move(row));
  }
  return out;
}

Json shape_to_json(const hexlattice::HexShape& a) { return exact_matrix_to_json(a.matrix()); }

hexlattice::HexShape shape_from_json(const Json& j) {
  if (!j.is_array() || j.size() != 2 || !j[0].is_array() || !j[1].is_array() || j[0].size() != 2 ||
      j[1].size() != 2) {
    bad("a hex shape must be [[a,b],[c,d]]");
  }
  return hexlattice::HexShape(integer_from_json(j[0][0]), integer_from_json(j[0][1]),
                              integer_from_json(j[1][0]), integer_from_json(j[1][1]));
}

Json witness_to_json(const hexlattice::QIsometryWitness& w) {
  return Json{{"factor", rational_to_json(w.factor())},
              {"k1", to_string(w.k1)},
              {"k2", to_string(w.k2)},
              {"B", exact_matrix_to_json(w.B)},
              {"C", exact_matrix_to_json(w.C.matrix)},
              {"C_index", w.C.index}};
}

CohomologyInput cohomology_input_from_json(const Json& j) {
  return guarded([&] {
    CohomologyInput in;
    auto& p = in.rep.presentation;
    const Json& gens = field(j, "generators");
    if (!gens.is_array()) bad("'generators' must be an array of names");
    for (const auto& g : gens) {
      if (!g.is_string()) bad("generator names must be strings");
      p.generators.push_back(g.get<std::string>());
    }
    const Json& rels = field(j, "relators");
    if (!rels.is_array()) bad("'relators' must be an array of words");
    for (const auto& r : rels) p.relators.push_back(word_from_json(r, p));
    p.validate();
    const Json& mats = field(j, "matrices");
    for (const auto& g : p.generators) {
      if (!mats.contains(g)) bad("no matrix for generator '" + g + "'");
      in.rep.matrices.push_back(mat4_from_json(mats.at(g)));
    }
    if (j.contains("peripherals")) {
      for (const auto& sub : j.at("peripherals")) {
        if (!sub.is_array()) bad("each peripheral subgroup must be an array of words");
        std::vector<cohomology::Word> words;
        for (const auto& w : sub) words.push_back(word_from_json(w, p));
        in.peripherals.push_back(std::move(words));
      }
    }
    return in;
  });
}

Json cohomology_input_to_json(const CohomologyInput& in) {
  const auto& p = in.rep.presentation;
  Json rels = Json::array();
  for (const auto& r : p.relators) rels.push_back(word_to_json(r, p));
  Json mats = Json::object();
  for (std::size_t g = 0; g < p.generators.size(); ++g) {
    Json m = Json::array();
    for (int r = 0; r < 4; ++r) {
      Json row = Json::array();
      for (int c = 0; c < 4; ++c) row.push_back(decimal_string(in.rep.matrices[g](r, c)));
      m.push_back(std::move(row));
    }
    mats[p.generators[g]] = std::move(m);
  }
  Json per = Json::array();
  for (const auto& sub : in.peripherals) {
    Json words = Json::array();
    for (const auto& w : sub) words.push_back(word_to_json(w, p));
    per.push_back(std::move(words));
  }
  return Json{{"generators", p.generators}, {"relators", rels}, {"matrices", mats}, {"peripherals", per}};
}

Json dims_to_json(const cohomology::CohomologyDims& d) {
  Json out{{"h0", d.h0}, {"z1", d.z1}, {"b1", d.b1}, {"h1", d.h1}};
  if (d.h2_by_duality) out["h2_by_duality"] = *d.h2_by_duality;
  out["h0_gap"] = d.h0_gap;
  out["z1_gap"] = d.z1_gap;
  return out;
}

Json restriction_to_json(const cohomology::RestrictionReport& r) {
  return Json{{"h1", r.h1},
              {"restriction_rank", r.rank},
              {"kernel_dim", r.kernel_dim},
              {"rigid_rel_boundary", r.rigid_rel_boundary}};
}

std::vector<census::CensusEntry> census_from_json(const Json& j) {
  return guarded([&] {
    if (!j.is_array()) bad("a census must be an array of entries");
    std::vector<census::CensusEntry> out;
    for (const auto& e : j) {
      census::CensusEntry entry;
      entry.name = field(e, "name").get<std::string>();
      if (e.contains("otet")) entry.otet_name = e.at("otet").get<std::string>();
      const Json& cusps = field(e, "cusps");
      if (!cusps.is_array() || cusps.empty()) bad("entry '" + entry.name + "' needs at least one cusp");
      for (const auto& c : cusps) entry.cusps.push_back(shape_from_json(c));
      out.push_back(std::move(entry));
    }
    return out;
  });
}

Json census_to_json(const std::vector<census::CensusEntry>& entries) {
  Json out = Json::array();
  for (const auto& e : entries) {
    Json cusps = Json::array();
    for (const auto& c : e.cusps) cusps.push_back(shape_to_json(c));
    out.push_back(Json{{"name", e.name}, {"otet", e.otet_name}, {"cusps", cusps}});
  }
  return out;
}

census::GluingPlan plan_from_json(const Json& j) {
  return guarded([&] {
    census::GluingPlan plan;
    for (const auto& b : field(j, "blocks")) plan.blocks.push_back(b.get<std::string>());
    for (const auto& p : field(j, "pairings")) {
      plan.pairings.push_back({cusp_ref_from_json(field(p, "from")), cusp_ref_from_json(field(p, "to"))});
    }
    return plan;
  });
}

Json plan_to_json(const census::GluingPlan& plan) {
  Json pairings = Json::array();
  for (const auto& p : plan.pairings) {
    pairings.push_back(Json{{"from", cusp_ref_to_json(p.from)}, {"to", cusp_ref_to_json(p.to)}});
  }
  return Json{{"blocks", plan.blocks}, {"pairings", pairings}};
}

Json plan_report_to_json(const census::GluingPlan& plan, const census::PlanReport& r) {
  Json out = plan_to_json(plan);
  out["pass"] = r.pass;
  if (r.failure) {
    out["failure"] = *r.failure;
    out["detail"] = r.detail;
    out["failing_pairing"] = r.failing_pairing;
  }
  Json pairings = Json::array();
  for (std::size_t i = 0; i < r.pairings.size(); ++i) {
    const auto& pr = r.pairings[i];
    const auto& p = plan.pairings[i];
    Json ws = Json::array();
    for (const auto& w : pr.witnesses) ws.push_back(witness_to_json(w));
    pairings.push_back(Json{
        {"label", plan.blocks[p.from.block] + ".d" + std::to_string(p.from.cusp + 1) + " -> " +
                      plan.blocks[p.to.block] + ".d" + std::to_string(p.to.cusp + 1)},
        {"factor", rational_to_json(pr.factor)},
        {"witnesses", ws}});
  }
  out["pairing_reports"] = pairings;
  Json k = Json::array();
  for (const auto& v : r.k) k.push_back(to_string(v));
  out["k"] = k;
  out["closed"] = r.closed;
  return out;
}

Json edge_to_json(const census::CompatibilityEdge& e) {
  return Json{{"a", e.manifold_a + ".d" + std::to_string(e.cusp_a + 1)},
              {"b", e.manifold_b + ".d" + std::to_string(e.cusp_b + 1)},
              {"factor", rational_to_json(e.factor)},
              {"witness_count", e.witness_count}};
}

gluing::PeripheralRep peripheral_from_json(const Json& j) {
  return guarded([&] {
    return gluing::PeripheralRep{mat4_from_json(field(j, "M1")), mat4_from_json(field(j, "M2"))};
  });
}

Json matching_to_json(const gluing::MatchingSolution& s) {
  return Json{{"g", matrix_to_json(s.g)},
              {"permutation", s.permutation},
              {"residual", s.residual},
              {"scaling_freedom", s.scaling_freedom}};
}

Json midcond_to_json(const gluing::MiddleEigenReport& r) {
  Json diffs = Json::array();
  for (const auto& c : r.differences) diffs.push_back(Json::array({c(0), c(1)}));
  Json out{{"holds", r.holds}, {"strict", r.strict}, {"differences", diffs}};
  if (r.failing_cone) {
    out["failing_cone"] = Json::array({Json::array({r.failing_cone->first(0), r.failing_cone->first(1)}),
                                       Json::array({r.failing_cone->second(0), r.failing_cone->second(1)})});
  }
  return out;
}

Json pingpong_to_json(const gluing::PingPongReport& r) {
  Json v = Json::array();
  for (const auto& x : r.violations) {
    v.push_back(Json{{"word", x.word}, {"reason", x.reason}, {"min_coordinate", x.min_coordinate}});
  }
  return Json{{"pass", r.pass}, {"inconclusive", r.inconclusive}, {"words_checked", r.words_checked},
              {"violations", v}};
}

gluing::GluedGroup glued_group_from_json(const Json& j) {
  return guarded([&] {
    gluing::GluedGroup g;
    const std::string type = j.value("type", std::string("amalgam"));
    if (type == "amalgam") {
      g.kind = gluing::GluedGroup::Kind::kAmalgam;
    } else if (type == "hnn") {
      g.kind = gluing::GluedGroup::Kind::kHnn;
    } else {
      bad("type must be 'amalgam' or 'hnn'");
    }
    g.gens1 = generator_map(field(j, "gens1"));
    if (j.contains("gens2")) g.gens2 = generator_map(j.at("gens2"));
    if (g.kind == gluing::GluedGroup::Kind::kAmalgam && g.gens2.empty()) bad("an amalgam needs gens2");
    for (const auto& [name, m] : g.gens2) {
      if (g.gens1.count(name)) bad("generator '" + name + "' is declared in both pieces");
    }
    g.gluing = mat4_from_json(field(j, "gluing_matrix"));
    if (std::abs(g.gluing.determinant()) < 1e-12) {
      throw Error(ErrorKind::kInvalidGluingMap, "gluing matrix is singular");
    }
    if (j.contains("stable_letter")) g.stable_letter = j.at("stable_letter").get<std::string>();
    if (j.contains("peripheral_words")) {
      for (const auto& w : j.at("peripheral_words")) g.peripheral_words.push_back(group_word_from_json(w));
    }
    return g;
  });
}

Json tiles_to_json(const std::vector<triangle::Tile>& tiles, double tau) {
  Json out = Json::array();
  for (const auto& t : tiles) {
    Json poly = Json::array();
    for (const auto& p : t.polygon) poly.push_back(vec_to_json(p));
    out.push_back(Json{{"word", t.word.to_string()},
                       {"matrix", matrix_to_json(triangle::evaluate(t.matrix, tau))},
                       {"polygon", poly}});
  }
  return out;
}

Json transversality_to_json(const slice::TransversalityReport& r) {
  return Json{{"pass", r.pass},
              {"z1_dim", r.z1_dim},
              {"b1_dim", r.b1_dim},
              {"tangent_rank", r.tangent_rank},
              {"stacked_rank", r.stacked_rank}};
}

Json bivector_to_json(const slice::BivectorReport& r) {
  return Json{{"pass", r.pass},
              {"rank_all", r.rank_all},
              {"rank_conjugation", r.rank_conjugation},
              {"coeff_a_e13_e33", r.coeff_a_e13_e33},
              {"coeff_b_e12_e22", r.coeff_b_e12_e22},
              {"conj_e13_e33", r.conj_e13_e33},
              {"conj_e12_e22", r.conj_e12_e22}};
}

Json pitfall_to_json(const slice::PitfallReport& r) {
  Json samples = Json::array();
  for (const auto& s : r.samples) {
    samples.push_back(Json{{"t", s.t},
                           {"m1_eigenvalues", s.m1_eigenvalues},
                           {"m2_eigenvalues", s.m2_eigenvalues},
                           {"m2_exact_double_root", s.m2_exact_double_root}});
  }
  return Json{{"pass", r.pass},
              {"initial_difference", r.initial_difference},
              {"derivative_difference", r.derivative_difference},
              {"samples", samples}};
}

Json error_to_json(const std::string& kind, const std::string& message) {
  return Json{{"error", Json{{"kind", kind}, {"message", message}}}};
}

}  // namespace projglue::json_io
