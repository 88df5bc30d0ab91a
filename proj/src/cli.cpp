#include "projglue/cli.hpp"

#include <CLI11.hpp>

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <fstream>
#include <functional>
#include <limits>
#include <optional>
#include <string>
#include <vector>

#include "projglue/census.hpp"
#include "projglue/cohomology.hpp"
#include "projglue/errors.hpp"
#include "projglue/gluing.hpp"
#include "projglue/hexlattice.hpp"
#include "projglue/json_io.hpp"
#include "projglue/slice.hpp"
#include "projglue/triangle.hpp"

namespace projglue::cli {

namespace {

using json_io::Json;

constexpr double kEigenTol = 1e-8;
constexpr double kTriangleTol = 1e-9;
constexpr double kHullTol = 1e-9;

struct Outcome {
  Json report;
  bool pass = true;
  std::string summary;
};

Mat4 matrix_power(const Mat4& m, long long e) {
  Mat4 base = e >= 0 ? m : Mat4(m.inverse());
  Mat4 out = Mat4::Identity();
  for (long long k = std::llabs(e); k > 0; k >>= 1) {
    if (k & 1) out = out * base;
    base = base * base;
  }
  return out;
}

std::vector<census::CensusEntry> load_census(const std::string& path) {
  if (path.empty()) return census::builtin_census();
  return json_io::census_from_json(json_io::read_file(path));
}

[[noreturn]] void usage(const std::string& msg) { throw Error(ErrorKind::kInvalidInput, msg); }

}  // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Gluing convex projective structures: slice, cohomology, triangle groups, cusp matching",
               "projglue"};
  app.require_subcommand(1);
  app.fallthrough();
  int jobs = 1;
  std::string census_path;
  app.add_option("--jobs", jobs, "Worker cap (computations here run on one thread)")
      ->check(CLI::PositiveNumber);
  app.add_option("--census", census_path, "Census JSON replacing the built-in table");

  std::function<Outcome()> action;

  // slice-eig
  double t = 1.0, theta = 0.3, x = 0.0, y = 1.0;
  long long m = 1, n = 1;
  auto* eig = app.add_subcommand("slice-eig", "Closed-form eigenvalues of a slice element vs numerics");
  eig->add_option("--t", t)->check(CLI::NonNegativeNumber);
  eig->add_option("--theta", theta);
  eig->add_option("--x", x);
  eig->add_option("--y", y);
  eig->add_option("--m", m);
  eig->add_option("--n", n);
  eig->callback([&] {
    action = [&] {
      const slice::PolarParams p{t, theta, x, y};
      const auto closed = slice::phi_eigenvalues(p, static_cast<int>(m), static_cast<int>(n));
      const auto [g1, g2] = slice::phi_generators(slice::to_slice(p));
      const Spectrum spec = eigen_decomp(matrix_power(g1, m) * matrix_power(g2, n));
      std::vector<double> a(closed.begin(), closed.end()), b;
      double imag = 0;
      for (const auto& z : spec.eigenvalues) {
        b.push_back(z.real());
        imag = std::max(imag, std::abs(z.imag()));
      }
      std::sort(a.begin(), a.end());
      std::sort(b.begin(), b.end());
      double diff = imag;
      for (int i = 0; i < 4; ++i) diff = std::max(diff, std::abs(a[i] - b[i]) / std::max(1.0, std::abs(a[i])));
      Outcome o;
      o.pass = diff < kEigenTol;
      o.report = Json{{"closed_form", closed}, {"numeric", b}, {"max_difference", diff}, {"pass", o.pass}};
      o.summary = "slice-eig: max relative difference " + std::to_string(diff);
      return o;
    };
  });

  // slice-transversality
  auto* tr = app.add_subcommand("slice-transversality", "Slice tangent vs conjugation orbit at a cusp shape");
  tr->add_option("--x", x);
  tr->add_option("--y", y);
  tr->callback([&] {
    action = [&] {
      auto r = slice::check_slice_transversality(x, y);
      return Outcome{json_io::transversality_to_json(r), r.pass,
                     "slice-transversality: stacked rank " + std::to_string(r.stacked_rank) + " (need " +
                         std::to_string(r.tangent_rank) + " + " + std::to_string(r.b1_dim) + ")"};
    };
  });

  auto* biv = app.add_subcommand("slice-bivector", "Bivector transversality at the unipotent point");
  biv->callback([&] {
    action = [&] {
      auto r = slice::bivector_transversality_check();
      return Outcome{json_io::bivector_to_json(r), r.pass,
                     std::string("slice-bivector: ") + (r.pass ? "transverse" : "not transverse")};
    };
  });

  std::vector<double> pitfall_ts{0.1, 0.3, 1.0};
  auto* pit = app.add_subcommand("slice-pitfall", "Equal first-order jets with different eigenvalues");
  pit->add_option("--t", pitfall_ts, "Sample parameters");
  pit->callback([&] {
    action = [&] {
      auto r = slice::eigenvalue_pitfall_demo(pitfall_ts);
      return Outcome{json_io::pitfall_to_json(r), r.pass,
                     std::string("slice-pitfall: ") + (r.pass ? "demonstrated" : "not demonstrated")};
    };
  });

  // Cohomology
  std::string builtin, input;
  double u = 0.0, v = 1.0;
  double tol = -1.0;
  auto add_rep_options = [&](CLI::App* sub) {
    sub->add_option("--builtin", builtin, "Built-in representation")->check(CLI::IsMember({"cusp"}));
    sub->add_option("--u", u);
    sub->add_option("--v", v);
    sub->add_option("--input", input, "Representation JSON");
    sub->add_option("--tol", tol, "Relative rank tolerance");
  };
  auto load_rep = [&]() {
    if (!builtin.empty() && !input.empty()) usage("use either --builtin or --input");
    json_io::CohomologyInput in;
    if (!input.empty()) {
      in = json_io::cohomology_input_from_json(json_io::read_file(input));
    } else if (builtin == "cusp") {
      in.rep = cohomology::cusp_rep(u, v);
      in.peripherals = {{{{0, 1}}, {{1, 1}}}};
    } else {
      usage("one of --builtin or --input is required");
    }
    return in;
  };
  auto effective_tol = [&] { return tol > 0 ? tol : default_rank_tol(); };

  auto* cd = app.add_subcommand("cohom-dims", "Dimensions of H0, Z1, B1, H1");
  add_rep_options(cd);
  cd->callback([&] {
    action = [&] {
      auto in = load_rep();
      auto d = cohomology::dims(in.rep, effective_tol());
      return Outcome{json_io::dims_to_json(d), true,
                     "cohom-dims: h0=" + std::to_string(d.h0) + " z1=" + std::to_string(d.z1) +
                         " b1=" + std::to_string(d.b1) + " h1=" + std::to_string(d.h1)};
    };
  });

  auto* cr = app.add_subcommand("cohom-rigidity", "Rank of restriction of H1 to peripheral subgroups");
  add_rep_options(cr);
  cr->callback([&] {
    action = [&] {
      auto in = load_rep();
      if (in.peripherals.empty()) usage("the representation lists no peripheral subgroups");
      auto r = cohomology::restriction_rank(in.rep, in.peripherals, effective_tol());
      return Outcome{json_io::restriction_to_json(r), true,
                     "cohom-rigidity: restriction rank " + std::to_string(r.rank) + " of h1 " +
                         std::to_string(r.h1)};
    };
  });

  // Triangle group
  double tau = 0.75;
  int depth = 8;
  std::string svg_path, tiles_path;
  triangle::SvgStyle style;
  auto* tile = app.add_subcommand("triangle-tile", "Orbit tiling of the (3,3,3) triangle group");
  tile->add_option("--tau", tau);
  tile->add_option("--depth", depth)->check(CLI::NonNegativeNumber);
  tile->add_option("--svg", svg_path, "Write an SVG drawing");
  tile->add_option("--tiles-json", tiles_path, "Write the tile list as JSON");
  tile->add_option("--size", style.size)->check(CLI::PositiveNumber);
  tile->add_option("--tile-fill", style.tile_fill);
  tile->add_option("--tile-stroke", style.tile_stroke);
  tile->add_option("--hull-stroke", style.hull_stroke);
  tile->add_option("--stroke-width", style.stroke_width)->check(CLI::PositiveNumber);
  tile->callback([&] {
    action = [&] {
      auto tiles = triangle::orbit_tiles(tau, depth);
      double margin = std::numeric_limits<double>::infinity();
      for (const auto& tl : tiles)
        for (const auto& p : tl.polygon) margin = std::min(margin, triangle::hull_margin(tau, p));
      if (!svg_path.empty()) triangle::render_svg(tiles, tau, svg_path, style);
      if (!tiles_path.empty()) {
        std::ofstream f(tiles_path);
        f << json_io::tiles_to_json(tiles, tau).dump() << "\n";
        if (!f) throw Error(ErrorKind::kIoError, "cannot write '" + tiles_path + "'");
      }
      Outcome o;
      o.pass = margin >= -kHullTol;
      o.report = Json{{"tau", tau}, {"depth", depth}, {"tile_count", tiles.size()}};
      o.report["min_hull_margin"] = std::isfinite(margin) ? Json(margin) : Json(nullptr);
      o.report["pass"] = o.pass;
      o.summary = "triangle-tile: " + std::to_string(tiles.size()) + " tiles";
      return o;
    };
  });

  std::vector<double> conj_taus{0.75, -0.75, 0.1, -0.1}, speed_taus{0.2, 0.3};
  std::vector<int> speed_ks{2, 3};
  auto* tc = app.add_subcommand("triangle-checks", "Coxeter relations, h_tau conjugation, speed-up identity");
  tc->add_option("--tau", conj_taus, "Parameters for the conjugation identity");
  tc->add_option("--speedup-tau", speed_taus);
  tc->add_option("--k", speed_ks)->check(CLI::PositiveNumber);
  tc->callback([&] {
    action = [&] {
      Outcome o;
      const bool coxeter = triangle::coxeter_relations_hold();
      o.pass = coxeter;
      Json conj = Json::array(), speed = Json::array();
      for (double tt : conj_taus)
        for (int i = 1; i <= 3; ++i) {
          const double r = triangle::conjugation_residual(tt, i);
          o.pass = o.pass && r < kTriangleTol;
          conj.push_back(Json{{"tau", tt}, {"i", i}, {"residual", r}});
        }
      const std::vector<std::pair<long long, long long>> words{{1, 0}, {0, 1}, {1, 1}, {2, -1}};
      for (double tt : speed_taus)
        for (int k : speed_ks)
          for (auto [wm, wn] : words) {
            const double r = triangle::speedup_check(tt, k, wm, wn);
            o.pass = o.pass && r < kTriangleTol;
            speed.push_back(Json{{"tau", tt}, {"k", k}, {"m", wm}, {"n", wn}, {"residual", r}});
          }
      o.report = Json{{"coxeter_relations_exact", coxeter}, {"conjugation", conj}, {"speedup", speed},
                      {"pass", o.pass}};
      o.summary = std::string("triangle-checks: ") + (o.pass ? "all identities hold" : "an identity failed");
      return o;
    };
  });

  // Hex lattices
  std::string a1_text, a2_text;
  auto* hm = app.add_subcommand("hex-match", "Lattice Q-isometries between two hex cusp shapes");
  hm->add_option("--a1", a1_text, "Shape [[a,b],[c,d]]")->required();
  hm->add_option("--a2", a2_text, "Shape [[a,b],[c,d]]")->required();
  hm->callback([&] {
    action = [&] {
      const auto a1 = json_io::shape_from_json(json_io::parse(a1_text));
      const auto a2 = json_io::shape_from_json(json_io::parse(a2_text));
      const auto ws = hexlattice::find_q_isometries(a1, a2);
      Outcome o;
      o.pass = !ws.empty();
      Json list = Json::array();
      for (const auto& w : ws) list.push_back(json_io::witness_to_json(w));
      const auto factor = hexlattice::conformal_factor(a1, a2);
      o.report = Json{{"a1", json_io::shape_to_json(a1)},
                      {"a2", json_io::shape_to_json(a2)},
                      {"area1", to_string(hexlattice::area(a1))},
                      {"area2", to_string(hexlattice::area(a2))}};
      o.report["factor"] = factor ? json_io::rational_to_json(*factor) : Json(nullptr);
      o.report["witnesses"] = list;
      o.summary = "hex-match: " + std::to_string(ws.size()) + " witness(es)";
      return o;
    };
  });

  // Census
  auto* c2 = app.add_subcommand("census-verify-table2", "Verify the five census gluing plans");
  c2->callback([&] {
    action = [&] {
      const auto entries = load_census(census_path);
      Outcome o;
      Json plans = Json::array();
      int passed = 0;
      for (const auto& plan : census::table2_plans()) {
        const auto r = census::verify_plan(plan, entries);
        passed += r.pass;
        o.pass = o.pass && r.pass;
        plans.push_back(json_io::plan_report_to_json(plan, r));
      }
      o.report = Json{{"plans", plans}, {"pass", o.pass}};
      o.summary = "census-verify-table2: " + std::to_string(passed) + "/5 plans verified";
      return o;
    };
  });

  std::vector<std::string> blocks;
  census::SearchConstraints constraints;
  bool no_self = false;
  auto* cs = app.add_subcommand("census-search",
                                "Closed gluings of the given manifolds, or the compatibility graph");
  cs->add_option("--blocks", blocks, "Census names, one block each")->delimiter(',');
  cs->add_option("--limit", constraints.limit, "Search node budget")->check(CLI::PositiveNumber);
  cs->add_flag("--no-self-gluing", no_self);
  cs->callback([&] {
    action = [&] {
      const auto entries = load_census(census_path);
      Outcome o;
      if (blocks.empty()) {
        Json edges = Json::array();
        for (const auto& e : census::compatibility_graph(entries)) edges.push_back(json_io::edge_to_json(e));
        o.summary = "census-search: " + std::to_string(edges.size()) + " compatible cusp pairs";
        o.report = Json{{"edges", edges}};
        return o;
      }
      constraints.allow_self_gluing = !no_self;
      const auto res = census::enumerate_closed_gluings(entries, blocks, constraints);
      Json plans = Json::array();
      for (const auto& plan : res.plans)
        plans.push_back(json_io::plan_report_to_json(plan, census::verify_plan(plan, entries)));
      o.report = Json{{"plans", plans}, {"partial", res.partial}};
      o.summary = "census-search: " + std::to_string(res.plans.size()) + " closed gluing(s)" +
                  (res.partial ? " (search truncated)" : "");
      return o;
    };
  });

  // Gluing
  int row = 0;
  double mu = 0.3;
  auto* gm = app.add_subcommand("glue-match", "Solve for gluing matrices matching boundary holonomy");
  gm->add_option("--input", input, "JSON {rep1: {M1, M2}, rep2: {M1, M2}, f: [[..],[..]]}");
  gm->add_option("--table2-row", row, "Instantiate a census plan (1-5)")->check(CLI::Range(1, 5));
  gm->add_option("--mu", mu)->check(CLI::PositiveNumber);
  gm->callback([&] {
    action = [&] {
      Outcome o;
      if ((row == 0) == input.empty()) usage("use exactly one of --input or --table2-row");
      if (!input.empty()) {
        const Json j = json_io::read_file(input);
        const auto rep1 = json_io::peripheral_from_json(j.at("rep1"));
        const auto rep2 = json_io::peripheral_from_json(j.at("rep2"));
        const MatX fm = json_io::matrix_from_json(j.at("f"), 2, 2);
        gluing::IntMat2x2 f;
        for (int r = 0; r < 2; ++r)
          for (int c = 0; c < 2; ++c) {
            f(r, c) = std::llround(fm(r, c));
            if (f(r, c) != fm(r, c)) usage("f must have integer entries");
          }
        Json sols = Json::array();
        const auto s = gluing::solve_matching(rep1, rep2, f);
        for (const auto& x : s) sols.push_back(json_io::matching_to_json(x));
        o.pass = !s.empty();
        o.report = Json{{"solutions", sols}, {"pass", o.pass}};
        o.summary = "glue-match: " + std::to_string(s.size()) + " solution(s)";
        return o;
      }
      const auto entries = load_census(census_path);
      const auto plan = census::table2_plans()[row - 1];
      const auto hol = census::instantiate_plan(plan, entries, mu);
      Json pairings = Json::array();
      for (const auto& h : hol) {
        Json matches = Json::array();
        bool any = false;
        for (const auto& wm : h.matches) {
          Json sols = Json::array();
          for (const auto& s : wm.solutions) sols.push_back(json_io::matching_to_json(s));
          any = any || !wm.solutions.empty();
          matches.push_back(Json{{"witness", json_io::witness_to_json(wm.witness)},
                                 {"f", Json::array({Json::array({wm.f(0, 0), wm.f(0, 1)}),
                                                    Json::array({wm.f(1, 0), wm.f(1, 1)})})},
                                 {"solutions", sols}});
        }
        o.pass = o.pass && any;
        pairings.push_back(Json{{"tau_from", h.tau_from}, {"tau_to", h.tau_to}, {"matches", matches}});
      }
      o.report = Json{{"plan", json_io::plan_to_json(plan)}, {"mu", mu}, {"pairings", pairings},
                      {"pass", o.pass}};
      o.summary = std::string("glue-match: ") +
                  (o.pass ? "every pairing has a matching gluing matrix" : "a pairing has no solution");
      return o;
    };
  });

  std::string shape_text;
  int distinguished = -1;
  auto* mc = app.add_subcommand("glue-midcond", "Middle eigenvalue condition for a peripheral pair");
  mc->add_option("--input", input, "JSON {M1, M2}");
  mc->add_option("--shape", shape_text, "Hex cusp shape; uses the triangle-group boundary holonomy");
  mc->add_option("--tau", tau);
  mc->add_option("--distinguished", distinguished, "Index of p4 in pencil order")->check(CLI::Range(0, 3));
  mc->callback([&] {
    action = [&] {
      if (shape_text.empty() == input.empty()) usage("use exactly one of --input or --shape");
      gluing::PeripheralRep rep;
      if (!input.empty()) {
        rep = json_io::peripheral_from_json(json_io::read_file(input));
      } else {
        auto [m1, m2] = triangle::boundary_rep_4d(tau, json_io::shape_from_json(json_io::parse(shape_text)));
        rep = {m1, m2};
      }
      const auto frame = gluing::eigen_frame(
          rep, distinguished >= 0 ? std::optional<int>(distinguished) : std::nullopt);
      const auto r = gluing::middle_eigenvalue_condition(frame);
      return Outcome{json_io::midcond_to_json(r), r.holds,
                     std::string("glue-midcond: ") + (r.holds ? "holds" : "fails")};
    };
  });

  std::optional<double> synthetic;
  int pp_depth = 4;
  auto* pp = app.add_subcommand("glue-pingpong", "Ping-pong containment for an amalgam");
  pp->add_option("--synthetic", synthetic, "Built-in configuration with ratio MU")->check(CLI::PositiveNumber);
  pp->add_option("--input", input, "Glued group JSON with an extra interior_point");
  pp->add_option("--depth", pp_depth)->check(CLI::Range(1, 12));
  pp->callback([&] {
    action = [&] {
      if (synthetic.has_value() == !input.empty()) usage("use exactly one of --synthetic or --input");
      std::vector<Mat4> g1, g2;
      gluing::PeripheralRep per;
      Vec4 interior;
      if (synthetic) {
        auto cfg = gluing::synthetic_pingpong_configuration(*synthetic);
        g1 = cfg.gens1;
        g2 = cfg.gens2;
        per = cfg.peripheral;
        interior = cfg.interior_point;
      } else {
        const Json j = json_io::read_file(input);
        const auto group = json_io::glued_group_from_json(j);
        if (group.kind != gluing::GluedGroup::Kind::kAmalgam) usage("ping-pong input must be an amalgam");
        if (group.peripheral_words.size() != 2) usage("peripheral_words must hold two words");
        if (!j.contains("interior_point")) usage("missing field 'interior_point'");
        const MatX ip = json_io::matrix_from_json(Json::array({j.at("interior_point")}), 1, 4);
        interior = ip.row(0).transpose();
        for (const auto& [name, mat] : group.gens1) g1.push_back(gluing::word_holonomy(group, {{name, 1}}));
        for (const auto& [name, mat] : group.gens2) g2.push_back(mat);
        per = {gluing::word_holonomy(group, group.peripheral_words[0]),
               gluing::word_holonomy(group, group.peripheral_words[1])};
      }
      const auto geom = gluing::principal_geometry(gluing::eigen_frame(per), interior);
      const auto r = gluing::pingpong_check(g1, g2, geom, pp_depth);
      std::string s = "glue-pingpong: " + std::to_string(r.words_checked) + " words, ";
      s += r.pass ? "all contained" : std::to_string(r.violations.size()) + " violation(s)";
      if (!r.violations.empty()) s += ", first " + r.violations.front().word;
      return Outcome{json_io::pingpong_to_json(r), r.pass, s};
    };
  });

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return 0;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return 0;
  } catch (const CLI::ParseError& e) {
    out << json_io::error_to_json("usage", e.what()).dump(2) << "\n";
    err << "error: " << e.what() << "\n";
    return 2;
  }

  try {
    Outcome o = action();
    out << o.report.dump(2) << "\n";
    err << o.summary << (o.pass ? "" : " [FAIL]") << "\n";
    return o.pass ? 0 : 1;
  } catch (const Error& e) {
    out << json_io::error_to_json(std::string(to_string(e.kind())), e.what()).dump(2) << "\n";
    err << "error (" << to_string(e.kind()) << "): " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    out << json_io::error_to_json("internal", e.what()).dump(2) << "\n";
    err << "error: " << e.what() << "\n";
    return 2;
  }
}

}  // namespace projglue::cli
