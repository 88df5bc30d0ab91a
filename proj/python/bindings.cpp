#include <pybind11/eigen.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <sstream>

#include "projglue/census.hpp"
#include "projglue/cli.hpp"
#include "projglue/cohomology.hpp"
#include "projglue/errors.hpp"
#include "projglue/gluing.hpp"
#include "projglue/hexlattice.hpp"
#include "projglue/json_io.hpp"
#include "projglue/slice.hpp"
#include "projglue/triangle.hpp"

namespace py = pybind11;
using namespace projglue;
using json_io::Json;

namespace {

// Reports cross the boundary as JSON text; the Python wrapper decodes them.
std::string dump(const Json& j) { return j.dump(); }

hexlattice::HexShape shape(const std::array<std::array<long long, 2>, 2>& a) {
  return hexlattice::HexShape(a[0][0], a[0][1], a[1][0], a[1][1]);
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Native core of projglue";

  PYBIND11_CONSTINIT static py::gil_safe_call_once_and_store<py::object> error_type;
  error_type.call_once_and_store_result(
      [&] { return py::object(py::exception<Error>(m, "Error", PyExc_ValueError)); });
  py::register_exception_translator([](std::exception_ptr p) {
    try {
      if (p) std::rethrow_exception(p);
    } catch (const Error& e) {
      const std::string msg = std::string(to_string(e.kind())) + ": " + e.what();
      PyErr_SetString(error_type.get_stored().ptr(), msg.c_str());
    }
  });

  m.def("phi_generators", [](double a, double b, double x, double y) {
    return slice::phi_generators({a, b, x, y});
  });
  m.def("phi_eigenvalues", [](double t, double theta, double x, double y, int mm, int n) {
    return slice::phi_eigenvalues({t, theta, x, y}, mm, n);
  });
  m.def("slice_transversality", [](double x, double y) {
    return dump(json_io::transversality_to_json(slice::check_slice_transversality(x, y)));
  });
  m.def("bivector_check", [] { return dump(json_io::bivector_to_json(slice::bivector_transversality_check())); });
  m.def("pitfall_demo", [](const std::vector<double>& ts) {
    return dump(json_io::pitfall_to_json(slice::eigenvalue_pitfall_demo(ts)));
  });

  m.def("cusp_dims", [](double u, double v) {
    return dump(json_io::dims_to_json(cohomology::dims(cohomology::cusp_rep(u, v))));
  });
  m.def("cohomology_dims", [](const std::string& input_json) {
    auto in = json_io::cohomology_input_from_json(json_io::parse(input_json));
    return dump(json_io::dims_to_json(cohomology::dims(in.rep)));
  });

  m.def("orbit_tiles", [](double tau, int depth) {
    return dump(json_io::tiles_to_json(triangle::orbit_tiles(tau, depth), tau));
  });
  m.def("tiling_svg", [](double tau, int depth) {
    return triangle::svg_string(triangle::orbit_tiles(tau, depth), tau);
  });
  m.def("htau", &triangle::htau);
  m.def("boundary_rep_4d", [](double tau, const std::array<std::array<long long, 2>, 2>& a) {
    return triangle::boundary_rep_4d(tau, shape(a));
  });

  m.def("find_q_isometries", [](const std::array<std::array<long long, 2>, 2>& a1,
                                const std::array<std::array<long long, 2>, 2>& a2) {
    Json out = Json::array();
    for (const auto& w : hexlattice::find_q_isometries(shape(a1), shape(a2)))
      out.push_back(json_io::witness_to_json(w));
    return dump(out);
  });

  m.def("verify_table2", [] {
    Json out = Json::array();
    for (const auto& plan : census::table2_plans())
      out.push_back(json_io::plan_report_to_json(plan, census::verify_plan(plan, census::builtin_census())));
    return dump(out);
  });

  m.def("middle_eigenvalue_condition", [](const Mat4& m1, const Mat4& m2) {
    return dump(json_io::midcond_to_json(gluing::middle_eigenvalue_condition(gluing::eigen_frame({m1, m2}))));
  });
  m.def("solve_matching", [](const Mat4& a1, const Mat4& a2, const Mat4& b1, const Mat4& b2,
                             const Eigen::Matrix<long long, 2, 2>& f) {
    Json out = Json::array();
    for (const auto& s : gluing::solve_matching({a1, a2}, {b1, b2}, f)) out.push_back(json_io::matching_to_json(s));
    return dump(out);
  });
  m.def("synthetic_pingpong", [](double mu, int depth) {
    auto cfg = gluing::synthetic_pingpong_configuration(mu);
    auto geom = gluing::principal_geometry(gluing::eigen_frame(cfg.peripheral), cfg.interior_point);
    return dump(json_io::pingpong_to_json(gluing::pingpong_check(cfg.gens1, cfg.gens2, geom, depth)));
  });

  m.def("run_cli", [](std::vector<std::string> args) {
    args.insert(args.begin(), "projglue");
    std::vector<const char*> argv;
    for (const auto& a : args) argv.push_back(a.c_str());
    std::ostringstream out, err;
    const int code = cli::run(static_cast<int>(argv.size()), argv.data(), out, err);
    return py::make_tuple(code, out.str(), err.str());
  });
}
