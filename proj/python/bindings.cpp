#include <pybind11/numpy.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "nstars/analytic.hpp"
#include "nstars/errors.hpp"
#include "nstars/gammakit.hpp"
#include "nstars/params.hpp"
#include "nstars/simulator.hpp"
#include "nstars/stats.hpp"

namespace py = pybind11;
using namespace nstars;

namespace {

stats::Axis parse_axis(const std::string& axis) {
  if (axis == "w1") return stats::Axis::kFixW1;
  if (axis == "w2") return stats::Axis::kFixW2;
  throw InvalidParams("axis must be 'w1' or 'w2'");
}

py::dict moment_rows_to_dict(const std::vector<stats::EmpiricalMomentRow>& rows) {
  std::vector<std::uint64_t> fixed;
  std::vector<std::uint64_t> count;
  std::vector<double> marginal;
  std::vector<double> mean;
  std::vector<double> second;
  for (const auto& r : rows) {
    fixed.push_back(r.fixed);
    count.push_back(r.count);
    marginal.push_back(r.marginal);
    mean.push_back(r.mean);
    second.push_back(r.second_moment);
  }
  py::dict out;
  out["fixed"] = py::array(py::cast(fixed));
  out["count"] = py::array(py::cast(count));
  out["marginal"] = py::array(py::cast(marginal));
  out["mean"] = py::array(py::cast(mean));
  out["second_moment"] = py::array(py::cast(second));
  return out;
}

std::vector<stats::EmpiricalMomentRow> rows_from_arrays(
    const std::vector<std::uint64_t>& count, const std::vector<double>& mean,
    const std::vector<double>& second_moment) {
  if (count.size() != mean.size() || mean.size() != second_moment.size()) {
    throw InvalidParams("count, mean and second_moment must have equal length");
  }
  std::vector<stats::EmpiricalMomentRow> rows;
  for (std::size_t i = 0; i < count.size(); ++i) {
    rows.push_back({i, count[i], 0.0, mean[i], second_moment[i]});
  }
  return rows;
}

}  // namespace

PYBIND11_MODULE(_nstars, m) {
  m.doc() = "N-stars network evolution model: limit formulas and simulation";

  auto error = py::register_exception<Error>(m, "NStarsError", PyExc_ValueError);
  py::register_exception<InsufficientData>(m, "InsufficientData", error.ptr());
  py::register_exception<InvariantViolation>(m, "InvariantViolation", error.ptr());

  py::class_<ModelParams>(m, "ModelParams")
      .def(py::init([](int N, double p, double q, double r) { return ModelParams{N, p, q, r}; }),
           py::arg("N") = 4, py::arg("p") = 0.4, py::arg("q") = 0.4, py::arg("r") = 0.4)
      .def_readwrite("N", &ModelParams::N)
      .def_readwrite("p", &ModelParams::p)
      .def_readwrite("q", &ModelParams::q)
      .def_readwrite("r", &ModelParams::r)
      .def("__repr__", [](const ModelParams& p) {
        return "ModelParams(N=" + std::to_string(p.N) + ", p=" + py::repr(py::float_(p.p)).cast<std::string>() +
               ", q=" + py::repr(py::float_(p.q)).cast<std::string>() +
               ", r=" + py::repr(py::float_(p.r)).cast<std::string>() + ")";
      });

  py::class_<DerivedParams>(m, "DerivedParams")
      .def_readonly("alpha11", &DerivedParams::a11)
      .def_readonly("alpha12", &DerivedParams::a12)
      .def_readonly("alpha1", &DerivedParams::a1)
      .def_readonly("alpha2", &DerivedParams::a2)
      .def_readonly("beta1", &DerivedParams::b1)
      .def_readonly("beta2", &DerivedParams::b2)
      .def_readonly("alpha", &DerivedParams::a)
      .def_readonly("beta", &DerivedParams::b)
      .def_readonly("swapped", &DerivedParams::swapped);

  py::class_<ConditionReport>(m, "ConditionReport")
      .def_readonly("e_finite", &ConditionReport::e_finite)
      .def_readonly("m_finite", &ConditionReport::m_finite)
      .def_readonly("m_finite_swapped", &ConditionReport::m_finite_swapped)
      .def_readonly("e_exponent", &ConditionReport::e_exponent)
      .def_readonly("m_exponent", &ConditionReport::m_exponent);

  m.def("derive", &derive, py::arg("params"));
  m.def("check_conditions", &check_conditions, py::arg("derived"));
  m.def("swap_roles", &swap_roles, py::arg("derived"));

  m.def("log_gamma_ratio", &gammakit::log_gamma_ratio, py::arg("n"), py::arg("a"), py::arg("b"));
  m.def("finite_gamma_sum", &gammakit::finite_gamma_sum, py::arg("n"), py::arg("a"), py::arg("b"));
  m.def("infinite_gamma_sum", &gammakit::infinite_gamma_sum, py::arg("a"), py::arg("b"));

  m.def(
      "joint_table",
      [](const DerivedParams& d, int w1_max, int w2_max) {
        const auto t = analytic::joint_table(d, w1_max, w2_max);
        py::array_t<double> out({w1_max + 1, w2_max + 1});
        auto view = out.mutable_unchecked<2>();
        for (int i = 0; i <= w1_max; ++i) {
          for (int j = 0; j <= w2_max; ++j) view(i, j) = t.at(i, j);
        }
        return out;
      },
      py::arg("derived"), py::arg("w1_max"), py::arg("w2_max"));
  m.def("marginal", &analytic::marginal_closed, py::arg("derived"), py::arg("w1"));
  m.def("expectation", &analytic::expectation_closed, py::arg("derived"), py::arg("w1"));
  m.def("second_moment", &analytic::second_moment_closed, py::arg("derived"), py::arg("w1"),
        "None when the second moment diverges");
  m.def("taylor_constant", &analytic::taylor_constant, py::arg("derived"),
        "None when the second moment diverges");
  m.def(
      "tail_coefficients",
      [](const DerivedParams& d, int w1, int w2) {
        const auto t = analytic::tail_coefficients(d, w1, w2);
        return py::make_tuple(t.A_of_w2, t.C_of_w1);
      },
      py::arg("derived"), py::arg("w1"), py::arg("w2"), "(A(w2), C(w1))");

  m.def(
      "simulate",
      [](const ModelParams& params, std::uint64_t steps, std::uint64_t seed) {
        RunResult result = [&] {
          py::gil_scoped_release release;
          return run({params, steps, seed});
        }();
        const auto& s = result.summary;
        std::vector<std::uint64_t> w1;
        std::vector<std::uint64_t> w2;
        for (const auto& v : result.state.vertices()) {
          w1.push_back(v.w1);
          w2.push_back(v.w2);
        }
        py::dict branches;
        for (std::size_t k = 0; k < s.branch_counts.size(); ++k) {
          branches[step_kind_name(static_cast<StepKind>(k))] = s.branch_counts[k];
        }
        py::dict out;
        out["w1"] = py::array(py::cast(w1));
        out["w2"] = py::array(py::cast(w2));
        out["branch_counts"] = branches;
        out["steps"] = s.steps;
        out["nstar_count"] = s.nstar_count;
        out["n1star_count"] = s.n1star_count;
        out["digest"] = s.digest;
        out["wall_seconds"] = s.wall_seconds;
        return out;
      },
      py::arg("params"), py::arg("steps"), py::arg("seed") = 1,
      "Run the evolution; returns per-vertex weights and a run summary.");

  m.def(
      "conditional_moments",
      [](const std::vector<std::uint64_t>& w1, const std::vector<std::uint64_t>& w2,
         const std::string& axis, std::uint64_t min_count) {
        if (w1.size() != w2.size()) throw InvalidParams("w1 and w2 must have equal length");
        std::vector<VertexStats> v(w1.size());
        for (std::size_t i = 0; i < w1.size(); ++i) v[i] = {w1[i], w2[i]};
        return moment_rows_to_dict(
            stats::conditional_moments(stats::empirical_joint(v), parse_axis(axis), min_count));
      },
      py::arg("w1"), py::arg("w2"), py::arg("axis") = "w1", py::arg("min_count") = 1);

  m.def(
      "loglog_fit",
      [](const std::vector<std::uint64_t>& count, const std::vector<double>& mean,
         const std::vector<double>& second_moment, std::uint64_t min_count) {
        const auto fit = stats::loglog_fit(rows_from_arrays(count, mean, second_moment), min_count);
        py::dict out;
        out["slope"] = fit.slope;
        out["intercept"] = fit.intercept;
        out["r_squared"] = fit.r_squared;
        out["points_used"] = fit.points_used;
        out["rows_nonpositive"] = fit.rows_nonpositive;
        return out;
      },
      py::arg("count"), py::arg("mean"), py::arg("second_moment"), py::arg("min_count") = 30);
}
