#include <pybind11/functional.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "svsa/acceptance.hpp"
#include "svsa/avi.hpp"
#include "svsa/experiments.hpp"
#include "svsa/fixed_point.hpp"
#include "svsa/json_support.hpp"
#include "svsa/mdp.hpp"
#include "svsa/norms.hpp"
#include "svsa/saa.hpp"
#include "svsa/shipped.hpp"

namespace py = pybind11;
using namespace svsa;

namespace {

py::dict json_to_pydict(const nlohmann::json& j) {
    const py::module_ pyjson = py::module_::import("json");
    return pyjson.attr("loads")(j.dump());
}

} // namespace

PYBIND11_MODULE(_svsa, m) {
    m.doc() = "stochastic approximation with set-valued mean-fields";

    py::class_<NormSpec>(m, "NormSpec")
        .def_static("euclidean", &NormSpec::euclidean)
        .def_static("weighted_max", &NormSpec::weighted_max, py::arg("weights"))
        .def_static("weighted_p", &NormSpec::weighted_p, py::arg("weights"), py::arg("p"));
    m.def("norm_eval", &norm_eval, py::arg("spec"), py::arg("z"));
    m.def("sandwich_constants",
          [](const NormSpec& spec, std::size_t d) {
              const auto c = sandwich_constants(spec, d);
              return std::make_pair(c.lower, c.upper);
          },
          py::arg("spec"), py::arg("d"));
    m.def("hausdorff",
          [](const std::vector<Vec>& a, const std::vector<Vec>& b, const NormSpec& norm) {
              return hausdorff(FiniteSet(a), FiniteSet(b), MetricSpec::from_norm(norm));
          },
          py::arg("a"), py::arg("b"), py::arg("norm"));
    m.def("ball_translate_hausdorff", &ball_translate_hausdorff, py::arg("c1"), py::arg("c2"),
          py::arg("radius"), py::arg("norm"));

    py::class_<Mdp>(m, "Mdp")
        .def_static("from_json_str",
                    [](const std::string& text) { return Mdp::from_json(nlohmann::json::parse(text)); })
        .def_static("load", &Mdp::load)
        .def("n_states", &Mdp::n_states);
    m.def("shipped_mdp_3state", &shipped_mdp_3state);
    m.def("shipped_mdp_ssp", &shipped_mdp_ssp);
    m.def("bellman", &bellman, py::arg("mdp"), py::arg("J"));
    m.def("exact_vi",
          [](const Mdp& mdp, double tol) {
              const ViResult r = exact_vi(mdp, tol);
              py::dict out;
              out["J"] = r.J;
              out["residual"] = r.residual;
              out["converged"] = r.converged;
              out["sweeps"] = r.sweeps;
              return out;
          },
          py::arg("mdp"), py::arg("tol"));
    m.def("contraction_certificate", &contraction_certificate, py::arg("mdp"), py::arg("nu"),
          py::arg("n_pairs"), py::arg("seed"));

    m.def("validate_schedule", [](const std::string& kind, double a0, double q,
                                  const std::vector<double>& values) {
        StepSchedule s;
        if (kind == "harmonic")
            s = StepSchedule::harmonic(a0);
        else if (kind == "polynomial")
            s = StepSchedule::polynomial(a0, q);
        else if (kind == "explicit")
            s = StepSchedule::explicit_list(values);
        else
            throw std::invalid_argument("unknown schedule kind");
        const ScheduleVerdict v = validate_schedule(s);
        switch (v.status) {
        case ScheduleVerdict::Status::Pass: return std::string("pass");
        case ScheduleVerdict::Status::Fail: return std::string("fail");
        default: return std::string("inconclusive");
        }
    }, py::arg("kind"), py::arg("a0") = 1.0, py::arg("q") = 1.0,
       py::arg("values") = std::vector<double>{});

    m.def("run_avi",
          [](const Mdp& mdp, const py::dict& params, std::uint64_t seed) {
              const py::module_ pyjson = py::module_::import("json");
              const nlohmann::json p =
                  nlohmann::json::parse(std::string(py::str(pyjson.attr("dumps")(params))));
              AviConfig config;
              config.epsilon = p.value("epsilon", 0.1);
              config.n_iter = p.value("n_iter", std::size_t(20000));
              config.schedule = StepSchedule::harmonic(p.value("a0", 1.0));
              config.noise = p.contains("noise_D")
                                 ? NoiseModel::bounded_iid(p["noise_D"].get<double>())
                                 : NoiseModel::zero();
              config.contraction_norm = NormSpec::weighted_max(ones(mdp.n_states()));
              config.error_norm = p.contains("error_norm") ? norm_from_json(p["error_norm"])
                                                           : config.contraction_norm;
              config.seed = seed;
              if (p.contains("j0")) config.j0 = p["j0"].get<Vec>();
              const AviResult r = run_avi(mdp, config);
              py::dict out;
              out["residual"] = r.residual;
              out["distance"] = r.distance;
              out["alpha"] = r.alpha;
              out["j_bar"] = r.j_bar;
              out["j_star"] = r.j_star;
              out["diverged"] = r.trace.diverged;
              out["sup_gap_after_N"] = r.gap_report.sup_gap_after_N;
              return out;
          },
          py::arg("mdp"), py::arg("params"), py::arg("seed"));

    m.def("run_fixed_point",
          [](const py::dict& map_spec, const Vec& x0, std::size_t n_iter, std::uint64_t seed) {
              const py::module_ pyjson = py::module_::import("json");
              const nlohmann::json spec =
                  nlohmann::json::parse(std::string(py::str(pyjson.attr("dumps")(map_spec))));
              const ContractiveSetMap map = ContractiveSetMap::from_json(spec);
              const FpResult r =
                  run_fixed_point(map, x0, StepSchedule::harmonic(1.0),
                                  NoiseModel::bounded_iid(0.1), SelectionStrategy::uniform(),
                                  n_iter, seed);
              py::dict out;
              out["residual"] = r.residual;
              out["x_bar"] = r.x_bar;
              out["base_fixed_point"] = r.base_fixed_point;
              out["sup_gap_after_N"] = r.gap_report.sup_gap_after_N;
              return out;
          },
          py::arg("map_spec"), py::arg("x0"), py::arg("n_iter"), py::arg("seed"));

    m.def("run_experiment_file", [](const std::string& path) {
        const SummaryRecord summary =
            run_experiment(ExperimentConfig::from_toml_file(path));
        return json_to_pydict(summary.to_json());
    });

    m.def("run_experiment_json", [](const py::dict& config) {
        const py::module_ pyjson = py::module_::import("json");
        const nlohmann::json j =
            nlohmann::json::parse(std::string(py::str(pyjson.attr("dumps")(config))));
        const SummaryRecord summary = run_experiment(ExperimentConfig::from_json(j));
        return json_to_pydict(summary.to_json());
    });
}
