#include <pybind11/complex.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "qp/io_json.hpp"
#include "qp/phase_opt.hpp"
#include "qp/portfolio.hpp"
#include "qp/qsim.hpp"
#include "qp/restart.hpp"
#include "qp/sat.hpp"
#include "qp/version.hpp"

namespace py = pybind11;
using namespace pybind11::literals;

namespace {

void bind_restart(py::module_& m) {
  using namespace qp::restart;

  py::class_<ProblemAngle>(m, "ProblemAngle")
      .def(py::init<double>(), "fraction"_a)
      .def_property_readonly("fraction", &ProblemAngle::fraction)
      .def_property_readonly("theta", &ProblemAngle::theta);

  py::class_<FrontierPoint>(m, "FrontierPoint")
      .def_readonly("t", &FrontierPoint::t)
      .def_readonly("p", &FrontierPoint::p)
      .def_readonly("mean", &FrontierPoint::mean)
      .def_readonly("second_moment", &FrontierPoint::second_moment)
      .def_readonly("std", &FrontierPoint::std_dev)
      .def_readonly("sharpe", &FrontierPoint::sharpe)
      .def_readonly("efficient", &FrontierPoint::efficient)
      .def("__repr__", [](const FrontierPoint& pt) {
        return "FrontierPoint(t=" + std::to_string(pt.t) +
               ", p=" + std::to_string(pt.p) + ", mean=" + std::to_string(pt.mean) + ")";
      });

  m.def("success_probability",
        [](std::int64_t t, const ProblemAngle& a) { return success_probability(t, a); },
        "t"_a, "angle"_a);
  m.def("certainty_iterations", &certainty_iterations, "angle"_a);
  m.def("expected_iterations", &expected_iterations, "t"_a, "angle"_a,
        "floor"_a = kProbabilityFloor);
  m.def("second_moment", &second_moment, "t"_a, "p"_a);
  m.def("std_dev", &std_dev, "t"_a, "p"_a);
  m.def("sharpe", py::overload_cast<const FrontierPoint&>(&sharpe), "point"_a);
  m.def("sharpe_from_p", &sharpe_from_p, "p"_a);
  m.def("make_point", &make_point, "t"_a, "angle"_a, "floor"_a = kProbabilityFloor);
  m.def("frontier", &frontier, "angle"_a, "t_max"_a, "floor"_a = kProbabilityFloor);
  m.def("optimal_restart", &optimal_restart, "angle"_a, "t_max"_a,
        "floor"_a = kProbabilityFloor);
  m.def("continuous_optimum_z", &continuous_optimum_z);
}

void bind_sat(py::module_& m) {
  using namespace qp::sat;

  py::class_<SatInstance>(m, "SatInstance")
      .def_property_readonly("n", &SatInstance::n)
      .def_property_readonly("num_clauses", &SatInstance::num_clauses)
      .def("to_dimacs", [](const SatInstance& i) { return write_dimacs(i); })
      .def_static("from_dimacs",
                  [](const std::string& text, bool enforce_arity, int k) {
                    return read_dimacs(text, enforce_arity, k);
                  },
                  "text"_a, "enforce_arity"_a = true, "k"_a = 3)
      .def("__eq__", [](const SatInstance& a, const SatInstance& b) { return a == b; })
      .def("__repr__", [](const SatInstance& i) {
        return "SatInstance(n=" + std::to_string(i.n()) +
               ", m=" + std::to_string(i.num_clauses()) + ")";
      });

  m.def("random_instance", &random_instance, "n"_a, "ratio"_a, "seed"_a, "k"_a = 3);
  m.def("conflicts", &conflicts, "instance"_a, "assignment"_a);
  m.def("solutions_bruteforce", &solutions_bruteforce, "instance"_a);
}

void bind_qsim(py::module_& m) {
  using namespace qp::qsim;

  py::class_<PhaseChoice>(m, "PhaseChoice")
      .def(py::init([](std::vector<double> rho, std::vector<double> tau, int steps) {
             return PhaseChoice{std::move(rho), std::move(tau), steps};
           }),
           "rho"_a = std::vector<double>{0.0, 0.0, 0.0},
           "tau"_a = std::vector<double>{0.0, 0.0, 0.0}, "steps"_a = 1)
      .def_readwrite("rho", &PhaseChoice::rho)
      .def_readwrite("tau", &PhaseChoice::tau)
      .def_readwrite("steps", &PhaseChoice::steps)
      .def("__repr__", [](const PhaseChoice& c) {
        return "PhaseChoice(steps=" + std::to_string(c.steps) + ")";
      });

  py::class_<StateVector>(m, "StateVector")
      .def_readonly("qubits", &StateVector::qubits)
      .def_property_readonly("amplitudes",
                             [](const StateVector& s) { return s.amps; })
      .def_property_readonly("probabilities", [](const StateVector& s) {
        std::vector<double> out;
        out.reserve(s.amps.size());
        for (const auto& a : s.amps) out.push_back(std::norm(a));
        return out;
      });

  m.def("identity_choice", &identity_choice);
  m.def("uniform_state", &uniform_state, "q"_a, "guard"_a = kDefaultQubitGuard);
  m.def("heuristic_trial",
        py::overload_cast<const qp::sat::SatInstance&, const PhaseChoice&, int>(
            &heuristic_trial),
        "instance"_a, "choice"_a, "guard"_a = kDefaultQubitGuard);
  m.def("grover_trial",
        [](const qp::sat::SatInstance& instance, int t, int guard) {
          return grover_trial(instance, t, guard);
        },
        "instance"_a, "t"_a, "guard"_a = kDefaultQubitGuard);
  m.def("grover_trial_solutions",
        [](int n, const std::vector<qp::sat::Assignment>& solutions, int t, int guard) {
          return grover_trial(n, solutions, t, guard);
        },
        "n"_a, "solutions"_a, "t"_a, "guard"_a = kDefaultQubitGuard);
  m.def("success_probability",
        [](const StateVector& state, const std::vector<qp::sat::Assignment>& solutions,
           int selector_qubits) {
          return success_probability(state, solutions, selector_qubits);
        },
        "state"_a, "solutions"_a, "selector_qubits"_a = 0);
}

void bind_portfolio(py::module_& m) {
  using namespace qp::portfolio;

  py::class_<SuccessSample>(m, "SuccessSample")
      .def(py::init([](int choice_id, double p) { return SuccessSample{choice_id, p}; }),
           "choice_id"_a, "p"_a)
      .def_readonly("choice_id", &SuccessSample::choice_id)
      .def_readonly("p", &SuccessSample::p);

  py::class_<SuccessDistribution>(m, "SuccessDistribution")
      .def(py::init([](const std::vector<std::pair<int, double>>& samples,
                       std::vector<double> weights) {
             std::vector<SuccessSample> converted;
             converted.reserve(samples.size());
             for (const auto& [id, p] : samples) converted.push_back(SuccessSample{id, p});
             return SuccessDistribution(std::move(converted), std::move(weights));
           }),
           "samples"_a, "weights"_a = std::vector<double>{})
      .def_property_readonly("samples",
                             [](const SuccessDistribution& d) {
                               std::vector<std::pair<int, double>> out;
                               for (const auto& s : d.samples()) out.emplace_back(s.choice_id, s.p);
                               return out;
                             })
      .def_property_readonly("weights",
                             [](const SuccessDistribution& d) { return d.weights(); })
      .def_property_readonly("mean_p", &SuccessDistribution::mean_p);

  py::class_<StrategyStats>(m, "StrategyStats")
      .def_readonly("mean", &StrategyStats::mean)
      .def_readonly("variance", &StrategyStats::variance)
      .def_readonly("std", &StrategyStats::std_dev)
      .def_readonly("divergent", &StrategyStats::divergent)
      .def("__repr__", [](const StrategyStats& s) {
        return "StrategyStats(mean=" + std::to_string(s.mean) +
               ", std=" + std::to_string(s.std_dev) +
               ", divergent=" + (s.divergent ? std::string("True") : std::string("False")) +
               ")";
      });

  py::class_<EquivalenceReport>(m, "EquivalenceReport")
      .def_readonly("p_quantum", &EquivalenceReport::p_quantum)
      .def_readonly("weighted_sum", &EquivalenceReport::weighted_sum)
      .def_readonly("difference", &EquivalenceReport::difference)
      .def_readonly("within_tolerance", &EquivalenceReport::within_tolerance);

  m.def("success_distribution",
        [](const qp::sat::SatInstance& instance,
           const std::vector<qp::qsim::PhaseChoice>& choices, int guard) {
          return success_distribution(instance, choices, guard);
        },
        "instance"_a, "choices"_a, "guard"_a = qp::qsim::kDefaultQubitGuard);
  m.def("single_choice_stats", &single_choice_stats, "dist"_a,
        "floor"_a = kDivergenceFloor);
  m.def("mixed_strategy_stats", &mixed_strategy_stats, "dist"_a);
  m.def("jensen_gap", &jensen_gap, "dist"_a);
  m.def("uniform_weights", &uniform_weights, "count"_a);
  m.def("portfolio_state",
        [](const qp::sat::SatInstance& instance,
           const std::vector<qp::qsim::PhaseChoice>& choices,
           const std::vector<std::complex<double>>& weights, int guard) {
          return portfolio_state(instance, choices, weights, guard);
        },
        "instance"_a, "choices"_a, "weights"_a, "guard"_a = qp::qsim::kDefaultQubitGuard);
  m.def("equivalence_check",
        [](const qp::sat::SatInstance& instance,
           const std::vector<qp::qsim::PhaseChoice>& choices,
           const std::vector<std::complex<double>>& weights, int guard) {
          return equivalence_check(instance, choices, weights, guard);
        },
        "instance"_a, "choices"_a, "weights"_a, "guard"_a = qp::qsim::kDefaultQubitGuard);
  m.def("amplified_portfolio",
        [](const qp::sat::SatInstance& instance,
           const std::vector<qp::qsim::PhaseChoice>& choices,
           const std::vector<std::complex<double>>& weights, int rounds, int guard) {
          return amplified_portfolio(instance, choices, weights, rounds, guard);
        },
        "instance"_a, "choices"_a, "weights"_a, "rounds"_a,
        "guard"_a = qp::qsim::kDefaultQubitGuard);
  m.def("amplified_portfolio_curve",
        [](const qp::sat::SatInstance& instance,
           const std::vector<qp::qsim::PhaseChoice>& choices,
           const std::vector<std::complex<double>>& weights, int rounds_max, int guard) {
          return amplified_portfolio_curve(instance, choices, weights, rounds_max, guard);
        },
        "instance"_a, "choices"_a, "weights"_a, "rounds_max"_a,
        "guard"_a = qp::qsim::kDefaultQubitGuard);
}

void bind_phopt(py::module_& m) {
  using namespace qp::phopt;

  py::class_<TrainingConfig>(m, "TrainingConfig")
      .def(py::init<>())
      .def_readwrite("train_n", &TrainingConfig::train_n)
      .def_readwrite("train_count", &TrainingConfig::train_count)
      .def_readwrite("ratio", &TrainingConfig::ratio)
      .def_readwrite("restarts", &TrainingConfig::restarts)
      .def_readwrite("budget", &TrainingConfig::budget)
      .def_readwrite("seed", &TrainingConfig::seed)
      .def_readwrite("steps", &TrainingConfig::steps)
      .def_readwrite("rho_terms", &TrainingConfig::rho_terms)
      .def_readwrite("tau_terms", &TrainingConfig::tau_terms);

  py::class_<TrainedChoice>(m, "TrainedChoice")
      .def_readonly("choice", &TrainedChoice::choice)
      .def_readonly("train_n", &TrainedChoice::train_n)
      .def_readonly("seed", &TrainedChoice::seed)
      .def_readonly("restart", &TrainedChoice::restart)
      .def_readonly("objective", &TrainedChoice::objective);

  py::class_<PortfolioSet>(m, "PortfolioSet")
      .def_readonly("choices", &PortfolioSet::choices)
      .def("phase_choices", &PortfolioSet::phase_choices);

  m.def("objective",
        [](const qp::qsim::PhaseChoice& choice,
           const std::vector<qp::sat::SatInstance>& instances) {
          return objective(choice, instances);
        },
        "choice"_a, "instances"_a);
  m.def("optimize", &optimize, "config"_a, "initial"_a);
  m.def("random_choice", &random_choice, "seed"_a, "rho_terms"_a = 3, "tau_terms"_a = 3,
        "steps"_a = 1);
  m.def("build_portfolio", &build_portfolio, "config"_a);
  m.def("cross_size_eval_json",
        [](const PortfolioSet& portfolio, int test_n, int test_count, std::uint64_t seed,
           double ratio, const std::string& portfolio_id) {
          return qp::io::report_to_json(
              cross_size_eval(portfolio, test_n, test_count, seed, ratio, portfolio_id));
        },
        "portfolio"_a, "test_n"_a, "test_count"_a, "seed"_a, "ratio"_a = 4.25,
        "portfolio_id"_a = "");
  m.def("portfolio_to_json", &qp::io::portfolio_to_json, "portfolio"_a, "portfolio_id"_a);
  m.def("portfolio_from_json", &qp::io::portfolio_from_json, "text"_a);
}

}  // namespace

PYBIND11_MODULE(_qportfolio, m) {
  m.doc() = "Quantum portfolios: restart analytics, 3-SAT heuristic simulation, and "
            "portfolio construction";
  m.attr("__version__") = qp::kVersion;

  py::register_exception<qp::DegenerateStrategyError>(m, "DegenerateStrategyError",
                                                      PyExc_ArithmeticError);
  py::register_exception<qp::InfeasibleError>(m, "InfeasibleError", PyExc_ValueError);
  py::register_exception<qp::ParseError>(m, "ParseError", PyExc_ValueError);

  py::module_ restart = m.def_submodule("restart", "Restart-strategy analytics");
  bind_restart(restart);
  py::module_ sat = m.def_submodule("sat", "Random 3-SAT instances and DIMACS I/O");
  bind_sat(sat);
  py::module_ qsim = m.def_submodule("qsim", "State-vector heuristic simulation");
  bind_qsim(qsim);
  py::module_ portfolio = m.def_submodule("portfolio", "Success distributions and portfolios");
  bind_portfolio(portfolio);
  py::module_ phopt = m.def_submodule("phopt", "Phase-choice training and evaluation");
  bind_phopt(phopt);
}
