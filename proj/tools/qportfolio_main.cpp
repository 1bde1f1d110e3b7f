// qportfolio: reproducible quantum-portfolio experiments from the command line.
//
// Subcommands: frontier, gen, histogram, optimize, eval, amplify. Every run
// writes its outputs atomically plus a manifest recording the full parameter
// set, so re-running a manifest's command reproduces the outputs byte for byte
// (the recorded duration aside).

#include <algorithm>
#include <chrono>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "qp/errors.hpp"
#include "qp/io_json.hpp"
#include "qp/phase_opt.hpp"
#include "qp/portfolio.hpp"
#include "qp/qsim.hpp"
#include "qp/restart.hpp"
#include "qp/rng.hpp"
#include "qp/sat.hpp"
#include "qp/version.hpp"

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

constexpr int kExitUsage = 2;
constexpr int kExitInput = 3;
constexpr int kExitInfeasible = 4;

std::string fmt_double(double x) {
  if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
  return json(x).dump();  // shortest round-trip representation
}

void write_atomic(const fs::path& path, const std::string& content) {
  if (path.has_parent_path()) fs::create_directories(path.parent_path());
  const fs::path tmp = path.string() + ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw qp::ParseError("cannot open for writing: " + tmp.string());
    out << content;
    if (!out.good()) throw qp::ParseError("write failed: " + tmp.string());
  }
  fs::rename(tmp, path);
}

std::string read_file(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw qp::ParseError("cannot open: " + path.string());
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

class ManifestWriter {
 public:
  explicit ManifestWriter(std::string command) : command_(std::move(command)) {}

  void param(const std::string& key, const json& value) { params_[key] = value; }
  void seed(const std::string& key, std::uint64_t value) { seeds_[key] = value; }
  void output(const fs::path& path) { outputs_.push_back(path.string()); }

  void write(const fs::path& manifest_path) const {
    const double duration =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start_).count();
    const json doc{{"schema", qp::io::kManifestSchema},
                   {"command", command_},
                   {"artifact_version", qp::kVersion},
                   {"parameters", params_},
                   {"seeds", seeds_},
                   {"outputs", outputs_},
                   {"duration_seconds", duration}};
    write_atomic(manifest_path, doc.dump(2) + "\n");
  }

 private:
  std::string command_;
  json params_ = json::object();
  json seeds_ = json::object();
  std::vector<std::string> outputs_;
  std::chrono::steady_clock::time_point start_ = std::chrono::steady_clock::now();
};

// ---------------------------------------------------------------- frontier

struct FrontierArgs {
  double fraction = 0.0;
  int t_max = 0;  // 0: up to the certainty iteration count
  std::string out;
};

int run_frontier(const FrontierArgs& args) {
  ManifestWriter manifest("frontier");
  const qp::restart::ProblemAngle angle(args.fraction);
  const int t_star = qp::restart::certainty_iterations(angle);
  const int t_max = args.t_max > 0 ? args.t_max : t_star;

  const std::vector<qp::restart::FrontierPoint> points =
      qp::restart::frontier(angle, t_max);
  const qp::restart::FrontierPoint* best = &points.front();
  for (const auto& pt : points) {
    if (pt.mean < best->mean) best = &pt;
  }
  const double certainty_mean = static_cast<double>(t_star) /
                                qp::restart::success_probability(t_star, angle);

  std::ostringstream csv;
  csv << "t,p,mean,std,sharpe,efficient\n";
  for (const auto& pt : points) {
    csv << pt.t << ',' << fmt_double(pt.p) << ',' << fmt_double(pt.mean) << ','
        << fmt_double(pt.std_dev) << ',' << fmt_double(pt.sharpe) << ','
        << (pt.efficient ? "true" : "false") << '\n';
  }
  csv << "# summary certainty_t=" << t_star << " optimal_t=" << best->t
      << " optimal_mean=" << fmt_double(best->mean)
      << " mean_ratio=" << fmt_double(best->mean / certainty_mean)
      << " optimal_sharpe=" << fmt_double(best->sharpe) << '\n';

  write_atomic(args.out, csv.str());
  manifest.output(args.out);
  manifest.param("fraction", args.fraction);
  manifest.param("t_max", t_max);
  manifest.param("out", args.out);
  manifest.write(args.out + ".manifest.json");
  std::cout << "frontier: " << points.size() << " points -> " << args.out
            << " (certainty_t=" << t_star << ", optimal_t=" << best->t
            << ", mean_ratio=" << fmt_double(best->mean / certainty_mean) << ")\n";
  return 0;
}

// --------------------------------------------------------------------- gen

struct GenArgs {
  int n = 8;
  double ratio = 4.25;
  int count = 1;
  std::uint64_t seed = 0;
  std::string out;
};

std::string instance_file_name(int n, double ratio, std::uint64_t seed, int index) {
  std::ostringstream name;
  name << "sat_n" << n << "_r" << fmt_double(ratio) << "_s" << seed << "_i" << index
       << ".cnf";
  return name.str();
}

int run_gen(const GenArgs& args) {
  if (args.count < 1) throw std::invalid_argument("gen: count must be >= 1");
  ManifestWriter manifest("gen");
  fs::create_directories(args.out);
  for (int i = 0; i < args.count; ++i) {
    const std::uint64_t instance_seed =
        qp::derive_seed(args.seed, static_cast<std::uint64_t>(i));
    const qp::sat::SatInstance instance =
        qp::sat::random_instance(args.n, args.ratio, instance_seed);
    const fs::path path = fs::path(args.out) / instance_file_name(args.n, args.ratio,
                                                                  args.seed, i);
    write_atomic(path, qp::sat::write_dimacs(instance));
    manifest.output(path);
  }
  manifest.param("n", args.n);
  manifest.param("ratio", args.ratio);
  manifest.param("count", args.count);
  manifest.param("out", args.out);
  manifest.seed("seed", args.seed);
  manifest.write(fs::path(args.out) / "manifest.json");
  std::cout << "gen: wrote " << args.count << " instances to " << args.out << "\n";
  return 0;
}

// --------------------------------------------------------------- histogram

struct HistogramArgs {
  std::string instances_dir;
  int random_choices = 0;
  std::string portfolio_file;
  std::uint64_t seed = 0;
  bool seed_given = false;
  int steps = 0;  // 0: use each instance's variable count
  std::string out;
};

struct LoadedInstance {
  std::string id;
  qp::sat::SatInstance instance;
  std::vector<qp::sat::Assignment> solutions;
};

std::vector<fs::path> list_cnf_files(const fs::path& dir) {
  if (!fs::is_directory(dir)) {
    throw qp::ParseError("not a directory: " + dir.string());
  }
  std::vector<fs::path> files;
  for (const auto& entry : fs::directory_iterator(dir)) {
    if (entry.is_regular_file() && entry.path().extension() == ".cnf") {
      files.push_back(entry.path());
    }
  }
  std::sort(files.begin(), files.end());
  return files;
}

int run_histogram(const HistogramArgs& args) {
  const bool use_random = args.random_choices > 0;
  const bool use_portfolio = !args.portfolio_file.empty();
  if (use_random == use_portfolio) {
    std::cerr << "histogram: exactly one of --choices and --portfolio is required\n";
    return kExitUsage;
  }
  if (use_random && !args.seed_given) {
    std::cerr << "histogram: --seed is required with --choices\n";
    return kExitUsage;
  }
  ManifestWriter manifest("histogram");

  std::vector<LoadedInstance> instances;
  std::vector<std::string> excluded;
  for (const fs::path& path : list_cnf_files(args.instances_dir)) {
    const qp::sat::SatInstance instance = qp::sat::read_dimacs(read_file(path));
    std::vector<qp::sat::Assignment> solutions = qp::sat::solutions_bruteforce(instance);
    if (solutions.empty()) {
      excluded.push_back(path.stem().string());
    } else {
      instances.push_back(
          LoadedInstance{path.stem().string(), instance, std::move(solutions)});
    }
  }
  if (instances.empty()) {
    throw qp::InfeasibleError("histogram: no solvable instances in " + args.instances_dir);
  }

  std::string choices_source;
  qp::phopt::PortfolioSet portfolio_set;
  if (use_portfolio) {
    const std::string text = read_file(args.portfolio_file);
    portfolio_set = qp::io::portfolio_from_json(text);
    choices_source = "portfolio:" + qp::io::portfolio_id_from_json(text);
  } else {
    choices_source = "random:" + std::to_string(args.random_choices);
  }

  json samples = json::array();
  json instance_records = json::array();
  for (const LoadedInstance& li : instances) {
    std::vector<qp::qsim::PhaseChoice> choices;
    if (use_portfolio) {
      choices = portfolio_set.phase_choices();
    } else {
      const int steps = args.steps > 0 ? args.steps : li.instance.n();
      for (int k = 0; k < args.random_choices; ++k) {
        choices.push_back(qp::phopt::random_choice(
            qp::derive_seed(args.seed, static_cast<std::uint64_t>(k)), 3, 3, steps));
      }
    }
    const qp::portfolio::SuccessDistribution dist =
        qp::portfolio::success_distribution(li.instance, li.solutions, choices);
    for (const auto& s : dist.samples()) {
      samples.push_back(
          json{{"instance_id", li.id}, {"choice_id", s.choice_id}, {"p", s.p}});
    }
    const auto single = qp::portfolio::single_choice_stats(dist);
    const auto mixed = qp::portfolio::mixed_strategy_stats(dist);
    double mean_steps = 0.0;
    for (std::size_t k = 0; k < choices.size(); ++k) {
      mean_steps += dist.weights()[k] * static_cast<double>(choices[k].steps);
    }
    instance_records.push_back(json{{"instance_id", li.id},
                                    {"n", li.instance.n()},
                                    {"single_mean", single.mean},
                                    {"single_divergent", single.divergent},
                                    {"mixed_mean", mixed.mean},
                                    {"mixed_std", mixed.std_dev},
                                    {"jensen_gap", qp::portfolio::jensen_gap(dist)},
                                    {"mixed_mean_iterations", mixed.mean * mean_steps}});
  }

  json doc{{"schema", qp::io::kHistogramSchema},
           {"choices", choices_source},
           {"samples", samples},
           {"instances", instance_records},
           {"excluded_unsat", excluded}};
  if (use_random) doc["seed"] = args.seed;
  write_atomic(args.out, doc.dump(2) + "\n");
  manifest.output(args.out);
  manifest.param("instances_dir", args.instances_dir);
  manifest.param("choices", choices_source);
  if (use_portfolio) manifest.param("portfolio", args.portfolio_file);
  manifest.param("steps", args.steps);
  manifest.param("out", args.out);
  if (use_random) manifest.seed("seed", args.seed);
  manifest.write(args.out + ".manifest.json");
  std::cout << "histogram: " << instances.size() << " instances, "
            << samples.size() << " samples -> " << args.out << "\n";
  return 0;
}

// ---------------------------------------------------------------- optimize

struct OptimizeArgs {
  int n = 8;
  int count = 20;
  double ratio = 4.25;
  int restarts = 10;
  int budget = 500;
  std::uint64_t seed = 0;
  int steps = 0;
  std::string out;
};

int run_optimize(const OptimizeArgs& args) {
  ManifestWriter manifest("optimize");
  qp::phopt::TrainingConfig config;
  config.train_n = args.n;
  config.train_count = args.count;
  config.ratio = args.ratio;
  config.restarts = args.restarts;
  config.budget = args.budget;
  config.seed = args.seed;
  config.steps = args.steps;

  const qp::phopt::PortfolioSet set = qp::phopt::build_portfolio(config);
  const std::string portfolio_id =
      "train_n" + std::to_string(args.n) + "_seed" + std::to_string(args.seed);
  write_atomic(args.out, qp::io::portfolio_to_json(set, portfolio_id));
  manifest.output(args.out);
  manifest.param("n", args.n);
  manifest.param("count", args.count);
  manifest.param("ratio", args.ratio);
  manifest.param("restarts", args.restarts);
  manifest.param("budget", args.budget);
  manifest.param("steps", args.steps);
  manifest.param("out", args.out);
  manifest.seed("seed", args.seed);
  manifest.write(args.out + ".manifest.json");
  std::cout << "optimize: " << set.choices.size() << " distinct choices -> " << args.out
            << "\n";
  return 0;
}

// -------------------------------------------------------------------- eval

struct EvalArgs {
  std::string portfolio_file;
  int n = 20;
  int count = 20;
  double ratio = 4.25;
  std::uint64_t seed = 0;
  std::string out;
};

int run_eval(const EvalArgs& args) {
  ManifestWriter manifest("eval");
  const std::string text = read_file(args.portfolio_file);
  const qp::phopt::PortfolioSet set = qp::io::portfolio_from_json(text);
  const std::string portfolio_id = qp::io::portfolio_id_from_json(text);

  const qp::phopt::EvalReport report = qp::phopt::cross_size_eval(
      set, args.n, args.count, args.seed, args.ratio, portfolio_id);
  write_atomic(args.out, qp::io::report_to_json(report));
  manifest.output(args.out);
  manifest.param("portfolio", args.portfolio_file);
  manifest.param("n", args.n);
  manifest.param("count", args.count);
  manifest.param("ratio", args.ratio);
  manifest.param("out", args.out);
  manifest.seed("seed", args.seed);
  manifest.write(args.out + ".manifest.json");
  std::cout << "eval: " << report.instances.size() << " instances (excluded "
            << report.excluded_unsat_count << " unsat) -> " << args.out
            << " (median mixed mean " << fmt_double(report.median_mixed_mean) << ")\n";
  return 0;
}

// ----------------------------------------------------------------- amplify

struct AmplifyArgs {
  std::string instance_file;
  std::string portfolio_file;
  int rounds = 0;
  std::string out;
};

int run_amplify(const AmplifyArgs& args) {
  ManifestWriter manifest("amplify");
  const qp::sat::SatInstance instance = qp::sat::read_dimacs(read_file(args.instance_file));
  const std::string text = read_file(args.portfolio_file);
  const qp::phopt::PortfolioSet set = qp::io::portfolio_from_json(text);
  const std::vector<qp::qsim::PhaseChoice> choices = set.phase_choices();
  const std::vector<std::complex<double>> weights =
      qp::portfolio::uniform_weights(choices.size());

  const std::vector<double> curve =
      qp::portfolio::amplified_portfolio_curve(instance, choices, weights, args.rounds);
  const double p_bar = curve.front();
  const double theta = std::asin(std::sqrt(p_bar));
  const double predicted =
      std::pow(std::sin((2.0 * args.rounds + 1.0) * theta), 2.0);

  const json doc{{"schema", qp::io::kAmplifySchema},
                 {"instance", fs::path(args.instance_file).stem().string()},
                 {"portfolio_id", qp::io::portfolio_id_from_json(text)},
                 {"num_choices", choices.size()},
                 {"rounds", args.rounds},
                 {"p_bar", p_bar},
                 {"p_amplified", curve.back()},
                 {"p_predicted", predicted}};
  write_atomic(args.out, doc.dump(2) + "\n");
  manifest.output(args.out);
  manifest.param("instance", args.instance_file);
  manifest.param("portfolio", args.portfolio_file);
  manifest.param("rounds", args.rounds);
  manifest.param("out", args.out);
  manifest.write(args.out + ".manifest.json");
  std::cout << "amplify: p_bar=" << fmt_double(p_bar) << " rounds=" << args.rounds
            << " p=" << fmt_double(curve.back()) << " -> " << args.out << "\n";
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Quantum-portfolio experiments: restart analytics, random 3-SAT "
               "heuristic simulation, and portfolio evaluation"};
  app.require_subcommand(1);

  FrontierArgs frontier_args;
  CLI::App* frontier = app.add_subcommand(
      "frontier", "Restart-strategy frontier CSV for a given solution fraction");
  frontier->add_option("--fraction", frontier_args.fraction, "Solution fraction S/N")
      ->required();
  frontier->add_option("--t-max", frontier_args.t_max,
                       "Largest trial length (default: certainty iterations)");
  frontier->add_option("--out", frontier_args.out, "Output CSV path")->required();

  GenArgs gen_args;
  CLI::App* gen = app.add_subcommand("gen", "Generate random 3-SAT DIMACS files");
  gen->add_option("--n", gen_args.n, "Variable count")->required();
  gen->add_option("--ratio", gen_args.ratio, "Clause/variable ratio (default 4.25)");
  gen->add_option("--count", gen_args.count, "Number of instances")->required();
  gen->add_option("--seed", gen_args.seed, "Base seed")->required();
  gen->add_option("--out", gen_args.out, "Output directory")->required();

  HistogramArgs hist_args;
  CLI::App* histogram = app.add_subcommand(
      "histogram", "Success-probability samples and portfolio statistics");
  histogram->add_option("instances", hist_args.instances_dir, "Directory of .cnf files")
      ->required();
  histogram->add_option("--choices", hist_args.random_choices,
                        "Number of random phase choices");
  histogram->add_option("--portfolio", hist_args.portfolio_file, "Portfolio JSON file");
  CLI::Option* hist_seed = histogram->add_option("--seed", hist_args.seed,
                                                 "Seed for random choices");
  histogram->add_option("--steps", hist_args.steps,
                        "Trial length for random choices (default: instance n)");
  histogram->add_option("--out", hist_args.out, "Output JSON path")->required();

  OptimizeArgs opt_args;
  CLI::App* optimize = app.add_subcommand(
      "optimize", "Train a portfolio of phase choices on small instances");
  optimize->add_option("--n", opt_args.n, "Training variable count")->required();
  optimize->add_option("--count", opt_args.count, "Training instance count");
  optimize->add_option("--ratio", opt_args.ratio, "Clause/variable ratio");
  optimize->add_option("--restarts", opt_args.restarts, "Optimizer restarts");
  optimize->add_option("--budget", opt_args.budget, "Objective evaluations per restart");
  optimize->add_option("--seed", opt_args.seed, "Training seed")->required();
  optimize->add_option("--steps", opt_args.steps, "Trial length (default: n)");
  optimize->add_option("--out", opt_args.out, "Output portfolio JSON path")->required();

  EvalArgs eval_args;
  CLI::App* eval = app.add_subcommand(
      "eval", "Evaluate a portfolio on fresh, larger instances");
  eval->add_option("--portfolio", eval_args.portfolio_file, "Portfolio JSON file")
      ->required();
  eval->add_option("--n", eval_args.n, "Test variable count")->required();
  eval->add_option("--count", eval_args.count, "Test instance count");
  eval->add_option("--ratio", eval_args.ratio, "Clause/variable ratio");
  eval->add_option("--seed", eval_args.seed, "Test-set seed")->required();
  eval->add_option("--out", eval_args.out, "Output report JSON path")->required();

  AmplifyArgs amp_args;
  CLI::App* amplify = app.add_subcommand(
      "amplify", "Amplitude-amplify a portfolio on one instance");
  amplify->add_option("instance", amp_args.instance_file, "DIMACS CNF file")->required();
  amplify->add_option("--portfolio", amp_args.portfolio_file, "Portfolio JSON file")
      ->required();
  amplify->add_option("--rounds", amp_args.rounds, "Amplification rounds")->required();
  amplify->add_option("--out", amp_args.out, "Output JSON path")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kExitUsage;
  }

  try {
    hist_args.seed_given = hist_seed->count() > 0;
    if (frontier->parsed()) return run_frontier(frontier_args);
    if (gen->parsed()) return run_gen(gen_args);
    if (histogram->parsed()) return run_histogram(hist_args);
    if (optimize->parsed()) return run_optimize(opt_args);
    if (eval->parsed()) return run_eval(eval_args);
    if (amplify->parsed()) return run_amplify(amp_args);
  } catch (const qp::InfeasibleError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitInfeasible;
  } catch (const qp::DegenerateStrategyError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitInfeasible;
  } catch (const qp::ParseError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitInput;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitInput;
  } catch (const fs::filesystem_error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitInput;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
