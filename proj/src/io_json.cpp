#include "qp/io_json.hpp"

#include <json.hpp>

#include "qp/errors.hpp"

namespace qp::io {

namespace {

using nlohmann::json;

json choice_body(const qsim::PhaseChoice& choice) {
  return json{{"rho", choice.rho}, {"tau", choice.tau}, {"steps", choice.steps}};
}

qsim::PhaseChoice parse_choice(const json& j) {
  qsim::PhaseChoice choice;
  choice.rho = j.at("rho").get<std::vector<double>>();
  choice.tau = j.at("tau").get<std::vector<double>>();
  choice.steps = j.at("steps").get<int>();
  if (choice.steps < 1) throw ParseError("phase choice: steps must be >= 1");
  if (choice.rho.empty() || choice.tau.empty()) {
    throw ParseError("phase choice: empty coefficient vector");
  }
  return choice;
}

json trained_choice_to_json(const phopt::TrainedChoice& tc) {
  json j = choice_body(tc.choice);
  j["provenance"] = json{{"train_n", tc.train_n},
                         {"seed", tc.seed},
                         {"restart", tc.restart},
                         {"objective", tc.objective}};
  return j;
}

phopt::TrainedChoice trained_choice_from_json(const json& j) {
  phopt::TrainedChoice tc;
  tc.choice = parse_choice(j);
  const json& prov = j.at("provenance");
  tc.train_n = prov.at("train_n").get<int>();
  tc.seed = prov.at("seed").get<std::uint64_t>();
  tc.restart = prov.at("restart").get<int>();
  tc.objective = prov.at("objective").get<double>();
  return tc;
}

json parse_document(const std::string& text) {
  json j = json::parse(text, nullptr, /*allow_exceptions=*/false);
  if (j.is_discarded()) throw ParseError("invalid JSON document");
  return j;
}

json stats_to_json(const portfolio::StrategyStats& stats) {
  return json{{"mean", stats.mean},
              {"variance", stats.variance},
              {"std", stats.std_dev},
              {"divergent", stats.divergent}};
}

}  // namespace

std::string choice_to_json(const qsim::PhaseChoice& choice) {
  return choice_body(choice).dump(2) + "\n";
}

qsim::PhaseChoice choice_from_json(const std::string& text) {
  try {
    return parse_choice(parse_document(text));
  } catch (const json::exception& e) {
    throw ParseError(std::string("phase choice: ") + e.what());
  }
}

std::string portfolio_to_json(const phopt::PortfolioSet& set,
                              const std::string& portfolio_id) {
  json choices = json::array();
  for (const phopt::TrainedChoice& tc : set.choices) {
    choices.push_back(trained_choice_to_json(tc));
  }
  const json doc{{"schema", kPortfolioSchema},
                 {"portfolio_id", portfolio_id},
                 {"choices", choices}};
  return doc.dump(2) + "\n";
}

phopt::PortfolioSet portfolio_from_json(const std::string& text) {
  try {
    const json doc = parse_document(text);
    if (doc.value("schema", "") != kPortfolioSchema) {
      throw ParseError("portfolio: unexpected schema");
    }
    phopt::PortfolioSet set;
    for (const json& j : doc.at("choices")) {
      set.choices.push_back(trained_choice_from_json(j));
    }
    if (set.choices.empty()) throw ParseError("portfolio: no choices");
    return set;
  } catch (const json::exception& e) {
    throw ParseError(std::string("portfolio: ") + e.what());
  }
}

std::string portfolio_id_from_json(const std::string& text) {
  try {
    return parse_document(text).value("portfolio_id", "");
  } catch (const json::exception& e) {
    throw ParseError(std::string("portfolio: ") + e.what());
  }
}

std::string report_to_json(const phopt::EvalReport& report) {
  json instances = json::array();
  for (const phopt::InstanceEval& eval : report.instances) {
    json samples = json::array();
    for (const portfolio::SuccessSample& s : eval.samples) {
      samples.push_back(json{{"choice_id", s.choice_id}, {"p", s.p}});
    }
    instances.push_back(json{{"instance_id", eval.instance_id},
                             {"samples", samples},
                             {"single", stats_to_json(eval.single)},
                             {"mixed", stats_to_json(eval.mixed)},
                             {"single_mean", eval.single.mean},
                             {"single_divergent", eval.single.divergent},
                             {"mixed_mean", eval.mixed.mean},
                             {"mixed_std", eval.mixed.std_dev},
                             {"jensen_gap", eval.jensen_gap},
                             {"single_mean_iterations", eval.single_mean_iterations},
                             {"mixed_mean_iterations", eval.mixed_mean_iterations}});
  }
  const json doc{{"schema", kReportSchema},
                 {"test_n", report.test_n},
                 {"ratio", report.ratio},
                 {"seed", report.seed},
                 {"portfolio_id", report.portfolio_id},
                 {"instances", instances},
                 {"aggregate", json{{"test_n", report.test_n},
                                    {"portfolio_id", report.portfolio_id},
                                    {"median_single_mean", report.median_single_mean},
                                    {"median_mixed_mean", report.median_mixed_mean},
                                    {"median_jensen_gap", report.median_jensen_gap},
                                    {"excluded_unsat_count", report.excluded_unsat_count}}}};
  return doc.dump(2) + "\n";
}

}  // namespace qp::io
