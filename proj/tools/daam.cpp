#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#include "daam/errors.hpp"
#include "daam/experiment.hpp"
#include "daam/manipulation.hpp"
#include "daam/market_io.hpp"
#include "daam/oracle.hpp"
#include "daam/seats.hpp"
#include "daam/stability.hpp"

namespace {

using namespace daam;
using nlohmann::ordered_json;

Variant parse_variant(const std::string& name) {
  if (name == "sp" || name == "studentProposing") return Variant::kStudentProposing;
  if (name == "cp" || name == "collegeProposing") return Variant::kCollegeProposing;
  throw CLI::ValidationError("--variant", "expected sp, cp, studentProposing or collegeProposing");
}

CollegeId resolve_college(const Market& market, const std::string& name) {
  auto c = market.find_college(name);
  if (!c) throw MalformedInput("no college named '" + name + "'");
  return *c;
}

// "ic" or "mallows:<phi>:<k>".
GeneratorSpec parse_generator(const std::string& text, Side side, std::size_t n_items,
                              std::uint64_t seed) {
  if (text == "ic") return impartial_culture(side, seed);
  std::istringstream in(text);
  std::string kind, phi, k;
  std::getline(in, kind, ':');
  std::getline(in, phi, ':');
  std::getline(in, k, ':');
  if (kind != "mallows" || phi.empty() || k.empty()) {
    throw ConfigError("generator must be 'ic' or 'mallows:<phi>:<k>', got '" + text + "'");
  }
  try {
    return mallows_mixture(side, n_items, std::stod(phi), std::stoul(k), seed);
  } catch (const std::logic_error&) {
    throw ConfigError("bad number in generator '" + text + "'");
  }
}

void emit(const ordered_json& doc, const std::string& path) {
  if (path.empty()) {
    std::cout << doc.dump(2) << '\n';
    return;
  }
  std::ofstream out(path);
  if (!out) throw IoError("cannot write " + path);
  out << doc.dump(2) << '\n';
}

ordered_json report_json(const Market& market, const ManipulationReport& r, bool witness) {
  ordered_json doc;
  doc["college"] = market.college_name(r.college);
  doc["variant"] = to_string(r.variant);
  doc["beneficial"] = r.beneficial;
  doc["result"] = names_of(market, sorted_by_college(market.profile(), r.college,
                                                      {r.result.students_of(r.college).begin(),
                                                       r.result.students_of(r.college).end()}));
  doc["lost"] = names_of(market, r.lost);
  doc["gained"] = names_of(market, r.gained);
  doc["tempHeld"] = names_of(market, r.temp_held);
  doc["daaExecutions"] = r.daa_executions;
  doc["iterations"] = r.iterations;
  if (witness) {
    doc["reportedList"] = names_of(market, r.reported_list);
    if (!r.withheld.empty()) doc["withheld"] = names_of(market, r.withheld);
    doc["matching"] = matching_to_json(market, r.result);
  }
  return doc;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Deferred acceptance and college manipulation toolkit"};
  app.require_subcommand(1);

  std::string market_path, college_name, variant_name = "sp", out_path;
  bool check_stability = false, optimal = false, witness = false, all_offers = false;
  std::size_t max_students = kDefaultOracleMaxStudents;

  auto* run = app.add_subcommand("run", "Run DAA and print the matching as JSON");
  run->add_option("market", market_path, "Market JSON file")->required();
  run->add_option("-v,--variant", variant_name, "sp | cp");
  run->add_flag("--check-stability", check_stability, "Also list blocking pairs");

  auto* manipulate = app.add_subcommand("manipulate", "Search a beneficial misreport for a college");
  manipulate->add_option("market", market_path, "Market JSON file")->required();
  manipulate->add_option("college", college_name, "College name")->required();
  manipulate->add_option("-v,--variant", variant_name, "sp | cp");
  manipulate->add_flag("--optimal", optimal, "Keep improving until no step helps");
  manipulate->add_flag("--witness", witness, "Include the reported list and matching");
  manipulate->add_flag("--all-offers", all_offers,
                       "cp: also withhold offers to students outside the truthful match");

  auto* oracle = app.add_subcommand("oracle", "Try every report of a college (small markets)");
  oracle->add_option("market", market_path, "Market JSON file")->required();
  oracle->add_option("college", college_name, "College name")->required();
  oracle->add_option("-v,--variant", variant_name, "sp | cp");
  oracle->add_option("--max-students", max_students, "Refuse larger markets");

  auto* split = app.add_subcommand("split", "Write the one-to-one seat market");
  split->add_option("market", market_path, "Market JSON file")->required();
  split->add_option("-o,--output", out_path, "Output file (default stdout)");

  std::size_t n_students = 0, n_colleges = 0;
  std::string student_gen = "ic", college_gen = "ic", capacity = "method1";
  std::uint64_t seed = 0;
  auto* generate = app.add_subcommand("generate", "Sample a random market");
  generate->add_option("--students", n_students)->required();
  generate->add_option("--colleges", n_colleges)->required();
  generate->add_option("--student-gen", student_gen, "ic | mallows:<phi>:<k>");
  generate->add_option("--college-gen", college_gen, "ic | mallows:<phi>:<k>");
  generate->add_option("--capacity", capacity, "method1 | method2")
      ->check(CLI::IsMember({"method1", "method2"}));
  generate->add_option("--seed", seed);
  generate->add_option("-o,--output", out_path, "Output file (default stdout)");

  std::string config_path, csv_path;
  std::size_t threads = 0;
  auto* experiment = app.add_subcommand("experiment", "Run a configured Monte-Carlo study");
  experiment->add_option("config", config_path, "Experiment config JSON")->required();
  experiment->add_option("--threads", threads, "Override the configured thread count");
  experiment->add_option("--csv", csv_path, "Override the configured CSV path");

  auto* report = app.add_subcommand("report", "Summarize a results CSV");
  report->add_option("csv", csv_path, "Results CSV")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? 0 : 2;
  }

  try {
    const Variant variant = parse_variant(variant_name);
    if (*run) {
      const Market market = load_market(market_path);
      const DaaResult result = run_daa(market, variant, {.record_trace = false});
      ordered_json doc = matching_to_json(market, result.matching);
      if (check_stability) {
        const StabilityResult st = is_stable(market, result.matching);
        doc["stable"] = st.stable;
        doc["blockingPairs"] = ordered_json::array();
        for (const BlockingPair& bp : st.blocking_pairs) {
          doc["blockingPairs"].push_back(
              {market.student_name(bp.student), market.college_name(bp.college)});
        }
      }
      emit(doc, "");
    } else if (*manipulate) {
      const Market market = load_market(market_path);
      const CollegeId c = resolve_college(market, college_name);
      std::optional<ManipulationReport> found;
      if (variant == Variant::kStudentProposing) {
        if (optimal) {
          auto r = find_optimal_manipulation_student_proposing(market, c);
          if (r.beneficial) found = std::move(r);
        } else {
          found = find_manipulation_student_proposing(market, c);
        }
      } else if (all_offers) {
        found = find_offer_withholding_manipulation(market, c, optimal);
      } else {
        found = find_manipulation_college_proposing(market, c, optimal);
      }
      ordered_json doc;
      if (found) {
        doc = report_json(market, *found, witness);
      } else {
        doc["college"] = college_name;
        doc["variant"] = to_string(variant);
        doc["beneficial"] = false;
      }
      emit(doc, "");
    } else if (*oracle) {
      const Market market = load_market(market_path);
      const CollegeId c = resolve_college(market, college_name);
      const OracleResult r = brute_force_oracle(market, c, variant, max_students);
      ordered_json doc;
      doc["college"] = college_name;
      doc["variant"] = to_string(variant);
      doc["manipulable"] = r.manipulable;
      doc["truthful"] = names_of(market, r.truthful);
      doc["maximalOutcomes"] = ordered_json::array();
      for (const auto& outcome : r.maximal_outcomes) {
        doc["maximalOutcomes"].push_back(names_of(market, outcome));
      }
      doc["reachableOutcomes"] = r.outcomes.size();
      doc["daaExecutions"] = r.daa_executions;
      emit(doc, "");
    } else if (*split) {
      const SplitMarket s = split_to_one_to_one(load_market(market_path));
      emit(market_to_json(s.market), out_path);
    } else if (*generate) {
      const PreferenceProfile profile = gen_profile(
          n_students, n_colleges,
          parse_generator(student_gen, Side::kStudents, n_colleges, derive_seed({seed, 1})),
          parse_generator(college_gen, Side::kColleges, n_students, derive_seed({seed, 2})));
      const CapacityMethod method =
          capacity == "method1" ? CapacityMethod::kMethod1 : CapacityMethod::kMethod2;
      const Market market(gen_capacities(n_students, n_colleges, {method, derive_seed({seed, 3})}),
                          profile);
      emit(market_to_json(market), out_path);
    } else if (*experiment) {
      ExperimentConfig config = load_config(config_path);
      if (experiment->count("--threads")) config.threads = threads;
      if (!csv_path.empty()) config.csv_path = csv_path;
      // Open every output first so a bad path fails before any work.
      std::ofstream csv, summary, witnesses;
      auto open = [](std::ofstream& f, const std::filesystem::path& p) {
        if (p.empty()) return;
        f.open(p);
        if (!f) throw IoError("cannot write " + p.string());
      };
      open(csv, config.csv_path);
      open(summary, config.summary_path);
      if (config.verbose) open(witnesses, config.witness_path);

      const auto records = run_experiment(config);
      if (csv.is_open()) write_csv(csv, records);
      const SummaryStats stats = summarize(records);
      if (summary.is_open()) write_summary_csv(summary, stats);
      if (witnesses.is_open()) {
        for (const TrialRecord& r : records) {
          for (const std::string& w : r.witnesses) {
            witnesses << r.n_students << 'x' << r.n_colleges << ' ' << r.generator << ' '
                      << r.capacity_method << ' ' << to_string(r.variant) << " trial " << r.trial
                      << ' ' << w << '\n';
          }
        }
      }
      std::cout << format_summary(stats);
    } else if (*report) {
      std::ifstream in(csv_path);
      if (!in) throw IoError("cannot open " + csv_path);
      const auto records = read_csv(in);
      std::cout << format_summary(summarize(records));
    }
  } catch (const CLI::ValidationError& e) {
    std::cerr << "daam: " << e.what() << '\n';
    return 2;
  } catch (const Error& e) {
    std::cerr << "daam: " << e.what() << '\n';
    return 1;
  }
  return 0;
}
