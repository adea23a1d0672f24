#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "daam/daa.hpp"
#include "daam/prefgen.hpp"

namespace daam {

// One preference family, used for both sides of the market.
struct GeneratorConfig {
  GeneratorKind kind = GeneratorKind::kImpartialCulture;
  double phi = 0.0;               // Mallows only
  std::size_t mixture_size = 0;  // Mallows only: number of reference rankings
  std::string label() const;     // "ic" or "mallows"
};

struct MarketSize {
  std::size_t students;
  std::size_t colleges;
};

struct ExperimentConfig {
  std::vector<MarketSize> sizes;
  std::size_t trials = 1;
  std::vector<GeneratorConfig> generators;
  std::vector<CapacityMethod> capacity_methods;
  std::vector<Variant> variants;
  std::uint64_t master_seed = 0;
  std::size_t threads = 1;  // 0 = hardware concurrency
  // Compare every finder decision with the exhaustive oracle on markets small
  // enough for it; a disagreement aborts the run.
  bool oracle_cross_check = false;
  bool verbose = false;  // keep witness reports
  bool timing = false;   // fill daaMicros / finderMicros; off keeps CSV reproducible
  std::vector<std::string> fixtures;  // named markets run once per variant
  std::filesystem::path csv_path;
  std::filesystem::path summary_path;
  std::filesystem::path witness_path;

  // Throws ConfigError on an empty size, variant or capacity-method list,
  // zero trials, a non-positive size, a bad generator or an unknown fixture.
  void validate() const;
};

ExperimentConfig config_from_json(const nlohmann::json& doc);
ExperimentConfig load_config(const std::filesystem::path& path);

struct TrialRecord {
  std::size_t n_students = 0;
  std::size_t n_colleges = 0;
  std::string generator;
  double phi = 0.0;
  std::size_t mixture_size = 0;
  std::string capacity_method;
  Variant variant = Variant::kStudentProposing;
  std::size_t trial = 0;
  std::uint64_t seed = 0;
  std::uint64_t profile_digest = 0;  // capacities and both sides' lists
  std::size_t n_manipulable = 0;
  std::size_t n_eligible = 0;  // colleges passing the pruning conditions
  bool instance_manipulable = false;
  std::int64_t daa_micros = 0;
  std::int64_t finder_micros = 0;
  std::vector<bool> college_manipulable;  // not persisted in CSV
  std::vector<std::string> witnesses;     // verbose runs only
};

// Every requested variant and capacity method is evaluated on the same
// generated profile for a given (size, generator, trial). Records come back
// in canonical order: size, generator, capacity method, variant, trial, then
// fixtures. The result does not depend on the thread count.
std::vector<TrialRecord> run_experiment(const ExperimentConfig& config);

// FNV-1a over capacities and preference lists.
std::uint64_t profile_digest(const Market& market);

// Names accepted in ExperimentConfig::fixtures.
std::vector<std::string> fixture_names();
Market fixture_market(const std::string& name);

void write_csv(std::ostream& out, std::span<const TrialRecord> records);
std::vector<TrialRecord> read_csv(std::istream& in);  // MalformedInput on bad rows

// Matched-pair key: every cell field except the variant.
struct CellKey {
  std::size_t n_students = 0;
  std::size_t n_colleges = 0;
  std::string generator;
  double phi = 0.0;
  std::size_t mixture_size = 0;
  std::string capacity_method;
  auto operator<=>(const CellKey&) const = default;
};

struct CellStats {
  CellKey key;
  Variant variant = Variant::kStudentProposing;
  std::size_t trials = 0;
  std::size_t manipulable = 0;
  double fraction = 0.0;  // manipulable instances / trials
  // Mean share of manipulable colleges over the manipulable instances; zero
  // when there are none.
  double conditional_college_fraction = 0.0;
};

struct PooledStats {
  Variant variant = Variant::kStudentProposing;
  std::size_t cells = 0;
  double min_fraction = 0.0;
  double mean_fraction = 0.0;
  double max_fraction = 0.0;
  double mean_conditional_fraction = 0.0;  // over cells with a manipulable instance
};

// College-proposing minus student-proposing on the same profiles.
struct VariantDelta {
  CellKey key;
  std::size_t pairs = 0;
  double fraction_delta = 0.0;
  std::size_t only_college_proposing = 0;
  std::size_t only_student_proposing = 0;
};

struct SummaryStats {
  std::vector<CellStats> cells;
  std::vector<PooledStats> pooled;
  std::vector<VariantDelta> deltas;
};

// Throws MalformedInput on empty input or when records paired for a delta
// carry different profile digests.
SummaryStats summarize(std::span<const TrialRecord> records);
std::string format_summary(const SummaryStats& stats);
void write_summary_csv(std::ostream& out, const SummaryStats& stats);

}  // namespace daam
