#include "daam/experiment.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cstdio>
#include <exception>
#include <fstream>
#include <istream>
#include <mutex>
#include <ostream>
#include <sstream>
#include <thread>

#include "daam/errors.hpp"
#include "daam/fixtures.hpp"
#include "daam/manipulation.hpp"
#include "daam/oracle.hpp"
#include "daam/rng.hpp"

namespace daam {
namespace {

using nlohmann::json;
using Clock = std::chrono::steady_clock;

const char* const kCsvHeader =
    "nStudents,nColleges,generator,phi,mixtureSize,capacityMethod,variant,trial,seed,"
    "profileDigest,nManipulableColleges,nEligibleColleges,instanceManipulable,daaMicros,"
    "finderMicros";

std::int64_t micros_since(Clock::time_point start) {
  return std::chrono::duration_cast<std::chrono::microseconds>(Clock::now() - start).count();
}

template <typename T>
T get_or(const json& doc, const char* key, T fallback) {
  if (!doc.contains(key)) return fallback;
  try {
    return doc.at(key).get<T>();
  } catch (const json::exception&) {
    throw ConfigError(std::string("config field \"") + key + "\" has the wrong type");
  }
}

Variant parse_variant(const std::string& name) {
  if (name == "studentProposing") return Variant::kStudentProposing;
  if (name == "collegeProposing") return Variant::kCollegeProposing;
  throw ConfigError("unknown variant '" + name + "'");
}

CapacityMethod parse_capacity_method(const std::string& name) {
  if (name == "method1") return CapacityMethod::kMethod1;
  if (name == "method2") return CapacityMethod::kMethod2;
  throw ConfigError("unknown capacity method '" + name + "'");
}

GeneratorSpec generator_spec(const GeneratorConfig& g, Side side, std::size_t n_items,
                             std::uint64_t seed) {
  if (g.kind == GeneratorKind::kImpartialCulture) return impartial_culture(side, seed);
  return mallows_mixture(side, n_items, g.phi, g.mixture_size, seed);
}

std::string student_names(const Market& market, std::span<const StudentId> students) {
  std::string out;
  for (StudentId s : students) {
    if (!out.empty()) out += ' ';
    out += market.student_name(s);
  }
  return out;
}

// Evaluates one variant on one market.
TrialRecord evaluate(const Market& market, Variant variant, const ExperimentConfig& config) {
  TrialRecord rec;
  rec.n_students = market.n_students();
  rec.n_colleges = market.n_colleges();
  rec.variant = variant;
  rec.profile_digest = profile_digest(market);
  rec.college_manipulable.assign(market.n_colleges(), false);

  auto start = Clock::now();
  const DaaResult truthful = run_daa(market, variant);
  if (config.timing) rec.daa_micros = micros_since(start);

  start = Clock::now();
  for (std::size_t i = 0; i < market.n_colleges(); ++i) {
    const CollegeId c = college(i);
    std::optional<ManipulationReport> report;
    if (variant == Variant::kStudentProposing) {
      if (!may_manipulate_student_proposing(market, c, truthful)) continue;
      ++rec.n_eligible;
      report = find_manipulation_student_proposing(market, c, truthful);
    } else {
      if (!may_manipulate_college_proposing(market, c, truthful)) continue;
      ++rec.n_eligible;
      report = find_manipulation_college_proposing(market, c, false, truthful);
    }
    if (!report) continue;
    rec.college_manipulable[i] = true;
    ++rec.n_manipulable;
    if (config.verbose) {
      rec.witnesses.push_back(market.college_name(c) + ": lost [" +
                              student_names(market, report->lost) + "] gained [" +
                              student_names(market, report->gained) + "] report [" +
                              student_names(market, report->reported_list) + "]");
    }
  }
  if (config.timing) rec.finder_micros = micros_since(start);
  rec.instance_manipulable = rec.n_manipulable > 0;

  if (config.oracle_cross_check && market.n_students() <= kDefaultOracleMaxStudents) {
    for (std::size_t i = 0; i < market.n_colleges(); ++i) {
      const bool expected = brute_force_oracle(market, college(i), variant).manipulable;
      if (expected != rec.college_manipulable[i]) {
        throw Error("oracle cross-check failed for college " + market.college_name(college(i)) +
                    " under " + to_string(variant));
      }
    }
  }
  return rec;
}

std::string format_double(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.6g", v);
  return buf;
}

std::string format_hex(std::uint64_t v) {
  char buf[24];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(v));
  return buf;
}

}  // namespace

std::string GeneratorConfig::label() const { return to_string(kind); }

void ExperimentConfig::validate() const {
  if (sizes.empty()) throw ConfigError("no market sizes given");
  if (trials < 1) throw ConfigError("trials must be at least 1");
  if (variants.empty()) throw ConfigError("no variants given");
  if (capacity_methods.empty()) throw ConfigError("no capacity methods given");
  if (generators.empty()) throw ConfigError("no generators given");
  for (const MarketSize& size : sizes) {
    if (size.students < 1 || size.colleges < 1) throw ConfigError("market sizes must be positive");
  }
  for (const GeneratorConfig& g : generators) {
    if (g.kind == GeneratorKind::kMallowsMixture) {
      if (!(g.phi >= 0.0 && g.phi <= 1.0)) throw ConfigError("phi must lie in [0, 1]");
      if (g.mixture_size < 1) throw ConfigError("mixture size must be positive");
    }
  }
  const auto known = fixture_names();
  for (const std::string& name : fixtures) {
    if (std::find(known.begin(), known.end(), name) == known.end()) {
      throw ConfigError("unknown fixture '" + name + "'");
    }
  }
}

ExperimentConfig config_from_json(const json& doc) {
  if (!doc.is_object()) throw ConfigError("config must be a JSON object");
  static const std::vector<std::string> allowed = {
      "sizes", "trials", "generators", "capacityMethods", "variants", "masterSeed", "threads",
      "oracleCrossCheck", "verbose", "timing", "fixtures", "output"};
  for (const auto& [key, value] : doc.items()) {
    if (std::find(allowed.begin(), allowed.end(), key) == allowed.end()) {
      throw ConfigError("unknown config field \"" + key + "\"");
    }
  }

  ExperimentConfig config;
  for (const json& size : get_or(doc, "sizes", json::array())) {
    config.sizes.push_back({get_or<std::size_t>(size, "students", 0),
                            get_or<std::size_t>(size, "colleges", 0)});
  }
  const auto trials = get_or<long long>(doc, "trials", 1);
  if (trials < 1) throw ConfigError("trials must be at least 1");
  config.trials = static_cast<std::size_t>(trials);
  const json generators =
      get_or(doc, "generators", json::array({json{{"kind", "ic"}}}));
  for (const json& g : generators) {
    const auto kind = get_or<std::string>(g, "kind", "");
    GeneratorConfig gen;
    if (kind == "ic") {
      gen.kind = GeneratorKind::kImpartialCulture;
    } else if (kind == "mallows") {
      gen.kind = GeneratorKind::kMallowsMixture;
      gen.phi = get_or<double>(g, "phi", -1.0);
      gen.mixture_size = get_or<std::size_t>(g, "mixtureSize", 0);
    } else {
      throw ConfigError("unknown generator kind '" + kind + "'");
    }
    config.generators.push_back(gen);
  }
  for (const auto& m : get_or(doc, "capacityMethods", std::vector<std::string>{"method1"})) {
    config.capacity_methods.push_back(parse_capacity_method(m));
  }
  for (const auto& v : get_or(doc, "variants", std::vector<std::string>{})) {
    config.variants.push_back(parse_variant(v));
  }
  config.master_seed = get_or<std::uint64_t>(doc, "masterSeed", 0);
  config.threads = get_or<std::size_t>(doc, "threads", 1);
  config.oracle_cross_check = get_or(doc, "oracleCrossCheck", false);
  config.verbose = get_or(doc, "verbose", false);
  config.timing = get_or(doc, "timing", false);
  config.fixtures = get_or(doc, "fixtures", std::vector<std::string>{});
  const json output = get_or(doc, "output", json::object());
  config.csv_path = get_or<std::string>(output, "csv", "");
  config.summary_path = get_or<std::string>(output, "summary", "");
  config.witness_path = get_or<std::string>(output, "witnesses", "");
  config.validate();
  return config;
}

ExperimentConfig load_config(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open " + path.string());
  try {
    return config_from_json(json::parse(in));
  } catch (const json::parse_error& e) {
    throw ConfigError(path.string() + " is not valid JSON: " + e.what());
  }
}

std::uint64_t profile_digest(const Market& market) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  auto mix = [&](std::uint64_t v) {
    for (int i = 0; i < 8; ++i) {
      h ^= (v >> (8 * i)) & 0xff;
      h *= 0x100000001b3ULL;
    }
  };
  mix(market.n_students());
  mix(market.n_colleges());
  for (std::size_t q : market.capacities()) mix(q);
  for (std::size_t s = 0; s < market.n_students(); ++s) {
    for (CollegeId c : market.profile().student_list(student(s))) mix(index(c));
  }
  for (std::size_t c = 0; c < market.n_colleges(); ++c) {
    for (StudentId s : market.profile().college_list(college(c))) mix(index(s));
  }
  return h;
}

std::vector<std::string> fixture_names() {
  return {"rejection_chain", "demotion_gap", "seat_gap", "offer_gap"};
}

Market fixture_market(const std::string& name) {
  if (name == "rejection_chain") return fixtures::rejection_chain_market();
  if (name == "demotion_gap") return fixtures::demotion_gap_market();
  if (name == "seat_gap") return fixtures::seat_gap_market();
  if (name == "offer_gap") return fixtures::offer_gap_market();
  throw ConfigError("unknown fixture '" + name + "'");
}

std::vector<TrialRecord> run_experiment(const ExperimentConfig& config) {
  config.validate();
  const std::size_t n_sizes = config.sizes.size();
  const std::size_t n_gens = config.generators.size();
  const std::size_t n_methods = config.capacity_methods.size();
  const std::size_t n_variants = config.variants.size();
  const std::size_t T = config.trials;
  const std::size_t n_units = n_sizes * n_gens * T;
  const std::size_t per_unit = n_methods * n_variants;

  std::vector<TrialRecord> records(n_units * per_unit +
                                   config.fixtures.size() * n_variants);

  // Unit u = (size, generator, trial); its records land in canonical slots.
  auto run_unit = [&](std::size_t u) {
    const std::size_t trial = u % T;
    const std::size_t g = (u / T) % n_gens;
    const std::size_t i = u / (T * n_gens);
    const MarketSize size = config.sizes[i];
    const GeneratorConfig& gen = config.generators[g];
    const std::uint64_t seed = derive_seed({config.master_seed, i, g, trial});
    const PreferenceProfile profile = gen_profile(
        size.students, size.colleges,
        generator_spec(gen, Side::kStudents, size.colleges, derive_seed({seed, 1})),
        generator_spec(gen, Side::kColleges, size.students, derive_seed({seed, 2})));
    for (std::size_t m = 0; m < n_methods; ++m) {
      const CapacityMethod method = config.capacity_methods[m];
      const Market market(
          gen_capacities(size.students, size.colleges, {method, derive_seed({seed, 3})}), profile);
      for (std::size_t v = 0; v < n_variants; ++v) {
        TrialRecord rec = evaluate(market, config.variants[v], config);
        rec.generator = gen.label();
        rec.phi = gen.kind == GeneratorKind::kMallowsMixture ? gen.phi : 0.0;
        rec.mixture_size = gen.kind == GeneratorKind::kMallowsMixture ? gen.mixture_size : 0;
        rec.capacity_method = to_string(method);
        rec.trial = trial;
        rec.seed = seed;
        records[(((i * n_gens + g) * n_methods + m) * n_variants + v) * T + trial] =
            std::move(rec);
      }
    }
  };

  std::size_t threads = config.threads == 0 ? std::thread::hardware_concurrency() : config.threads;
  threads = std::max<std::size_t>(1, std::min(threads, n_units));
  std::atomic<std::size_t> next{0};
  std::exception_ptr failure;
  std::mutex failure_mutex;
  auto worker = [&] {
    for (std::size_t u = next++; u < n_units; u = next++) {
      try {
        run_unit(u);
      } catch (...) {
        std::lock_guard lock(failure_mutex);
        if (!failure) failure = std::current_exception();
        next = n_units;
      }
    }
  };
  {
    std::vector<std::jthread> pool;
    for (std::size_t t = 1; t < threads; ++t) pool.emplace_back(worker);
    worker();
  }
  if (failure) std::rethrow_exception(failure);

  std::size_t slot = n_units * per_unit;
  for (const std::string& name : config.fixtures) {
    const Market market = fixture_market(name);
    for (Variant variant : config.variants) {
      TrialRecord rec = evaluate(market, variant, config);
      rec.generator = "fixture:" + name;
      rec.capacity_method = "fixed";
      records[slot++] = std::move(rec);
    }
  }
  return records;
}

void write_csv(std::ostream& out, std::span<const TrialRecord> records) {
  out << kCsvHeader << '\n';
  for (const TrialRecord& r : records) {
    out << r.n_students << ',' << r.n_colleges << ',' << r.generator << ','
        << format_double(r.phi) << ',' << r.mixture_size << ',' << r.capacity_method << ','
        << to_string(r.variant) << ',' << r.trial << ',' << r.seed << ','
        << format_hex(r.profile_digest) << ',' << r.n_manipulable << ',' << r.n_eligible << ','
        << (r.instance_manipulable ? "true" : "false") << ',' << r.daa_micros << ','
        << r.finder_micros << '\n';
  }
}

std::vector<TrialRecord> read_csv(std::istream& in) {
  std::string line;
  if (!std::getline(in, line) || line != kCsvHeader) {
    throw MalformedInput("CSV header does not match the trial record layout");
  }
  std::vector<TrialRecord> records;
  std::size_t line_no = 1;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty()) continue;
    std::vector<std::string> f;
    std::stringstream ss(line);
    for (std::string cell; std::getline(ss, cell, ',');) f.push_back(cell);
    if (f.size() != 15) {
      throw MalformedInput("CSV line " + std::to_string(line_no) + ": expected 15 fields");
    }
    try {
      TrialRecord r;
      r.n_students = std::stoull(f[0]);
      r.n_colleges = std::stoull(f[1]);
      r.generator = f[2];
      r.phi = std::stod(f[3]);
      r.mixture_size = std::stoull(f[4]);
      r.capacity_method = f[5];
      r.variant = parse_variant(f[6]);
      r.trial = std::stoull(f[7]);
      r.seed = std::stoull(f[8]);
      r.profile_digest = std::stoull(f[9], nullptr, 16);
      r.n_manipulable = std::stoull(f[10]);
      r.n_eligible = std::stoull(f[11]);
      if (f[12] != "true" && f[12] != "false") throw std::invalid_argument("flag");
      r.instance_manipulable = f[12] == "true";
      r.daa_micros = std::stoll(f[13]);
      r.finder_micros = std::stoll(f[14]);
      records.push_back(std::move(r));
    } catch (const std::logic_error&) {
      throw MalformedInput("CSV line " + std::to_string(line_no) + ": malformed field");
    }
  }
  return records;
}

}  // namespace daam
