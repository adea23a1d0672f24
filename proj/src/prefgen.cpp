#include "daam/prefgen.hpp"

#include <cmath>
#include <numeric>

#include "daam/errors.hpp"

namespace daam {
namespace {

std::vector<std::uint32_t> identity(std::size_t n) {
  std::vector<std::uint32_t> v(n);
  std::iota(v.begin(), v.end(), 0u);
  return v;
}

std::uint64_t side_tag(Side side) { return side == Side::kStudents ? 1 : 2; }

constexpr std::uint64_t kReferenceStream = 0x7265666572656e63ULL;
constexpr std::uint64_t kCapacityStream = 0x6361706163697479ULL;

std::vector<std::uint32_t> repeated_insertion(const std::vector<std::uint32_t>& reference,
                                              double phi, Rng& rng) {
  std::vector<std::uint32_t> ranking;
  ranking.reserve(reference.size());
  std::vector<double> weight(reference.size());
  for (std::size_t i = 1; i <= reference.size(); ++i) {
    // Position j in 1..i gets phi^(i-j); j = i keeps reference order.
    double total = 0.0;
    for (std::size_t j = 1; j <= i; ++j) {
      weight[j - 1] = std::pow(phi, static_cast<double>(i - j));
      total += weight[j - 1];
    }
    double u = rng.uniform01() * total;
    std::size_t pos = i - 1;
    for (std::size_t j = 0; j < i; ++j) {
      if (u < weight[j]) {
        pos = j;
        break;
      }
      u -= weight[j];
    }
    ranking.insert(ranking.begin() + static_cast<std::ptrdiff_t>(pos), reference[i - 1]);
  }
  return ranking;
}

}  // namespace

const char* to_string(GeneratorKind k) {
  return k == GeneratorKind::kImpartialCulture ? "ic" : "mallows";
}

const char* to_string(CapacityMethod m) {
  return m == CapacityMethod::kMethod1 ? "method1" : "method2";
}

void GeneratorSpec::validate(std::size_t n_items) const {
  if (kind == GeneratorKind::kImpartialCulture) return;
  if (components.empty()) throw ConfigError("Mallows mixture needs at least one component");
  double total = 0.0;
  for (const MallowsComponent& comp : components) {
    if (!(comp.weight > 0.0)) throw ConfigError("mixture weights must be positive");
    if (!(comp.phi >= 0.0 && comp.phi <= 1.0)) throw ConfigError("phi must lie in [0, 1]");
    if (comp.reference.size() != n_items) {
      throw ConfigError("reference ranking has " + std::to_string(comp.reference.size()) +
                        " items, expected " + std::to_string(n_items));
    }
    std::vector<bool> seen(n_items, false);
    for (std::uint32_t item : comp.reference) {
      if (item >= n_items || seen[item]) {
        throw ConfigError("reference ranking is not a permutation");
      }
      seen[item] = true;
    }
    total += comp.weight;
  }
  if (std::abs(total - 1.0) > 1e-9) throw ConfigError("mixture weights must sum to 1");
}

GeneratorSpec impartial_culture(Side side, std::uint64_t seed) {
  return GeneratorSpec{GeneratorKind::kImpartialCulture, {}, seed, side};
}

GeneratorSpec mallows_mixture(Side side, std::size_t n_items, double phi,
                              std::size_t mixture_size, std::uint64_t seed) {
  if (mixture_size == 0) throw ConfigError("mixture size must be positive");
  GeneratorSpec spec{GeneratorKind::kMallowsMixture, {}, seed, side};
  Rng rng(derive_seed({seed, side_tag(side), kReferenceStream}));
  for (std::size_t k = 0; k < mixture_size; ++k) {
    auto reference = identity(n_items);
    rng.shuffle(reference.begin(), reference.end());
    spec.components.push_back(
        {std::move(reference), 1.0 / static_cast<double>(mixture_size), phi});
  }
  spec.validate(n_items);
  return spec;
}

std::vector<std::uint32_t> sample_ranking(const GeneratorSpec& spec, std::size_t n_items,
                                          Rng& rng) {
  spec.validate(n_items);
  if (spec.kind == GeneratorKind::kImpartialCulture) {
    auto ranking = identity(n_items);
    rng.shuffle(ranking.begin(), ranking.end());
    return ranking;
  }
  const MallowsComponent* chosen = &spec.components.back();
  double u = rng.uniform01();
  for (const MallowsComponent& comp : spec.components) {
    if (u < comp.weight) {
      chosen = &comp;
      break;
    }
    u -= comp.weight;
  }
  return repeated_insertion(chosen->reference, chosen->phi, rng);
}

PreferenceProfile gen_profile(std::size_t n_students, std::size_t n_colleges,
                              const GeneratorSpec& student_spec,
                              const GeneratorSpec& college_spec) {
  if (student_spec.side != Side::kStudents || college_spec.side != Side::kColleges) {
    throw ConfigError("generator spec used for the wrong side");
  }
  student_spec.validate(n_colleges);
  college_spec.validate(n_students);

  std::vector<std::vector<CollegeId>> student_prefs(n_students);
  for (std::size_t s = 0; s < n_students; ++s) {
    Rng rng(derive_seed({student_spec.seed, side_tag(Side::kStudents), s}));
    for (std::uint32_t c : sample_ranking(student_spec, n_colleges, rng)) {
      student_prefs[s].push_back(CollegeId{c});
    }
  }
  std::vector<std::vector<StudentId>> college_prefs(n_colleges);
  for (std::size_t c = 0; c < n_colleges; ++c) {
    Rng rng(derive_seed({college_spec.seed, side_tag(Side::kColleges), c}));
    for (std::uint32_t s : sample_ranking(college_spec, n_students, rng)) {
      college_prefs[c].push_back(StudentId{s});
    }
  }
  return PreferenceProfile(std::move(student_prefs), std::move(college_prefs));
}

std::vector<std::size_t> gen_capacities(std::size_t n_students, std::size_t n_colleges,
                                        const CapacitySpec& spec) {
  if (n_colleges == 0) throw ConfigError("at least one college is required");
  Rng rng(derive_seed({spec.seed, kCapacityStream}));
  const std::size_t upper = std::max<std::size_t>(1, (n_students + n_colleges - 1) / n_colleges);
  std::vector<std::size_t> q(n_colleges);
  for (auto& cap : q) cap = 1 + rng.uniform_below(upper);
  if (spec.method == CapacityMethod::kMethod2) {
    std::size_t total = std::accumulate(q.begin(), q.end(), std::size_t{0});
    while (total < n_students) {
      ++q[rng.uniform_below(n_colleges)];
      ++total;
    }
  }
  return q;
}

}  // namespace daam
