#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

#include "daam/market.hpp"
#include "daam/rng.hpp"

namespace daam {

enum class GeneratorKind { kImpartialCulture, kMallowsMixture };
enum class Side { kStudents, kColleges };
enum class CapacityMethod { kMethod1, kMethod2 };

const char* to_string(GeneratorKind k);
const char* to_string(CapacityMethod m);

struct MallowsComponent {
  std::vector<std::uint32_t> reference;  // permutation of the ranked side
  double weight = 1.0;
  double phi = 0.5;  // dispersion in [0, 1]
};

// How one side of the market ranks the other. Rankings are over the
// opposite side: colleges for Side::kStudents, students for kColleges.
struct GeneratorSpec {
  GeneratorKind kind = GeneratorKind::kImpartialCulture;
  std::vector<MallowsComponent> components;  // Mallows only
  std::uint64_t seed = 0;
  Side side = Side::kStudents;

  // Throws ConfigError unless weights are positive and sum to 1 (1e-9),
  // every phi is in [0, 1] and every reference ranks `n_items` items.
  void validate(std::size_t n_items) const;
};

struct CapacitySpec {
  CapacityMethod method = CapacityMethod::kMethod1;
  std::uint64_t seed = 0;
};

GeneratorSpec impartial_culture(Side side, std::uint64_t seed);

// `mixture_size` equally weighted components sharing `phi`, each with a
// reference ranking drawn uniformly from a stream derived from `seed`.
GeneratorSpec mallows_mixture(Side side, std::size_t n_items, double phi,
                              std::size_t mixture_size, std::uint64_t seed);

// One ranking of `n_items` items. Impartial culture: Fisher-Yates.
// Mallows: pick a component by weight, then repeated insertion (item i of
// the reference goes to position j <= i with weight phi^(i-j)).
std::vector<std::uint32_t> sample_ranking(const GeneratorSpec& spec, std::size_t n_items,
                                          Rng& rng);

// Agent a on a side draws from Rng(derive_seed({spec.seed, side, a})), so
// growing a market leaves earlier agents' lists unchanged.
PreferenceProfile gen_profile(std::size_t n_students, std::size_t n_colleges,
                              const GeneratorSpec& student_spec,
                              const GeneratorSpec& college_spec);

// Method 1: i.i.d. uniform on {1..ceil(|S|/|C|)}. Method 2: the same draws,
// then random colleges gain a seat while total capacity is below |S|.
std::vector<std::size_t> gen_capacities(std::size_t n_students, std::size_t n_colleges,
                                        const CapacitySpec& spec);

}  // namespace daam
