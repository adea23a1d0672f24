#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "daam/ids.hpp"
#include "daam/market.hpp"

namespace daam {

enum class Dominance { kStrictlyBetter, kEqual, kStrictlyWorse, kIncomparable };

const char* to_string(Dominance d);

// Compares student sets `a` and `b` for a college with the given capacity
// under the responsive extension of `true_order`. Both sets are padded to
// `capacity` with an empty seat that ranks below every student, sorted
// best-first, and compared slot by slot.
//
// Only kStrictlyBetter counts as a beneficial change; kIncomparable is never
// collapsed into a tie.
//
// Throws MalformedInput if a set exceeds `capacity`, repeats a student, or
// contains a student missing from `true_order`.
Dominance responsive_dominates(std::span<const StudentId> true_order,
                               std::span<const StudentId> a, std::span<const StudentId> b,
                               std::size_t capacity);

// Same comparison using the true ranking of college `c` in `profile`.
Dominance responsive_dominates(const PreferenceProfile& profile, CollegeId c,
                               std::span<const StudentId> a, std::span<const StudentId> b,
                               std::size_t capacity);

// Rank vector of `set` under `c`'s ranking, sorted best-first and padded with
// `n_students` (the empty seat) up to `capacity`. Lexicographically smaller
// vectors are never responsively dominated by larger ones.
std::vector<std::size_t> slot_ranks(const PreferenceProfile& profile, CollegeId c,
                                    std::span<const StudentId> set, std::size_t capacity);

}  // namespace daam
