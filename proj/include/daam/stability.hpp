#pragma once

#include <vector>

#include "daam/market.hpp"

namespace daam {

struct BlockingPair {
  StudentId student;
  CollegeId college;
  bool operator==(const BlockingPair&) const = default;
};

struct StabilityResult {
  bool stable = true;
  std::vector<BlockingPair> blocking_pairs;  // ordered by (student, college)
};

// Every (s, c) not matched together where s prefers c to its assignment (or
// is unmatched) and c has a free seat or prefers s to one of its members.
// Throws MalformedInput if `matching` is inconsistent with `market`.
StabilityResult is_stable(const Market& market, const Matching& matching);

}  // namespace daam
