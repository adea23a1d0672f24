#pragma once

#include <cstddef>
#include <vector>

#include "daam/daa.hpp"
#include "daam/market.hpp"

namespace daam {

constexpr std::size_t kDefaultOracleMaxStudents = 8;

struct OracleResult {
  bool manipulable = false;
  std::vector<StudentId> truthful;  // c's truthful match, sorted by index
  // Every outcome c can reach with some complete list, sorted by index
  // within a set; sets ordered best-first lexicographically.
  std::vector<std::vector<StudentId>> outcomes;
  // The outcomes not strictly dominated by any other reachable outcome.
  std::vector<std::vector<StudentId>> maximal_outcomes;
  std::size_t daa_executions = 0;
};

// Runs DAA for every permutation of c's list. Refuses with SizeGuardError
// when the market has more than `max_students` students.
OracleResult brute_force_oracle(const Market& market, CollegeId c, Variant variant,
                                std::size_t max_students = kDefaultOracleMaxStudents);

}  // namespace daam
