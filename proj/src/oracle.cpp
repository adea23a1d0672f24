#include "daam/oracle.hpp"

#include <algorithm>
#include <set>
#include <string>

#include "daam/errors.hpp"
#include "daam/responsive.hpp"

namespace daam {

OracleResult brute_force_oracle(const Market& market, CollegeId c, Variant variant,
                                std::size_t max_students) {
  if (index(c) >= market.n_colleges()) throw MalformedInput("unknown college");
  if (market.n_students() > max_students) {
    throw SizeGuardError("oracle refuses " + std::to_string(market.n_students()) +
                         " students (limit " + std::to_string(max_students) + ")");
  }
  const PreferenceProfile& prefs = market.profile();
  const std::size_t q = market.capacity(c);

  OracleResult result;
  const DaaResult truthful = run_daa(market, variant, {.record_trace = false});
  const auto truthful_span = truthful.matching.students_of(c);
  result.truthful.assign(truthful_span.begin(), truthful_span.end());

  std::set<std::vector<StudentId>> seen;
  std::vector<StudentId> list(market.n_students());
  for (std::size_t s = 0; s < list.size(); ++s) list[s] = student(s);
  Market scratch = market;
  do {
    scratch.set_college_list(c, list);
    ++result.daa_executions;
    const DaaResult run = run_daa(scratch, variant, {.record_trace = false});
    const auto got = run.matching.students_of(c);
    seen.emplace(got.begin(), got.end());
  } while (std::next_permutation(list.begin(), list.end()));

  result.outcomes.assign(seen.begin(), seen.end());
  std::sort(result.outcomes.begin(), result.outcomes.end(), [&](const auto& a, const auto& b) {
    return slot_ranks(prefs, c, a, q) < slot_ranks(prefs, c, b, q);
  });
  for (const auto& outcome : result.outcomes) {
    if (responsive_dominates(prefs, c, outcome, result.truthful, q) ==
        Dominance::kStrictlyBetter) {
      result.manipulable = true;
    }
    const bool dominated =
        std::any_of(result.outcomes.begin(), result.outcomes.end(), [&](const auto& other) {
          return responsive_dominates(prefs, c, other, outcome, q) == Dominance::kStrictlyBetter;
        });
    if (!dominated) result.maximal_outcomes.push_back(outcome);
  }
  return result;
}

}  // namespace daam
