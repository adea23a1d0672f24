#include "daam/stability.hpp"

#include <algorithm>

namespace daam {

StabilityResult is_stable(const Market& market, const Matching& matching) {
  matching.validate(market);
  const PreferenceProfile& prefs = market.profile();

  // Worst member per college under its (reported) ranking.
  std::vector<std::size_t> worst_rank(market.n_colleges(), 0);
  for (std::size_t c = 0; c < market.n_colleges(); ++c) {
    for (StudentId s : matching.students_of(college(c))) {
      worst_rank[c] = std::max(worst_rank[c], prefs.college_rank(college(c), s));
    }
  }

  StabilityResult result;
  for (std::size_t si = 0; si < market.n_students(); ++si) {
    const StudentId s = student(si);
    const auto current = matching.college_of(s);
    const std::size_t current_rank =
        current ? prefs.student_rank(s, *current) : market.n_colleges();
    for (CollegeId c : prefs.student_list(s)) {
      if (prefs.student_rank(s, c) >= current_rank) break;
      const bool has_room = matching.students_of(c).size() < market.capacity(c);
      if (has_room || prefs.college_rank(c, s) < worst_rank[index(c)]) {
        result.blocking_pairs.push_back({s, c});
      }
    }
  }
  std::sort(result.blocking_pairs.begin(), result.blocking_pairs.end(),
            [](const BlockingPair& x, const BlockingPair& y) {
              return std::pair(x.student, x.college) < std::pair(y.student, y.college);
            });
  result.stable = result.blocking_pairs.empty();
  return result;
}

}  // namespace daam
