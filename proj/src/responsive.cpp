#include "daam/responsive.hpp"

#include <algorithm>
#include <string>
#include <unordered_map>

#include "daam/errors.hpp"

namespace daam {
namespace {

Dominance compare_slots(const std::vector<std::size_t>& a, const std::vector<std::size_t>& b) {
  bool a_better_somewhere = false;
  bool b_better_somewhere = false;
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a[i] < b[i]) a_better_somewhere = true;
    if (b[i] < a[i]) b_better_somewhere = true;
  }
  if (a_better_somewhere && b_better_somewhere) return Dominance::kIncomparable;
  if (a_better_somewhere) return Dominance::kStrictlyBetter;
  if (b_better_somewhere) return Dominance::kStrictlyWorse;
  return Dominance::kEqual;
}

template <typename RankOf>
std::vector<std::size_t> padded_ranks(std::span<const StudentId> set, std::size_t capacity,
                                      std::size_t empty_seat, RankOf rank_of) {
  if (set.size() > capacity) {
    throw MalformedInput("student set of size " + std::to_string(set.size()) +
                         " exceeds capacity " + std::to_string(capacity));
  }
  std::vector<std::size_t> ranks;
  ranks.reserve(capacity);
  for (StudentId s : set) ranks.push_back(rank_of(s));
  std::sort(ranks.begin(), ranks.end());
  if (std::adjacent_find(ranks.begin(), ranks.end()) != ranks.end()) {
    throw MalformedInput("student set contains a repeated student");
  }
  ranks.resize(capacity, empty_seat);
  return ranks;
}

}  // namespace

const char* to_string(Dominance d) {
  switch (d) {
    case Dominance::kStrictlyBetter: return "strictlyBetter";
    case Dominance::kEqual: return "equal";
    case Dominance::kStrictlyWorse: return "strictlyWorse";
    case Dominance::kIncomparable: return "incomparable";
  }
  return "?";
}

Dominance responsive_dominates(std::span<const StudentId> true_order,
                               std::span<const StudentId> a, std::span<const StudentId> b,
                               std::size_t capacity) {
  std::unordered_map<StudentId, std::size_t> rank;
  for (std::size_t i = 0; i < true_order.size(); ++i) rank.emplace(true_order[i], i);
  auto rank_of = [&](StudentId s) {
    auto it = rank.find(s);
    if (it == rank.end()) {
      throw MalformedInput("student " + std::to_string(index(s)) + " is not in the ranking");
    }
    return it->second;
  };
  const std::size_t empty_seat = true_order.size();
  return compare_slots(padded_ranks(a, capacity, empty_seat, rank_of),
                       padded_ranks(b, capacity, empty_seat, rank_of));
}

Dominance responsive_dominates(const PreferenceProfile& profile, CollegeId c,
                               std::span<const StudentId> a, std::span<const StudentId> b,
                               std::size_t capacity) {
  return compare_slots(slot_ranks(profile, c, a, capacity), slot_ranks(profile, c, b, capacity));
}

std::vector<std::size_t> slot_ranks(const PreferenceProfile& profile, CollegeId c,
                                    std::span<const StudentId> set, std::size_t capacity) {
  return padded_ranks(set, capacity, profile.n_students(), [&](StudentId s) {
    if (index(s) >= profile.n_students()) {
      throw MalformedInput("student " + std::to_string(index(s)) + " is not in the ranking");
    }
    return profile.college_rank(c, s);
  });
}

}  // namespace daam
