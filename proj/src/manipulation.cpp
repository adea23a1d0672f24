#include "daam/manipulation.hpp"

#include <algorithm>
#include <string>
#include <utility>

#include "daam/errors.hpp"
#include "daam/responsive.hpp"
#include "daam/seats.hpp"

namespace daam {
namespace {

std::vector<StudentId> members_of(const Matching& m, CollegeId c) {
  const auto span = m.students_of(c);
  return {span.begin(), span.end()};
}

std::vector<StudentId> set_difference(const PreferenceProfile& prefs, CollegeId c,
                                      std::span<const StudentId> a,
                                      std::span<const StudentId> b) {
  std::vector<StudentId> out;
  for (StudentId s : a) {
    if (std::find(b.begin(), b.end(), s) == b.end()) out.push_back(s);
  }
  return sorted_by_college(prefs, c, std::move(out));
}

// Students that tentatively held (or were held by) `c` during `run`.
std::vector<StudentId> ever_held(const DaaResult& run, CollegeId c) {
  std::vector<StudentId> out;
  if (run.trace.variant == Variant::kStudentProposing) {
    for (std::uint32_t s : run.trace.ever_held_by(index(c))) out.push_back(student(s));
  } else {
    for (std::size_t s = 0; s < run.trace.received.size(); ++s) {
      const auto colleges = run.trace.ever_held_by(s);
      if (std::find(colleges.begin(), colleges.end(), index(c)) != colleges.end()) {
        out.push_back(student(s));
      }
    }
  }
  return out;
}

void check_college(const Market& market, CollegeId c) {
  if (index(c) >= market.n_colleges()) throw MalformedInput("unknown college");
}

std::vector<StudentId> true_list(const Market& market, CollegeId c) {
  const auto list = market.profile().college_list(c);
  return {list.begin(), list.end()};
}

// Candidate ordering shared by the finders: lexicographically smaller slot
// rank vectors are better; earlier candidates win ties.
struct Best {
  std::vector<std::size_t> ranks;
  std::vector<StudentId> list;
  std::optional<Demotion> demotion;
  std::vector<StudentId> withheld;
  bool single_loss = false;
};

}  // namespace

std::vector<StudentId> apply_demotion(std::span<const StudentId> list, Demotion d) {
  std::vector<StudentId> out(list.begin(), list.end());
  auto it = std::find(out.begin(), out.end(), d.student);
  if (it == out.end() || d.position >= out.size()) {
    throw MalformedInput("demotion outside the preference list");
  }
  out.erase(it);
  out.insert(out.begin() + static_cast<std::ptrdiff_t>(d.position), d.student);
  return out;
}

ManipulationReport evaluate_report(const Market& market, CollegeId c, Variant variant,
                                   std::vector<StudentId> reported_list,
                                   const DaaResult& truthful) {
  check_college(market, c);
  const PreferenceProfile& prefs = market.profile();
  DaaResult run = run_daa(market.with_college_list(c, reported_list), variant);

  ManipulationReport report;
  report.college = c;
  report.variant = variant;
  report.reported_list = std::move(reported_list);
  const auto before = members_of(truthful.matching, c);
  const auto after = members_of(run.matching, c);
  report.lost = set_difference(prefs, c, before, after);
  report.gained = set_difference(prefs, c, after, before);
  report.beneficial = responsive_dominates(prefs, c, after, before, market.capacity(c)) ==
                      Dominance::kStrictlyBetter;

  for (StudentId u : set_difference(prefs, c, ever_held(run, c), after)) {
    const bool below_lost = std::all_of(report.lost.begin(), report.lost.end(), [&](StudentId t) {
      return prefs.college_rank(c, u) > prefs.college_rank(c, t);
    });
    if (below_lost) report.temp_held.push_back(u);
  }
  report.result = std::move(run.matching);
  return report;
}

bool may_manipulate_student_proposing(const Market& market, CollegeId c,
                                      const DaaResult& truthful) {
  check_college(market, c);
  const std::size_t q = market.capacity(c);
  return truthful.matching.students_of(c).size() == q && truthful.trace.proposals_to(index(c)) > q;
}

bool may_manipulate_college_proposing(const Market& market, CollegeId c,
                                      const DaaResult& truthful) {
  check_college(market, c);
  const std::size_t q = market.capacity(c);
  return q > 1 && truthful.matching.students_of(c).size() == q;
}

namespace {

// A list that makes the student-proposing run give `c` exactly `target`, or
// nothing if no report does. Any such list may be rearranged to rank
// `target` first without changing the run, and the run then ends in the
// matching reached when c accepts only `target`. Whether that matching is
// also the student-optimal one for the full list depends only on which of
// the other students who apply to c is ranked first, so each is tried.
std::optional<std::vector<StudentId>> list_reaching(const Market& market, CollegeId c,
                                                    std::vector<StudentId> target,
                                                    Market& scratch, std::size_t& executions) {
  const PreferenceProfile& prefs = market.profile();
  std::sort(target.begin(), target.end());
  ++executions;
  const DaaResult restricted = run_daa(market, Variant::kStudentProposing,
                                       {.truncation = Truncation{c, target}});
  const auto got = restricted.matching.students_of(c);
  if (!std::equal(got.begin(), got.end(), target.begin(), target.end())) return std::nullopt;

  std::vector<StudentId> outsiders;
  for (const Proposal& p : restricted.trace.received[index(c)]) {
    const StudentId s = student(p.proposer);
    if (!std::binary_search(target.begin(), target.end(), s)) outsiders.push_back(s);
  }
  const auto top = sorted_by_college(prefs, c, target);
  auto list_with_first = [&](std::optional<StudentId> first) {
    std::vector<StudentId> list = top;
    if (first) list.push_back(*first);
    for (StudentId s : prefs.college_list(c)) {
      if (!std::binary_search(target.begin(), target.end(), s) && s != first) list.push_back(s);
    }
    return list;
  };
  std::vector<std::optional<StudentId>> firsts(outsiders.begin(), outsiders.end());
  if (firsts.empty()) firsts.push_back(std::nullopt);
  for (std::optional<StudentId> first : firsts) {
    auto list = list_with_first(first);
    scratch.set_college_list(c, list);
    ++executions;
    const DaaResult run = run_daa(scratch, Variant::kStudentProposing, {.record_trace = false});
    const auto outcome = run.matching.students_of(c);
    if (std::equal(outcome.begin(), outcome.end(), target.begin(), target.end())) return list;
  }
  return std::nullopt;
}

struct Step {
  std::vector<StudentId> members;
  std::vector<StudentId> list;
};

// Best reachable set that swaps one member of `current` for a student `c`
// truly prefers to it. Candidates are tried lexicographically best first.
std::optional<Step> best_swap(const Market& market, CollegeId c,
                              std::span<const StudentId> current, std::size_t& executions) {
  const PreferenceProfile& prefs = market.profile();
  const std::size_t q = market.capacity(c);
  std::vector<std::pair<std::vector<std::size_t>, std::vector<StudentId>>> candidates;
  for (StudentId t : current) {
    for (StudentId s : prefs.college_list(c)) {
      if (prefs.college_rank(c, s) >= prefs.college_rank(c, t)) break;
      if (std::find(current.begin(), current.end(), s) != current.end()) continue;
      std::vector<StudentId> members;
      for (StudentId x : current) {
        if (x != t) members.push_back(x);
      }
      members.push_back(s);
      candidates.emplace_back(slot_ranks(prefs, c, members, q), std::move(members));
    }
  }
  std::sort(candidates.begin(), candidates.end());
  Market scratch = market;
  for (auto& [ranks, members] : candidates) {
    if (auto list = list_reaching(market, c, members, scratch, executions)) {
      return Step{sorted_by_college(prefs, c, std::move(members)), std::move(*list)};
    }
  }
  return std::nullopt;
}

// One round of the single-demotion search relative to `baseline`, the
// outcome c currently secures with `reported`. Candidates must strictly
// dominate `baseline` under c's true ranking.
std::optional<Best> best_single_demotion(const Market& market, CollegeId c,
                                         std::span<const StudentId> reported,
                                         std::span<const StudentId> baseline,
                                         std::size_t& executions) {
  const PreferenceProfile& prefs = market.profile();
  const std::size_t q = market.capacity(c);
  Market scratch = market;
  std::optional<Best> best;

  const auto ordered = sorted_by_college(prefs, c, {baseline.begin(), baseline.end()});
  for (StudentId t : ordered) {
    const auto from = static_cast<std::size_t>(
        std::find(reported.begin(), reported.end(), t) - reported.begin());
    for (std::size_t to = from + 1; to < reported.size(); ++to) {
      const Demotion d{t, to};
      auto list = apply_demotion(reported, d);
      scratch.set_college_list(c, list);
      ++executions;
      const DaaResult run = run_daa(scratch, Variant::kStudentProposing, {.record_trace = false});
      const auto outcome = run.matching.students_of(c);
      if (responsive_dominates(prefs, c, outcome, baseline, q) != Dominance::kStrictlyBetter) {
        continue;
      }
      std::size_t kept = 0;
      for (StudentId s : outcome) {
        kept += std::count(baseline.begin(), baseline.end(), s);
      }
      const bool single_loss = kept + 1 == baseline.size();
      auto ranks = slot_ranks(prefs, c, outcome, q);
      const bool better = !best || (single_loss && !best->single_loss) ||
                          (single_loss == best->single_loss && ranks < best->ranks);
      if (better) best = Best{std::move(ranks), std::move(list), d, {}, single_loss};
    }
  }
  return best;
}

}  // namespace

std::optional<ManipulationReport> find_manipulation_student_proposing(const Market& market,
                                                                      CollegeId c) {
  return find_manipulation_student_proposing(market, c,
                                             run_daa(market, Variant::kStudentProposing));
}

std::optional<ManipulationReport> find_manipulation_student_proposing(
    const Market& market, CollegeId c, const DaaResult& truthful) {
  if (!may_manipulate_student_proposing(market, c, truthful)) return std::nullopt;
  std::size_t executions = 0;
  auto step = best_swap(market, c, truthful.matching.students_of(c), executions);
  if (!step) return std::nullopt;
  ManipulationReport report =
      evaluate_report(market, c, Variant::kStudentProposing, std::move(step->list), truthful);
  report.daa_executions = executions;
  report.iterations = 1;
  return report;
}

ManipulationReport find_optimal_manipulation_student_proposing(const Market& market,
                                                               CollegeId c) {
  check_college(market, c);
  const DaaResult truthful = run_daa(market, Variant::kStudentProposing);
  auto reported = true_list(market, c);
  std::size_t executions = 0;
  std::size_t iterations = 0;
  if (may_manipulate_student_proposing(market, c, truthful)) {
    auto current = members_of(truthful.matching, c);
    while (auto step = best_swap(market, c, current, executions)) {
      current = std::move(step->members);
      reported = std::move(step->list);
      ++iterations;
    }
  }
  ManipulationReport report =
      evaluate_report(market, c, Variant::kStudentProposing, std::move(reported), truthful);
  report.daa_executions = executions;
  report.iterations = iterations;
  return report;
}

std::optional<ManipulationReport> find_single_demotion_manipulation(const Market& market,
                                                                    CollegeId c,
                                                                    const DaaResult& truthful) {
  if (!may_manipulate_student_proposing(market, c, truthful)) return std::nullopt;
  const auto reported = true_list(market, c);
  const auto baseline = members_of(truthful.matching, c);
  std::size_t executions = 0;
  auto best = best_single_demotion(market, c, reported, baseline, executions);
  if (!best) return std::nullopt;
  ManipulationReport report =
      evaluate_report(market, c, Variant::kStudentProposing, std::move(best->list), truthful);
  report.demotion = best->demotion;
  report.daa_executions = executions;
  return report;
}

std::optional<ManipulationReport> find_manipulation_college_proposing(const Market& market,
                                                                      CollegeId c,
                                                                      bool optimal) {
  return find_manipulation_college_proposing(market, c, optimal,
                                             run_daa(market, Variant::kCollegeProposing));
}

namespace {

// Reports the true order with a subset R of `candidates` moved to the end,
// for every non-empty R.
std::optional<ManipulationReport> withholding_search(const Market& market, CollegeId c,
                                                     bool optimal, const DaaResult& truthful,
                                                     const std::vector<StudentId>& candidates) {
  const PreferenceProfile& prefs = market.profile();
  const std::size_t q = market.capacity(c);
  const auto baseline = members_of(truthful.matching, c);
  const auto truth = true_list(market, c);
  Market scratch = market;
  std::optional<Best> best;
  std::size_t executions = 0;
  const std::size_t n_subsets = std::size_t{1} << candidates.size();
  for (std::size_t mask = 1; mask < n_subsets; ++mask) {
    std::vector<StudentId> withheld;
    for (std::size_t i = 0; i < candidates.size(); ++i) {
      if (mask & (std::size_t{1} << i)) withheld.push_back(candidates[i]);
    }
    std::vector<StudentId> list;
    list.reserve(truth.size());
    for (StudentId s : truth) {
      if (std::find(withheld.begin(), withheld.end(), s) == withheld.end()) list.push_back(s);
    }
    list.insert(list.end(), withheld.begin(), withheld.end());

    scratch.set_college_list(c, list);
    ++executions;
    const DaaResult run = run_daa(scratch, Variant::kCollegeProposing, {.record_trace = false});
    const auto outcome = run.matching.students_of(c);
    if (responsive_dominates(prefs, c, outcome, baseline, q) != Dominance::kStrictlyBetter) {
      continue;
    }
    auto ranks = slot_ranks(prefs, c, outcome, q);
    if (!best || ranks < best->ranks) {
      best = Best{std::move(ranks), std::move(list), std::nullopt, std::move(withheld), false};
    }
    if (!optimal) break;
  }
  if (!best) return std::nullopt;

  ManipulationReport report =
      evaluate_report(market, c, Variant::kCollegeProposing, std::move(best->list), truthful);
  report.withheld = std::move(best->withheld);
  report.daa_executions = executions;
  return report;
}

}  // namespace

std::optional<ManipulationReport> find_manipulation_college_proposing(
    const Market& market, CollegeId c, bool optimal, const DaaResult& truthful) {
  if (!may_manipulate_college_proposing(market, c, truthful)) return std::nullopt;
  // Everyone but the worst member may be withheld.
  auto candidates = sorted_by_college(market.profile(), c, members_of(truthful.matching, c));
  candidates.pop_back();
  return withholding_search(market, c, optimal, truthful, candidates);
}

std::optional<ManipulationReport> find_offer_withholding_manipulation(const Market& market,
                                                                      CollegeId c, bool optimal,
                                                                      std::size_t max_offers) {
  const DaaResult truthful = run_daa(market, Variant::kCollegeProposing);
  if (!may_manipulate_college_proposing(market, c, truthful)) return std::nullopt;
  std::vector<StudentId> offered;
  for (std::uint32_t s = 0; s < market.n_students(); ++s) {
    const auto& got = truthful.trace.received[s];
    if (std::any_of(got.begin(), got.end(),
                    [&](const Proposal& p) { return p.proposer == index(c); })) {
      offered.push_back(student(s));
    }
  }
  if (offered.size() > max_offers) {
    throw SizeGuardError("college made " + std::to_string(offered.size()) +
                         " offers, limit is " + std::to_string(max_offers));
  }
  return withholding_search(market, c, optimal, truthful,
                            sorted_by_college(market.profile(), c, std::move(offered)));
}

std::optional<SeatManipulation> find_seat_manipulation(const Market& market, CollegeId c) {
  check_college(market, c);
  SplitMarket split = split_to_one_to_one(market);
  const DaaResult truthful = run_daa(split.market, Variant::kStudentProposing);
  const PreferenceProfile& prefs = split.market.profile();
  std::size_t executions = 0;

  for (CollegeId seat : split.mapping.seats_of(c)) {
    if (!may_manipulate_student_proposing(split.market, seat, truthful)) continue;
    Market scratch = split.market;
    const StudentId partner = truthful.matching.students_of(seat).front();
    for (StudentId s : prefs.college_list(seat)) {
      if (s == partner) break;
      if (auto list = list_reaching(split.market, seat, {s}, scratch, executions)) {
        return SeatManipulation{seat, std::move(*list), s};
      }
    }
  }
  return std::nullopt;
}

}  // namespace daam
