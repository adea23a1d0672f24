#pragma once

#include <cstddef>
#include <optional>
#include <vector>

#include "daam/daa.hpp"
#include "daam/market.hpp"

namespace daam {

// Student `student` moved to 0-based `position` of the reported list; all
// other students keep their true relative order.
struct Demotion {
  StudentId student;
  std::size_t position;
  bool operator==(const Demotion&) const = default;
};

// A misreport by one college together with its effect. Student sets are
// sorted best-first under the college's true ranking.
struct ManipulationReport {
  CollegeId college{};
  Variant variant = Variant::kStudentProposing;
  std::vector<StudentId> reported_list;
  Matching result;
  std::vector<StudentId> lost;       // truthful match minus manipulated match
  std::vector<StudentId> gained;     // manipulated match minus truthful match
  std::vector<StudentId> temp_held;  // held during the manipulated run, dropped, below all of `lost`
  bool beneficial = false;           // result strictly dominates the truthful match

  std::optional<Demotion> demotion;  // single-demotion witness
  std::vector<StudentId> withheld;   // college-proposing witness: students moved to the tail
  std::size_t daa_executions = 0;    // runs spent by the finder, truthful run excluded
  std::size_t iterations = 0;        // swap steps of the student-proposing search
};

// Builds a report for `reported_list` by running DAA with it. `truthful` is
// the run with every agent truthful.
ManipulationReport evaluate_report(const Market& market, CollegeId c, Variant variant,
                                   std::vector<StudentId> reported_list,
                                   const DaaResult& truthful);

// `list` with `d.student` moved to `d.position`.
std::vector<StudentId> apply_demotion(std::span<const StudentId> list, Demotion d);

// Under student-proposing DAA only a college that fills its capacity and
// receives more than q(c) proposals in the truthful run can manipulate.
bool may_manipulate_student_proposing(const Market& market, CollegeId c,
                                      const DaaResult& truthful);

// Under college-proposing DAA only a college with |mu(c)| = q(c) > 1 can.
bool may_manipulate_college_proposing(const Market& market, CollegeId c,
                                      const DaaResult& truthful);

// Finds a report giving `c` the lexicographically best set reachable by
// swapping one truthful member for a student c truly prefers to it. Every
// beneficial manipulation implies such a swap exists, so an empty result
// means `c` cannot manipulate. Each candidate set costs one restricted run
// plus at most one run per other student that applies to c.
std::optional<ManipulationReport> find_manipulation_student_proposing(const Market& market,
                                                                      CollegeId c);
std::optional<ManipulationReport> find_manipulation_student_proposing(
    const Market& market, CollegeId c, const DaaResult& truthful);

// Repeats the swap search from the set reached so far until no swap is
// reachable. Returns the truthful report (beneficial == false, zero
// iterations) when c cannot manipulate.
ManipulationReport find_optimal_manipulation_student_proposing(const Market& market,
                                                               CollegeId c);

// Moves one truthful member to a lower position, keeping everything else in
// true order, and returns the best beneficial such report (single-loss
// outcomes first, then lexicographically best). Cheaper than the swap
// search but incomplete: some manipulable colleges have no beneficial
// single demotion.
std::optional<ManipulationReport> find_single_demotion_manipulation(const Market& market,
                                                                    CollegeId c,
                                                                    const DaaResult& truthful);

// Tries every non-empty subset R of the truthful match without its worst
// member, reporting the true order of S \ R followed by R in true order.
// Needs at most 2^(q(c)-1) - 1 DAA runs. With `optimal` unset returns the
// first beneficial report, otherwise the lexicographically best one.
std::optional<ManipulationReport> find_manipulation_college_proposing(const Market& market,
                                                                      CollegeId c,
                                                                      bool optimal = false);
std::optional<ManipulationReport> find_manipulation_college_proposing(
    const Market& market, CollegeId c, bool optimal, const DaaResult& truthful);

// Same search with R ranging over every student c made an offer to in the
// truthful college-proposing run, not only its final members. Exact on all
// markets checked against the oracle, but exponential in the number of
// offers; throws SizeGuardError above `max_offers`.
std::optional<ManipulationReport> find_offer_withholding_manipulation(const Market& market,
                                                                      CollegeId c,
                                                                      bool optimal = false,
                                                                      std::size_t max_offers = 16);

// Cross-check through the one-to-one reduction: a seat of `c` and a report
// for that seat alone that gives it a partner it truly prefers in the
// derived market, all other seats truthful. Seats are tried in order and
// partners best first.
struct SeatManipulation {
  CollegeId seat;  // seat index in the derived market
  std::vector<StudentId> reported_list;
  StudentId partner;  // the seat's new partner
};
std::optional<SeatManipulation> find_seat_manipulation(const Market& market, CollegeId c);

}  // namespace daam
