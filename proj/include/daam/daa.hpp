#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "daam/market.hpp"

namespace daam {

enum class Variant { kStudentProposing, kCollegeProposing };

const char* to_string(Variant v);

// Agent indices in a trace are proposer/proposee indices: students and
// colleges respectively for student-proposing runs, swapped for
// college-proposing runs.
struct Proposal {
  std::uint32_t round;
  std::uint32_t proposer;
};

struct Rejection {
  std::uint32_t round;
  std::uint32_t rejecter;  // proposee
  std::uint32_t rejected;  // proposer
  // The proposer the rejecter kept instead. Empty only when the rejected
  // proposer is unacceptable to the rejecter.
  std::optional<std::uint32_t> in_favor_of;
};

// Who proposed to whom, and every rejection with its cause.
struct ProposalTrace {
  Variant variant = Variant::kStudentProposing;
  std::size_t rounds = 0;
  // received[proposee] lists proposals in the order they were made.
  std::vector<std::vector<Proposal>> received;
  std::vector<Rejection> rejections;  // chronological

  std::size_t proposals_to(std::size_t proposee) const { return received[proposee].size(); }

  // Proposers that `proposee` tentatively held at some point: those whose
  // proposal was not turned down in the round it was made.
  std::vector<std::uint32_t> ever_held_by(std::size_t proposee) const;

  // Proposees that `proposer` proposed to, in increasing index order.
  std::vector<std::uint32_t> proposed_to_by(std::size_t proposer) const;
};

// One college restricted to an acceptable set; it rejects (or never
// proposes to) everybody else.
struct Truncation {
  CollegeId college;
  std::span<const StudentId> acceptable;
};

struct DaaOptions {
  // Order in which proposers act within a round; empty means index order.
  // Must be a permutation of the proposer side when given.
  std::span<const std::uint32_t> proposer_order = {};
  bool record_trace = true;
  std::optional<Truncation> truncation = std::nullopt;
};

struct DaaResult {
  Matching matching;
  ProposalTrace trace;  // empty when record_trace is false
};

// Deferred acceptance with synchronous rounds. Student-proposing: each free
// student applies to the next college on its list; colleges keep their best
// q(c) applicants. College-proposing: each college offers to as many new
// students as it lost in the previous round (q(c) initially); students keep
// their best offer. Terminates when no rejected proposer can still propose.
DaaResult run_daa(const Market& market, Variant variant, const DaaOptions& options = {});

}  // namespace daam
