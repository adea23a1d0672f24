#include "daam/daa.hpp"

#include <algorithm>
#include <limits>
#include <string>

#include "daam/errors.hpp"

namespace daam {
namespace {

constexpr std::size_t kUnacceptable = std::numeric_limits<std::size_t>::max();

// One side-agnostic deferred acceptance loop. `Side` supplies, for proposer p
// and proposee r:
//   list(p)         proposees best-first
//   rank(r, p)      position of p in r's list, kUnacceptable if absent
//   capacity(r)     how many proposers r may hold
//   demand(p)       proposals p makes in the first round
template <typename Side>
void deferred_acceptance(const Side& side, std::size_t n_proposers, std::size_t n_proposees,
                         std::span<const std::uint32_t> order, bool record,
                         std::vector<std::vector<std::uint32_t>>& held, ProposalTrace& trace) {
  std::vector<std::size_t> position_in_order(n_proposers);
  std::vector<std::uint32_t> default_order;
  if (order.empty()) {
    default_order.resize(n_proposers);
    for (std::size_t p = 0; p < n_proposers; ++p) default_order[p] = static_cast<std::uint32_t>(p);
    order = default_order;
  }
  if (order.size() != n_proposers) throw MalformedInput("proposer order has wrong length");
  std::vector<bool> seen(n_proposers, false);
  for (std::size_t i = 0; i < order.size(); ++i) {
    if (order[i] >= n_proposers || seen[order[i]]) {
      throw MalformedInput("proposer order is not a permutation");
    }
    seen[order[i]] = true;
    position_in_order[order[i]] = i;
  }

  std::vector<std::size_t> next(n_proposers, 0);
  std::vector<std::size_t> pending(n_proposers, 0);
  std::vector<std::uint32_t> active;
  for (std::uint32_t p : order) {
    pending[p] = side.demand(p);
    if (pending[p] > 0) active.push_back(p);
  }

  held.assign(n_proposees, {});
  if (record) trace.received.assign(n_proposees, {});
  std::vector<std::vector<std::uint32_t>> incoming(n_proposees);
  std::vector<std::uint32_t> touched;
  std::vector<std::uint32_t> pool;
  std::vector<bool> is_new;

  std::uint32_t round = 0;
  while (!active.empty()) {
    ++round;
    std::vector<std::uint32_t> next_active;
    auto reject = [&](std::uint32_t proposee, std::uint32_t proposer,
                      std::optional<std::uint32_t> cause) {
      if (record) trace.rejections.push_back({round, proposee, proposer, cause});
      if (pending[proposer]++ == 0) next_active.push_back(proposer);
    };

    // Proposal step.
    for (std::uint32_t p : active) {
      const auto list = side.list(p);
      std::size_t k = pending[p];
      pending[p] = 0;
      for (; k > 0 && next[p] < list.size(); --k) {
        const auto r = static_cast<std::uint32_t>(index(list[next[p]++]));
        if (record) trace.received[r].push_back({round, p});
        if (side.rank(r, p) == kUnacceptable) {
          reject(r, p, std::nullopt);
          continue;
        }
        if (incoming[r].empty()) touched.push_back(r);
        incoming[r].push_back(p);
      }
    }

    // Filtering step: each proposee keeps its best `capacity` proposers.
    std::sort(touched.begin(), touched.end());
    for (std::uint32_t r : touched) {
      auto& kept = held[r];
      const std::size_t n_old = kept.size();
      pool.assign(kept.begin(), kept.end());
      pool.insert(pool.end(), incoming[r].begin(), incoming[r].end());
      is_new.assign(pool.size(), false);
      std::fill(is_new.begin() + static_cast<std::ptrdiff_t>(n_old), is_new.end(), true);

      std::vector<std::size_t> idx(pool.size());
      for (std::size_t i = 0; i < idx.size(); ++i) idx[i] = i;
      std::sort(idx.begin(), idx.end(), [&](std::size_t a, std::size_t b) {
        return side.rank(r, pool[a]) < side.rank(r, pool[b]);
      });
      const std::size_t cap = std::min(side.capacity(r), pool.size());

      kept.clear();
      std::vector<std::uint32_t> kept_new;
      for (std::size_t i = 0; i < cap; ++i) {
        kept.push_back(pool[idx[i]]);
        if (is_new[idx[i]]) kept_new.push_back(pool[idx[i]]);
      }
      // Displaced holders are rejected in favour of newly admitted
      // proposers; rejected newcomers lose to the worst kept holder.
      std::size_t displaced = 0;
      for (std::size_t i = cap; i < idx.size(); ++i) {
        const std::uint32_t p = pool[idx[i]];
        if (!is_new[idx[i]]) {
          reject(r, p, kept_new[displaced++]);
        } else {
          reject(r, p, kept.back());
        }
      }
      incoming[r].clear();
    }
    touched.clear();

    // Proposers with nobody left to propose to drop out.
    std::erase_if(next_active, [&](std::uint32_t p) {
      if (next[p] < side.list(p).size()) return false;
      pending[p] = 0;
      return true;
    });
    std::sort(next_active.begin(), next_active.end(), [&](std::uint32_t a, std::uint32_t b) {
      return position_in_order[a] < position_in_order[b];
    });
    active = std::move(next_active);
  }
  if (record) trace.rounds = round;
}

// Acceptability mask of the truncated college, if any.
struct Restriction {
  std::size_t college = std::numeric_limits<std::size_t>::max();
  std::vector<bool> acceptable;
  std::vector<StudentId> list;  // acceptable students in reported order

  Restriction(const Market& market, const std::optional<Truncation>& t) {
    if (!t) return;
    if (index(t->college) >= market.n_colleges()) throw MalformedInput("unknown college");
    college = index(t->college);
    acceptable.assign(market.n_students(), false);
    for (StudentId s : t->acceptable) {
      if (index(s) >= market.n_students()) throw MalformedInput("unknown student");
      acceptable[index(s)] = true;
    }
    for (StudentId s : market.profile().college_list(t->college)) {
      if (acceptable[index(s)]) list.push_back(s);
    }
  }
  bool excludes(std::size_t c, std::size_t s) const { return c == college && !acceptable[s]; }
};

struct StudentSide {
  const Market& market;
  const Restriction& restriction;
  std::span<const CollegeId> list(std::uint32_t s) const {
    return market.profile().student_list(student(s));
  }
  std::size_t rank(std::uint32_t c, std::uint32_t s) const {
    if (restriction.excludes(c, s)) return kUnacceptable;
    return market.profile().college_rank(college(c), student(s));
  }
  std::size_t capacity(std::uint32_t c) const { return market.capacity(college(c)); }
  std::size_t demand(std::uint32_t) const { return 1; }
};

struct CollegeSide {
  const Market& market;
  const Restriction& restriction;
  std::span<const StudentId> list(std::uint32_t c) const {
    if (c == restriction.college) return restriction.list;
    return market.profile().college_list(college(c));
  }
  std::size_t rank(std::uint32_t s, std::uint32_t c) const {
    return market.profile().student_rank(student(s), college(c));
  }
  std::size_t capacity(std::uint32_t) const { return 1; }
  std::size_t demand(std::uint32_t c) const { return market.capacity(college(c)); }
};

}  // namespace

const char* to_string(Variant v) {
  return v == Variant::kStudentProposing ? "studentProposing" : "collegeProposing";
}

std::vector<std::uint32_t> ProposalTrace::ever_held_by(std::size_t proposee) const {
  std::vector<std::uint32_t> out;
  for (const Proposal& p : received[proposee]) {
    const bool turned_down_at_once =
        std::any_of(rejections.begin(), rejections.end(), [&](const Rejection& r) {
          return r.rejecter == proposee && r.rejected == p.proposer && r.round == p.round;
        });
    if (!turned_down_at_once) out.push_back(p.proposer);
  }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

std::vector<std::uint32_t> ProposalTrace::proposed_to_by(std::size_t proposer) const {
  std::vector<std::uint32_t> out;
  for (std::size_t r = 0; r < received.size(); ++r) {
    for (const Proposal& p : received[r]) {
      if (p.proposer == proposer) {
        out.push_back(static_cast<std::uint32_t>(r));
        break;
      }
    }
  }
  return out;
}

DaaResult run_daa(const Market& market, Variant variant, const DaaOptions& options) {
  DaaResult result;
  result.trace.variant = variant;
  std::vector<std::vector<std::uint32_t>> held;
  const std::size_t ns = market.n_students();
  const std::size_t nc = market.n_colleges();

  const Restriction restriction(market, options.truncation);
  std::vector<std::optional<CollegeId>> student_match(ns);
  if (variant == Variant::kStudentProposing) {
    deferred_acceptance(StudentSide{market, restriction}, ns, nc, options.proposer_order,
                        options.record_trace, held, result.trace);
    for (std::size_t c = 0; c < nc; ++c) {
      for (std::uint32_t s : held[c]) student_match[s] = college(c);
    }
  } else {
    deferred_acceptance(CollegeSide{market, restriction}, nc, ns, options.proposer_order,
                        options.record_trace, held, result.trace);
    for (std::size_t s = 0; s < ns; ++s) {
      if (!held[s].empty()) student_match[s] = college(held[s].front());
    }
  }
  result.matching = Matching::from_student_side(std::move(student_match), nc);
  return result;
}

}  // namespace daam
