#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "daam/market.hpp"

namespace daam {

// College -> its seats in the derived one-to-one market, and back.
class SeatMapping {
 public:
  SeatMapping() = default;
  explicit SeatMapping(std::span<const std::size_t> capacities);

  // Seats of `c`, best-first in every student's derived list.
  std::span<const CollegeId> seats_of(CollegeId c) const { return seats_[index(c)]; }
  CollegeId parent_of(CollegeId seat) const { return parent_[index(seat)]; }
  std::size_t n_seats() const { return parent_.size(); }

 private:
  std::vector<std::vector<CollegeId>> seats_;
  std::vector<CollegeId> parent_;
};

struct SplitMarket {
  Market market;  // every college has capacity 1
  SeatMapping mapping;
};

// Replaces each college c by q(c) unit-capacity seats that copy c's list;
// each student's list has c replaced in place by c's seats in order.
SplitMarket split_to_one_to_one(const Market& market);

// Collapses a matching of the derived market back onto the original colleges.
Matching merge_seats(const Matching& seat_matching, const SeatMapping& mapping,
                     std::size_t n_colleges);

}  // namespace daam
