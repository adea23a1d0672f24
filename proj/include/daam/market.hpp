#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "daam/ids.hpp"

namespace daam {

// Complete strict preferences on both sides of a college admission market.
// Each list is best-first and must be a permutation of the opposite side.
// Rank tables (inverse permutations) give O(1) comparisons.
class PreferenceProfile {
 public:
  PreferenceProfile() = default;

  // Throws MalformedInput when any list is not a permutation.
  PreferenceProfile(std::vector<std::vector<CollegeId>> student_prefs,
                    std::vector<std::vector<StudentId>> college_prefs);

  std::size_t n_students() const { return student_prefs_.size(); }
  std::size_t n_colleges() const { return college_prefs_.size(); }

  std::span<const CollegeId> student_list(StudentId s) const {
    return student_prefs_[index(s)];
  }
  std::span<const StudentId> college_list(CollegeId c) const {
    return college_prefs_[index(c)];
  }

  // Position of `c` in the list of `s` (0 = favourite).
  std::size_t student_rank(StudentId s, CollegeId c) const {
    return student_rank_[index(s) * n_colleges() + index(c)];
  }
  // Position of `s` in the list of `c` (0 = favourite).
  std::size_t college_rank(CollegeId c, StudentId s) const {
    return college_rank_[index(c) * n_students() + index(s)];
  }

  // Returns a copy where college `c` reports `list` instead. Throws
  // MalformedInput if `list` is not a permutation of the students.
  PreferenceProfile with_college_list(CollegeId c, std::vector<StudentId> list) const;
  void set_college_list(CollegeId c, std::vector<StudentId> list);

  bool operator==(const PreferenceProfile& other) const {
    return student_prefs_ == other.student_prefs_ && college_prefs_ == other.college_prefs_;
  }

 private:
  void rebuild_college_rank(std::size_t c);

  std::vector<std::vector<CollegeId>> student_prefs_;
  std::vector<std::vector<StudentId>> college_prefs_;
  std::vector<std::size_t> student_rank_;
  std::vector<std::size_t> college_rank_;
};

// (C, S, q, >): capacities plus a complete strict profile. Names are optional
// and only used for I/O; when absent, defaults are generated ("s0", "c0", ...).
class Market {
 public:
  Market() = default;
  Market(std::vector<std::size_t> capacities, PreferenceProfile profile,
         std::vector<std::string> student_names = {},
         std::vector<std::string> college_names = {});

  std::size_t n_students() const { return profile_.n_students(); }
  std::size_t n_colleges() const { return profile_.n_colleges(); }
  std::size_t capacity(CollegeId c) const { return capacities_[index(c)]; }
  std::span<const std::size_t> capacities() const { return capacities_; }
  const PreferenceProfile& profile() const { return profile_; }

  const std::string& student_name(StudentId s) const { return student_names_[index(s)]; }
  const std::string& college_name(CollegeId c) const { return college_names_[index(c)]; }
  std::span<const std::string> student_names() const { return student_names_; }
  std::span<const std::string> college_names() const { return college_names_; }

  std::optional<StudentId> find_student(const std::string& name) const;
  std::optional<CollegeId> find_college(const std::string& name) const;

  // Same market with college `c` submitting `list`.
  Market with_college_list(CollegeId c, std::vector<StudentId> list) const;
  void set_college_list(CollegeId c, std::vector<StudentId> list) {
    profile_.set_college_list(c, std::move(list));
  }

  bool operator==(const Market& other) const {
    return capacities_ == other.capacities_ && profile_ == other.profile_;
  }

 private:
  std::vector<std::size_t> capacities_;
  PreferenceProfile profile_;
  std::vector<std::string> student_names_;
  std::vector<std::string> college_names_;
};

// Many-to-one assignment. College member lists are kept sorted by index so
// that equality is structural.
class Matching {
 public:
  Matching() = default;
  Matching(std::size_t n_students, std::size_t n_colleges);

  // Builds the college side from the student side.
  static Matching from_student_side(std::vector<std::optional<CollegeId>> student_match,
                                    std::size_t n_colleges);

  // Raw constructor; may be inconsistent. Use validate() before trusting it.
  Matching(std::vector<std::optional<CollegeId>> student_match,
           std::vector<std::vector<StudentId>> college_match);

  void assign(StudentId s, CollegeId c);

  std::optional<CollegeId> college_of(StudentId s) const { return student_match_[index(s)]; }
  std::span<const StudentId> students_of(CollegeId c) const { return college_match_[index(c)]; }

  std::size_t n_students() const { return student_match_.size(); }
  std::size_t n_colleges() const { return college_match_.size(); }

  // Throws MalformedInput on size mismatch, inconsistency between the two
  // sides, or capacity overflow.
  void validate(const Market& market) const;

  bool operator==(const Matching&) const = default;

 private:
  std::vector<std::optional<CollegeId>> student_match_;
  std::vector<std::vector<StudentId>> college_match_;
};

// `list` sorted best-first by `c`'s true ranking.
std::vector<StudentId> sorted_by_college(const PreferenceProfile& profile, CollegeId c,
                                         std::vector<StudentId> list);

}  // namespace daam
