#pragma once

#include <cstddef>
#include <cstdint>

namespace daam {

// Dense, zero-based agent indices. Names live only at the I/O boundary.
enum class StudentId : std::uint32_t {};
enum class CollegeId : std::uint32_t {};

constexpr std::size_t index(StudentId s) { return static_cast<std::size_t>(s); }
constexpr std::size_t index(CollegeId c) { return static_cast<std::size_t>(c); }

constexpr StudentId student(std::size_t i) { return StudentId{static_cast<std::uint32_t>(i)}; }
constexpr CollegeId college(std::size_t i) { return CollegeId{static_cast<std::uint32_t>(i)}; }

}  // namespace daam
