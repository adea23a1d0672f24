#pragma once

#include <stdexcept>
#include <string>

namespace daam {

// Base class for every error the library reports about its inputs. The CLI
// maps these to exit code 1.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Ill-formed market, matching, preference list or student set.
class MalformedInput : public Error {
 public:
  using Error::Error;
};

// Invalid generator, capacity or experiment configuration.
class ConfigError : public Error {
 public:
  using Error::Error;
};

// The exhaustive oracle refused an instance above its size guard.
class SizeGuardError : public Error {
 public:
  using Error::Error;
};

class IoError : public Error {
 public:
  using Error::Error;
};

}  // namespace daam
