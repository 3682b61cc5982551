#pragma once

#include <stdexcept>
#include <string>

namespace coopcache {

// Rejected system parameters or configuration. Maps to CLI exit code 1.
class ValidationError : public std::invalid_argument {
 public:
  enum class Code {
    TooFewUsers,
    UsersExceedFiles,
    AlphaMaxOutOfRange,
    CacheOutOfRange,
    NonIntegralReplication,
    AlphaOutOfRange,
    LoadsInvalid,
    FileSizeNotDivisible,
    TooManyUsers,
    DemandOutOfRange,
  };

  ValidationError(Code code, const std::string& what) : std::invalid_argument(what), code_(code) {}
  Code code() const { return code_; }

 private:
  Code code_;
};

// The cooperation scheduler could not place every pending subfile.
// Maps to CLI exit code 2.
class SchedulerError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// A user could not reconstruct its demanded file. Maps to CLI exit code 3.
class DecodeError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Malformed schedule file.
class FormatError : public std::runtime_error {
 public:
  FormatError(int line, const std::string& what)
      : std::runtime_error("line " + std::to_string(line) + ": " + what), line_(line) {}
  int line() const { return line_; }

 private:
  int line_;
};

}  // namespace coopcache
