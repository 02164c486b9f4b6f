#pragma once

#include <stdexcept>
#include <string>
#include <vector>

namespace mtrans {

/// Base class of every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A coordinate, index or level lies outside its admissible range.
class RangeError : public Error {
 public:
  using Error::Error;
};

/// Malformed parameters (windows, subsets, bounds, sequences).
class ParameterError : public Error {
 public:
  using Error::Error;
};

/// An operation was called on inputs that violate its stated precondition.
class PreconditionError : public Error {
 public:
  using Error::Error;
};

/// A construction could not be carried out. `subset()` names the part subset
/// that made it fail, when there is one.
class ConstructionError : public Error {
 public:
  explicit ConstructionError(const std::string& what, std::vector<int> subset = {})
      : Error(what), subset_(std::move(subset)) {}

  [[nodiscard]] const std::vector<int>& subset() const { return subset_; }

 private:
  std::vector<int> subset_;
};

/// The instance exceeds the size an exhaustive routine is willing to handle.
class ScaleError : public Error {
 public:
  using Error::Error;
};

/// Input text (files, command-line values) could not be parsed.
class ParseError : public Error {
 public:
  using Error::Error;
};

}  // namespace mtrans
