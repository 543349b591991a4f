#pragma once

#include <stdexcept>
#include <string>

namespace sleeve {

/// Mismatched or out-of-range dimensions (d > N, wrong vector length, ...).
class DimensionError : public std::invalid_argument {
public:
  using std::invalid_argument::invalid_argument;
};

/// Linearly dependent input where independence is required. `index` is the
/// 1-based position of the offending vector.
class DependenceError : public std::invalid_argument {
public:
  DependenceError(const std::string& msg, int index)
      : std::invalid_argument(msg), index_(index) {}
  int index() const { return index_; }

private:
  int index_;
};

/// A measure-zero degeneracy (vanishing gradient) survived all retries.
class DegenerateInputError : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

/// Interpolation abscissae are not equispaced where the contract requires it.
class SpacingError : public std::invalid_argument {
public:
  using std::invalid_argument::invalid_argument;
};

/// Too few samples / wrong measurement-vector length.
class ArityError : public std::invalid_argument {
public:
  using std::invalid_argument::invalid_argument;
};

/// Reduced-design reconstruction: no candidate matches the measurements.
class InconsistencyError : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

/// Reduced-design reconstruction: several candidates survive the random
/// measurement (a probability-zero event with exact inputs).
class AmbiguityError : public std::runtime_error {
public:
  AmbiguityError(const std::string& msg, int candidate_count)
      : std::runtime_error(msg), candidate_count_(candidate_count) {}
  int candidate_count() const { return candidate_count_; }

private:
  int candidate_count_;
};

/// Malformed experiment config or CSV input; message carries the line number.
class ParseError : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

}  // namespace sleeve
