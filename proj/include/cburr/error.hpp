#pragma once

#include <stdexcept>
#include <string>
#include <vector>

namespace cburr {

/// Broad failure class, used by the CLI to pick an exit code.
enum class ErrorKind {
  usage,    // bad flags or parameter values supplied by the caller
  data,     // unreadable or insufficient input data
  numeric,  // solver / series / optimizer failure
};

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(what), kind_(kind) {}
  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

/// Argument outside the domain of a function or parameter space.
class DomainError : public Error {
 public:
  explicit DomainError(const std::string& what) : Error(ErrorKind::usage, what) {}
};

/// Hazard or residual quantities requested where the survival is exhausted.
class SupportExhaustedError : public Error {
 public:
  explicit SupportExhaustedError(const std::string& what)
      : Error(ErrorKind::numeric, what) {}
};

/// The generative (min of 1 + Poisson draws) sampler needs lambda >= 0.
class GenerativeUnsupportedError : public Error {
 public:
  explicit GenerativeUnsupportedError(const std::string& what)
      : Error(ErrorKind::usage, what) {}
};

class NumericError : public Error {
 public:
  explicit NumericError(const std::string& what) : Error(ErrorKind::numeric, what) {}
};

/// A requested moment does not exist for the given parameters.
class MomentNonexistenceError : public Error {
 public:
  explicit MomentNonexistenceError(const std::string& what)
      : Error(ErrorKind::numeric, what) {}
};

/// Series did not reach its tolerance; carries the partial sum.
class TruncationError : public Error {
 public:
  TruncationError(const std::string& what, double partial_sum, double remainder)
      : Error(ErrorKind::numeric, what), partial_sum_(partial_sum), remainder_(remainder) {}
  double partial_sum() const noexcept { return partial_sum_; }
  double remainder() const noexcept { return remainder_; }

 private:
  double partial_sum_;
  double remainder_;
};

/// Every optimizer start failed.
class FitFailure : public Error {
 public:
  FitFailure(const std::string& what, std::vector<std::string> diagnostics)
      : Error(ErrorKind::numeric, what), diagnostics_(std::move(diagnostics)) {}
  const std::vector<std::string>& diagnostics() const noexcept { return diagnostics_; }

 private:
  std::vector<std::string> diagnostics_;
};

class DataError : public Error {
 public:
  explicit DataError(const std::string& what) : Error(ErrorKind::data, what) {}
};

/// Malformed line in an edge list or histogram file.
class ParseError : public DataError {
 public:
  ParseError(const std::string& what, std::size_t line)
      : DataError("line " + std::to_string(line) + ": " + what), line_(line) {}
  std::size_t line() const noexcept { return line_; }

 private:
  std::size_t line_;
};

class InsufficientDataError : public DataError {
 public:
  explicit InsufficientDataError(const std::string& what) : DataError(what) {}
};

/// Input contained no usable records.
class EmptyInputError : public DataError {
 public:
  explicit EmptyInputError(const std::string& what) : DataError(what) {}
};

}  // namespace cburr
