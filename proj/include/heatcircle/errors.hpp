#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace heatcircle {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Argument outside the documented domain of an operation.
class DomainError : public Error {
 public:
  using Error::Error;
};

class OddGridError : public DomainError {
 public:
  explicit OddGridError(const std::string& what)
      : DomainError("odd grid: " + what) {}
};

class GridMismatch : public DomainError {
 public:
  explicit GridMismatch(const std::string& what)
      : DomainError("grid mismatch: " + what) {}
};

class LengthMismatch : public DomainError {
 public:
  explicit LengthMismatch(const std::string& what)
      : DomainError("length mismatch: " + what) {}
};

class EvenStateCount : public DomainError {
 public:
  explicit EvenStateCount(const std::string& what)
      : DomainError("even state count: " + what) {}
};

/// Raised when the explicit scheme violates 2r <= 1.
class UnstableParams : public DomainError {
 public:
  explicit UnstableParams(const std::string& what)
      : DomainError("unstable parameters: " + what) {}
};

class KappaTooLarge : public DomainError {
 public:
  explicit KappaTooLarge(const std::string& what)
      : DomainError("kappa too large: " + what) {}
};

class NegativeInitial : public DomainError {
 public:
  explicit NegativeInitial(const std::string& what)
      : DomainError("negative initial condition: " + what) {}
};

class OutOfSupport : public DomainError {
 public:
  explicit OutOfSupport(const std::string& what)
      : DomainError("out of support: " + what) {}
};

class NonpositiveTime : public DomainError {
 public:
  explicit NonpositiveTime(const std::string& what)
      : DomainError("nonpositive time: " + what) {}
};

class LevelRange : public DomainError {
 public:
  explicit LevelRange(const std::string& what)
      : DomainError("level out of range: " + what) {}
};

class RangeError : public DomainError {
 public:
  explicit RangeError(const std::string& what)
      : DomainError("range error: " + what) {}
};

/// File could not be opened, read or written.
class IoError : public Error {
 public:
  IoError(const std::string& path, const std::string& what) : Error(path + ": " + what) {}
};

/// Malformed input file; carries the offending line number (1-based, 0 if
/// the problem is not tied to a line).
class ParseError : public Error {
 public:
  ParseError(const std::string& source, std::size_t line, const std::string& what)
      : Error(source + ":" + std::to_string(line) + ": " + what), line_(line) {}

  std::size_t line() const { return line_; }

 private:
  std::size_t line_;
};

}  // namespace heatcircle
