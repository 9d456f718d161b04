#ifndef LATCOUNT_ERRORS_HPP
#define LATCOUNT_ERRORS_HPP

#include <cstdint>
#include <stdexcept>
#include <string>

namespace latcount {

/// Base class for all latcount errors.
class Error : public std::runtime_error {
 public:
  explicit Error(const std::string& what) : std::runtime_error(what) {}
};

class DivisionByZero : public Error {
 public:
  DivisionByZero() : Error("division by zero") {}
};

class InvalidArgument : public Error {
 public:
  explicit InvalidArgument(const std::string& what) : Error(what) {}
};

class InvalidAxis : public Error {
 public:
  explicit InvalidAxis(const std::string& what) : Error(what) {}
};

class DimensionTooLarge : public Error {
 public:
  explicit DimensionTooLarge(const std::string& what) : Error(what) {}
};

class LengthMismatch : public Error {
 public:
  explicit LengthMismatch(const std::string& what) : Error(what) {}
};

class SingularSystem : public Error {
 public:
  explicit SingularSystem(const std::string& what = "singular linear system")
      : Error(what) {}
};

class Unbounded : public Error {
 public:
  explicit Unbounded(const std::string& what) : Error(what) {}
};

class BudgetExceeded : public Error {
 public:
  BudgetExceeded(std::uint64_t scanned, std::uint64_t budget)
      : Error("scan budget exceeded: " + std::to_string(scanned) + " > " +
              std::to_string(budget)),
        scanned_(scanned),
        budget_(budget) {}
  std::uint64_t scanned() const { return scanned_; }
  std::uint64_t budget() const { return budget_; }

 private:
  std::uint64_t scanned_;
  std::uint64_t budget_;
};

class Inadmissible : public Error {
 public:
  explicit Inadmissible(const std::string& what) : Error(what) {}
};

class InterpolationDegenerate : public Error {
 public:
  explicit InterpolationDegenerate(const std::string& what) : Error(what) {}
};

class ParseError : public Error {
 public:
  explicit ParseError(const std::string& what) : Error(what) {}
};

class InsufficientData : public Error {
 public:
  explicit InsufficientData(const std::string& what) : Error(what) {}
};

}  // namespace latcount

#endif  // LATCOUNT_ERRORS_HPP
