#pragma once

#include <cstddef>
#include <optional>
#include <stdexcept>
#include <string>

namespace wofreg {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Malformed graph or ideal text. `line()` is 1-based when known.
class ParseError : public Error {
 public:
  ParseError(std::optional<std::size_t> line, const std::string& what)
      : Error(line ? "line " + std::to_string(*line) + ": " + what : what), line_(line) {}

  std::optional<std::size_t> line() const { return line_; }

 private:
  std::optional<std::size_t> line_;
};

class RegistryMismatch : public Error {
 public:
  RegistryMismatch() : Error("monomial ideals live over different variable registries") {}
};

class ExponentOverflow : public Error {
 public:
  ExponentOverflow() : Error("exponent overflow (exponents are 16-bit)") {}
};

/// An operation was called outside its stated domain.
class PreconditionError : public Error {
 public:
  using Error::Error;
};

/// The graph does not satisfy the Cohen-Macaulay sink-leaf forest hypothesis.
class HypothesisRejected : public PreconditionError {
 public:
  using PreconditionError::PreconditionError;
};

/// Family enumeration was asked for more matched pairs than the cap allows.
class EnumerationCapExceeded : public Error {
 public:
  EnumerationCapExceeded(std::size_t pairs, std::size_t cap)
      : Error("family enumeration capped at " + std::to_string(cap) + " matched pairs, got " +
              std::to_string(pairs) + "; use theta_tree_dp"),
        pairs_(pairs) {}
  std::size_t pairs() const { return pairs_; }

 private:
  std::size_t pairs_;
};

/// A multidegree support exceeds the homology cap.
class OracleInfeasible : public Error {
 public:
  OracleInfeasible(std::size_t support, std::size_t cap)
      : Error("oracle infeasible: multidegree support of " + std::to_string(support) +
              " variables exceeds cap " + std::to_string(cap)),
        support_(support),
        cap_(cap) {}
  std::size_t support() const { return support_; }
  std::size_t cap() const { return cap_; }

 private:
  std::size_t support_;
  std::size_t cap_;
};

}  // namespace wofreg
