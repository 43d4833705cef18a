#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace gqe {

/// Base class for every error raised by the engine.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Malformed query/formula/file text. `offset` is a byte offset into the
/// offending input (or a line number for line-oriented formats).
class ParseError : public Error {
 public:
  ParseError(std::string msg, std::size_t offset)
      : Error(std::move(msg) + " (at byte " + std::to_string(offset) + ")"),
        offset_(offset) {}
  std::size_t offset() const { return offset_; }

 private:
  std::size_t offset_;
};

/// A test atom that is illegal for the graph flavor it is evaluated on,
/// e.g. a feature test on a labeled graph.
class FlavorError : public Error {
 public:
  using Error::Error;
};

/// Subset construction grew past the configured vertex budget; callers
/// should fall back to the approximate counter.
class CapExceeded : public Error {
 public:
  explicit CapExceeded(std::size_t cap)
      : Error("determinization exceeded cap of " + std::to_string(cap) +
              " product vertices; use the approximate counter"),
        cap_(cap) {}
  std::size_t cap() const { return cap_; }

 private:
  std::size_t cap_;
};

/// Path sampler asked to draw from an empty conforming set.
class EmptySupport : public Error {
 public:
  EmptySupport() : Error("no conforming path of the requested length") {}
};

/// A caller broke an operation's precondition (mismatched concat endpoints,
/// unknown node id, ...).
class ContractViolation : public Error {
 public:
  using Error::Error;
};

/// Exact 64-bit path/run counting overflowed.
class CountOverflow : public Error {
 public:
  CountOverflow() : Error("exact count exceeds 64 bits") {}
};

/// Exhaustive XAI queries are limited to small variable counts.
class VariableLimitExceeded : public Error {
 public:
  explicit VariableLimitExceeded(std::size_t n, std::size_t limit)
      : Error("decision model has " + std::to_string(n) +
              " variables, limit is " + std::to_string(limit)) {}
};

}  // namespace gqe
