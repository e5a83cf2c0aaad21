#pragma once

#include <cstddef>
#include <cstdlib>
#include <stdexcept>
#include <string>

namespace latticeforge {

/// Base class of every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Raised when a checked theorem or internal invariant fails. These never
/// fire on a correct build; the CLI maps them to exit code 4.
class InternalAssertion : public Error {
 public:
  using Error::Error;
};

class NotALattice : public Error {
 public:
  NotALattice(std::size_t x, std::size_t y)
      : Error("not a lattice: elements " + std::to_string(x) + " and " + std::to_string(y) +
              " have no unique join or meet"),
        x(x),
        y(y) {}
  std::size_t x;
  std::size_t y;
};

class CyclicCovers : public Error {
 public:
  using Error::Error;
};

class SizeLimitExceeded : public Error {
 public:
  using Error::Error;
};

class SyntaxError : public Error {
 public:
  SyntaxError(const std::string& what, std::size_t position)
      : Error("syntax error at position " + std::to_string(position) + ": " + what), position(position) {}
  std::size_t position;
};

class UnboundVariable : public Error {
 public:
  explicit UnboundVariable(const std::string& name) : Error("unbound variable: " + name), name(name) {}
  std::string name;
};

class HypothesisFails : public Error {
 public:
  using Error::Error;
};

class NotJoinIrreducible : public Error {
 public:
  using Error::Error;
};

class TrivialLattice : public Error {
 public:
  using Error::Error;
};

class DepthExhausted : public Error {
 public:
  using Error::Error;
};

class NotHModular : public Error {
 public:
  using Error::Error;
};

class ZeroArgument : public Error {
 public:
  using Error::Error;
};

class TruncationTooSmall : public Error {
 public:
  using Error::Error;
};

class TheoremViolated : public InternalAssertion {
 public:
  using InternalAssertion::InternalAssertion;
};

class InternalCaseExhaustion : public InternalAssertion {
 public:
  using InternalAssertion::InternalAssertion;
};

class NonCanonicalIntersection : public InternalAssertion {
 public:
  using InternalAssertion::InternalAssertion;
};

class BoundExceeded : public InternalAssertion {
 public:
  using InternalAssertion::InternalAssertion;
};

class FiberUnstable : public InternalAssertion {
 public:
  using InternalAssertion::InternalAssertion;
};

class MismatchWithOracle : public InternalAssertion {
 public:
  using InternalAssertion::InternalAssertion;
};

/// Size guard used by the exponential constructions. `LATTICEFORGE_GUARD`
/// overrides the default when set to a positive integer.
inline std::size_t size_guard(std::size_t fallback) {
  if (const char* env = std::getenv("LATTICEFORGE_GUARD")) {
    char* end = nullptr;
    const unsigned long long v = std::strtoull(env, &end, 10);
    if (end != env && *end == '\0' && v > 0) return static_cast<std::size_t>(v);
  }
  return fallback;
}

}  // namespace latticeforge
