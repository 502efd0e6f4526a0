#ifndef CHARP_ERRORS_HPP
#define CHARP_ERRORS_HPP

#include <cstddef>
#include <stdexcept>
#include <string>

namespace charp {

/// Base class for all library errors.
class Error : public std::runtime_error {
 public:
  explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

class DivisionByZero : public Error {
 public:
  DivisionByZero() : Error("division by zero") {}
  explicit DivisionByZero(const std::string& what) : Error(what) {}
};

/// Malformed tower specification (scope violation, name clash, non-prime p, ...).
class BadTowerSpec : public Error {
 public:
  explicit BadTowerSpec(const std::string& msg) : Error(msg) {}
};

/// Expression syntax error; carries the byte offset of the offending token.
class SyntaxError : public Error {
 public:
  SyntaxError(const std::string& msg, std::size_t offset)
      : Error(msg + " (at offset " + std::to_string(offset) + ")"), offset_(offset) {}
  std::size_t offset() const { return offset_; }

 private:
  std::size_t offset_;
};

class UnknownVariable : public Error {
 public:
  explicit UnknownVariable(const std::string& name)
      : Error("unknown variable: " + name) {}
};

/// Annihilator search exhausted its order bound.
class BoundExceeded : public Error {
 public:
  BoundExceeded(unsigned j_max, const std::string& theoretical_bound)
      : Error("no dependence found up to j_max=" + std::to_string(j_max) +
              " (theoretical bound: " + theoretical_bound + ")") {}
};

class PreconditionViolated : public Error {
 public:
  explicit PreconditionViolated(const std::string& msg) : Error(msg) {}
};

/// The minimal polynomial in the constant-coefficient reduction failed the
/// constancy guarantee.  Never expected on elementary towers.
class NonConstantMinPoly : public Error {
 public:
  NonConstantMinPoly() : Error("minimal polynomial has a non-constant coefficient") {}
};

class NoTransferFound : public Error {
 public:
  NoTransferFound() : Error("transfer operator linear system has only the trivial solution") {}
};

class GenericityFailure : public Error {
 public:
  GenericityFailure() : Error("transfer verification produced the zero element") {}
};

class NoRootWithinBound : public Error {
 public:
  explicit NoRootWithinBound(const std::string& msg) : Error(msg) {}
};

}  // namespace charp

#endif  // CHARP_ERRORS_HPP
