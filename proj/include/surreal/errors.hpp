#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

namespace surreal {

/// Coarse error classes; the CLI maps each one to an exit code.
enum class ErrorClass { Parse, Unsupported, Divergence, Domain, Internal };

class Error : public std::runtime_error {
public:
  Error(ErrorClass cls, const std::string& what) : std::runtime_error(what), class_(cls) {}
  ErrorClass error_class() const noexcept { return class_; }

private:
  ErrorClass class_;
};

class ParseError : public Error {
public:
  ParseError(std::size_t offset, std::vector<std::string> expected, const std::string& msg)
      : Error(ErrorClass::Parse, msg), offset_(offset), expected_(std::move(expected)) {}
  std::size_t offset() const noexcept { return offset_; }
  const std::vector<std::string>& expected() const noexcept { return expected_; }

private:
  std::size_t offset_;
  std::vector<std::string> expected_;
};

#define SURREAL_DEFINE_ERROR(Name, Class)                                                          \
  class Name : public Error {                                                                      \
  public:                                                                                          \
    explicit Name(const std::string& what) : Error(ErrorClass::Class, what) {}                     \
  };

SURREAL_DEFINE_ERROR(PowError, Domain)
SURREAL_DEFINE_ERROR(DomainError, Domain)
SURREAL_DEFINE_ERROR(UnboundSymbol, Domain)
SURREAL_DEFINE_ERROR(InvalidInterval, Domain)
SURREAL_DEFINE_ERROR(InvalidPower, Domain)
SURREAL_DEFINE_ERROR(NotPurelyInfinite, Domain)
SURREAL_DEFINE_ERROR(UnsupportedExpansion, Unsupported)
SURREAL_DEFINE_ERROR(IncomparableMonomials, Unsupported)
SURREAL_DEFINE_ERROR(OrderUnreachable, Unsupported)
SURREAL_DEFINE_ERROR(NoAntiderivative, Unsupported)
SURREAL_DEFINE_ERROR(UnsupportedSequenceClass, Unsupported)
SURREAL_DEFINE_ERROR(UnsupportedSeries, Unsupported)
SURREAL_DEFINE_ERROR(NotSolvable, Unsupported)
SURREAL_DEFINE_ERROR(NotInvertible, Divergence)
SURREAL_DEFINE_ERROR(GermNotInJPlusR, Divergence)
SURREAL_DEFINE_ERROR(InternalError, Internal)

#undef SURREAL_DEFINE_ERROR

}  // namespace surreal
