#pragma once

#include <stdexcept>
#include <string>

namespace treefo {

  /// Base class of every error raised by the library.
  class Error : public std::runtime_error {
   public:
    using std::runtime_error::runtime_error;
  };

  /// Malformed text or JSON input.
  class ParseError : public Error {
   public:
    using Error::Error;
  };

  /// Well-formed input that violates a semantic requirement
  /// (unknown symbol, nondeterminism, non-ground tree, ...).
  class InputError : public Error {
   public:
    using Error::Error;
  };

  /// Invalid configuration such as an arity cap below the alphabet rank.
  class ConfigError : public Error {
   public:
    using Error::Error;
  };

  /// Ill-formed nesting of terms (arity or sort mismatch).
  class StructuralError : public Error {
   public:
    using Error::Error;
  };

  /// A documented precondition was not met by the caller.
  class ContractViolation : public Error {
   public:
    using Error::Error;
  };

  /// The type classifier hit a case that no minimal algebra can produce.
  class ClassificationError : public Error {
   public:
    using Error::Error;
  };

  /// Sort discipline violated inside a star-free expression.
  class ExpressionError : public Error {
   public:
    using Error::Error;
  };

}  // namespace treefo
