#pragma once

#include <stdexcept>
#include <string>
#include <vector>

#include "eqlines/rational.hpp"

namespace eqlines {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

#define EQLINES_DEFINE_ERROR(Name)        \
  class Name : public Error {             \
   public:                                \
    using Error::Error;                   \
  }

// exactmath
EQLINES_DEFINE_ERROR(SingularMatrix);
EQLINES_DEFINE_ERROR(NotSymmetric);
EQLINES_DEFINE_ERROR(NoRealRoot);
EQLINES_DEFINE_ERROR(DimensionMismatch);

// gegenbauer / gram
EQLINES_DEFINE_ERROR(BadDimension);
EQLINES_DEFINE_ERROR(ImproperGram);
EQLINES_DEFINE_ERROR(InvalidGram);
EQLINES_DEFINE_ERROR(MixedMagnitudes);
EQLINES_DEFINE_ERROR(TooLarge);

// distributions / constructions
EQLINES_DEFINE_ERROR(NotEquiangular);
EQLINES_DEFINE_ERROR(ParseError);
EQLINES_DEFINE_ERROR(RankExceedsDimension);
EQLINES_DEFINE_ERROR(IndexOutOfRange);
EQLINES_DEFINE_ERROR(NotExtremal);

// certificate
EQLINES_DEFINE_ERROR(BadA);
EQLINES_DEFINE_ERROR(SingularSystem);

#undef EQLINES_DEFINE_ERROR

/// Raised when the derived-code graph fails strong regularity; carries the
/// offending vertex pair (indices into the derived code).
class NotStronglyRegular : public Error {
 public:
  NotStronglyRegular(const std::string& what, std::size_t first, std::size_t second)
      : Error(what), first_(first), second_(second) {}

  std::size_t first() const { return first_; }
  std::size_t second() const { return second_; }

 private:
  std::size_t first_;
  std::size_t second_;
};

/// Raised for a Gram matrix that is not positive semidefinite; carries a
/// vector w with w^T G w < 0.
class NotPSD : public Error {
 public:
  NotPSD(const std::string& what, std::vector<Rational> witness) : Error(what), witness_(std::move(witness)) {}

  const std::vector<Rational>& witness() const { return witness_; }

 private:
  std::vector<Rational> witness_;
};

}  // namespace eqlines
