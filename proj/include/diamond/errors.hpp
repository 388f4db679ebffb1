#pragma once

#include <stdexcept>
#include <string>

namespace diamond {

/// Root of every error thrown by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class SingularMatrix : public Error {
 public:
  using Error::Error;
};

class DimensionMismatch : public Error {
 public:
  using Error::Error;
};

class NonFiniteValue : public Error {
 public:
  using Error::Error;
};

class InvalidParams : public Error {
 public:
  using Error::Error;
};

class InvalidGraph : public Error {
 public:
  using Error::Error;
};

/// |S13|, |S31| or the pumped denominator is too small to form a ratio.
class DegenerateTransmission : public Error {
 public:
  using Error::Error;
};

/// The time-domain state blew up, i.e. the operating point has no steady state.
class UnstableIntegration : public Error {
 public:
  using Error::Error;
};

class ParseError : public Error {
 public:
  using Error::Error;
};

class ValidationError : public Error {
 public:
  using Error::Error;
};

class UnknownFigure : public Error {
 public:
  using Error::Error;
};

}  // namespace diamond
