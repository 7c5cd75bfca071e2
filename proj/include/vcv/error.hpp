#pragma once

#include <stdexcept>
#include <string>

namespace vcv {

// Every failure raised by the library derives from Error so callers can
// catch broadly and still dispatch on the concrete kind.
class Error : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

class ParameterError : public Error {
public:
  using Error::Error;
};

class InventoryError : public Error {
public:
  using Error::Error;
};

class CompositionError : public Error {
public:
  using Error::Error;
};

// Malformed or missing model data (coefficient tables, calibration).
class DataError : public Error {
public:
  using Error::Error;
};

class NumericalDomainError : public Error {
public:
  using Error::Error;
};

class ExtractionError : public Error {
public:
  using Error::Error;
};

class SizeError : public Error {
public:
  using Error::Error;
};

class SamplingError : public Error {
public:
  using Error::Error;
};

class FitError : public Error {
public:
  using Error::Error;
};

class CompletenessError : public Error {
public:
  using Error::Error;
};

}  // namespace vcv
