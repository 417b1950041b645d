#ifndef FUZEV_ERRORS_HPP
#define FUZEV_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace fuzev {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Structural problems: unknown labels, dimension mismatches, malformed files.
class SpecError : public Error {
 public:
  using Error::Error;
};

// Numeric values outside their declared domain.
class DomainError : public Error {
 public:
  using Error::Error;
};

// Sampler failures: exhausted rejection budget, likelihood zero everywhere.
class SamplingError : public Error {
 public:
  using Error::Error;
};

class IoError : public Error {
 public:
  using Error::Error;
};

}  // namespace fuzev

#endif
