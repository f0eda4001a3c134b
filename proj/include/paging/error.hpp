#pragma once

#include <stdexcept>
#include <string>

namespace paging {

// Base class for every error raised by the library. Callers that only care
// about "something in the lab failed" can catch this one type.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class InvalidArgument : public Error {
 public:
  using Error::Error;
};

// find_crossover: the bracket does not straddle a crossing.
class NoSignChange : public Error {
 public:
  using Error::Error;
};

// find_crossover: a scheme saturates inside the bracket before the curves cross.
class Instability : public Error {
 public:
  using Error::Error;
};

class SingularSystem : public Error {
 public:
  using Error::Error;
};

class UnsupportedScenario : public Error {
 public:
  using Error::Error;
};

// Too few samples for the requested operation (split, train, strategy history).
class InsufficientData : public Error {
 public:
  using Error::Error;
};

class DimensionMismatch : public Error {
 public:
  using Error::Error;
};

// Normalized metrics need a nonzero reference signal energy.
class ZeroEnergy : public Error {
 public:
  using Error::Error;
};

// Fewer than the minimum number of post-warmup arrivals in a simulation run.
class DegenerateHorizon : public Error {
 public:
  using Error::Error;
};

// Malformed text input (model files, chain files, CSV, config).
class ParseError : public Error {
 public:
  using Error::Error;
};

}  // namespace paging
