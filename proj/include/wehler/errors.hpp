#pragma once

#include <stdexcept>
#include <string>

namespace wehler {

struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct InvalidArgument : Error {
  using Error::Error;
};

// Malformed JSON specs and vectors on the command line.
struct SchemaError : InvalidArgument {
  using InvalidArgument::InvalidArgument;
};

struct DimensionMismatch : Error {
  using Error::Error;
};

struct StepCapExceeded : Error {
  explicit StepCapExceeded(long long cap)
      : Error("step cap exceeded (max_steps=" + std::to_string(cap) + ")"), max_steps(cap) {}
  long long max_steps;
};

struct NonConvergent : Error {
  NonConvergent(const std::string& what, int coord = -1) : Error(what), coordinate(coord) {}
  int coordinate;
};

struct NotNef : Error {
  using Error::Error;
};

struct NotBig : Error {
  using Error::Error;
};

struct NotIntegral : Error {
  using Error::Error;
};

struct NonTimelike : Error {
  using Error::Error;
};

struct ZeroPairing : Error {
  using Error::Error;
};

struct DegenerateSpan : Error {
  using Error::Error;
};

struct AmbiguousAtDepth : Error {
  AmbiguousAtDepth(const std::string& what, int d) : Error(what), depth(d) {}
  int depth;
};

struct ReducedNotBig : Error {
  using Error::Error;
};

struct NotFound : Error {
  explicit NotFound(int d) : Error("no chamber word within depth " + std::to_string(d)), depth(d) {}
  int depth;
};

struct Cancelled : Error {
  Cancelled() : Error("cancelled") {}
};

// Ring-size guard and integrality failures in the symbolic oracle.
struct OracleFailure : Error {
  using Error::Error;
};

}  // namespace wehler
