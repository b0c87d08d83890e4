#pragma once

#include <stdexcept>
#include <string>
#include <utility>

#include "torlin/types.hpp"

namespace torlin {

/// Base of all domain errors. kind() is the machine-readable name surfaced by the CLI.
class Error : public std::runtime_error {
 public:
  Error(std::string kind, const std::string& what) : std::runtime_error(what), kind_(std::move(kind)) {}
  const std::string& kind() const noexcept { return kind_; }

 private:
  std::string kind_;
};

/// A lattice vector with n.alpha ~ 0 lies in the certification ball.
class ResonanceFound : public Error {
 public:
  explicit ResonanceFound(LatticeVector n);
  const LatticeVector& mode() const noexcept { return mode_; }

 private:
  LatticeVector mode_;
};

/// Nonzero data on a mode with n.alpha ~ 0: the cohomological equation has no solution.
class ResonantMode : public Error {
 public:
  explicit ResonantMode(LatticeVector n);
  const LatticeVector& mode() const noexcept { return mode_; }

 private:
  LatticeVector mode_;
};

class BadSchedule : public Error {
 public:
  explicit BadSchedule(const std::string& what) : Error("BadSchedule", what) {}
};

class EndpointMismatch : public Error {
 public:
  explicit EndpointMismatch(const std::string& what) : Error("EndpointMismatch", what) {}
};

class BasepointMismatch : public Error {
 public:
  explicit BasepointMismatch(const std::string& what) : Error("BasepointMismatch", what) {}
};

class StaleLocation : public Error {
 public:
  explicit StaleLocation(const std::string& what) : Error("StaleLocation", what) {}
};

class InvalidSegment : public Error {
 public:
  explicit InvalidSegment(const std::string& what) : Error("InvalidSegment", what) {}
};

class DimensionMismatch : public Error {
 public:
  explicit DimensionMismatch(const std::string& what) : Error("DimensionMismatch", what) {}
};

/// Input that does not parse or violates a schema.
class MalformedInput : public Error {
 public:
  explicit MalformedInput(const std::string& what) : Error("MalformedInput", what) {}
};

std::string format_lattice(const LatticeVector& n);

}  // namespace torlin
