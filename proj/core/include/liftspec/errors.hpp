#pragma once

#include <stdexcept>

namespace liftspec {

// Base type for every error thrown by this library. Catching Error is enough
// to intercept anything liftspec raises; the concrete types below exist so
// callers can map failure classes to exit codes or recovery paths.
struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// A requested edge is malformed: endpoint out of range or a self-loop.
struct InvalidEdge : Error {
  using Error::Error;
};

// A numeric or structural precondition on an operation's arguments failed.
struct InvalidParams : Error {
  using Error::Error;
};

// Text input (graph, lift, chain files) could not be parsed; messages carry
// 1-based line numbers.
struct ParseError : Error {
  using Error::Error;
};

// The iterative eigensolver failed to converge within its sweep budget.
struct EigenFailure : Error {
  using Error::Error;
};

// A spectrum that must contain another (as a multiset, up to tolerance)
// does not. This indicates a numerical breakdown or a corrupted input,
// never a statistical fluctuation.
struct SpectrumContainmentViolated : Error {
  using Error::Error;
};

// Normalized-Laplacian analysis was requested for a graph with an isolated
// vertex; the deviation operator is undefined there.
struct DegreeZeroUnsupported : Error {
  using Error::Error;
};

// A transition matrix has a negative entry or a row that does not sum to 1.
struct NotStochastic : Error {
  using Error::Error;
};

// A chain fails detailed balance with respect to its stationary vector.
struct NotReversible : Error {
  using Error::Error;
};

// A stationary vector has a non-positive entry or does not sum to 1.
struct InvalidStationary : Error {
  using Error::Error;
};

// A run configuration (CLI flags or config file) is inconsistent or unsafe.
struct ConfigError : Error {
  using Error::Error;
};

}  // namespace liftspec
