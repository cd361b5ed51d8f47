#pragma once

#include <stdexcept>
#include <string>

namespace symcert {

// Base class for everything thrown on purpose by this library.
struct Error : std::runtime_error {
  explicit Error(const std::string& what) : std::runtime_error(what) {}
};

// A basis name was referenced that the IrrationalBasis does not declare.
struct UnknownBasisName : Error {
  explicit UnknownBasisName(const std::string& name)
      : Error("unknown basis name '" + name + "'") {}
};

// Interval refinement hit the precision cap before a decision could be certified.
struct PrecisionExhausted : Error {
  explicit PrecisionExhausted(const std::string& what) : Error(what) {}
};

// An iterate landed on an integer rotation number where the operation forbids it.
struct DegenerateIterate : Error {
  explicit DegenerateIterate(const std::string& what) : Error(what) {}
};

// A rotation number sat exactly halfway between integers, so rounding has no
// canonical choice and the loop decomposition is ambiguous.
struct LoopPartUndefined : Error {
  explicit LoopPartUndefined(const std::string& what) : Error(what) {}
};

// Every rotation number is rational, so the orbit closure is finite and the
// density arguments the group analysis relies on are void.
struct FullyRationalSpectrum : Error {
  explicit FullyRationalSpectrum(const std::string& what) : Error(what) {}
};

// Input violated a structural precondition (wrong dimension, empty path, bad range).
struct InvalidInput : Error {
  explicit InvalidInput(const std::string& what) : Error(what) {}
};

// The operation needs the orbit closure to fill the whole torus and it does not.
struct NotToric : Error {
  explicit NotToric(const std::string& what) : Error(what) {}
};

// An operation specific to two planes and a one-dimensional closure got
// something else.
struct WrongDimension : Error {
  explicit WrongDimension(const std::string& what) : Error(what) {}
};

// A Chern-number value outside the classified cases {2, 3}.
struct UnsupportedN : Error {
  explicit UnsupportedN(const std::string& what) : Error(what) {}
};

// A value of the minimal Chern number outside the range an operation classifies.
struct UnsupportedChern : Error {
  explicit UnsupportedChern(const std::string& what) : Error(what) {}
};

// The structural hypotheses behind a per-component computation do not hold,
// so the requested quantity is not well defined for this input.
struct HypothesesNotMet : Error {
  explicit HypothesesNotMet(const std::string& what) : Error(what) {}
};

// A matrix failed the symplectic or non-degeneracy checks within tolerance.
struct DegenerateInput : Error {
  explicit DegenerateInput(const std::string& what) : Error(what) {}
};

// No admissible Lagrangian complement was found after the retry budget.
struct ComplementNotFound : Error {
  explicit ComplementNotFound(const std::string& what) : Error(what) {}
};

// An eigenvalue fell inside the zero band, so a signature sign cannot be certified.
struct SingularEigenvalue : Error {
  explicit SingularEigenvalue(const std::string& what) : Error(what) {}
};

// Structured input text could not be parsed or failed validation.
struct ParseError : Error {
  explicit ParseError(const std::string& what) : Error(what) {}
};

// An exhaustive enumeration exceeded its node budget before reaching a verdict.
struct SearchBudgetExhausted : Error {
  explicit SearchBudgetExhausted(const std::string& what) : Error(what) {}
};

}  // namespace symcert
