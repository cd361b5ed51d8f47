#pragma once

#include <cstddef>
#include <optional>
#include <vector>

#include "symcert/rational.hpp"

namespace symcert {

/// One linear constraint a·x <= b over rational unknowns. The coefficient
/// vector fixes the variable count; every constraint in a system must have
/// the same length.
struct LinIneq {
  std::vector<Rational> a;
  Rational b;
};

struct LinOpt {
  enum class Status { INFEASIBLE, UNBOUNDED, OPTIMAL };
  Status status = Status::INFEASIBLE;
  Rational value;                  // optimum, valid when OPTIMAL
  std::vector<Rational> witness;   // a maximizer, valid when OPTIMAL
};

/// Maximizes objective.x over {x : a_i.x <= b_i} by Fourier-Motzkin
/// elimination with exact rationals, then back-substitutes a witness.
/// Intended for the small systems this project produces (a few variables,
/// tens of constraints); no attempt at polynomial-time behaviour.
LinOpt fm_maximize(std::vector<LinIneq> system, const std::vector<Rational>& objective);

/// Feasibility of the closed system {a_i.x <= b_i}; returns a point when one
/// exists, nullopt otherwise. nvars may exceed the longest constraint only if
/// all constraints agree on length.
std::optional<std::vector<Rational>> fm_witness(std::vector<LinIneq> system, std::size_t nvars);

/// Exact solution structure of A x = y over the rationals: one particular
/// solution plus a basis of the homogeneous solutions. nullopt when the
/// system is inconsistent.
struct AffineSolution {
  std::vector<Rational> particular;
  std::vector<std::vector<Rational>> kernel;
};
std::optional<AffineSolution> solve_linear(std::vector<std::vector<Rational>> A,
                                           std::vector<Rational> y);

}  // namespace symcert
