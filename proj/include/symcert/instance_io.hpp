#pragma once

#include <memory>
#include <string>

#include "symcert/rational.hpp"
#include "symcert/symplectic_path.hpp"

namespace symcert {

/// A parsed problem instance: the rotation data, the topological constants
/// and the bounded-search knobs, plus a digest of the exact bytes it came
/// from so reports can be tied back to their input.
struct ProblemInstance {
  long dimension_n = 0;
  Integer chern_min = 1;
  long product_length_r = 1;
  std::shared_ptr<const IrrationalBasis> basis;
  SymplecticPath path;
  long max_iterate = 100000;
  unsigned precision_bits = 256;
  Rational b2_epsilon = Rational(1, 20);
  std::string digest;
};

/// 64-bit FNV-1a of the bytes, as 16 lowercase hex digits.
std::string fnv1a64_hex(const std::string& bytes);

/// Parses and validates an instance document (structured text; the README
/// documents every field). Strict: unknown keys, missing fields, malformed
/// rationals and undeclared basis names all raise ParseError naming the
/// offending field.
ProblemInstance parse_instance(const std::string& text);

/// Reads the file fully and parses it. File errors become ParseError.
ProblemInstance load_instance(const std::string& file_path);

}  // namespace symcert
