#pragma once

#include <stdexcept>
#include <string>

namespace fsim {

// Base class for all failures raised by the library. Subclasses map to
// distinct process exit codes in the command line driver:
//   ParseError / ValidationError / InvalidInitialData / UnknownPreset -> 2
//   solver failures (divergence, nonphysical state)                  -> 3
//   IoError                                                          -> 4
class Error : public std::runtime_error {
public:
  explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

// Matrix inversion requested for a numerically singular matrix.
class SingularMatrix : public Error {
public:
  using Error::Error;
};

// Static type shapes make most tensor mismatches uncompilable; this remains
// for the few runtime-sized interfaces (field block sizes, snapshot data).
class ShapeMismatch : public Error {
public:
  using Error::Error;
};

// A material parameter set violates one of the admissibility conditions
// (3.1a)-(3.1m) documented in the README. Messages carry the clause label.
class ValidationError : public Error {
public:
  using Error::Error;
};

// Initial fields outside the admissible set (porosity bounds, temperature
// sign, nonpositive plastic determinant at a node, ...).
class InvalidInitialData : public Error {
public:
  using Error::Error;
};

// Structured-text configuration could not be parsed. Carries location.
class ParseError : public Error {
public:
  ParseError(int line, int col, const std::string& msg)
      : Error("line " + std::to_string(line) + ", col " + std::to_string(col) + ": " + msg),
        line_(line), col_(col) {}
  int line() const { return line_; }
  int col() const { return col_; }

private:
  int line_ = 0;
  int col_ = 0;
};

class UnknownPreset : public Error {
public:
  using Error::Error;
};

class InvalidGrid : public Error {
public:
  using Error::Error;
};

// det P dropped to or below the configured floor during a solve.
class NonpositivePlasticDeterminant : public Error {
public:
  using Error::Error;
};

// Absolute temperature (or enthalpy density) became negative where a
// nonnegative value is required.
class NonpositiveTemperature : public Error {
public:
  using Error::Error;
};

// A quadrature loop met a non-finite integrand value.
class QuadratureOverflow : public Error {
public:
  using Error::Error;
};

// The within-step fixed point loop failed to meet tolerance.
class FixedPointDivergence : public Error {
public:
  using Error::Error;
};

// An inner linear solve failed its residual verification.
class SolverDivergence : public Error {
public:
  using Error::Error;
};

class IoError : public Error {
public:
  using Error::Error;
};

}  // namespace fsim
