#pragma once

#include "acalc/power_series.hpp"

#include <iosfwd>
#include <string>

namespace acalc {

struct ParseError : AlgebraError {
    std::size_t position;
    ParseError(const std::string& what, std::size_t pos)
        : AlgebraError(what), position(pos) {}
};

/// Loads an algebra definition file:
/// { "dim": N, "unity": [..], "constants": [[[..]]], "labels": [..] }
/// with constants[i][j][k] the component of v_i ⋆ v_j on v_k.
Algebra load_algebra_json(const std::string& path);
Algebra parse_algebra_json(const std::string& text);
std::string algebra_to_json(const AlgebraSpec& a);

/// Writes a scan as CSV with header u,v,verdict,comp_0..comp_{N-1}
/// (verdict C/D/I), one row per cell, row-major with u outermost. Component
/// columns are filled only for converged cells.
void write_region_csv(std::ostream& os, const RegionScan& scan);

/// t,f_1,...,f_N rows for a special-function table sample grid.
void write_table_csv(std::ostream& os, const std::vector<double>& grid,
                     const Eigen::MatrixXd& samples);

// ---------------------------------------------------------------------------
// Coefficient mini-language
// ---------------------------------------------------------------------------

/// Parses a coefficient spec into a power series over the given algebra:
///   "real: <expr in n>"   scalar coefficients, e.g. "real: 3^n / n"
///   "element: [c0; c1]"   finite element list, coords comma-separated
///   "builtin: NAME"       exp | cos | sin | cosh | sinh | geometric | band
/// Expressions support numbers, n, + - * / ^, unary minus, factorial (!)
/// and parentheses. A coefficient expression that is non-finite at n = 0
/// (a series starting at n = 1, like 3^n/n) contributes 0 there; a
/// non-finite value at any later index raises NonFiniteTerm.
/// The band builtin is the constant coefficient 1 + v_2 + ... + v_N
/// (1 + j over the hyperbolic numbers; needs dim >= 2).
PowerSeries parse_coefficients(const std::string& spec, const Algebra& algebra);

/// Evaluates a mini-language expression at a given n (exposed for tests).
double eval_coeff_expr(const std::string& expr, std::int64_t n);

}  // namespace acalc
