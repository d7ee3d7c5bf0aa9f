#pragma once

#include "acalc/algebra.hpp"

#include <string>
#include <vector>

/// Elementary functions defined by their series, the residue-class
/// trigonometric/hyperbolic families, special functions of generated
/// algebras and the Pythagorean determinant identity.
namespace acalc {

struct NotCommutative : AlgebraError {
    using AlgebraError::AlgebraError;
};

struct BadIndex : AlgebraError {
    using AlgebraError::AlgebraError;
};

struct DimensionTooLarge : AlgebraError {
    using AlgebraError::AlgebraError;
};

/// All functions below evaluate their defining series directly (no
/// closed-form shortcuts) with a factorial-majorant truncation rule, so
/// identity tests exercise the series machinery. tol bounds the majorant
/// tail, not the final rounding error.
Element exp(const Element& z, double tol = 1e-12);
Element cosh(const Element& z, double tol = 1e-12);
Element sinh(const Element& z, double tol = 1e-12);
Element cos(const Element& z, double tol = 1e-12);
Element sin(const Element& z, double tol = 1e-12);

/// Residue-class trigonometric family: p = 0 gives cos_N, otherwise
/// sin_{N,p}(z) = sum_k (-1)^k z^{Nk+p}/(Nk+p)!. Throws BadIndex unless
/// 0 <= p <= N-1.
Element n_trig(int N, int p, const Element& z, double tol = 1e-12);
/// Residue-class hyperbolic family: p = 0 gives cosh_N, otherwise
/// sinh_{N,p}(z) = sum_k z^{Nk+p}/(Nk+p)!.
Element n_hyperbolic(int N, int p, const Element& z, double tol = 1e-12);

// ---------------------------------------------------------------------------
// Special functions of a generated algebra
// ---------------------------------------------------------------------------

/// Component functions f_i with e^{eps t} = sum_i eps^{i} f_{i+1}(t): the
/// coefficient streams select residue classes n = i (mod N) of the
/// exponential, scaled by powers of eps^N = c.
struct SpecialFunctionTable {
    GeneratedAlgebra algebra;
    std::vector<double> grid;
    /// samples(row t, column i) = f_{i+1}(grid[t]) computed from the streams
    Eigen::MatrixXd samples;
    /// max over the grid of || sum_i eps^i f_{i+1}(t) - exp(eps t) ||
    double reconstruction_residual;

    /// Coefficient of t^k in component i (0-based): c^{k/N}/k! when
    /// k = i (mod N), else 0.
    double coefficient(int i, std::int64_t k) const;
};

SpecialFunctionTable special_functions(const GeneratedAlgebra& g,
                                       const std::vector<double>& t_grid,
                                       double tol = 1e-12);

// ---------------------------------------------------------------------------
// Pythagorean function
// ---------------------------------------------------------------------------

/// det over the (commutative) algebra of the N x N matrix whose p-th column
/// carries the residue-class components of j^p ⋆ e^{jz}; identically unity.
struct PythagoreanEvaluation {
    GeneratedAlgebra algebra;
    Element argument;
    /// Row-major N x N matrix over the algebra, entry(i, p) = matrix[i*N+p].
    std::vector<Element> matrix_over_A;
    Element value;
};

/// The determinant is expanded by the Leibniz rule (division-free, required
/// in the presence of zero divisors) in extended precision, since the
/// permutation terms cancel down to unity from magnitudes that grow like
/// ||e^{jz}||^N. Throws NotCommutative or DimensionTooLarge (N > 8).
PythagoreanEvaluation pythagorean(const GeneratedAlgebra& g, const Element& z);

// ---------------------------------------------------------------------------
// Identity sweeps
// ---------------------------------------------------------------------------

struct IdentityResidual {
    std::string name;
    double max_residual;  ///< relative: ||lhs-rhs|| / (1 + ||lhs|| + ||rhs||)
};

struct IdentityReport {
    std::vector<IdentityResidual> identities;
    int trials;
    std::uint64_t seed;
    double tol;
    bool pass;
};

/// Evaluates the exponential/hyperbolic/trigonometric addition and
/// Pythagorean identities at `trials` random points with coordinates in
/// [-2, 2]. Requires a commutative algebra.
IdentityReport identity_suite(const Algebra& algebra, int trials, double tol,
                              std::uint64_t seed = 0xacc01adeu);

struct IvpCheckReport {
    double max_ode_residual;      ///< ||g'' + g|| by second differences
    double ic_value_residual;     ///< ||g(0) - f0||
    double ic_derivative_residual;  ///< ||g'(0) - f1|| by central difference
};

/// Verifies that g = f0 ⋆ cos + f1 ⋆ sin solves g'' = -g with the given
/// initial data, sampling the second difference along the unity direction.
IvpCheckReport second_order_ivp_check(const Element& f0, const Element& f1,
                                      const std::vector<Element>& z_grid);

}  // namespace acalc
