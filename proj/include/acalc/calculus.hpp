#pragma once

#include "acalc/algebra.hpp"

#include <functional>
#include <utility>
#include <vector>

/// Numerical differentiability testing against the regular representation,
/// derivative extraction and curve integration.
namespace acalc {

struct EvaluationFailure : AlgebraError {
    using AlgebraError::AlgebraError;
};

struct NonFiniteIntegrand : AlgebraError {
    using AlgebraError::AlgebraError;
};

struct RelationNotNull : AlgebraError {
    using AlgebraError::AlgebraError;
};

/// Caller-supplied pure map on an algebra.
struct AFunction {
    Algebra algebra;
    std::function<Element(const Element&)> eval;

    Element operator()(const Element& z) const;
};

/// Central-difference step for first-derivative schemes:
/// (machine eps)^{1/3} * max(1, ||p||).
double fd_step(const Element& p);

/// Jacobian by central differences, column j = (f(p + h v_j) - f(p - h v_j)) / (2h).
Eigen::MatrixXd numeric_jacobian(const AFunction& f, const Element& p, double h = 0.0);

/// How far the differential at p is from the matrix regular representation.
struct CRReport {
    Eigen::MatrixXd jacobian;
    Eigen::MatrixXd projected;  ///< nearest member of span{M(v_1),...,M(v_N)}
    double residual;            ///< ||jacobian - projected||_F
    double relative_residual;   ///< residual / ||jacobian||_F (0 when J = 0)
    Element a_derivative;       ///< projected applied to the unity coordinates
};

/// Projects the numeric Jacobian onto the matrix regular representation under
/// the Frobenius inner product (the basis M(v_i) is orthonormalized first,
/// since it need not be orthogonal for arbitrary structure constants). A
/// small residual is evidence of differentiability at finite-difference
/// accuracy, never a proof.
CRReport cr_residual(const AFunction& f, const Element& p);

/// Default pass threshold on the relative residual.
inline constexpr double kCRPassThreshold = 1e-4;

/// One term of a vanishing algebra relation: basis indices (0-based,
/// length = derivative order, 1 or 2) and a real weight.
using PDERelation = std::vector<std::pair<std::vector<int>, double>>;

/// Checks the induced component PDE: when sum B v_{i1} ⋆ ... ⋆ v_{ik} = 0 in
/// the algebra, every component of f satisfies
/// sum B d^k f / dx_{i1}...dx_{ik} = 0. Returns the max component residual at
/// p by finite differences. Throws RelationNotNull when the algebra
/// combination does not vanish.
double component_pde_check(const AFunction& f, const Element& p,
                           const PDERelation& relation);

/// Differentiable parametrization of a curve. When `derivative` is absent it
/// is replaced by a central difference of the parametrization.
struct Curve {
    std::function<Element(double)> parametrization;
    std::function<Element(double)> derivative;  // optional
    double t0 = 0.0;
    double t1 = 1.0;
    int segments = 8;  ///< initial quadrature panel count
};

Curve segment(const Element& z0, const Element& z1);
/// Circle of the given radius in the plane spanned by axis_a, axis_b
/// around center: center + r cos(t) a + r sin(t) b, t in [0, 2pi].
Curve circle(const Element& center, double radius, const Element& axis_a,
             const Element& axis_b);
std::vector<Curve> polygon(const std::vector<Element>& vertices);

/// Composite 5-point Gauss-Legendre quadrature of f(zeta(t)) ⋆ zeta'(t),
/// doubling panels until successive results differ by < 1e-10 (panel cap
/// 2^14).
Element curve_integral(const AFunction& f, const Curve& c);
/// Sum of the integrals over a concatenation of curves.
Element curve_integral(const AFunction& f, const std::vector<Curve>& pieces);

}  // namespace acalc
