#include "acalc/calculus.hpp"

#include <cmath>
#include <limits>
#include <numbers>

namespace acalc {

Element AFunction::operator()(const Element& z) const {
    if (z.algebra() != algebra)
        throw AlgebraMismatch("argument belongs to another algebra");
    Element out = eval(z);
    if (out.algebra() != algebra)
        throw EvaluationFailure("function returned an element of another algebra");
    if (!out.is_finite()) throw EvaluationFailure("function returned a non-finite value");
    return out;
}

double fd_step(const Element& p) {
    const double eps = std::numeric_limits<double>::epsilon();
    return std::cbrt(eps) * std::max(1.0, p.norm());
}

Eigen::MatrixXd numeric_jacobian(const AFunction& f, const Element& p, double h) {
    if (h <= 0.0) h = fd_step(p);
    const int n = p.dim();
    Eigen::MatrixXd jac(n, n);
    for (int j = 0; j < n; ++j) {
        const Element vj = p.algebra()->basis_vector(j);
        const Element fp = f(p + vj * h);
        const Element fm = f(p - vj * h);
        jac.col(j) = (fp.coords() - fm.coords()) / (2.0 * h);
    }
    return jac;
}

CRReport cr_residual(const AFunction& f, const Element& p) {
    const Algebra& a = p.algebra();
    const int n = p.dim();
    const Eigen::MatrixXd jac = numeric_jacobian(f, p);

    // Orthonormalize {M(v_i)} under the Frobenius inner product, then project.
    // Two projection sweeps keep the basis orthogonal even when the
    // representations of nearly dependent tables lose accuracy in one pass.
    std::vector<Eigen::MatrixXd> basis;
    basis.reserve(n);
    for (int i = 0; i < n; ++i) {
        Eigen::MatrixXd m = regular_rep(a->basis_vector(i));
        for (int pass = 0; pass < 2; ++pass)
            for (const Eigen::MatrixXd& b : basis)
                m -= (b.array() * m.array()).sum() * b;
        const double nrm = m.norm();
        if (nrm > 1e-12) basis.push_back(m / nrm);
    }
    Eigen::MatrixXd projected = Eigen::MatrixXd::Zero(n, n);
    for (const Eigen::MatrixXd& b : basis)
        projected += (b.array() * jac.array()).sum() * b;

    CRReport rep;
    rep.jacobian = jac;
    rep.projected = projected;
    rep.residual = (jac - projected).norm();
    const double jn = jac.norm();
    rep.relative_residual = jn > 0.0 ? rep.residual / jn : 0.0;
    rep.a_derivative = a->element(projected * a->unity_coords());
    return rep;
}

namespace {

// Second-difference step; the optimum for a second-order scheme applied
// twice.
double fd_step2(const Element& p) {
    const double eps = std::numeric_limits<double>::epsilon();
    return std::pow(eps, 0.25) * std::max(1.0, p.norm());
}

Eigen::VectorXd partial1(const AFunction& f, const Element& p, int i, double h) {
    const Element vi = p.algebra()->basis_vector(i);
    return (f(p + vi * h).coords() - f(p - vi * h).coords()) / (2.0 * h);
}

Eigen::VectorXd partial2(const AFunction& f, const Element& p, int i, int j, double h) {
    const Element vi = p.algebra()->basis_vector(i);
    const Element vj = p.algebra()->basis_vector(j);
    if (i == j) {
        return (f(p + vi * h).coords() - 2.0 * f(p).coords() + f(p - vi * h).coords()) /
               (h * h);
    }
    return (f(p + vi * h + vj * h).coords() - f(p + vi * h - vj * h).coords() -
            f(p - vi * h + vj * h).coords() + f(p - vi * h - vj * h).coords()) /
           (4.0 * h * h);
}

}  // namespace

double component_pde_check(const AFunction& f, const Element& p,
                           const PDERelation& relation) {
    const Algebra& a = p.algebra();
    if (relation.empty()) throw AlgebraError("empty relation");

    // The weighted basis products must vanish in the algebra.
    Element combo = a->zero();
    for (const auto& [idx, weight] : relation) {
        if (idx.empty() || idx.size() > 2)
            throw AlgebraError("relation terms must have order 1 or 2");
        Element prod = a->basis_vector(idx[0]);
        for (std::size_t q = 1; q < idx.size(); ++q)
            prod = prod * a->basis_vector(idx[q]);
        combo = combo + prod * weight;
    }
    if (combo.norm() >= 1e-12)
        throw RelationNotNull("algebra combination has norm " +
                              std::to_string(combo.norm()));

    Eigen::VectorXd acc = Eigen::VectorXd::Zero(a->dim());
    for (const auto& [idx, weight] : relation) {
        if (idx.size() == 1)
            acc += weight * partial1(f, p, idx[0], fd_step(p));
        else
            acc += weight * partial2(f, p, idx[0], idx[1], fd_step2(p));
    }
    return acc.cwiseAbs().maxCoeff();
}

// ---------------------------------------------------------------------------
// Curves
// ---------------------------------------------------------------------------

Curve segment(const Element& z0, const Element& z1) {
    Curve c;
    c.parametrization = [z0, z1](double t) { return z0 * (1.0 - t) + z1 * t; };
    c.derivative = [z0, z1](double) { return z1 - z0; };
    c.t0 = 0.0;
    c.t1 = 1.0;
    c.segments = 4;
    return c;
}

Curve circle(const Element& center, double radius, const Element& axis_a,
             const Element& axis_b) {
    Curve c;
    c.parametrization = [=](double t) {
        return center + axis_a * (radius * std::cos(t)) + axis_b * (radius * std::sin(t));
    };
    c.derivative = [=](double t) {
        return axis_a * (-radius * std::sin(t)) + axis_b * (radius * std::cos(t));
    };
    c.t0 = 0.0;
    c.t1 = 2.0 * std::numbers::pi;
    c.segments = 16;
    return c;
}

std::vector<Curve> polygon(const std::vector<Element>& vertices) {
    if (vertices.size() < 2) throw AlgebraError("polygon needs at least 2 vertices");
    std::vector<Curve> edges;
    edges.reserve(vertices.size());
    for (std::size_t i = 0; i + 1 < vertices.size(); ++i)
        edges.push_back(segment(vertices[i], vertices[i + 1]));
    edges.push_back(segment(vertices.back(), vertices.front()));
    return edges;
}

namespace {

// 5-point Gauss-Legendre abscissas/weights on [-1, 1].
constexpr double kGx[5] = {-0.9061798459386640, -0.5384693101056831, 0.0,
                           0.5384693101056831, 0.9061798459386640};
constexpr double kGw[5] = {0.2369268850561891, 0.4786286704993665,
                           0.5688888888888889, 0.4786286704993665,
                           0.2369268850561891};

Element integrate_panels(const AFunction& f, const Curve& c,
                         const std::function<Element(double)>& deriv, int panels) {
    Element acc = f.algebra->zero();
    const double span = (c.t1 - c.t0) / panels;
    for (int p = 0; p < panels; ++p) {
        const double a = c.t0 + span * p;
        const double mid = a + span / 2.0, half = span / 2.0;
        for (int q = 0; q < 5; ++q) {
            const double t = mid + half * kGx[q];
            const Element val = mul(f(c.parametrization(t)), deriv(t));
            if (!val.is_finite()) throw NonFiniteIntegrand("integrand not finite");
            acc = acc + val * (kGw[q] * half);
        }
    }
    return acc;
}

}  // namespace

Element curve_integral(const AFunction& f, const Curve& c) {
    if (!(c.t0 < c.t1)) throw AlgebraError("curve requires t0 < t1");
    std::function<Element(double)> deriv = c.derivative;
    if (!deriv) {
        const auto param = c.parametrization;
        const double h = std::cbrt(std::numeric_limits<double>::epsilon()) *
                         std::max(1.0, std::abs(c.t1 - c.t0));
        deriv = [param, h](double t) {
            return (param(t + h) - param(t - h)) * (1.0 / (2.0 * h));
        };
    }

    int panels = std::max(2, c.segments);
    Element prev = integrate_panels(f, c, deriv, panels);
    constexpr int kPanelCap = 1 << 14;
    while (panels < kPanelCap) {
        panels *= 2;
        Element next = integrate_panels(f, c, deriv, panels);
        if ((next - prev).norm() < 1e-10 * (1.0 + next.norm())) return next;
        prev = next;
    }
    return prev;
}

Element curve_integral(const AFunction& f, const std::vector<Curve>& pieces) {
    Element acc = f.algebra->zero();
    for (const Curve& c : pieces) acc = acc + curve_integral(f, c);
    return acc;
}

}  // namespace acalc
