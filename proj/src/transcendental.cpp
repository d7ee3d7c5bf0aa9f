#include "acalc/transcendental.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace acalc {

namespace {

// Shared evaluator for series with |a_n| <= rho^n / n!: sums a_n z^n with
// cached powers until the exponential majorant tail drops below tol.
// Stable for real scalar coefficients (nothing cancels against the power).
Element entire_series(const Element& z, double rho, double tol,
                      const std::function<double(std::int64_t)>& coeff) {
    const Algebra& a = z.algebra();
    const double scale = rho * a->m_empirical() * std::max(z.norm(), 0.0);
    Element acc = a->zero();
    Element power = a->unity();
    double majorant = 1.0;  // scale^n / n!
    for (std::int64_t n = 0;; ++n) {
        const double an = coeff(n);
        if (an != 0.0) acc = acc + power * an;
        majorant *= scale / static_cast<double>(n + 1);
        // Once the ratio is below 1/2 the tail is under twice the next term.
        if (static_cast<double>(n + 2) > 2.0 * scale && 2.0 * majorant < tol) break;
        if (n > 100000) throw AlgebraError("series truncation cap exceeded");
        power = power * z;
    }
    return acc;
}

double factorial_inv(std::int64_t n) {
    double f = 1.0;
    for (std::int64_t k = 2; k <= n; ++k) f /= static_cast<double>(k);
    return f;
}

}  // namespace

Element exp(const Element& z, double tol) {
    std::int64_t fact_n = 0;
    double inv_fact = 1.0;
    return entire_series(z, 1.0, tol, [&](std::int64_t n) {
        while (fact_n < n) inv_fact /= static_cast<double>(++fact_n);
        return inv_fact;
    });
}

Element cosh(const Element& z, double tol) {
    std::int64_t fact_n = 0;
    double inv_fact = 1.0;
    return entire_series(z, 1.0, tol, [&](std::int64_t n) {
        while (fact_n < n) inv_fact /= static_cast<double>(++fact_n);
        return (n % 2 == 0) ? inv_fact : 0.0;
    });
}

Element sinh(const Element& z, double tol) {
    std::int64_t fact_n = 0;
    double inv_fact = 1.0;
    return entire_series(z, 1.0, tol, [&](std::int64_t n) {
        while (fact_n < n) inv_fact /= static_cast<double>(++fact_n);
        return (n % 2 == 1) ? inv_fact : 0.0;
    });
}

Element cos(const Element& z, double tol) {
    std::int64_t fact_n = 0;
    double inv_fact = 1.0;
    return entire_series(z, 1.0, tol, [&](std::int64_t n) {
        while (fact_n < n) inv_fact /= static_cast<double>(++fact_n);
        if (n % 2 != 0) return 0.0;
        return (n / 2) % 2 == 0 ? inv_fact : -inv_fact;
    });
}

Element sin(const Element& z, double tol) {
    std::int64_t fact_n = 0;
    double inv_fact = 1.0;
    return entire_series(z, 1.0, tol, [&](std::int64_t n) {
        while (fact_n < n) inv_fact /= static_cast<double>(++fact_n);
        if (n % 2 != 1) return 0.0;
        return ((n - 1) / 2) % 2 == 0 ? inv_fact : -inv_fact;
    });
}

Element n_trig(int N, int p, const Element& z, double tol) {
    if (N < 2 || p < 0 || p >= N) throw BadIndex("n_trig requires 0 <= p <= N-1, N >= 2");
    std::int64_t fact_n = 0;
    double inv_fact = 1.0;
    return entire_series(z, 1.0, tol, [&](std::int64_t n) {
        while (fact_n < n) inv_fact /= static_cast<double>(++fact_n);
        if (n % N != p) return 0.0;
        return ((n - p) / N) % 2 == 0 ? inv_fact : -inv_fact;
    });
}

Element n_hyperbolic(int N, int p, const Element& z, double tol) {
    if (N < 2 || p < 0 || p >= N)
        throw BadIndex("n_hyperbolic requires 0 <= p <= N-1, N >= 2");
    std::int64_t fact_n = 0;
    double inv_fact = 1.0;
    return entire_series(z, 1.0, tol, [&](std::int64_t n) {
        while (fact_n < n) inv_fact /= static_cast<double>(++fact_n);
        return (n % N == p) ? inv_fact : 0.0;
    });
}

// ---------------------------------------------------------------------------
// Special functions
// ---------------------------------------------------------------------------

double SpecialFunctionTable::coefficient(int i, std::int64_t k) const {
    const int N = algebra.base->dim();
    if (i < 0 || i >= N) throw BadIndex("component index out of range");
    if (k % N != i) return 0.0;
    const std::int64_t q = k / N;
    return std::pow(algebra.power_value, static_cast<double>(q)) * factorial_inv(k);
}

SpecialFunctionTable special_functions(const GeneratedAlgebra& g,
                                       const std::vector<double>& t_grid,
                                       double tol) {
    const int N = g.base->dim();
    SpecialFunctionTable table;
    table.algebra = g;
    table.grid = t_grid;
    table.samples.resize(static_cast<Eigen::Index>(t_grid.size()), N);

    // |c_{ik}| <= max(1,|c|)^{k/N} / k!, so the entire majorant applies with
    // rho = max(1,|c|)^{1/N}.
    const double rho = std::pow(std::max(1.0, std::abs(g.power_value)),
                                1.0 / static_cast<double>(N));
    for (std::size_t row = 0; row < t_grid.size(); ++row) {
        const double t = t_grid[row];
        for (int i = 0; i < N; ++i) {
            double acc = 0.0, tk = 1.0, ck = 1.0;  // t^k, c^{k/N} stepping by N
            double majorant = 1.0;
            const double scale = rho * std::abs(t);
            std::int64_t k = 0;
            double inv_fact = 1.0;
            for (;;) {
                if (k % N == i) acc += ck * inv_fact * tk;
                majorant *= scale / static_cast<double>(k + 1);
                if (static_cast<double>(k + 2) > 2.0 * scale && 2.0 * majorant < tol)
                    break;
                if (k > 100000) throw AlgebraError("series truncation cap exceeded");
                tk *= t;
                inv_fact /= static_cast<double>(k + 1);
                ++k;
                if (k % N == 0) ck *= g.power_value;
            }
            table.samples(static_cast<Eigen::Index>(row), i) = acc;
        }
    }

    double worst = 0.0;
    for (std::size_t row = 0; row < t_grid.size(); ++row) {
        const Element e = exp(g.generator() * t_grid[row], tol);
        worst = std::max(
            worst,
            (e.coords() - table.samples.row(static_cast<Eigen::Index>(row)).transpose())
                .norm());
    }
    table.reconstruction_residual = worst;
    return table;
}

// ---------------------------------------------------------------------------
// Pythagorean function
// ---------------------------------------------------------------------------

namespace {

using LVec = std::vector<long double>;

LVec star_ld(const AlgebraSpec& a, const LVec& x, const LVec& y) {
    const int n = a.dim();
    LVec out(static_cast<std::size_t>(n), 0.0L);
    for (int i = 0; i < n; ++i) {
        if (x[i] == 0.0L) continue;
        for (int j = 0; j < n; ++j) {
            const long double w = x[i] * y[j];
            if (w == 0.0L) continue;
            for (int k = 0; k < n; ++k)
                out[k] += w * static_cast<long double>(a.constant(i, j, k));
        }
    }
    return out;
}

long double norm_ld(const LVec& x) {
    long double s = 0.0L;
    for (long double v : x) s += v * v;
    return std::sqrt(s);
}

// Residue-class components S_r(z) = sum_k c^k z^{Nk+r}/(Nk+r)! in extended
// precision.
std::vector<LVec> residue_components(const AlgebraSpec& a, const LVec& z,
                                     double c, int N) {
    const int dim = a.dim();
    std::vector<LVec> s(static_cast<std::size_t>(N),
                        LVec(static_cast<std::size_t>(dim), 0.0L));
    LVec unity(static_cast<std::size_t>(dim), 0.0L);
    for (int i = 0; i < dim; ++i)
        unity[static_cast<std::size_t>(i)] =
            static_cast<long double>(a.unity_coords()[i]);

    const double rho = std::pow(std::max(1.0, std::abs(c)), 1.0 / N);
    const double scale = rho * a.m_empirical() * static_cast<double>(norm_ld(z));

    LVec power = unity;
    long double coef = 1.0L;  // c^{floor(n/N)} / n!
    double majorant = 1.0;
    for (std::int64_t n = 0;; ++n) {
        const int r = static_cast<int>(n % N);
        for (int i = 0; i < dim; ++i)
            s[static_cast<std::size_t>(r)][static_cast<std::size_t>(i)] +=
                coef * power[static_cast<std::size_t>(i)];
        majorant *= scale / static_cast<double>(n + 1);
        if (static_cast<double>(n + 2) > 2.0 * scale && majorant < 1e-24) break;
        if (n > 100000) throw AlgebraError("series truncation cap exceeded");
        power = star_ld(a, power, z);
        coef /= static_cast<long double>(n + 1);
        if ((n + 1) % N == 0) coef *= static_cast<long double>(c);
    }
    return s;
}

}  // namespace

PythagoreanEvaluation pythagorean(const GeneratedAlgebra& g, const Element& z) {
    const Algebra& a = g.base;
    const int N = a->dim();
    if (!a->commutative())
        throw NotCommutative("pythagorean function needs a commutative algebra");
    if (N > 8) throw DimensionTooLarge("Leibniz determinant capped at dimension 8");
    if (z.algebra() != a) throw AlgebraMismatch("argument belongs to another algebra");

    LVec zl(static_cast<std::size_t>(N));
    for (int i = 0; i < N; ++i) zl[static_cast<std::size_t>(i)] = z.coord(i);
    const double c = g.power_value;
    const std::vector<LVec> s = residue_components(*a, zl, c, N);

    // entry(i, p) = c^{(p + r >= N)} S_r with r = (i - p) mod N.
    std::vector<LVec> entries(static_cast<std::size_t>(N) * N);
    for (int i = 0; i < N; ++i)
        for (int p = 0; p < N; ++p) {
            const int r = ((i - p) % N + N) % N;
            LVec e = s[static_cast<std::size_t>(r)];
            if (p + r >= N)
                for (long double& v : e) v *= static_cast<long double>(c);
            entries[static_cast<std::size_t>(i) * N + p] = std::move(e);
        }

    // Leibniz sum over permutations with inversion-parity signs.
    LVec det(static_cast<std::size_t>(N), 0.0L);
    std::vector<int> perm(static_cast<std::size_t>(N));
    std::iota(perm.begin(), perm.end(), 0);
    do {
        int inversions = 0;
        for (int i = 0; i < N; ++i)
            for (int j = i + 1; j < N; ++j)
                if (perm[static_cast<std::size_t>(i)] > perm[static_cast<std::size_t>(j)])
                    ++inversions;
        LVec prod = entries[static_cast<std::size_t>(perm[0]) * N + 0];
        for (int p = 1; p < N; ++p)
            prod = star_ld(*a, prod,
                           entries[static_cast<std::size_t>(perm[static_cast<std::size_t>(p)]) * N + p]);
        const long double sign = (inversions % 2 == 0) ? 1.0L : -1.0L;
        for (int i = 0; i < N; ++i)
            det[static_cast<std::size_t>(i)] += sign * prod[static_cast<std::size_t>(i)];
    } while (std::next_permutation(perm.begin(), perm.end()));

    PythagoreanEvaluation out{g, z, {}, a->zero()};
    out.matrix_over_A.reserve(static_cast<std::size_t>(N) * N);
    for (int i = 0; i < N; ++i)
        for (int p = 0; p < N; ++p) {
            Eigen::VectorXd v(N);
            const LVec& e = entries[static_cast<std::size_t>(i) * N + p];
            for (int k = 0; k < N; ++k)
                v[k] = static_cast<double>(e[static_cast<std::size_t>(k)]);
            out.matrix_over_A.push_back(a->element(std::move(v)));
        }
    Eigen::VectorXd dv(N);
    for (int i = 0; i < N; ++i)
        dv[i] = static_cast<double>(det[static_cast<std::size_t>(i)]);
    out.value = a->element(std::move(dv));
    return out;
}

// ---------------------------------------------------------------------------
// Identity suite
// ---------------------------------------------------------------------------

namespace {

double rel_residual(const Element& lhs, const Element& rhs) {
    return (lhs - rhs).norm() / (1.0 + lhs.norm() + rhs.norm());
}

}  // namespace

IdentityReport identity_suite(const Algebra& algebra, int trials, double tol,
                              std::uint64_t seed) {
    if (!algebra->commutative())
        throw NotCommutative("identity suite needs a commutative algebra");
    if (trials < 1) throw AlgebraError("identity_suite requires trials >= 1");

    Rng rng(seed);
    const Element one = algebra->unity();
    IdentityReport rep;
    rep.trials = trials;
    rep.seed = seed;
    rep.tol = tol;
    rep.identities = {
        {"exp(z+w) = exp(z) * exp(w)", 0.0},
        {"exp(z) = cosh(z) + sinh(z)", 0.0},
        {"cosh(z)^2 - sinh(z)^2 = 1", 0.0},
        {"cosh(z+w) = cosh cosh + sinh sinh", 0.0},
        {"sinh(z+w) = sinh cosh + cosh sinh", 0.0},
        {"cos(z)^2 + sin(z)^2 = 1", 0.0},
        {"cos(z+w) = cos cos - sin sin", 0.0},
        {"sin(z+w) = sin cos + sin cos", 0.0},
    };

    for (int t = 0; t < trials; ++t) {
        const Element z = rng.element(algebra, -2.0, 2.0);
        const Element w = rng.element(algebra, -2.0, 2.0);
        const Element ez = exp(z), ew = exp(w);
        const Element cz = cosh(z), sz = sinh(z), cw = cosh(w), sw = sinh(w);
        const Element Cz = cos(z), Sz = sin(z), Cw = cos(w), Sw = sin(w);

        auto bump = [&](int i, double v) {
            rep.identities[static_cast<std::size_t>(i)].max_residual =
                std::max(rep.identities[static_cast<std::size_t>(i)].max_residual, v);
        };
        bump(0, rel_residual(exp(z + w), ez * ew));
        bump(1, rel_residual(ez, cz + sz));
        bump(2, rel_residual(cz * cz - sz * sz, one));
        bump(3, rel_residual(cosh(z + w), cz * cw + sz * sw));
        bump(4, rel_residual(sinh(z + w), sz * cw + cz * sw));
        bump(5, rel_residual(Cz * Cz + Sz * Sz, one));
        bump(6, rel_residual(cos(z + w), Cz * Cw - Sz * Sw));
        bump(7, rel_residual(sin(z + w), Sz * Cw + Sw * Cz));
    }

    rep.pass = true;
    for (const auto& id : rep.identities)
        if (!(id.max_residual < tol)) rep.pass = false;
    return rep;
}

IvpCheckReport second_order_ivp_check(const Element& f0, const Element& f1,
                                      const std::vector<Element>& z_grid) {
    const Algebra& a = f0.algebra();
    if (f1.algebra() != a) throw AlgebraMismatch("initial data from different algebras");
    if (!a->commutative()) throw NotCommutative("check needs a commutative algebra");

    auto g = [&](const Element& z) { return f0 * cos(z) + f1 * sin(z); };
    const Element one = a->unity();

    IvpCheckReport rep{0.0, 0.0, 0.0};
    for (const Element& z : z_grid) {
        const double h = std::pow(std::numeric_limits<double>::epsilon(), 0.25) *
                         std::max(1.0, z.norm());
        const Element second =
            (g(z + one * h) - g(z) * 2.0 + g(z - one * h)) * (1.0 / (h * h));
        rep.max_ode_residual = std::max(rep.max_ode_residual, (second + g(z)).norm());
    }
    const Element zero = a->zero();
    rep.ic_value_residual = (g(zero) - f0).norm();
    const double h0 = std::cbrt(std::numeric_limits<double>::epsilon());
    const Element d0 = (g(one * h0) - g(one * (-h0))) * (1.0 / (2.0 * h0));
    rep.ic_derivative_residual = (d0 - f1).norm();
    return rep;
}

}  // namespace acalc
