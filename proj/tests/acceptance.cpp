// Acceptance suite: one line per criterion, nonzero exit on any failure.

#include "acalc/calculus.hpp"
#include "acalc/io.hpp"
#include "acalc/power_series.hpp"
#include "acalc/series.hpp"
#include "acalc/transcendental.hpp"

#include <cmath>
#include <cstdio>
#include <functional>
#include <numbers>
#include <string>
#include <vector>

using namespace acalc;

namespace {

int failures = 0;

void criterion(int id, const std::string& name, bool ok, const std::string& detail) {
    std::printf("criterion %2d %s  %s (%s)\n", id, ok ? "PASS" : "FAIL", name.c_str(),
                detail.c_str());
    if (!ok) ++failures;
}

std::string fmt(double v) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.3g", v);
    return buf;
}

Element elem2(const Algebra& a, double x, double y) {
    Eigen::VectorXd v(2);
    v << x, y;
    return a->element(std::move(v));
}

PowerSeries exp_series(const Algebra& a) {
    return PowerSeries::with_real_coeffs(a, [](std::int64_t n) {
        double f = 1.0;
        for (std::int64_t k = 2; k <= n; ++k) f /= static_cast<double>(k);
        return f;
    });
}

PowerSeries band_series(const Algebra& h) {
    const Element c = h->unity() + h->basis_vector(1);
    return PowerSeries::with_coeffs(h, [c](std::int64_t) { return c; });
}

const std::vector<std::string> kAllPresets = {
    "complex", "hyperbolic", "dual",     "direct_product:2", "H_N:3", "H_N:4",
    "H_N:5",   "C_N:3",      "C_N:4",    "C_N:5",            "Gamma_N:2",
    "Gamma_N:3", "Gamma_N:4"};

const std::vector<std::string> kCommutativeSix = {"complex", "hyperbolic", "dual",
                                                  "H_N:3",   "C_N:3",      "Gamma_N:4"};

// 1. regular representation closed forms and the homomorphism property
void criterion_1() {
    bool exact = true;
    const Algebra c = preset("complex");
    const Algebra h = preset("hyperbolic");
    for (int a = -3; a <= 3; ++a)
        for (int b = -3; b <= 3; ++b) {
            const Eigen::MatrixXd mc = regular_rep(elem2(c, a, b));
            exact = exact && mc(0, 0) == a && mc(0, 1) == -b && mc(1, 0) == b &&
                    mc(1, 1) == a;
            const Eigen::MatrixXd mh = regular_rep(elem2(h, a, b));
            exact = exact && mh(0, 0) == a && mh(0, 1) == b && mh(1, 0) == b &&
                    mh(1, 1) == a;
        }

    double worst = 0.0;
    Rng rng(1001);
    for (const auto& name : kAllPresets) {
        const Algebra alg = preset(name);
        for (int t = 0; t < 1000; ++t) {
            const Element x = rng.element(alg, -2.0, 2.0);
            const Element y = rng.element(alg, -2.0, 2.0);
            const double res =
                (regular_rep(mul(x, y)) - regular_rep(x) * regular_rep(y)).norm() /
                (1.0 + x.norm() * y.norm());
            worst = std::max(worst, res);
        }
    }
    criterion(1, "regular-representation fidelity", exact && worst < 1e-10,
              "closed forms exact, max homomorphism residual " + fmt(worst));
}

// 2. norm constants for the hyperbolic and complex numbers
void criterion_2() {
    const Algebra h = preset("hyperbolic");
    const Algebra c = preset("complex");
    const double eh = std::abs(h->m_empirical() - std::sqrt(2.0));
    const double ec = std::abs(c->m_empirical() - 1.0);
    const bool exact = h->m_theoretical() == 3.0 * std::sqrt(2.0);
    criterion(2, "norm constants", eh < 1e-6 && ec < 1e-6 && exact,
              "|m_H - sqrt2| = " + fmt(eh) + ", |m_C - 1| = " + fmt(ec) +
                  ", m_theoretical(H) == 3 sqrt2: " + (exact ? "yes" : "no"));
}

// 3. radius table for 3^n/n coefficients at probe 200
void criterion_3() {
    const Algebra h = preset("hyperbolic");
    const PowerSeries p = PowerSeries::with_real_coeffs(h, [](std::int64_t n) {
        return n == 0 ? 0.0
                      : std::pow(3.0, static_cast<double>(n)) / static_cast<double>(n);
    });
    const RadiusReport r = estimate_radii(p, 200);
    const double want = 1.0 / (3.0 * std::sqrt(2.0));
    const double e_root = std::abs(r.R_root - want) / want;
    const double e_real =
        r.R_ratio_real ? std::abs(*r.R_ratio_real - want) / want : 1.0;
    const double e_unit =
        r.R_ratio_unit ? std::abs(*r.R_ratio_unit - 1.0 / 6.0) * 6.0 : 1.0;
    criterion(3, "radius table for 3^n/n", e_root < 0.02 && e_real < 0.02 && e_unit < 0.02,
              "rel errors root " + fmt(e_root) + ", real-ratio " + fmt(e_real) +
                  ", unit-ratio " + fmt(e_unit));
}

// 4. band region scan and the exact collapse on the annihilating line
void criterion_4() {
    const Algebra h = preset("hyperbolic");
    const PowerSeries p = band_series(h);
    const Slice slice{h->zero(), h->unity(), h->basis_vector(1)};
    const GridSpec grid{-2, 2, -2, 2, 81, 81};
    const RegionScan scan = region_scan(p, slice, grid, EvalOptions{1e-8, 8, 4000});
    int misses = 0;
    for (int iu = 0; iu < grid.nu; ++iu)
        for (int iv = 0; iv < grid.nv; ++iv) {
            const double x = scan.u_values[static_cast<std::size_t>(iu)];
            const double y = scan.v_values[static_cast<std::size_t>(iv)];
            const SumStatus v = scan.verdict_at(iu, iv);
            if (std::abs(x + y) <= 0.95 + 1e-12 && v != SumStatus::Converged) ++misses;
            if (std::abs(x + y) >= 1.05 - 1e-12 && std::abs(x - y) >= 0.05 - 1e-12 &&
                v != SumStatus::Diverged)
                ++misses;
        }

    const Element z = elem2(h, 5.0, -5.0);  // 5 (1 - j)
    const Element two_terms = eval_truncated(p, z, 1);
    const SumResult full = eval(p, z, 1e-10);
    const bool exact = two_terms.coord(0) == 1.0 && two_terms.coord(1) == 1.0 &&
                       full.status == SumStatus::Converged &&
                       full.value.coord(0) == 1.0 && full.value.coord(1) == 1.0;
    criterion(4, "band phenomenon", misses == 0 && exact,
              std::to_string(misses) + " misclassified cells, eval at 5(1-j) exact: " +
                  (exact ? "yes" : "no"));
}

// 5. diamond phenomenon for the geometric series over H
void criterion_5() {
    const Algebra h = preset("hyperbolic");
    const EvalOptions opts{1e-9, 8, 20000};
    const GeometricResult a = geometric(h, elem2(h, 0.0, 0.9), opts);
    const GeometricResult b = geometric(h, elem2(h, 0.45, 0.45), opts);
    const GeometricResult c = geometric(h, elem2(h, 0.0, 1.1), opts);
    const bool ok = a.sum.status == SumStatus::Converged && a.inverse_mismatch &&
                    *a.inverse_mismatch < 1e-8 &&
                    b.sum.status == SumStatus::Converged && b.inverse_mismatch &&
                    *b.inverse_mismatch < 1e-8 && c.sum.status == SumStatus::Diverged;
    criterion(5, "diamond phenomenon", ok,
              "mismatch(0.9j) = " + fmt(a.inverse_mismatch.value_or(-1.0)) +
                  ", mismatch(0.45+0.45j) = " + fmt(b.inverse_mismatch.value_or(-1.0)) +
                  ", 1.1j " + to_string(c.sum.status));
}

// 6. geometric series on R x R converges exactly on the unit square
void criterion_6() {
    const Algebra rr = preset("direct_product:2");
    const PowerSeries g = PowerSeries::geometric_series(rr);
    const Slice slice{rr->zero(), rr->basis_vector(0), rr->basis_vector(1)};
    const GridSpec grid{-2, 2, -2, 2, 41, 41};
    const RegionScan scan = region_scan(g, slice, grid, EvalOptions{1e-8, 8, 4000});
    int misses = 0;
    const double cell = 0.1;
    for (int iu = 0; iu < grid.nu; ++iu)
        for (int iv = 0; iv < grid.nv; ++iv) {
            const double m = std::max(std::abs(scan.u_values[static_cast<std::size_t>(iu)]),
                                      std::abs(scan.v_values[static_cast<std::size_t>(iv)]));
            const SumStatus v = scan.verdict_at(iu, iv);
            if (m <= 1.0 - cell + 1e-12 && v != SumStatus::Converged) ++misses;
            if (m >= 1.0 + cell - 1e-12 && v != SumStatus::Diverged) ++misses;
        }

    const SumResult at = eval(g, elem2(rr, 0.5, -0.5), EvalOptions{1e-12, 8, 4000});
    const double err = std::max(std::abs(at.value.coord(0) - 2.0),
                                std::abs(at.value.coord(1) - 2.0 / 3.0));
    criterion(6, "direct-product square", misses == 0 && err < 1e-10,
              std::to_string(misses) + " misclassified cells, eval error " + fmt(err));
}

// 7. exponent addition law across six presets
void criterion_7() {
    double worst = 0.0;
    Rng rng(1007);
    for (const auto& name : kCommutativeSix) {
        const Algebra a = preset(name);
        for (int t = 0; t < 200; ++t) {
            const Element z = rng.element(a, -2.0, 2.0);
            const Element w = rng.element(a, -2.0, 2.0);
            const Element lhs = exp(z + w, 1e-14);
            const Element rhs = mul(exp(z, 1e-14), exp(w, 1e-14));
            worst = std::max(worst, (lhs - rhs).norm() / (1.0 + lhs.norm()));
        }
    }
    criterion(7, "exponential addition law", worst < 1e-9,
              "max relative residual " + fmt(worst));
}

// 8. squared-function identities per commutative preset
void criterion_8() {
    double worst = 0.0;
    Rng rng(1008);
    for (const auto& name : kCommutativeSix) {
        const Algebra a = preset(name);
        const Element one = a->unity();
        for (int t = 0; t < 100; ++t) {
            const Element z = rng.element(a, -2.0, 2.0);
            const Element ch = cosh(z, 1e-14), sh = sinh(z, 1e-14);
            const Element co = cos(z, 1e-14), si = sin(z, 1e-14);
            const Element r1 = mul(ch, ch) - mul(sh, sh) - one;
            const Element r2 = mul(co, co) + mul(si, si) - one;
            worst = std::max(worst, r1.norm() / (1.0 + mul(ch, ch).norm()));
            worst = std::max(worst, r2.norm() / (1.0 + mul(co, co).norm()));
        }
    }
    criterion(8, "squared-function identities", worst < 1e-9,
              "max relative residual " + fmt(worst));
}

// 9. the determinant of the exponential representation is unity
void criterion_9() {
    double worst = 0.0;
    Rng rng(1009);
    for (const auto& name : {"H_N:2", "H_N:3", "H_N:4", "H_N:5", "C_N:2", "C_N:3",
                             "C_N:4", "C_N:5", "Gamma_N:2", "Gamma_N:3", "Gamma_N:4",
                             "dual"}) {
        const auto g = detect_generated(preset(name));
        if (!g) {
            criterion(9, "N-Pythagorean identity", false,
                      std::string("preset not generated: ") + name);
            return;
        }
        for (int t = 0; t < 50; ++t) {
            const Element z = rng.element(g->base, -1.0, 1.0);
            worst = std::max(worst,
                             (pythagorean(*g, z).value - g->base->unity()).norm());
        }
    }

    // cubic identity over the 3-hyperbolic numbers from component evaluations
    const Algebra h3 = preset("H_N:3");
    double cubic = 0.0;
    for (int t = 0; t < 50; ++t) {
        const Element z = rng.element(h3, -1.0, 1.0);
        const Element c = n_hyperbolic(3, 0, z, 1e-14);
        const Element s1 = n_hyperbolic(3, 1, z, 1e-14);
        const Element s2 = n_hyperbolic(3, 2, z, 1e-14);
        const Element lhs = mul(mul(c, c), c) + mul(mul(s1, s1), s1) +
                            mul(mul(s2, s2), s2) - mul(mul(c, s1), s2) * 3.0;
        cubic = std::max(cubic, (lhs - h3->unity()).norm());
    }
    criterion(9, "N-Pythagorean identity", worst < 1e-8 && cubic < 1e-8,
              "max determinant residual " + fmt(worst) + ", cubic identity " +
                  fmt(cubic));
}

// 10. special-function tables
void criterion_10() {
    std::vector<double> grid;
    for (int i = 0; i <= 80; ++i) grid.push_back(-2.0 + 0.05 * i);

    const auto g3 = detect_generated(preset("Gamma_N:3"));
    const SpecialFunctionTable t3 = special_functions(*g3, grid);
    double e3 = 0.0;
    for (std::size_t r = 0; r < grid.size(); ++r) {
        const double t = grid[r];
        e3 = std::max(e3, std::abs(t3.samples(static_cast<Eigen::Index>(r), 0) - 1.0));
        e3 = std::max(e3, std::abs(t3.samples(static_cast<Eigen::Index>(r), 1) - t));
        e3 = std::max(e3,
                      std::abs(t3.samples(static_cast<Eigen::Index>(r), 2) - t * t / 2.0));
    }

    const auto gc = detect_generated(preset("complex"));
    const SpecialFunctionTable tc = special_functions(*gc, grid);
    double ec = 0.0;
    for (std::size_t r = 0; r < grid.size(); ++r) {
        ec = std::max(ec, std::abs(tc.samples(static_cast<Eigen::Index>(r), 0) -
                                   std::cos(grid[r])));
        ec = std::max(ec, std::abs(tc.samples(static_cast<Eigen::Index>(r), 1) -
                                   std::sin(grid[r])));
    }

    const double recon = std::max(t3.reconstruction_residual, tc.reconstruction_residual);
    criterion(10, "special-function tables", e3 < 1e-12 && ec < 1e-10 && recon < 1e-10,
              "Gamma_3 error " + fmt(e3) + ", complex error " + fmt(ec) +
                  ", reconstruction " + fmt(recon));
}

// 11. term-wise derivatives
void criterion_11() {
    const Algebra h = preset("hyperbolic");
    const Algebra c = preset("complex");

    const PowerSeries e = exp_series(h);
    const PowerSeries de = derivative_series(e, 1);
    double coeff_err = 0.0;
    for (std::int64_t n = 0; n <= 30; ++n) {
        const double got = de.real_coeff(n), want = e.real_coeff(n);
        coeff_err = std::max(coeff_err, std::abs(got - want) / want);
    }

    const double fd = std::cbrt(std::numeric_limits<double>::epsilon());
    auto fd_matches = [&](const PowerSeries& p, const Element& z) {
        const Algebra& a = p.algebra();
        const Element one = a->unity();
        const EvalOptions opts{1e-12, 8, 20000};
        const Element plus = eval(p, z + one * fd, opts).value;
        const Element minus = eval(p, z - one * fd, opts).value;
        const Element got = (plus - minus) * (1.0 / (2.0 * fd));
        const Element want = eval(derivative_series(p, 1), z, opts).value;
        return (got - want).norm() / (1.0 + want.norm());
    };

    double fd_err = 0.0;
    Rng rng(1011);
    const PowerSeries geo = PowerSeries::geometric_series(c);
    for (int t = 0; t < 25; ++t) {
        Element z = rng.unit_element(c);
        z = z * rng.uniform(0.0, 0.5);
        fd_err = std::max(fd_err, fd_matches(geo, z));
    }
    const PowerSeries band = band_series(h);
    for (int t = 0; t < 25; ++t) {
        // interior band points: |x + y| < 0.5, coordinates bounded
        const double s = rng.uniform(-0.5, 0.5), d = rng.uniform(-1.5, 1.5);
        fd_err = std::max(fd_err, fd_matches(band, elem2(h, (s + d) / 2.0, (s - d) / 2.0)));
    }
    criterion(11, "term-wise derivative", coeff_err < 1e-15 && fd_err < 1e-6,
              "coefficient error " + fmt(coeff_err) + ", FD match " + fmt(fd_err));
}

// 12. loop integrals
void criterion_12() {
    const Algebra c = preset("complex");
    const AFunction ec{c, [](const Element& z) { return exp(z, 1e-14); }};
    const double loop_c =
        curve_integral(ec, circle(c->zero(), 1.0, c->unity(), c->basis_vector(1))).norm();

    const Algebra h = preset("hyperbolic");
    const AFunction eh{h, [](const Element& z) { return exp(z, 1e-14); }};
    const double loop_h =
        curve_integral(eh, polygon({h->zero(), elem2(h, 1, 0), elem2(h, 1, 1),
                                    elem2(h, 0, 1)}))
            .norm();

    const AFunction conj{c, [c](const Element& z) {
                             return elem2(c, z.coord(0), -z.coord(1));
                         }};
    const double loop_conj =
        curve_integral(conj, circle(c->zero(), 1.0, c->unity(), c->basis_vector(1)))
            .norm();
    const double two_pi = 2.0 * std::numbers::pi;
    criterion(12, "loop integrals",
              loop_c < 1e-8 && loop_h < 1e-8 && loop_conj > 1.0 &&
                  std::abs(loop_conj - two_pi) < 1e-6,
              "|exp loops| " + fmt(std::max(loop_c, loop_h)) + ", |conj loop| " +
                  fmt(loop_conj) + " vs 2pi");
}

// 13. Cauchy product of exponential streams
void criterion_13() {
    const Algebra h = preset("hyperbolic");
    Rng rng(1013);
    double worst = 0.0;
    for (int t = 0; t < 10; ++t) {
        const Element z = rng.element(h, -1.0, 1.0);
        auto term = [z](std::int64_t n) {
            Element p = z.algebra()->unity();
            double inv_fact = 1.0;
            for (std::int64_t k = 1; k <= n; ++k) {
                p = mul(p, z);
                inv_fact /= static_cast<double>(k);
            }
            return p * inv_fact;
        };
        TermStream s{h, term, 4000};
        const SumResult r = sum(cauchy_product(s, s), 1e-12, 8);
        worst = std::max(worst, (r.value - exp(z * 2.0, 1e-14)).norm());
    }
    criterion(13, "Cauchy product doubles the exponential", worst < 1e-9,
              "max residual " + fmt(worst));
}

// 14. differentiability residuals
void criterion_14() {
    Rng rng(1014);
    double worst = 0.0;
    for (const auto& name : {"complex", "hyperbolic"}) {
        const Algebra a = preset(name);
        const std::vector<AFunction> fs = {
            {a, [](const Element& z) { return exp(z, 1e-14); }},
            {a, [](const Element& z) { return cos(z, 1e-14); }},
            {a, [](const Element& z) { return sinh(z, 1e-14); }},
        };
        for (const AFunction& f : fs)
            for (int t = 0; t < 100; ++t)
                worst = std::max(
                    worst, cr_residual(f, rng.element(a, -1.5, 1.5)).relative_residual);
    }

    const Algebra c = preset("complex");
    const AFunction conj{c, [c](const Element& z) {
                             return elem2(c, z.coord(0), -z.coord(1));
                         }};
    double conj_dev = 0.0;
    for (int t = 0; t < 100; ++t)
        conj_dev = std::max(conj_dev,
                            std::abs(cr_residual(conj, rng.element(c, -1.5, 1.5))
                                         .relative_residual -
                                     1.0));
    criterion(14, "Cauchy-Riemann residuals", worst < 1e-6 && conj_dev < 1e-6,
              "max differentiable residual " + fmt(worst) + ", conj deviation " +
                  fmt(conj_dev));
}

}  // namespace

int main() {
    criterion_1();
    criterion_2();
    criterion_3();
    criterion_4();
    criterion_5();
    criterion_6();
    criterion_7();
    criterion_8();
    criterion_9();
    criterion_10();
    criterion_11();
    criterion_12();
    criterion_13();
    criterion_14();
    std::printf("%d of 14 criteria failed\n", failures);
    return failures == 0 ? 0 : 1;
}
