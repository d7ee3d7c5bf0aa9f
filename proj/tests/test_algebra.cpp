#include "acalc/algebra.hpp"

#include "test_support.hpp"

#include <doctest.h>

#include <cmath>

using namespace acalc;

namespace {

using acalc_test::elem;
using acalc_test::flat;
using acalc_test::matrix_algebra_2x2;
using acalc_test::quaternions;

}  // namespace

TEST_CASE("build_algebra validates the complex constants") {
    const Algebra c = preset(Preset::Complex);
    CHECK(c->dim() == 2);
    CHECK(c->commutative());
    // i * i = -1
    const Element i = c->basis_vector(1);
    const Element ii = mul(i, i);
    CHECK(ii.coord(0) == -1.0);
    CHECK(ii.coord(1) == 0.0);
}

TEST_CASE("one-dimensional reals have unit norm constant") {
    Eigen::VectorXd unity(1);
    unity << 1.0;
    const Algebra r = build_algebra({1.0}, unity);
    CHECK(r->m_theoretical() == 1.0);  // 1 * (1 - 1 + 1) * sqrt(1)
    CHECK(r->m_empirical() == doctest::Approx(1.0).epsilon(1e-8));
}

TEST_CASE("non-associative constants are rejected with the residual") {
    // 3-dim table where (a a) a = 0 but a (a a) = 1.
    const int n = 3;
    std::vector<double> t(27, 0.0);
    for (int a = 0; a < 3; ++a) { t[flat(n, 0, a, a)] = 1.0; if (a) t[flat(n, a, 0, a)] = 1.0; }
    t[flat(n, 1, 1, 2)] = 1.0;  // a*a = b
    t[flat(n, 1, 2, 0)] = 1.0;  // a*b = 1
    Eigen::VectorXd unity(3);
    unity << 1, 0, 0;
    CHECK_THROWS_AS(build_algebra(t, unity), AssociativityViolation);
    try {
        build_algebra(t, unity);
    } catch (const AssociativityViolation& e) {
        CHECK(e.max_residual >= 1.0);
    }
}

TEST_CASE("bad unity is rejected") {
    const Algebra c = preset(Preset::Complex);
    Eigen::VectorXd wrong(2);
    wrong << 0.0, 1.0;  // i is not the unity
    CHECK_THROWS_AS(build_algebra(c->constants(), wrong), UnityViolation);
}

TEST_CASE("presets") {
    const Algebra h = preset("hyperbolic");
    CHECK(h->dim() == 2);
    CHECK(h->commutative());
    const Element j = h->basis_vector(1);
    CHECK(mul(j, j).coord(0) == 1.0);

    const Algebra g3 = preset("Gamma_N:3");
    const Element eps = g3->basis_vector(1);
    CHECK(mul(mul(eps, eps), eps).norm() == 0.0);

    const Algebra rr = preset("direct_product:2");
    const Element x = elem(rr, {2.0, 3.0});
    const Element y = elem(rr, {5.0, 7.0});
    const Element xy = mul(x, y);
    CHECK(xy.coord(0) == 10.0);
    CHECK(xy.coord(1) == 21.0);

    CHECK_THROWS_AS(preset("nope"), UnknownPreset);
    CHECK_THROWS_AS(preset(Preset::H_N, 1), UnknownPreset);
}

TEST_CASE("hyperbolic zero divisors annihilate") {
    const Algebra h = preset(Preset::Hyperbolic);
    const Element p = elem(h, {1.0, 1.0});
    const Element m = elem(h, {1.0, -1.0});
    CHECK(mul(p, m).norm() == 0.0);
    // unital axiom on random elements
    Rng rng(7);
    for (int t = 0; t < 32; ++t) {
        const Element x = rng.element(h, -5.0, 5.0);
        CHECK((mul(h->unity(), x) - x).norm() == 0.0);
        CHECK((mul(x, h->unity()) - x).norm() == 0.0);
    }
}

TEST_CASE("regular representation matches the closed forms") {
    const Algebra c = preset(Preset::Complex);
    const Eigen::MatrixXd mc = regular_rep(elem(c, {3.0, 4.0}));
    CHECK(mc(0, 0) == 3.0);
    CHECK(mc(0, 1) == -4.0);
    CHECK(mc(1, 0) == 4.0);
    CHECK(mc(1, 1) == 3.0);

    const Algebra h = preset(Preset::Hyperbolic);
    const Eigen::MatrixXd mh = regular_rep(elem(h, {3.0, 4.0}));
    CHECK(mh(0, 0) == 3.0);
    CHECK(mh(0, 1) == 4.0);
    CHECK(mh(1, 0) == 4.0);
    CHECK(mh(1, 1) == 3.0);

    // M(x + j y + j^2 z) over the 3-hyperbolic numbers is the cyclic matrix
    // [[x, z, y], [y, x, z], [z, y, x]].
    const Algebra h3 = preset(Preset::H_N, 3);
    const Eigen::MatrixXd m3 = regular_rep(elem(h3, {1.0, 2.0, 3.0}));
    Eigen::MatrixXd want(3, 3);
    want << 1, 3, 2, 2, 1, 3, 3, 2, 1;
    CHECK((m3 - want).norm() == 0.0);

    for (const char* name : {"complex", "hyperbolic", "dual", "H_N:4", "direct_product:3"}) {
        const Algebra a = preset(name);
        CHECK((regular_rep(a->unity()) -
               Eigen::MatrixXd::Identity(a->dim(), a->dim())).norm() == 0.0);
    }
}

TEST_CASE("regular representation is a homomorphism") {
    Rng rng(11);
    for (const char* name : {"complex", "hyperbolic", "dual", "H_N:3", "C_N:4",
                             "Gamma_N:3", "direct_product:2"}) {
        const Algebra a = preset(name);
        for (int t = 0; t < 200; ++t) {
            const Element x = rng.element(a, -3.0, 3.0);
            const Element y = rng.element(a, -3.0, 3.0);
            const double res =
                (regular_rep(mul(x, y)) - regular_rep(x) * regular_rep(y)).norm();
            CHECK(res <= 1e-10 * (1.0 + x.norm() * y.norm()));
        }
    }
}

TEST_CASE("bilinearity") {
    Rng rng(13);
    const Algebra a = preset(Preset::H_N, 4);
    for (int t = 0; t < 100; ++t) {
        const Element x = rng.element(a, -2.0, 2.0);
        const Element y = rng.element(a, -2.0, 2.0);
        const Element z = rng.element(a, -2.0, 2.0);
        const double c = rng.uniform(-3.0, 3.0);
        const Element lhs = mul(x * c + y, z);
        const Element rhs = mul(x, z) * c + mul(y, z);
        CHECK((lhs - rhs).norm() <= 1e-12 * (1.0 + lhs.norm()));
    }
}

TEST_CASE("classification and inverse on the hyperbolic numbers") {
    const Algebra h = preset(Preset::Hyperbolic);
    CHECK(classify(elem(h, {1.0, 1.0})) == ElementKind::ZeroDivisor);
    CHECK(classify(elem(h, {2.0, 1.0})) == ElementKind::Unit);
    CHECK(classify(h->zero()) == ElementKind::Zero);

    // 1/(a+bj) = (a-bj)/(a^2-b^2)
    const Element inv = inverse(elem(h, {2.0, 1.0}));
    CHECK(inv.coord(0) == doctest::Approx(2.0 / 3.0).epsilon(1e-12));
    CHECK(inv.coord(1) == doctest::Approx(-1.0 / 3.0).epsilon(1e-12));
    CHECK((mul(elem(h, {2.0, 1.0}), inv) - h->unity()).norm() < 1e-10);

    CHECK((inverse(h->unity()) - h->unity()).norm() < 1e-14);
    CHECK_THROWS_AS(inverse(elem(h, {1.0, 1.0})), NotInvertible);

    // the zero-divisor set is the pair of lines a^2 = b^2
    Rng rng(17);
    for (int t = 0; t < 200; ++t) {
        const Element x = rng.element(h, -2.0, 2.0);
        const bool on_lines =
            std::abs(x.coord(0) * x.coord(0) - x.coord(1) * x.coord(1)) < 1e-9;
        const ElementKind kind = classify(x);
        if (kind == ElementKind::ZeroDivisor) CHECK(on_lines);
        if (!on_lines && x.norm() > 1e-6) CHECK(kind == ElementKind::Unit);
    }
}

TEST_CASE("norm constants") {
    const Algebra h = preset(Preset::Hyperbolic);
    CHECK(h->m_theoretical() == 3.0 * std::sqrt(2.0));
    CHECK(h->m_empirical() == doctest::Approx(std::sqrt(2.0)).epsilon(1e-6));

    const Algebra c = preset(Preset::Complex);
    CHECK(c->m_empirical() == doctest::Approx(1.0).epsilon(1e-6));

    const Algebra rr = preset(Preset::DirectProduct, 2);
    CHECK(rr->m_empirical() == doctest::Approx(1.0).epsilon(1e-6));

    CHECK(h->m_empirical() <= h->m_theoretical());
}

TEST_CASE("submultiplicativity and the power bound") {
    Rng rng(19);
    for (const char* name : {"hyperbolic", "C_N:3", "Gamma_N:4", "direct_product:2"}) {
        const Algebra a = preset(name);
        const double m = a->m_empirical();
        for (int t = 0; t < 100; ++t) {
            const Element x = rng.element(a, -2.0, 2.0);
            const Element y = rng.element(a, -2.0, 2.0);
            CHECK(mul(x, y).norm() <= m * x.norm() * y.norm() * (1.0 + 1e-9));
        }
        const Element z = rng.element(a, -1.0, 1.0);
        Element zn = a->unity();
        for (int n = 1; n <= 20; ++n) {
            zn = mul(zn, z);
            CHECK(zn.norm() <= std::pow(m, n) * std::pow(z.norm(), n) * (1.0 + 1e-9) + 1e-300);
        }
    }
}

TEST_CASE("quotient inequality") {
    Rng rng(23);
    const Algebra h = preset(Preset::Hyperbolic);
    const double m = h->m_empirical();
    int checked = 0;
    while (checked < 100) {
        const Element b = rng.element(h, -2.0, 2.0);
        if (classify(b) != ElementKind::Unit) continue;
        const Element a = rng.element(h, -2.0, 2.0);
        const double lhs = a.norm() / b.norm();
        const double rhs = m * mul(a, inverse(b)).norm();
        CHECK(lhs <= rhs * (1.0 + 1e-9));
        ++checked;
    }
}

TEST_CASE("hyperbolic isomorphism") {
    const Algebra h = preset(Preset::Hyperbolic);
    const Algebra rr = preset(Preset::DirectProduct, 2);

    const Element img = hyperbolic_isomorphism(IsoDirection::ToHyperbolic,
                                               elem(rr, {1.0, 0.0}), h);
    CHECK(img.coord(0) == 0.5);
    CHECK(img.coord(1) == 0.5);

    const Element back = hyperbolic_isomorphism(IsoDirection::ToDirectProduct,
                                                elem(h, {3.0, 4.0}), rr);
    CHECK(back.coord(0) == 7.0);
    CHECK(back.coord(1) == -1.0);

    CHECK((hyperbolic_isomorphism(IsoDirection::ToHyperbolic, elem(rr, {1.0, 1.0}), h) -
           h->unity()).norm() == 0.0);

    Rng rng(29);
    for (int t = 0; t < 100; ++t) {
        const Element u = rng.element(rr, -2.0, 2.0);
        const Element v = rng.element(rr, -2.0, 2.0);
        // algebra homomorphism and a two-sided inverse
        const Element lhs = hyperbolic_isomorphism(IsoDirection::ToHyperbolic, mul(u, v), h);
        const Element rhs = mul(hyperbolic_isomorphism(IsoDirection::ToHyperbolic, u, h),
                                hyperbolic_isomorphism(IsoDirection::ToHyperbolic, v, h));
        CHECK((lhs - rhs).norm() < 1e-12 * (1.0 + lhs.norm()));
        const Element round =
            hyperbolic_isomorphism(IsoDirection::ToDirectProduct,
                                   hyperbolic_isomorphism(IsoDirection::ToHyperbolic, u, h), rr);
        CHECK((round - u).norm() < 1e-12 * (1.0 + u.norm()));
    }

    CHECK_THROWS_AS(hyperbolic_isomorphism(IsoDirection::ToHyperbolic,
                                           elem(h, {1.0, 0.0}), h),
                    AlgebraMismatch);
}

TEST_CASE("noncommutative algebras are accepted and flagged") {
    const Algebra q = quaternions();
    CHECK_FALSE(q->commutative());
    // ij = k, ji = -k
    const Element i = q->basis_vector(1), j = q->basis_vector(2);
    CHECK((mul(i, j) - q->basis_vector(3)).norm() == 0.0);
    CHECK((mul(j, i) + q->basis_vector(3)).norm() == 0.0);

    const Algebra m2 = matrix_algebra_2x2();
    CHECK_FALSE(m2->commutative());
    CHECK((mul(m2->unity(), m2->basis_vector(1)) - m2->basis_vector(1)).norm() == 0.0);
}

TEST_CASE("generated-algebra detection") {
    CHECK(detect_generated(preset("hyperbolic")).has_value());
    CHECK(detect_generated(preset("complex"))->power_value == -1.0);
    CHECK(detect_generated(preset("H_N:5"))->power_value == 1.0);
    CHECK(detect_generated(preset("Gamma_N:4"))->power_value == 0.0);
    CHECK_FALSE(detect_generated(preset("direct_product:2")).has_value());
    CHECK_FALSE(detect_generated(matrix_algebra_2x2()).has_value());
}

TEST_CASE("element arithmetic guards") {
    const Algebra h = preset(Preset::Hyperbolic);
    const Algebra c = preset(Preset::Complex);
    CHECK_THROWS_AS(mul(h->unity(), c->unity()), AlgebraMismatch);
    Eigen::VectorXd three(3);
    three << 1, 2, 3;
    CHECK_THROWS_AS(h->element(three), DimensionMismatch);
}
