#pragma once

#include "acalc/algebra.hpp"

#include <initializer_list>

namespace acalc_test {

inline std::size_t flat(int n, int i, int j, int k) {
    return (static_cast<std::size_t>(i) * n + j) * n + k;
}

/// Basis E11, E12, E21, E22 with E_ab E_cd = delta_bc E_ad (noncommutative).
inline acalc::Algebra matrix_algebra_2x2() {
    const int n = 4;
    auto idx = [](int r, int c) { return 2 * r + c; };
    std::vector<double> t(64, 0.0);
    for (int a = 0; a < 2; ++a)
        for (int b = 0; b < 2; ++b)
            for (int c = 0; c < 2; ++c)
                for (int d = 0; d < 2; ++d)
                    if (b == c) t[flat(n, idx(a, b), idx(c, d), idx(a, d))] = 1.0;
    Eigen::VectorXd unity(4);
    unity << 1, 0, 0, 1;
    return acalc::build_algebra(t, unity, {"E11", "E12", "E21", "E22"});
}

/// 1, i, j, k with i^2 = j^2 = k^2 = -1, ij = k, jk = i, ki = j.
inline acalc::Algebra quaternions() {
    const int n = 4;
    std::vector<double> t(64, 0.0);
    auto set = [&](int a, int b, int c, double s) { t[flat(n, a, b, c)] = s; };
    for (int a = 0; a < 4; ++a) { set(0, a, a, 1.0); if (a) set(a, 0, a, 1.0); }
    set(1, 1, 0, -1.0); set(2, 2, 0, -1.0); set(3, 3, 0, -1.0);
    set(1, 2, 3, 1.0);  set(2, 1, 3, -1.0);
    set(2, 3, 1, 1.0);  set(3, 2, 1, -1.0);
    set(3, 1, 2, 1.0);  set(1, 3, 2, -1.0);
    Eigen::VectorXd unity(4);
    unity << 1, 0, 0, 0;
    return acalc::build_algebra(t, unity, {"1", "i", "j", "k"});
}

inline acalc::Element elem(const acalc::Algebra& a, std::initializer_list<double> coords) {
    Eigen::VectorXd v(a->dim());
    int i = 0;
    for (double c : coords) v[i++] = c;
    return a->element(std::move(v));
}

}  // namespace acalc_test
