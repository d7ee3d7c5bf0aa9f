#pragma once

#include "acalc/series.hpp"

#include <optional>
#include <vector>

/// Power series over an algebra: radius estimation from the modified root
/// and ratio tests, pointwise evaluation, center shifting, term-wise
/// derivatives, entire extensions of real series and empirical
/// convergence-region scans over 2-D slices.
namespace acalc {

struct CenterMismatch : AlgebraError {
    using AlgebraError::AlgebraError;
};

struct DegenerateSlice : AlgebraError {
    using AlgebraError::AlgebraError;
};

struct NotEntireAndBeyondRadius : AlgebraError {
    using AlgebraError::AlgebraError;
};

/// sum_n c_n ⋆ (z - center)^n with a deterministic coefficient rule.
/// When every coefficient is a real multiple of unity the scalar rule is kept
/// alongside (real_coeff); evaluation then runs through cached powers, which
/// is safe because no coefficient can annihilate the growing part of z^n.
/// Element-coefficient series are evaluated by chaining the term itself,
/// t_n = t_{n-1} ⋆ (z - center) when consecutive coefficients agree, so that
/// products with zero-divisor coefficients collapse before the power can
/// contaminate them.
class PowerSeries {
public:
    static PowerSeries with_coeffs(Algebra algebra,
                                   std::function<Element(std::int64_t)> coeff,
                                   std::optional<Element> center = std::nullopt);
    static PowerSeries with_real_coeffs(Algebra algebra,
                                        std::function<double(std::int64_t)> coeff,
                                        std::optional<Element> center = std::nullopt);
    static PowerSeries from_list(Algebra algebra, std::vector<Element> coeffs,
                                 std::optional<Element> center = std::nullopt);
    /// Geometric series: every coefficient is unity.
    static PowerSeries geometric_series(Algebra algebra);

    const Algebra& algebra() const { return algebra_; }
    const Element& center() const { return center_; }
    Element coeff(std::int64_t n) const { return coeff_(n); }
    bool real_coeffs() const { return static_cast<bool>(real_coeff_); }
    double real_coeff(std::int64_t n) const { return real_coeff_(n); }
    const std::function<Element(std::int64_t)>& coeff_fn() const { return coeff_; }
    const std::function<double(std::int64_t)>& real_coeff_fn() const { return real_coeff_; }

    PowerSeries shifted(Element new_center) const;

private:
    PowerSeries() = default;
    friend PowerSeries derivative_series(const PowerSeries&, int);
    friend PowerSeries product_series(const PowerSeries&, const PowerSeries&);

    Algebra algebra_;
    Element center_;
    std::function<Element(std::int64_t)> coeff_;
    std::function<double(std::int64_t)> real_coeff_;  // null unless scalar rule known
};

// ---------------------------------------------------------------------------
// Radii
// ---------------------------------------------------------------------------

struct RadiusReport {
    double alpha_root;        ///< limsup ||c_n||^{1/n} estimate
    double alpha_ratio;       ///< limsup of consecutive coefficient norm ratios
    double alpha_ratio_unit;  ///< limsup ||c_{n+1} ⋆ c_n^{-1}||; NaN unless certified
    double R_root;            ///< 1/(m alpha_root); +inf when alpha ~ 0
    /// 1/(m^2 alpha); needs unit coefficients and guarantees convergence
    /// only at unit arguments inside the ball (the test says nothing about
    /// zero divisors, where larger domains are possible)
    std::optional<double> R_ratio_unit;
    std::optional<double> R_ratio_real;  ///< 1/(m alpha), needs real coefficients
    double m_used;
    std::int64_t probe;
    bool unit_coeffs;  ///< units certified on the trailing probe window
    bool real_coeffs;
    bool entire;  ///< alpha_root below the smallness threshold
};

/// Estimates the guaranteed radii. alpha_root uses a paired-window quotient
/// (max coefficient norm of the last quarter against the preceding quarter),
/// which cancels polynomial modulation that the plain n-th root absorbs only
/// as O(log n / n). Ratio limsups are trailing-half maxima. Unit coefficients
/// are certified on the same trailing window that feeds the ratio estimate,
/// so a series whose first few coefficients vanish still gets a unit radius.
RadiusReport estimate_radii(const PowerSeries& p, std::int64_t probe,
                            bool use_theoretical_m = false);

// ---------------------------------------------------------------------------
// Evaluation
// ---------------------------------------------------------------------------

struct EvalOptions {
    double tol = 1e-10;
    int window = 8;
    std::int64_t max_terms = 4000;
};

/// Sums c_n ⋆ (z - center)^n adaptively; see sum() for the stopping rule.
SumResult eval(const PowerSeries& p, const Element& z, const EvalOptions& opts = {});
SumResult eval(const PowerSeries& p, const Element& z, double tol);

/// Partial sum of terms 0..n inclusive, no stopping rule.
Element eval_truncated(const PowerSeries& p, const Element& z, std::int64_t n);

/// The term stream c_n ⋆ (z - center)^n used by eval.
TermStream term_stream(const PowerSeries& p, const Element& z,
                       std::int64_t max_terms = 4000);

// ---------------------------------------------------------------------------
// Calculus on series
// ---------------------------------------------------------------------------

/// k-th term-wise derivative: coeff'(n) = (n+k)(n+k-1)...(n+1) c_{n+k}.
PowerSeries derivative_series(const PowerSeries& p, int k = 1);

/// Cauchy-product coefficients; both inputs must share algebra and center.
PowerSeries product_series(const PowerSeries& a, const PowerSeries& b);

struct EntireExtension {
    PowerSeries series;
    double alpha_estimate;   ///< root-alpha of the input coefficients
    bool entire_check_passed;
};

/// Lifts a real coefficient rule to the algebra (c_n = a_n * unity, center 0).
/// The caller asserts the real series is entire; the alpha estimate is
/// reported and entire_check_passed is false when it is not ~0.
EntireExtension entire_extension(std::function<double(std::int64_t)> real_coeffs,
                                 Algebra algebra, std::int64_t probe = 64);

struct GeometricResult {
    SumResult sum;
    /// ||sum - (1 - z)^{-1}|| when 1 - z is a unit.
    std::optional<double> inverse_mismatch;
};

/// Evaluates the geometric series at z and, when 1-z is invertible, checks
/// the closed form.
GeometricResult geometric(const Algebra& algebra, const Element& z,
                          const EvalOptions& opts = {});

/// Smallest n with sum_{k>n} m_used^k ||c_k|| L^k < tol (majorant tail).
/// Requires the series to look entire or L < R_root; throws
/// NotEntireAndBeyondRadius otherwise.
std::int64_t uniform_tail_bound(const PowerSeries& p, double L, double tol,
                                std::int64_t probe = 64,
                                std::int64_t hard_cap = 100000);

// ---------------------------------------------------------------------------
// Region scans
// ---------------------------------------------------------------------------

struct Slice {
    Element origin;
    Element axis_u;
    Element axis_v;
};

struct GridSpec {
    double u_min, u_max;
    double v_min, v_max;
    int nu, nv;  ///< grid points per axis, endpoints included
};

struct RegionScan {
    Slice slice;
    GridSpec grid;
    std::vector<double> u_values, v_values;
    /// verdict(iu, iv), row-major with u outermost.
    std::vector<SumStatus> verdicts;
    /// converged values, engaged only where verdict is Converged
    std::vector<std::optional<Element>> values;

    SumStatus verdict_at(int iu, int iv) const {
        return verdicts[static_cast<std::size_t>(iu) * grid.nv + iv];
    }
    const std::optional<Element>& value_at(int iu, int iv) const {
        return values[static_cast<std::size_t>(iu) * grid.nv + iv];
    }
    std::int64_t count(SumStatus s) const;
};

/// Per-cell eval verdict at z = origin + u * axis_u + v * axis_v.
/// Cells are pure and independent; the scan is data-parallel over rows.
/// Throws DegenerateSlice when the axes are linearly dependent.
RegionScan region_scan(const PowerSeries& p, const Slice& slice,
                       const GridSpec& grid, const EvalOptions& opts = {},
                       int threads = 0);

}  // namespace acalc
