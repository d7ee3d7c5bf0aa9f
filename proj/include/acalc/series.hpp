#pragma once

#include "acalc/algebra.hpp"

#include <functional>
#include <string>

/// Numerical series over an algebra: adaptive summation with a windowed
/// Cauchy-criterion stopping rule, the elementary convergence tests and the
/// Cauchy product.
namespace acalc {

struct NonFiniteTerm : AlgebraError {
    using AlgebraError::AlgebraError;
};

/// A deterministic term rule n -> a_n (0-based) with an evaluation cap.
struct TermStream {
    Algebra algebra;
    std::function<Element(std::int64_t)> term;
    std::int64_t max_terms = 4000;
};

enum class SumStatus { Converged, Diverged, Inconclusive };

struct SumResult {
    Element value;
    SumStatus status;
    std::int64_t terms_used;
    /// trailing-window oscillation actually observed; on divergence, the
    /// term norm that tripped the guard
    double tail_estimate;
};

/// Growth bound past which a stream is declared divergent (applied to both
/// term norms and partial sums). The engine never claims divergence from
/// slow growth alone; hitting max_terms yields Inconclusive.
inline constexpr double kDivergenceGuard = 1e12;

/// Accumulates partial sums until, over a trailing window of `window` terms,
/// every partial-sum difference from the window anchor stays below `tol` and
/// the current term norm is below `tol`. Both conditions are required since
/// zero terms may interleave (odd-only series).
SumResult sum(const TermStream& s, double tol, int window = 8);

enum class Verdict { Converges, Diverges, Inconclusive };

const char* to_string(Verdict v);
const char* to_string(SumStatus s);

struct RootTestReport {
    double alpha_estimate;  ///< trailing-half max of ||a_n||^{1/n}
    Verdict verdict;
};

/// Numerical n-th root test. The limsup estimate is the maximum over the
/// trailing half of [1, probe]; verdicts use a +-margin dead zone around 1.
RootTestReport root_test(const TermStream& s, std::int64_t probe,
                         double margin = 0.02);

struct RatioTestReport {
    double ratio_limsup;  ///< trailing-half max of consecutive norm ratios
    Verdict verdict;
    bool zero_term = false;      ///< a probed term had zero norm
    bool probe_limited = false;  ///< divergence seen on a finite probe only
};

/// Numerical ratio test. Divergence is reported only when the ratios are
/// >= 1 for every n from some n0 through the end of the probe, and is
/// flagged probe_limited because a finite probe cannot certify "for all n".
RatioTestReport ratio_test(const TermStream& s, std::int64_t probe,
                           double margin = 0.02);

enum class ComparisonVerdict { ConvergesAbsolutely, DivergesInNorm, Inconclusive };

struct ComparisonReport {
    ComparisonVerdict verdict;
    std::string diagnostic;
};

/// Comparison test against a nonnegative real bound sequence. With
/// bound_converges the hypothesis ||a_n|| <= bound(n) is checked on the probe
/// range and yields absolute convergence; otherwise bound(n) <= ||a_n|| with a
/// divergent bound yields divergence in norm. A violated hypothesis returns
/// Inconclusive with a diagnostic.
ComparisonReport comparison_test(const TermStream& s,
                                 const std::function<double(std::int64_t)>& bound,
                                 bool bound_converges, std::int64_t probe = 256);

/// Convolution stream c_n = sum_{k<=n} a_k ⋆ b_{n-k}.
TermStream cauchy_product(const TermStream& a, const TermStream& b);

}  // namespace acalc
