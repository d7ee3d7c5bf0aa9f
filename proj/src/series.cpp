#include "acalc/series.hpp"

#include <cmath>
#include <deque>
#include <sstream>

namespace acalc {

const char* to_string(Verdict v) {
    switch (v) {
        case Verdict::Converges: return "converges";
        case Verdict::Diverges: return "diverges";
        case Verdict::Inconclusive: return "inconclusive";
    }
    return "?";
}

const char* to_string(SumStatus s) {
    switch (s) {
        case SumStatus::Converged: return "converged";
        case SumStatus::Diverged: return "diverged";
        case SumStatus::Inconclusive: return "inconclusive";
    }
    return "?";
}

namespace {

Element fetch(const TermStream& s, std::int64_t n) {
    Element a = s.term(n);
    if (a.algebra() != s.algebra)
        throw AlgebraMismatch("term stream produced an element of another algebra");
    return a;
}

}  // namespace

SumResult sum(const TermStream& s, double tol, int window) {
    if (!(tol > 0.0)) throw AlgebraError("sum requires tol > 0");
    if (window < 1) throw AlgebraError("sum requires window >= 1");

    Element partial = s.algebra->zero();
    // anchors[0] is the partial sum `window` terms ago; differences against it
    // are the windowed Cauchy segments ||sum_{k=n0}^{m} a_k||.
    std::deque<Eigen::VectorXd> anchors;
    anchors.push_back(partial.coords());

    double oscillation = std::numeric_limits<double>::infinity();
    for (std::int64_t n = 0; n < s.max_terms; ++n) {
        const Element a = fetch(s, n);
        if (!a.is_finite()) throw NonFiniteTerm("term " + std::to_string(n) + " is not finite");
        const double an = a.norm();
        partial = partial + a;
        if (an > kDivergenceGuard || partial.norm() > kDivergenceGuard)
            return {partial, SumStatus::Diverged, n + 1, an};

        anchors.push_back(partial.coords());
        if (static_cast<std::int64_t>(anchors.size()) > window + 1) anchors.pop_front();
        if (static_cast<std::int64_t>(anchors.size()) == window + 1 && an < tol) {
            oscillation = 0.0;
            for (std::size_t i = 1; i < anchors.size(); ++i)
                oscillation = std::max(oscillation, (anchors[i] - anchors[0]).norm());
            if (oscillation < tol)
                return {partial, SumStatus::Converged, n + 1, oscillation};
        }
    }
    return {partial, SumStatus::Inconclusive, s.max_terms,
            std::isfinite(oscillation) ? oscillation : 0.0};
}

RootTestReport root_test(const TermStream& s, std::int64_t probe, double margin) {
    if (probe < 32) throw AlgebraError("root_test requires probe >= 32");
    double alpha = 0.0;
    for (std::int64_t n = probe / 2; n <= probe; ++n) {
        const Element a = fetch(s, n);
        if (!a.is_finite()) throw NonFiniteTerm("term " + std::to_string(n) + " is not finite");
        const double an = a.norm();
        if (an > 0.0)
            alpha = std::max(alpha, std::pow(an, 1.0 / static_cast<double>(n)));
    }
    Verdict v = Verdict::Inconclusive;
    if (alpha < 1.0 - margin) v = Verdict::Converges;
    else if (alpha > 1.0 + margin) v = Verdict::Diverges;
    return {alpha, v};
}

RatioTestReport ratio_test(const TermStream& s, std::int64_t probe, double margin) {
    if (probe < 32) throw AlgebraError("ratio_test requires probe >= 32");
    RatioTestReport rep{0.0, Verdict::Inconclusive, false, false};

    double prev = fetch(s, 0).norm();
    std::vector<double> ratios;
    ratios.reserve(probe);
    for (std::int64_t n = 1; n <= probe; ++n) {
        const double cur = fetch(s, n).norm();
        if (!std::isfinite(cur)) throw NonFiniteTerm("term " + std::to_string(n) + " is not finite");
        if (prev == 0.0) {
            rep.zero_term = true;
            return rep;
        }
        ratios.push_back(cur / prev);
        prev = cur;
    }

    const std::size_t half = ratios.size() / 2;
    for (std::size_t i = half; i < ratios.size(); ++i)
        rep.ratio_limsup = std::max(rep.ratio_limsup, ratios[i]);

    if (rep.ratio_limsup < 1.0 - margin) {
        rep.verdict = Verdict::Converges;
        return rep;
    }
    // Divergence needs ratios >= 1 for every n from some n0 onward. Require a
    // trailing run covering at least the last half of the probe.
    std::size_t run_start = ratios.size();
    while (run_start > 0 && ratios[run_start - 1] >= 1.0) --run_start;
    if (run_start <= half && run_start < ratios.size()) {
        rep.verdict = Verdict::Diverges;
        rep.probe_limited = true;
    }
    return rep;
}

ComparisonReport comparison_test(const TermStream& s,
                                 const std::function<double(std::int64_t)>& bound,
                                 bool bound_converges, std::int64_t probe) {
    for (std::int64_t n = 0; n < probe; ++n) {
        const double an = fetch(s, n).norm();
        const double bn = bound(n);
        if (bn < 0.0)
            return {ComparisonVerdict::Inconclusive,
                    "bound is negative at n=" + std::to_string(n)};
        const bool ok = bound_converges ? (an <= bn * (1.0 + 1e-12) + 1e-300)
                                        : (bn <= an * (1.0 + 1e-12) + 1e-300);
        if (!ok) {
            std::ostringstream msg;
            msg << "hypothesis fails at n=" << n << ": ||a_n||=" << an
                << " bound=" << bn;
            return {ComparisonVerdict::Inconclusive, msg.str()};
        }
    }
    if (bound_converges)
        return {ComparisonVerdict::ConvergesAbsolutely, ""};
    return {ComparisonVerdict::DivergesInNorm, ""};
}

TermStream cauchy_product(const TermStream& a, const TermStream& b) {
    if (a.algebra != b.algebra)
        throw AlgebraMismatch("cauchy_product requires streams over one algebra");
    TermStream out;
    out.algebra = a.algebra;
    out.max_terms = std::min(a.max_terms, b.max_terms);
    out.term = [a, b](std::int64_t n) {
        Element c = a.algebra->zero();
        for (std::int64_t k = 0; k <= n; ++k) c = c + mul(a.term(k), b.term(n - k));
        return c;
    };
    return out;
}

}  // namespace acalc
