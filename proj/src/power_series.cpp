#include "acalc/power_series.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <memory>
#include <thread>

namespace acalc {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

// alpha below this is treated as "looks entire" at the given probe depth.
double entire_threshold(std::int64_t probe) { return 4.0 / static_cast<double>(probe); }

bool bits_equal(const Eigen::VectorXd& a, const Eigen::VectorXd& b) {
    if (a.size() != b.size()) return false;
    for (Eigen::Index i = 0; i < a.size(); ++i)
        if (a[i] != b[i]) return false;
    return true;
}

}  // namespace

// ---------------------------------------------------------------------------
// Construction
// ---------------------------------------------------------------------------

PowerSeries PowerSeries::with_coeffs(Algebra algebra,
                                     std::function<Element(std::int64_t)> coeff,
                                     std::optional<Element> center) {
    PowerSeries p;
    p.algebra_ = algebra;
    p.center_ = center ? *center : algebra->zero();
    if (p.center_.algebra() != algebra)
        throw AlgebraMismatch("center belongs to another algebra");
    p.coeff_ = std::move(coeff);
    return p;
}

PowerSeries PowerSeries::with_real_coeffs(Algebra algebra,
                                          std::function<double(std::int64_t)> coeff,
                                          std::optional<Element> center) {
    PowerSeries p = with_coeffs(
        algebra,
        [algebra, coeff](std::int64_t n) { return algebra->scalar(coeff(n)); },
        std::move(center));
    p.real_coeff_ = std::move(coeff);
    return p;
}

PowerSeries PowerSeries::from_list(Algebra algebra, std::vector<Element> coeffs,
                                   std::optional<Element> center) {
    for (const Element& c : coeffs)
        if (c.algebra() != algebra)
            throw AlgebraMismatch("coefficient belongs to another algebra");
    auto stored = std::make_shared<std::vector<Element>>(std::move(coeffs));
    return with_coeffs(
        algebra,
        [algebra, stored](std::int64_t n) {
            if (n < static_cast<std::int64_t>(stored->size()))
                return (*stored)[static_cast<std::size_t>(n)];
            return algebra->zero();
        },
        std::move(center));
}

PowerSeries PowerSeries::geometric_series(Algebra algebra) {
    return with_real_coeffs(algebra, [](std::int64_t) { return 1.0; });
}

PowerSeries PowerSeries::shifted(Element new_center) const {
    if (new_center.algebra() != algebra_)
        throw AlgebraMismatch("center belongs to another algebra");
    PowerSeries p = *this;
    p.center_ = std::move(new_center);
    return p;
}

// ---------------------------------------------------------------------------
// Term stream and evaluation
// ---------------------------------------------------------------------------

TermStream term_stream(const PowerSeries& p, const Element& z,
                       std::int64_t max_terms) {
    if (z.algebra() != p.algebra())
        throw AlgebraMismatch("evaluation point belongs to another algebra");
    const Element w = z - p.center();

    TermStream s;
    s.algebra = p.algebra();
    s.max_terms = max_terms;

    if (p.real_coeffs()) {
        // Cached powers of w; scalar coefficients cannot cancel against the
        // power, so this is stable.
        struct State {
            std::vector<Element> powers;
        };
        auto st = std::make_shared<State>();
        st->powers.push_back(p.algebra()->unity());
        const auto real_rule = p.real_coeff_fn();
        s.term = [st, real_rule, w](std::int64_t n) {
            while (static_cast<std::int64_t>(st->powers.size()) <= n)
                st->powers.push_back(st->powers.back() * w);
            return st->powers[static_cast<std::size_t>(n)] * real_rule(n);
        };
        return s;
    }

    // Element coefficients: chain the whole term, t_n = t_{n-1} ⋆ w whenever
    // the coefficient repeats, so zero-divisor cancellations happen inside
    // every step instead of being recovered from a large power afterwards.
    //
    // When c ⋆ w lands back on the ray through c up to rounding (the band
    // and slab series), the chain degenerates to the scalar recurrence
    // t_n = rho^n c. Chaining element products instead would re-inject
    // rounding into the annihilated eigendirections, where it grows
    // geometrically; treating the ray as exactly invariant is the
    // backward-stable reading of the coefficient bits.
    struct State {
        std::int64_t n = -1;
        Element coeff;
        Element chain;
        bool ray_checked = false;
        bool on_ray = false;
        double rho = 0.0;
        double scale = 1.0;
    };
    auto st = std::make_shared<State>();
    const auto coeff_rule = p.coeff_fn();
    const double ray_tol = 16.0 * std::numeric_limits<double>::epsilon() *
                           p.algebra()->m_empirical() * w.norm();
    s.term = [st, coeff_rule, w, ray_tol](std::int64_t n) {
        Element c = coeff_rule(n);
        if (n == 0) {
            st->n = 0;
            st->coeff = c;
            st->chain = c;
            st->ray_checked = false;
            st->on_ray = false;
            st->scale = 1.0;
            return c;
        }
        const bool continues = st->n == n - 1 && st->chain.algebra() &&
                               bits_equal(c.coords(), st->coeff.coords());
        if (continues) {
            if (!st->ray_checked) {
                st->ray_checked = true;
                const Element cw = c * w;
                const double cc = c.coords().squaredNorm();
                if (cc > 0.0) {
                    const double rho = c.coords().dot(cw.coords()) / cc;
                    if ((cw - c * rho).norm() <= ray_tol * c.norm()) {
                        st->on_ray = true;
                        st->rho = rho;
                        // current position along the ray, in case the chain
                        // was rebuilt mid-stream
                        st->scale = st->chain.coords().dot(c.coords()) / cc;
                    }
                }
            }
            if (st->on_ray) {
                st->scale *= st->rho;
                st->chain = c * st->scale;
            } else {
                st->chain = st->chain * w;
            }
        } else {
            Element t = c;
            for (std::int64_t k = 0; k < n; ++k) t = t * w;
            st->chain = t;
            st->ray_checked = false;
            st->on_ray = false;
            st->scale = 1.0;
        }
        st->n = n;
        st->coeff = c;
        return st->chain;
    };
    return s;
}

SumResult eval(const PowerSeries& p, const Element& z, const EvalOptions& opts) {
    return sum(term_stream(p, z, opts.max_terms), opts.tol, opts.window);
}

SumResult eval(const PowerSeries& p, const Element& z, double tol) {
    EvalOptions opts;
    opts.tol = tol;
    return eval(p, z, opts);
}

Element eval_truncated(const PowerSeries& p, const Element& z, std::int64_t n) {
    TermStream s = term_stream(p, z, n + 1);
    Element acc = p.algebra()->zero();
    for (std::int64_t k = 0; k <= n; ++k) acc = acc + s.term(k);
    return acc;
}

// ---------------------------------------------------------------------------
// Radius estimation
// ---------------------------------------------------------------------------

RadiusReport estimate_radii(const PowerSeries& p, std::int64_t probe,
                            bool use_theoretical_m) {
    if (probe < 32) throw AlgebraError("estimate_radii requires probe >= 32");

    std::vector<double> norms(static_cast<std::size_t>(probe) + 1);
    std::vector<Element> tail_coeffs;
    for (std::int64_t n = 0; n <= probe; ++n) {
        Element c = p.coeff(n);
        if (!c.is_finite())
            throw NonFiniteTerm("coefficient " + std::to_string(n) + " is not finite");
        norms[static_cast<std::size_t>(n)] = c.norm();
        if (n >= probe / 2) tail_coeffs.push_back(std::move(c));
    }

    // Root alpha from the two trailing quarters.
    const std::int64_t q3_lo = probe / 2 + 1, q3_hi = (3 * probe) / 4;
    const std::int64_t q4_lo = q3_hi + 1, q4_hi = probe;
    double p1 = 0.0, p2 = 0.0;
    std::int64_t n1 = -1, n2 = -1;
    for (std::int64_t n = q3_lo; n <= q3_hi; ++n)
        if (norms[n] > p1) { p1 = norms[n]; n1 = n; }
    for (std::int64_t n = q4_lo; n <= q4_hi; ++n)
        if (norms[n] > p2) { p2 = norms[n]; n2 = n; }

    double alpha_root;
    if (p1 > 0.0 && p2 > 0.0 && n2 > n1) {
        alpha_root = std::pow(p2 / p1, 1.0 / static_cast<double>(n2 - n1));
    } else {
        alpha_root = 0.0;
        for (std::int64_t n = std::max<std::int64_t>(1, probe / 2); n <= probe; ++n)
            if (norms[n] > 0.0)
                alpha_root = std::max(alpha_root,
                                      std::pow(norms[n], 1.0 / static_cast<double>(n)));
    }

    // Ratio alpha over the trailing half. A zero coefficient followed by a
    // nonzero one means an infinite consecutive ratio, so the test is
    // inapplicable (interleaved-zero series like cosine). A zero followed by
    // another zero is a dead tail (truncation or underflow) and is skipped.
    double alpha_ratio = 0.0;
    bool ratio_defined = true;
    for (std::int64_t n = probe / 2; n < probe; ++n) {
        if (norms[n] == 0.0) {
            if (norms[n + 1] == 0.0) continue;
            ratio_defined = false;
            break;
        }
        alpha_ratio = std::max(alpha_ratio, norms[n + 1] / norms[n]);
    }
    if (!ratio_defined) alpha_ratio = kNaN;

    // Unit certification on the same trailing window, scale-invariantly:
    // c is a unit iff c/||c|| is, which keeps tiny coefficients like 1/n!
    // from tripping the absolute zero threshold.
    bool units = true;
    for (const Element& c : tail_coeffs) {
        const double nrm = c.norm();
        if (nrm == 0.0 || classify(c * (1.0 / nrm)) != ElementKind::Unit) {
            units = false;
            break;
        }
    }
    double alpha_ratio_unit = kNaN;
    if (units) {
        alpha_ratio_unit = 0.0;
        for (std::size_t i = 0; i + 1 < tail_coeffs.size(); ++i) {
            const double nrm = tail_coeffs[i].norm();
            const Element inv_hat = inverse(tail_coeffs[i] * (1.0 / nrm));
            alpha_ratio_unit = std::max(
                alpha_ratio_unit, mul(tail_coeffs[i + 1], inv_hat).norm() / nrm);
        }
    }

    RadiusReport rep;
    rep.alpha_root = alpha_root;
    rep.alpha_ratio = alpha_ratio;
    rep.alpha_ratio_unit = alpha_ratio_unit;
    rep.m_used = use_theoretical_m ? p.algebra()->m_theoretical()
                                   : p.algebra()->m_empirical();
    rep.probe = probe;
    rep.unit_coeffs = units;
    rep.real_coeffs = p.real_coeffs();

    const double thresh = entire_threshold(probe);
    rep.entire = alpha_root < thresh;
    rep.R_root = rep.entire ? kInf : 1.0 / (rep.m_used * alpha_root);
    if (units) {
        rep.R_ratio_unit = (alpha_ratio_unit < thresh)
                               ? kInf
                               : 1.0 / (rep.m_used * rep.m_used * alpha_ratio_unit);
    }
    if (p.real_coeffs() && ratio_defined) {
        rep.R_ratio_real =
            (alpha_ratio < thresh) ? kInf : 1.0 / (rep.m_used * alpha_ratio);
    }
    return rep;
}

// ---------------------------------------------------------------------------
// Derivatives and products
// ---------------------------------------------------------------------------

PowerSeries derivative_series(const PowerSeries& p, int k) {
    if (k < 1) throw AlgebraError("derivative order must be >= 1");
    PowerSeries d;
    d.algebra_ = p.algebra_;
    d.center_ = p.center_;
    auto falling = [k](std::int64_t n) {
        double f = 1.0;
        for (int i = 1; i <= k; ++i) f *= static_cast<double>(n + i);
        return f;
    };
    const auto base = p.coeff_;
    d.coeff_ = [base, falling, k](std::int64_t n) {
        return base(n + k) * falling(n);
    };
    if (p.real_coeff_) {
        const auto rbase = p.real_coeff_;
        d.real_coeff_ = [rbase, falling, k](std::int64_t n) {
            return rbase(n + k) * falling(n);
        };
    }
    return d;
}

PowerSeries product_series(const PowerSeries& a, const PowerSeries& b) {
    if (a.algebra() != b.algebra())
        throw AlgebraMismatch("product requires series over one algebra");
    if (!bits_equal(a.center().coords(), b.center().coords()))
        throw CenterMismatch("product requires a common center");
    PowerSeries prod;
    prod.algebra_ = a.algebra_;
    prod.center_ = a.center_;
    const auto ca = a.coeff_, cb = b.coeff_;
    prod.coeff_ = [ca, cb](std::int64_t n) {
        Element acc = ca(0) * cb(n);
        for (std::int64_t j = 1; j <= n; ++j) acc = acc + ca(j) * cb(n - j);
        return acc;
    };
    if (a.real_coeff_ && b.real_coeff_) {
        const auto ra = a.real_coeff_, rb = b.real_coeff_;
        prod.real_coeff_ = [ra, rb](std::int64_t n) {
            double acc = 0.0;
            for (std::int64_t j = 0; j <= n; ++j) acc += ra(j) * rb(n - j);
            return acc;
        };
    }
    return prod;
}

EntireExtension entire_extension(std::function<double(std::int64_t)> real_coeffs,
                                 Algebra algebra, std::int64_t probe) {
    PowerSeries p = PowerSeries::with_real_coeffs(algebra, std::move(real_coeffs));
    const RadiusReport r = estimate_radii(p, probe);
    return {std::move(p), r.alpha_root, r.entire};
}

GeometricResult geometric(const Algebra& algebra, const Element& z,
                          const EvalOptions& opts) {
    const PowerSeries g = PowerSeries::geometric_series(algebra);
    GeometricResult out{eval(g, z, opts), std::nullopt};
    const Element one_minus_z = algebra->unity() - z;
    if (classify(one_minus_z) == ElementKind::Unit)
        out.inverse_mismatch = (out.sum.value - inverse(one_minus_z)).norm();
    return out;
}

// ---------------------------------------------------------------------------
// Uniform tail bound
// ---------------------------------------------------------------------------

std::int64_t uniform_tail_bound(const PowerSeries& p, double L, double tol,
                                std::int64_t probe, std::int64_t hard_cap) {
    if (!(L >= 0.0) || !(tol > 0.0))
        throw AlgebraError("uniform_tail_bound requires L >= 0 and tol > 0");
    const RadiusReport r = estimate_radii(p, probe);
    if (!r.entire && !(L < r.R_root))
        throw NotEntireAndBeyondRadius(
            "series does not look entire and L is not inside the root radius");

    const double m = p.algebra()->m_empirical();
    std::vector<double> mu;
    mu.reserve(128);
    double mk = 1.0;  // m^k L^k
    std::int64_t stop = -1;
    for (std::int64_t k = 0; k < hard_cap; ++k) {
        const double v = mk * p.coeff(k).norm();
        if (!std::isfinite(v))
            throw NonFiniteTerm("majorant term " + std::to_string(k) + " is not finite");
        mu.push_back(v);
        // Remainder past k is controlled once the majorant has decayed twice
        // by at least half and sits well below tol.
        if (k >= 2) {
            const double a = mu[k - 2], b = mu[k - 1], c = mu[k];
            const bool decaying = (a == 0.0 && b == 0.0 && c == 0.0) ||
                                  (a > 0.0 && b <= 0.5 * a && c <= 0.5 * b);
            if (decaying && c <= tol / 4.0) { stop = k; break; }
        }
        mk *= m * L;
    }
    if (stop < 0)
        throw NotEntireAndBeyondRadius("majorant did not decay within the term cap");

    const double remainder = mu[static_cast<std::size_t>(stop)];  // <= mu_K sum(2^-i)
    double tail = remainder;
    std::int64_t n_required = stop;
    for (std::int64_t n = stop - 1; n >= 0; --n) {
        if (tail + mu[static_cast<std::size_t>(n) + 1] >= tol) break;
        tail += mu[static_cast<std::size_t>(n) + 1];
        n_required = n;
    }
    return n_required;
}

// ---------------------------------------------------------------------------
// Region scan
// ---------------------------------------------------------------------------

std::int64_t RegionScan::count(SumStatus s) const {
    std::int64_t c = 0;
    for (SumStatus v : verdicts)
        if (v == s) ++c;
    return c;
}

RegionScan region_scan(const PowerSeries& p, const Slice& slice,
                       const GridSpec& grid, const EvalOptions& opts, int threads) {
    if (slice.origin.algebra() != p.algebra() ||
        slice.axis_u.algebra() != p.algebra() ||
        slice.axis_v.algebra() != p.algebra())
        throw AlgebraMismatch("slice elements belong to another algebra");
    if (grid.nu < 1 || grid.nv < 1) throw AlgebraError("grid must have >= 1 point per axis");

    const double uu = slice.axis_u.coords().squaredNorm();
    const double vv = slice.axis_v.coords().squaredNorm();
    const double uv = slice.axis_u.coords().dot(slice.axis_v.coords());
    if (uu * vv - uv * uv <= 1e-12 * uu * vv || uu == 0.0 || vv == 0.0)
        throw DegenerateSlice("slice axes are linearly dependent");

    RegionScan scan;
    scan.slice = slice;
    scan.grid = grid;
    scan.u_values.resize(grid.nu);
    scan.v_values.resize(grid.nv);
    for (int i = 0; i < grid.nu; ++i)
        scan.u_values[i] = grid.nu == 1 ? grid.u_min
                                        : grid.u_min + (grid.u_max - grid.u_min) * i /
                                              static_cast<double>(grid.nu - 1);
    for (int j = 0; j < grid.nv; ++j)
        scan.v_values[j] = grid.nv == 1 ? grid.v_min
                                        : grid.v_min + (grid.v_max - grid.v_min) * j /
                                              static_cast<double>(grid.nv - 1);

    const std::size_t cells = static_cast<std::size_t>(grid.nu) * grid.nv;
    scan.verdicts.assign(cells, SumStatus::Inconclusive);
    scan.values.assign(cells, std::nullopt);

    int nthreads = threads > 0 ? threads
                               : static_cast<int>(std::thread::hardware_concurrency());
    nthreads = std::clamp(nthreads, 1, 16);
    nthreads = std::min<int>(nthreads, grid.nu);

    auto run_rows = [&](int first_row, int stride) {
        for (int iu = first_row; iu < grid.nu; iu += stride) {
            for (int iv = 0; iv < grid.nv; ++iv) {
                const Element z = slice.origin + slice.axis_u * scan.u_values[iu] +
                                  slice.axis_v * scan.v_values[iv];
                const std::size_t idx = static_cast<std::size_t>(iu) * grid.nv + iv;
                try {
                    SumResult r = eval(p, z, opts);
                    scan.verdicts[idx] = r.status;
                    if (r.status == SumStatus::Converged)
                        scan.values[idx] = std::move(r.value);
                } catch (const NonFiniteTerm&) {
                    scan.verdicts[idx] = SumStatus::Diverged;
                }
            }
        }
    };

    if (nthreads == 1) {
        run_rows(0, 1);
    } else {
        std::vector<std::thread> pool;
        pool.reserve(nthreads);
        for (int t = 0; t < nthreads; ++t) pool.emplace_back(run_rows, t, nthreads);
        for (auto& th : pool) th.join();
    }
    return scan;
}

}  // namespace acalc
