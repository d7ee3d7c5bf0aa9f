#include "acalc/algebra.hpp"

#include <Eigen/SVD>

#include <algorithm>
#include <cmath>
#include <sstream>

namespace acalc {

namespace {

constexpr double kAxiomTol = 1e-12;

std::size_t flat(int n, int i, int j, int k) {
    return (static_cast<std::size_t>(i) * n + j) * n + k;
}

// coords of v_i ⋆ v_j straight from the table.
Eigen::VectorXd basis_product(const std::vector<double>& c, int n, int i, int j) {
    Eigen::VectorXd out(n);
    for (int k = 0; k < n; ++k) out[k] = c[flat(n, i, j, k)];
    return out;
}

Eigen::VectorXd table_mul(const std::vector<double>& c, int n,
                          const Eigen::VectorXd& x, const Eigen::VectorXd& y) {
    Eigen::VectorXd out = Eigen::VectorXd::Zero(n);
    for (int i = 0; i < n; ++i) {
        const double xi = x[i];
        if (xi == 0.0) continue;
        for (int j = 0; j < n; ++j) {
            const double w = xi * y[j];
            if (w == 0.0) continue;
            for (int k = 0; k < n; ++k) out[k] += w * c[flat(n, i, j, k)];
        }
    }
    return out;
}

}  // namespace

// ---------------------------------------------------------------------------
// Element
// ---------------------------------------------------------------------------

Element::Element(Algebra algebra, Eigen::VectorXd coords)
    : algebra_(std::move(algebra)), coords_(std::move(coords)) {
    if (!algebra_) throw AlgebraError("element requires an algebra");
    if (coords_.size() != algebra_->dim())
        throw DimensionMismatch("coordinate length does not match algebra dimension");
}

Element Element::operator+(const Element& rhs) const {
    if (algebra_ != rhs.algebra_) throw AlgebraMismatch("operands from different algebras");
    return Element(algebra_, coords_ + rhs.coords_);
}

Element Element::operator-(const Element& rhs) const {
    if (algebra_ != rhs.algebra_) throw AlgebraMismatch("operands from different algebras");
    return Element(algebra_, coords_ - rhs.coords_);
}

Element Element::operator-() const { return Element(algebra_, -coords_); }

Element Element::operator*(double s) const { return Element(algebra_, s * coords_); }

Element Element::operator*(const Element& rhs) const { return mul(*this, rhs); }

Element Element::pow(std::int64_t n) const {
    Element acc = algebra_->unity();
    for (std::int64_t k = 0; k < n; ++k) acc = acc * *this;
    return acc;
}

// ---------------------------------------------------------------------------
// AlgebraSpec
// ---------------------------------------------------------------------------

Element AlgebraSpec::unity() const { return Element(shared_from_this(), unity_); }

Element AlgebraSpec::zero() const {
    return Element(shared_from_this(), Eigen::VectorXd::Zero(dim_));
}

Element AlgebraSpec::basis_vector(int i) const {
    if (i < 0 || i >= dim_) throw DimensionMismatch("basis index out of range");
    Eigen::VectorXd e = Eigen::VectorXd::Zero(dim_);
    e[i] = 1.0;
    return Element(shared_from_this(), std::move(e));
}

Element AlgebraSpec::element(Eigen::VectorXd coords) const {
    return Element(shared_from_this(), std::move(coords));
}

Element AlgebraSpec::scalar(double t) const {
    return Element(shared_from_this(), t * unity_);
}

Algebra build_algebra(const std::vector<double>& constants,
                      const Eigen::VectorXd& unity,
                      std::vector<std::string> labels,
                      std::int64_t norm_samples) {
    const int n = static_cast<int>(unity.size());
    if (n < 1) throw DimensionMismatch("algebra dimension must be >= 1");
    if (constants.size() != static_cast<std::size_t>(n) * n * n)
        throw DimensionMismatch("structure-constant tensor is not N x N x N");
    for (double c : constants)
        if (!std::isfinite(c)) throw AlgebraError("non-finite structure constant");
    if (!labels.empty() && labels.size() != static_cast<std::size_t>(n))
        throw DimensionMismatch("label count does not match dimension");

    // Associativity on all basis triples: (v_i v_j) v_k == v_i (v_j v_k).
    double worst = 0.0;
    int wi = 0, wj = 0, wk = 0;
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            const Eigen::VectorXd ij = basis_product(constants, n, i, j);
            for (int k = 0; k < n; ++k) {
                const Eigen::VectorXd jk = basis_product(constants, n, j, k);
                Eigen::VectorXd lhs = Eigen::VectorXd::Zero(n);
                Eigen::VectorXd rhs = Eigen::VectorXd::Zero(n);
                for (int p = 0; p < n; ++p) {
                    if (ij[p] != 0.0) lhs += ij[p] * basis_product(constants, n, p, k);
                    if (jk[p] != 0.0) rhs += jk[p] * basis_product(constants, n, i, p);
                }
                const double res = (lhs - rhs).cwiseAbs().maxCoeff();
                if (res > worst) { worst = res; wi = i; wj = j; wk = k; }
            }
        }
    if (worst > kAxiomTol) {
        std::ostringstream msg;
        msg << "associativity fails on basis triple (" << wi << "," << wj << ","
            << wk << "), residual " << worst;
        throw AssociativityViolation(msg.str(), worst);
    }

    // Unity must fix every basis vector from both sides.
    for (int i = 0; i < n; ++i) {
        Eigen::VectorXd ei = Eigen::VectorXd::Zero(n);
        ei[i] = 1.0;
        const Eigen::VectorXd l = table_mul(constants, n, unity, ei);
        const Eigen::VectorXd r = table_mul(constants, n, ei, unity);
        if ((l - ei).cwiseAbs().maxCoeff() > kAxiomTol ||
            (r - ei).cwiseAbs().maxCoeff() > kAxiomTol)
            throw UnityViolation("declared unity does not fix basis vector " +
                                 std::to_string(i));
    }

    auto spec = std::shared_ptr<AlgebraSpec>(new AlgebraSpec());
    spec->dim_ = n;
    spec->constants_ = constants;
    spec->unity_ = unity;
    spec->labels_ = std::move(labels);

    bool comm = true;
    for (int i = 0; i < n && comm; ++i)
        for (int j = 0; j < n && comm; ++j)
            for (int k = 0; k < n; ++k)
                if (constants[flat(n, i, j, k)] != constants[flat(n, j, i, k)]) {
                    comm = false;
                    break;
                }
    spec->commutative_ = comm;

    const NormConstants nc = norm_constants(*spec, norm_samples);
    spec->m_theoretical_ = nc.m_theoretical;
    spec->m_empirical_ = nc.m_empirical;
    return spec;
}

// ---------------------------------------------------------------------------
// Presets
// ---------------------------------------------------------------------------

namespace {

Algebra power_basis_algebra(int n, double c, const std::string& gen) {
    // basis {1, g, ..., g^{n-1}} with g^n = c.
    std::vector<double> t(static_cast<std::size_t>(n) * n * n, 0.0);
    for (int a = 0; a < n; ++a)
        for (int b = 0; b < n; ++b) {
            const int s = a + b;
            if (s < n)
                t[flat(n, a, b, s)] = 1.0;
            else
                t[flat(n, a, b, s - n)] = c;  // g^s = c * g^{s-n}
        }
    Eigen::VectorXd unity = Eigen::VectorXd::Zero(n);
    unity[0] = 1.0;
    std::vector<std::string> labels(n);
    labels[0] = "1";
    for (int a = 1; a < n; ++a)
        labels[a] = (a == 1) ? gen : gen + "^" + std::to_string(a);
    return build_algebra(t, unity, std::move(labels));
}

}  // namespace

Algebra preset(Preset kind, int n) {
    switch (kind) {
        case Preset::Complex:
            return power_basis_algebra(2, -1.0, "i");
        case Preset::Hyperbolic:
            return power_basis_algebra(2, 1.0, "j");
        case Preset::Dual:
            return power_basis_algebra(2, 0.0, "eps");
        case Preset::H_N:
            if (n < 2) throw UnknownPreset("H_N requires n >= 2");
            return power_basis_algebra(n, 1.0, "j");
        case Preset::C_N:
            if (n < 2) throw UnknownPreset("C_N requires n >= 2");
            return power_basis_algebra(n, -1.0, "j");
        case Preset::Gamma_N:
            if (n < 2) throw UnknownPreset("Gamma_N requires n >= 2");
            return power_basis_algebra(n, 0.0, "eps");
        case Preset::DirectProduct: {
            if (n < 2) throw UnknownPreset("direct_product requires n >= 2");
            std::vector<double> t(static_cast<std::size_t>(n) * n * n, 0.0);
            for (int i = 0; i < n; ++i) t[flat(n, i, i, i)] = 1.0;
            Eigen::VectorXd unity = Eigen::VectorXd::Ones(n);
            std::vector<std::string> labels(n);
            for (int i = 0; i < n; ++i) labels[i] = "e" + std::to_string(i + 1);
            return build_algebra(t, unity, std::move(labels));
        }
    }
    throw UnknownPreset("unhandled preset kind");
}

Algebra preset(const std::string& name) {
    std::string base = name;
    int n = 0;
    bool has_n = false;
    if (const auto pos = name.find(':'); pos != std::string::npos) {
        base = name.substr(0, pos);
        try {
            n = std::stoi(name.substr(pos + 1));
        } catch (const std::exception&) {
            throw UnknownPreset("bad preset parameter in '" + name + "'");
        }
        has_n = true;
    }
    if (base == "complex") return preset(Preset::Complex);
    if (base == "hyperbolic") return preset(Preset::Hyperbolic);
    if (base == "dual") return preset(Preset::Dual);
    if (base == "H_N") return preset(Preset::H_N, has_n ? n : 2);
    if (base == "C_N") return preset(Preset::C_N, has_n ? n : 2);
    if (base == "Gamma_N") return preset(Preset::Gamma_N, has_n ? n : 2);
    if (base == "direct_product") return preset(Preset::DirectProduct, has_n ? n : 2);
    throw UnknownPreset("unknown preset '" + name + "'");
}

// ---------------------------------------------------------------------------
// Operations
// ---------------------------------------------------------------------------

Element mul(const Element& x, const Element& y) {
    if (x.algebra() != y.algebra())
        throw AlgebraMismatch("operands from different algebras");
    const AlgebraSpec& a = *x.algebra();
    return Element(x.algebra(),
                   table_mul(a.constants(), a.dim(), x.coords(), y.coords()));
}

Eigen::MatrixXd regular_rep(const Element& x) {
    const AlgebraSpec& a = *x.algebra();
    const int n = a.dim();
    Eigen::MatrixXd m(n, n);
    // column p = coords(x ⋆ v_p)
    for (int p = 0; p < n; ++p) {
        for (int k = 0; k < n; ++k) {
            double s = 0.0;
            for (int i = 0; i < n; ++i) s += x.coord(i) * a.constant(i, p, k);
            m(k, p) = s;
        }
    }
    return m;
}

ElementKind classify(const Element& x, double tol_zero, double tol_sing) {
    if (x.norm() < tol_zero) return ElementKind::Zero;
    const Eigen::MatrixXd m = regular_rep(x);
    Eigen::JacobiSVD<Eigen::MatrixXd> svd(m);
    const auto& sv = svd.singularValues();
    const double smax = sv[0];
    const double smin = sv[sv.size() - 1];
    if (smax <= 0.0) return ElementKind::Zero;
    return (smin > tol_sing * smax) ? ElementKind::Unit : ElementKind::ZeroDivisor;
}

Element inverse(const Element& x) {
    if (classify(x) != ElementKind::Unit)
        throw NotInvertible("element is zero or a zero divisor");
    const Eigen::MatrixXd m = regular_rep(x);
    Eigen::VectorXd q = m.colPivHouseholderQr().solve(x.algebra()->unity_coords());
    return Element(x.algebra(), std::move(q));
}

// ---------------------------------------------------------------------------
// Norm constants
// ---------------------------------------------------------------------------

namespace {

// sigma_max(M(x)) equals max_{||y||=1} ||x ⋆ y||, so the sharp constant is
// the maximum of sigma_max(M(x)) over unit x. The objective is linear in x
// for fixed singular vectors u, v: sigma = sum_i x_i (u^T M(v_i) v), which
// makes alternating maximization on the sphere natural.
double ascend_ratio(const AlgebraSpec& spec, Eigen::VectorXd x, int iters) {
    const int n = spec.dim();
    std::vector<Eigen::MatrixXd> basis_reps(n);
    for (int i = 0; i < n; ++i) {
        Eigen::VectorXd e = Eigen::VectorXd::Zero(n);
        e[i] = 1.0;
        Eigen::MatrixXd m(n, n);
        for (int p = 0; p < n; ++p)
            for (int k = 0; k < n; ++k) m(k, p) = spec.constant(i, p, k);
        basis_reps[i] = std::move(m);
    }
    double best = 0.0;
    x.normalize();
    for (int it = 0; it < iters; ++it) {
        Eigen::MatrixXd m = Eigen::MatrixXd::Zero(n, n);
        for (int i = 0; i < n; ++i) m += x[i] * basis_reps[i];
        Eigen::JacobiSVD<Eigen::MatrixXd> svd(m, Eigen::ComputeThinU | Eigen::ComputeThinV);
        best = std::max(best, svd.singularValues()[0]);
        const Eigen::VectorXd u = svd.matrixU().col(0);
        const Eigen::VectorXd v = svd.matrixV().col(0);
        Eigen::VectorXd g(n);
        for (int i = 0; i < n; ++i) g[i] = u.dot(basis_reps[i] * v);
        const double gn = g.norm();
        if (gn < 1e-300) break;
        x = g / gn;
    }
    return best;
}

}  // namespace

NormConstants norm_constants(const AlgebraSpec& spec, std::int64_t samples,
                             std::uint64_t seed) {
    const int n = spec.dim();
    double cmax = 0.0;
    for (double c : spec.constants()) cmax = std::max(cmax, std::abs(c));
    const double m_theoretical =
        cmax * (static_cast<double>(n) * n - n + 1) * std::sqrt(static_cast<double>(n));

    Algebra handle = spec.shared_from_this();
    Rng rng(seed);
    double best = 0.0;
    const int starts = 16;
    for (int s = 0; s < starts; ++s) {
        Eigen::VectorXd x0(n);
        if (s < n) {
            x0.setZero();
            x0[s] = 1.0;
        } else if (s == n) {
            x0.setOnes();
        } else {
            for (int i = 0; i < n; ++i) x0[i] = rng.uniform(-1.0, 1.0);
            if (x0.norm() < 1e-12) x0.setOnes();
        }
        best = std::max(best, ascend_ratio(spec, x0, 200));
    }
    for (std::int64_t s = 0; s < samples; ++s) {
        const Element x = rng.unit_element(handle);
        const Element y = rng.unit_element(handle);
        best = std::max(best, mul(x, y).norm());
    }
    double m_empirical = best * (1.0 + 1e-9);
    m_empirical = std::min(m_empirical, m_theoretical);
    return {m_theoretical, m_empirical};
}

// ---------------------------------------------------------------------------
// Hyperbolic isomorphism
// ---------------------------------------------------------------------------

namespace {

bool is_hyperbolic_table(const AlgebraSpec& a) {
    if (a.dim() != 2) return false;
    const double want[8] = {1, 0, 0, 1, 0, 1, 1, 0};  // j^2 = 1, unity first
    for (int i = 0; i < 8; ++i)
        if (a.constants()[i] != want[i]) return false;
    return a.unity_coords()[0] == 1.0 && a.unity_coords()[1] == 0.0;
}

bool is_product_table(const AlgebraSpec& a) {
    if (a.dim() != 2) return false;
    const double want[8] = {1, 0, 0, 0, 0, 0, 0, 1};  // componentwise
    for (int i = 0; i < 8; ++i)
        if (a.constants()[i] != want[i]) return false;
    return a.unity_coords()[0] == 1.0 && a.unity_coords()[1] == 1.0;
}

}  // namespace

Element hyperbolic_isomorphism(IsoDirection direction, const Element& x,
                               const Algebra& target) {
    if (direction == IsoDirection::ToHyperbolic) {
        if (!is_product_table(*x.algebra()))
            throw AlgebraMismatch("source is not R x R with the product basis");
        if (!is_hyperbolic_table(*target))
            throw AlgebraMismatch("target is not the hyperbolic numbers");
        const double a = x.coord(0), b = x.coord(1);
        Eigen::VectorXd out(2);
        out[0] = (a + b) / 2.0;
        out[1] = (a - b) / 2.0;
        return Element(target, std::move(out));
    }
    if (!is_hyperbolic_table(*x.algebra()))
        throw AlgebraMismatch("source is not the hyperbolic numbers");
    if (!is_product_table(*target))
        throw AlgebraMismatch("target is not R x R with the product basis");
    const double u = x.coord(0), v = x.coord(1);
    Eigen::VectorXd out(2);
    out[0] = u + v;
    out[1] = u - v;
    return Element(target, std::move(out));
}

// ---------------------------------------------------------------------------
// Generated-algebra detection
// ---------------------------------------------------------------------------

std::optional<GeneratedAlgebra> detect_generated(const Algebra& a) {
    const int n = a->dim();
    // Power basis means v_1 = 1, v_{k+1} = eps ⋆ v_k, eps = v_2, and
    // eps ⋆ v_n = c * 1.
    Eigen::VectorXd e1 = Eigen::VectorXd::Zero(n);
    e1[0] = 1.0;
    if ((a->unity_coords() - e1).cwiseAbs().maxCoeff() > kAxiomTol) return std::nullopt;
    if (n == 1) return GeneratedAlgebra{a, 0, 1.0};
    const Element eps = a->basis_vector(1);
    for (int k = 1; k + 1 < n; ++k) {
        Eigen::VectorXd expect = Eigen::VectorXd::Zero(n);
        expect[k + 1] = 1.0;
        const Element got = mul(eps, a->basis_vector(k));
        if ((got.coords() - expect).cwiseAbs().maxCoeff() > kAxiomTol)
            return std::nullopt;
    }
    const Element top = mul(eps, a->basis_vector(n - 1));
    const double c = top.coord(0);
    if ((top.coords() - c * e1).cwiseAbs().maxCoeff() > kAxiomTol) return std::nullopt;
    return GeneratedAlgebra{a, 1, c};
}

// ---------------------------------------------------------------------------
// Rng
// ---------------------------------------------------------------------------

namespace {
std::uint64_t splitmix64(std::uint64_t& s) {
    s += 0x9e3779b97f4a7c15ull;
    std::uint64_t z = s;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
    return z ^ (z >> 31);
}
std::uint64_t rotl(std::uint64_t v, int k) { return (v << k) | (v >> (64 - k)); }
}  // namespace

Rng::Rng(std::uint64_t seed) {
    std::uint64_t s = seed;
    for (auto& w : state_) w = splitmix64(s);
}

std::uint64_t Rng::next_u64() {
    // xoshiro256**
    const std::uint64_t result = rotl(state_[1] * 5, 7) * 9;
    const std::uint64_t t = state_[1] << 17;
    state_[2] ^= state_[0];
    state_[3] ^= state_[1];
    state_[1] ^= state_[2];
    state_[0] ^= state_[3];
    state_[2] ^= t;
    state_[3] = rotl(state_[3], 45);
    return result;
}

double Rng::uniform(double lo, double hi) {
    const double u = static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
    return lo + (hi - lo) * u;
}

Element Rng::element(const Algebra& a, double lo, double hi) {
    Eigen::VectorXd v(a->dim());
    for (int i = 0; i < a->dim(); ++i) v[i] = uniform(lo, hi);
    return Element(a, std::move(v));
}

Element Rng::unit_element(const Algebra& a) {
    for (;;) {
        Element x = element(a, -1.0, 1.0);
        const double nrm = x.norm();
        if (nrm > 1e-6) return x * (1.0 / nrm);
    }
}

}  // namespace acalc
