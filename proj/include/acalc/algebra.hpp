#pragma once

#include <Eigen/Dense>

#include <cstdint>
#include <functional>
#include <memory>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

/// Finite-dimensional real unital associative algebras given by structure
/// constants, with element arithmetic, regular representations and
/// unit / zero-divisor classification.
namespace acalc {

class AlgebraSpec;
using Algebra = std::shared_ptr<const AlgebraSpec>;

// ---------------------------------------------------------------------------
// Errors
// ---------------------------------------------------------------------------

struct AlgebraError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct DimensionMismatch : AlgebraError {
    using AlgebraError::AlgebraError;
};

struct AssociativityViolation : AlgebraError {
    double max_residual = 0.0;
    explicit AssociativityViolation(const std::string& what, double residual)
        : AlgebraError(what), max_residual(residual) {}
};

struct UnityViolation : AlgebraError {
    using AlgebraError::AlgebraError;
};

struct AlgebraMismatch : AlgebraError {
    using AlgebraError::AlgebraError;
};

struct UnknownPreset : AlgebraError {
    using AlgebraError::AlgebraError;
};

struct NotInvertible : AlgebraError {
    using AlgebraError::AlgebraError;
};

// ---------------------------------------------------------------------------
// Element
// ---------------------------------------------------------------------------

enum class ElementKind { Unit, ZeroDivisor, Zero };

/// A member of an algebra, stored as its coordinate vector with respect to
/// the declared basis. Immutable value type; the norm is the Euclidean norm
/// of the coordinates.
class Element {
public:
    /// Empty element; usable only as an assignment target.
    Element() = default;
    Element(Algebra algebra, Eigen::VectorXd coords);

    const Algebra& algebra() const { return algebra_; }
    const Eigen::VectorXd& coords() const { return coords_; }
    double coord(int i) const { return coords_[i]; }
    int dim() const { return static_cast<int>(coords_.size()); }

    /// Euclidean norm of the coordinates, scaled against under/overflow
    /// (coefficients like 1/n! drop below the squared-norm underflow line).
    double norm() const { return coords_.stableNorm(); }
    bool is_finite() const { return coords_.allFinite(); }

    Element operator+(const Element& rhs) const;
    Element operator-(const Element& rhs) const;
    Element operator-() const;
    Element operator*(double s) const;
    friend Element operator*(double s, const Element& x) { return x * s; }

    /// Algebra product x ⋆ y.
    Element operator*(const Element& rhs) const;

    /// x^n by iterated multiplication, n >= 0.
    Element pow(std::int64_t n) const;

private:
    Algebra algebra_;
    Eigen::VectorXd coords_;
};

// ---------------------------------------------------------------------------
// AlgebraSpec
// ---------------------------------------------------------------------------

/// Validated algebra data: dimension, structure constants C[i][j][k] with
/// v_i ⋆ v_j = sum_k C[i][j][k] v_k, coordinates of the unity, derived flags
/// and the two submultiplicative norm constants.
///
/// Instances are immutable after construction and shared via `Algebra`
/// handles; all operations on elements are pure functions.
class AlgebraSpec : public std::enable_shared_from_this<AlgebraSpec> {
public:
    int dim() const { return dim_; }
    /// C[i][j][k], all indices 0-based.
    double constant(int i, int j, int k) const {
        return constants_[(static_cast<std::size_t>(i) * dim_ + j) * dim_ + k];
    }
    const std::vector<double>& constants() const { return constants_; }
    const Eigen::VectorXd& unity_coords() const { return unity_; }
    const std::vector<std::string>& basis_labels() const { return labels_; }
    bool commutative() const { return commutative_; }

    /// Guaranteed constant from the structure-constant formula
    /// max|C| * (N^2 - N + 1) * sqrt(N).
    double m_theoretical() const { return m_theoretical_; }
    /// Sharp constant found by multi-start ascent plus random sampling,
    /// inflated by a 1e-9 safety factor. Valid on the sample set; always
    /// <= m_theoretical.
    double m_empirical() const { return m_empirical_; }

    Element unity() const;
    Element zero() const;
    Element basis_vector(int i) const;
    Element element(Eigen::VectorXd coords) const;
    /// Scalar embedding t -> t * unity.
    Element scalar(double t) const;

    friend Algebra build_algebra(const std::vector<double>& constants,
                                 const Eigen::VectorXd& unity,
                                 std::vector<std::string> labels,
                                 std::int64_t norm_samples);

private:
    AlgebraSpec() = default;

    int dim_ = 0;
    std::vector<double> constants_;  // flattened N*N*N, (i*N+j)*N+k
    Eigen::VectorXd unity_;
    std::vector<std::string> labels_;
    bool commutative_ = false;
    double m_theoretical_ = 0.0;
    double m_empirical_ = 0.0;
};

/// Validates structure constants and returns the shared spec.
/// Throws DimensionMismatch, AssociativityViolation or UnityViolation.
/// Noncommutative input is accepted; the commutativity flag is derived.
Algebra build_algebra(const std::vector<double>& constants,
                      const Eigen::VectorXd& unity,
                      std::vector<std::string> labels = {},
                      std::int64_t norm_samples = 2000);

// ---------------------------------------------------------------------------
// Presets
// ---------------------------------------------------------------------------

enum class Preset {
    Complex,        ///< 2-dim, i^2 = -1
    Hyperbolic,     ///< 2-dim, j^2 = +1
    Dual,           ///< 2-dim, eps^2 = 0
    DirectProduct,  ///< R^n with componentwise product
    H_N,            ///< basis {1, j, ..., j^{n-1}}, j^n = +1
    C_N,            ///< basis {1, j, ..., j^{n-1}}, j^n = -1
    Gamma_N,        ///< basis {1, eps, ..., eps^{n-1}}, eps^n = 0
};

Algebra preset(Preset kind, int n = 2);

/// Parses names like "complex", "hyperbolic", "dual", "H_N:3", "C_N:4",
/// "Gamma_N:3", "direct_product:2". Throws UnknownPreset.
Algebra preset(const std::string& name);

// ---------------------------------------------------------------------------
// Operations
// ---------------------------------------------------------------------------

Element mul(const Element& x, const Element& y);

/// Matrix of left multiplication by x: column p = coords(x ⋆ v_p).
/// Satisfies M(1) = I and M(x ⋆ y) = M(x) M(y).
Eigen::MatrixXd regular_rep(const Element& x);

/// Thresholded three-way classification. Zero if ||x|| < tol_zero; Unit if
/// the smallest singular value of M(x) exceeds tol_sing * sigma_max;
/// ZeroDivisor otherwise. Valid for finite-dimensional unital algebras where
/// injectivity of left multiplication is equivalent to invertibility.
ElementKind classify(const Element& x, double tol_zero = 1e-12,
                     double tol_sing = 1e-10);

/// Solves M(x) q = coords(1). Throws NotInvertible unless classify(x) == Unit.
Element inverse(const Element& x);

struct NormConstants {
    double m_theoretical;
    double m_empirical;
};

/// Recomputes both submultiplicative constants for a spec: the guaranteed
/// formula value and the sampled/optimized sharp bound on ||x ⋆ y|| /
/// (||x|| ||y||).
NormConstants norm_constants(const AlgebraSpec& spec, std::int64_t samples,
                             std::uint64_t seed = 0x5eed0711u);

enum class IsoDirection {
    ToHyperbolic,     ///< Psi: R x R -> H, (a,b) -> a(1+j)/2 + b(1-j)/2
    ToDirectProduct,  ///< Psi^{-1}: x + jy -> (x+y, x-y)
};

/// The algebra isomorphism between the hyperbolic numbers and R x R.
/// `target` supplies the destination algebra handle; both endpoints are
/// checked structurally. Throws AlgebraMismatch.
Element hyperbolic_isomorphism(IsoDirection direction, const Element& x,
                               const Algebra& target);

// ---------------------------------------------------------------------------
// Generated algebras
// ---------------------------------------------------------------------------

/// An algebra whose basis is {1, eps, eps^2, ..., eps^{N-1}} with
/// eps^N = c * 1. These carry the special-function and Pythagorean
/// machinery.
struct GeneratedAlgebra {
    Algebra base;
    int generator_index;  ///< index of eps in the basis (0-based)
    double power_value;   ///< c with eps^N = c * 1

    Element generator() const { return base->basis_vector(generator_index); }
};

/// Recognizes the power-basis structure in a spec, if present.
std::optional<GeneratedAlgebra> detect_generated(const Algebra& a);

// ---------------------------------------------------------------------------
// Deterministic sampling helpers (shared by tests and the CLI)
// ---------------------------------------------------------------------------

/// Minimal splitmix64-seeded xoshiro-style generator with portable
/// double output; identical sequences on every platform.
class Rng {
public:
    explicit Rng(std::uint64_t seed);
    std::uint64_t next_u64();
    /// Uniform in [lo, hi).
    double uniform(double lo, double hi);
    /// Element with coordinates uniform in [lo, hi).
    Element element(const Algebra& a, double lo, double hi);
    /// Nonzero element scaled to unit norm.
    Element unit_element(const Algebra& a);

private:
    std::uint64_t state_[4];
};

}  // namespace acalc
