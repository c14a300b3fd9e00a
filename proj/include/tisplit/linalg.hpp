#pragma once

// Dense linear-algebra foundation: SVD with a rank contract, pseudoinverse,
// (adjoint) inverse, principal matrix square root and random orthogonal
// generation. Everything operates on Eigen dense matrices in double precision.

#include "tisplit/errors.hpp"
#include "tisplit/tolerances.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <complex>
#include <concepts>
#include <cstdint>
#include <optional>
#include <random>
#include <sstream>
#include <string>
#include <variant>

namespace tisplit {

using Index = Eigen::Index;
using Complex = std::complex<double>;

template <class T>
concept MatrixScalar = std::same_as<T, double> || std::same_as<T, Complex>;

template <MatrixScalar S>
using Matrix = Eigen::Matrix<S, Eigen::Dynamic, Eigen::Dynamic>;

using RealMatrix = Matrix<double>;
using ComplexMatrix = Matrix<Complex>;

template <MatrixScalar S>
inline constexpr bool is_complex_v = std::same_as<S, Complex>;

/// A matrix whose scalar kind is only known at run time (e.g. read from a file).
using AnyMatrix = std::variant<RealMatrix, ComplexMatrix>;

inline bool is_complex(const AnyMatrix& m) { return std::holds_alternative<ComplexMatrix>(m); }

inline Index rows(const AnyMatrix& m) {
    return std::visit([](const auto& x) { return x.rows(); }, m);
}

inline Index cols(const AnyMatrix& m) {
    return std::visit([](const auto& x) { return x.cols(); }, m);
}

inline ComplexMatrix to_complex(const AnyMatrix& m) {
    if (const auto* r = std::get_if<RealMatrix>(&m)) return r->cast<Complex>();
    return std::get<ComplexMatrix>(m);
}

inline std::string format_complex(Complex z) {
    std::ostringstream os;
    os.precision(12);
    os << z.real() << (std::signbit(z.imag()) ? "-" : "+") << std::abs(z.imag()) << "i";
    return os.str();
}

namespace linalg {

template <MatrixScalar S>
void require_finite(const Matrix<S>& m, const char* what = "matrix") {
    if (m.size() == 0) {
        throw ShapeError(std::string(what) + " must have at least one row and one column");
    }
    if (!m.allFinite()) {
        throw PreconditionError(std::string(what) + " contains NaN or Inf entries");
    }
}

template <MatrixScalar S>
void require_square(const Matrix<S>& m, const char* what = "matrix") {
    if (m.rows() != m.cols()) {
        throw ShapeError(std::string(what) + " must be square, got " + std::to_string(m.rows()) + "x" +
                         std::to_string(m.cols()));
    }
}

/// Thin or full SVD factors: source = U * diag(singular_values) * V^H.
///
/// U is rows x k and V is cols x k with k = min(rows, cols). Singular values
/// are nonincreasing. rank_tol is the absolute threshold
/// (rank_rel_tol * sigma_max) below which a singular value counts as zero.
template <MatrixScalar S>
struct SvdFactors {
    Matrix<S> U;
    Eigen::VectorXd singular_values;
    Matrix<S> V;
    double rank_tol = 0.0;
    /// Square completions, present when requested from compute_svd.
    std::optional<Matrix<S>> full_U;
    std::optional<Matrix<S>> full_V;

    Index rank() const {
        return static_cast<Index>(
            std::count_if(singular_values.begin(), singular_values.end(), [&](double s) { return s > rank_tol; }));
    }

    double sigma_max() const { return singular_values.size() ? singular_values(0) : 0.0; }
    double sigma_min() const { return singular_values.size() ? singular_values(singular_values.size() - 1) : 0.0; }

    Matrix<S> reconstruct() const { return U * singular_values.asDiagonal() * V.adjoint(); }
};

enum class SvdScope { thin, full };

template <MatrixScalar S>
SvdFactors<S> compute_svd(const Matrix<S>& m, const Tolerances& tol = {}, SvdScope scope = SvdScope::thin) {
    require_finite(m);
    tol.validate();

    const unsigned options =
        scope == SvdScope::full ? (Eigen::ComputeFullU | Eigen::ComputeFullV) : (Eigen::ComputeThinU | Eigen::ComputeThinV);
    Eigen::JacobiSVD<Matrix<S>> svd(m, options);
    if (svd.info() != Eigen::Success || !svd.singularValues().allFinite() || !svd.matrixU().allFinite() ||
        !svd.matrixV().allFinite()) {
        throw ConvergenceError("SVD iteration failed to converge");
    }

    const Index k = std::min(m.rows(), m.cols());
    SvdFactors<S> f;
    f.singular_values = svd.singularValues();
    f.U = svd.matrixU().leftCols(k);
    f.V = svd.matrixV().leftCols(k);
    f.rank_tol = tol.rank_rel_tol * f.sigma_max();
    if (scope == SvdScope::full) {
        f.full_U = svd.matrixU();
        f.full_V = svd.matrixV();
    }
    return f;
}

/// Moore-Penrose pseudoinverse V * diag(1/sigma_i) * U^H, dropping
/// singular values at or below the factors' rank threshold.
template <MatrixScalar S>
Matrix<S> pseudoinverse(const SvdFactors<S>& f) {
    Eigen::VectorXd inv = Eigen::VectorXd::Zero(f.singular_values.size());
    for (Index i = 0; i < inv.size(); ++i) {
        if (f.singular_values(i) > f.rank_tol) inv(i) = 1.0 / f.singular_values(i);
    }
    return f.V * inv.asDiagonal() * f.U.adjoint();
}

/// (A^{-1})^H, computed from the SVD as U * diag(1/sigma) * V^H. For real A
/// this is the transpose inverse.
template <MatrixScalar S>
Matrix<S> adjoint_inverse(const Matrix<S>& a, const Tolerances& tol = {}) {
    require_finite(a);
    require_square(a);
    const auto f = compute_svd(a, tol);
    if (f.rank() < a.rows()) {
        std::ostringstream os;
        os << "matrix is singular at the rank tolerance (sigma_min = " << f.sigma_min()
           << ", sigma_max = " << f.sigma_max() << ")";
        throw RankDeficientError(os.str(), f.sigma_min());
    }
    Matrix<S> out = f.U * f.singular_values.cwiseInverse().asDiagonal() * f.V.adjoint();

    const Index n = a.rows();
    const double residual = (a.adjoint() * out - Matrix<S>::Identity(n, n)).norm();
    if (!(residual <= tol.residual_rel_tol * std::sqrt(static_cast<double>(n)))) {
        std::ostringstream os;
        os << "inverse residual " << residual << " exceeds tolerance (condition number "
           << f.sigma_max() / f.sigma_min() << ")";
        throw NumericError(os.str());
    }
    return out;
}

/// (A^{-1})^T. Identical to adjoint_inverse for real matrices.
template <MatrixScalar S>
Matrix<S> transpose_inverse(const Matrix<S>& a, const Tolerances& tol = {}) {
    if constexpr (is_complex_v<S>) {
        return adjoint_inverse(a, tol).conjugate();
    } else {
        return adjoint_inverse(a, tol);
    }
}

template <MatrixScalar S>
Matrix<S> inverse(const Matrix<S>& a, const Tolerances& tol = {}) {
    return adjoint_inverse(a, tol).adjoint();
}

struct SqrtOptions {
    /// Accept eigenvalues within the axis margin of zero, mapping them to a
    /// zero square-root eigenvalue. A defective zero eigenvalue is still rejected.
    bool allow_zero_eigenvalues = false;
};

/// Principal square root via complex Schur form and the triangular
/// recurrence R_ii^2 = T_ii, (R_ii + R_jj) R_ij = T_ij - sum_k R_ik R_kj.
/// Real input yields real output; imaginary round-off below 1e-10 relative is dropped.
template <MatrixScalar S>
Matrix<S> principal_matrix_sqrt(const Matrix<S>& s, const Tolerances& tol = {}, SqrtOptions opts = {}) {
    require_finite(s);
    require_square(s);
    tol.validate();

    const Index n = s.rows();
    const double scale = std::max(1.0, s.norm());
    const double margin = tol.sqrt_axis_margin * scale;

    const ComplexMatrix sc = s.template cast<Complex>();
    Eigen::ComplexSchur<ComplexMatrix> schur(sc);
    if (schur.info() != Eigen::Success) {
        throw ConvergenceError("Schur decomposition failed to converge");
    }
    const ComplexMatrix& t = schur.matrixT();
    const ComplexMatrix& q = schur.matrixU();

    ComplexMatrix r = ComplexMatrix::Zero(n, n);
    for (Index i = 0; i < n; ++i) {
        const Complex lambda = t(i, i);
        if (opts.allow_zero_eigenvalues && std::abs(lambda) <= margin) {
            continue;
        }
        const double axis_distance = lambda.real() > 0.0 ? std::abs(lambda) : std::abs(lambda.imag());
        if (axis_distance <= margin) {
            throw BranchCutError("eigenvalue " + format_complex(lambda) +
                                     " lies on or near the closed negative real axis; principal square root undefined",
                                 lambda);
        }
        r(i, i) = std::sqrt(lambda);
    }
    for (Index j = 0; j < n; ++j) {
        for (Index i = j - 1; i >= 0; --i) {
            Complex acc = t(i, j);
            for (Index k = i + 1; k < j; ++k) acc -= r(i, k) * r(k, j);
            const Complex denom = r(i, i) + r(j, j);
            if (denom == Complex(0.0, 0.0)) {
                if (std::abs(acc) > margin) {
                    throw BranchCutError("defective zero eigenvalue; no square root exists", Complex(0.0, 0.0));
                }
                continue;
            }
            r(i, j) = acc / denom;
        }
    }
    const ComplexMatrix x = q * r * q.adjoint();

    Matrix<S> out;
    if constexpr (is_complex_v<S>) {
        out = x;
    } else {
        const double imag_norm = x.imag().norm();
        if (imag_norm > 1e-10 * std::max(1.0, x.norm())) {
            throw NumericError("square root of real matrix has non-negligible imaginary part " +
                               std::to_string(imag_norm));
        }
        out = x.real();
    }

    const double residual = (out * out - s).norm();
    if (!(residual <= tol.residual_rel_tol * std::max(1.0, s.norm()))) {
        throw NumericError("matrix square root residual " + std::to_string(residual) + " exceeds tolerance");
    }
    return out;
}

template <std::uniform_random_bit_generator Rng>
RealMatrix gaussian_matrix(Index rows, Index cols, Rng& rng) {
    std::normal_distribution<double> dist(0.0, 1.0);
    RealMatrix m(rows, cols);
    for (Index j = 0; j < cols; ++j)
        for (Index i = 0; i < rows; ++i) m(i, j) = dist(rng);
    return m;
}

template <std::uniform_random_bit_generator Rng>
ComplexMatrix complex_gaussian_matrix(Index rows, Index cols, Rng& rng) {
    std::normal_distribution<double> dist(0.0, 1.0);
    ComplexMatrix m(rows, cols);
    for (Index j = 0; j < cols; ++j)
        for (Index i = 0; i < rows; ++i) {
            const double re = dist(rng);
            const double im = dist(rng);
            m(i, j) = Complex(re, im);
        }
    return m;
}

/// Orthogonal Q from the QR factorization of a seeded Gaussian matrix, with
/// columns sign-normalized so that diag(R) > 0.
template <std::uniform_random_bit_generator Rng>
RealMatrix random_orthogonal(Index n, Rng& rng) {
    if (n < 1) throw ShapeError("random_orthogonal requires n >= 1");
    const RealMatrix g = gaussian_matrix(n, n, rng);
    Eigen::HouseholderQR<RealMatrix> qr(g);
    RealMatrix q = qr.householderQ() * RealMatrix::Identity(n, n);
    const RealMatrix& packed = qr.matrixQR();
    for (Index j = 0; j < n; ++j) {
        if (packed(j, j) < 0.0) q.col(j) = -q.col(j);
    }
    return q;
}

inline RealMatrix random_orthogonal(Index n, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    return random_orthogonal(n, rng);
}

/// Row and column scalings by powers of two (exact in floating point) that
/// bring every row and column max-norm into [0.5, 2). Returns the scaled
/// matrix D_r * m * D_c.
template <MatrixScalar S>
Matrix<S> equilibrate_pow2(const Matrix<S>& m, int sweeps = 4) {
    Matrix<S> out = m;
    auto pow2_scale = [](double max_abs) {
        if (max_abs == 0.0 || !std::isfinite(max_abs)) return 1.0;
        return std::ldexp(1.0, -std::ilogb(max_abs));
    };
    for (int sweep = 0; sweep < sweeps; ++sweep) {
        for (Index i = 0; i < out.rows(); ++i) out.row(i) *= pow2_scale(out.row(i).cwiseAbs().maxCoeff());
        for (Index j = 0; j < out.cols(); ++j) out.col(j) *= pow2_scale(out.col(j).cwiseAbs().maxCoeff());
    }
    return out;
}

template <MatrixScalar S>
Matrix<S> hadamard(const Matrix<S>& x, const Matrix<S>& y) {
    if (x.rows() != y.rows() || x.cols() != y.cols()) {
        throw ShapeError("hadamard product requires identical shapes");
    }
    return x.cwiseProduct(y);
}

template <MatrixScalar S>
double frobenius_norm(const Matrix<S>& x) {
    return x.norm();
}

/// Last singular value, or the smallest one above the rank threshold when
/// nonzero_only is set (0 if the matrix has rank zero).
template <MatrixScalar S>
double smallest_singular_value(const SvdFactors<S>& f, bool nonzero_only = false) {
    if (!nonzero_only) return f.sigma_min();
    const Index r = f.rank();
    return r == 0 ? 0.0 : f.singular_values(r - 1);
}

}  // namespace linalg
}  // namespace tisplit
