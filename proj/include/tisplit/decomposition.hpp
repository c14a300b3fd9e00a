#pragma once

// Constructions expressing a matrix M through a factor A and its
// (transpose / conjugate-transpose / plain) inverse:
//
//   diff            M = A - A^{-T}            (square, nonsingular)
//   diff-pinv       M = A - (A^+)^T           (any shape, any rank)
//   diff-unitfill   M = A - A^{-T}            (square, singular allowed)
//   diff-complex    M = A - (A^{-1})^H        (complex square)
//   sum             M = c (A + A^{-T})
//   nt-diff         M = A - A^{-1}
//   nt-sum          M = c (A + A^{-1})
//
// The transpose forms take the SVD M = U D V^T and set A = U E V^T, where each
// E_ii solves the scalar version of the identity for D_ii.

#include "tisplit/errors.hpp"
#include "tisplit/linalg.hpp"
#include "tisplit/spectral_shift.hpp"
#include "tisplit/tolerances.hpp"
#include "tisplit/variant.hpp"

#include <cmath>
#include <optional>
#include <sstream>
#include <string>

namespace tisplit {

namespace detail {

template <MatrixScalar S>
Matrix<S> evaluate_form(Variant variant, const Matrix<S>& a, double c, const Tolerances& tol) {
    switch (variant) {
        case Variant::DiffNonsingular:
        case Variant::DiffUnitFill:
            return a - linalg::transpose_inverse(a, tol);
        case Variant::DiffPseudoinverse: {
            const auto f = linalg::compute_svd(a, tol);
            return a - linalg::pseudoinverse(f).transpose();
        }
        case Variant::DiffConjugate:
            return a - linalg::adjoint_inverse(a, tol);
        case Variant::SumScaled:
            return c * (a + linalg::transpose_inverse(a, tol));
        case Variant::NonTransposeDiff:
            return a - linalg::inverse(a, tol);
        case Variant::NonTransposeSum:
            return c * (a + linalg::inverse(a, tol));
    }
    throw PreconditionError("unknown variant");
}

inline std::string singular_message(const char* form, double sigma_min, double sigma_max) {
    std::ostringstream os;
    os << "input is singular at the rank tolerance (sigma_min = " << sigma_min << ", sigma_max = " << sigma_max
       << "); " << form;
    return os.str();
}

}  // namespace detail

/// Immutable result of a decomposition. Construction re-evaluates the
/// decomposed form from A and rejects the record if it does not reproduce
/// the source within residual_rel_tol.
template <MatrixScalar S>
class Decomposition {
public:
    Decomposition(Variant variant, Matrix<S> a, double scale_c, Index effective_rank, double sigma_min,
                  const Matrix<S>& source, const Tolerances& tol)
        : variant_(variant), a_(std::move(a)), scale_c_(scale_c), effective_rank_(effective_rank),
          sigma_min_(sigma_min) {
        if (is_sum_variant(variant)) {
            if (!(std::isfinite(scale_c) && scale_c > 0.0)) {
                throw PreconditionError("scale constant c must be finite and positive");
            }
        } else if (scale_c != 1.0) {
            throw PreconditionError("scale constant must be 1 for difference variants");
        }
        if (a_.rows() != source.rows() || a_.cols() != source.cols()) {
            throw ShapeError("factor and source shapes differ");
        }
        const Matrix<S> rebuilt = detail::evaluate_form(variant_, a_, scale_c_, tol);
        residual_rel_ = (rebuilt - source).norm() / std::max(source.norm(), 1.0);
        if (!(residual_rel_ <= tol.residual_rel_tol)) {
            std::ostringstream os;
            os << variant_name(variant_) << " reconstruction residual " << residual_rel_ << " exceeds tolerance "
               << tol.residual_rel_tol;
            throw NumericError(os.str());
        }
    }

    Variant variant() const noexcept { return variant_; }
    const Matrix<S>& A() const noexcept { return a_; }
    double scale_c() const noexcept { return scale_c_; }
    Index effective_rank() const noexcept { return effective_rank_; }
    /// Smallest singular value of the decomposed matrix.
    double sigma_min() const noexcept { return sigma_min_; }
    double residual_rel() const noexcept { return residual_rel_; }

private:
    Variant variant_;
    Matrix<S> a_;
    double scale_c_;
    Index effective_rank_;
    double sigma_min_;
    double residual_rel_ = 0.0;
};

/// Evaluates the right-hand side of the decomposed form (A - A^{-T},
/// c(A + A^{-T}), A - A^{-1}, ...) according to the record's variant.
template <MatrixScalar S>
Matrix<S> reconstruct(const Decomposition<S>& dec, const Tolerances& tol = {}) {
    return detail::evaluate_form(dec.variant(), dec.A(), dec.scale_c(), tol);
}

/// The "B" term of M = A - B (or M = c(A + B)): the transpose inverse,
/// pseudoinverse transpose, adjoint inverse or plain inverse of A.
template <MatrixScalar S>
Matrix<S> companion_term(const Decomposition<S>& dec, const Tolerances& tol = {}) {
    switch (dec.variant()) {
        case Variant::DiffPseudoinverse:
            return linalg::pseudoinverse(linalg::compute_svd(dec.A(), tol)).transpose();
        case Variant::DiffConjugate:
            return linalg::adjoint_inverse(dec.A(), tol);
        case Variant::NonTransposeDiff:
        case Variant::NonTransposeSum:
            return linalg::inverse(dec.A(), tol);
        default:
            return linalg::transpose_inverse(dec.A(), tol);
    }
}

/// M = A - A^{-T} for real square nonsingular M.
inline Decomposition<double> decompose_diff(const RealMatrix& m, const Tolerances& tol = {}) {
    linalg::require_finite(m, "M");
    linalg::require_square(m, "M");
    const auto f = linalg::compute_svd(m, tol);
    if (f.rank() < m.rows()) {
        throw RankDeficientError(
            detail::singular_message("use diff-pinv or diff-unitfill for singular input", f.sigma_min(), f.sigma_max()),
            f.sigma_min());
    }
    Eigen::VectorXd e(f.singular_values.size());
    for (Index i = 0; i < e.size(); ++i) e(i) = spectral_shift(f.singular_values(i));
    RealMatrix a = f.U * e.asDiagonal() * f.V.transpose();
    return {Variant::DiffNonsingular, std::move(a), 1.0, f.rank(), f.sigma_min(), m, tol};
}

/// M = A - (A^+)^T for real M of any shape; A keeps only the retained
/// singular directions, so rank(A) = rank(M).
inline Decomposition<double> decompose_diff_pinv(const RealMatrix& m, const Tolerances& tol = {}) {
    linalg::require_finite(m, "M");
    const auto f = linalg::compute_svd(m, tol);
    const Index r = f.rank();
    Eigen::VectorXd e(r);
    for (Index i = 0; i < r; ++i) e(i) = spectral_shift(f.singular_values(i));
    RealMatrix a = f.U.leftCols(r) * e.asDiagonal() * f.V.leftCols(r).transpose();
    return {Variant::DiffPseudoinverse, std::move(a), 1.0, r, f.sigma_min(), m, tol};
}

/// M = A - A^{-T} for real square M, singular allowed: below-tolerance
/// singular values map to 1 and cancel in the difference.
inline Decomposition<double> decompose_diff_unitfill(const RealMatrix& m, const Tolerances& tol = {}) {
    linalg::require_finite(m, "M");
    linalg::require_square(m, "M");
    const auto f = linalg::compute_svd(m, tol, linalg::SvdScope::full);
    Eigen::VectorXd e(f.singular_values.size());
    for (Index i = 0; i < e.size(); ++i) {
        const double s = f.singular_values(i);
        e(i) = s > f.rank_tol ? spectral_shift(s) : 1.0;
    }
    RealMatrix a = *f.full_U * e.asDiagonal() * f.full_V->transpose();
    return {Variant::DiffUnitFill, std::move(a), 1.0, f.rank(), f.sigma_min(), m, tol};
}

/// M = A - (A^{-1})^H for complex square nonsingular M.
inline Decomposition<Complex> decompose_diff_complex(const ComplexMatrix& m, const Tolerances& tol = {}) {
    linalg::require_finite(m, "M");
    linalg::require_square(m, "M");
    const auto f = linalg::compute_svd(m, tol);
    if (f.rank() < m.rows()) {
        throw RankDeficientError(
            detail::singular_message("the conjugate form requires nonsingular input", f.sigma_min(), f.sigma_max()),
            f.sigma_min());
    }
    Eigen::VectorXd e(f.singular_values.size());
    for (Index i = 0; i < e.size(); ++i) e(i) = spectral_shift(f.singular_values(i));
    ComplexMatrix a = f.U * e.asDiagonal() * f.V.adjoint();
    return {Variant::DiffConjugate, std::move(a), 1.0, f.rank(), f.sigma_min(), m, tol};
}

/// M = c (A + A^{-T}) for real square nonsingular M.
///
/// Without an explicit c, c = sigma_min / 2 so that M / c has smallest
/// singular value exactly 2. With an explicit c, M / c must have all singular
/// values >= 2; values within a relative 1e-12 below 2 are treated as the double root.
inline Decomposition<double> decompose_sum(const RealMatrix& m, std::optional<double> c = std::nullopt,
                                           const Tolerances& tol = {}) {
    linalg::require_finite(m, "M");
    linalg::require_square(m, "M");
    const auto f = linalg::compute_svd(m, tol);
    if (f.rank() < m.rows()) {
        throw RankDeficientError(
            detail::singular_message("zero singular values cannot cancel in a sum", f.sigma_min(), f.sigma_max()),
            f.sigma_min());
    }
    const double scale = c.value_or(0.5 * f.sigma_min());
    if (!(std::isfinite(scale) && scale > 0.0)) {
        throw PreconditionError("scale constant c must be finite and positive");
    }
    constexpr double kDoubleRootSlack = 1e-12;
    Eigen::VectorXd e(f.singular_values.size());
    for (Index i = 0; i < e.size(); ++i) {
        double d = f.singular_values(i) / scale;
        if (d < 2.0) {
            if (d < 2.0 * (1.0 - kDoubleRootSlack)) {
                std::ostringstream os;
                os << "M/c has singular value " << d << " < 2 (c = " << scale
                   << "); no real A exists, use c <= sigma_min/2 = " << 0.5 * f.sigma_min();
                throw InfeasibleError(os.str());
            }
            d = 2.0;
        }
        e(i) = spectral_shift_sum(d);
    }
    RealMatrix a = f.U * e.asDiagonal() * f.V.transpose();
    return {Variant::SumScaled, std::move(a), scale, f.rank(), f.sigma_min(), m, tol};
}

/// M = A - A^{-1} with A = (M + sqrt(M^2 + 4I)) / 2 (principal root).
/// A commutes with M and A(A - M) = I.
inline Decomposition<double> decompose_nontranspose_diff(const RealMatrix& m, const Tolerances& tol = {}) {
    linalg::require_finite(m, "M");
    linalg::require_square(m, "M");
    const Index n = m.rows();
    const RealMatrix id = RealMatrix::Identity(n, n);

    RealMatrix root;
    try {
        root = linalg::principal_matrix_sqrt<double>(m * m + 4.0 * id, tol);
    } catch (const BranchCutError& err) {
        // mu = lambda^2 + 4 for an eigenvalue lambda of M.
        const Complex lambda = std::sqrt(err.eigenvalue() - 4.0);
        throw BranchCutError("M has eigenvalues +/-(" + format_complex(lambda) +
                                 ") (M^2 + 4I has eigenvalue " + format_complex(err.eigenvalue()) +
                                 " on the branch cut); the non-transpose difference form needs a principal square root",
                             lambda);
    }
    RealMatrix a = 0.5 * (m + root);

    const double identity_residual = (a * (a - m) - id).norm();
    if (!(identity_residual <= tol.residual_rel_tol * static_cast<double>(n))) {
        std::ostringstream os;
        os << "A(A - M) = I violated, residual " << identity_residual;
        throw NumericError(os.str());
    }
    const auto f = linalg::compute_svd(m, tol);
    return {Variant::NonTransposeDiff, std::move(a), 1.0, f.rank(), f.sigma_min(), m, tol};
}

/// M = c (A + A^{-1}) with A = (M' + sqrt(M'^2 - 4I)) / 2 and M' = M / c.
/// c defaults to sigma_min / 2.
inline Decomposition<double> decompose_nontranspose_sum(const RealMatrix& m, std::optional<double> c = std::nullopt,
                                                        const Tolerances& tol = {}) {
    linalg::require_finite(m, "M");
    linalg::require_square(m, "M");
    const Index n = m.rows();
    const auto f = linalg::compute_svd(m, tol);
    if (f.rank() < n) {
        throw RankDeficientError(
            detail::singular_message("the non-transpose sum form requires nonsingular input", f.sigma_min(),
                                     f.sigma_max()),
            f.sigma_min());
    }
    const double scale = c.value_or(0.5 * f.sigma_min());
    if (!(std::isfinite(scale) && scale > 0.0)) {
        throw PreconditionError("scale constant c must be finite and positive");
    }
    const RealMatrix id = RealMatrix::Identity(n, n);
    const RealMatrix scaled = m / scale;

    RealMatrix root;
    try {
        root = linalg::principal_matrix_sqrt<double>(scaled * scaled - 4.0 * id, tol, {.allow_zero_eigenvalues = true});
    } catch (const BranchCutError& err) {
        const Complex lambda = scale * std::sqrt(err.eigenvalue() + 4.0);
        std::ostringstream os;
        os << "with c = " << scale << ", M has eigenvalues +/-(" << format_complex(lambda) << ") and (M/c)^2 - 4I has eigenvalue "
           << format_complex(err.eigenvalue()) << " on the branch cut; supply a different c";
        throw BranchCutError(os.str(), lambda);
    }
    RealMatrix a = 0.5 * (scaled + root);

    // Relative to the size of the product itself: M/c can be large when c is small.
    const RealMatrix gap = a - scaled;
    const double identity_residual = (a * gap + id).norm() / std::max(1.0, a.norm() * gap.norm());
    if (!(identity_residual <= tol.residual_rel_tol * static_cast<double>(n))) {
        std::ostringstream os;
        os << "A(A - M/c) = -I violated, residual " << identity_residual;
        throw NumericError(os.str());
    }
    return {Variant::NonTransposeSum, std::move(a), scale, f.rank(), f.sigma_min(), m, tol};
}

/// Relative gain array G o G^{-T} (Hadamard product with the transpose inverse).
///
/// The RGA is invariant under diagonal scaling, so it is evaluated on the
/// power-of-two equilibrated matrix; the rank test applies to that matrix too.
template <MatrixScalar S>
Matrix<S> rga(const Matrix<S>& g, const Tolerances& tol = {}) {
    linalg::require_finite(g, "G");
    linalg::require_square(g, "G");
    const Matrix<S> balanced = linalg::equilibrate_pow2(g);
    return linalg::hadamard<S>(balanced, linalg::transpose_inverse(balanced, tol));
}

}  // namespace tisplit
