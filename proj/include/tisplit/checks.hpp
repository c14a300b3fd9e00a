#pragma once

// Property checks for decompositions and the relative gain array. Each check
// yields a named residual compared against a tolerance; failures are data,
// not exceptions.

#include "tisplit/decomposition.hpp"
#include "tisplit/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <string>
#include <vector>

namespace tisplit::props {

struct CheckEntry {
    std::string name;
    double residual = 0.0;
    double tolerance = 0.0;
    bool passed = false;
    bool skipped = false;
    std::string reason;  // only for skipped entries
};

inline CheckEntry make_check(std::string name, double residual, double tolerance) {
    return {std::move(name), residual, tolerance, residual <= tolerance, false, {}};
}

/// Skipped entries carry zero residual and count as passed; they mark checks
/// whose applicability guard did not hold.
inline CheckEntry skipped_check(std::string name, double tolerance, std::string reason) {
    return {std::move(name), 0.0, tolerance, true, true, std::move(reason)};
}

inline double relative_to(double value, double reference) { return value / std::max(reference, 1.0); }

template <MatrixScalar S>
CheckEntry check_reconstruction(const Matrix<S>& m, const Decomposition<S>& dec, const Tolerances& tol = {}) {
    const double residual = relative_to((reconstruct(dec, tol) - m).norm(), m.norm());
    return make_check("reconstruction", residual, tol.residual_rel_tol);
}

/// Largest deviation of any row or column sum from 1.
template <MatrixScalar S>
CheckEntry check_doubly_stochastic(const Matrix<S>& p, double tol, std::string name = "doubly_stochastic") {
    linalg::require_square(p, "P");
    double worst = 0.0;
    for (Index i = 0; i < p.rows(); ++i) worst = std::max(worst, std::abs(p.row(i).sum() - S(1.0)));
    for (Index j = 0; j < p.cols(); ++j) worst = std::max(worst, std::abs(p.col(j).sum() - S(1.0)));
    return make_check(std::move(name), worst, tol);
}

/// |rga(D1 G D2) - rga(G)|_F relative to max(|rga(G)|_F, 1).
inline CheckEntry check_rga_scaling_invariance(const RealMatrix& g, const Eigen::VectorXd& d1, const Eigen::VectorXd& d2,
                                               double tol, const Tolerances& cfg = {}) {
    if (d1.size() != g.rows() || d2.size() != g.cols()) throw ShapeError("scaling diagonals do not match G");
    const RealMatrix base = rga(g, cfg);
    const RealMatrix scaled = rga<double>(d1.asDiagonal() * g * d2.asDiagonal(), cfg);
    return make_check("rga_scaling_invariance", relative_to((scaled - base).norm(), base.norm()), tol);
}

/// True when consecutive singular values differ by at least rel_gap * sigma_max.
inline bool has_distinct_spectrum(const Eigen::VectorXd& sigma, double rel_gap = 1e-6) {
    if (sigma.size() < 2) return true;
    const double floor = rel_gap * sigma(0);
    for (Index i = 0; i + 1 < sigma.size(); ++i) {
        if (sigma(i) - sigma(i + 1) < floor) return false;
    }
    return true;
}

/// f(R M R^T) against R f(M) R^T for the nonsingular difference map f: M -> A.
inline CheckEntry check_orthonormal_consistency(const RealMatrix& m, const RealMatrix& r, double tol,
                                                const Tolerances& cfg = {}) {
    const auto f = linalg::compute_svd(m, cfg);
    if (!has_distinct_spectrum(f.singular_values)) {
        return skipped_check("orthonormal_consistency", tol, "singular values not pairwise separated by 1e-6 relative");
    }
    const RealMatrix lhs = decompose_diff(RealMatrix(r * m * r.transpose()), cfg).A();
    const RealMatrix rhs = r * decompose_diff(m, cfg).A() * r.transpose();
    return make_check("orthonormal_consistency", relative_to((lhs - rhs).norm(), m.norm()), tol);
}

/// M A^T = A A^T - I and A^{-1} M = I - (A^T A)^{-1}, plus symmetry of both
/// products and positive semidefiniteness of A A^T.
inline std::vector<CheckEntry> check_symmetric_identities(const RealMatrix& m, const Decomposition<double>& dec,
                                                          double tol, const Tolerances& cfg = {}) {
    const RealMatrix& a = dec.A();
    const Index n = a.rows();
    const RealMatrix id = RealMatrix::Identity(n, n);
    const double m_norm = m.norm();

    const RealMatrix m_at = m * a.transpose();
    const RealMatrix a_at = a * a.transpose();
    const RealMatrix a_inv = linalg::inverse(a, cfg);
    const RealMatrix ainv_m = a_inv * m;
    const RealMatrix ata_inv = a_inv * a_inv.transpose();

    std::vector<CheckEntry> out;
    out.push_back(make_check("symmetric_identity_right_transpose", relative_to((m_at - (a_at - id)).norm(), m_norm), tol));
    out.push_back(make_check("symmetric_identity_left_inverse", relative_to((ainv_m - (id - ata_inv)).norm(), m_norm), tol));
    out.push_back(make_check("symmetry_M_At", relative_to((m_at - m_at.transpose()).norm(), m_at.norm()), tol));
    out.push_back(make_check("symmetry_Ainv_M", relative_to((ainv_m - ainv_m.transpose()).norm(), ainv_m.norm()), tol));

    Eigen::SelfAdjointEigenSolver<RealMatrix> eig(a_at, Eigen::EigenvaluesOnly);
    const double lambda_min = eig.eigenvalues().minCoeff();
    out.push_back(make_check("psd_A_At", std::max(0.0, -lambda_min) / std::max(a_at.norm(), 1e-300), 1e-9));
    return out;
}

}  // namespace tisplit::props
