#pragma once

// Independent reference computations for the test suites. Nothing here goes
// through the library's SVD path: scalar roots use bisection, inverses use
// cofactors or Gauss-Jordan elimination.

#include <Eigen/Dense>

#include <cmath>
#include <complex>
#include <functional>
#include <random>
#include <utility>

namespace oracle {

/// Bisection on [lo, hi] for a sign change of f; 200 halvings.
inline double bisect(const std::function<double(double)>& f, double lo, double hi) {
    double flo = f(lo);
    for (int it = 0; it < 200; ++it) {
        const double mid = 0.5 * (lo + hi);
        const double fmid = f(mid);
        if ((flo <= 0.0) == (fmid <= 0.0)) {
            lo = mid;
            flo = fmid;
        } else {
            hi = mid;
        }
    }
    return 0.5 * (lo + hi);
}

/// Root e >= 1 of e - 1/e = d.
inline double difference_root(double d) {
    return bisect([d](double e) { return e - 1.0 / e - d; }, 1.0, d + 2.0);
}

/// Root e >= 1 of e + 1/e = d (d >= 2).
inline double sum_root(double d) {
    return bisect([d](double e) { return e + 1.0 / e - d; }, 1.0, d);
}

inline Eigen::Matrix2d cofactor_inverse(const Eigen::Matrix2d& m) {
    const double det = m(0, 0) * m(1, 1) - m(0, 1) * m(1, 0);
    Eigen::Matrix2d inv;
    inv << m(1, 1), -m(0, 1), -m(1, 0), m(0, 0);
    return inv / det;
}

/// Gauss-Jordan inverse with partial pivoting.
template <class Scalar>
Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic> gauss_jordan_inverse(
    Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic> a) {
    using Mat = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>;
    const Eigen::Index n = a.rows();
    Mat inv = Mat::Identity(n, n);
    for (Eigen::Index col = 0; col < n; ++col) {
        Eigen::Index pivot = col;
        for (Eigen::Index r = col + 1; r < n; ++r)
            if (std::abs(a(r, col)) > std::abs(a(pivot, col))) pivot = r;
        a.row(col).swap(a.row(pivot));
        inv.row(col).swap(inv.row(pivot));
        const Scalar p = a(col, col);
        a.row(col) /= p;
        inv.row(col) /= p;
        for (Eigen::Index r = 0; r < n; ++r) {
            if (r == col) continue;
            const Scalar factor = a(r, col);
            a.row(r) -= factor * a.row(col);
            inv.row(r) -= factor * inv.row(col);
        }
    }
    return inv;
}

/// Eigenvalues of a real 2x2 matrix from the characteristic polynomial.
inline std::pair<std::complex<double>, std::complex<double>> eigenvalues_2x2(const Eigen::Matrix2d& m) {
    const double tr = m.trace();
    const double det = m.determinant();
    const std::complex<double> disc = std::sqrt(std::complex<double>(tr * tr - 4.0 * det, 0.0));
    return {(tr + disc) / 2.0, (tr - disc) / 2.0};
}

/// Largest of the four Penrose identity residuals, each relative to the
/// norm of the matrix it should reproduce (floored at 1).
template <class Mat>
double penrose_residual(const Mat& a, const Mat& p) {
    auto rel = [](double num, double den) { return num / std::max(den, 1.0); };
    const Mat ap = a * p;
    const Mat pa = p * a;
    double worst = rel((ap * a - a).norm(), a.norm());
    worst = std::max(worst, rel((pa * p - p).norm(), p.norm()));
    worst = std::max(worst, rel((ap.adjoint() - ap).norm(), ap.norm()));
    worst = std::max(worst, rel((pa.adjoint() - pa).norm(), pa.norm()));
    return worst;
}

inline Eigen::MatrixXd random_matrix(Eigen::Index rows, Eigen::Index cols, std::mt19937_64& rng) {
    std::normal_distribution<double> dist;
    Eigen::MatrixXd m(rows, cols);
    for (Eigen::Index i = 0; i < m.size(); ++i) m.data()[i] = dist(rng);
    return m;
}

}  // namespace oracle
