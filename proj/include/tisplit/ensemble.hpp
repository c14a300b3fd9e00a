#pragma once

#include "tisplit/errors.hpp"
#include "tisplit/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <optional>
#include <random>
#include <string>
#include <string_view>
#include <vector>

namespace tisplit::props {

enum class EnsembleKind { gaussian, prescribed_spectrum, orthogonal, rank_deficient, complex_gaussian };

inline constexpr std::string_view ensemble_kind_name(EnsembleKind k) {
    switch (k) {
        case EnsembleKind::gaussian: return "gaussian";
        case EnsembleKind::prescribed_spectrum: return "prescribed_spectrum";
        case EnsembleKind::orthogonal: return "orthogonal";
        case EnsembleKind::rank_deficient: return "rank_deficient";
        case EnsembleKind::complex_gaussian: return "complex_gaussian";
    }
    return "?";
}

/// Recipe for a reproducible batch of random test matrices.
struct EnsembleSpec {
    Index rows = 1;
    Index cols = 1;
    EnsembleKind kind = EnsembleKind::gaussian;
    /// sigma_max / sigma_min for prescribed_spectrum (required there, rejected elsewhere).
    std::optional<double> condition_number = std::nullopt;
    /// Exact rank for rank_deficient (required there).
    std::optional<Index> rank = std::nullopt;
    std::uint64_t seed = 0;
    Index count = 1;

    void validate() const {
        if (rows < 1 || cols < 1) throw PreconditionError("ensemble dimensions must be positive");
        if (count < 1) throw PreconditionError("ensemble count must be positive");
        if (condition_number) {
            if (kind != EnsembleKind::prescribed_spectrum) {
                throw PreconditionError("condition_number is only valid for prescribed_spectrum ensembles");
            }
            if (!(std::isfinite(*condition_number) && *condition_number >= 1.0)) {
                throw PreconditionError("condition_number must be finite and >= 1");
            }
        } else if (kind == EnsembleKind::prescribed_spectrum) {
            throw PreconditionError("prescribed_spectrum ensembles require a condition_number");
        }
        if (rank) {
            if (*rank < 0 || *rank > std::min(rows, cols)) {
                throw PreconditionError("rank " + std::to_string(*rank) + " exceeds min(rows, cols) = " +
                                        std::to_string(std::min(rows, cols)));
            }
        } else if (kind == EnsembleKind::rank_deficient) {
            throw PreconditionError("rank_deficient ensembles require a rank");
        }
        if (kind == EnsembleKind::orthogonal && rows != cols) {
            throw PreconditionError("orthogonal ensembles must be square");
        }
    }
};

namespace detail {

inline std::mt19937_64 member_rng(std::uint64_t seed, Index index) {
    std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                      static_cast<std::uint32_t>(index)};
    return std::mt19937_64(seq);
}

/// k values from 1 down to 1/cond, interior points log-uniform.
inline Eigen::VectorXd log_uniform_spectrum(Index k, double cond, std::mt19937_64& rng) {
    Eigen::VectorXd sigma(k);
    if (k == 0) return sigma;
    const double log_min = -std::log(cond);
    std::uniform_real_distribution<double> u(log_min, 0.0);
    std::vector<double> logs(static_cast<std::size_t>(k));
    for (auto& l : logs) l = u(rng);
    logs.front() = 0.0;
    if (k > 1) logs.back() = log_min;
    std::sort(logs.begin(), logs.end(), std::greater<>());
    for (Index i = 0; i < k; ++i) sigma(i) = std::exp(logs[static_cast<std::size_t>(i)]);
    if (k > 1) sigma(k - 1) = 1.0 / cond;
    return sigma;
}

}  // namespace detail

inline AnyMatrix generate_member(const EnsembleSpec& spec, Index index) {
    auto rng = detail::member_rng(spec.seed, index);
    const Index k = std::min(spec.rows, spec.cols);
    switch (spec.kind) {
        case EnsembleKind::gaussian:
            return linalg::gaussian_matrix(spec.rows, spec.cols, rng);
        case EnsembleKind::complex_gaussian:
            return linalg::complex_gaussian_matrix(spec.rows, spec.cols, rng);
        case EnsembleKind::orthogonal:
            return linalg::random_orthogonal(spec.rows, rng);
        case EnsembleKind::prescribed_spectrum: {
            const Eigen::VectorXd sigma = detail::log_uniform_spectrum(k, *spec.condition_number, rng);
            const RealMatrix u = linalg::random_orthogonal(spec.rows, rng).leftCols(k);
            const RealMatrix v = linalg::random_orthogonal(spec.cols, rng).leftCols(k);
            return RealMatrix(u * sigma.asDiagonal() * v.transpose());
        }
        case EnsembleKind::rank_deficient: {
            const RealMatrix g = linalg::gaussian_matrix(spec.rows, spec.cols, rng);
            auto f = linalg::compute_svd(g);
            f.singular_values.tail(k - *spec.rank).setZero();
            return f.reconstruct();
        }
    }
    throw PreconditionError("unknown ensemble kind");
}

/// Deterministic for a fixed EnsembleSpec: member i depends only on (seed, i).
inline std::vector<AnyMatrix> generate_ensemble(const EnsembleSpec& spec) {
    spec.validate();
    std::vector<AnyMatrix> out;
    out.reserve(static_cast<std::size_t>(spec.count));
    for (Index i = 0; i < spec.count; ++i) out.push_back(generate_member(spec, i));
    return out;
}

}  // namespace tisplit::props
