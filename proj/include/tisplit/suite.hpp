#pragma once

#include "tisplit/checks.hpp"
#include "tisplit/decomposition.hpp"
#include "tisplit/ensemble.hpp"
#include "tisplit/linalg.hpp"
#include "tisplit/variant.hpp"

#include <cstdint>
#include <cstdio>
#include <cstring>
#include <limits>
#include <span>
#include <string>
#include <vector>

namespace tisplit::props {

struct VerificationReport {
    Variant variant = Variant::DiffNonsingular;
    std::uint64_t seed = 0;
    std::string input_digest;
    std::vector<CheckEntry> checks;

    bool passed() const {
        for (const auto& c : checks)
            if (!c.passed) return false;
        return true;
    }
};

/// FNV-1a 64 over the scalar kind, dimensions and raw entry bytes (column-major).
inline std::string matrix_digest(const AnyMatrix& m) {
    std::uint64_t h = 0xcbf29ce484222325ULL;
    auto mix = [&h](const void* data, std::size_t len) {
        const auto* bytes = static_cast<const unsigned char*>(data);
        for (std::size_t i = 0; i < len; ++i) {
            h ^= bytes[i];
            h *= 0x100000001b3ULL;
        }
    };
    const std::int64_t header[3] = {is_complex(m) ? 1 : 0, rows(m), cols(m)};
    mix(header, sizeof(header));
    std::visit([&](const auto& x) { mix(x.data(), static_cast<std::size_t>(x.size()) * sizeof(*x.data())); }, m);
    char buf[32];
    std::snprintf(buf, sizeof(buf), "fnv1a64:%016llx", static_cast<unsigned long long>(h));
    return buf;
}

namespace detail {

/// Reason the variant cannot apply to this input, or empty when it may.
inline std::string inapplicable_reason(Variant v, const AnyMatrix& m, Index rank) {
    const bool square = rows(m) == cols(m);
    if (is_complex(m) && v != Variant::DiffConjugate) return "variant requires real input";
    if (!square && v != Variant::DiffPseudoinverse) return "variant requires square input";
    const bool needs_full_rank = v == Variant::DiffNonsingular || v == Variant::DiffConjugate ||
                                 v == Variant::SumScaled || v == Variant::NonTransposeSum;
    if (needs_full_rank && rank < rows(m)) return "variant requires nonsingular input (rank-deficient)";
    return {};
}

inline void append(std::vector<CheckEntry>& out, std::vector<CheckEntry> more) {
    out.insert(out.end(), std::make_move_iterator(more.begin()), std::make_move_iterator(more.end()));
}

inline CheckEntry failed_decomposition(const std::string& what, double tol) {
    CheckEntry e{"decompose", std::numeric_limits<double>::max(), tol, false, false, what};
    return e;
}

inline std::vector<CheckEntry> real_variant_checks(Variant v, const RealMatrix& m, std::uint64_t check_seed,
                                                   const Tolerances& tol) {
    const double t = tol.residual_rel_tol;
    std::vector<CheckEntry> out;
    switch (v) {
        case Variant::DiffNonsingular: {
            const auto dec = decompose_diff(m, tol);
            out.push_back(check_reconstruction(m, dec, tol));
            out.push_back(check_doubly_stochastic<double>(rga(dec.A(), tol), 1e-8, "doubly_stochastic_A_o_B"));
            append(out, check_symmetric_identities(m, dec, t, tol));
            const RealMatrix r = linalg::random_orthogonal(m.rows(), check_seed);
            out.push_back(check_orthonormal_consistency(m, r, 1e-8, tol));
            break;
        }
        case Variant::DiffPseudoinverse: {
            const auto dec = decompose_diff_pinv(m, tol);
            out.push_back(check_reconstruction(m, dec, tol));
            const Index rank_a = linalg::compute_svd(dec.A(), tol).rank();
            out.push_back(make_check("rank_preservation",
                                     static_cast<double>(std::abs(rank_a - dec.effective_rank())), 0.5));
            break;
        }
        case Variant::DiffUnitFill: {
            const auto dec = decompose_diff_unitfill(m, tol);
            out.push_back(check_reconstruction(m, dec, tol));
            const double floor = linalg::compute_svd(dec.A(), tol).sigma_min();
            out.push_back(make_check("sigma_floor", std::max(0.0, 1.0 - floor), t));
            out.push_back(check_doubly_stochastic<double>(rga(dec.A(), tol), 1e-8, "doubly_stochastic_A_o_B"));
            break;
        }
        case Variant::SumScaled: {
            const auto dec = decompose_sum(m, std::nullopt, tol);
            out.push_back(check_reconstruction(m, dec, tol));
            const double s = linalg::compute_svd<double>(m / dec.scale_c(), tol).sigma_min();
            out.push_back(make_check("scaled_sigma_min", std::abs(s - 2.0) / 2.0, t));
            break;
        }
        case Variant::NonTransposeDiff: {
            const auto dec = decompose_nontranspose_diff(m, tol);
            out.push_back(check_reconstruction(m, dec, tol));
            const Index n = m.rows();
            const RealMatrix& a = dec.A();
            out.push_back(make_check("nontranspose_identity",
                                     (a * (a - m) - RealMatrix::Identity(n, n)).norm() / static_cast<double>(n), t));
            break;
        }
        case Variant::NonTransposeSum: {
            const auto dec = decompose_nontranspose_sum(m, std::nullopt, tol);
            out.push_back(check_reconstruction(m, dec, tol));
            const Index n = m.rows();
            const RealMatrix& a = dec.A();
            const RealMatrix scaled = m / dec.scale_c();
            const RealMatrix gap = a - scaled;
            const double rel = (a * gap + RealMatrix::Identity(n, n)).norm() / std::max(1.0, a.norm() * gap.norm());
            out.push_back(make_check("nontranspose_identity", rel / static_cast<double>(n), t));
            break;
        }
        case Variant::DiffConjugate:
            break;
    }
    return out;
}

inline std::vector<CheckEntry> conjugate_checks(const ComplexMatrix& m, const Tolerances& tol) {
    const auto dec = decompose_diff_complex(m, tol);
    std::vector<CheckEntry> out;
    out.push_back(check_reconstruction(m, dec, tol));
    const double floor = linalg::compute_svd(dec.A(), tol).sigma_min();
    out.push_back(make_check("sigma_floor", std::max(0.0, 1.0 - floor), tol.residual_rel_tol));
    return out;
}

}  // namespace detail

/// Runs one variant on one matrix with every applicable check. Inapplicable
/// combinations and branch-cut preconditions are recorded as skipped; any
/// other failure of the decomposition is recorded as a failed "decompose" entry.
inline VerificationReport verify_matrix(const AnyMatrix& m, Variant v, std::uint64_t seed, const Tolerances& tol = {},
                                        std::uint64_t check_seed = 0) {
    VerificationReport report{v, seed, matrix_digest(m), {}};
    const Index rank = std::visit([&](const auto& x) { return linalg::compute_svd(x, tol).rank(); }, m);
    if (auto reason = detail::inapplicable_reason(v, m, rank); !reason.empty()) {
        report.checks.push_back(skipped_check("applicability", tol.residual_rel_tol, std::move(reason)));
        return report;
    }
    try {
        if (v == Variant::DiffConjugate) {
            report.checks = detail::conjugate_checks(to_complex(m), tol);
        } else {
            report.checks = detail::real_variant_checks(v, std::get<RealMatrix>(m), check_seed, tol);
        }
    } catch (const BranchCutError& e) {
        report.checks.push_back(skipped_check("applicability", tol.residual_rel_tol, e.what()));
    } catch (const Error& e) {
        report.checks.push_back(detail::failed_decomposition(e.what(), tol.residual_rel_tol));
    }
    return report;
}

/// Reports ordered by ensemble index, then matrix index, then variant order.
inline std::vector<VerificationReport> run_suite(std::span<const EnsembleSpec> specs, std::span<const Variant> variants,
                                                 const Tolerances& tol = {}) {
    std::vector<VerificationReport> out;
    for (const auto& spec : specs) {
        const auto members = generate_ensemble(spec);
        for (std::size_t i = 0; i < members.size(); ++i) {
            const std::uint64_t check_seed = spec.seed ^ (0x9e3779b97f4a7c15ULL * (i + 1));
            for (Variant v : variants) out.push_back(verify_matrix(members[i], v, spec.seed, tol, check_seed));
        }
    }
    return out;
}

}  // namespace tisplit::props
