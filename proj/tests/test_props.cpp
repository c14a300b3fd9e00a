#include "oracles.hpp"
#include "tisplit/suite.hpp"

#include <gtest/gtest.h>

#include <algorithm>
#include <random>

namespace tisplit::props {
namespace {

RealMatrix mat2(double a, double b, double c, double d) {
    RealMatrix m(2, 2);
    m << a, b, c, d;
    return m;
}

const CheckEntry* find(const VerificationReport& r, const std::string& name) {
    auto it = std::find_if(r.checks.begin(), r.checks.end(), [&](const CheckEntry& c) { return c.name == name; });
    return it == r.checks.end() ? nullptr : &*it;
}

// ---------------------------------------------------------------------------
// Ensembles
// ---------------------------------------------------------------------------

TEST(Ensemble, OrthogonalKind) {
    const auto ms = generate_ensemble({.rows = 2, .cols = 2, .kind = EnsembleKind::orthogonal, .seed = 1, .count = 3});
    ASSERT_EQ(ms.size(), 3u);
    for (const auto& any : ms) {
        const auto& q = std::get<RealMatrix>(any);
        EXPECT_LE((q.transpose() * q - RealMatrix::Identity(2, 2)).norm(), 1e-14);
    }
}

TEST(Ensemble, PrescribedSpectrumHitsConditionNumber) {
    const auto ms = generate_ensemble(
        {.rows = 4, .cols = 4, .kind = EnsembleKind::prescribed_spectrum, .condition_number = 1e4, .seed = 2, .count = 5});
    for (const auto& any : ms) {
        const auto f = linalg::compute_svd(std::get<RealMatrix>(any));
        EXPECT_NEAR(f.sigma_max() / f.sigma_min(), 1e4, 0.01 * 1e4);
    }
}

TEST(Ensemble, RankDeficientHasRequestedRank) {
    const auto ms = generate_ensemble(
        {.rows = 3, .cols = 5, .kind = EnsembleKind::rank_deficient, .rank = 2, .seed = 3, .count = 4});
    for (const auto& any : ms) {
        const auto& m = std::get<RealMatrix>(any);
        EXPECT_EQ(m.rows(), 3);
        EXPECT_EQ(m.cols(), 5);
        EXPECT_EQ(linalg::compute_svd(m).rank(), 2);
    }
}

TEST(Ensemble, ComplexKind) {
    const auto ms = generate_ensemble({.rows = 3, .cols = 3, .kind = EnsembleKind::complex_gaussian, .seed = 4});
    ASSERT_EQ(ms.size(), 1u);
    EXPECT_TRUE(is_complex(ms[0]));
}

TEST(Ensemble, DeterministicPerSeed) {
    const EnsembleSpec spec{.rows = 5, .cols = 3, .kind = EnsembleKind::gaussian, .seed = 99, .count = 3};
    const auto a = generate_ensemble(spec);
    const auto b = generate_ensemble(spec);
    for (std::size_t i = 0; i < a.size(); ++i) EXPECT_EQ(std::get<RealMatrix>(a[i]), std::get<RealMatrix>(b[i]));
    EXPECT_NE(std::get<RealMatrix>(a[0]), std::get<RealMatrix>(a[1]));
}

TEST(Ensemble, InfeasibleSpecsRejected) {
    EXPECT_THROW(generate_ensemble({.rows = 3, .cols = 2, .kind = EnsembleKind::rank_deficient, .rank = 3}),
                 PreconditionError);
    EXPECT_THROW(generate_ensemble({.rows = 3, .cols = 3, .kind = EnsembleKind::gaussian, .condition_number = 10.0}),
                 PreconditionError);
    EXPECT_THROW(generate_ensemble({.rows = 3, .cols = 2, .kind = EnsembleKind::orthogonal}), PreconditionError);
    EXPECT_THROW(generate_ensemble({.rows = 3, .cols = 3, .kind = EnsembleKind::prescribed_spectrum,
                                    .condition_number = 0.5}),
                 PreconditionError);
}

// ---------------------------------------------------------------------------
// Checks
// ---------------------------------------------------------------------------

TEST(CheckReconstruction, IdentityAndZero) {
    const RealMatrix id = RealMatrix::Identity(2, 2);
    const auto c = check_reconstruction(id, decompose_diff(id));
    EXPECT_TRUE(c.passed);
    EXPECT_LE(c.residual, 1e-15);

    const RealMatrix zero = RealMatrix::Zero(2, 2);
    EXPECT_LE(check_reconstruction(zero, decompose_diff_unitfill(zero)).residual, 1e-15);

    std::mt19937_64 rng(1);
    const RealMatrix m = oracle::random_matrix(10, 10, rng);
    EXPECT_LE(check_reconstruction(m, decompose_diff(m)).residual, 1e-9);
}

TEST(CheckDoublyStochastic, Cases) {
    EXPECT_EQ(check_doubly_stochastic<double>(RealMatrix::Identity(3, 3), 1e-8).residual, 0.0);
    const auto neg = check_doubly_stochastic<double>(mat2(-2, 3, 3, -2), 1e-8);
    EXPECT_EQ(neg.residual, 0.0);
    EXPECT_TRUE(neg.passed);
    const auto bad = check_doubly_stochastic<double>(mat2(0.5, 0.5, 0.5, 0.4), 1e-8);
    EXPECT_NEAR(bad.residual, 0.1, 1e-15);
    EXPECT_FALSE(bad.passed);
}

TEST(CheckRgaScaling, Cases) {
    const auto id = check_rga_scaling_invariance(RealMatrix::Identity(2, 2), Eigen::Vector2d(2, 3), Eigen::Vector2d(5, 7),
                                                 1e-10);
    EXPECT_LE(id.residual, 1e-15);
    const auto g = check_rga_scaling_invariance(mat2(1, 2, 3, 4), Eigen::Vector2d(10, 1), Eigen::Vector2d(1, 0.1), 1e-10);
    EXPECT_TRUE(g.passed) << g.residual;
    const auto unit = check_rga_scaling_invariance(mat2(1, 2, 3, 4), Eigen::Vector2d(1, 1), Eigen::Vector2d(1, 1), 1e-10);
    EXPECT_EQ(unit.residual, 0.0);
}

TEST(CheckOrthonormalConsistency, Cases) {
    const auto r = linalg::random_orthogonal(3, std::uint64_t{5});
    // Identity has a repeated spectrum, so the guard skips it.
    const auto id = check_orthonormal_consistency(RealMatrix::Identity(3, 3), r, 1e-8);
    EXPECT_TRUE(id.skipped);
    EXPECT_TRUE(id.passed);
    // f(I) = phi I commutes with conjugation even without the guard.
    const RealMatrix f_id = decompose_diff(RealMatrix::Identity(3, 3)).A();
    EXPECT_LE((r * f_id * r.transpose() - f_id).norm(), 1e-14);

    const RealMatrix d = Eigen::Vector3d(1, 2, 3).asDiagonal();
    const auto diag = check_orthonormal_consistency(d, r, 1e-8);
    EXPECT_FALSE(diag.skipped);
    EXPECT_TRUE(diag.passed) << diag.residual;

    const RealMatrix repeated = Eigen::Vector3d(2, 2, 1).asDiagonal();
    EXPECT_TRUE(check_orthonormal_consistency(repeated, r, 1e-8).skipped);
}

TEST(CheckSymmetricIdentities, GoldenRatioAndScalar) {
    const RealMatrix id = RealMatrix::Identity(2, 2);
    for (const auto& c : check_symmetric_identities(id, decompose_diff(id), 1e-9)) {
        EXPECT_TRUE(c.passed) << c.name << " " << c.residual;
    }
    const RealMatrix three = RealMatrix::Constant(1, 1, 3.0);
    const double e = oracle::difference_root(3.0);
    EXPECT_NEAR(3.0 * e, e * e - 1.0, 1e-13);
    for (const auto& c : check_symmetric_identities(three, decompose_diff(three), 1e-9)) {
        EXPECT_TRUE(c.passed) << c.name << " " << c.residual;
    }
    std::mt19937_64 rng(2);
    const RealMatrix m = oracle::random_matrix(5, 5, rng);
    const auto entries = check_symmetric_identities(m, decompose_diff(m), 1e-9);
    EXPECT_EQ(entries.size(), 5u);
    for (const auto& c : entries) EXPECT_TRUE(c.passed) << c.name << " " << c.residual;
}

// ---------------------------------------------------------------------------
// Suite
// ---------------------------------------------------------------------------

TEST(RunSuite, EmptySpecs) {
    EXPECT_TRUE(run_suite({}, all_variants).empty());
}

TEST(RunSuite, GaussianDiffHasAllChecks) {
    const std::vector<EnsembleSpec> specs{{.rows = 4, .cols = 4, .kind = EnsembleKind::gaussian, .seed = 8}};
    const std::vector<Variant> variants{Variant::DiffNonsingular};
    const auto reports = run_suite(specs, variants);
    ASSERT_EQ(reports.size(), 1u);
    const auto& r = reports[0];
    EXPECT_TRUE(r.passed());
    for (const char* name : {"reconstruction", "doubly_stochastic_A_o_B", "symmetric_identity_right_transpose",
                             "symmetric_identity_left_inverse", "psd_A_At", "orthonormal_consistency"}) {
        EXPECT_NE(find(r, name), nullptr) << name;
    }
    EXPECT_EQ(r.seed, 8u);
    EXPECT_EQ(r.input_digest.rfind("fnv1a64:", 0), 0u);
}

TEST(RunSuite, RankDeficientSkipsNonsingularVariants) {
    const std::vector<EnsembleSpec> specs{
        {.rows = 4, .cols = 4, .kind = EnsembleKind::rank_deficient, .rank = 2, .seed = 9}};
    const auto reports = run_suite(specs, all_variants);
    ASSERT_EQ(reports.size(), all_variants.size());
    for (const auto& r : reports) {
        EXPECT_TRUE(r.passed()) << variant_name(r.variant);
        const bool skipped = r.checks.size() == 1 && r.checks[0].skipped;
        const bool expect_skip = r.variant == Variant::SumScaled || r.variant == Variant::DiffNonsingular ||
                                 r.variant == Variant::DiffConjugate || r.variant == Variant::NonTransposeSum;
        if (expect_skip) {
            EXPECT_TRUE(skipped) << variant_name(r.variant);
        } else if (r.variant != Variant::NonTransposeDiff) {
            EXPECT_FALSE(skipped) << variant_name(r.variant);
        }
    }
}

TEST(RunSuite, AllVariantsOnVariousEnsembles) {
    const std::vector<EnsembleSpec> specs{
        {.rows = 5, .cols = 5, .kind = EnsembleKind::prescribed_spectrum, .condition_number = 1e3, .seed = 1, .count = 3},
        {.rows = 3, .cols = 6, .kind = EnsembleKind::gaussian, .seed = 2, .count = 2},
        {.rows = 4, .cols = 4, .kind = EnsembleKind::complex_gaussian, .seed = 3, .count = 2},
        {.rows = 3, .cols = 3, .kind = EnsembleKind::orthogonal, .seed = 4, .count = 2},
    };
    const auto reports = run_suite(specs, all_variants);
    EXPECT_EQ(reports.size(), (3u + 2u + 2u + 2u) * all_variants.size());
    for (const auto& r : reports) {
        for (const auto& c : r.checks) EXPECT_TRUE(c.passed) << variant_name(r.variant) << " " << c.name << " " << c.reason;
    }
}

TEST(RunSuite, IllConditionedNonTransposeSumIsReportedNotThrown) {
    // A picks up eigenvalues near 1/lambda(M/c), so cond(A) grows like cond(M)^2.
    const std::vector<EnsembleSpec> specs{
        {.rows = 5, .cols = 5, .kind = EnsembleKind::prescribed_spectrum, .condition_number = 1e8, .seed = 1}};
    const std::vector<Variant> variants{Variant::DiffNonsingular, Variant::NonTransposeSum};
    const auto reports = run_suite(specs, variants);
    ASSERT_EQ(reports.size(), 2u);
    EXPECT_TRUE(reports[0].passed());
    EXPECT_FALSE(reports[1].passed());
    ASSERT_NE(find(reports[1], "decompose"), nullptr);
}

TEST(RunSuite, BranchCutIsSkippedNotFailed) {
    const auto r = verify_matrix(AnyMatrix(mat2(0, -5, 5, 0)), Variant::NonTransposeDiff, 0);
    ASSERT_EQ(r.checks.size(), 1u);
    EXPECT_TRUE(r.checks[0].skipped);
    EXPECT_NE(r.checks[0].reason.find("5i"), std::string::npos);
}

TEST(RunSuite, DeterministicReports) {
    const std::vector<EnsembleSpec> specs{{.rows = 4, .cols = 4, .kind = EnsembleKind::gaussian, .seed = 21, .count = 2}};
    const auto a = run_suite(specs, all_variants);
    const auto b = run_suite(specs, all_variants);
    ASSERT_EQ(a.size(), b.size());
    for (std::size_t i = 0; i < a.size(); ++i) {
        EXPECT_EQ(a[i].input_digest, b[i].input_digest);
        ASSERT_EQ(a[i].checks.size(), b[i].checks.size());
        for (std::size_t k = 0; k < a[i].checks.size(); ++k) {
            EXPECT_EQ(a[i].checks[k].name, b[i].checks[k].name);
            EXPECT_EQ(a[i].checks[k].residual, b[i].checks[k].residual);
        }
    }
}

TEST(Digest, SensitiveToShapeAndKind) {
    const RealMatrix a = RealMatrix::Zero(2, 3);
    const RealMatrix b = RealMatrix::Zero(3, 2);
    EXPECT_NE(matrix_digest(a), matrix_digest(b));
    EXPECT_NE(matrix_digest(a), matrix_digest(ComplexMatrix(ComplexMatrix::Zero(2, 3))));
    EXPECT_EQ(matrix_digest(a), matrix_digest(RealMatrix(RealMatrix::Zero(2, 3))));
}

}  // namespace
}  // namespace tisplit::props
