// tisplit command-line front end: decompose, verify, rga, generate, info.
//
// Exit codes: 0 success, 1 usage or input-file error, 2 numeric failure,
// 3 precondition / branch-cut violation. Diagnostics go to stderr.

#include "tisplit/tisplit.hpp"

#include <CLI11.hpp>

#include <cstdio>
#include <filesystem>
#include <iostream>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

namespace {

using namespace tisplit;

enum ExitCode { kOk = 0, kUsage = 1, kNumeric = 2, kPrecondition = 3 };

class UsageError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

struct CommonOptions {
    double tol_rank = Tolerances{}.rank_rel_tol;
    double tol_residual = Tolerances{}.residual_rel_tol;
    double tol_sqrt_margin = Tolerances{}.sqrt_axis_margin;
    std::string format;  // empty: infer from extension

    Tolerances tolerances() const {
        Tolerances t{tol_rank, tol_residual, tol_sqrt_margin};
        try {
            t.validate();
        } catch (const PreconditionError& e) {
            throw UsageError(e.what());
        }
        return t;
    }

    io::MatrixFileFormat format_for(const std::filesystem::path& path) const {
        if (format == "csv") return io::MatrixFileFormat::csv;
        if (format == "mtx") return io::MatrixFileFormat::matrix_market_array;
        return io::format_from_path(path);
    }
};

void add_common(CLI::App* cmd, CommonOptions& opts) {
    cmd->add_option("--tol-rank", opts.tol_rank, "relative rank tolerance")->capture_default_str();
    cmd->add_option("--tol-residual", opts.tol_residual, "relative residual tolerance")->capture_default_str();
    cmd->add_option("--tol-sqrt-margin", opts.tol_sqrt_margin, "square-root branch-cut margin")->capture_default_str();
    cmd->add_option("--format", opts.format, "matrix file format (default: from extension)")
        ->check(CLI::IsMember({"csv", "mtx"}));
}

std::string format_number(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

const RealMatrix& require_real(const AnyMatrix& m, Variant v) {
    if (const auto* r = std::get_if<RealMatrix>(&m)) return *r;
    throw PreconditionError(std::string(variant_flag(v)) + " requires a real matrix; use diff-complex for complex input");
}

struct DecomposeArgs {
    std::string input;
    std::string output;
    std::string variant;
    std::optional<double> scale;
    std::string report;
    std::uint64_t seed = 0;
};

int run_decompose(const DecomposeArgs& args, const CommonOptions& common) {
    const auto variant = parse_variant(args.variant);
    if (!variant) throw UsageError("unknown variant '" + args.variant + "'");
    if (args.scale && *variant != Variant::NonTransposeSum) {
        throw UsageError("--scale is only valid with --variant nt-sum");
    }
    const Tolerances tol = common.tolerances();
    const AnyMatrix input = io::read_matrix(args.input, common.format_for(args.input));

    props::VerificationReport report{*variant, args.seed, props::matrix_digest(input), {}};
    AnyMatrix a;
    std::optional<double> c;
    if (*variant == Variant::DiffConjugate) {
        const ComplexMatrix m = to_complex(input);
        const auto dec = decompose_diff_complex(m, tol);
        report.checks.push_back(props::check_reconstruction(m, dec, tol));
        a = dec.A();
    } else {
        const RealMatrix& m = require_real(input, *variant);
        auto finish = [&](const Decomposition<double>& dec) {
            report.checks.push_back(props::check_reconstruction(m, dec, tol));
            if (is_sum_variant(dec.variant())) c = dec.scale_c();
            a = dec.A();
        };
        switch (*variant) {
            case Variant::DiffNonsingular: finish(decompose_diff(m, tol)); break;
            case Variant::DiffPseudoinverse: finish(decompose_diff_pinv(m, tol)); break;
            case Variant::DiffUnitFill: finish(decompose_diff_unitfill(m, tol)); break;
            case Variant::SumScaled: finish(decompose_sum(m, std::nullopt, tol)); break;
            case Variant::NonTransposeDiff: finish(decompose_nontranspose_diff(m, tol)); break;
            case Variant::NonTransposeSum: finish(decompose_nontranspose_sum(m, args.scale, tol)); break;
            case Variant::DiffConjugate: break;
        }
    }

    io::write_matrix(a, args.output, common.format_for(args.output));
    if (c) std::cout << "c = " << format_number(*c) << "\n";
    if (!args.report.empty()) {
        const std::vector<props::VerificationReport> reports{report};
        io::write_report(reports, args.report);
    }
    return report.passed() ? kOk : kNumeric;
}

struct VerifyArgs {
    std::string input;
    std::string variants = "all";
    std::uint64_t seed = 0;
    std::string report;
};

std::vector<Variant> parse_variant_list(const std::string& text) {
    if (text == "all") return {all_variants.begin(), all_variants.end()};
    std::vector<Variant> out;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) {
        const auto v = parse_variant(item);
        if (!v) throw UsageError("unknown variant '" + item + "'");
        out.push_back(*v);
    }
    if (out.empty()) throw UsageError("no variants given");
    return out;
}

int run_verify(const VerifyArgs& args, const CommonOptions& common) {
    const auto variants = parse_variant_list(args.variants);
    const Tolerances tol = common.tolerances();
    const AnyMatrix input = io::read_matrix(args.input, common.format_for(args.input));

    std::vector<props::VerificationReport> reports;
    bool ok = true;
    for (Variant v : variants) {
        reports.push_back(props::verify_matrix(input, v, args.seed, tol, args.seed));
        ok = ok && reports.back().passed();
    }
    if (args.report.empty()) {
        std::cout << io::format_reports(reports);
    } else {
        io::write_report(reports, args.report);
    }
    for (const auto& r : reports)
        for (const auto& c : r.checks)
            if (!c.passed) {
                std::cerr << variant_name(r.variant) << ": check '" << c.name << "' failed (residual " << c.residual
                          << ", tolerance " << c.tolerance << ")" << (c.reason.empty() ? "" : ": " + c.reason)
                          << "\n";
            }
    return ok ? kOk : kNumeric;
}

int run_rga(const std::string& input, const std::string& output, const CommonOptions& common) {
    const Tolerances tol = common.tolerances();
    const AnyMatrix g = io::read_matrix(input, common.format_for(input));
    const AnyMatrix p = std::visit([&](const auto& x) -> AnyMatrix { return rga(x, tol); }, g);
    io::write_matrix(p, output, common.format_for(output));
    return kOk;
}

struct GenerateArgs {
    Index rows = 0;
    Index cols = 0;
    std::string kind;
    std::optional<double> cond;
    std::optional<Index> rank;
    std::uint64_t seed = 0;
    Index count = 1;
    std::string output_dir;
};

int run_generate(const GenerateArgs& args, const CommonOptions& common) {
    static const std::map<std::string, props::EnsembleKind> kinds = {
        {"gaussian", props::EnsembleKind::gaussian},
        {"spectrum", props::EnsembleKind::prescribed_spectrum},
        {"orthogonal", props::EnsembleKind::orthogonal},
        {"rankdef", props::EnsembleKind::rank_deficient},
        {"complex", props::EnsembleKind::complex_gaussian},
    };
    props::EnsembleSpec spec;
    spec.rows = args.rows;
    spec.cols = args.cols;
    spec.kind = kinds.at(args.kind);
    spec.condition_number = args.cond;
    spec.rank = args.rank;
    spec.seed = args.seed;
    spec.count = args.count;
    const auto members = props::generate_ensemble(spec);

    const std::filesystem::path dir(args.output_dir);
    std::filesystem::create_directories(dir);
    const auto format = common.format == "csv" ? io::MatrixFileFormat::csv : io::MatrixFileFormat::matrix_market_array;
    const char* ext = format == io::MatrixFileFormat::csv ? ".csv" : ".mtx";
    for (std::size_t i = 0; i < members.size(); ++i) {
        char name[128];
        std::snprintf(name, sizeof(name), "%s_%lldx%lld_seed%llu_%04zu%s", args.kind.c_str(),
                      static_cast<long long>(args.rows), static_cast<long long>(args.cols),
                      static_cast<unsigned long long>(args.seed), i, ext);
        io::write_matrix(members[i], dir / name, format);
        std::cout << (dir / name).string() << "\n";
    }
    return kOk;
}

int run_info(const std::string& input, const CommonOptions& common) {
    const Tolerances tol = common.tolerances();
    const AnyMatrix m = io::read_matrix(input, common.format_for(input));
    const auto [rank, smin, smax] = std::visit(
        [&](const auto& x) {
            const auto f = linalg::compute_svd(x, tol);
            return std::tuple{f.rank(), f.sigma_min(), f.sigma_max()};
        },
        m);
    const Index k = std::min(rows(m), cols(m));
    std::cout << "rows: " << rows(m) << "\n"
              << "cols: " << cols(m) << "\n"
              << "scalar: " << (is_complex(m) ? "complex" : "real") << "\n"
              << "effective_rank: " << rank << "\n"
              << "sigma_max: " << format_number(smax) << "\n"
              << "sigma_min: " << format_number(smin) << "\n"
              << "condition_number: " << (rank < k ? std::string("inf") : format_number(smax / smin)) << "\n";
    return kOk;
}

int run(int argc, char** argv) {
    CLI::App app{"Decompose matrices as M = A - A^{-T} and related forms, and verify their properties"};
    app.require_subcommand(1);
    CommonOptions common;

    DecomposeArgs dec;
    auto* decompose = app.add_subcommand("decompose", "decompose a matrix and write the factor A");
    decompose->add_option("--input", dec.input, "input matrix file")->required();
    decompose->add_option("--variant", dec.variant, "diff|diff-pinv|diff-unitfill|diff-complex|sum|nt-diff|nt-sum")
        ->required();
    decompose->add_option("--scale", dec.scale, "scale constant c (nt-sum only)");
    decompose->add_option("--output", dec.output, "output file for A")->required();
    decompose->add_option("--report", dec.report, "write a JSON verification report");
    decompose->add_option("--seed", dec.seed, "seed recorded in the report");
    add_common(decompose, common);

    VerifyArgs ver;
    auto* verify = app.add_subcommand("verify", "run every applicable property check on a matrix");
    verify->add_option("--input", ver.input, "input matrix file")->required();
    verify->add_option("--variants", ver.variants, "'all' or a comma-separated variant list")->capture_default_str();
    verify->add_option("--seed", ver.seed, "seed for randomized checks")->capture_default_str();
    verify->add_option("--report", ver.report, "write the JSON report here instead of stdout");
    add_common(verify, common);

    std::string rga_in, rga_out;
    auto* rga_cmd = app.add_subcommand("rga", "relative gain array G o G^{-T}");
    rga_cmd->add_option("--input", rga_in, "input matrix file")->required();
    rga_cmd->add_option("--output", rga_out, "output matrix file")->required();
    add_common(rga_cmd, common);

    GenerateArgs gen;
    auto* generate = app.add_subcommand("generate", "write a reproducible ensemble of random matrices");
    generate->add_option("--rows", gen.rows)->required()->check(CLI::PositiveNumber);
    generate->add_option("--cols", gen.cols)->required()->check(CLI::PositiveNumber);
    generate->add_option("--kind", gen.kind)
        ->required()
        ->check(CLI::IsMember({"gaussian", "spectrum", "orthogonal", "rankdef", "complex"}));
    generate->add_option("--cond", gen.cond, "condition number (spectrum)");
    generate->add_option("--rank", gen.rank, "rank (rankdef)");
    generate->add_option("--seed", gen.seed)->capture_default_str();
    generate->add_option("--count", gen.count)->capture_default_str()->check(CLI::PositiveNumber);
    generate->add_option("--output-dir", gen.output_dir)->required();
    add_common(generate, common);

    std::string info_in;
    auto* info = app.add_subcommand("info", "dimensions, rank and singular value extremes");
    info->add_option("--input", info_in, "input matrix file")->required();
    add_common(info, common);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? kOk : kUsage;
    }

    try {
        if (*decompose) return run_decompose(dec, common);
        if (*verify) return run_verify(ver, common);
        if (*rga_cmd) return run_rga(rga_in, rga_out, common);
        if (*generate) return run_generate(gen, common);
        if (*info) return run_info(info_in, common);
    } catch (const UsageError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kUsage;
    } catch (const IoError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kUsage;
    } catch (const PreconditionError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kPrecondition;
    } catch (const NumericError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kNumeric;
    } catch (const std::filesystem::filesystem_error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kUsage;
    }
    return kUsage;
}

}  // namespace

int main(int argc, char** argv) { return run(argc, argv); }
