#pragma once

#include "tisplit/errors.hpp"

#include <array>
#include <optional>
#include <string>
#include <string_view>

namespace tisplit {

enum class Variant {
    DiffNonsingular,    ///< M = A - A^{-T}
    DiffPseudoinverse,  ///< M = A - (A^+)^T, any shape
    DiffUnitFill,       ///< M = A - A^{-T} with zero singular values filled by 1
    DiffConjugate,      ///< M = A - (A^{-1})^H, complex
    SumScaled,          ///< M = c (A + A^{-T})
    NonTransposeDiff,   ///< M = A - A^{-1}
    NonTransposeSum,    ///< M = c (A + A^{-1})
};

inline constexpr std::array<Variant, 7> all_variants = {
    Variant::DiffNonsingular, Variant::DiffPseudoinverse, Variant::DiffUnitFill, Variant::DiffConjugate,
    Variant::SumScaled,       Variant::NonTransposeDiff,  Variant::NonTransposeSum,
};

inline constexpr std::string_view variant_name(Variant v) {
    switch (v) {
        case Variant::DiffNonsingular: return "DiffNonsingular";
        case Variant::DiffPseudoinverse: return "DiffPseudoinverse";
        case Variant::DiffUnitFill: return "DiffUnitFill";
        case Variant::DiffConjugate: return "DiffConjugate";
        case Variant::SumScaled: return "SumScaled";
        case Variant::NonTransposeDiff: return "NonTransposeDiff";
        case Variant::NonTransposeSum: return "NonTransposeSum";
    }
    return "?";
}

/// Command-line spelling.
inline constexpr std::string_view variant_flag(Variant v) {
    switch (v) {
        case Variant::DiffNonsingular: return "diff";
        case Variant::DiffPseudoinverse: return "diff-pinv";
        case Variant::DiffUnitFill: return "diff-unitfill";
        case Variant::DiffConjugate: return "diff-complex";
        case Variant::SumScaled: return "sum";
        case Variant::NonTransposeDiff: return "nt-diff";
        case Variant::NonTransposeSum: return "nt-sum";
    }
    return "?";
}

/// Accepts either the canonical name or the command-line spelling.
inline std::optional<Variant> parse_variant(std::string_view text) {
    for (Variant v : all_variants) {
        if (text == variant_name(v) || text == variant_flag(v)) return v;
    }
    return std::nullopt;
}

inline constexpr bool is_sum_variant(Variant v) {
    return v == Variant::SumScaled || v == Variant::NonTransposeSum;
}

}  // namespace tisplit
