#pragma once

// Dense matrix files: Matrix Market array format (real/integer/complex general)
// and CSV with one row per line. Complex CSV entries are written "a+bi" / "a-bi".
// Writers emit 17 significant digits so that values round-trip exactly.

#include "tisplit/errors.hpp"
#include "tisplit/linalg.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

namespace tisplit::io {

enum class MatrixFileFormat { matrix_market_array, csv };

/// ".mtx"/".mm" -> Matrix Market, ".csv" -> CSV.
inline MatrixFileFormat format_from_path(const std::filesystem::path& path) {
    std::string ext = path.extension().string();
    std::transform(ext.begin(), ext.end(), ext.begin(), [](unsigned char c) { return std::tolower(c); });
    if (ext == ".mtx" || ext == ".mm") return MatrixFileFormat::matrix_market_array;
    if (ext == ".csv") return MatrixFileFormat::csv;
    throw IoError("cannot infer matrix format from extension of '" + path.string() + "' (use .mtx or .csv)");
}

namespace detail {

inline std::string_view trim(std::string_view s) {
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
    return s;
}

inline bool parse_double(std::string_view tok, double& out) {
    if (!tok.empty() && tok.front() == '+') tok.remove_prefix(1);
    if (tok.empty()) return false;
    const char* end = tok.data() + tok.size();
    auto [ptr, ec] = std::from_chars(tok.data(), end, out);
    return ec == std::errc() && ptr == end && std::isfinite(out);
}

/// "a", "a+bi", "a-bi", "bi", "i", "-i".
inline bool parse_complex(std::string_view tok, Complex& out) {
    if (tok.empty() || tok.back() != 'i') {
        double re = 0.0;
        if (!parse_double(tok, re)) return false;
        out = Complex(re, 0.0);
        return true;
    }
    tok.remove_suffix(1);
    std::size_t split = std::string_view::npos;
    for (std::size_t k = tok.size(); k-- > 1;) {
        if ((tok[k] == '+' || tok[k] == '-') && tok[k - 1] != 'e' && tok[k - 1] != 'E') {
            split = k;
            break;
        }
    }
    std::string_view re_tok = split == std::string_view::npos ? std::string_view{} : tok.substr(0, split);
    std::string_view im_tok = split == std::string_view::npos ? tok : tok.substr(split);
    double re = 0.0;
    double im = 0.0;
    if (!re_tok.empty() && !parse_double(re_tok, re)) return false;
    if (im_tok.empty() || im_tok == "+") {
        im = 1.0;
    } else if (im_tok == "-") {
        im = -1.0;
    } else if (!parse_double(im_tok, im)) {
        return false;
    }
    out = Complex(re, im);
    return true;
}

inline std::string format_double(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

inline std::string format_complex_token(Complex z) {
    return format_double(z.real()) + (std::signbit(z.imag()) ? "-" : "+") + format_double(std::abs(z.imag())) + "i";
}

inline std::string lower(std::string_view s) {
    std::string out(s);
    std::transform(out.begin(), out.end(), out.begin(), [](unsigned char c) { return std::tolower(c); });
    return out;
}

inline std::vector<std::string> split_lines(const std::string& text) {
    std::vector<std::string> lines;
    std::istringstream in(text);
    std::string line;
    while (std::getline(in, line)) {
        if (!line.empty() && line.back() == '\r') line.pop_back();
        lines.push_back(std::move(line));
    }
    return lines;
}

}  // namespace detail

inline AnyMatrix parse_matrix_market(const std::string& text) {
    const auto lines = detail::split_lines(text);
    if (lines.empty() || detail::trim(lines.front()).empty()) throw IoError("empty Matrix Market file", 1);

    std::istringstream banner(lines.front());
    std::string tag, object, layout, field, symmetry;
    banner >> tag >> object >> layout >> field >> symmetry;
    if (detail::lower(tag) != "%%matrixmarket") throw IoError("missing %%MatrixMarket banner", 1, 1);
    if (detail::lower(object) != "matrix") throw IoError("unsupported object '" + object + "'", 1);
    if (detail::lower(layout) != "array") {
        throw IoError("unsupported layout '" + layout + "' (only dense 'array' is supported)", 1);
    }
    field = detail::lower(field);
    if (field != "real" && field != "integer" && field != "double" && field != "complex") {
        throw IoError("unsupported field '" + field + "'", 1);
    }
    if (detail::lower(symmetry) != "general") {
        throw IoError("unsupported symmetry '" + symmetry + "' (only 'general' is supported)", 1);
    }
    const bool complex = field == "complex";

    // Remaining tokens with their positions, skipping comments and blank lines.
    struct Token {
        std::string_view text;
        std::size_t line;
        std::size_t column;
    };
    std::vector<Token> tokens;
    for (std::size_t li = 1; li < lines.size(); ++li) {
        const std::string& line = lines[li];
        const auto first = line.find_first_not_of(" \t");
        if (first == std::string::npos || line[first] == '%') continue;
        std::size_t pos = 0;
        while (pos < line.size()) {
            while (pos < line.size() && std::isspace(static_cast<unsigned char>(line[pos]))) ++pos;
            if (pos >= line.size()) break;
            const std::size_t start = pos;
            while (pos < line.size() && !std::isspace(static_cast<unsigned char>(line[pos]))) ++pos;
            tokens.push_back({std::string_view(line).substr(start, pos - start), li + 1, start + 1});
        }
    }
    if (tokens.size() < 2) throw IoError("missing size line", lines.size());

    auto parse_dim = [](const Token& t) {
        Index value = 0;
        auto [ptr, ec] = std::from_chars(t.text.data(), t.text.data() + t.text.size(), value);
        if (ec != std::errc() || ptr != t.text.data() + t.text.size() || value < 1) {
            throw IoError("invalid dimension '" + std::string(t.text) + "'", t.line, t.column);
        }
        return value;
    };
    const Index m = parse_dim(tokens[0]);
    const Index n = parse_dim(tokens[1]);
    if (tokens[0].line != tokens[1].line) throw IoError("size line must hold rows and columns", tokens[0].line);

    const std::size_t per_entry = complex ? 2 : 1;
    const std::size_t expected = static_cast<std::size_t>(m * n) * per_entry;
    const std::size_t available = tokens.size() - 2;
    if (available != expected) {
        const std::size_t where = available < expected ? lines.size() : tokens[2 + expected].line;
        throw IoError("expected " + std::to_string(expected) + " values, found " + std::to_string(available), where);
    }

    auto value_at = [&](std::size_t k) {
        const Token& t = tokens[2 + k];
        double v = 0.0;
        if (!detail::parse_double(t.text, v)) {
            throw IoError("non-numeric or non-finite value '" + std::string(t.text) + "'", t.line, t.column);
        }
        return v;
    };
    if (complex) {
        ComplexMatrix out(m, n);
        for (Index j = 0, k = 0; j < n; ++j)
            for (Index i = 0; i < m; ++i, k += 2) {
                out(i, j) = Complex(value_at(static_cast<std::size_t>(k)), value_at(static_cast<std::size_t>(k + 1)));
            }
        return out;
    }
    RealMatrix out(m, n);
    for (Index j = 0, k = 0; j < n; ++j)
        for (Index i = 0; i < m; ++i, ++k) out(i, j) = value_at(static_cast<std::size_t>(k));
    return out;
}

inline AnyMatrix parse_csv(const std::string& text) {
    auto lines = detail::split_lines(text);
    while (!lines.empty() && detail::trim(lines.back()).empty()) lines.pop_back();
    if (lines.empty()) throw IoError("empty CSV file", 1);

    std::vector<std::vector<Complex>> rows;
    bool any_complex = false;
    std::size_t width = 0;
    for (std::size_t li = 0; li < lines.size(); ++li) {
        const std::string& line = lines[li];
        if (detail::trim(line).empty()) throw IoError("blank line inside matrix", li + 1);
        std::vector<Complex> row;
        std::size_t start = 0;
        while (true) {
            const std::size_t comma = line.find(',', start);
            const std::size_t stop = comma == std::string::npos ? line.size() : comma;
            const std::string_view raw = std::string_view(line).substr(start, stop - start);
            const std::string_view tok = detail::trim(raw);
            Complex z;
            if (!detail::parse_complex(tok, z)) {
                throw IoError("non-numeric value '" + std::string(tok) + "'", li + 1, start + 1);
            }
            any_complex = any_complex || (!tok.empty() && tok.back() == 'i');
            row.push_back(z);
            if (comma == std::string::npos) break;
            start = comma + 1;
        }
        if (li == 0) {
            width = row.size();
        } else if (row.size() != width) {
            throw IoError("ragged row: " + std::to_string(row.size()) + " values, expected " + std::to_string(width),
                          li + 1);
        }
        rows.push_back(std::move(row));
    }

    const auto m = static_cast<Index>(rows.size());
    const auto n = static_cast<Index>(width);
    if (any_complex) {
        ComplexMatrix out(m, n);
        for (Index i = 0; i < m; ++i)
            for (Index j = 0; j < n; ++j) out(i, j) = rows[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)];
        return out;
    }
    RealMatrix out(m, n);
    for (Index i = 0; i < m; ++i)
        for (Index j = 0; j < n; ++j) out(i, j) = rows[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)].real();
    return out;
}

inline AnyMatrix parse_matrix(const std::string& text, MatrixFileFormat format) {
    return format == MatrixFileFormat::csv ? parse_csv(text) : parse_matrix_market(text);
}

template <MatrixScalar S>
std::string format_matrix_market(const Matrix<S>& m) {
    std::string out = is_complex_v<S> ? "%%MatrixMarket matrix array complex general\n"
                                      : "%%MatrixMarket matrix array real general\n";
    out += std::to_string(m.rows()) + " " + std::to_string(m.cols()) + "\n";
    for (Index j = 0; j < m.cols(); ++j)
        for (Index i = 0; i < m.rows(); ++i) {
            if constexpr (is_complex_v<S>) {
                out += detail::format_double(m(i, j).real()) + " " + detail::format_double(m(i, j).imag()) + "\n";
            } else {
                out += detail::format_double(m(i, j)) + "\n";
            }
        }
    return out;
}

template <MatrixScalar S>
std::string format_csv(const Matrix<S>& m) {
    std::string out;
    for (Index i = 0; i < m.rows(); ++i) {
        for (Index j = 0; j < m.cols(); ++j) {
            if (j) out += ',';
            if constexpr (is_complex_v<S>) {
                out += detail::format_complex_token(m(i, j));
            } else {
                out += detail::format_double(m(i, j));
            }
        }
        out += '\n';
    }
    return out;
}

inline std::string format_matrix(const AnyMatrix& m, MatrixFileFormat format) {
    return std::visit(
        [&](const auto& x) { return format == MatrixFileFormat::csv ? format_csv(x) : format_matrix_market(x); }, m);
}

inline std::string read_text_file(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoError("cannot open '" + path.string() + "' for reading");
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

inline void write_text_file(const std::filesystem::path& path, const std::string& text) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw IoError("cannot open '" + path.string() + "' for writing");
    out << text;
    out.flush();
    if (!out) throw IoError("failed writing '" + path.string() + "'");
}

inline AnyMatrix read_matrix(const std::filesystem::path& path, MatrixFileFormat format) {
    return parse_matrix(read_text_file(path), format);
}

inline AnyMatrix read_matrix(const std::filesystem::path& path) { return read_matrix(path, format_from_path(path)); }

inline void write_matrix(const AnyMatrix& m, const std::filesystem::path& path, MatrixFileFormat format) {
    write_text_file(path, format_matrix(m, format));
}

inline void write_matrix(const AnyMatrix& m, const std::filesystem::path& path) {
    write_matrix(m, path, format_from_path(path));
}

}  // namespace tisplit::io
