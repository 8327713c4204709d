// io.hpp
//
// Deterministic artifact writers: CSV at full round-trip precision and
// minimal static SVG line plots. No timestamps, locales, or other
// run-varying content — identical inputs produce identical bytes.

#pragma once

#include <complex>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <stdexcept>
#include <string>
#include <vector>

namespace whichpath::io {

using complex = std::complex<double>;

/// Shortest decimal form that round-trips a double (17 significant
/// digits, '.' separator, no locale).
inline std::string fmt_full(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

/// Compact form for presentational output (SVG coordinates).
inline std::string fmt_short(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.6g", v);
    return buf;
}

/// Write content to path as-is (binary stream, LF endings are the
/// caller's). Throws std::runtime_error naming the path on failure.
inline void write_text(const std::filesystem::path& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot open for writing: " + path.string());
    out << content;
    if (!out) throw std::runtime_error("write failed: " + path.string());
}

/// Screen profile CSV: x, intensity, ex_re, ex_im, ey_re, ey_im.
inline std::string profile_csv(const std::vector<double>& x,
                               const std::vector<double>& intensity,
                               const std::vector<complex>& ex,
                               const std::vector<complex>& ey) {
    const std::size_t n = x.size();
    if (intensity.size() != n || ex.size() != n || ey.size() != n)
        throw std::invalid_argument("profile_csv: column length mismatch");
    std::string out = "x,intensity,ex_re,ex_im,ey_re,ey_im\n";
    for (std::size_t j = 0; j < n; ++j) {
        out += fmt_full(x[j]);
        out += ',';
        out += fmt_full(intensity[j]);
        out += ',';
        out += fmt_full(ex[j].real());
        out += ',';
        out += fmt_full(ex[j].imag());
        out += ',';
        out += fmt_full(ey[j].real());
        out += ',';
        out += fmt_full(ey[j].imag());
        out += '\n';
    }
    return out;
}

/// Generic two-or-more-column CSV from a header and row-major values.
inline std::string table_csv(const std::vector<std::string>& header,
                             const std::vector<std::vector<double>>& rows) {
    std::string out;
    for (std::size_t c = 0; c < header.size(); ++c) {
        if (c) out += ',';
        out += header[c];
    }
    out += '\n';
    for (const auto& row : rows) {
        if (row.size() != header.size())
            throw std::invalid_argument("table_csv: row width mismatch");
        for (std::size_t c = 0; c < row.size(); ++c) {
            if (c) out += ',';
            out += fmt_full(row[c]);
        }
        out += '\n';
    }
    return out;
}

/// Single-series SVG line plot with axis labels. Purely presentational;
/// static markup only.
inline std::string line_svg(const std::vector<double>& xs, const std::vector<double>& ys,
                            const std::string& title, const std::string& x_label,
                            const std::string& y_label) {
    if (xs.size() != ys.size() || xs.size() < 2)
        throw std::invalid_argument("line_svg: need matching series of length >= 2");

    const double width = 800.0, height = 500.0, margin = 60.0;
    double x_min = xs[0], x_max = xs[0], y_min = ys[0], y_max = ys[0];
    for (std::size_t j = 1; j < xs.size(); ++j) {
        x_min = std::min(x_min, xs[j]);
        x_max = std::max(x_max, xs[j]);
        y_min = std::min(y_min, ys[j]);
        y_max = std::max(y_max, ys[j]);
    }
    if (x_max == x_min) x_max = x_min + 1.0;
    if (y_max == y_min) y_max = y_min + 1.0;

    const auto px = [&](double x) {
        return margin + (x - x_min) / (x_max - x_min) * (width - 2.0 * margin);
    };
    const auto py = [&](double y) {
        return height - margin - (y - y_min) / (y_max - y_min) * (height - 2.0 * margin);
    };

    std::string svg;
    svg += "<svg xmlns=\"http://www.w3.org/2000/svg\" viewBox=\"0 0 800 500\">\n";
    svg += "<rect width=\"800\" height=\"500\" fill=\"white\"/>\n";
    svg += "<text x=\"400\" y=\"30\" text-anchor=\"middle\" font-size=\"18\" "
           "font-family=\"sans-serif\">" + title + "</text>\n";
    svg += "<line x1=\"60\" y1=\"440\" x2=\"740\" y2=\"440\" stroke=\"black\"/>\n";
    svg += "<line x1=\"60\" y1=\"60\" x2=\"60\" y2=\"440\" stroke=\"black\"/>\n";
    svg += "<text x=\"400\" y=\"480\" text-anchor=\"middle\" font-size=\"14\" "
           "font-family=\"sans-serif\">" + x_label + "</text>\n";
    svg += "<text x=\"20\" y=\"250\" text-anchor=\"middle\" font-size=\"14\" "
           "font-family=\"sans-serif\" transform=\"rotate(-90 20 250)\">" +
           y_label + "</text>\n";
    svg += "<text x=\"60\" y=\"455\" text-anchor=\"middle\" font-size=\"11\" "
           "font-family=\"sans-serif\">" + fmt_short(x_min) + "</text>\n";
    svg += "<text x=\"740\" y=\"455\" text-anchor=\"middle\" font-size=\"11\" "
           "font-family=\"sans-serif\">" + fmt_short(x_max) + "</text>\n";
    svg += "<text x=\"55\" y=\"444\" text-anchor=\"end\" font-size=\"11\" "
           "font-family=\"sans-serif\">" + fmt_short(y_min) + "</text>\n";
    svg += "<text x=\"55\" y=\"64\" text-anchor=\"end\" font-size=\"11\" "
           "font-family=\"sans-serif\">" + fmt_short(y_max) + "</text>\n";

    svg += "<polyline fill=\"none\" stroke=\"#1f6fb2\" stroke-width=\"1.5\" points=\"";
    for (std::size_t j = 0; j < xs.size(); ++j) {
        if (j) svg += ' ';
        svg += fmt_short(px(xs[j]));
        svg += ',';
        svg += fmt_short(py(ys[j]));
    }
    svg += "\"/>\n</svg>\n";
    return svg;
}

}  // namespace whichpath::io
