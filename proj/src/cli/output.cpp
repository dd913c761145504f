#include "agetime/cli/output.hpp"

#include <openssl/evp.h>

#include <algorithm>
#include <array>
#include <charconv>
#include <cmath>
#include <fstream>
#include <stdexcept>

#include <json.hpp>

namespace agetime::cli {

std::string format_double(double x)
{
    if (std::isnan(x)) {
        return "nan";
    }
    if (std::isinf(x)) {
        return x > 0 ? "inf" : "-inf";
    }
    std::array<char, 32> buf{};
    const auto [end, ec] = std::to_chars(buf.data(), buf.data() + buf.size(), x);
    if (ec != std::errc()) {
        throw std::runtime_error("format_double: conversion failed");
    }
    return std::string(buf.data(), end);
}

std::string sha256_hex(const std::string& content)
{
    std::array<unsigned char, EVP_MAX_MD_SIZE> digest{};
    unsigned int length = 0;
    if (EVP_Digest(content.data(), content.size(), digest.data(), &length, EVP_sha256(), nullptr) != 1) {
        throw std::runtime_error("sha256: digest failed");
    }
    static constexpr char hex[] = "0123456789abcdef";
    std::string out;
    out.reserve(2 * length);
    for (unsigned int i = 0; i < length; ++i) {
        out.push_back(hex[digest[i] >> 4]);
        out.push_back(hex[digest[i] & 0xf]);
    }
    return out;
}

void write_file_atomic(const std::filesystem::path& path, const std::string& content)
{
    std::filesystem::path tmp = path;
    tmp += ".tmp";
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out) {
            throw std::runtime_error("cannot write " + tmp.string());
        }
        out.write(content.data(), static_cast<std::streamsize>(content.size()));
        out.flush();
        if (!out) {
            throw std::runtime_error("write failed for " + tmp.string());
        }
    }
    std::filesystem::rename(tmp, path);
}

void Table::add_row(std::vector<std::string> row)
{
    if (row.size() != columns.size()) {
        throw std::logic_error("table row width does not match header");
    }
    rows.push_back(std::move(row));
}

std::string render_csv(const Table& table)
{
    std::string out;
    const auto line = [&out](const std::vector<std::string>& cells) {
        for (std::size_t i = 0; i < cells.size(); ++i) {
            if (i > 0) {
                out += ',';
            }
            out += cells[i];
        }
        out += '\n';
    };
    line(table.columns);
    for (const auto& row : table.rows) {
        line(row);
    }
    return out;
}

// Cells stay as the CSV strings so both formats carry identical digits.
std::string render_json(const Table& table)
{
    nlohmann::json doc;
    doc["columns"] = table.columns;
    doc["rows"] = nlohmann::json::array();
    for (const auto& row : table.rows) {
        doc["rows"].push_back(row);
    }
    return doc.dump(1) + "\n";
}

namespace {

std::string escape_xml(const std::string& s)
{
    std::string out;
    for (char c : s) {
        switch (c) {
        case '&': out += "&amp;"; break;
        case '<': out += "&lt;"; break;
        case '>': out += "&gt;"; break;
        case '"': out += "&quot;"; break;
        default: out += c;
        }
    }
    return out;
}

std::string fixed(double x)
{
    std::array<char, 32> buf{};
    const auto [end, ec] = std::to_chars(buf.data(), buf.data() + buf.size(), x, std::chars_format::fixed, 2);
    return ec == std::errc() ? std::string(buf.data(), end) : "0";
}

std::string tick(double x)
{
    std::array<char, 32> buf{};
    const auto [end, ec] = std::to_chars(buf.data(), buf.data() + buf.size(), x, std::chars_format::general, 4);
    return ec == std::errc() ? std::string(buf.data(), end) : "?";
}

constexpr std::array<const char*, 4> kColors{"#1f77b4", "#d62728", "#2ca02c", "#9467bd"};

}  // namespace

std::string render_svg(const std::string& title, const std::string& x_label, const std::string& y_label,
                       const std::vector<double>& x, const std::vector<PlotSeries>& series, bool log_y)
{
    constexpr double width = 640, height = 400;
    constexpr double left = 70, right = 20, top = 40, bottom = 50;
    const double pw = width - left - right;
    const double ph = height - top - bottom;

    const auto ty = [log_y](double y) { return log_y ? std::log10(y) : y; };
    const auto usable = [log_y](double y) { return std::isfinite(y) && (!log_y || y > 0.0); };

    double xmin = INFINITY, xmax = -INFINITY, ymin = INFINITY, ymax = -INFINITY;
    for (double v : x) {
        if (std::isfinite(v)) {
            xmin = std::min(xmin, v);
            xmax = std::max(xmax, v);
        }
    }
    for (const auto& s : series) {
        for (std::size_t i = 0; i < s.y.size() && i < x.size(); ++i) {
            if (usable(s.y[i])) {
                ymin = std::min(ymin, ty(s.y[i]));
                ymax = std::max(ymax, ty(s.y[i]));
            }
        }
    }
    if (!(xmax > xmin)) {
        xmin = std::isfinite(xmin) ? xmin - 1 : 0;
        xmax = xmin + 2;
    }
    if (!(ymax > ymin)) {
        ymin = std::isfinite(ymin) ? ymin - 1 : 0;
        ymax = ymin + 2;
    }
    const auto px = [&](double v) { return left + (v - xmin) / (xmax - xmin) * pw; };
    const auto py = [&](double v) { return top + ph - (v - ymin) / (ymax - ymin) * ph; };

    std::string svg;
    svg += "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"640\" height=\"400\" viewBox=\"0 0 640 400\">\n";
    svg += "<rect width=\"640\" height=\"400\" fill=\"white\"/>\n";
    svg += "<text x=\"320\" y=\"24\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"15\">" +
           escape_xml(title) + "</text>\n";
    svg += "<rect x=\"" + fixed(left) + "\" y=\"" + fixed(top) + "\" width=\"" + fixed(pw) + "\" height=\"" +
           fixed(ph) + "\" fill=\"none\" stroke=\"black\"/>\n";

    for (int i = 0; i <= 4; ++i) {
        const double fx = xmin + (xmax - xmin) * i / 4.0;
        const double fy = ymin + (ymax - ymin) * i / 4.0;
        svg += "<text x=\"" + fixed(px(fx)) + "\" y=\"" + fixed(top + ph + 16) +
               "\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"11\">" + tick(fx) + "</text>\n";
        const std::string label = log_y ? "1e" + tick(fy) : tick(fy);
        svg += "<text x=\"" + fixed(left - 6) + "\" y=\"" + fixed(py(fy) + 4) +
               "\" text-anchor=\"end\" font-family=\"sans-serif\" font-size=\"11\">" + label + "</text>\n";
    }
    svg += "<text x=\"" + fixed(left + pw / 2) + "\" y=\"" + fixed(height - 12) +
           "\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"13\">" + escape_xml(x_label) +
           "</text>\n";
    svg += "<text x=\"16\" y=\"" + fixed(top + ph / 2) + "\" transform=\"rotate(-90 16 " + fixed(top + ph / 2) +
           ")\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"13\">" +
           escape_xml(log_y ? y_label + " (log10)" : y_label) + "</text>\n";

    for (std::size_t si = 0; si < series.size(); ++si) {
        const auto& s = series[si];
        const char* color = kColors[si % kColors.size()];
        std::string points;
        for (std::size_t i = 0; i < s.y.size() && i < x.size(); ++i) {
            if (!usable(s.y[i]) || !std::isfinite(x[i])) {
                continue;
            }
            if (!points.empty()) {
                points += ' ';
            }
            points += fixed(px(x[i])) + "," + fixed(py(ty(s.y[i])));
        }
        svg += "<polyline fill=\"none\" stroke=\"" + std::string(color) + "\" stroke-width=\"1.5\" points=\"" +
               points + "\"/>\n";
        svg += "<text x=\"" + fixed(left + pw - 8) + "\" y=\"" + fixed(top + 16 + 14 * si) + "\" fill=\"" + color +
               "\" text-anchor=\"end\" font-family=\"sans-serif\" font-size=\"12\">" + escape_xml(s.label) +
               "</text>\n";
    }
    svg += "</svg>\n";
    return svg;
}

OutputSet::OutputSet(std::filesystem::path directory) : directory_(std::move(directory)) {}

void OutputSet::write(const std::string& name, const std::string& content)
{
    std::filesystem::create_directories(directory_);
    write_file_atomic(directory_ / name, content);
    manifest_.push_back({name, sha256_hex(content)});
}

void OutputSet::write_table(const std::string& stem, const Table& table, const std::string& format)
{
    if (format == "json") {
        write(stem + ".json", render_json(table));
    } else {
        write(stem + ".csv", render_csv(table));
    }
}

}  // namespace agetime::cli
