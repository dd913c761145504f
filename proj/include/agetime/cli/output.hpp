#pragma once

#include <filesystem>
#include <string>
#include <vector>

namespace agetime::cli {

// Shortest decimal that round-trips to the same double.
std::string format_double(double x);

std::string sha256_hex(const std::string& content);

// Writes `content` to a sibling temp file and renames it over `path`.
void write_file_atomic(const std::filesystem::path& path, const std::string& content);

struct Table {
    std::vector<std::string> columns;
    std::vector<std::vector<std::string>> rows;

    void add_row(std::vector<std::string> row);
};

std::string render_csv(const Table& table);
std::string render_json(const Table& table);

struct PlotSeries {
    std::string label;
    std::vector<double> y;
};

// Static SVG line chart. With log_y, non-positive samples are dropped.
std::string render_svg(const std::string& title, const std::string& x_label, const std::string& y_label,
                       const std::vector<double>& x, const std::vector<PlotSeries>& series, bool log_y);

struct ManifestEntry {
    std::string file;
    std::string sha256;
};

// Collects everything written to one output directory.
class OutputSet {
public:
    explicit OutputSet(std::filesystem::path directory);

    const std::filesystem::path& directory() const { return directory_; }
    const std::vector<ManifestEntry>& manifest() const { return manifest_; }

    void write(const std::string& name, const std::string& content);
    // Writes `table` as <stem>.csv or <stem>.json.
    void write_table(const std::string& stem, const Table& table, const std::string& format);

private:
    std::filesystem::path directory_;
    std::vector<ManifestEntry> manifest_;
};

}  // namespace agetime::cli
