#pragma once

#include <cstddef>
#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "fracfd/grid.hpp"

namespace fracfd {

enum class OutputFormat { csv, json, markdown };

[[nodiscard]] std::string_view to_string(OutputFormat f) noexcept;
[[nodiscard]] OutputFormat parse_output_format(std::string_view s);

struct ReportRow {
    std::size_t intervals = 0;
    double err_max = 0.0;
    double err_l2 = 0.0;
    std::optional<double> rate;  ///< empty on the first row
    double cpu_seconds = 0.0;

    friend bool operator==(const ReportRow&, const ReportRow&) = default;
};

/// Ordered key/value pairs; emitted as "# key=value" lines in CSV and as a JSON object.
using Metadata = std::vector<std::pair<std::string, std::string>>;

struct ConvergenceReport {
    Metadata metadata;
    std::vector<ReportRow> rows;

    [[nodiscard]] std::optional<std::string> get(std::string_view key) const;
    void set(std::string key, std::string value);

    /// Fills every rate from consecutive rows: log(E_prev/E) / log(M/M_prev).
    void compute_rates();

    friend bool operator==(const ConvergenceReport&, const ConvergenceReport&) = default;
};

/// Formats a double so that parsing it back gives the same value.
[[nodiscard]] std::string format_exact(double v);

[[nodiscard]] std::string to_csv(const ConvergenceReport& report);
[[nodiscard]] std::string to_json(const ConvergenceReport& report);
[[nodiscard]] std::string to_markdown(const ConvergenceReport& report);
[[nodiscard]] std::string render(const ConvergenceReport& report, OutputFormat format);

/// Several reports in one document: CSV blocks separated by a blank line,
/// a JSON array, or consecutive Markdown tables.
[[nodiscard]] std::string render(const std::vector<ConvergenceReport>& reports, OutputFormat format);

/// Inverse of to_json / to_csv.  Throws ConfigError on malformed input.
[[nodiscard]] ConvergenceReport parse_json_report(std::string_view text);
[[nodiscard]] ConvergenceReport parse_csv_report(std::string_view text);

/// Writes the rendered report; an empty path or "-" means stdout.
void emit_report(const ConvergenceReport& report, OutputFormat format,
                 const std::filesystem::path& path);
void emit_reports(const std::vector<ConvergenceReport>& reports, OutputFormat format,
                  const std::filesystem::path& path);

/// "x,abs_error" rows for the interior nodes, preceded by "# key=value" lines.
void emit_pointwise_error(const GridFunction& solution, const GridFunction& reference,
                          const std::filesystem::path& path, const Metadata& metadata = {});

/// Writes text to a file (or stdout for "" / "-"); throws ConfigError if the file cannot be opened.
void write_text(const std::filesystem::path& path, std::string_view text);

}  // namespace fracfd
