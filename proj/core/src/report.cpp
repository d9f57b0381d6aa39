#include "fracfd/report.hpp"

#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>

#include "json.hpp"

#include "fracfd/errors.hpp"

namespace fracfd {
namespace {

std::string trim(std::string_view s) {
    const auto b = s.find_first_not_of(" \t\r\n");
    if (b == std::string_view::npos) return {};
    const auto e = s.find_last_not_of(" \t\r\n");
    return std::string(s.substr(b, e - b + 1));
}

double parse_double(std::string_view s) {
    const std::string t = trim(s);
    double v = 0.0;
    const auto [ptr, ec] = std::from_chars(t.data(), t.data() + t.size(), v);
    if (ec != std::errc() || ptr != t.data() + t.size()) {
        throw ConfigError("report: cannot parse number '" + t + "'");
    }
    return v;
}

std::vector<std::string_view> split(std::string_view s, char sep) {
    std::vector<std::string_view> out;
    std::size_t start = 0;
    while (true) {
        const auto pos = s.find(sep, start);
        out.push_back(s.substr(start, pos == std::string_view::npos ? pos : pos - start));
        if (pos == std::string_view::npos) break;
        start = pos + 1;
    }
    return out;
}

std::string fixed(double v, int digits) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.*f", digits, v);
    return buf;
}

std::string sci(double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.3e", v);
    return buf;
}

}  // namespace

std::string_view to_string(OutputFormat f) noexcept {
    switch (f) {
        case OutputFormat::csv: return "csv";
        case OutputFormat::json: return "json";
        case OutputFormat::markdown: return "markdown";
    }
    return "?";
}

OutputFormat parse_output_format(std::string_view s) {
    if (s == "csv") return OutputFormat::csv;
    if (s == "json") return OutputFormat::json;
    if (s == "markdown" || s == "md") return OutputFormat::markdown;
    throw ConfigError("unknown output format '" + std::string(s) + "' (csv, json, markdown)");
}

std::optional<std::string> ConvergenceReport::get(std::string_view key) const {
    for (const auto& [k, v] : metadata) {
        if (k == key) return v;
    }
    return std::nullopt;
}

void ConvergenceReport::set(std::string key, std::string value) {
    if (key.find_first_of("=\n") != std::string::npos || value.find('\n') != std::string::npos) {
        throw ConfigError("report metadata may not contain '=' in keys or newlines");
    }
    for (auto& [k, v] : metadata) {
        if (k == key) {
            v = std::move(value);
            return;
        }
    }
    metadata.emplace_back(std::move(key), std::move(value));
}

void ConvergenceReport::compute_rates() {
    for (std::size_t i = 0; i < rows.size(); ++i) {
        if (i == 0) {
            rows[i].rate.reset();
            continue;
        }
        const auto& prev = rows[i - 1];
        const auto& cur = rows[i];
        if (prev.err_max > 0.0 && cur.err_max > 0.0 && cur.intervals > prev.intervals) {
            rows[i].rate = std::log(prev.err_max / cur.err_max) /
                           std::log(static_cast<double>(cur.intervals) /
                                    static_cast<double>(prev.intervals));
        } else {
            rows[i].rate.reset();
        }
    }
}

std::string format_exact(double v) {
    char buf[64];
    const auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, v);
    (void)ec;
    return std::string(buf, ptr);
}

std::string to_csv(const ConvergenceReport& report) {
    std::ostringstream os;
    for (const auto& [k, v] : report.metadata) os << "# " << k << '=' << v << '\n';
    os << "M,err_max,err_l2,rate,cpu_seconds\n";
    for (const auto& r : report.rows) {
        os << r.intervals << ',' << format_exact(r.err_max) << ',' << format_exact(r.err_l2) << ','
           << (r.rate ? format_exact(*r.rate) : std::string()) << ',' << format_exact(r.cpu_seconds)
           << '\n';
    }
    return os.str();
}

namespace {

nlohmann::ordered_json to_json_value(const ConvergenceReport& report) {
    nlohmann::ordered_json meta = nlohmann::ordered_json::object();
    for (const auto& [k, v] : report.metadata) meta[k] = v;
    nlohmann::ordered_json rows = nlohmann::ordered_json::array();
    for (const auto& r : report.rows) {
        nlohmann::ordered_json row;
        row["M"] = r.intervals;
        row["err_max"] = r.err_max;
        row["err_l2"] = r.err_l2;
        row["rate"] = r.rate ? nlohmann::ordered_json(*r.rate) : nlohmann::ordered_json(nullptr);
        row["cpu_seconds"] = r.cpu_seconds;
        rows.push_back(std::move(row));
    }
    return {{"metadata", std::move(meta)}, {"rows", std::move(rows)}};
}

ConvergenceReport from_json_value(const nlohmann::ordered_json& j) {
    ConvergenceReport rep;
    try {
        for (const auto& [k, v] : j.at("metadata").items()) {
            rep.metadata.emplace_back(k, v.get<std::string>());
        }
        for (const auto& row : j.at("rows")) {
            ReportRow r;
            r.intervals = row.at("M").get<std::size_t>();
            r.err_max = row.at("err_max").get<double>();
            r.err_l2 = row.at("err_l2").get<double>();
            if (!row.at("rate").is_null()) r.rate = row.at("rate").get<double>();
            r.cpu_seconds = row.at("cpu_seconds").get<double>();
            rep.rows.push_back(r);
        }
    } catch (const nlohmann::json::exception& e) {
        throw ConfigError(std::string("malformed JSON report: ") + e.what());
    }
    return rep;
}

}  // namespace

std::string to_json(const ConvergenceReport& report) { return to_json_value(report).dump(2) + "\n"; }

std::string to_markdown(const ConvergenceReport& report) {
    std::ostringstream os;
    if (auto t = report.get("title")) os << "### " << *t << "\n\n";
    for (const auto& [k, v] : report.metadata) {
        if (k != "title") os << "- " << k << ": " << v << '\n';
    }
    if (!report.metadata.empty()) os << '\n';
    os << "| M | E_inf(h) | Rate | E_2(h) | CPU time (s) |\n";
    os << "|---:|---:|---:|---:|---:|\n";
    for (const auto& r : report.rows) {
        os << "| " << r.intervals << " | " << sci(r.err_max) << " | "
           << (r.rate ? fixed(*r.rate, 2) : std::string("-")) << " | " << sci(r.err_l2) << " | "
           << fixed(r.cpu_seconds, 3) << " |\n";
    }
    return os.str();
}

std::string render(const ConvergenceReport& report, OutputFormat format) {
    switch (format) {
        case OutputFormat::csv: return to_csv(report);
        case OutputFormat::json: return to_json(report);
        case OutputFormat::markdown: return to_markdown(report);
    }
    return {};
}

std::string render(const std::vector<ConvergenceReport>& reports, OutputFormat format) {
    if (reports.size() == 1) return render(reports.front(), format);
    if (format == OutputFormat::json) {
        nlohmann::ordered_json arr = nlohmann::ordered_json::array();
        for (const auto& r : reports) arr.push_back(to_json_value(r));
        return arr.dump(2) + "\n";
    }
    std::string out;
    for (std::size_t i = 0; i < reports.size(); ++i) {
        if (i) out += '\n';
        out += render(reports[i], format);
    }
    return out;
}

ConvergenceReport parse_json_report(std::string_view text) {
    nlohmann::ordered_json j;
    try {
        j = nlohmann::ordered_json::parse(text);
    } catch (const nlohmann::json::exception& e) {
        throw ConfigError(std::string("malformed JSON report: ") + e.what());
    }
    return from_json_value(j);
}

ConvergenceReport parse_csv_report(std::string_view text) {
    ConvergenceReport rep;
    bool header = false;
    for (auto line : split(text, '\n')) {
        const std::string l = trim(line);
        if (l.empty()) continue;
        if (l.rfind("# ", 0) == 0) {
            const auto eq = l.find('=');
            if (eq == std::string::npos) throw ConfigError("report: metadata line without '='");
            rep.metadata.emplace_back(l.substr(2, eq - 2), l.substr(eq + 1));
            continue;
        }
        if (!header) {
            if (l != "M,err_max,err_l2,rate,cpu_seconds") throw ConfigError("report: bad CSV header");
            header = true;
            continue;
        }
        const auto f = split(l, ',');
        if (f.size() != 5) throw ConfigError("report: CSV row needs 5 fields");
        ReportRow r;
        r.intervals = static_cast<std::size_t>(parse_double(f[0]));
        r.err_max = parse_double(f[1]);
        r.err_l2 = parse_double(f[2]);
        if (!trim(f[3]).empty()) r.rate = parse_double(f[3]);
        r.cpu_seconds = parse_double(f[4]);
        rep.rows.push_back(r);
    }
    if (!header) throw ConfigError("report: missing CSV header");
    return rep;
}

void write_text(const std::filesystem::path& path, std::string_view text) {
    if (path.empty() || path == "-") {
        std::cout << text;
        std::cout.flush();
        return;
    }
    std::ofstream out(path, std::ios::binary);
    if (!out) throw ConfigError("cannot open '" + path.string() + "' for writing");
    out << text;
    if (!out) throw ConfigError("failed writing '" + path.string() + "'");
}

void emit_report(const ConvergenceReport& report, OutputFormat format,
                 const std::filesystem::path& path) {
    write_text(path, render(report, format));
}

void emit_reports(const std::vector<ConvergenceReport>& reports, OutputFormat format,
                  const std::filesystem::path& path) {
    write_text(path, render(reports, format));
}

void emit_pointwise_error(const GridFunction& solution, const GridFunction& reference,
                          const std::filesystem::path& path, const Metadata& metadata) {
    if (!(solution.grid() == reference.grid())) {
        throw ConfigError("pointwise error: solution and reference are on different grids");
    }
    std::ostringstream os;
    for (const auto& [k, v] : metadata) os << "# " << k << '=' << v << '\n';
    os << "x,abs_error\n";
    const Grid& g = solution.grid();
    for (std::size_t j = 1; j < g.intervals(); ++j) {
        os << format_exact(g.x(j)) << ',' << format_exact(std::abs(solution[j] - reference[j])) << '\n';
    }
    write_text(path, os.str());
}

}  // namespace fracfd
