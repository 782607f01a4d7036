#pragma once

#include <filesystem>
#include <optional>
#include <span>
#include <string>
#include <string_view>

#include "tag/eval/metrics.hpp"

namespace tag {

enum class ReportFormat { kJson, kCsv, kMarkdown };

std::optional<ReportFormat> parse_report_format(std::string_view s);

std::string report_json(const MetricsReport& report);
/// `section,key,value` rows: the summary fields, one `mu1_histogram` row per
/// action-space size and one `mu1_by_hand_size` row per hand size.
std::string report_csv(const MetricsReport& report);
/// One row per report.
std::string reports_markdown(std::span<const MetricsReport> reports);

/// Throws TagError when the file cannot be written.
void write_text(const std::filesystem::path& path, const std::string& text);
void write_report(const MetricsReport& report, ReportFormat format, const std::filesystem::path& path);

}  // namespace tag
