#pragma once

#include "vscan/baseline.hpp"
#include "vscan/engine.hpp"
#include "vscan/metrics.hpp"

#include <map>
#include <string>
#include <vector>

namespace vscan {

/// Plain-text scan summary: files, LOC, NCLOC, language shares, the
/// seven-row severity table, density with its denominator, and duration.
std::string render_summary(const ScanResult& result, LineKind kind = LineKind::NCLOC);

inline constexpr std::string_view kCsvHeader = "fingerprint,severity,rule_id,title,path,line,snippet,state";

/// RFC 4180 quoting with LF line endings. `states` maps fingerprint to triage
/// state; missing entries print `unreviewed`.
std::string render_csv(const std::vector<Finding>& findings,
                       const std::map<std::string, std::string>* states = nullptr);

std::string csv_escape(std::string_view field);

/// Canonical JSON: sorted keys, two-space indent, trailing newline. Carries a
/// derived `metrics` block that parse_structured ignores.
std::string render_structured(const ScanResult& result, LineKind kind = LineKind::NCLOC);

/// Throws BaselineError(Format) on malformed input.
ScanResult parse_structured(std::string_view text);

std::string render_diff_structured(const DiffResult& diff);
std::string render_diff_text(const DiffResult& diff);

/// Self-contained HTML: inline SVG charts, a client-side sortable findings table.
std::string render_html(const ScanResult& result, LineKind kind = LineKind::NCLOC, const DiffResult* diff = nullptr);

std::string html_escape(std::string_view s);

}  // namespace vscan
