#pragma once

#include "vscan/corpus.hpp"
#include "vscan/engine.hpp"
#include "vscan/severity.hpp"

#include <array>
#include <cstddef>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace vscan {

enum class LineKind { LOC, NCLOC };

std::string_view to_string(LineKind k) noexcept;
std::optional<LineKind> parse_line_kind(std::string_view s);

/// Lines of code per finding, shown as "1:N".
struct DensityMetric {
    std::size_t findings_count = 0;
    std::size_t denominator_lines = 0;
    LineKind denominator_kind = LineKind::NCLOC;
    double ratio = 0.0;   ///< denominator_lines / findings_count; 0 when there are no findings
    std::string display;  ///< "1:N", N rounded half away from zero; "no findings" when count is 0

    bool has_findings() const noexcept { return findings_count > 0; }
};

inline constexpr std::string_view kNoFindings = "no findings";

/// Throws std::invalid_argument when `lines` is 0.
DensityMetric density(std::size_t findings_count, std::size_t lines, LineKind kind = LineKind::NCLOC);

struct GroupDensity {
    std::string group;
    std::size_t sloc = 0;
    std::size_t dangerous_lines = 0;  ///< distinct (path, line) pairs with at least one finding
    std::size_t findings = 0;
    std::optional<DensityMetric> density;  ///< empty when the group has no lines
};

/// Group name -> path globs. A file takes the first group (in name order) it
/// matches; unmatched files land in `ungrouped`.
using GroupMapping = std::map<std::string, std::vector<std::string>>;

inline constexpr std::string_view kUngrouped = "ungrouped";
inline constexpr std::string_view kRootGroup = "(root)";

/// Rows grouped by top-level directory (files at the root form `(root)`).
std::vector<GroupDensity> per_group_density(const ScanResult& result, LineKind kind = LineKind::NCLOC);

/// Rows grouped by an explicit mapping.
std::vector<GroupDensity> per_group_density(const ScanResult& result, const GroupMapping& mapping,
                                            LineKind kind = LineKind::NCLOC);

using SeverityHistogram = std::array<std::size_t, 7>;  ///< index rank-1

SeverityHistogram severity_histogram(const std::vector<Finding>& findings);

inline std::size_t histogram_total(const SeverityHistogram& h) {
    std::size_t n = 0;
    for (auto c : h) n += c;
    return n;
}

struct LanguageShare {
    std::string language;
    double percent = 0.0;
    std::size_t lines = 0;
};

/// Percent of physical lines per language, largest first (ties by name).
std::vector<LanguageShare> language_proportions(const std::map<std::string, LanguageTotals>& totals);
std::vector<LanguageShare> language_proportions(const CorpusInventory& inventory);

/// Density of a scan over its own totals.
DensityMetric scan_density(const ScanResult& result, LineKind kind = LineKind::NCLOC);

}  // namespace vscan
