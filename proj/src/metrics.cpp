#include "vscan/metrics.hpp"

#include "vscan/glob.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <set>
#include <stdexcept>

namespace vscan {

std::string_view to_string(LineKind k) noexcept { return k == LineKind::LOC ? "LOC" : "NCLOC"; }

std::optional<LineKind> parse_line_kind(std::string_view s) {
    std::string lower(s);
    for (char& c : lower) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
    if (lower == "loc") return LineKind::LOC;
    if (lower == "ncloc" || lower == "sloc") return LineKind::NCLOC;
    return std::nullopt;
}

DensityMetric density(std::size_t findings_count, std::size_t lines, LineKind kind) {
    if (lines == 0) throw std::invalid_argument("density needs a positive line count");
    DensityMetric d;
    d.findings_count = findings_count;
    d.denominator_lines = lines;
    d.denominator_kind = kind;
    if (findings_count == 0) {
        d.display = std::string(kNoFindings);
        return d;
    }
    d.ratio = static_cast<double>(lines) / static_cast<double>(findings_count);
    // std::round rounds halves away from zero.
    d.display = "1:" + std::to_string(static_cast<long long>(std::round(d.ratio)));
    return d;
}

namespace {

std::size_t lines_of(const SourceFile& f, LineKind kind) {
    return kind == LineKind::LOC ? f.physical_lines : f.code_lines;
}

template <typename GroupOf>
std::vector<GroupDensity> group_rows(const ScanResult& result, LineKind kind, GroupOf group_of) {
    std::map<std::string, GroupDensity> rows;
    std::map<std::string, std::string> group_by_path;
    for (const auto& f : result.files) {
        const std::string g = group_of(f.path);
        group_by_path[f.path] = g;
        auto& row = rows[g];
        row.group = g;
        row.sloc += lines_of(f, kind);
    }
    std::map<std::string, std::set<std::pair<std::string, std::size_t>>> dangerous;
    for (const auto& fd : result.findings) {
        auto it = group_by_path.find(fd.path);
        const std::string g = it != group_by_path.end() ? it->second : group_of(fd.path);
        auto& row = rows[g];
        row.group = g;
        ++row.findings;
        dangerous[g].emplace(fd.path, fd.line);
    }
    std::vector<GroupDensity> out;
    for (auto& [g, row] : rows) {
        row.dangerous_lines = dangerous[g].size();
        if (row.sloc > 0) row.density = density(row.findings, row.sloc, kind);
        out.push_back(std::move(row));
    }
    return out;
}

}  // namespace

std::vector<GroupDensity> per_group_density(const ScanResult& result, LineKind kind) {
    return group_rows(result, kind, [](const std::string& path) {
        const auto slash = path.find('/');
        return slash == std::string::npos ? std::string(kRootGroup) : path.substr(0, slash);
    });
}

std::vector<GroupDensity> per_group_density(const ScanResult& result, const GroupMapping& mapping, LineKind kind) {
    return group_rows(result, kind, [&](const std::string& path) {
        for (const auto& [group, globs] : mapping)
            if (glob_match_any(globs, path)) return group;
        return std::string(kUngrouped);
    });
}

SeverityHistogram severity_histogram(const std::vector<Finding>& findings) {
    SeverityHistogram h{};
    for (const auto& f : findings) ++h[static_cast<std::size_t>(rank(f.severity) - 1)];
    return h;
}

std::vector<LanguageShare> language_proportions(const std::map<std::string, LanguageTotals>& totals) {
    std::size_t all = 0;
    for (const auto& [lang, t] : totals) all += t.physical_lines;
    std::vector<LanguageShare> out;
    if (all == 0) return out;
    for (const auto& [lang, t] : totals)
        out.push_back({lang, 100.0 * static_cast<double>(t.physical_lines) / static_cast<double>(all), t.physical_lines});
    std::sort(out.begin(), out.end(), [](const LanguageShare& a, const LanguageShare& b) {
        return a.lines != b.lines ? a.lines > b.lines : a.language < b.language;
    });
    return out;
}

std::vector<LanguageShare> language_proportions(const CorpusInventory& inventory) {
    return language_proportions(inventory.totals);
}

DensityMetric scan_density(const ScanResult& result, LineKind kind) {
    const LanguageTotals t = result.grand_total();
    const std::size_t lines = kind == LineKind::LOC ? t.physical_lines : t.code_lines;
    if (lines == 0) {
        DensityMetric d;
        d.findings_count = result.findings.size();
        d.denominator_kind = kind;
        d.display = d.findings_count == 0 ? std::string(kNoFindings) : std::string("n/a");
        return d;
    }
    return density(result.findings.size(), lines, kind);
}

}  // namespace vscan
