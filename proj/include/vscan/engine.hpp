#pragma once

#include "vscan/corpus.hpp"
#include "vscan/rulepack.hpp"
#include "vscan/severity.hpp"

#include <cstdint>
#include <map>
#include <memory>
#include <string>
#include <string_view>
#include <vector>

namespace vscan {

/// Version tag of the fingerprint recipe; baselines with another tag cannot be diffed.
inline constexpr std::string_view kFingerprintScheme = "fp1";

struct Finding {
    std::string fingerprint;
    std::string rule_id;
    std::string title;
    Severity severity = Severity::Standard;
    std::string path;
    std::size_t line = 0;  ///< 1-based
    std::string snippet;   ///< the source line, trimmed
    std::string description;
    std::string remediation;
    std::size_t occurrence_index = 0;

    bool operator==(const Finding&) const = default;
};

/// Canonical order: severity rank, path, line, rule id.
bool finding_less(const Finding& a, const Finding& b);

struct ScanResult {
    std::string root;
    std::string started_at;
    std::int64_t duration_ms = 0;
    std::vector<SourceFile> files;
    std::map<std::string, LanguageTotals> totals;
    std::string pack_name;
    std::string pack_version;
    std::string fingerprint_scheme{kFingerprintScheme};
    std::vector<Finding> findings;
    std::vector<std::string> warnings;

    LanguageTotals grand_total() const;
    bool operator==(const ScanResult&) const = default;
};

struct ScanOptions {
    std::vector<std::string> languages;  ///< restrict to these languages; empty = all
    std::vector<Severity> severities;    ///< restrict to these severities; empty = all
    bool non_comment_only = false;       ///< pattern rules skip comment-classified lines
    unsigned jobs = 0;                   ///< 0 picks hardware concurrency
    const LanguageRegistry* registry = nullptr;
};

/// Collapses every whitespace run to one space and trims the ends.
std::string normalize_snippet(std::string_view snippet);

/// Deterministic id over (rule, path, normalized snippet, occurrence). The line
/// number is deliberately absent so findings survive pure line shifts.
std::string fingerprint(std::string_view rule_id, std::string_view path, std::string_view normalized_snippet,
                        std::size_t occurrence_index);

/// Lexical acquire/release pairing for one paired_resource rule.
///
/// Scopes are top-level brace blocks; statements at depth 0 share a file scope.
/// `x = <alloc>(...)` binds x (casts between `=` and the call are skipped);
/// `<release>(x)` releases it; any other `x = ...` rebinds it. A Leak check
/// reports each binding never followed by a release of the same name in its
/// scope, at the binding line. A DoubleRelease check reports a release of a
/// name already released with no rebinding since, at that release line.
/// Unbalanced braces fall back to one whole-file scope and add a warning.
class PairedResourceAnalyzer {
  public:
    explicit PairedResourceAnalyzer(const Rule& rule);
    ~PairedResourceAnalyzer();
    PairedResourceAnalyzer(PairedResourceAnalyzer&&) noexcept;
    PairedResourceAnalyzer& operator=(PairedResourceAnalyzer&&) noexcept;

    /// 1-based lines, ascending and unique.
    std::vector<std::size_t> run(const LineAnalysis& lines, std::vector<std::string>& warnings) const;

  private:
    struct Impl;
    std::unique_ptr<Impl> impl_;
    PairedCheck check_;
};

/// Convenience wrapper: classifies `content` with `profile` and runs the analyzer.
std::vector<std::size_t> analyze_paired_resources(std::string_view content, const LanguageProfile& profile,
                                                  const Rule& rule, std::vector<std::string>* warnings = nullptr);

/// Runs every applicable rule over every inventoried file. Files are re-read
/// from `inventory.root`; per-file failures become warnings. Throws ConfigError
/// if the pack fails validation.
ScanResult scan(const CorpusInventory& inventory, const RulePack& pack, const ScanOptions& options = {});

}  // namespace vscan
