#pragma once

#include "vscan/corpus.hpp"
#include "vscan/severity.hpp"

#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace vscan {

enum class MatcherKind {
    Pattern,         ///< regex over one source line
    PairedResource,  ///< acquire/release pairing within a brace scope
    ConfigCheck,     ///< regex over configuration-file lines
};

/// Which view of a line a pattern rule sees.
enum class MatchTarget {
    Line,     ///< the raw line
    Code,     ///< the line with comment regions blanked
    Comment,  ///< only the text inside comment regions
};

enum class PairedCheck {
    Leak,           ///< acquisition with no later release in scope
    DoubleRelease,  ///< second release with no rebinding in between
};

std::string_view to_string(MatcherKind k) noexcept;
std::string_view to_string(MatchTarget t) noexcept;
std::string_view to_string(PairedCheck c) noexcept;

struct Rule {
    std::string id;
    std::string title;
    std::string description;
    std::optional<Severity> severity;
    std::vector<std::string> languages;  ///< empty means any language
    MatcherKind matcher = MatcherKind::Pattern;
    std::string pattern;  ///< Pattern and ConfigCheck
    std::string alloc_pattern;
    std::string release_pattern;
    MatchTarget target = MatchTarget::Line;
    PairedCheck check = PairedCheck::Leak;
    std::string remediation;

    bool applies_to(std::string_view language) const;
    bool operator==(const Rule&) const = default;
};

struct RulePack {
    std::string name;
    std::string version;
    std::vector<Rule> rules;

    const Rule* find(std::string_view id) const;
    bool operator==(const RulePack&) const = default;
};

struct Diagnostic {
    enum class Level { Error, Warning };
    Level level = Level::Error;
    std::string rule_id;
    std::string message;
};

/// Extensions whose files are checked by ConfigCheck rules.
bool is_config_file(std::string_view relative_path);

RulePack builtin_rules();

/// Parses rule-file text. Throws RuleLoadError naming the rule and line of the
/// first problem (syntax, unknown severity, invalid pattern, duplicate id).
RulePack parse_rulepack(std::string_view text);

RulePack load_rulepack(const std::filesystem::path& file);

/// Canonical rule-file text; parse_rulepack(serialize_rulepack(p)) == p.
std::string serialize_rulepack(const RulePack& pack);

/// Empty iff every rule invariant holds. Languages not in `registry` produce
/// warnings; everything else is an error.
std::vector<Diagnostic> validate_pack(const RulePack& pack,
                                      const LanguageRegistry& registry = LanguageRegistry::builtin());

/// Concatenates packs; a repeated rule id throws RuleLoadError.
RulePack merge_packs(const std::vector<RulePack>& packs);

/// Returns an error message when `pattern` does not compile.
std::optional<std::string> check_pattern(const std::string& pattern);

}  // namespace vscan
