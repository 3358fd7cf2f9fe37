#include "vscan/engine.hpp"

#include "vscan/digest.hpp"
#include "vscan/error.hpp"

#include <boost/regex.hpp>

#include <algorithm>
#include <atomic>
#include <chrono>
#include <optional>
#include <set>
#include <thread>

namespace vscan {

bool finding_less(const Finding& a, const Finding& b) {
    if (rank(a.severity) != rank(b.severity)) return rank(a.severity) < rank(b.severity);
    if (a.path != b.path) return a.path < b.path;
    if (a.line != b.line) return a.line < b.line;
    return a.rule_id < b.rule_id;
}

LanguageTotals ScanResult::grand_total() const {
    LanguageTotals t;
    for (const auto& [lang, lt] : totals) {
        t.files += lt.files;
        t.physical_lines += lt.physical_lines;
        t.code_lines += lt.code_lines;
        t.comment_lines += lt.comment_lines;
        t.blank_lines += lt.blank_lines;
    }
    return t;
}

std::string normalize_snippet(std::string_view snippet) {
    std::string out;
    bool pending_space = false;
    for (char c : snippet) {
        if (c == ' ' || c == '\t' || c == '\r' || c == '\n' || c == '\v' || c == '\f') {
            pending_space = !out.empty();
            continue;
        }
        if (pending_space) out.push_back(' ');
        pending_space = false;
        out.push_back(c);
    }
    return out;
}

std::string fingerprint(std::string_view rule_id, std::string_view path, std::string_view normalized_snippet,
                        std::size_t occurrence_index) {
    std::string payload;
    payload.reserve(rule_id.size() + path.size() + normalized_snippet.size() + 32);
    payload.append(kFingerprintScheme).push_back('\0');
    payload.append(rule_id).push_back('\0');
    payload.append(path).push_back('\0');
    payload.append(normalized_snippet).push_back('\0');
    payload.append(std::to_string(occurrence_index));
    return sha256_hex(payload).substr(0, 32);
}

namespace {

std::string trim_line(std::string_view s) {
    const auto first = s.find_first_not_of(" \t\r\n\v\f");
    if (first == std::string_view::npos) return {};
    const auto last = s.find_last_not_of(" \t\r\n\v\f");
    return std::string(s.substr(first, last - first + 1));
}

struct CompiledRule {
    const Rule* rule;
    std::optional<boost::regex> pattern;
    std::optional<PairedResourceAnalyzer> paired;
};

struct FileOutcome {
    std::vector<Finding> findings;
    std::vector<std::string> warnings;
};

FileOutcome scan_file(const CorpusInventory& inv, const SourceFile& file, const std::vector<CompiledRule>& rules,
                      const ScanOptions& options, const LanguageRegistry& registry) {
    FileOutcome out;
    std::string bytes;
    try {
        bytes = read_file(inv.root / file.path);
    } catch (const std::exception& e) {
        out.warnings.push_back(file.path + ": " + e.what());
        return out;
    }
    if (!file.digest.empty() && sha256_hex(bytes) != file.digest)
        out.warnings.push_back(file.path + ": content changed since ingest");

    const std::string text = sanitize_utf8(bytes);
    const LineAnalysis lines = analyze_lines(text, registry.profile(file.language));
    const bool config_file = is_config_file(file.path);

    // (rule index, line) pairs; std::set keeps one finding per rule and line.
    std::set<std::pair<std::size_t, std::size_t>> hits;
    for (std::size_t ri = 0; ri < rules.size(); ++ri) {
        const CompiledRule& cr = rules[ri];
        const Rule& rule = *cr.rule;
        if (!rule.applies_to(file.language)) continue;
        try {
            switch (rule.matcher) {
                case MatcherKind::PairedResource: {
                    std::vector<std::string> warns;
                    for (std::size_t line : cr.paired->run(lines, warns)) hits.emplace(ri, line);
                    for (auto& w : warns) out.warnings.push_back(file.path + ": " + rule.id + ": " + w);
                    break;
                }
                case MatcherKind::ConfigCheck: {
                    if (!config_file) break;
                    for (std::size_t i = 0; i < lines.lines.size(); ++i)
                        if (boost::regex_search(lines.lines[i].raw.begin(), lines.lines[i].raw.end(), *cr.pattern))
                            hits.emplace(ri, i + 1);
                    break;
                }
                case MatcherKind::Pattern: {
                    for (std::size_t i = 0; i < lines.lines.size(); ++i) {
                        const LineView& lv = lines.lines[i];
                        std::string_view subject;
                        switch (rule.target) {
                            case MatchTarget::Comment:
                                subject = lv.comment_text;
                                break;
                            case MatchTarget::Code:
                                if (options.non_comment_only && lines.classes[i] == LineClass::Comment) continue;
                                subject = lv.code_text;
                                break;
                            case MatchTarget::Line:
                                if (options.non_comment_only && lines.classes[i] == LineClass::Comment) continue;
                                subject = lv.raw;
                                break;
                        }
                        if (subject.empty()) continue;
                        if (boost::regex_search(subject.begin(), subject.end(), *cr.pattern)) hits.emplace(ri, i + 1);
                    }
                    break;
                }
            }
        } catch (const std::exception& e) {
            out.warnings.push_back(file.path + ": rule " + rule.id + " failed: " + e.what());
        }
    }

    // Occurrence index counts earlier hits of the same rule with the same
    // normalized snippet in this file, in line order.
    std::vector<std::pair<std::size_t, std::size_t>> ordered(hits.begin(), hits.end());
    std::sort(ordered.begin(), ordered.end(),
              [](const auto& a, const auto& b) { return a.second != b.second ? a.second < b.second : a.first < b.first; });
    std::map<std::pair<std::size_t, std::string>, std::size_t> seen;
    for (const auto& [ri, line] : ordered) {
        const Rule& rule = *rules[ri].rule;
        Finding f;
        f.rule_id = rule.id;
        f.title = rule.title;
        f.severity = *rule.severity;
        f.path = file.path;
        f.line = line;
        f.snippet = trim_line(lines.lines[line - 1].raw);
        f.description = rule.description;
        f.remediation = rule.remediation;
        const std::string norm = normalize_snippet(f.snippet);
        f.occurrence_index = seen[{ri, norm}]++;
        f.fingerprint = fingerprint(rule.id, file.path, norm, f.occurrence_index);
        out.findings.push_back(std::move(f));
    }
    return out;
}

}  // namespace

ScanResult scan(const CorpusInventory& inventory, const RulePack& pack, const ScanOptions& options) {
    const auto t0 = std::chrono::steady_clock::now();
    static const LanguageRegistry default_registry = LanguageRegistry::builtin();
    const LanguageRegistry& registry = options.registry ? *options.registry : default_registry;

    std::string problems;
    for (const auto& d : validate_pack(pack, registry))
        if (d.level == Diagnostic::Level::Error) problems += "\n  " + d.rule_id + ": " + d.message;
    if (!problems.empty()) throw ConfigError("invalid rule pack '" + pack.name + "':" + problems);

    std::vector<CompiledRule> rules;
    for (const Rule& r : pack.rules) {
        if (!options.severities.empty() &&
            std::find(options.severities.begin(), options.severities.end(), *r.severity) == options.severities.end())
            continue;
        CompiledRule cr{&r, std::nullopt, std::nullopt};
        if (r.matcher == MatcherKind::PairedResource) cr.paired.emplace(r);
        else cr.pattern.emplace(r.pattern, boost::regex::perl);
        rules.push_back(std::move(cr));
    }

    ScanResult result;
    result.root = inventory.root.string();
    result.started_at = utc_timestamp();
    result.pack_name = pack.name;
    result.pack_version = pack.version;
    result.warnings = inventory.warnings;

    std::vector<const SourceFile*> targets;
    for (const auto& f : inventory.files) {
        if (!options.languages.empty() &&
            std::find(options.languages.begin(), options.languages.end(), f.language) == options.languages.end())
            continue;
        targets.push_back(&f);
        result.files.push_back(f);
        auto& t = result.totals[f.language];
        ++t.files;
        t.physical_lines += f.physical_lines;
        t.code_lines += f.code_lines;
        t.comment_lines += f.comment_lines;
        t.blank_lines += f.blank_lines;
    }

    std::vector<FileOutcome> outcomes(targets.size());
    unsigned jobs = options.jobs ? options.jobs : std::max(1u, std::thread::hardware_concurrency());
    jobs = static_cast<unsigned>(std::min<std::size_t>(jobs, std::max<std::size_t>(1, targets.size())));
    std::atomic<std::size_t> next{0};
    auto worker = [&] {
        for (std::size_t i = next++; i < targets.size(); i = next++)
            outcomes[i] = scan_file(inventory, *targets[i], rules, options, registry);
    };
    {
        std::vector<std::jthread> pool;
        for (unsigned j = 1; j < jobs; ++j) pool.emplace_back(worker);
        worker();
    }

    for (auto& o : outcomes) {
        for (auto& f : o.findings) result.findings.push_back(std::move(f));
        for (auto& w : o.warnings) result.warnings.push_back(std::move(w));
    }
    std::sort(result.findings.begin(), result.findings.end(), finding_less);
    result.duration_ms = std::chrono::duration_cast<std::chrono::milliseconds>(std::chrono::steady_clock::now() - t0).count();
    return result;
}

}  // namespace vscan
