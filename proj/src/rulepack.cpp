#include "vscan/rulepack.hpp"

#include "vscan/error.hpp"
#include "vscan/keyfile.hpp"

#include <boost/regex.hpp>

#include <algorithm>
#include <cctype>
#include <set>
#include <sstream>

namespace vscan {

std::string_view to_string(MatcherKind k) noexcept {
    switch (k) {
        case MatcherKind::Pattern: return "pattern";
        case MatcherKind::PairedResource: return "paired_resource";
        case MatcherKind::ConfigCheck: return "config_check";
    }
    return "?";
}

std::string_view to_string(MatchTarget t) noexcept {
    switch (t) {
        case MatchTarget::Line: return "line";
        case MatchTarget::Code: return "code";
        case MatchTarget::Comment: return "comment";
    }
    return "?";
}

std::string_view to_string(PairedCheck c) noexcept {
    switch (c) {
        case PairedCheck::Leak: return "leak";
        case PairedCheck::DoubleRelease: return "double_release";
    }
    return "?";
}

bool Rule::applies_to(std::string_view language) const {
    return languages.empty() || std::find(languages.begin(), languages.end(), language) != languages.end();
}

const Rule* RulePack::find(std::string_view id) const {
    for (const auto& r : rules)
        if (r.id == id) return &r;
    return nullptr;
}

bool is_config_file(std::string_view relative_path) {
    static const std::set<std::string, std::less<>> kExts = {".config", ".xml",  ".json",      ".yaml",
                                                             ".yml",    ".ini",  ".properties", ".conf"};
    const auto slash = relative_path.find_last_of('/');
    const auto name = slash == std::string_view::npos ? relative_path : relative_path.substr(slash + 1);
    const auto dot = name.find_last_of('.');
    if (dot == std::string_view::npos) return false;
    std::string ext(name.substr(dot));
    for (char& c : ext) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
    return kExts.count(ext) > 0;
}

std::optional<std::string> check_pattern(const std::string& pattern) {
    if (pattern.empty()) return "empty pattern";
    try {
        boost::regex re(pattern, boost::regex::perl);
    } catch (const boost::regex_error& e) {
        return std::string(e.what());
    }
    return std::nullopt;
}

// ---------------------------------------------------------------------------
// Rule file parsing

namespace {

std::optional<MatcherKind> parse_matcher(std::string_view s) {
    for (auto k : {MatcherKind::Pattern, MatcherKind::PairedResource, MatcherKind::ConfigCheck})
        if (s == to_string(k)) return k;
    return std::nullopt;
}

std::optional<MatchTarget> parse_target(std::string_view s) {
    for (auto t : {MatchTarget::Line, MatchTarget::Code, MatchTarget::Comment})
        if (s == to_string(t)) return t;
    return std::nullopt;
}

std::optional<PairedCheck> parse_check(std::string_view s) {
    for (auto c : {PairedCheck::Leak, PairedCheck::DoubleRelease})
        if (s == to_string(c)) return c;
    return std::nullopt;
}

Rule parse_rule(const KeySection& sec) {
    Rule r;
    std::string id = sec.get("id").value_or("");
    auto fail = [&](std::size_t line, const std::string& msg) -> RuleLoadError {
        return RuleLoadError(id, line ? line : sec.line, msg);
    };
    auto line_of = [&](std::string_view key) {
        const KeyEntry* e = sec.find(key);
        return e ? e->line : sec.line;
    };

    static const std::set<std::string, std::less<>> kKnown = {
        "id",      "title",         "severity",        "matcher",  "pattern",    "alloc_pattern",
        "release_pattern", "languages", "description", "remediation", "target", "check"};
    for (const auto& e : sec.entries)
        if (!kKnown.count(e.key)) throw fail(e.line, "unknown key '" + e.key + "'");

    if (id.empty()) throw fail(sec.line, "missing required key 'id'");
    r.id = id;
    r.title = sec.get("title").value_or("");
    if (r.title.empty()) throw fail(line_of("title"), "missing required key 'title'");

    const auto sev = sec.get("severity");
    if (!sev) throw fail(sec.line, "missing required key 'severity'");
    r.severity = parse_severity(*sev);
    if (!r.severity) throw fail(line_of("severity"), "unknown severity '" + *sev + "'");

    const auto matcher = sec.get("matcher");
    if (!matcher) throw fail(sec.line, "missing required key 'matcher'");
    const auto kind = parse_matcher(*matcher);
    if (!kind) throw fail(line_of("matcher"), "unknown matcher '" + *matcher + "'");
    r.matcher = *kind;

    if (r.matcher == MatcherKind::PairedResource) {
        r.alloc_pattern = sec.get("alloc_pattern").value_or("");
        r.release_pattern = sec.get("release_pattern").value_or("");
        if (r.alloc_pattern.empty() || r.release_pattern.empty())
            throw fail(sec.line, "paired_resource requires alloc_pattern and release_pattern");
        for (const char* key : {"alloc_pattern", "release_pattern"})
            if (auto err = check_pattern(*sec.get(key))) throw fail(line_of(key), "invalid pattern: " + *err);
        if (auto c = sec.get("check")) {
            auto parsed = parse_check(*c);
            if (!parsed) throw fail(line_of("check"), "unknown check '" + *c + "'");
            r.check = *parsed;
        }
    } else {
        r.pattern = sec.get("pattern").value_or("");
        if (r.pattern.empty()) throw fail(sec.line, "missing required key 'pattern'");
        if (auto err = check_pattern(r.pattern)) throw fail(line_of("pattern"), "invalid pattern: " + *err);
        if (auto t = sec.get("target")) {
            auto parsed = parse_target(*t);
            if (!parsed) throw fail(line_of("target"), "unknown target '" + *t + "'");
            r.target = *parsed;
        }
    }

    if (auto langs = sec.get("languages")) {
        r.languages = split_list(*langs);
        if (r.languages.size() == 1 && r.languages.front() == "any") r.languages.clear();
    }
    r.description = sec.get("description").value_or("");
    r.remediation = sec.get("remediation").value_or("");
    return r;
}

}  // namespace

RulePack parse_rulepack(std::string_view text) {
    const KeyFile kf = parse_keyfile(text);
    if (!kf.errors.empty()) throw RuleLoadError("", kf.errors.front().line, kf.errors.front().message);

    RulePack pack;
    std::set<std::string> seen;
    for (const auto& sec : kf.sections) {
        if (sec.name == "pack") {
            pack.name = sec.get("name").value_or("");
            pack.version = sec.get("version").value_or("");
            continue;
        }
        if (sec.name != "rule") throw RuleLoadError("", sec.line, "unknown section [" + sec.name + "]");
        Rule r = parse_rule(sec);
        if (!seen.insert(r.id).second) throw RuleLoadError(r.id, sec.line, "duplicate rule id");
        pack.rules.push_back(std::move(r));
    }
    if (pack.name.empty()) pack.name = "custom";
    if (pack.version.empty()) pack.version = "0";
    return pack;
}

RulePack load_rulepack(const std::filesystem::path& file) {
    std::string text;
    try {
        text = read_file(file);
    } catch (const IoError& e) {
        throw RuleLoadError("", 0, e.what());
    }
    return parse_rulepack(text);
}

std::string serialize_rulepack(const RulePack& pack) {
    std::ostringstream out;
    out << "[pack]\nname = " << pack.name << "\nversion = " << pack.version << "\n";
    for (const Rule& r : pack.rules) {
        out << "\n[rule]\n";
        out << "id = " << r.id << "\n";
        out << "title = " << r.title << "\n";
        out << "severity = " << (r.severity ? to_token(*r.severity) : "") << "\n";
        out << "matcher = " << to_string(r.matcher) << "\n";
        if (r.matcher == MatcherKind::PairedResource) {
            out << "alloc_pattern = " << r.alloc_pattern << "\n";
            out << "release_pattern = " << r.release_pattern << "\n";
            out << "check = " << to_string(r.check) << "\n";
        } else {
            out << "pattern = " << r.pattern << "\n";
            out << "target = " << to_string(r.target) << "\n";
        }
        out << "languages = ";
        if (r.languages.empty()) {
            out << "any";
        } else {
            for (std::size_t i = 0; i < r.languages.size(); ++i) out << (i ? ", " : "") << r.languages[i];
        }
        out << "\n";
        if (!r.description.empty()) out << "description = " << r.description << "\n";
        if (!r.remediation.empty()) out << "remediation = " << r.remediation << "\n";
    }
    return out.str();
}

std::vector<Diagnostic> validate_pack(const RulePack& pack, const LanguageRegistry& registry) {
    std::vector<Diagnostic> diags;
    std::set<std::string> seen;
    auto error = [&](const Rule& r, std::string msg) {
        diags.push_back({Diagnostic::Level::Error, r.id, std::move(msg)});
    };
    for (const Rule& r : pack.rules) {
        if (r.id.empty()) error(r, "empty rule id");
        else if (!seen.insert(r.id).second) error(r, "duplicate rule id");
        if (r.title.empty()) error(r, "empty title");
        if (!r.severity) error(r, "missing severity");
        if (r.matcher == MatcherKind::PairedResource) {
            if (r.alloc_pattern.empty() || r.release_pattern.empty()) {
                error(r, "paired_resource requires both alloc and release patterns");
            } else {
                if (auto e = check_pattern(r.alloc_pattern)) error(r, "alloc_pattern: " + *e);
                if (auto e = check_pattern(r.release_pattern)) error(r, "release_pattern: " + *e);
            }
        } else if (auto e = check_pattern(r.pattern)) {
            error(r, "pattern: " + *e);
        }
        for (const auto& lang : r.languages)
            if (lang != kUnknownLanguage && !registry.has_language(lang))
                diags.push_back({Diagnostic::Level::Warning, r.id, "targets unregistered language '" + lang + "'"});
    }
    return diags;
}

RulePack merge_packs(const std::vector<RulePack>& packs) {
    RulePack merged;
    std::set<std::string> seen;
    for (const auto& p : packs) {
        if (!merged.name.empty()) {
            merged.name += "+";
            merged.version += "+";
        }
        merged.name += p.name;
        merged.version += p.version;
        for (const auto& r : p.rules) {
            if (!seen.insert(r.id).second)
                throw RuleLoadError(r.id, 0, "rule id collides across packs ('" + p.name + "')");
            merged.rules.push_back(r);
        }
    }
    return merged;
}

}  // namespace vscan
