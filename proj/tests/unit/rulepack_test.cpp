#include "vscan/error.hpp"
#include "vscan/rulepack.hpp"

#include <gtest/gtest.h>

#include <algorithm>
#include <set>

using namespace vscan;

namespace {

constexpr std::string_view kOneRule = R"(# sample pack
[pack]
name = sample
version = 0.1

[rule]
id = demo.gets
title = Use of gets
severity = critical
matcher = pattern
pattern = \bgets\s*\(
languages = C, C++
)";

}  // namespace

TEST(Severity, SevenOrderedLevels) {
    EXPECT_EQ(kAllSeverities.size(), 7u);
    for (std::size_t i = 0; i < kAllSeverities.size(); ++i) EXPECT_EQ(rank(kAllSeverities[i]), static_cast<int>(i) + 1);
    EXPECT_EQ(kAllSeverities.front(), Severity::Critical);
    EXPECT_EQ(kAllSeverities.back(), Severity::SuspiciousComment);
}

TEST(Severity, ParseIsCaseInsensitive) {
    EXPECT_EQ(parse_severity("HIGH"), Severity::High);
    EXPECT_EQ(parse_severity("Suspicious Comment"), Severity::SuspiciousComment);
    EXPECT_EQ(parse_severity("potential_issue"), Severity::PotentialIssue);
    EXPECT_EQ(parse_severity("STANDARD"), Severity::Standard);
    EXPECT_FALSE(parse_severity("severe"));
    for (auto s : kAllSeverities) {
        EXPECT_EQ(parse_severity(to_token(s)), s);
        EXPECT_EQ(parse_severity(to_label(s)), s);
    }
}

TEST(BuiltinRules, KnownEntries) {
    const RulePack pack = builtin_rules();
    const Rule* memcpy_rule = pack.find("cpp.unsafe-memcpy");
    ASSERT_NE(memcpy_rule, nullptr);
    EXPECT_EQ(memcpy_rule->severity, Severity::High);
    EXPECT_EQ(memcpy_rule->title, "Unsafe Use of memcpy Allows Buffer Overflow");

    const Rule* debug_rule = pack.find("cs.debug-enabled");
    ASSERT_NE(debug_rule, nullptr);
    EXPECT_EQ(debug_rule->severity, Severity::Medium);
    EXPECT_NE(debug_rule->title.find(".NET Debugging Enabled"), std::string::npos);

    const Rule* comment_rule = pack.find("any.suspicious-comment");
    ASSERT_NE(comment_rule, nullptr);
    EXPECT_EQ(comment_rule->severity, Severity::SuspiciousComment);
    EXPECT_EQ(comment_rule->title, "Comment Indicates Potentially Unfinished Code");
}

TEST(BuiltinRules, ValidAndBroad) {
    const RulePack pack = builtin_rules();
    EXPECT_TRUE(validate_pack(pack).empty());
    EXPECT_GE(pack.rules.size(), 14u);
    std::set<Severity> seen;
    for (const auto& r : pack.rules) seen.insert(*r.severity);
    for (auto s : {Severity::High, Severity::Medium, Severity::Low, Severity::Standard, Severity::SuspiciousComment})
        EXPECT_TRUE(seen.count(s)) << to_label(s);
    std::set<std::string> ids;
    for (const auto& r : pack.rules) EXPECT_TRUE(ids.insert(r.id).second) << r.id;
}

TEST(RuleFile, MinimalPack) {
    const RulePack pack = parse_rulepack(kOneRule);
    EXPECT_EQ(pack.name, "sample");
    EXPECT_EQ(pack.version, "0.1");
    ASSERT_EQ(pack.rules.size(), 1u);
    EXPECT_EQ(pack.rules[0].severity, Severity::Critical);
    EXPECT_EQ(pack.rules[0].languages, (std::vector<std::string>{"C", "C++"}));
    EXPECT_EQ(pack.rules[0].pattern, R"(\bgets\s*\()");
}

TEST(RuleFile, DuplicateIdNamesTheRule) {
    const std::string text = std::string(kOneRule) + "\n[rule]\nid = demo.gets\ntitle = again\nseverity = low\n"
                                                     "matcher = pattern\npattern = x\n";
    try {
        parse_rulepack(text);
        FAIL() << "expected RuleLoadError";
    } catch (const RuleLoadError& e) {
        EXPECT_EQ(e.rule_id(), "demo.gets");
        EXPECT_NE(std::string(e.what()).find("demo.gets"), std::string::npos);
    }
}

TEST(RuleFile, BadPatternNamesTheRule) {
    const std::string text = "[rule]\nid = broken\ntitle = t\nseverity = low\nmatcher = pattern\npattern = (unclosed\n";
    try {
        parse_rulepack(text);
        FAIL() << "expected RuleLoadError";
    } catch (const RuleLoadError& e) {
        EXPECT_EQ(e.rule_id(), "broken");
        EXPECT_EQ(e.line(), 6u);
    }
}

TEST(RuleFile, MissingAndUnknownKeysFail) {
    EXPECT_THROW(parse_rulepack("[rule]\nid = a\ntitle = t\nseverity = low\nmatcher = pattern\n"), RuleLoadError);
    EXPECT_THROW(parse_rulepack("[rule]\nid = a\ntitle = t\nseverity = low\nmatcher = pattern\npattern = x\ncolour = red\n"),
                 RuleLoadError);
    EXPECT_THROW(parse_rulepack("[rule]\nid = a\ntitle = t\nseverity = dire\nmatcher = pattern\npattern = x\n"),
                 RuleLoadError);
    EXPECT_THROW(parse_rulepack("[rule]\nid = a\ntitle = t\nseverity = low\nmatcher = paired_resource\n"
                                "alloc_pattern = malloc\n"),
                 RuleLoadError);
}

TEST(RuleFile, RoundTripIsAFixedPoint) {
    for (const RulePack& pack : {builtin_rules(), parse_rulepack(kOneRule)}) {
        const std::string once = serialize_rulepack(pack);
        const RulePack reparsed = parse_rulepack(once);
        EXPECT_EQ(reparsed, pack);
        EXPECT_EQ(serialize_rulepack(reparsed), once);
    }
}

TEST(Validate, EmptySeverityIsOneDiagnostic) {
    RulePack pack = parse_rulepack(kOneRule);
    pack.rules[0].severity.reset();
    const auto d = validate_pack(pack);
    ASSERT_EQ(d.size(), 1u);
    EXPECT_EQ(d[0].level, Diagnostic::Level::Error);
    EXPECT_EQ(d[0].rule_id, "demo.gets");
}

TEST(Validate, UnregisteredLanguageIsAWarning) {
    RulePack pack = parse_rulepack(kOneRule);
    pack.rules[0].languages = {"COBOL"};
    const auto d = validate_pack(pack);
    ASSERT_EQ(d.size(), 1u);
    EXPECT_EQ(d[0].level, Diagnostic::Level::Warning);
}

TEST(Validate, PairedRuleNeedsBothPatterns) {
    RulePack pack = builtin_rules();
    Rule r = *pack.find("c.double-free");
    r.id = "x.paired";
    r.release_pattern.clear();
    EXPECT_FALSE(validate_pack(RulePack{"p", "1", {r}}).empty());
}

TEST(Merge, CollisionIsALoadError) {
    const RulePack a = parse_rulepack(kOneRule);
    EXPECT_THROW(merge_packs({a, a}), RuleLoadError);
    const RulePack merged = merge_packs({builtin_rules(), a});
    EXPECT_EQ(merged.rules.size(), builtin_rules().rules.size() + 1);
}

TEST(Severity, SortingPutsCriticalFirst) {
    std::vector<Severity> v = {Severity::SuspiciousComment, Severity::Low, Severity::Critical, Severity::Medium};
    std::sort(v.begin(), v.end(), [](Severity a, Severity b) { return rank(a) < rank(b); });
    EXPECT_EQ(v.front(), Severity::Critical);
    EXPECT_EQ(v.back(), Severity::SuspiciousComment);
}
