#include "vscan/rulepack.hpp"

namespace vscan {

namespace {

Rule pattern_rule(std::string id, std::string title, Severity sev, std::vector<std::string> langs,
                  std::string pattern, std::string description, std::string remediation,
                  MatcherKind kind = MatcherKind::Pattern, MatchTarget target = MatchTarget::Line) {
    Rule r;
    r.id = std::move(id);
    r.title = std::move(title);
    r.severity = sev;
    r.languages = std::move(langs);
    r.matcher = kind;
    r.pattern = std::move(pattern);
    r.target = target;
    r.description = std::move(description);
    r.remediation = std::move(remediation);
    return r;
}

Rule paired_rule(std::string id, std::string title, PairedCheck check, std::string description,
                 std::string remediation) {
    Rule r;
    r.id = std::move(id);
    r.title = std::move(title);
    r.severity = Severity::High;
    r.languages = {"C", "C++"};
    r.matcher = MatcherKind::PairedResource;
    r.alloc_pattern = R"(\b(?:malloc|calloc|realloc|strdup|strndup)\s*\()";
    r.release_pattern = R"(\bfree\s*\()";
    r.check = check;
    r.description = std::move(description);
    r.remediation = std::move(remediation);
    return r;
}

}  // namespace

RulePack builtin_rules() {
    const std::string unsafe = "Potentially Unsafe Code - ";
    RulePack pack{"builtin", "1.0.0", {}};
    auto& r = pack.rules;

    r.push_back(pattern_rule(
        "cpp.unsafe-memcpy", "Unsafe Use of memcpy Allows Buffer Overflow", Severity::High, {"C", "C++"},
        R"(\bmemcpy\s*\()",
        "memcpy copies a caller-supplied length with no check against the destination size; a length "
        "larger than the destination buffer overflows it.",
        "Check the length against both the destination and source sizes before copying, or use a "
        "bounded container copy."));
    r.push_back(pattern_rule(
        "cpp.unsafe-strcpy", "Unsafe Use of strcpy Allows Buffer Overflow", Severity::High, {"C", "C++"},
        R"(\b(?:strcpy|wcscpy)\s*\()",
        "strcpy copies until the terminating NUL with no bound; a source longer than the destination "
        "overflows it.",
        "Use a bounded copy (strncpy/strlcpy/snprintf) or std::string."));
    r.push_back(paired_rule(
        "c.malloc-no-free", "Memory Allocated with malloc Is Never Freed", PairedCheck::Leak,
        "A pointer bound to a heap allocation is never passed to free within the same scope; the "
        "memory may leak.",
        "Release the allocation on every path out of the scope, or document the ownership transfer."));
    r.push_back(paired_rule(
        "c.double-free", "Memory Released More Than Once (Double Free)", PairedCheck::DoubleRelease,
        "The same pointer is passed to free twice with no reassignment in between; a double free can "
        "corrupt the heap allocator.",
        "Set the pointer to NULL after freeing it and free each allocation exactly once."));
    r.push_back(pattern_rule(
        "cs.hardcoded-password", unsafe + "Appears to Contain Hard-Coded Password", Severity::Medium, {"C#"},
        R"lit((?i)\b\w*(?:passw(?:or)?d|secret|pwd)\w*\s*=\s*"[^"]+")lit",
        "A password-like identifier is assigned a string literal; anyone with the source or the "
        "compiled binary can recover it.",
        "Load credentials from a protected secret store or configuration at run time."));
    r.push_back(pattern_rule(
        "cs.case-insensitive-password", unsafe + "Unsafe Password Management", Severity::Medium, {"C#"},
        R"((?i)passw(?:or)?d\w*(?:\.Text)?\s*\.\s*To(?:Upper|Lower)(?:Invariant)?\s*\()",
        "A password value is case-folded, so passwords are compared case-insensitively; this shrinks "
        "the key space for brute-force and dictionary attacks.",
        "Compare passwords exactly, ideally as salted hashes."));
    r.push_back(pattern_rule(
        "cs.insecure-sensitive-storage", unsafe + "Insecure Storage of Sensitive Information", Severity::Medium,
        {"C#"},
        R"(\b(?:[Ss]tring|byte\s*\[\s*\])\s+\w*(?i:key|password|passwd|pwd|secret|passphrase)\w*\s*(?:=\s*null\b|;))",
        "Sensitive transient data (keys, passwords) is held in a plain string or byte array, which "
        "stays readable in memory until collected.",
        "Hold secrets in SecureString or a pinned buffer that is cleared after use."));
    r.push_back(pattern_rule(
        "cs.debug-enabled", unsafe + ".NET Debugging Enabled", Severity::Medium, {},
        R"lit((?i)<compilation\b[^>]*\bdebug\s*=\s*"true")lit",
        "The application configuration enables debug compilation, exposing diagnostics and slowing "
        "production builds.",
        "Set debug=\"false\" in production configuration.", MatcherKind::ConfigCheck));
    r.push_back(pattern_rule(
        "cs.potential-xss", unsafe + "Potential XSS", Severity::Medium, {"C#"},
        R"(\bResponse\.Write\s*\(|\.InnerHtml\s*=|\bHtml\.Raw\s*\()",
        "Content is written to the page without encoding; attacker-controlled input could inject "
        "script.",
        "HTML-encode output (HttpUtility.HtmlEncode, Razor auto-encoding)."));
    r.push_back(pattern_rule(
        "cs.thread-lock-perf", unsafe + "Thread Locks - Possible Performance Impact", Severity::Low, {"C#"},
        R"(\block\s*\(|\bMonitor\.(?:Enter|TryEnter)\s*\()",
        "A thread lock serializes this section; contention can degrade throughput.",
        "Keep locked regions short and avoid locking on publicly reachable objects."));
    r.push_back(pattern_rule(
        "cs.loadxml", unsafe + "LoadXml", Severity::Standard, {"C#"}, R"(\.LoadXml\s*\()",
        "XML is parsed from a string; with DTD processing enabled this may permit external entity "
        "attacks.",
        "Disable DTD processing and set XmlResolver to null before loading untrusted XML."));
    r.push_back(pattern_rule(
        "cs.toctou", unsafe + "Potential TOCTOU (Time Of Check, Time Of Use) Vulnerability", Severity::Standard,
        {"C#"}, R"(\b(?:File|Directory)\.Exists\s*\()",
        "A file-system existence check precedes use of the path; the file can change between the "
        "check and the use.",
        "Open the file directly and handle the failure instead of checking first."));
    r.push_back(pattern_rule(
        "cs.url-from-variable", unsafe + "URL Request Gets Path from Variable", Severity::Standard, {"C#"},
        R"(\b(?:(?:Http)?WebRequest\.Create|new\s+Uri|DownloadString|DownloadData|DownloadFile|OpenRead|GetAsync|PostAsync|GetStringAsync)\s*\(\s*[A-Za-z_])",
        "A network request takes its URL from a variable; if the value is attacker-influenced the "
        "request can be redirected.",
        "Validate the URL against an allow-list of hosts and schemes."));
    r.push_back(pattern_rule(
        "cs.weak-random", unsafe + "Non-Cryptographic Random Number Generator", Severity::PotentialIssue,
        {"C#"}, R"(\bnew\s+Random\s*\()",
        "System.Random is predictable and unsuitable for tokens or keys.",
        "Use RandomNumberGenerator for security-relevant values."));
    r.push_back(pattern_rule(
        "any.suspicious-comment", "Comment Indicates Potentially Unfinished Code", Severity::SuspiciousComment,
        {}, R"(\b(?:TODO|FIXME|HACK|XXX|BUG)\b)",
        "A comment marks unfinished or known-broken code; it may also reveal implementation details.",
        "Resolve the noted work or move it to the issue tracker.", MatcherKind::Pattern, MatchTarget::Comment));
    return pack;
}

}  // namespace vscan
