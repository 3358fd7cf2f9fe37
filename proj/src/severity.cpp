#include "vscan/severity.hpp"

#include <cctype>

namespace vscan {

std::string_view to_token(Severity s) noexcept {
    switch (s) {
        case Severity::Critical: return "critical";
        case Severity::High: return "high";
        case Severity::Medium: return "medium";
        case Severity::Low: return "low";
        case Severity::Standard: return "standard";
        case Severity::PotentialIssue: return "potential_issue";
        case Severity::SuspiciousComment: return "suspicious_comment";
    }
    return "unknown";
}

std::string_view to_label(Severity s) noexcept {
    switch (s) {
        case Severity::Critical: return "Critical";
        case Severity::High: return "High";
        case Severity::Medium: return "Medium";
        case Severity::Low: return "Low";
        case Severity::Standard: return "Standard";
        case Severity::PotentialIssue: return "Potential Issue";
        case Severity::SuspiciousComment: return "Suspicious Comment";
    }
    return "Unknown";
}

std::optional<Severity> parse_severity(std::string_view text) {
    std::string key;
    for (char c : text) {
        if (c == ' ' || c == '_' || c == '-' || c == '\t') continue;
        key.push_back(static_cast<char>(std::tolower(static_cast<unsigned char>(c))));
    }
    if (key.empty()) return std::nullopt;
    for (Severity s : kAllSeverities) {
        std::string canon;
        for (char c : to_token(s))
            if (c != '_') canon.push_back(c);
        if (key == canon) return s;
    }
    return std::nullopt;
}

}  // namespace vscan
