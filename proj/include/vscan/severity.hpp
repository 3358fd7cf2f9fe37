#pragma once

#include <array>
#include <optional>
#include <string>
#include <string_view>

namespace vscan {

/// Seven-level severity scale. The underlying value is the rank: 1 is most severe.
enum class Severity : int {
    Critical = 1,
    High = 2,
    Medium = 3,
    Low = 4,
    Standard = 5,
    PotentialIssue = 6,
    SuspiciousComment = 7,
};

inline constexpr std::array<Severity, 7> kAllSeverities = {
    Severity::Critical, Severity::High,           Severity::Medium,           Severity::Low,
    Severity::Standard, Severity::PotentialIssue, Severity::SuspiciousComment,
};

constexpr int rank(Severity s) noexcept { return static_cast<int>(s); }

/// Machine token: "critical", "high", ..., "potential_issue", "suspicious_comment".
std::string_view to_token(Severity s) noexcept;

/// Human label: "Critical", ..., "Potential Issue", "Suspicious Comment".
std::string_view to_label(Severity s) noexcept;

/// Case-insensitive; ignores spaces, '_' and '-', so "Suspicious Comment",
/// "suspicious_comment" and "SUSPICIOUSCOMMENT" all parse.
std::optional<Severity> parse_severity(std::string_view text);

}  // namespace vscan
