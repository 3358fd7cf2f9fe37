#include "vscan/glob.hpp"

namespace vscan {

namespace {

bool match_from(std::string_view p, std::string_view s) {
    while (!p.empty()) {
        if (p.substr(0, 2) == "**") {
            std::string_view rest = p.substr(2);
            // "**/" may swallow zero directories.
            if (!rest.empty() && rest.front() == '/' && match_from(rest.substr(1), s)) return true;
            for (std::size_t i = 0; i <= s.size(); ++i)
                if (match_from(rest, s.substr(i))) return true;
            return false;
        }
        if (p.front() == '*') {
            std::string_view rest = p.substr(1);
            for (std::size_t i = 0; i <= s.size(); ++i) {
                if (match_from(rest, s.substr(i))) return true;
                if (i < s.size() && s[i] == '/') break;
            }
            return false;
        }
        if (s.empty()) return false;
        if (p.front() == '?') {
            if (s.front() == '/') return false;
        } else if (p.front() != s.front()) {
            return false;
        }
        p.remove_prefix(1);
        s.remove_prefix(1);
    }
    return s.empty();
}

}  // namespace

bool glob_match(std::string_view pattern, std::string_view path) { return match_from(pattern, path); }

bool glob_match_any(const std::vector<std::string>& patterns, std::string_view path) {
    for (const auto& p : patterns)
        if (glob_match(p, path)) return true;
    return false;
}

}  // namespace vscan
