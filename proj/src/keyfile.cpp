#include "vscan/keyfile.hpp"

#include "vscan/corpus.hpp"

namespace vscan {

std::string trim(std::string_view s) {
    const auto first = s.find_first_not_of(" \t\r\n");
    if (first == std::string_view::npos) return {};
    const auto last = s.find_last_not_of(" \t\r\n");
    return std::string(s.substr(first, last - first + 1));
}

const KeyEntry* KeySection::find(std::string_view key) const {
    const KeyEntry* hit = nullptr;
    for (const auto& e : entries)
        if (e.key == key) hit = &e;
    return hit;
}

std::optional<std::string> KeySection::get(std::string_view key) const {
    if (const KeyEntry* e = find(key)) return e->value;
    return std::nullopt;
}

KeyFile parse_keyfile(std::string_view text) {
    KeyFile out;
    std::size_t lineno = 0;
    for (std::string_view raw : split_lines(text)) {
        ++lineno;
        const std::string line = trim(raw);
        if (line.empty() || line.front() == '#' || line.front() == ';') continue;
        if (line.front() == '[') {
            if (line.back() != ']' || line.size() < 3) {
                out.errors.push_back({lineno, "malformed section header"});
                continue;
            }
            out.sections.push_back({trim(std::string_view(line).substr(1, line.size() - 2)), lineno, {}});
            continue;
        }
        const auto eq = line.find('=');
        if (eq == std::string::npos) {
            out.errors.push_back({lineno, "expected 'key = value'"});
            continue;
        }
        if (out.sections.empty()) {
            out.errors.push_back({lineno, "entry outside of any section"});
            continue;
        }
        std::string key = trim(std::string_view(line).substr(0, eq));
        if (key.empty()) {
            out.errors.push_back({lineno, "empty key"});
            continue;
        }
        out.sections.back().entries.push_back({std::move(key), trim(std::string_view(line).substr(eq + 1)), lineno});
    }
    return out;
}

std::vector<std::string> split_list(std::string_view value) {
    std::vector<std::string> out;
    std::size_t start = 0;
    while (start <= value.size()) {
        const auto comma = value.find(',', start);
        const auto end = comma == std::string_view::npos ? value.size() : comma;
        std::string item = trim(value.substr(start, end - start));
        if (!item.empty()) out.push_back(std::move(item));
        if (comma == std::string_view::npos) break;
        start = comma + 1;
    }
    return out;
}

}  // namespace vscan
