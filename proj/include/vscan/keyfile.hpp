#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace vscan {

/// Sectioned `key = value` text shared by rule files and config files.
///
///     # comment
///     [section]
///     key = value
///
/// Sections may repeat. Values are taken verbatim after trimming, so regex
/// backslashes need no escaping. `#` starts a comment only at line start.
struct KeyEntry {
    std::string key;
    std::string value;
    std::size_t line = 0;
};

struct KeySection {
    std::string name;
    std::size_t line = 0;
    std::vector<KeyEntry> entries;

    const KeyEntry* find(std::string_view key) const;
    std::optional<std::string> get(std::string_view key) const;
};

struct KeyFileError {
    std::size_t line;
    std::string message;
};

struct KeyFile {
    std::vector<KeySection> sections;
    std::vector<KeyFileError> errors;
};

KeyFile parse_keyfile(std::string_view text);

/// Splits a comma-separated list, trimming items and dropping empties.
std::vector<std::string> split_list(std::string_view value);

std::string trim(std::string_view s);

}  // namespace vscan
