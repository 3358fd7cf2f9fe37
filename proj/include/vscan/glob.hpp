#pragma once

#include <string>
#include <string_view>
#include <vector>

namespace vscan {

/// Matches a '/'-separated relative path against a glob.
///
///   `*`   any run of characters except '/'
///   `?`   one character except '/'
///   `**`  any run of characters including '/'; a `**/` segment also matches
///         zero directories, so `**/*.sql` matches `a.sql` and `x/y/a.sql`.
bool glob_match(std::string_view pattern, std::string_view path);

bool glob_match_any(const std::vector<std::string>& patterns, std::string_view path);

}  // namespace vscan
