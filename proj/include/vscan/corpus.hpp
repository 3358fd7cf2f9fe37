#pragma once

#include <cstddef>
#include <filesystem>
#include <map>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace vscan {

inline constexpr std::string_view kUnknownLanguage = "unknown";

struct LanguageProfile {
    std::string name;
    std::vector<std::string> extensions;  ///< lowercase, with leading dot
    std::vector<std::string> line_comment_markers;
    std::vector<std::pair<std::string, std::string>> block_comment_pairs;
    std::string string_delimiters;
    bool backslash_escapes = true;  ///< `\x` inside a string never closes it
};

/// Extension -> profile lookup. Extensions are unique across profiles.
class LanguageRegistry {
  public:
    /// C, C++, C#, Java and SQL. Copy it to customize.
    static const LanguageRegistry& builtin();

    /// Throws ConfigError on a duplicate extension or an empty block marker.
    void add(LanguageProfile profile);

    /// Re-points `extension` at an already registered language.
    void map_extension(std::string extension, std::string_view language);

    /// Case-insensitive match on the final extension; `unknown` when unmatched.
    std::string detect(std::string_view relative_path) const;

    /// Profile by name; unknown names yield the generic C-style fallback.
    const LanguageProfile& profile(std::string_view language) const;

    bool has_language(std::string_view language) const;
    const std::vector<LanguageProfile>& profiles() const noexcept { return profiles_; }

    /// C-style comments and quotes, used for `unknown` files.
    static const LanguageProfile& generic();

  private:
    std::vector<LanguageProfile> profiles_;
    std::map<std::string, std::size_t> by_extension_;
};

std::string detect_language(std::string_view relative_path);

enum class LineClass { Code, Comment, Blank };

std::string_view to_string(LineClass c) noexcept;

struct LineCounts {
    std::size_t code = 0;
    std::size_t comment = 0;
    std::size_t blank = 0;

    std::size_t physical() const noexcept { return code + comment + blank; }
    bool operator==(const LineCounts&) const = default;
};

/// One physical line split into the views the engine matches against.
struct LineView {
    std::string_view raw;      ///< without the line terminator
    std::string comment_text;  ///< characters inside comment regions, markers included
    std::string code_text;     ///< raw with comment regions blanked
    std::string masked_code;   ///< code_text with string contents blanked too
};

struct LineAnalysis {
    std::vector<LineClass> classes;
    std::vector<LineView> lines;
    LineCounts counts;
    bool unterminated_block_comment = false;
};

/// Splits on '\n', dropping a trailing '\r'. A final terminator does not start
/// a new line; empty content has zero lines.
std::vector<std::string_view> split_lines(std::string_view content);

/// Single pass over `content` tracking in-block-comment and in-string state.
/// At each position outside strings and comments, block openers are tried
/// first, then line markers, then string delimiters. Strings end at end of
/// line. A whitespace-only line is blank even inside a block comment; a line
/// with any non-comment, non-whitespace character is code.
LineAnalysis analyze_lines(std::string_view content, const LanguageProfile& profile);

struct Classification {
    std::vector<LineClass> classes;
    LineCounts counts;
    bool unterminated_block_comment = false;
};

Classification classify_lines(std::string_view content, const LanguageProfile& profile);

/// Replaces invalid UTF-8 sequences with U+FFFD.
std::string sanitize_utf8(std::string_view bytes);

/// True when a NUL byte occurs in the first 8 KiB.
bool looks_binary(std::string_view bytes);

struct SourceFile {
    std::string path;  ///< relative to the corpus root, '/'-separated
    std::string language;
    std::size_t physical_lines = 0;
    std::size_t code_lines = 0;
    std::size_t comment_lines = 0;
    std::size_t blank_lines = 0;
    std::string digest;

    bool operator==(const SourceFile&) const = default;
};

struct LanguageTotals {
    std::size_t files = 0;
    std::size_t physical_lines = 0;
    std::size_t code_lines = 0;
    std::size_t comment_lines = 0;
    std::size_t blank_lines = 0;

    bool operator==(const LanguageTotals&) const = default;
};

struct CorpusInventory {
    std::filesystem::path root;
    std::vector<SourceFile> files;  ///< sorted by path
    std::map<std::string, LanguageTotals> totals;
    std::string scanned_at;
    std::vector<std::string> warnings;
    std::size_t skipped_binary = 0;

    LanguageTotals grand_total() const;
};

struct IngestOptions {
    std::vector<std::string> include_globs;  ///< empty means everything
    std::vector<std::string> exclude_globs;
    unsigned jobs = 0;  ///< 0 picks hardware concurrency
    const LanguageRegistry* registry = nullptr;  ///< null uses the built-in registry
};

/// Inventories every text file under `root`. Read-only with respect to the
/// corpus. Throws ConfigError when `root` is not a readable directory.
CorpusInventory ingest(const std::filesystem::path& root, const IngestOptions& options = {});

CorpusInventory ingest(const std::filesystem::path& root, std::vector<std::string> include_globs,
                       std::vector<std::string> exclude_globs);

/// Reads a whole file as bytes; throws IoError.
std::string read_file(const std::filesystem::path& path);

/// UTC "YYYY-MM-DDTHH:MM:SSZ".
std::string utc_timestamp();

}  // namespace vscan
