#include "vscan/corpus.hpp"

#include "vscan/digest.hpp"
#include "vscan/error.hpp"
#include "vscan/glob.hpp"

#include <algorithm>
#include <atomic>
#include <cctype>
#include <chrono>
#include <ctime>
#include <fstream>
#include <sstream>
#include <thread>

namespace fs = std::filesystem;

namespace vscan {

namespace {

std::string lowercase(std::string_view s) {
    std::string out(s);
    for (char& c : out) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
    return out;
}

bool is_space(char c) { return c == ' ' || c == '\t' || c == '\r' || c == '\v' || c == '\f'; }

LanguageProfile c_family(std::string name, std::vector<std::string> exts, std::string quotes) {
    return LanguageProfile{std::move(name), std::move(exts), {"//"}, {{"/*", "*/"}}, std::move(quotes), true};
}

}  // namespace

// ---------------------------------------------------------------------------
// LanguageRegistry

namespace {

LanguageRegistry make_builtin() {
    LanguageRegistry reg;
    reg.add(c_family("C", {".c"}, "\"'"));
    reg.add(c_family("C++", {".cc", ".cpp", ".cxx", ".c++", ".h", ".hh", ".hpp", ".hxx", ".inl", ".ipp"}, "\"'"));
    reg.add(c_family("C#", {".cs"}, "\"'"));
    reg.add(c_family("Java", {".java"}, "\"'"));
    reg.add(LanguageProfile{"SQL", {".sql"}, {"--"}, {{"/*", "*/"}}, "'\"", false});
    return reg;
}

}  // namespace

const LanguageRegistry& LanguageRegistry::builtin() {
    static const LanguageRegistry reg = make_builtin();
    return reg;
}

const LanguageProfile& LanguageRegistry::generic() {
    static const LanguageProfile profile = c_family(std::string(kUnknownLanguage), {}, "\"'");
    return profile;
}

void LanguageRegistry::add(LanguageProfile profile) {
    if (profile.name.empty()) throw ConfigError("language profile without a name");
    for (const auto& [open, close] : profile.block_comment_pairs)
        if (open.empty() || close.empty())
            throw ConfigError("language '" + profile.name + "' has an empty block comment marker");
    for (auto& ext : profile.extensions) {
        ext = lowercase(ext);
        if (by_extension_.count(ext)) throw ConfigError("extension '" + ext + "' registered twice");
    }
    const std::size_t idx = profiles_.size();
    for (const auto& ext : profile.extensions) by_extension_[ext] = idx;
    profiles_.push_back(std::move(profile));
}

void LanguageRegistry::map_extension(std::string extension, std::string_view language) {
    extension = lowercase(extension);
    if (extension.empty() || extension.front() != '.') extension.insert(extension.begin(), '.');
    for (std::size_t i = 0; i < profiles_.size(); ++i) {
        if (profiles_[i].name != language) continue;
        if (auto it = by_extension_.find(extension); it != by_extension_.end()) {
            auto& old = profiles_[it->second].extensions;
            old.erase(std::remove(old.begin(), old.end(), extension), old.end());
        }
        by_extension_[extension] = i;
        profiles_[i].extensions.push_back(extension);
        return;
    }
    throw ConfigError("cannot map '" + extension + "' to unregistered language '" + std::string(language) + "'");
}

std::string LanguageRegistry::detect(std::string_view relative_path) const {
    const auto slash = relative_path.find_last_of("/\\");
    const std::string_view name = slash == std::string_view::npos ? relative_path : relative_path.substr(slash + 1);
    const auto dot = name.find_last_of('.');
    if (dot == std::string_view::npos || dot == 0) return std::string(kUnknownLanguage);
    auto it = by_extension_.find(lowercase(name.substr(dot)));
    if (it == by_extension_.end()) return std::string(kUnknownLanguage);
    return profiles_[it->second].name;
}

const LanguageProfile& LanguageRegistry::profile(std::string_view language) const {
    for (const auto& p : profiles_)
        if (p.name == language) return p;
    return generic();
}

bool LanguageRegistry::has_language(std::string_view language) const {
    return std::any_of(profiles_.begin(), profiles_.end(), [&](const auto& p) { return p.name == language; });
}

std::string detect_language(std::string_view relative_path) {
    return LanguageRegistry::builtin().detect(relative_path);
}

std::string_view to_string(LineClass c) noexcept {
    switch (c) {
        case LineClass::Code: return "code";
        case LineClass::Comment: return "comment";
        case LineClass::Blank: return "blank";
    }
    return "?";
}

// ---------------------------------------------------------------------------
// Line classification

std::vector<std::string_view> split_lines(std::string_view content) {
    std::vector<std::string_view> lines;
    std::size_t start = 0;
    while (start < content.size()) {
        std::size_t nl = content.find('\n', start);
        std::size_t end = nl == std::string_view::npos ? content.size() : nl;
        std::string_view line = content.substr(start, end - start);
        if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
        lines.push_back(line);
        if (nl == std::string_view::npos) break;
        start = nl + 1;
    }
    return lines;
}

LineAnalysis analyze_lines(std::string_view content, const LanguageProfile& profile) {
    LineAnalysis out;
    const auto raw_lines = split_lines(content);
    out.classes.reserve(raw_lines.size());
    out.lines.reserve(raw_lines.size());

    const auto starts_with = [](std::string_view s, std::size_t i, std::string_view m) {
        return s.size() - i >= m.size() && s.compare(i, m.size(), m) == 0;
    };

    bool in_block = false;
    std::string_view block_close;

    for (std::string_view line : raw_lines) {
        LineView view{line, {}, std::string(line), std::string(line.size(), ' ')};
        const auto blank_code = [&](std::size_t from, std::size_t n) {
            std::fill_n(view.code_text.begin() + static_cast<std::ptrdiff_t>(from), std::min(n, line.size() - from), ' ');
        };
        bool has_code = false;
        bool has_comment = false;
        bool in_string = false;
        char delim = 0;

        std::size_t i = 0;
        while (i < line.size()) {
            const char c = line[i];
            if (in_block) {
                if (starts_with(line, i, block_close)) {
                    view.comment_text.append(block_close);
                    blank_code(i, block_close.size());
                    has_comment = true;
                    i += block_close.size();
                    in_block = false;
                    continue;
                }
                if (!is_space(c)) has_comment = true;
                view.comment_text.push_back(c);
                blank_code(i, 1);
                ++i;
                continue;
            }
            if (in_string) {
                has_code = true;
                if (profile.backslash_escapes && c == '\\') {
                    i += 2;
                    continue;
                }
                if (c == delim) {
                    in_string = false;
                    view.masked_code[i] = c;
                }
                ++i;
                continue;
            }

            bool consumed = false;
            for (const auto& [open, close] : profile.block_comment_pairs) {
                if (starts_with(line, i, open)) {
                    view.comment_text.append(open);
                    blank_code(i, open.size());
                    has_comment = true;
                    in_block = true;
                    block_close = close;
                    i += open.size();
                    consumed = true;
                    break;
                }
            }
            if (consumed) continue;

            bool line_comment = false;
            for (const auto& marker : profile.line_comment_markers) {
                if (starts_with(line, i, marker)) {
                    view.comment_text.append(line.substr(i));
                    blank_code(i, line.size() - i);
                    has_comment = true;
                    line_comment = true;
                    break;
                }
            }
            if (line_comment) break;

            if (profile.string_delimiters.find(c) != std::string::npos) {
                in_string = true;
                delim = c;
                has_code = true;
                view.masked_code[i] = c;
                ++i;
                continue;
            }
            if (!is_space(c)) has_code = true;
            view.masked_code[i] = c;
            ++i;
        }

        LineClass cls = has_code ? LineClass::Code : has_comment ? LineClass::Comment : LineClass::Blank;
        switch (cls) {
            case LineClass::Code: ++out.counts.code; break;
            case LineClass::Comment: ++out.counts.comment; break;
            case LineClass::Blank: ++out.counts.blank; break;
        }
        out.classes.push_back(cls);
        out.lines.push_back(std::move(view));
    }
    out.unterminated_block_comment = in_block;
    return out;
}

Classification classify_lines(std::string_view content, const LanguageProfile& profile) {
    LineAnalysis a = analyze_lines(content, profile);
    return Classification{std::move(a.classes), a.counts, a.unterminated_block_comment};
}

std::string sanitize_utf8(std::string_view bytes) {
    std::string out;
    out.reserve(bytes.size());
    const auto* s = reinterpret_cast<const unsigned char*>(bytes.data());
    const std::size_t n = bytes.size();
    std::size_t i = 0;
    while (i < n) {
        const unsigned char c = s[i];
        std::size_t len = 0;
        std::uint32_t min = 0;
        if (c < 0x80) {
            out.push_back(static_cast<char>(c));
            ++i;
            continue;
        }
        if ((c & 0xE0) == 0xC0) len = 2, min = 0x80;
        else if ((c & 0xF0) == 0xE0) len = 3, min = 0x800;
        else if ((c & 0xF8) == 0xF0) len = 4, min = 0x10000;
        bool ok = len != 0 && i + len <= n;
        std::uint32_t cp = len == 2 ? (c & 0x1F) : len == 3 ? (c & 0x0F) : (c & 0x07);
        for (std::size_t k = 1; ok && k < len; ++k) {
            if ((s[i + k] & 0xC0) != 0x80) ok = false;
            else cp = (cp << 6) | (s[i + k] & 0x3F);
        }
        if (ok && (cp < min || cp > 0x10FFFF || (cp >= 0xD800 && cp <= 0xDFFF))) ok = false;
        if (ok) {
            out.append(bytes.substr(i, len));
            i += len;
        } else {
            out.append("\xEF\xBF\xBD");
            ++i;
        }
    }
    return out;
}

bool looks_binary(std::string_view bytes) {
    return bytes.substr(0, 8192).find('\0') != std::string_view::npos;
}

// ---------------------------------------------------------------------------
// Ingest

std::string read_file(const fs::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoError("cannot open " + path.string());
    std::ostringstream ss;
    ss << in.rdbuf();
    if (in.bad()) throw IoError("cannot read " + path.string());
    return std::move(ss).str();
}

std::string utc_timestamp() {
    const std::time_t now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
    std::tm tm{};
    gmtime_r(&now, &tm);
    char buf[32];
    std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
    return buf;
}

LanguageTotals CorpusInventory::grand_total() const {
    LanguageTotals t;
    for (const auto& [lang, lt] : totals) {
        t.files += lt.files;
        t.physical_lines += lt.physical_lines;
        t.code_lines += lt.code_lines;
        t.comment_lines += lt.comment_lines;
        t.blank_lines += lt.blank_lines;
    }
    return t;
}

namespace {

struct IngestSlot {
    bool keep = false;
    SourceFile file;
    std::string warning;
};

IngestSlot ingest_one(const fs::path& root, const std::string& rel, const LanguageRegistry& reg) {
    IngestSlot slot;
    std::string bytes;
    try {
        bytes = read_file(root / rel);
    } catch (const IoError& e) {
        slot.warning = rel + ": " + e.what();
        return slot;
    }
    if (looks_binary(bytes)) return slot;

    const std::string text = sanitize_utf8(bytes);
    SourceFile f;
    f.path = rel;
    f.language = reg.detect(rel);
    const Classification cls = classify_lines(text, reg.profile(f.language));
    f.physical_lines = cls.counts.physical();
    f.code_lines = cls.counts.code;
    f.comment_lines = cls.counts.comment;
    f.blank_lines = cls.counts.blank;
    f.digest = sha256_hex(bytes);
    if (cls.unterminated_block_comment) slot.warning = rel + ": unterminated block comment at end of file";
    slot.keep = true;
    slot.file = std::move(f);
    return slot;
}

}  // namespace

CorpusInventory ingest(const fs::path& root, const IngestOptions& options) {
    std::error_code ec;
    if (!fs::is_directory(root, ec)) throw ConfigError("corpus root is not a readable directory: " + root.string());

    const LanguageRegistry& reg = options.registry ? *options.registry : LanguageRegistry::builtin();

    CorpusInventory inv;
    inv.root = fs::absolute(root).lexically_normal();
    inv.scanned_at = utc_timestamp();

    std::vector<std::string> candidates;
    fs::recursive_directory_iterator it(root, fs::directory_options::skip_permission_denied, ec);
    if (ec) throw ConfigError("cannot read corpus root " + root.string() + ": " + ec.message());
    for (; it != fs::recursive_directory_iterator(); it.increment(ec)) {
        if (ec) {
            inv.warnings.push_back("directory walk: " + ec.message());
            ec.clear();
            continue;
        }
        if (!it->is_regular_file(ec)) continue;
        std::string rel = fs::relative(it->path(), root, ec).generic_string();
        if (ec || rel.empty()) continue;
        if (!options.include_globs.empty() && !glob_match_any(options.include_globs, rel)) continue;
        if (glob_match_any(options.exclude_globs, rel)) continue;
        candidates.push_back(std::move(rel));
    }
    std::sort(candidates.begin(), candidates.end());
    candidates.erase(std::unique(candidates.begin(), candidates.end()), candidates.end());

    std::vector<IngestSlot> slots(candidates.size());
    unsigned jobs = options.jobs ? options.jobs : std::max(1u, std::thread::hardware_concurrency());
    jobs = static_cast<unsigned>(std::min<std::size_t>(jobs, std::max<std::size_t>(1, candidates.size())));
    std::atomic<std::size_t> next{0};
    auto worker = [&] {
        for (std::size_t i = next++; i < candidates.size(); i = next++)
            slots[i] = ingest_one(root, candidates[i], reg);
    };
    {
        std::vector<std::jthread> pool;
        for (unsigned j = 1; j < jobs; ++j) pool.emplace_back(worker);
        worker();
    }

    for (auto& slot : slots) {
        const bool unreadable = !slot.keep && !slot.warning.empty();
        if (!slot.warning.empty()) inv.warnings.push_back(std::move(slot.warning));
        if (!slot.keep) {
            if (!unreadable) ++inv.skipped_binary;
            continue;
        }
        auto& t = inv.totals[slot.file.language];
        ++t.files;
        t.physical_lines += slot.file.physical_lines;
        t.code_lines += slot.file.code_lines;
        t.comment_lines += slot.file.comment_lines;
        t.blank_lines += slot.file.blank_lines;
        inv.files.push_back(std::move(slot.file));
    }
    return inv;
}

CorpusInventory ingest(const fs::path& root, std::vector<std::string> include_globs,
                       std::vector<std::string> exclude_globs) {
    IngestOptions opts;
    opts.include_globs = std::move(include_globs);
    opts.exclude_globs = std::move(exclude_globs);
    return ingest(root, opts);
}

}  // namespace vscan
