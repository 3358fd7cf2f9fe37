#include "vscan/engine.hpp"

#include <boost/regex.hpp>

#include <algorithm>
#include <cctype>
#include <map>
#include <set>

namespace vscan {

namespace {

enum class EventKind { Alloc, Rebind, Release, Open, Close };

struct Event {
    std::size_t line;  // 1-based
    std::size_t column;
    EventKind kind;
    std::string name;
};

bool ident_char(char c) { return std::isalnum(static_cast<unsigned char>(c)) || c == '_'; }

std::size_t skip_spaces(std::string_view s, std::size_t i) {
    while (i < s.size() && (s[i] == ' ' || s[i] == '\t')) ++i;
    return i;
}

// Skips a balanced "( ... )" starting at s[i] == '('. Returns npos if unbalanced.
std::size_t skip_parens(std::string_view s, std::size_t i) {
    int depth = 0;
    for (; i < s.size(); ++i) {
        if (s[i] == '(') ++depth;
        else if (s[i] == ')' && --depth == 0) return i + 1;
    }
    return std::string_view::npos;
}

// Reads `a`, `a.b`, `a->b` forward from i. Empty when no identifier starts there.
std::string read_name(std::string_view s, std::size_t& i) {
    std::string name;
    while (i < s.size()) {
        if (!ident_char(s[i]) || std::isdigit(static_cast<unsigned char>(s[i]))) break;
        while (i < s.size() && ident_char(s[i])) name.push_back(s[i++]);
        if (i < s.size() && s[i] == '.') {
            name.push_back('.');
            ++i;
        } else if (s.substr(i, 2) == "->") {
            name.append("->");
            i += 2;
        } else {
            break;
        }
    }
    while (!name.empty() && (name.back() == '.' || name.back() == '>' || name.back() == '-')) name.pop_back();
    return name;
}

boost::match_flag_type flags_at(std::string_view s, std::string_view::const_iterator it) {
    return it == s.begin() ? boost::match_default : boost::match_prev_avail;
}

}  // namespace

struct PairedResourceAnalyzer::Impl {
    boost::regex alloc;
    boost::regex release;
    boost::regex assign{R"((?<![\w.>])([A-Za-z_]\w*(?:(?:\.|->)[A-Za-z_]\w*)*)\s*=(?!=))"};

    void collect(std::string_view code, std::size_t line, std::vector<Event>& out) const {
        for (std::size_t c = 0; c < code.size(); ++c) {
            if (code[c] == '{') out.push_back({line, c, EventKind::Open, {}});
            else if (code[c] == '}') out.push_back({line, c, EventKind::Close, {}});
        }

        using It = std::string_view::const_iterator;
        boost::match_results<It> m;
        for (It it = code.begin(); boost::regex_search(it, code.end(), m, assign, flags_at(code, it)); it = m[0].second) {
            const std::string name = m[1].str();
            std::size_t rhs = skip_spaces(code, static_cast<std::size_t>(m[0].second - code.begin()));
            // Skip C-style casts: `(char *)malloc(n)`.
            while (rhs < code.size() && code[rhs] == '(') {
                const std::size_t after = skip_parens(code, rhs);
                if (after == std::string_view::npos) break;
                const std::size_t next = skip_spaces(code, after);
                if (next >= code.size() || !(ident_char(code[next]) || code[next] == '(')) break;
                rhs = next;
            }
            boost::match_results<It> am;
            const bool is_alloc =
                rhs < code.size() &&
                boost::regex_search(code.begin() + static_cast<std::ptrdiff_t>(rhs), code.end(), am, alloc,
                                    boost::match_continuous | boost::match_prev_avail);
            out.push_back({line, static_cast<std::size_t>(m[1].first - code.begin()),
                           is_alloc ? EventKind::Alloc : EventKind::Rebind, name});
        }

        for (It it = code.begin(); boost::regex_search(it, code.end(), m, release, flags_at(code, it)); it = m[0].second) {
            if (m[0].length() == 0) break;
            std::size_t i = skip_spaces(code, static_cast<std::size_t>(m[0].second - code.begin()));
            while (i < code.size() && code[i] == '(') {
                const std::size_t after = skip_parens(code, i);
                if (after == std::string_view::npos) break;
                i = skip_spaces(code, after);
            }
            std::string name = read_name(code, i);
            i = skip_spaces(code, i);
            if (name.empty() || i >= code.size() || (code[i] != ')' && code[i] != ',')) continue;
            out.push_back({line, static_cast<std::size_t>(m[0].first - code.begin()), EventKind::Release,
                           std::move(name)});
        }
    }
};

PairedResourceAnalyzer::PairedResourceAnalyzer(const Rule& rule)
    : impl_(std::make_unique<Impl>()), check_(rule.check) {
    impl_->alloc = boost::regex(rule.alloc_pattern, boost::regex::perl);
    impl_->release = boost::regex(rule.release_pattern, boost::regex::perl);
}

PairedResourceAnalyzer::~PairedResourceAnalyzer() = default;
PairedResourceAnalyzer::PairedResourceAnalyzer(PairedResourceAnalyzer&&) noexcept = default;
PairedResourceAnalyzer& PairedResourceAnalyzer::operator=(PairedResourceAnalyzer&&) noexcept = default;

std::vector<std::size_t> PairedResourceAnalyzer::run(const LineAnalysis& lines,
                                                     std::vector<std::string>& warnings) const {
    std::vector<Event> events;
    for (std::size_t i = 0; i < lines.lines.size(); ++i) {
        const std::size_t first = events.size();
        impl_->collect(lines.lines[i].masked_code, i + 1, events);
        std::sort(events.begin() + static_cast<std::ptrdiff_t>(first), events.end(),
                  [](const Event& a, const Event& b) { return a.column < b.column; });
    }

    bool balanced = true;
    {
        long depth = 0;
        for (const auto& e : events) {
            if (e.kind == EventKind::Open) ++depth;
            else if (e.kind == EventKind::Close && --depth < 0) balanced = false;
        }
        if (depth != 0) balanced = false;
    }
    if (!balanced) warnings.push_back("unbalanced braces; paired-resource analysis used whole-file scope");

    struct NameState {
        std::vector<std::size_t> pending_allocs;
        bool released = false;
    };
    std::map<std::string, NameState> file_scope;
    std::map<std::string, NameState> block_scope;
    std::set<std::size_t> hits;
    long depth = 0;

    auto flush = [&](std::map<std::string, NameState>& scope) {
        if (check_ == PairedCheck::Leak)
            for (const auto& [name, st] : scope) hits.insert(st.pending_allocs.begin(), st.pending_allocs.end());
        scope.clear();
    };

    for (const auto& e : events) {
        if (e.kind == EventKind::Open || e.kind == EventKind::Close) {
            if (!balanced) continue;
            if (e.kind == EventKind::Open) {
                ++depth;
            } else if (--depth == 0) {
                flush(block_scope);
            }
            continue;
        }
        auto& scope = depth > 0 ? block_scope : file_scope;
        NameState& st = scope[e.name];
        switch (e.kind) {
            case EventKind::Alloc:
                st.pending_allocs.push_back(e.line);
                st.released = false;
                break;
            case EventKind::Rebind:
                st.released = false;
                break;
            case EventKind::Release:
                if (st.released && check_ == PairedCheck::DoubleRelease) hits.insert(e.line);
                st.released = true;
                st.pending_allocs.clear();
                break;
            default: break;
        }
    }
    flush(block_scope);
    flush(file_scope);
    return {hits.begin(), hits.end()};
}

std::vector<std::size_t> analyze_paired_resources(std::string_view content, const LanguageProfile& profile,
                                                  const Rule& rule, std::vector<std::string>* warnings) {
    std::vector<std::string> local;
    const LineAnalysis lines = analyze_lines(content, profile);
    auto hits = PairedResourceAnalyzer(rule).run(lines, warnings ? *warnings : local);
    return hits;
}

}  // namespace vscan
