#include "vscan/triage.hpp"

#include "json_codec.hpp"
#include "vscan/corpus.hpp"
#include "vscan/error.hpp"
#include "vscan/report.hpp"

#include <fcntl.h>
#include <sys/file.h>
#include <unistd.h>

#include <algorithm>
#include <cerrno>
#include <cstring>
#include <mutex>

namespace vscan {

using Kind = TriageError::Kind;
using json_codec::json;

std::string_view to_string(TriageState s) noexcept {
    switch (s) {
        case TriageState::Unreviewed: return "unreviewed";
        case TriageState::Confirmed: return "confirmed";
        case TriageState::FalsePositive: return "false_positive";
        case TriageState::AcceptedRisk: return "accepted_risk";
        case TriageState::Remediated: return "remediated";
    }
    return "?";
}

std::optional<TriageState> parse_triage_state(std::string_view s) {
    for (auto st : {TriageState::Unreviewed, TriageState::Confirmed, TriageState::FalsePositive,
                    TriageState::AcceptedRisk, TriageState::Remediated})
        if (s == to_string(st)) return st;
    return std::nullopt;
}

namespace {

json record_to_json(const TriageRecord& r) {
    return json{{"fingerprint", r.fingerprint},
                {"state", to_string(r.state)},
                {"note", r.note},
                {"annotator", r.annotator},
                {"updated_at", r.updated_at}};
}

/// Holds an exclusive flock on the store file for the lifetime of the object.
class FileLock {
  public:
    explicit FileLock(const std::filesystem::path& path) {
        fd_ = ::open(path.c_str(), O_WRONLY | O_APPEND | O_CREAT | O_CLOEXEC, 0644);
        if (fd_ < 0) throw TriageError(Kind::Io, "cannot open triage store " + path.string() + ": " + std::strerror(errno));
        if (::flock(fd_, LOCK_EX | LOCK_NB) != 0) {
            ::close(fd_);
            throw TriageError(Kind::Locked, "triage store " + path.string() + " is locked by another writer");
        }
    }
    ~FileLock() {
        ::flock(fd_, LOCK_UN);
        ::close(fd_);
    }
    FileLock(const FileLock&) = delete;
    FileLock& operator=(const FileLock&) = delete;

    void append(const std::string& line) {
        std::size_t off = 0;
        while (off < line.size()) {
            const ssize_t n = ::write(fd_, line.data() + off, line.size() - off);
            if (n < 0) {
                if (errno == EINTR) continue;
                throw TriageError(Kind::Io, std::string("triage store write failed: ") + std::strerror(errno));
            }
            off += static_cast<std::size_t>(n);
        }
        ::fsync(fd_);
    }

  private:
    int fd_ = -1;
};

}  // namespace

ReplayResult replay_log(std::string_view log_text) {
    ReplayResult out;
    std::size_t start = 0;
    std::size_t lineno = 0;
    while (start < log_text.size()) {
        const auto nl = log_text.find('\n', start);
        if (nl == std::string_view::npos) break;  // incomplete trailing write
        const std::string_view line = log_text.substr(start, nl - start);
        start = nl + 1;
        ++lineno;
        if (line.find_first_not_of(" \t\r") == std::string_view::npos) continue;
        try {
            const json j = json::parse(line);
            TriageRecord r;
            r.fingerprint = j.at("fingerprint").get<std::string>();
            const auto st = parse_triage_state(j.at("state").get<std::string>());
            if (!st) throw std::runtime_error("unknown state");
            r.state = *st;
            r.note = j.value("note", "");
            r.annotator = j.value("annotator", "");
            r.updated_at = j.value("updated_at", "");
            out.records[r.fingerprint] = std::move(r);
            ++out.entries;
        } catch (const std::exception& e) {
            out.warnings.push_back("triage log line " + std::to_string(lineno) + " skipped: " + e.what());
        }
    }
    return out;
}

TriageStore::TriageStore(std::filesystem::path path) : path_(std::move(path)) { reload(); }

void TriageStore::reload() {
    std::unique_lock lock(mutex_);
    reload_locked();
}

void TriageStore::reload_locked() {
    records_.clear();
    log_size_ = 0;
    warnings_.clear();
    if (path_.empty() || !std::filesystem::exists(path_)) return;
    std::string text;
    try {
        text = read_file(path_);
    } catch (const IoError& e) {
        throw TriageError(Kind::Io, e.what());
    }
    ReplayResult r = replay_log(text);
    records_ = std::move(r.records);
    log_size_ = r.entries;
    warnings_ = std::move(r.warnings);
}

TriageStore::SetOutcome TriageStore::set_state(const std::string& fingerprint, TriageState state,
                                               const std::string& note, const std::string& annotator,
                                               const std::set<std::string>* known) {
    if (fingerprint.empty()) throw TriageError(Kind::InvalidState, "empty fingerprint");
    std::unique_lock lock(mutex_);

    std::optional<FileLock> file_lock;
    if (!path_.empty()) {
        file_lock.emplace(path_);
        reload_locked();  // pick up entries from other writers
    }

    SetOutcome out;
    if (known && !known->count(fingerprint))
        out.warnings.push_back("fingerprint " + fingerprint + " is not in the current scan");

    const auto it = records_.find(fingerprint);
    if (it != records_.end() && it->second.state == TriageState::Remediated && state != TriageState::Remediated &&
        note.empty())
        throw TriageError(Kind::InvalidTransition, "leaving 'remediated' requires a note");

    TriageRecord rec{fingerprint, state, note, annotator, utc_timestamp()};
    if (file_lock) file_lock->append(record_to_json(rec).dump() + "\n");
    records_[fingerprint] = rec;
    ++log_size_;
    out.record = std::move(rec);
    return out;
}

TriageState TriageStore::state_of(const std::string& fingerprint) const {
    std::shared_lock lock(mutex_);
    auto it = records_.find(fingerprint);
    return it == records_.end() ? TriageState::Unreviewed : it->second.state;
}

std::optional<TriageRecord> TriageStore::find(const std::string& fingerprint) const {
    std::shared_lock lock(mutex_);
    auto it = records_.find(fingerprint);
    if (it == records_.end()) return std::nullopt;
    return it->second;
}

std::map<std::string, TriageRecord> TriageStore::records() const {
    std::shared_lock lock(mutex_);
    return records_;
}

std::size_t TriageStore::log_size() const {
    std::shared_lock lock(mutex_);
    return log_size_;
}

std::vector<std::string> TriageStore::warnings() const {
    std::shared_lock lock(mutex_);
    return warnings_;
}

// ---------------------------------------------------------------------------
// Views and export

std::vector<ViewEntry> WorkingView::open_entries() const {
    std::vector<ViewEntry> out;
    for (const auto& e : entries)
        if (!is_suppressed(e.state)) out.push_back(e);
    return out;
}

std::vector<Finding> WorkingView::open_findings() const {
    std::vector<Finding> out;
    for (const auto& e : entries)
        if (!is_suppressed(e.state)) out.push_back(e.finding);
    return out;
}

WorkingView apply_triage(const ScanResult& result, const std::map<std::string, TriageRecord>& records) {
    WorkingView v;
    for (const auto& f : result.findings) {
        ViewEntry e{f, TriageState::Unreviewed, {}};
        if (auto it = records.find(f.fingerprint); it != records.end()) {
            e.state = it->second.state;
            e.note = it->second.note;
        }
        if (is_suppressed(e.state)) ++v.suppressed;
        v.entries.push_back(std::move(e));
    }
    v.total = v.entries.size();
    v.open = v.total - v.suppressed;
    return v;
}

WorkingView apply_triage(const ScanResult& result, const TriageStore& store) {
    return apply_triage(result, store.records());
}

std::optional<BacklogFormat> parse_backlog_format(std::string_view s) {
    if (s == "csv") return BacklogFormat::Csv;
    if (s == "json" || s == "structured") return BacklogFormat::Structured;
    return std::nullopt;
}

namespace {

std::string render_rows(const WorkingView& view, std::vector<ViewEntry> rows, BacklogFormat format) {
    std::stable_sort(rows.begin(), rows.end(), [](const ViewEntry& a, const ViewEntry& b) {
        const Finding& x = a.finding;
        const Finding& y = b.finding;
        if (rank(x.severity) != rank(y.severity)) return rank(x.severity) < rank(y.severity);
        if (x.path != y.path) return x.path < y.path;
        return x.line < y.line;
    });
    if (format == BacklogFormat::Csv) {
        std::vector<Finding> findings;
        std::map<std::string, std::string> states;
        for (const auto& r : rows) {
            findings.push_back(r.finding);
            states[r.finding.fingerprint] = std::string(to_string(r.state));
        }
        return render_csv(findings, &states);
    }
    json arr = json::array();
    for (const auto& r : rows) {
        const Finding& f = r.finding;
        arr.push_back({{"fingerprint", f.fingerprint},
                       {"severity", to_token(f.severity)},
                       {"rule_id", f.rule_id},
                       {"title", f.title},
                       {"path", f.path},
                       {"line", f.line},
                       {"snippet", f.snippet},
                       {"state", to_string(r.state)},
                       {"note", r.note}});
    }
    return json{{"schema", 1},
                {"kind", "backlog"},
                {"counts", {{"total", view.total}, {"suppressed", view.suppressed}, {"open", view.open}}},
                {"rows", arr}}
               .dump(2) +
           "\n";
}

}  // namespace

std::string export_backlog(const WorkingView& view, BacklogFormat format) {
    return render_rows(view, view.open_entries(), format);
}

std::string export_full(const WorkingView& view, BacklogFormat format) {
    return render_rows(view, view.entries, format);
}

}  // namespace vscan
