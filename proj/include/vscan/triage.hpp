#pragma once

#include "vscan/engine.hpp"

#include <filesystem>
#include <map>
#include <optional>
#include <set>
#include <shared_mutex>
#include <string>
#include <string_view>
#include <vector>

namespace vscan {

enum class TriageState { Unreviewed, Confirmed, FalsePositive, AcceptedRisk, Remediated };

std::string_view to_string(TriageState s) noexcept;
std::optional<TriageState> parse_triage_state(std::string_view s);

/// False positives and accepted risks drop out of working views and CI gates.
constexpr bool is_suppressed(TriageState s) noexcept {
    return s == TriageState::FalsePositive || s == TriageState::AcceptedRisk;
}

struct TriageRecord {
    std::string fingerprint;
    TriageState state = TriageState::Unreviewed;
    std::string note;
    std::string annotator;
    std::string updated_at;

    bool operator==(const TriageRecord&) const = default;
};

struct ReplayResult {
    std::map<std::string, TriageRecord> records;
    std::size_t entries = 0;
    std::vector<std::string> warnings;
};

/// Folds an append log (one JSON record per line, latest wins). A final line
/// without a terminator is an in-progress write and is ignored.
ReplayResult replay_log(std::string_view log_text);

/// Append-only triage store. One writer at a time (advisory file lock);
/// readers see the last complete entry. An empty path keeps it in memory.
class TriageStore {
  public:
    explicit TriageStore(std::filesystem::path path = {});

    TriageStore(const TriageStore&) = delete;
    TriageStore& operator=(const TriageStore&) = delete;

    struct SetOutcome {
        TriageRecord record;
        std::vector<std::string> warnings;
    };

    /// Leaving `remediated` needs a note (TriageError InvalidTransition). A
    /// concurrent writer holding the lock yields TriageError Locked. When
    /// `known` is given, unknown fingerprints are accepted with a warning.
    SetOutcome set_state(const std::string& fingerprint, TriageState state, const std::string& note,
                         const std::string& annotator, const std::set<std::string>* known = nullptr);

    TriageState state_of(const std::string& fingerprint) const;
    std::optional<TriageRecord> find(const std::string& fingerprint) const;
    std::map<std::string, TriageRecord> records() const;
    std::size_t log_size() const;
    std::vector<std::string> warnings() const;

    /// Re-reads the log from disk.
    void reload();

    const std::filesystem::path& path() const noexcept { return path_; }

  private:
    void reload_locked();

    std::filesystem::path path_;
    mutable std::shared_mutex mutex_;
    std::map<std::string, TriageRecord> records_;
    std::size_t log_size_ = 0;
    std::vector<std::string> warnings_;
};

struct ViewEntry {
    Finding finding;
    TriageState state = TriageState::Unreviewed;
    std::string note;
};

struct WorkingView {
    std::vector<ViewEntry> entries;  ///< every finding, in scan order
    std::size_t total = 0;
    std::size_t suppressed = 0;
    std::size_t open = 0;

    std::vector<ViewEntry> open_entries() const;
    std::vector<Finding> open_findings() const;
};

WorkingView apply_triage(const ScanResult& result, const TriageStore& store);
WorkingView apply_triage(const ScanResult& result, const std::map<std::string, TriageRecord>& records);

enum class BacklogFormat { Csv, Structured };

std::optional<BacklogFormat> parse_backlog_format(std::string_view s);

/// Open findings ordered by severity rank, path, line.
std::string export_backlog(const WorkingView& view, BacklogFormat format);

/// Like export_backlog but keeps suppressed findings (with their state).
std::string export_full(const WorkingView& view, BacklogFormat format);

}  // namespace vscan
