#pragma once

#include "vscan/engine.hpp"

#include <filesystem>
#include <optional>
#include <string>
#include <vector>

namespace vscan {

struct Baseline {
    std::string label;
    std::string created_at;
    ScanResult result;
};

struct PersistentFinding {
    Finding current;
    std::optional<Severity> previous_severity;  ///< set when the severity changed since the baseline
};

struct DiffResult {
    std::vector<Finding> new_findings;
    std::vector<Finding> fixed;
    std::vector<PersistentFinding> persistent;
    std::string baseline_pack_version;
    std::string current_pack_version;

    bool pack_changed() const { return baseline_pack_version != current_pack_version; }
};

/// Header line {checksum, created_at, fingerprint_scheme, format, label,
/// pack_version} followed by the structured scan result. The checksum covers
/// every byte after the header line. Throws BaselineError(Io).
void save_baseline(const ScanResult& result, const std::filesystem::path& path, const std::string& label = {});

/// Verifies the checksum. Throws BaselineError(Io | Format | Checksum).
Baseline load_baseline(const std::filesystem::path& path);

/// Loads either a baseline file or a bare structured scan result.
ScanResult load_scan_or_baseline(const std::filesystem::path& path);

/// Matches by fingerprint. new = current - baseline, fixed = baseline - current,
/// persistent = both (carrying the current finding). Throws
/// BaselineError(Incompatible) when the fingerprint schemes differ.
DiffResult diff(const ScanResult& baseline, const ScanResult& current);
DiffResult diff(const Baseline& baseline, const ScanResult& current);

}  // namespace vscan
