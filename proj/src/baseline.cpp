#include "vscan/baseline.hpp"

#include "json_codec.hpp"
#include "vscan/digest.hpp"
#include "vscan/error.hpp"
#include "vscan/report.hpp"

#include <fstream>
#include <map>

namespace vscan {

namespace {

constexpr std::string_view kFormat = "vscan-baseline/1";

using Kind = BaselineError::Kind;

}  // namespace

void save_baseline(const ScanResult& result, const std::filesystem::path& path, const std::string& label) {
    const std::string payload = render_structured(result);
    const json_codec::json header{{"format", kFormat},
                                  {"label", label},
                                  {"created_at", utc_timestamp()},
                                  {"pack_version", result.pack_version},
                                  {"fingerprint_scheme", result.fingerprint_scheme},
                                  {"checksum", sha256_hex(payload)}};
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw BaselineError(Kind::Io, "cannot write baseline " + path.string());
    out << header.dump() << '\n' << payload;
    out.flush();
    if (!out) throw BaselineError(Kind::Io, "failed writing baseline " + path.string());
}

Baseline load_baseline(const std::filesystem::path& path) {
    std::string text;
    try {
        text = read_file(path);
    } catch (const IoError& e) {
        throw BaselineError(Kind::Io, e.what());
    }
    const auto nl = text.find('\n');
    if (nl == std::string::npos)
        throw BaselineError(Kind::Checksum, "baseline " + path.string() + " is truncated (no payload)");

    json_codec::json header;
    try {
        header = json_codec::json::parse(std::string_view(text).substr(0, nl));
    } catch (const json_codec::json::exception&) {
        throw BaselineError(Kind::Format, "baseline " + path.string() + " has no valid header");
    }
    if (!header.is_object() || header.value("format", "") != kFormat)
        throw BaselineError(Kind::Format, "baseline " + path.string() + " has an unknown format");

    const std::string_view payload = std::string_view(text).substr(nl + 1);
    if (sha256_hex(payload) != header.value("checksum", ""))
        throw BaselineError(Kind::Checksum, "baseline " + path.string() + " failed checksum verification");

    Baseline b;
    b.label = header.value("label", "");
    b.created_at = header.value("created_at", "");
    b.result = parse_structured(payload);
    return b;
}

ScanResult load_scan_or_baseline(const std::filesystem::path& path) {
    std::string text;
    try {
        text = read_file(path);
    } catch (const IoError& e) {
        throw BaselineError(Kind::Io, e.what());
    }
    if (text.rfind("{\"checksum\"", 0) == 0) return load_baseline(path).result;
    return parse_structured(text);
}

DiffResult diff(const ScanResult& baseline, const ScanResult& current) {
    if (baseline.fingerprint_scheme != current.fingerprint_scheme)
        throw BaselineError(Kind::Incompatible, "fingerprint scheme mismatch: baseline '" +
                                                    baseline.fingerprint_scheme + "' vs current '" +
                                                    current.fingerprint_scheme + "'");
    DiffResult d;
    d.baseline_pack_version = baseline.pack_version;
    d.current_pack_version = current.pack_version;

    std::map<std::string_view, const Finding*> before;
    for (const auto& f : baseline.findings) before.emplace(f.fingerprint, &f);
    std::map<std::string_view, const Finding*> after;
    for (const auto& f : current.findings) after.emplace(f.fingerprint, &f);

    for (const auto& f : current.findings) {
        auto it = before.find(f.fingerprint);
        if (it == before.end()) {
            d.new_findings.push_back(f);
        } else {
            PersistentFinding p{f, std::nullopt};
            if (it->second->severity != f.severity) p.previous_severity = it->second->severity;
            d.persistent.push_back(std::move(p));
        }
    }
    for (const auto& f : baseline.findings)
        if (!after.count(f.fingerprint)) d.fixed.push_back(f);
    return d;
}

DiffResult diff(const Baseline& baseline, const ScanResult& current) { return diff(baseline.result, current); }

}  // namespace vscan
