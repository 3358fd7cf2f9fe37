#include "vscan/report.hpp"

#include "json_codec.hpp"
#include "vscan/error.hpp"

#include <cstdio>
#include <sstream>

namespace vscan {

namespace {

std::string fmt(const char* spec, double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, spec, v);
    return buf;
}

std::string pad_right(std::string s, std::size_t width) {
    if (s.size() < width) s.append(width - s.size(), ' ');
    return s;
}

std::string pad_left(const std::string& s, std::size_t width) {
    return s.size() < width ? std::string(width - s.size(), ' ') + s : s;
}

}  // namespace

std::string render_summary(const ScanResult& result, LineKind kind) {
    const LanguageTotals t = result.grand_total();
    std::ostringstream out;
    out << "Scan summary\n";
    out << "  Root:       " << result.root << "\n";
    out << "  Rule pack:  " << result.pack_name << " " << result.pack_version << "\n";
    out << "  Files:      " << t.files << "\n";
    out << "  LOC:        " << t.physical_lines << "\n";
    out << "  NCLOC:      " << t.code_lines << "\n";
    out << "  Comment:    " << t.comment_lines << "\n";
    out << "  Blank:      " << t.blank_lines << "\n";

    out << "\nLanguages (share of LOC)\n";
    const auto shares = language_proportions(result.totals);
    if (shares.empty()) out << "  (none)\n";
    for (const auto& s : shares)
        out << "  " << pad_right(s.language, 12) << pad_left(fmt("%.2f", s.percent), 7) << "%  ("
            << s.lines << " LOC)\n";

    out << "\nFindings by severity\n";
    const auto hist = severity_histogram(result.findings);
    for (Severity s : kAllSeverities)
        out << "  " << pad_right(std::string(to_label(s)), 20)
            << pad_left(std::to_string(hist[static_cast<std::size_t>(rank(s) - 1)]), 8) << "\n";
    out << "  " << pad_right("Total", 20) << pad_left(std::to_string(histogram_total(hist)), 8) << "\n";

    const DensityMetric d = scan_density(result, kind);
    out << "\nDensity (" << to_string(kind) << "): " << d.display;
    if (d.has_findings() && d.denominator_lines > 0)
        out << "  (" << fmt("%.1f", d.ratio) << " " << to_string(kind) << " per finding)";
    out << "\n";
    if (!result.warnings.empty()) out << "Warnings:   " << result.warnings.size() << "\n";
    out << "Duration:   " << fmt("%.3f", static_cast<double>(result.duration_ms) / 1000.0) << " s\n";
    return out.str();
}

std::string csv_escape(std::string_view field) {
    if (field.find_first_of(",\"\r\n") == std::string_view::npos) return std::string(field);
    std::string out = "\"";
    for (char c : field) {
        if (c == '"') out.push_back('"');
        out.push_back(c);
    }
    out.push_back('"');
    return out;
}

std::string render_csv(const std::vector<Finding>& findings, const std::map<std::string, std::string>* states) {
    std::string out(kCsvHeader);
    out.push_back('\n');
    for (const auto& f : findings) {
        std::string state = "unreviewed";
        if (states) {
            if (auto it = states->find(f.fingerprint); it != states->end()) state = it->second;
        }
        out += csv_escape(f.fingerprint) + ',' + std::string(to_token(f.severity)) + ',' + csv_escape(f.rule_id) +
               ',' + csv_escape(f.title) + ',' + csv_escape(f.path) + ',' + std::to_string(f.line) + ',' +
               csv_escape(f.snippet) + ',' + csv_escape(state) + '\n';
    }
    return out;
}

std::string render_structured(const ScanResult& result, LineKind kind) {
    return json_codec::scan_to_json(result, kind).dump(2) + "\n";
}

ScanResult parse_structured(std::string_view text) {
    json_codec::json j;
    try {
        j = json_codec::json::parse(text);
    } catch (const json_codec::json::exception& e) {
        throw BaselineError(BaselineError::Kind::Format, std::string("not a structured document: ") + e.what());
    }
    return json_codec::scan_from_json(j);
}

std::string render_diff_structured(const DiffResult& diff) { return json_codec::diff_to_json(diff).dump(2) + "\n"; }

std::string render_diff_text(const DiffResult& diff) {
    std::ostringstream out;
    out << diff.new_findings.size() << " new, " << diff.fixed.size() << " fixed, " << diff.persistent.size()
        << " persistent\n";
    if (diff.pack_changed())
        out << "note: rule pack changed (" << diff.baseline_pack_version << " -> " << diff.current_pack_version
            << "); new findings may come from new rules\n";
    auto list = [&](const char* tag, const std::vector<Finding>& fs) {
        for (const auto& f : fs)
            out << "  " << tag << " [" << to_label(f.severity) << "] " << f.path << ":" << f.line << " " << f.rule_id
                << "  " << f.snippet << "\n";
    };
    list("+", diff.new_findings);
    list("-", diff.fixed);
    for (const auto& p : diff.persistent)
        if (p.previous_severity)
            out << "  ~ [" << to_label(*p.previous_severity) << " -> " << to_label(p.current.severity) << "] "
                << p.current.path << ":" << p.current.line << " " << p.current.rule_id << "\n";
    return out.str();
}

}  // namespace vscan
