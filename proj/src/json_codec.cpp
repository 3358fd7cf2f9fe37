#include "json_codec.hpp"

#include "vscan/error.hpp"

namespace vscan::json_codec {

json to_json(const Finding& f) {
    return json{{"fingerprint", f.fingerprint},
                {"rule_id", f.rule_id},
                {"title", f.title},
                {"severity", to_token(f.severity)},
                {"path", f.path},
                {"line", f.line},
                {"snippet", f.snippet},
                {"description", f.description},
                {"remediation", f.remediation},
                {"occurrence_index", f.occurrence_index}};
}

Finding finding_from_json(const json& j) {
    Finding f;
    f.fingerprint = j.at("fingerprint").get<std::string>();
    f.rule_id = j.at("rule_id").get<std::string>();
    f.title = j.at("title").get<std::string>();
    const auto sev = parse_severity(j.at("severity").get<std::string>());
    if (!sev) throw BaselineError(BaselineError::Kind::Format, "unknown severity in finding " + f.fingerprint);
    f.severity = *sev;
    f.path = j.at("path").get<std::string>();
    f.line = j.at("line").get<std::size_t>();
    f.snippet = j.at("snippet").get<std::string>();
    f.description = j.value("description", "");
    f.remediation = j.value("remediation", "");
    f.occurrence_index = j.at("occurrence_index").get<std::size_t>();
    return f;
}

json to_json(const SourceFile& f) {
    return json{{"path", f.path},
                {"language", f.language},
                {"loc", f.physical_lines},
                {"ncloc", f.code_lines},
                {"comment_lines", f.comment_lines},
                {"blank_lines", f.blank_lines},
                {"digest", f.digest}};
}

json to_json(const LanguageTotals& t) {
    return json{{"files", t.files},
                {"loc", t.physical_lines},
                {"ncloc", t.code_lines},
                {"comment_lines", t.comment_lines},
                {"blank_lines", t.blank_lines}};
}

json to_json(const DensityMetric& d) {
    return json{{"findings", d.findings_count},
                {"lines", d.denominator_lines},
                {"kind", to_string(d.denominator_kind)},
                {"ratio", d.ratio},
                {"display", d.display}};
}

json to_json(const SeverityHistogram& h) {
    json j = json::object();
    for (Severity s : kAllSeverities) j[std::string(to_token(s))] = h[static_cast<std::size_t>(rank(s) - 1)];
    return j;
}

json to_json(const std::vector<LanguageShare>& shares) {
    json arr = json::array();
    for (const auto& s : shares) arr.push_back({{"language", s.language}, {"percent", s.percent}, {"loc", s.lines}});
    return arr;
}

json metrics_to_json(const ScanResult& r, LineKind kind) {
    const auto hist = severity_histogram(r.findings);
    json groups = json::array();
    for (const auto& g : per_group_density(r, kind))
        groups.push_back({{"group", g.group},
                          {"lines", g.sloc},
                          {"findings", g.findings},
                          {"dangerous_lines", g.dangerous_lines},
                          {"density", g.density ? to_json(*g.density) : json(nullptr)}});
    return json{{"density", to_json(scan_density(r, kind))},
                {"groups", groups},
                {"severity_histogram", to_json(hist)},
                {"language_proportions", to_json(language_proportions(r.totals))},
                {"findings_total", r.findings.size()}};
}

json scan_to_json(const ScanResult& r, LineKind kind) {
    json files = json::array();
    for (const auto& f : r.files) files.push_back(to_json(f));
    json findings = json::array();
    for (const auto& f : r.findings) findings.push_back(to_json(f));
    json langs = json::object();
    for (const auto& [lang, t] : r.totals) langs[lang] = to_json(t);
    const LanguageTotals g = r.grand_total();
    return json{{"schema", 1},
                {"kind", "scan_result"},
                {"root", r.root},
                {"started_at", r.started_at},
                {"duration_ms", r.duration_ms},
                {"pack", {{"name", r.pack_name}, {"version", r.pack_version}}},
                {"fingerprint_scheme", r.fingerprint_scheme},
                {"summary", to_json(g)},
                {"languages", langs},
                {"files", files},
                {"findings", findings},
                {"warnings", r.warnings},
                {"metrics", metrics_to_json(r, kind)}};
}

ScanResult scan_from_json(const json& j) {
    try {
        if (j.value("kind", "") != "scan_result")
            throw BaselineError(BaselineError::Kind::Format, "document is not a scan result");
        ScanResult r;
        r.root = j.at("root").get<std::string>();
        r.started_at = j.at("started_at").get<std::string>();
        r.duration_ms = j.at("duration_ms").get<std::int64_t>();
        r.pack_name = j.at("pack").at("name").get<std::string>();
        r.pack_version = j.at("pack").at("version").get<std::string>();
        r.fingerprint_scheme = j.at("fingerprint_scheme").get<std::string>();
        for (const auto& f : j.at("files")) {
            SourceFile s;
            s.path = f.at("path").get<std::string>();
            s.language = f.at("language").get<std::string>();
            s.physical_lines = f.at("loc").get<std::size_t>();
            s.code_lines = f.at("ncloc").get<std::size_t>();
            s.comment_lines = f.at("comment_lines").get<std::size_t>();
            s.blank_lines = f.at("blank_lines").get<std::size_t>();
            s.digest = f.at("digest").get<std::string>();
            r.files.push_back(std::move(s));
        }
        for (const auto& [lang, t] : j.at("languages").items()) {
            LanguageTotals lt;
            lt.files = t.at("files").get<std::size_t>();
            lt.physical_lines = t.at("loc").get<std::size_t>();
            lt.code_lines = t.at("ncloc").get<std::size_t>();
            lt.comment_lines = t.at("comment_lines").get<std::size_t>();
            lt.blank_lines = t.at("blank_lines").get<std::size_t>();
            r.totals[lang] = lt;
        }
        for (const auto& f : j.at("findings")) r.findings.push_back(finding_from_json(f));
        r.warnings = j.at("warnings").get<std::vector<std::string>>();
        return r;
    } catch (const json::exception& e) {
        throw BaselineError(BaselineError::Kind::Format, std::string("malformed scan result: ") + e.what());
    }
}

json diff_to_json(const DiffResult& d) {
    json added = json::array();
    for (const auto& f : d.new_findings) added.push_back(to_json(f));
    json fixed = json::array();
    for (const auto& f : d.fixed) fixed.push_back(to_json(f));
    json persistent = json::array();
    std::size_t changed = 0;
    for (const auto& p : d.persistent) {
        json e = to_json(p.current);
        if (p.previous_severity) {
            e["previous_severity"] = to_token(*p.previous_severity);
            ++changed;
        }
        persistent.push_back(std::move(e));
    }
    return json{{"schema", 1},
                {"kind", "diff"},
                {"new", added},
                {"fixed", fixed},
                {"persistent", persistent},
                {"counts",
                 {{"new", d.new_findings.size()},
                  {"fixed", d.fixed.size()},
                  {"persistent", d.persistent.size()},
                  {"severity_changed", changed}}},
                {"baseline_pack_version", d.baseline_pack_version},
                {"current_pack_version", d.current_pack_version},
                {"pack_changed", d.pack_changed()}};
}

}  // namespace vscan::json_codec
