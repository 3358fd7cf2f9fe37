#include "vscan/report.hpp"

#include <algorithm>
#include <cstdio>
#include <sstream>

namespace vscan {

std::string html_escape(std::string_view s) {
    std::string out;
    out.reserve(s.size());
    for (char c : s) {
        switch (c) {
            case '&': out += "&amp;"; break;
            case '<': out += "&lt;"; break;
            case '>': out += "&gt;"; break;
            case '"': out += "&quot;"; break;
            case '\'': out += "&#39;"; break;
            default: out.push_back(c);
        }
    }
    return out;
}

namespace {

constexpr const char* kSeverityColors[7] = {"#7b1fa2", "#c62828", "#ef6c00", "#f9a825",
                                            "#1565c0", "#00897b", "#757575"};

std::string num(double v, const char* spec = "%.2f") {
    char buf[64];
    std::snprintf(buf, sizeof buf, spec, v);
    return buf;
}

std::string severity_chart(const SeverityHistogram& hist) {
    const std::size_t max = std::max<std::size_t>(1, *std::max_element(hist.begin(), hist.end()));
    const int bar_w = 60, gap = 14, height = 160, top = 20, base = top + height;
    std::ostringstream svg;
    svg << "<svg class=\"chart\" id=\"severity-chart\" xmlns=\"http://www.w3.org/2000/svg\" width=\""
        << 7 * (bar_w + gap) + gap << "\" height=\"" << base + 40 << "\" role=\"img\" aria-label=\"Findings by severity\">\n";
    for (std::size_t i = 0; i < 7; ++i) {
        const double h = static_cast<double>(hist[i]) / static_cast<double>(max) * height;
        const int x = gap + static_cast<int>(i) * (bar_w + gap);
        svg << "  <rect x=\"" << x << "\" y=\"" << num(base - h, "%.1f") << "\" width=\"" << bar_w << "\" height=\""
            << num(h, "%.1f") << "\" fill=\"" << kSeverityColors[i] << "\"/>\n";
        svg << "  <text x=\"" << x + bar_w / 2 << "\" y=\"" << num(base - h - 4, "%.1f")
            << "\" text-anchor=\"middle\" font-size=\"12\">" << hist[i] << "</text>\n";
        svg << "  <text x=\"" << x + bar_w / 2 << "\" y=\"" << base + 16
            << "\" text-anchor=\"middle\" font-size=\"10\">" << html_escape(to_label(kAllSeverities[i])) << "</text>\n";
    }
    svg << "</svg>\n";
    return svg.str();
}

std::string language_chart(const std::vector<LanguageShare>& shares) {
    const int row_h = 22, width = 420, label_w = 90;
    std::ostringstream svg;
    svg << "<svg class=\"chart\" id=\"language-chart\" xmlns=\"http://www.w3.org/2000/svg\" width=\""
        << label_w + width + 70 << "\" height=\"" << std::max<std::size_t>(1, shares.size()) * row_h + 10
        << "\" role=\"img\" aria-label=\"Language proportions\">\n";
    int y = 5;
    for (const auto& s : shares) {
        const double w = s.percent / 100.0 * width;
        svg << "  <text x=\"0\" y=\"" << y + 15 << "\" font-size=\"12\">" << html_escape(s.language) << "</text>\n";
        svg << "  <rect x=\"" << label_w << "\" y=\"" << y + 3 << "\" width=\"" << num(w, "%.1f")
            << "\" height=\"16\" fill=\"#1565c0\"/>\n";
        svg << "  <text x=\"" << num(label_w + w + 6, "%.1f") << "\" y=\"" << y + 15 << "\" font-size=\"12\">"
            << num(s.percent) << "%</text>\n";
        y += row_h;
    }
    svg << "</svg>\n";
    return svg.str();
}

constexpr const char* kSortScript = R"js(
document.querySelectorAll('table.sortable th').forEach(function (th, col) {
  th.addEventListener('click', function () {
    var table = th.closest('table');
    var body = table.tBodies[0];
    var asc = th.getAttribute('data-dir') !== 'asc';
    table.querySelectorAll('th').forEach(function (h) { h.removeAttribute('data-dir'); });
    th.setAttribute('data-dir', asc ? 'asc' : 'desc');
    var rows = Array.prototype.slice.call(body.rows);
    rows.sort(function (a, b) {
      var x = a.cells[col].getAttribute('data-key') || a.cells[col].textContent;
      var y = b.cells[col].getAttribute('data-key') || b.cells[col].textContent;
      var nx = parseFloat(x), ny = parseFloat(y);
      var c = (!isNaN(nx) && !isNaN(ny)) ? nx - ny : x.localeCompare(y);
      return asc ? c : -c;
    });
    rows.forEach(function (r) { body.appendChild(r); });
  });
});
)js";

}  // namespace

std::string render_html(const ScanResult& result, LineKind kind, const DiffResult* diff) {
    const LanguageTotals t = result.grand_total();
    const auto hist = severity_histogram(result.findings);
    const DensityMetric d = scan_density(result, kind);

    std::ostringstream h;
    h << "<!DOCTYPE html>\n<html lang=\"en\">\n<head>\n<meta charset=\"utf-8\">\n<title>Security scan report</title>\n"
      << "<style>\nbody{font-family:sans-serif;margin:2em;color:#222}table{border-collapse:collapse;width:100%}"
         "th,td{border:1px solid #ccc;padding:4px 6px;text-align:left;font-size:13px}th{cursor:pointer;background:#eee}"
         "td.code{font-family:monospace;white-space:pre-wrap}.banner{padding:1em;background:#e8f5e9;border:1px solid #66bb6a;"
         "font-weight:bold}.diff span{margin-right:1.5em;font-weight:bold}dl{display:grid;grid-template-columns:max-content auto;"
         "gap:2px 1em}dt{font-weight:bold}\n</style>\n</head>\n<body>\n";
    h << "<h1>Security scan report</h1>\n<dl class=\"summary\">\n"
      << "<dt>Root</dt><dd>" << html_escape(result.root) << "</dd>\n"
      << "<dt>Rule pack</dt><dd>" << html_escape(result.pack_name) << " " << html_escape(result.pack_version) << "</dd>\n"
      << "<dt>Started</dt><dd>" << html_escape(result.started_at) << "</dd>\n"
      << "<dt>Files</dt><dd id=\"files\">" << t.files << "</dd>\n"
      << "<dt>LOC</dt><dd id=\"loc\">" << t.physical_lines << "</dd>\n"
      << "<dt>NCLOC</dt><dd id=\"ncloc\">" << t.code_lines << "</dd>\n"
      << "<dt>Findings</dt><dd id=\"findings-total\">" << result.findings.size() << "</dd>\n"
      << "<dt>Density (" << to_string(kind) << ")</dt><dd id=\"density\">" << html_escape(d.display) << "</dd>\n"
      << "</dl>\n";

    if (diff) {
        h << "<div class=\"diff\" id=\"diff\"><span class=\"new\">" << diff->new_findings.size()
          << " new</span><span class=\"fixed\">" << diff->fixed.size() << " fixed</span><span class=\"persistent\">"
          << diff->persistent.size() << " persistent</span></div>\n";
    }

    h << "<h2>Findings by severity</h2>\n" << severity_chart(hist);
    h << "<h2>Languages</h2>\n" << language_chart(language_proportions(result.totals));

    h << "<h2>Findings</h2>\n";
    if (result.findings.empty()) {
        h << "<div class=\"banner\" id=\"no-findings\">" << kNoFindings << "</div>\n";
    } else {
        h << "<table class=\"sortable\" id=\"findings\">\n<thead><tr><th>Severity</th><th>Rule</th><th>Title</th>"
             "<th>Path</th><th>Line</th><th>Code</th><th>Fingerprint</th></tr></thead>\n<tbody>\n";
        for (const auto& f : result.findings) {
            h << "<tr class=\"finding\"><td data-key=\"" << rank(f.severity) << "\">" << html_escape(to_label(f.severity))
              << "</td><td>" << html_escape(f.rule_id) << "</td><td>" << html_escape(f.title) << "</td><td>"
              << html_escape(f.path) << "</td><td>" << f.line << "</td><td class=\"code\">" << html_escape(f.snippet)
              << "</td><td class=\"code\">" << html_escape(f.fingerprint) << "</td></tr>\n";
        }
        h << "</tbody>\n</table>\n";
    }
    h << "<script>" << kSortScript << "</script>\n</body>\n</html>\n";
    return h.str();
}

}  // namespace vscan
