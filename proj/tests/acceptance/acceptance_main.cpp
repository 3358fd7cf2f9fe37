// Acceptance gate: one PASS/FAIL line per criterion, nonzero exit on any FAIL.

#include "oracles/diff_oracle.hpp"
#include "oracles/line_oracle.hpp"
#include "vscan/baseline.hpp"
#include "vscan/cli.hpp"
#include "vscan/metrics.hpp"
#include "vscan/report.hpp"
#include "vscan/rulepack.hpp"
#include "vscan/triage.hpp"

#include <chrono>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <random>
#include <sstream>
#include <thread>

#include <unistd.h>

namespace fs = std::filesystem;
using namespace vscan;

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) { return std::chrono::duration<double>(Clock::now() - t0).count(); }

/// Collects failures for one criterion.
struct Check {
    std::vector<std::string> failures;

    void expect(bool ok, const std::string& what) {
        if (!ok) failures.push_back(what);
    }
    template <typename A, typename B>
    void equal(const A& actual, const B& expected, const std::string& what) {
        if (!(actual == expected)) {
            std::ostringstream s;
            s << what << ": got " << actual << ", want " << expected;
            failures.push_back(s.str());
        }
    }
};

class Scratch {
  public:
    Scratch() : root_(fs::temp_directory_path() / ("vscan-acceptance-" + std::to_string(::getpid()))) {
        fs::remove_all(root_);
        fs::create_directories(root_);
    }
    ~Scratch() {
        std::error_code ec;
        fs::remove_all(root_, ec);
    }
    fs::path dir(const std::string& name) const {
        const fs::path p = root_ / name;
        fs::remove_all(p);
        fs::create_directories(p);
        return p;
    }

  private:
    fs::path root_;
};

void write(const fs::path& path, std::string_view text) {
    fs::create_directories(path.parent_path());
    std::ofstream(path, std::ios::binary | std::ios::trunc) << text;
}

void histogram_matches(Check& c, const ScanResult& r, const std::string& label) {
    c.equal(histogram_total(severity_histogram(r.findings)), r.findings.size(), label + " histogram total");
}

// ---------------------------------------------------------------------------

Check density_arithmetic() {
    Check c;
    const auto large = density(1460, 4'100'000, LineKind::NCLOC);
    c.equal(large.display, std::string("1:2808"), "1460 / 4,100,000");
    const auto portfolio = density(4976, 2'900'077, LineKind::LOC);
    c.expect(std::abs(portfolio.ratio - 582.8) <= 0.05, "4976 / 2,900,077 ratio " + std::to_string(portfolio.ratio));
    c.equal(density(371, 1'048'017).display, std::string("1:2825"), "App1");
    c.equal(density(1409, 797'378).display, std::string("1:566"), "App2");
    c.equal(density(2942, 756'009).display, std::string("1:257"), "App3");
    c.equal(density(254, 298'673).display, std::string("1:1176"), "Libraries");
    return c;
}

Check snippet_fixtures(const Scratch& s) {
    Check c;
    const fs::path root = s.dir("snippets");
    struct Case {
        const char* file;
        const char* line;
        const char* rule;
        const char* title;
        Severity severity;
    };
    const Case cases[] = {
        {"chrome/net/base.cc", "std::memcpy(buffer, str, length);", "cpp.unsafe-memcpy",
         "Unsafe Use of memcpy Allows Buffer Overflow", Severity::High},
        {"app/Reset.cs", "public const string R1ResetPassword = \"MYPASSWORD\";", "cs.hardcoded-password",
         "Potentially Unsafe Code - Appears to Contain Hard-Coded Password", Severity::Medium},
        {"app/Login.cs", "string strUserPassword = txtCurrentPassword.Text.ToUpper();", "cs.case-insensitive-password",
         "Potentially Unsafe Code - Unsafe Password Management", Severity::Medium},
        {"app/Store.cs", "SecureString class.String key = null;", "cs.insecure-sensitive-storage",
         "Potentially Unsafe Code - Insecure Storage of Sensitive Information", Severity::Medium},
    };
    for (const auto& k : cases) write(root / k.file, std::string("// fixture\nvoid f() {\n    ") + k.line + "\n}\n");
    const auto t0 = Clock::now();
    const ScanResult r = scan(ingest(root), builtin_rules());
    const double took = seconds_since(t0);
    for (const auto& k : cases) {
        std::vector<const Finding*> in_file;
        for (const auto& f : r.findings)
            if (f.path == k.file) in_file.push_back(&f);
        if (in_file.size() != 1) {
            c.failures.push_back(std::string(k.file) + ": " + std::to_string(in_file.size()) + " findings");
            continue;
        }
        const Finding& f = *in_file[0];
        c.equal(f.rule_id, std::string(k.rule), k.file);
        c.equal(f.title, std::string(k.title), k.file);
        c.equal(std::string(to_label(f.severity)), std::string(to_label(k.severity)), k.file);
        c.equal(f.line, std::size_t{3}, k.file);
        c.equal(f.snippet, std::string(k.line), k.file);
    }
    histogram_matches(c, r, "snippet scan");
    c.expect(took < 1.0, "runtime " + std::to_string(took) + " s");
    return c;
}

Check paired_fixtures(const Scratch& s) {
    Check c;
    const fs::path root = s.dir("paired");
    write(root / "leak.c", "#include <stdlib.h>\nvoid leak(int n) {\n    char *p = malloc(n);\n    p[0] = 1;\n}\n");
    write(root / "double.c", "#include <stdlib.h>\nvoid twice(char *p) {\n    free(p);\n    free(p);\n}\n");
    write(root / "balanced.c", "#include <stdlib.h>\nvoid ok(int n) {\n    char *p = malloc(n);\n    free(p);\n}\n");
    const auto t0 = Clock::now();
    const ScanResult r = scan(ingest(root), builtin_rules());
    const double took = seconds_since(t0);
    std::map<std::string, std::vector<const Finding*>> by_file;
    for (const auto& f : r.findings) by_file[f.path].push_back(&f);
    c.equal(by_file["leak.c"].size(), std::size_t{1}, "leak.c findings");
    if (by_file["leak.c"].size() == 1) {
        c.equal(by_file["leak.c"][0]->rule_id, std::string("c.malloc-no-free"), "leak.c rule");
        c.equal(by_file["leak.c"][0]->line, std::size_t{3}, "leak.c line");
        c.expect(by_file["leak.c"][0]->severity == Severity::High, "leak.c severity");
    }
    c.equal(by_file["double.c"].size(), std::size_t{1}, "double.c findings");
    if (by_file["double.c"].size() == 1) {
        c.equal(by_file["double.c"][0]->rule_id, std::string("c.double-free"), "double.c rule");
        c.equal(by_file["double.c"][0]->line, std::size_t{4}, "double.c line");
        c.expect(by_file["double.c"][0]->severity == Severity::High, "double.c severity");
    }
    c.equal(by_file["balanced.c"].size(), std::size_t{0}, "balanced.c findings");
    histogram_matches(c, r, "paired scan");
    c.expect(took < 1.0, "runtime " + std::to_string(took) + " s");
    return c;
}

Check classifier_oracle(std::size_t& files_checked) {
    Check c;
    std::mt19937_64 rng(0x5eed);
    const auto& profiles = LanguageRegistry::builtin().profiles();
    const auto t0 = Clock::now();
    for (files_checked = 0; files_checked < 1500; ++files_checked) {
        const auto& p = profiles[files_checked % profiles.size()];
        const std::string text = oracle::random_source(rng, p);
        const auto got = classify_lines(text, p);
        const auto want = oracle::reference_classes(text, p);
        if (got.classes != want) {
            c.failures.push_back("file " + std::to_string(files_checked) + " (" + p.name + ") disagrees");
            if (c.failures.size() > 5) break;
        }
        if (got.counts.physical() != split_lines(text).size()) c.failures.push_back("counts do not partition lines");
    }
    const double took = seconds_since(t0);
    c.expect(took < 30.0, "runtime " + std::to_string(took) + " s");
    return c;
}

/// Random C++ file built from lines that may trigger built-in rules.
std::string random_unit(std::mt19937_64& rng, int lines) {
    static const char* pool[] = {"int a = 0;",           "memcpy(dst, src, len);", "strcpy(name, input);",
                                 "// TODO: validate",    "return a;",              "x += 1;",
                                 "/* FIXME */ y = 2;",   "call(a, b);",            "if (a) { b(); }"};
    std::uniform_int_distribution<std::size_t> pick(0, std::size(pool) - 1);
    std::string out;
    for (int i = 0; i < lines; ++i) out += std::string(pool[pick(rng)]) + "\n";
    return out;
}

/// Inserts blank lines, deletes a line, or appends a line at random.
std::string mutate(std::mt19937_64& rng, const std::string& text) {
    std::vector<std::string> lines;
    std::istringstream in(text);
    for (std::string l; std::getline(in, l);) lines.push_back(l);
    std::uniform_int_distribution<int> op(0, 3);
    std::uniform_int_distribution<std::size_t> at(0, lines.size());
    for (int n = 0; n < 3; ++n) {
        switch (op(rng)) {
            case 0: lines.insert(lines.begin() + static_cast<std::ptrdiff_t>(at(rng) % (lines.size() + 1)), ""); break;
            case 1:
                if (!lines.empty()) lines.erase(lines.begin() + static_cast<std::ptrdiff_t>(at(rng) % lines.size()));
                break;
            case 2: lines.push_back("memcpy(out, buf, " + std::to_string(at(rng)) + ");"); break;
            default: break;
        }
    }
    std::string out;
    for (const auto& l : lines) out += l + "\n";
    return out;
}

Check diff_laws(const Scratch& s) {
    Check c;
    std::mt19937_64 rng(0xd1ff);
    const RulePack pack = builtin_rules();
    const auto t0 = Clock::now();
    for (int pair = 0; pair < 100; ++pair) {
        const fs::path root = s.dir("diff");
        std::vector<std::string> texts;
        for (int f = 0; f < 3; ++f) {
            texts.push_back(random_unit(rng, 12));
            write(root / ("u" + std::to_string(f) + ".cc"), texts.back());
        }
        const ScanResult base = scan(ingest(root), pack);
        for (int f = 0; f < 3; ++f) write(root / ("u" + std::to_string(f) + ".cc"), mutate(rng, texts[static_cast<std::size_t>(f)]));
        const ScanResult cur = scan(ingest(root), pack);
        const std::string problem = oracle::check_partition(base, cur, diff(base, cur));
        if (!problem.empty()) c.failures.push_back("pair " + std::to_string(pair) + ": " + problem);
        histogram_matches(c, base, "pair " + std::to_string(pair));
    }

    const fs::path root = s.dir("shift");
    write(root / "a.cc", "void f() {\n    memcpy(d, s, n);\n}\n");
    const ScanResult before = scan(ingest(root), pack);
    write(root / "a.cc", "\n\n\nvoid f() {\n    memcpy(d, s, n);\n}\n");
    const ScanResult after = scan(ingest(root), pack);
    const DiffResult d = diff(before, after);
    c.equal(d.new_findings.size(), std::size_t{0}, "line shift new");
    c.equal(d.fixed.size(), std::size_t{0}, "line shift fixed");
    c.equal(d.persistent.size(), std::size_t{1}, "line shift persistent");

    const double took = seconds_since(t0);
    c.expect(took < 10.0, "runtime " + std::to_string(took) + " s");
    return c;
}

/// Writes a mixed-language corpus of at least `target_lines` physical lines.
std::size_t synthetic_corpus(const fs::path& root, std::size_t target_lines) {
    std::mt19937_64 rng(100'000);
    static const char* cpp_lines[] = {"#include <cstring>", "// helper routines", "static int counter = 0;",
                                      "void step(char* dst, const char* src, int n) {", "    memcpy(dst, src, n);",
                                      "    if (n > 0) { counter += n; }", "    /* FIXME: bounds */", "}",
                                      "    char* p = (char*)malloc(n);", "    free(p);", "", "    strcpy(dst, src);",
                                      "    const char* s = \"// not a comment\";"};
    static const char* cs_lines[] = {"using System;", "public class Account {", "    string password = \"hunter2\";",
                                     "    var r = new Random();", "    // TODO: audit",
                                     "    string pwd = box.Text.ToUpper();", "    doc.LoadXml(input);", "}", "",
                                     "    lock (this) { n++; }"};
    static const char* sql_lines[] = {"-- report query", "SELECT id, name FROM users", "WHERE id = @id;", "",
                                      "/* XXX slow */", "UPDATE t SET x = 1;"};
    std::size_t written = 0;
    for (int file = 0; written < target_lines; ++file) {
        const int kind = file % 3;
        const char* const* pool = kind == 0 ? cpp_lines : kind == 1 ? cs_lines : sql_lines;
        const std::size_t n = kind == 0 ? std::size(cpp_lines) : kind == 1 ? std::size(cs_lines) : std::size(sql_lines);
        std::uniform_int_distribution<std::size_t> pick(0, n - 1);
        std::string text;
        for (int i = 0; i < 250; ++i) text += std::string(pool[pick(rng)]) + "\n";
        const char* ext = kind == 0 ? ".cc" : kind == 1 ? ".cs" : ".sql";
        write(root / ("mod" + std::to_string(file % 20)) / ("f" + std::to_string(file) + ext), text);
        written += 250;
    }
    return written;
}

std::string canonical_output(ScanResult r) {
    r.started_at.clear();
    r.duration_ms = 0;
    return render_structured(r);
}

Check determinism_and_throughput(const Scratch& s, Check& throughput, double& loc_per_s) {
    Check c;
    const fs::path root = s.dir("bulk");
    synthetic_corpus(root, 100'000);
    const unsigned jobs = std::max(8u, std::thread::hardware_concurrency());

    const auto t0 = Clock::now();
    IngestOptions io;
    io.jobs = jobs;
    ScanOptions so;
    so.jobs = jobs;
    const ScanResult first = scan(ingest(root, io), builtin_rules(), so);
    const double took = seconds_since(t0);
    const ScanResult second = scan(ingest(root, io), builtin_rules(), so);

    const std::size_t loc = first.grand_total().physical_lines;
    c.expect(loc >= 100'000, "corpus has " + std::to_string(loc) + " LOC");
    c.expect(canonical_output(first) == canonical_output(second), "structured outputs differ");
    c.expect(!first.findings.empty(), "no findings in synthetic corpus");
    histogram_matches(c, first, "bulk scan");

    loc_per_s = static_cast<double>(loc) / std::max(took, 1e-9);
    throughput.expect(loc >= 100'000, "corpus has " + std::to_string(loc) + " LOC");
    throughput.expect(loc_per_s >= 3000.0, "throughput " + std::to_string(loc_per_s) + " LOC/s");
    return c;
}

Check severity_headline(const Scratch& s) {
    Check c;
    const RulePack pack = parse_rulepack(R"([pack]
name = synthetic
version = 1

[rule]
id = synthetic.critical-sink
title = Critical sink
severity = critical
matcher = pattern
pattern = \bcritical_sink\s*\(

[rule]
id = synthetic.high-sink
title = High sink
severity = high
matcher = pattern
pattern = \bhigh_sink\s*\(
)");
    const fs::path root = s.dir("headline");
    int critical = 0, high = 0;
    for (int f = 0; f < 12; ++f) {
        std::string text = "void unit" + std::to_string(f) + "() {\n";
        for (int i = 0; i < 12; ++i) {
            if (critical < 4 && f % 3 == 0 && i == 5) {
                text += "    critical_sink(x);\n";
                ++critical;
            } else if (high < 104 && i % 4 != 3) {
                text += "    high_sink(y, " + std::to_string(i) + ");\n";
                ++high;
            } else {
                text += "    other(z);\n";
            }
        }
        write(root / ("src/unit" + std::to_string(f) + ".cc"), text + "}\n");
    }
    const ScanResult r = scan(ingest(root), pack);
    const auto h = severity_histogram(r.findings);
    c.equal(h[rank(Severity::Critical) - 1], std::size_t{4}, "Critical");
    c.equal(h[rank(Severity::High) - 1], std::size_t{104}, "High");
    c.equal(histogram_total(h), std::size_t{108}, "total");
    histogram_matches(c, r, "headline scan");
    const std::string summary = render_summary(r);
    c.expect(summary.find("Critical                   4") != std::string::npos, "summary Critical row");
    c.expect(summary.find("High                     104") != std::string::npos, "summary High row");
    return c;
}

int run_quiet(const std::vector<std::string>& args) {
    std::ostringstream sink;
    auto* old_out = std::cout.rdbuf(sink.rdbuf());
    auto* old_err = std::cerr.rdbuf(sink.rdbuf());
    const int rc = cli::run(args);
    std::cout.rdbuf(old_out);
    std::cerr.rdbuf(old_err);
    return rc;
}

Check ci_gate(const Scratch& s) {
    Check c;
    const fs::path work = s.dir("gate");
    const fs::path root = work / "corpus";
    write(root / "net/copy.cc", "void f(char* d, const char* s, int n) {\n    std::memcpy(d, s, n);\n}\n");
    write(root / "ui/View.cs", "// TODO: tidy\npublic class View {}\n");
    const std::string out = (work / "out").string();
    const std::string store = (work / "triage.jsonl").string();
    const std::vector<std::string> scan_args = {"scan", root.string(), "--out", out, "--store", store, "--fail-level", "high"};

    c.equal(run_quiet(scan_args), int{cli::kExitGate}, "High finding open");

    std::string fp;
    for (const auto& f : load_scan_or_baseline(fs::path(out) / "scan.json").findings)
        if (f.severity == Severity::High) fp = f.fingerprint;
    c.expect(!fp.empty(), "High finding present");

    c.equal(run_quiet({"triage", "set", fp, "confirmed", "--store", store}), int{cli::kExitClean}, "set confirmed");
    c.equal(run_quiet(scan_args), int{cli::kExitGate}, "confirmed High still gates");
    c.equal(run_quiet({"triage", "set", fp, "false_positive", "--store", store, "--note", "test data"}),
            int{cli::kExitClean}, "set false_positive");
    c.equal(run_quiet(scan_args), int{cli::kExitClean}, "suppressed High");

    // A line shift keeps the suppression; a new Critical reopens the gate.
    write(root / "net/copy.cc", "\n\nvoid f(char* d, const char* s, int n) {\n    std::memcpy(d, s, n);\n}\n");
    c.equal(run_quiet(scan_args), int{cli::kExitClean}, "suppression survives line shift");
    write(root / "net/more.cc", "void g(char* d, const char* s) {\n    strcpy(d, s);\n}\n");
    c.equal(run_quiet(scan_args), int{cli::kExitGate}, "new High after suppression");
    fs::remove(root / "net/more.cc");
    c.equal(run_quiet({"triage", "set", fp, "accepted_risk", "--store", store, "--note", "vendor"}), int{cli::kExitClean},
            "set accepted_risk");
    c.equal(run_quiet(scan_args), int{cli::kExitClean}, "accepted risk suppresses");
    c.equal(run_quiet({"triage", "set", fp, "unreviewed", "--store", store}), int{cli::kExitClean}, "reopen");
    c.equal(run_quiet(scan_args), int{cli::kExitGate}, "reopened High gates");
    return c;
}

int report(int n, const std::string& name, const Check& c, const std::string& detail = {}) {
    std::cout << (c.failures.empty() ? "PASS" : "FAIL") << " criterion " << n << ": " << name;
    if (!detail.empty()) std::cout << " (" << detail << ")";
    std::cout << "\n";
    for (const auto& f : c.failures) std::cout << "    " << f << "\n";
    return c.failures.empty() ? 0 : 1;
}

template <typename F>
Check guarded(F&& f) {
    try {
        return f();
    } catch (const std::exception& e) {
        Check c;
        c.failures.push_back(std::string("exception: ") + e.what());
        return c;
    }
}

}  // namespace

int main() {
    const Scratch scratch;
    int failed = 0;

    failed += report(1, "density arithmetic", guarded(density_arithmetic));
    failed += report(2, "snippet fixtures yield one finding each", guarded([&] { return snippet_fixtures(scratch); }));
    failed += report(3, "paired-resource fixtures", guarded([&] { return paired_fixtures(scratch); }));

    std::size_t files = 0;
    const Check classifier = guarded([&] { return classifier_oracle(files); });
    failed += report(4, "line classifier matches reference interpreter", classifier, std::to_string(files) + " files");
    failed += report(5, "diff partition laws and line shift", guarded([&] { return diff_laws(scratch); }));

    Check throughput;
    double loc_per_s = 0;
    const Check determinism = guarded([&] { return determinism_and_throughput(scratch, throughput, loc_per_s); });
    if (!determinism.failures.empty() && throughput.failures.empty() && loc_per_s == 0)
        throughput.failures.push_back("bulk scan did not complete");
    failed += report(6, "deterministic output on 100 kLOC corpus", determinism);
    std::ostringstream rate;
    rate << static_cast<long long>(loc_per_s) << " LOC/s";
    failed += report(7, "throughput at least 3000 LOC/s", throughput, rate.str());

    failed += report(8, "severity histogram sums and headline counts", guarded([&] { return severity_headline(scratch); }));
    failed += report(9, "CI gate follows triage", guarded([&] { return ci_gate(scratch); }));

    std::cout << (failed == 0 ? "all criteria passed" : std::to_string(failed) + " criteria failed") << "\n";
    return failed == 0 ? 0 : 1;
}
