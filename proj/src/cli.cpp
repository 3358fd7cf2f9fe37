#include "vscan/cli.hpp"

#include "CLI11.hpp"
#include "vscan/baseline.hpp"
#include "vscan/corpus.hpp"
#include "vscan/engine.hpp"
#include "vscan/error.hpp"
#include "vscan/keyfile.hpp"
#include "vscan/metrics.hpp"
#include "vscan/report.hpp"
#include "vscan/rulepack.hpp"
#include "vscan/serve.hpp"
#include "vscan/triage.hpp"

#include <spawn.h>
#include <sys/wait.h>
#include <unistd.h>

#include <atomic>
#include <csignal>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <thread>

extern char** environ;

namespace vscan::cli {

namespace fs = std::filesystem;

namespace {

/// Raised for bad flag values detected after CLI11 parsing.
struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

constexpr const char* kDefaultStore = "vscan-triage.jsonl";

/// Settings read from `--config`; every field is optional so flags can win.
struct FileConfig {
    std::vector<std::string> include;
    std::vector<std::string> exclude;
    std::vector<std::string> rules;
    std::optional<std::string> density;
    std::optional<std::string> fail_level;
    std::vector<std::string> languages;
    std::optional<bool> non_comment_only;
    std::optional<std::string> out;
    std::optional<std::string> store;
    std::optional<unsigned> jobs;
    std::vector<std::pair<std::string, std::string>> language_map;
};

bool parse_bool(const std::string& v) {
    return v == "true" || v == "yes" || v == "1" || v == "on";
}

FileConfig load_config(const std::string& path) {
    FileConfig cfg;
    if (path.empty()) return cfg;
    std::string text;
    try {
        text = read_file(path);
    } catch (const IoError& e) {
        throw ConfigError(std::string("cannot read config: ") + e.what());
    }
    const KeyFile kf = parse_keyfile(text);
    if (!kf.errors.empty())
        throw ConfigError(path + ":" + std::to_string(kf.errors.front().line) + ": " + kf.errors.front().message);
    for (const auto& sec : kf.sections) {
        if (sec.name == "languages") {
            for (const auto& e : sec.entries) cfg.language_map.emplace_back(e.key, e.value);
            continue;
        }
        if (sec.name != "scan") throw ConfigError(path + ": unknown section [" + sec.name + "]");
        for (const auto& e : sec.entries) {
            if (e.key == "include") cfg.include = split_list(e.value);
            else if (e.key == "exclude") cfg.exclude = split_list(e.value);
            else if (e.key == "rules") cfg.rules = split_list(e.value);
            else if (e.key == "density") cfg.density = e.value;
            else if (e.key == "fail_level") cfg.fail_level = e.value;
            else if (e.key == "languages") cfg.languages = split_list(e.value);
            else if (e.key == "non_comment_only") cfg.non_comment_only = parse_bool(e.value);
            else if (e.key == "out") cfg.out = e.value;
            else if (e.key == "store") cfg.store = e.value;
            else if (e.key == "jobs") cfg.jobs = static_cast<unsigned>(std::stoul(e.value));
            else throw ConfigError(path + ":" + std::to_string(e.line) + ": unknown key '" + e.key + "'");
        }
    }
    return cfg;
}

template <typename T>
T pick(const std::optional<T>& flag, const std::optional<T>& config, T fallback) {
    if (flag) return *flag;
    if (config) return *config;
    return fallback;
}

std::vector<std::string> pick_list(const std::vector<std::string>& flag, const std::vector<std::string>& config) {
    return flag.empty() ? config : flag;
}

Severity need_severity(const std::string& s) {
    auto sev = parse_severity(s);
    if (!sev) throw UsageError("unknown severity '" + s + "'");
    return *sev;
}

LineKind need_kind(const std::string& s) {
    auto k = parse_line_kind(s);
    if (!k) throw UsageError("density must be 'ncloc' or 'loc', got '" + s + "'");
    return *k;
}

void write_text(const fs::path& path, const std::string& text) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw IoError("cannot write " + path.string());
    out << text;
    if (!out) throw IoError("failed writing " + path.string());
}

/// Relative glob excluding `inner` when it lies inside `root`.
std::optional<std::string> exclusion_for(const fs::path& root, const fs::path& inner, bool directory) {
    std::error_code ec;
    const fs::path r = fs::weakly_canonical(root, ec);
    const fs::path p = fs::weakly_canonical(inner, ec);
    const fs::path rel = p.lexically_relative(r);
    if (rel.empty() || rel.native().rfind("..", 0) == 0 || rel == ".") return std::nullopt;
    return directory ? rel.generic_string() + "/**" : rel.generic_string();
}

// ---------------------------------------------------------------------------
// scan

struct ScanArgs {
    std::string root;
    std::string config;
    std::optional<std::string> out;
    std::vector<std::string> include;
    std::vector<std::string> exclude;
    std::vector<std::string> rules;
    bool no_builtin = false;
    std::vector<std::string> languages;
    std::vector<std::string> severities;
    std::optional<bool> non_comment_only;
    std::optional<std::string> density;
    std::string density_view = "raw";
    std::optional<std::string> fail_level;
    std::optional<std::string> store;
    bool csv = false;
    bool html = false;
    std::string baseline_out;
    std::string label;
    std::optional<unsigned> jobs;
    bool quiet = false;
};

int cmd_scan(const ScanArgs& a) {
    const FileConfig cfg = load_config(a.config);

    std::optional<std::string> env_out;
    if (const char* e = std::getenv(kOutDirEnv); e && *e) env_out = e;
    const std::string out_dir = a.out ? *a.out : env_out ? *env_out : cfg.out.value_or("vscan-out");
    const LineKind kind = need_kind(pick(a.density, cfg.density, std::string("ncloc")));
    const std::optional<std::string> fail_level_s = a.fail_level ? a.fail_level : cfg.fail_level;
    Severity fail_level = Severity::SuspiciousComment;
    if (fail_level_s) fail_level = need_severity(*fail_level_s);
    if (a.density_view != "raw" && a.density_view != "working")
        throw UsageError("--density-view must be 'raw' or 'working'");
    std::vector<Severity> severities;
    for (const auto& s : a.severities) severities.push_back(need_severity(s));
    const std::string store_path = pick(a.store, cfg.store, std::string(kDefaultStore));

    if (!fs::is_directory(a.root)) throw ConfigError("corpus root not found: " + a.root);

    LanguageRegistry registry = LanguageRegistry::builtin();
    for (const auto& [ext, lang] : cfg.language_map) registry.map_extension(ext, lang);

    std::vector<RulePack> packs;
    if (!a.no_builtin) packs.push_back(builtin_rules());
    for (const auto& path : pick_list(a.rules, cfg.rules)) packs.push_back(load_rulepack(path));
    if (packs.empty()) throw UsageError("no rule packs: --no-builtin given without --rules");
    const RulePack pack = merge_packs(packs);
    for (const auto& d : validate_pack(pack, registry))
        if (d.level == Diagnostic::Level::Warning && !a.quiet)
            std::cerr << "warning: rule " << d.rule_id << ": " << d.message << "\n";

    IngestOptions io;
    io.include_globs = pick_list(a.include, cfg.include);
    io.exclude_globs = pick_list(a.exclude, cfg.exclude);
    io.exclude_globs.insert(io.exclude_globs.end(), {".git/**", "**/.git/**"});
    if (auto ex = exclusion_for(a.root, out_dir, true)) io.exclude_globs.push_back(*ex);
    if (auto ex = exclusion_for(a.root, store_path, false)) io.exclude_globs.push_back(*ex);
    io.jobs = pick(a.jobs, cfg.jobs, 0u);
    io.registry = &registry;
    const CorpusInventory inv = ingest(a.root, io);

    ScanOptions so;
    so.languages = pick_list(a.languages, cfg.languages);
    so.severities = severities;
    so.non_comment_only = pick(a.non_comment_only, cfg.non_comment_only, false);
    so.jobs = io.jobs;
    so.registry = &registry;
    const ScanResult result = scan(inv, pack, so);

    fs::create_directories(out_dir);
    write_text(fs::path(out_dir) / "scan.json", render_structured(result, kind));
    if (a.csv) write_text(fs::path(out_dir) / "findings.csv", render_csv(result.findings));
    if (a.html) write_text(fs::path(out_dir) / "report.html", render_html(result, kind));
    if (!a.baseline_out.empty()) save_baseline(result, a.baseline_out, a.label);

    const TriageStore store(fs::exists(store_path) ? fs::path(store_path) : fs::path());
    const WorkingView view = apply_triage(result, store);

    if (!a.quiet) {
        std::cout << render_summary(result, kind);
        if (a.density_view == "working") {
            const LanguageTotals t = result.grand_total();
            const std::size_t lines = kind == LineKind::LOC ? t.physical_lines : t.code_lines;
            if (lines > 0)
                std::cout << "Density, working view (" << to_string(kind) << "): " << density(view.open, lines, kind).display
                          << "\n";
        }
        std::cout << "Triage:     " << view.open << " open, " << view.suppressed << " suppressed\n";
        std::cout << "Results written to " << out_dir << "\n";
        for (const auto& w : result.warnings) std::cerr << "warning: " << w << "\n";
    }

    if (fail_level_s) {
        for (const auto& e : view.entries)
            if (!is_suppressed(e.state) && rank(e.finding.severity) <= rank(fail_level)) {
                if (!a.quiet)
                    std::cerr << "gate: unsuppressed " << to_label(e.finding.severity) << " finding at "
                              << e.finding.path << ":" << e.finding.line << "\n";
                return kExitGate;
            }
    }
    return kExitClean;
}

// ---------------------------------------------------------------------------
// diff

struct DiffArgs {
    std::string baseline;
    std::string current;
    bool fail_on_new = false;
    std::optional<std::string> store;
    std::string format = "text";
    std::string out;
};

int cmd_diff(const DiffArgs& a) {
    if (a.format != "text" && a.format != "json" && a.format != "html")
        throw UsageError("--format must be text, json or html");
    const ScanResult base = load_scan_or_baseline(a.baseline);
    const ScanResult cur = load_scan_or_baseline(a.current);
    const DiffResult d = diff(base, cur);

    const std::string rendered = a.format == "json"   ? render_diff_structured(d)
                                 : a.format == "html" ? render_html(cur, LineKind::NCLOC, &d)
                                                      : render_diff_text(d);
    if (a.out.empty()) std::cout << rendered;
    else {
        write_text(a.out, rendered);
        std::cout << d.new_findings.size() << " new, " << d.fixed.size() << " fixed, " << d.persistent.size()
                  << " persistent\n";
    }

    if (a.fail_on_new) {
        const std::string store_path = a.store.value_or(kDefaultStore);
        const TriageStore store(fs::exists(store_path) ? fs::path(store_path) : fs::path());
        for (const auto& f : d.new_findings)
            if (!is_suppressed(store.state_of(f.fingerprint))) return kExitGate;
    }
    return kExitClean;
}

// ---------------------------------------------------------------------------
// triage

struct TriageArgs {
    std::string store = kDefaultStore;
    std::string fingerprint;
    std::string state;
    std::string note;
    std::string annotator;
    std::string result;
    std::string format = "csv";
    std::string out;
    bool full = false;
};

int cmd_triage_list(const TriageArgs& a) {
    const TriageStore store(a.store);
    for (const auto& w : store.warnings()) std::cerr << "warning: " << w << "\n";
    for (const auto& [fp, r] : store.records())
        std::cout << fp << "\t" << to_string(r.state) << "\t" << r.updated_at << "\t" << r.annotator << "\t" << r.note
                  << "\n";
    std::cout << store.records().size() << " records, " << store.log_size() << " log entries\n";
    return kExitClean;
}

int cmd_triage_set(const TriageArgs& a) {
    const auto state = parse_triage_state(a.state);
    if (!state)
        throw UsageError("unknown state '" + a.state +
                         "' (expected unreviewed, confirmed, false_positive, accepted_risk, remediated)");
    std::set<std::string> known;
    const bool have_result = !a.result.empty();
    if (have_result)
        for (const auto& f : load_scan_or_baseline(a.result).findings) known.insert(f.fingerprint);
    TriageStore store(a.store);
    std::string annotator = a.annotator;
    if (annotator.empty())
        if (const char* u = std::getenv("USER")) annotator = u;
    auto outcome = store.set_state(a.fingerprint, *state, a.note, annotator, have_result ? &known : nullptr);
    for (const auto& w : outcome.warnings) std::cerr << "warning: " << w << "\n";
    std::cout << a.fingerprint << " -> " << to_string(*state) << "\n";
    return kExitClean;
}

int cmd_triage_export(const TriageArgs& a) {
    const auto format = parse_backlog_format(a.format);
    if (!format) throw UsageError("--format must be csv or json");
    if (a.result.empty()) throw UsageError("--result is required for export");
    const ScanResult result = load_scan_or_baseline(a.result);
    const TriageStore store(fs::exists(a.store) ? fs::path(a.store) : fs::path());
    const WorkingView view = apply_triage(result, store);
    const std::string text = a.full ? export_full(view, *format) : export_backlog(view, *format);
    if (a.out.empty()) std::cout << text;
    else write_text(a.out, text);
    return kExitClean;
}

// ---------------------------------------------------------------------------
// serve

std::atomic<bool> g_stop_requested{false};

extern "C" void on_signal(int) { g_stop_requested = true; }

struct ServeArgs {
    std::string result;
    std::string store = kDefaultStore;
    std::string root;
    std::string ui_dir;
    std::string host = "127.0.0.1";
    int port = 8641;
    std::string density = "ncloc";
};

int cmd_serve(const ServeArgs& a) {
    if (!fs::is_regular_file(a.result)) throw ConfigError("scan result not found: " + a.result);
    load_scan_or_baseline(a.result);  // fail fast on an unreadable result

    ServeOptions so;
    so.result_path = a.result;
    so.store_path = a.store;
    if (!a.root.empty()) so.root_override = fs::path(a.root);
    so.ui_dir = a.ui_dir;
    so.host = a.host;
    so.port = a.port;
    so.density_kind = need_kind(a.density);

    Server server(so);
    if (!server.bind()) throw ConfigError("cannot bind " + a.host + ":" + std::to_string(a.port) + " (port in use?)");

    g_stop_requested = false;
    std::signal(SIGINT, on_signal);
    std::signal(SIGTERM, on_signal);
    std::jthread watcher([&server](std::stop_token st) {
        while (!st.stop_requested() && !g_stop_requested)
            std::this_thread::sleep_for(std::chrono::milliseconds(100));
        server.stop();
    });
    std::cout << "serving http://" << a.host << ":" << server.port() << "/ (Ctrl-C to stop)" << std::endl;
    server.run();
    watcher.request_stop();
    std::signal(SIGINT, SIG_DFL);
    std::signal(SIGTERM, SIG_DFL);
    std::cout << "server stopped; triage store " << a.store << " is up to date\n";
    return kExitClean;
}

// ---------------------------------------------------------------------------
// acquire, baseline, rules

std::optional<std::string> find_in_path(const std::string& exe) {
    const char* path = std::getenv("PATH");
    if (!path) return std::nullopt;
    std::string p(path);
    std::size_t start = 0;
    while (start <= p.size()) {
        const auto colon = p.find(':', start);
        const std::string dir = p.substr(start, colon == std::string::npos ? std::string::npos : colon - start);
        if (!dir.empty() && ::access((fs::path(dir) / exe).c_str(), X_OK) == 0) return (fs::path(dir) / exe).string();
        if (colon == std::string::npos) break;
        start = colon + 1;
    }
    return std::nullopt;
}

int cmd_acquire(const std::string& source, const std::string& dest, const std::string& vcs) {
    const auto exe = find_in_path(vcs);
    if (!exe) {
        std::cout << vcs << " is not installed; copy the code base into " << dest << " manually and run `vscan scan "
                  << dest << "`\n";
        return kExitClean;
    }
    std::vector<std::string> argv_s = {vcs, "clone", "--depth", "1", source, dest};
    std::vector<char*> argv;
    for (auto& s : argv_s) argv.push_back(s.data());
    argv.push_back(nullptr);
    pid_t pid = 0;
    if (posix_spawn(&pid, exe->c_str(), nullptr, nullptr, argv.data(), environ) != 0)
        throw IoError("cannot start " + *exe);
    int status = 0;
    waitpid(pid, &status, 0);
    if (!WIFEXITED(status) || WEXITSTATUS(status) != 0) throw IoError(vcs + " clone failed");
    return kExitClean;
}

int cmd_baseline(const std::string& result, const std::string& out, const std::string& label) {
    save_baseline(load_scan_or_baseline(result), out, label);
    std::cout << "baseline written to " << out << "\n";
    return kExitClean;
}

int cmd_rules(const std::string& file, bool dump) {
    const RulePack pack = file.empty() ? builtin_rules() : load_rulepack(file);
    if (dump) {
        std::cout << serialize_rulepack(pack);
        return kExitClean;
    }
    const auto diags = validate_pack(pack);
    for (const auto& r : pack.rules)
        std::cout << r.id << "\t" << (r.severity ? to_label(*r.severity) : "?") << "\t" << r.title << "\n";
    for (const auto& d : diags)
        std::cerr << (d.level == Diagnostic::Level::Error ? "error" : "warning") << ": " << d.rule_id << ": "
                  << d.message << "\n";
    const bool errors = std::any_of(diags.begin(), diags.end(),
                                    [](const Diagnostic& d) { return d.level == Diagnostic::Level::Error; });
    return errors ? kExitError : kExitClean;
}

}  // namespace

int run(int argc, char** argv) {
    CLI::App app{"vscan: static security vulnerability scanner", "vscan"};
    app.require_subcommand(1);
    app.fallthrough();

    std::string config;
    app.add_option("--config", config, "Config file (same format as rule files)");

    // scan
    ScanArgs sa;
    auto* scan_cmd = app.add_subcommand("scan", "Ingest a code base, run the rule packs, write results");
    scan_cmd->add_option("root", sa.root, "Corpus root directory")->required();
    scan_cmd->add_option("--config", sa.config, "Config file");
    scan_cmd->add_option("--out,-o", sa.out, "Output directory (env VSCAN_OUT)");
    scan_cmd->add_option("--include", sa.include, "Include glob (repeatable)");
    scan_cmd->add_option("--exclude", sa.exclude, "Exclude glob (repeatable)");
    scan_cmd->add_option("--rules", sa.rules, "Extra rule file (repeatable)");
    scan_cmd->add_flag("--no-builtin", sa.no_builtin, "Do not load the built-in rule pack");
    scan_cmd->add_option("--languages", sa.languages, "Only scan these languages")->delimiter(',');
    scan_cmd->add_option("--severities", sa.severities, "Only run rules of these severities")->delimiter(',');
    scan_cmd->add_flag("--non-comment-only{true}", sa.non_comment_only, "Pattern rules skip comment lines");
    scan_cmd->add_option("--density", sa.density, "Density denominator: ncloc (default) or loc");
    scan_cmd->add_option("--density-view", sa.density_view, "raw (default) or working (after triage)");
    scan_cmd->add_option("--fail-level", sa.fail_level, "Exit 2 if an unsuppressed finding is at or above this severity");
    scan_cmd->add_option("--store", sa.store, "Triage store");
    scan_cmd->add_flag("--csv", sa.csv, "Also write findings.csv");
    scan_cmd->add_flag("--html", sa.html, "Also write report.html");
    scan_cmd->add_option("--baseline-out", sa.baseline_out, "Also save the result as a baseline file");
    scan_cmd->add_option("--label", sa.label, "Baseline label");
    scan_cmd->add_option("--jobs,-j", sa.jobs, "Worker threads (0 = all cores)");
    scan_cmd->add_flag("--quiet,-q", sa.quiet, "No summary output");

    // diff
    DiffArgs da;
    auto* diff_cmd = app.add_subcommand("diff", "Compare a rescan against a baseline");
    diff_cmd->add_option("baseline", da.baseline, "Baseline or scan result")->required();
    diff_cmd->add_option("current", da.current, "Current scan result")->required();
    diff_cmd->add_flag("--fail-on-new", da.fail_on_new, "Exit 2 when unsuppressed new findings exist");
    diff_cmd->add_option("--store", da.store, "Triage store");
    diff_cmd->add_option("--format", da.format, "text (default), json or html");
    diff_cmd->add_option("--out,-o", da.out, "Write the diff report to a file");

    // triage
    TriageArgs ta;
    auto* triage_cmd = app.add_subcommand("triage", "Record and export human dispositions");
    triage_cmd->require_subcommand(1);
    triage_cmd->add_option("--store", ta.store, "Triage store");
    auto* t_list = triage_cmd->add_subcommand("list", "Show current dispositions");
    auto* t_set = triage_cmd->add_subcommand("set", "Set the state of one finding");
    t_set->add_option("fingerprint", ta.fingerprint)->required();
    t_set->add_option("state", ta.state, "unreviewed|confirmed|false_positive|accepted_risk|remediated")->required();
    t_set->add_option("--note", ta.note);
    t_set->add_option("--annotator", ta.annotator);
    t_set->add_option("--result", ta.result, "Scan result used to check the fingerprint");
    t_set->add_option("--store", ta.store, "Triage store");
    auto* t_export = triage_cmd->add_subcommand("export", "Export the prioritized backlog");
    t_export->add_option("--format", ta.format, "csv (default) or json");
    t_export->add_option("--result", ta.result, "Scan result")->required();
    t_export->add_option("--out,-o", ta.out);
    t_export->add_flag("--full", ta.full, "Include suppressed findings");
    t_export->add_option("--store", ta.store, "Triage store");
    t_list->add_option("--store", ta.store, "Triage store");

    // serve
    ServeArgs va;
    auto* serve_cmd = app.add_subcommand("serve", "Serve the triage API and UI");
    serve_cmd->add_option("--result", va.result, "Scan result")->required();
    serve_cmd->add_option("--port", va.port);
    serve_cmd->add_option("--host", va.host);
    serve_cmd->add_option("--store", va.store);
    serve_cmd->add_option("--root", va.root, "Corpus root (defaults to the one in the result)");
    serve_cmd->add_option("--ui-dir", va.ui_dir, "Static UI bundle directory");
    serve_cmd->add_option("--density", va.density);

    // baseline
    std::string b_result, b_out, b_label;
    auto* baseline_cmd = app.add_subcommand("baseline", "Save a scan result as a checksummed baseline");
    baseline_cmd->add_option("result", b_result)->required();
    baseline_cmd->add_option("out", b_out)->required();
    baseline_cmd->add_option("--label", b_label);

    // acquire
    std::string q_source, q_dest, q_vcs = "git";
    auto* acquire_cmd = app.add_subcommand("acquire", "Fetch a code base with an external VCS client");
    acquire_cmd->add_option("source", q_source)->required();
    acquire_cmd->add_option("dest", q_dest)->required();
    acquire_cmd->add_option("--vcs", q_vcs);

    // rules
    std::string r_file;
    bool r_dump = false;
    auto* rules_cmd = app.add_subcommand("rules", "List or validate rule packs");
    rules_cmd->add_option("file", r_file, "Rule file (default: built-in pack)");
    rules_cmd->add_flag("--dump", r_dump, "Print the pack in rule-file format");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e) == 0 ? kExitClean : kExitUsage;
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e) == 0 ? kExitClean : kExitUsage;
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kExitUsage;
    }
    if (!config.empty() && sa.config.empty()) sa.config = config;

    try {
        if (!config.empty() && !*scan_cmd) {
            const FileConfig cfg = load_config(config);
            if (cfg.store) {
                if (!da.store) da.store = cfg.store;
                if (ta.store == kDefaultStore) ta.store = *cfg.store;
                if (va.store == kDefaultStore) va.store = *cfg.store;
            }
            if (cfg.density && va.density == "ncloc") va.density = *cfg.density;
        }
        if (*scan_cmd) return cmd_scan(sa);
        if (*diff_cmd) return cmd_diff(da);
        if (*triage_cmd) {
            if (*t_list) return cmd_triage_list(ta);
            if (*t_set) return cmd_triage_set(ta);
            if (*t_export) return cmd_triage_export(ta);
        }
        if (*serve_cmd) return cmd_serve(va);
        if (*baseline_cmd) return cmd_baseline(b_result, b_out, b_label);
        if (*acquire_cmd) return cmd_acquire(q_source, q_dest, q_vcs);
        if (*rules_cmd) return cmd_rules(r_file, r_dump);
    } catch (const UsageError& e) {
        std::cerr << "usage error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitError;
    }
    return kExitUsage;
}

int run(const std::vector<std::string>& args) {
    std::vector<std::string> storage;
    storage.reserve(args.size() + 1);
    storage.emplace_back("vscan");
    storage.insert(storage.end(), args.begin(), args.end());
    std::vector<char*> argv;
    for (auto& s : storage) argv.push_back(s.data());
    argv.push_back(nullptr);
    return run(static_cast<int>(storage.size()), argv.data());
}

}  // namespace vscan::cli
