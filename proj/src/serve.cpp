#include "vscan/serve.hpp"

#include "httplib.h"
#include "json_codec.hpp"
#include "vscan/baseline.hpp"
#include "vscan/error.hpp"
#include "vscan/triage.hpp"

#include <charconv>
#include <mutex>

namespace vscan {

using json_codec::json;
namespace fs = std::filesystem;

namespace {

constexpr std::string_view kPlaceholderPage = R"html(<!DOCTYPE html>
<html lang="en"><head><meta charset="utf-8"><title>vscan triage</title></head>
<body><h1>vscan triage server</h1>
<p>The triage UI bundle is not installed. The API is available under <code>/api/</code>:
<code>/api/result</code>, <code>/api/findings</code>, <code>/api/source</code>.</p>
</body></html>
)html";

std::optional<long> parse_int(const std::string& s) {
    long v = 0;
    const auto* end = s.data() + s.size();
    auto [p, ec] = std::from_chars(s.data(), end, v);
    if (ec != std::errc() || p != end) return std::nullopt;
    return v;
}

bool path_within(const fs::path& root, const fs::path& candidate) {
    auto r = root.begin();
    auto c = candidate.begin();
    for (; r != root.end(); ++r, ++c) {
        if (r->empty()) continue;
        if (c == candidate.end() || *r != *c) return false;
    }
    return true;
}

}  // namespace

struct Server::Impl {
    ServeOptions opts;
    httplib::Server http;
    TriageStore store;
    int bound_port = -1;

    std::mutex cache_mutex;
    std::optional<fs::file_time_type> cached_mtime;
    std::shared_ptr<const ScanResult> cached;

    explicit Impl(ServeOptions o) : opts(std::move(o)), store(opts.store_path) {
        // httplib's default adds SO_REUSEPORT, which lets a second server share a busy port.
        http.set_socket_options([](socket_t sock) {
            int yes = 1;
            ::setsockopt(sock, SOL_SOCKET, SO_REUSEADDR, &yes, sizeof(yes));
        });
    }

    std::shared_ptr<const ScanResult> result() {
        std::lock_guard lock(cache_mutex);
        const auto mtime = fs::last_write_time(opts.result_path);  // throws when missing
        if (!cached || cached_mtime != mtime) {
            cached = std::make_shared<const ScanResult>(load_scan_or_baseline(opts.result_path));
            cached_mtime = mtime;
        }
        return cached;
    }

    std::string origin() const { return "http://" + opts.host + ":" + std::to_string(bound_port); }

    void send(httplib::Response& res, int status, json body) {
        body["schema"] = 1;
        res.status = status;
        res.set_header("Access-Control-Allow-Origin", origin());
        res.set_header("Vary", "Origin");
        res.set_content(body.dump(), "application/json");
    }

    void error(httplib::Response& res, int status, const std::string& message) {
        send(res, status, json{{"error", message}});
    }

    void get_result(const httplib::Request&, httplib::Response& res) {
        std::shared_ptr<const ScanResult> r;
        try {
            r = result();
        } catch (const std::exception& e) {
            return error(res, 500, std::string("scan result unreadable: ") + e.what());
        }
        const WorkingView view = apply_triage(*r, store);
        const LanguageTotals g = r->grand_total();
        json langs = json::object();
        for (const auto& [lang, t] : r->totals) langs[lang] = json_codec::to_json(t);
        send(res, 200,
             json{{"root", r->root},
                  {"started_at", r->started_at},
                  {"duration_ms", r->duration_ms},
                  {"pack", {{"name", r->pack_name}, {"version", r->pack_version}}},
                  {"summary", json_codec::to_json(g)},
                  {"languages", langs},
                  {"metrics", json_codec::metrics_to_json(*r, opts.density_kind)},
                  {"triage", {{"total", view.total}, {"suppressed", view.suppressed}, {"open", view.open}}},
                  {"warnings", r->warnings.size()}});
    }

    void get_findings(const httplib::Request& req, httplib::Response& res) {
        std::optional<Severity> severity;
        std::optional<TriageState> state;
        std::string path_filter;
        long page = 1;
        long page_size = static_cast<long>(opts.page_size);

        if (req.has_param("severity") && !req.get_param_value("severity").empty()) {
            severity = parse_severity(req.get_param_value("severity"));
            if (!severity) return error(res, 400, "unknown severity '" + req.get_param_value("severity") + "'");
        }
        if (req.has_param("state") && !req.get_param_value("state").empty()) {
            state = parse_triage_state(req.get_param_value("state"));
            if (!state) return error(res, 400, "unknown state '" + req.get_param_value("state") + "'");
        }
        if (req.has_param("path")) path_filter = req.get_param_value("path");
        if (req.has_param("page") && !req.get_param_value("page").empty()) {
            auto v = parse_int(req.get_param_value("page"));
            if (!v || *v < 1) return error(res, 400, "page must be a positive integer");
            page = *v;
        }
        if (req.has_param("page_size") && !req.get_param_value("page_size").empty()) {
            auto v = parse_int(req.get_param_value("page_size"));
            if (!v || *v < 1 || *v > 1000) return error(res, 400, "page_size must be between 1 and 1000");
            page_size = *v;
        }

        std::shared_ptr<const ScanResult> r;
        try {
            r = result();
        } catch (const std::exception& e) {
            return error(res, 500, std::string("scan result unreadable: ") + e.what());
        }
        const WorkingView view = apply_triage(*r, store);
        std::vector<const ViewEntry*> matched;
        for (const auto& e : view.entries) {
            if (severity && e.finding.severity != *severity) continue;
            if (state && e.state != *state) continue;
            if (!path_filter.empty() && e.finding.path.rfind(path_filter, 0) != 0) continue;
            matched.push_back(&e);
        }
        json items = json::array();
        const std::size_t first = static_cast<std::size_t>((page - 1) * page_size);
        for (std::size_t i = first; i < matched.size() && i < first + static_cast<std::size_t>(page_size); ++i) {
            json f = json_codec::to_json(matched[i]->finding);
            f["state"] = to_string(matched[i]->state);
            f["note"] = matched[i]->note;
            f["suppressed"] = is_suppressed(matched[i]->state);
            items.push_back(std::move(f));
        }
        const std::size_t pages = (matched.size() + static_cast<std::size_t>(page_size) - 1) / static_cast<std::size_t>(page_size);
        send(res, 200,
             json{{"total", matched.size()},
                  {"page", page},
                  {"page_size", page_size},
                  {"pages", pages},
                  {"findings", items},
                  {"counts", {{"total", view.total}, {"suppressed", view.suppressed}, {"open", view.open}}}});
    }

    void get_source(const httplib::Request& req, httplib::Response& res) {
        const std::string rel = req.get_param_value("path");
        if (rel.empty()) return error(res, 400, "missing path");
        auto line = parse_int(req.has_param("line") ? req.get_param_value("line") : "1");
        auto context = parse_int(req.has_param("context") ? req.get_param_value("context") : "3");
        if (!line || *line < 1) return error(res, 400, "line must be a positive integer");
        if (!context || *context < 0 || *context > 500) return error(res, 400, "context must be between 0 and 500");

        fs::path root;
        if (opts.root_override) {
            root = *opts.root_override;
        } else {
            try {
                root = result()->root;
            } catch (const std::exception& e) {
                return error(res, 500, std::string("scan result unreadable: ") + e.what());
            }
        }
        const fs::path relative(rel);
        if (relative.is_absolute()) return error(res, 403, "path outside corpus root");
        std::error_code ec;
        const fs::path canon_root = fs::weakly_canonical(root, ec);
        const fs::path target = fs::weakly_canonical(root / relative, ec);
        if (ec || !path_within(canon_root, target)) return error(res, 403, "path outside corpus root");
        if (!fs::is_regular_file(target, ec)) return error(res, 404, "file not found: " + rel);

        std::string text;
        try {
            text = sanitize_utf8(read_file(target));
        } catch (const std::exception& e) {
            return error(res, 404, e.what());
        }
        const auto lines = split_lines(text);
        if (static_cast<std::size_t>(*line) > lines.size())
            return error(res, 404, "line " + std::to_string(*line) + " is past the end of " + rel);
        const long start = std::max(1L, *line - *context);
        const long end = std::min(static_cast<long>(lines.size()), *line + *context);
        json out = json::array();
        for (long n = start; n <= end; ++n)
            out.push_back({{"number", n}, {"text", lines[static_cast<std::size_t>(n - 1)]}, {"flagged", n == *line}});
        send(res, 200, json{{"path", rel}, {"line", *line}, {"start", start}, {"end", end}, {"lines", out}});
    }

    void post_triage(const httplib::Request& req, httplib::Response& res) {
        const std::string fp = req.matches[1];
        json body;
        try {
            body = json::parse(req.body);
        } catch (const json::exception&) {
            return error(res, 400, "request body must be JSON");
        }
        if (!body.is_object() || !body.contains("state") || !body["state"].is_string())
            return error(res, 422, "missing state");
        const auto state = parse_triage_state(body["state"].get<std::string>());
        if (!state) return error(res, 422, "invalid state '" + body["state"].get<std::string>() + "'");
        const std::string note = body.value("note", "");
        const std::string annotator = body.value("annotator", "");

        std::set<std::string> known;
        try {
            for (const auto& f : result()->findings) known.insert(f.fingerprint);
        } catch (const std::exception&) {
        }
        try {
            auto outcome = store.set_state(fp, *state, note, annotator, &known);
            const auto& rec = outcome.record;
            send(res, 200,
                 json{{"record",
                       {{"fingerprint", rec.fingerprint},
                        {"state", to_string(rec.state)},
                        {"note", rec.note},
                        {"annotator", rec.annotator},
                        {"updated_at", rec.updated_at}}},
                      {"warnings", outcome.warnings}});
        } catch (const TriageError& e) {
            switch (e.kind()) {
                case TriageError::Kind::Locked: return error(res, 409, e.what());
                case TriageError::Kind::InvalidState:
                case TriageError::Kind::InvalidTransition: return error(res, 422, e.what());
                default: return error(res, 500, e.what());
            }
        }
    }

    void routes() {
        http.Get("/api/result", [this](const auto& req, auto& res) { get_result(req, res); });
        http.Get("/api/findings", [this](const auto& req, auto& res) { get_findings(req, res); });
        http.Get("/api/source", [this](const auto& req, auto& res) { get_source(req, res); });
        http.Post(R"(/api/findings/([0-9A-Za-z_-]+)/triage)",
                  [this](const auto& req, auto& res) { post_triage(req, res); });
        http.Options(R"(/api/.*)", [this](const auto&, auto& res) {
            res.set_header("Access-Control-Allow-Origin", origin());
            res.set_header("Access-Control-Allow-Methods", "GET, POST, OPTIONS");
            res.set_header("Access-Control-Allow-Headers", "Content-Type");
            res.status = 204;
        });
        if (!opts.ui_dir.empty() && fs::is_directory(opts.ui_dir)) {
            http.set_mount_point("/", opts.ui_dir.string());
        } else {
            http.Get("/", [](const auto&, auto& res) { res.set_content(std::string(kPlaceholderPage), "text/html"); });
        }
    }
};

Server::Server(ServeOptions options) : impl_(std::make_unique<Impl>(std::move(options))) { impl_->routes(); }

Server::~Server() { stop(); }

bool Server::bind() {
    if (impl_->opts.port == 0) {
        impl_->bound_port = impl_->http.bind_to_any_port(impl_->opts.host);
        return impl_->bound_port > 0;
    }
    if (!impl_->http.bind_to_port(impl_->opts.host, impl_->opts.port)) return false;
    impl_->bound_port = impl_->opts.port;
    return true;
}

int Server::port() const noexcept { return impl_->bound_port; }

void Server::run() { impl_->http.listen_after_bind(); }

void Server::stop() {
    if (impl_->http.is_running()) impl_->http.stop();
}

bool Server::running() const { return impl_->http.is_running(); }

}  // namespace vscan
