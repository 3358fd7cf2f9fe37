#pragma once

#include "vscan/metrics.hpp"

#include <filesystem>
#include <memory>
#include <optional>
#include <string>

namespace vscan {

struct ServeOptions {
    std::filesystem::path result_path;  ///< structured scan result or baseline file
    std::filesystem::path store_path;   ///< triage append log
    std::optional<std::filesystem::path> root_override;  ///< defaults to the root recorded in the result
    std::filesystem::path ui_dir;       ///< static UI bundle; empty serves a placeholder page
    std::string host = "127.0.0.1";
    int port = 8641;  ///< 0 picks a free port
    LineKind density_kind = LineKind::NCLOC;
    std::size_t page_size = 50;
};

/// Local HTTP API over one scan result and its triage store. Only the triage
/// store is ever written.
///
///   GET  /api/result
///   GET  /api/findings?severity=&state=&path=&page=&page_size=
///   GET  /api/source?path=&line=&context=
///   POST /api/findings/{fingerprint}/triage   {state, note, annotator}
///
/// Every JSON body carries `schema: 1`.
class Server {
  public:
    explicit Server(ServeOptions options);
    ~Server();
    Server(const Server&) = delete;
    Server& operator=(const Server&) = delete;

    /// Binds the socket. Returns false when the port is unavailable.
    bool bind();
    /// Port actually bound (after bind()).
    int port() const noexcept;
    /// Serves until stop(); requires a successful bind().
    void run();
    void stop();
    bool running() const;

  private:
    struct Impl;
    std::unique_ptr<Impl> impl_;
};

}  // namespace vscan
