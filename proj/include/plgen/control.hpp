#pragma once

#include <atomic>
#include <cstdint>
#include <memory>
#include <mutex>
#include <string>
#include <thread>

#include "plgen/stream.hpp"

namespace httplib {
class Server;
}

namespace plgen {

/// HTTP control plane for a stream session, on its own port:
///
///     GET  /v1/status      session snapshot
///     POST /v1/model       native JSON or PNML body; swaps the streamed model
///     POST /v1/multiplier  {"value": m} or a bare number
///     POST /v1/stop        stops the session
///     GET  /v1/feed        server-sent events: "event" per emitted event, "status" every second
///
/// Every endpoint answers 404 while no session is attached.
class ControlServer {
  public:
    ControlServer();
    ~ControlServer();
    ControlServer(const ControlServer&) = delete;
    ControlServer& operator=(const ControlServer&) = delete;

    void attach(std::shared_ptr<StreamSession> session);
    void detach();

    /// Serves files under `dir` at "/" (e.g. a built dashboard).
    void set_static_dir(const std::string& dir);

    /// Binds (port 0 picks one) and serves on a background thread. Throws Error on bind failure.
    void start(const std::string& host, std::uint16_t port);
    void stop();
    std::uint16_t port() const { return port_; }

    /// Per-subscriber feed queue length before the oldest frames are dropped.
    void set_feed_queue_limit(std::size_t n) { feed_limit_ = n; }

  private:
    std::unique_ptr<httplib::Server> server_;
    std::thread thread_;
    std::uint16_t port_ = 0;
    std::size_t feed_limit_ = 1000;
    std::atomic<bool> stopping_{false};
    mutable std::mutex mutex_;
    std::shared_ptr<StreamSession> session_;

    std::shared_ptr<StreamSession> session() const;
    void routes();
};

}  // namespace plgen
