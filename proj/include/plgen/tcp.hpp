#pragma once

#include <atomic>
#include <cstdint>
#include <memory>
#include <mutex>
#include <string>
#include <thread>
#include <vector>

namespace plgen {

/// Read-only TCP fan-out. Every connected client gets every message; a slow
/// client's queue drops its oldest messages past `queue_limit`, so broadcast() never blocks.
class TcpBroadcaster {
  public:
    /// Binds and listens; port 0 picks a free port. Throws Error on bind failure.
    TcpBroadcaster(const std::string& host, std::uint16_t port, std::size_t queue_limit = 10000);
    ~TcpBroadcaster();
    TcpBroadcaster(const TcpBroadcaster&) = delete;
    TcpBroadcaster& operator=(const TcpBroadcaster&) = delete;

    std::uint16_t port() const { return port_; }
    void broadcast(const std::string& message);
    std::size_t client_count() const;
    std::uint64_t dropped() const { return dropped_; }
    void stop();

  private:
    struct Client;
    int listen_fd_ = -1;
    std::uint16_t port_ = 0;
    std::size_t queue_limit_;
    std::atomic<bool> stopping_{false};
    std::atomic<std::uint64_t> dropped_{0};
    mutable std::mutex mutex_;
    std::vector<std::shared_ptr<Client>> clients_;
    std::thread acceptor_;

    void accept_loop();
    void reap();
};

}  // namespace plgen
