#include "plgen/tcp.hpp"

#include <arpa/inet.h>
#include <netdb.h>
#include <netinet/in.h>
#include <netinet/tcp.h>
#include <poll.h>
#include <sys/socket.h>
#include <unistd.h>

#include <condition_variable>
#include <cstring>
#include <deque>
#include <iostream>

#include "plgen/error.hpp"

namespace plgen {

struct TcpBroadcaster::Client {
    int fd = -1;
    std::mutex mutex;
    std::condition_variable cv;
    std::deque<std::string> queue;
    bool closing = false;
    std::atomic<bool> done{false};
    std::thread writer;

    void run() {
        for (;;) {
            std::string msg;
            {
                std::unique_lock lock(mutex);
                cv.wait(lock, [&] { return closing || !queue.empty(); });
                if (queue.empty()) break;
                msg = std::move(queue.front());
                queue.pop_front();
            }
            std::size_t off = 0;
            while (off < msg.size()) {
                const auto n = ::send(fd, msg.data() + off, msg.size() - off, MSG_NOSIGNAL);
                if (n <= 0) {
                    if (n < 0 && errno == EINTR) continue;
                    done = true;
                    return;
                }
                off += static_cast<std::size_t>(n);
            }
        }
        done = true;
    }
};

TcpBroadcaster::TcpBroadcaster(const std::string& host, std::uint16_t port, std::size_t queue_limit) : queue_limit_(queue_limit) {
    addrinfo hints{};
    hints.ai_family = AF_UNSPEC;
    hints.ai_socktype = SOCK_STREAM;
    hints.ai_flags = AI_PASSIVE;
    addrinfo* res = nullptr;
    const auto service = std::to_string(port);
    if (int rc = ::getaddrinfo(host.empty() ? nullptr : host.c_str(), service.c_str(), &hints, &res); rc != 0)
        throw Error("cannot resolve " + host + ": " + gai_strerror(rc));
    std::string last_error = "no address";
    for (auto* ai = res; ai; ai = ai->ai_next) {
        int fd = ::socket(ai->ai_family, ai->ai_socktype, ai->ai_protocol);
        if (fd < 0) continue;
        int one = 1;
        ::setsockopt(fd, SOL_SOCKET, SO_REUSEADDR, &one, sizeof one);
        if (::bind(fd, ai->ai_addr, ai->ai_addrlen) == 0 && ::listen(fd, 64) == 0) {
            listen_fd_ = fd;
            break;
        }
        last_error = std::strerror(errno);
        ::close(fd);
    }
    ::freeaddrinfo(res);
    if (listen_fd_ < 0) throw Error("cannot listen on " + host + ":" + service + ": " + last_error);

    sockaddr_storage addr{};
    socklen_t len = sizeof addr;
    ::getsockname(listen_fd_, reinterpret_cast<sockaddr*>(&addr), &len);
    port_ = ntohs(addr.ss_family == AF_INET6 ? reinterpret_cast<sockaddr_in6*>(&addr)->sin6_port : reinterpret_cast<sockaddr_in*>(&addr)->sin_port);
    acceptor_ = std::thread([this] { accept_loop(); });
}

TcpBroadcaster::~TcpBroadcaster() { stop(); }

void TcpBroadcaster::accept_loop() {
    while (!stopping_) {
        pollfd p{listen_fd_, POLLIN, 0};
        if (::poll(&p, 1, 100) <= 0) continue;
        int fd = ::accept(listen_fd_, nullptr, nullptr);
        if (fd < 0) continue;
        int one = 1;
        ::setsockopt(fd, IPPROTO_TCP, TCP_NODELAY, &one, sizeof one);
        auto c = std::make_shared<Client>();
        c->fd = fd;
        c->writer = std::thread([c] { c->run(); });
        std::lock_guard lock(mutex_);
        clients_.push_back(std::move(c));
    }
}

// Joins writers whose peer went away. Caller holds mutex_.
void TcpBroadcaster::reap() {
    std::erase_if(clients_, [](const std::shared_ptr<Client>& c) {
        if (!c->done) return false;
        {
            std::lock_guard lock(c->mutex);
            c->closing = true;
        }
        c->cv.notify_all();
        c->writer.join();
        ::close(c->fd);
        std::clog << "plgen: stream client disconnected\n";
        return true;
    });
}

void TcpBroadcaster::broadcast(const std::string& message) {
    std::lock_guard lock(mutex_);
    reap();
    for (auto& c : clients_) {
        {
            std::lock_guard cl(c->mutex);
            if (c->queue.size() >= queue_limit_) {
                c->queue.pop_front();
                ++dropped_;
            }
            c->queue.push_back(message);
        }
        c->cv.notify_one();
    }
}

std::size_t TcpBroadcaster::client_count() const {
    std::lock_guard lock(mutex_);
    std::size_t n = 0;
    for (const auto& c : clients_) n += c->done ? 0 : 1;
    return n;
}

void TcpBroadcaster::stop() {
    if (stopping_.exchange(true)) return;
    if (acceptor_.joinable()) acceptor_.join();
    std::lock_guard lock(mutex_);
    for (auto& c : clients_) {
        {
            std::lock_guard cl(c->mutex);
            c->closing = true;
            c->queue.clear();
        }
        c->cv.notify_all();
        ::shutdown(c->fd, SHUT_RDWR);
        c->writer.join();
        ::close(c->fd);
    }
    clients_.clear();
    if (listen_fd_ >= 0) ::close(listen_fd_);
    listen_fd_ = -1;
}

}  // namespace plgen
