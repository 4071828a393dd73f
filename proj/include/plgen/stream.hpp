#pragma once

#include <atomic>
#include <chrono>
#include <condition_variable>
#include <cstdint>
#include <deque>
#include <functional>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <thread>
#include <vector>

#include "plgen/log.hpp"
#include "plgen/model.hpp"
#include "plgen/sim.hpp"
#include "plgen/tcp.hpp"
#include "plgen/wire.hpp"

namespace plgen {

/// Attribute holding an emitted event's simulated time (ms) before wall-clock stamping.
inline constexpr const char* kSimulatedTimeAttribute = "plgen:simulated_time";

struct StreamConfig {
    unsigned parallel_instances = 1;
    // Real seconds per simulated second.
    double time_multiplier = 1.0;
    // Ignore deadlines and emit as fast as possible.
    bool max_rate = false;
    // Simulated seconds between a queue's last event and the next trace put behind it.
    std::int64_t trace_gap_seconds = 1;
    bool listen = true;
    std::string host = "127.0.0.1";
    std::uint16_t port = 0;
    WireFormat format = WireFormat::Ndjson;
    std::size_t client_queue_limit = 10000;
    // Stop by itself after this many events; 0 runs until stop().
    std::uint64_t max_events = 0;
    SimulationConfig simulation;

    void check() const;
};

struct EmittedEvent {
    std::uint64_t seq = 0;  // 1-based emission number
    Event event;            // stamped with wall-clock time
    std::string payload;    // wire encoding
    std::size_t buffered = 0;  // events still buffered right after this one was taken
    std::chrono::steady_clock::time_point emitted_at;
};

// Where the stream stood when a swap took effect: every event of the old model
// has seq <= events_emitted + buffered.
struct SwapReceipt {
    std::uint64_t events_emitted = 0;
    std::size_t buffered = 0;
};

struct SessionStatus {
    bool running = false;
    std::uint64_t events_emitted = 0;
    std::uint64_t traces_generated = 0;
    std::size_t buffer_size = 0;
    std::string current_model_name;
    double time_multiplier = 0.0;
    std::size_t connected_clients = 0;
    std::uint64_t dropped_messages = 0;
    std::uint64_t simulation_errors = 0;
    std::vector<Event> recent_events;  // oldest first, at most 100
};

/// Alg. 4 as two threads: a refiller that keeps at least 2p events buffered
/// across p queues, and an emitter that releases the earliest event when its
/// scaled deadline arrives.
class StreamSession {
  public:
    using Subscriber = std::function<void(const EmittedEvent&)>;

    /// Throws InvalidModelError or ConfigError.
    StreamSession(const ProcessModel& model, StreamConfig config);
    ~StreamSession();
    StreamSession(const StreamSession&) = delete;
    StreamSession& operator=(const StreamSession&) = delete;

    /// Binds the event port (when configured) and starts both threads. Throws Error on bind failure.
    void start();
    /// Idempotent; joins the threads and closes sockets.
    void stop();
    /// Blocks until the session stops (stop() or max_events).
    void wait();
    bool running() const { return running_; }

    /// Later refills simulate `model` and are scheduled after every buffered event,
    /// which drain as they are. Throws InvalidModelError.
    SwapReceipt swap_model(const ProcessModel& model);
    /// Applies to traces simulated afterwards. Throws ConfigError unless m is finite and positive.
    void set_multiplier(double m);

    SessionStatus status() const;
    std::uint16_t event_port() const;
    const StreamConfig& config() const { return config_; }

    /// Called on the emitter thread for every event; keep it short.
    std::uint64_t subscribe(Subscriber fn);
    void unsubscribe(std::uint64_t id);

  private:
    struct Pending {
        Event event;
        std::int64_t due_us;  // scaled stream time
        std::uint64_t order;
    };

    StreamConfig config_;

    mutable std::mutex model_mutex_;
    std::unique_ptr<Simulator> simulator_;
    std::string model_name_;
    double multiplier_;

    mutable std::mutex buffer_mutex_;
    std::condition_variable buffer_cv_;
    std::vector<std::deque<Pending>> queues_;
    std::size_t buffered_ = 0;
    std::int64_t last_emitted_us_ = 0;
    // Traces simulated after a swap start no earlier than this, so the old model drains first.
    std::int64_t swap_floor_us_ = 0;
    std::uint64_t insert_order_ = 0;
    std::deque<Event> recent_;

    mutable std::mutex subscriber_mutex_;
    std::map<std::uint64_t, Subscriber> subscribers_;
    std::uint64_t next_subscriber_ = 1;

    std::unique_ptr<TcpBroadcaster> tcp_;
    std::atomic<bool> running_{false};
    std::atomic<bool> stopping_{false};
    std::atomic<std::uint64_t> emitted_{0};
    std::atomic<std::uint64_t> traces_{0};
    std::atomic<std::uint64_t> errors_{0};
    std::chrono::steady_clock::time_point origin_;
    std::int64_t last_stamp_ms_ = 0;
    std::mutex stop_mutex_;
    std::condition_variable stopped_cv_;
    std::thread refiller_, emitter_;

    void refill_loop();
    void emit_loop();
    bool refill_once();
};

}  // namespace plgen
