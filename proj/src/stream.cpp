#include "plgen/stream.hpp"

#include <algorithm>
#include <cmath>
#include <iostream>
#include <limits>

#include "plgen/error.hpp"

namespace plgen {

void StreamConfig::check() const {
    if (parallel_instances < 1) throw ConfigError("parallel_instances", "must be at least 1");
    if (!(time_multiplier > 0.0) || !std::isfinite(time_multiplier)) throw ConfigError("time_multiplier", "must be a finite positive number");
    if (trace_gap_seconds < 0) throw ConfigError("trace_gap_seconds", "must be non-negative");
    if (client_queue_limit < 1) throw ConfigError("client_queue_limit", "must be at least 1");
    simulation.noise.check();
}

StreamSession::StreamSession(const ProcessModel& model, StreamConfig config)
    : config_(std::move(config)), multiplier_(config_.time_multiplier), queues_(std::max(1u, config_.parallel_instances)) {
    config_.check();
    // The stream is unbounded, so the batch trace count plays no part.
    config_.simulation.trace_count = 1;
    simulator_ = std::make_unique<Simulator>(model, config_.simulation);
    model_name_ = model.name();
}

StreamSession::~StreamSession() { stop(); }

void StreamSession::start() {
    if (running_ || stopping_) throw Error("stream session already started");
    if (config_.listen) tcp_ = std::make_unique<TcpBroadcaster>(config_.host, config_.port, config_.client_queue_limit);
    origin_ = std::chrono::steady_clock::now();
    running_ = true;
    refiller_ = std::thread([this] { refill_loop(); });
    emitter_ = std::thread([this] { emit_loop(); });
}

void StreamSession::stop() {
    stopping_ = true;
    buffer_cv_.notify_all();
    const auto self = std::this_thread::get_id();
    if (refiller_.joinable() && refiller_.get_id() != self) refiller_.join();
    if (emitter_.joinable() && emitter_.get_id() != self) emitter_.join();
    if (tcp_) tcp_->stop();
    {
        std::lock_guard lock(stop_mutex_);
        running_ = false;
    }
    stopped_cv_.notify_all();
}

void StreamSession::wait() {
    std::unique_lock lock(stop_mutex_);
    stopped_cv_.wait(lock, [&] { return !running_; });
}

SwapReceipt StreamSession::swap_model(const ProcessModel& model) {
    auto next = std::make_unique<Simulator>(model, config_.simulation);
    std::lock_guard lock(model_mutex_);
    simulator_ = std::move(next);
    model_name_ = model.name();
    std::lock_guard buffer_lock(buffer_mutex_);
    for (const auto& q : queues_)
        if (!q.empty()) swap_floor_us_ = std::max(swap_floor_us_, q.back().due_us);
    return {emitted_, buffered_};
}

void StreamSession::set_multiplier(double m) {
    if (!(m > 0.0) || !std::isfinite(m)) throw ConfigError("multiplier", "must be a finite positive number");
    std::lock_guard lock(model_mutex_);
    multiplier_ = m;
}

SessionStatus StreamSession::status() const {
    SessionStatus s;
    {
        std::lock_guard lock(model_mutex_);
        s.current_model_name = model_name_;
        s.time_multiplier = multiplier_;
    }
    {
        std::lock_guard lock(buffer_mutex_);
        s.buffer_size = buffered_;
        s.recent_events.assign(recent_.begin(), recent_.end());
    }
    s.running = running_;
    s.events_emitted = emitted_;
    s.traces_generated = traces_;
    s.simulation_errors = errors_;
    if (tcp_) {
        s.connected_clients = tcp_->client_count();
        s.dropped_messages = tcp_->dropped();
    }
    return s;
}

std::uint16_t StreamSession::event_port() const { return tcp_ ? tcp_->port() : 0; }

std::uint64_t StreamSession::subscribe(Subscriber fn) {
    std::lock_guard lock(subscriber_mutex_);
    subscribers_.emplace(next_subscriber_, std::move(fn));
    return next_subscriber_++;
}

void StreamSession::unsubscribe(std::uint64_t id) {
    std::lock_guard lock(subscriber_mutex_);
    subscribers_.erase(id);
}

bool StreamSession::refill_once() {
    // The model lock spans simulation and insertion, so a swap never lands between them.
    std::lock_guard model_lock(model_mutex_);
    const auto index = traces_.fetch_add(1);
    Trace t = simulator_->simulate_trace(index);
    if (t.events.empty()) return false;
    const double m = multiplier_;

    std::lock_guard lock(buffer_mutex_);
    auto last_due = [&](const std::deque<Pending>& q) { return q.empty() ? last_emitted_us_ : q.back().due_us; };
    std::size_t target = 0;
    for (std::size_t i = 1; i < queues_.size(); ++i)
        if (last_due(queues_[i]) < last_due(queues_[target])) target = i;
    const auto anchor = std::max({last_due(queues_[target]), last_emitted_us_, swap_floor_us_}) + std::llround(static_cast<double>(config_.trace_gap_seconds) * 1e6 * m);
    const auto origin = t.events.front().timestamp;
    auto& q = queues_[target];
    for (auto& e : t.events) {
        const auto due = anchor + std::llround(static_cast<double>(e.timestamp - origin) * 1e3 * m);
        q.push_back({std::move(e), due, insert_order_++});
    }
    buffered_ += t.events.size();
    buffer_cv_.notify_all();
    return true;
}

void StreamSession::refill_loop() {
    const std::size_t threshold = 2 * queues_.size();
    int consecutive_failures = 0;
    while (!stopping_) {
        {
            std::unique_lock lock(buffer_mutex_);
            buffer_cv_.wait(lock, [&] { return stopping_ || buffered_ < threshold; });
        }
        if (stopping_) break;
        try {
            refill_once();
            consecutive_failures = 0;
        } catch (const std::exception& e) {
            ++errors_;
            std::clog << "plgen: trace simulation failed: " << e.what() << "\n";
            if (++consecutive_failures >= 100) {
                std::clog << "plgen: giving up after repeated simulation failures\n";
                stopping_ = true;
                buffer_cv_.notify_all();
            }
        }
    }
}

void StreamSession::emit_loop() {
    for (;;) {
        std::unique_lock lock(buffer_mutex_);
        buffer_cv_.wait(lock, [&] { return stopping_ || buffered_ > 0; });
        if (stopping_) break;

        std::size_t pick = 0;
        // A refill may slip an earlier event into an empty queue, so re-peek after every wake-up.
        for (;;) {
            std::int64_t best = std::numeric_limits<std::int64_t>::max();
            std::uint64_t best_order = 0;
            for (std::size_t i = 0; i < queues_.size(); ++i) {
                if (queues_[i].empty()) continue;
                const auto& f = queues_[i].front();
                if (f.due_us < best || (f.due_us == best && f.order < best_order)) {
                    best = f.due_us;
                    best_order = f.order;
                    pick = i;
                }
            }
            if (config_.max_rate) break;
            const auto deadline = origin_ + std::chrono::microseconds(best);
            if (std::chrono::steady_clock::now() >= deadline) break;
            buffer_cv_.wait_until(lock, deadline);
            if (stopping_) break;
        }
        if (stopping_) break;

        Pending p = std::move(queues_[pick].front());
        queues_[pick].pop_front();
        --buffered_;
        last_emitted_us_ = std::max(last_emitted_us_, p.due_us);
        const std::size_t left = buffered_;
        buffer_cv_.notify_all();

        EmittedEvent out;
        out.event = std::move(p.event);
        const auto simulated = out.event.timestamp;
        const auto now_ms =
            std::chrono::duration_cast<std::chrono::milliseconds>(std::chrono::system_clock::now().time_since_epoch()).count();
        last_stamp_ms_ = std::max<std::int64_t>(last_stamp_ms_, now_ms);
        out.event.timestamp = last_stamp_ms_;
        out.event.attributes[kSimulatedTimeAttribute] = AttributeValue{simulated, false};
        out.buffered = left;
        recent_.push_back(out.event);
        if (recent_.size() > 100) recent_.pop_front();
        // Numbered under the buffer lock so a swap sees emitted and buffered counts that add up.
        out.seq = emitted_.fetch_add(1) + 1;
        lock.unlock();

        out.payload = encode_event(out.event, config_.format);
        out.emitted_at = std::chrono::steady_clock::now();
        if (tcp_) tcp_->broadcast(out.payload);
        {
            std::lock_guard sl(subscriber_mutex_);
            for (auto& [id, fn] : subscribers_) fn(out);
        }
        if (config_.max_events && out.seq >= config_.max_events) {
            stopping_ = true;
            buffer_cv_.notify_all();
            break;
        }
    }
    {
        std::lock_guard lock(stop_mutex_);
        running_ = false;
    }
    stopped_cv_.notify_all();
}

}  // namespace plgen
