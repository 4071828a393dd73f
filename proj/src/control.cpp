#include "plgen/control.hpp"

#include <condition_variable>
#include <deque>

#include <httplib.h>

#include "plgen/error.hpp"
#include "plgen/io.hpp"
#include "plgen/scripting.hpp"
#include "wire_json.hpp"

namespace plgen {

using Json = nlohmann::ordered_json;

namespace {

constexpr const char* kJson = "application/json";

Json status_json(const SessionStatus& s) {
    Json j;
    j["running"] = s.running;
    j["events_emitted"] = s.events_emitted;
    j["traces_generated"] = s.traces_generated;
    j["buffer_size"] = s.buffer_size;
    j["current_model_name"] = s.current_model_name;
    j["time_multiplier"] = s.time_multiplier;
    j["connected_clients"] = s.connected_clients;
    j["dropped_messages"] = s.dropped_messages;
    j["simulation_errors"] = s.simulation_errors;
    j["recent_events"] = Json::array();
    for (const auto& e : s.recent_events) j["recent_events"].push_back(detail::event_json(e));
    return j;
}

Json violations_json(const ValidationReport& report) {
    Json list = Json::array();
    for (const auto& v : report) {
        Json c = Json::array();
        for (const auto& id : v.components) c.push_back(id.value);
        list.push_back({{"code", std::string(to_string(v.code))}, {"components", c}, {"message", v.message}});
    }
    return list;
}

void reply(httplib::Response& res, int code, const Json& body) {
    res.status = code;
    res.set_content(body.dump(), kJson);
}

void no_session(httplib::Response& res) { reply(res, 404, {{"error", "no_session"}, {"message", "no stream session is attached"}}); }

// Frames waiting for one feed connection; drops the oldest past the limit.
struct FeedQueue {
    std::mutex mutex;
    std::condition_variable cv;
    std::deque<std::string> frames;
    std::size_t limit;
    std::uint64_t dropped = 0;

    explicit FeedQueue(std::size_t limit) : limit(limit) {}

    void push(std::string frame) {
        {
            std::lock_guard lock(mutex);
            if (frames.size() >= limit) {
                frames.pop_front();
                ++dropped;
            }
            frames.push_back(std::move(frame));
        }
        cv.notify_one();
    }
};

}  // namespace

ControlServer::ControlServer() : server_(std::make_unique<httplib::Server>()) { routes(); }

ControlServer::~ControlServer() { stop(); }

void ControlServer::attach(std::shared_ptr<StreamSession> session) {
    std::lock_guard lock(mutex_);
    session_ = std::move(session);
}

void ControlServer::detach() { attach(nullptr); }

std::shared_ptr<StreamSession> ControlServer::session() const {
    std::lock_guard lock(mutex_);
    return session_;
}

void ControlServer::set_static_dir(const std::string& dir) {
    if (!server_->set_mount_point("/", dir)) throw Error("cannot serve static files from " + dir);
}

void ControlServer::routes() {
    auto& s = *server_;
    s.set_default_headers({{"Access-Control-Allow-Origin", "*"}});

    s.Get("/v1/status", [this](const httplib::Request&, httplib::Response& res) {
        auto session = this->session();
        if (!session) return no_session(res);
        reply(res, 200, status_json(session->status()));
    });

    s.Post("/v1/model", [this](const httplib::Request& req, httplib::Response& res) {
        auto session = this->session();
        if (!session) return no_session(res);
        const auto first = req.body.find_first_not_of(" \t\r\n");
        const bool pnml = first != std::string::npos && req.body[first] == '<';
        try {
            const ProcessModel model = pnml ? import_pnml(req.body) : import_native(req.body);
            if (auto report = validate(model); !report.empty())
                return reply(res, 422, {{"error", "invalid_model"}, {"violations", violations_json(report)}});
            const auto receipt = session->swap_model(model);
            reply(res, 200, {{"ok", true}, {"model", model.name()}, {"events_emitted", receipt.events_emitted}, {"buffered", receipt.buffered}});
        } catch (const ParseError& e) {
            reply(res, 400, {{"error", "parse_error"}, {"message", e.what()}});
        } catch (const InvalidModelError& e) {
            reply(res, 422, {{"error", "invalid_model"}, {"violations", violations_json(e.report())}});
        } catch (const ScriptError& e) {
            reply(res, 422, {{"error", "script_error"}, {"message", e.what()}});
        } catch (const Error& e) {
            reply(res, 400, {{"error", "bad_model"}, {"message", e.what()}});
        }
    });

    s.Post("/v1/multiplier", [this](const httplib::Request& req, httplib::Response& res) {
        auto session = this->session();
        if (!session) return no_session(res);
        double value = 0.0;
        try {
            const auto j = nlohmann::json::parse(req.body);
            if (j.is_number()) value = j.get<double>();
            else if (j.is_object() && j.contains("value") && j.at("value").is_number()) value = j.at("value").get<double>();
            else return reply(res, 400, {{"error", "bad_request"}, {"message", "expected {\"value\": <number>}"}});
        } catch (const nlohmann::json::exception&) {
            return reply(res, 400, {{"error", "bad_request"}, {"message", "body is not JSON"}});
        }
        try {
            session->set_multiplier(value);
        } catch (const ConfigError& e) {
            return reply(res, 400, {{"error", "invalid_multiplier"}, {"message", e.what()}});
        }
        reply(res, 200, {{"ok", true}, {"time_multiplier", value}});
    });

    s.Post("/v1/stop", [this](const httplib::Request&, httplib::Response& res) {
        auto session = this->session();
        if (!session) return no_session(res);
        session->stop();
        reply(res, 200, {{"ok", true}, {"running", session->running()}});
    });

    s.Get("/v1/feed", [this](const httplib::Request&, httplib::Response& res) {
        auto session = this->session();
        if (!session) return no_session(res);
        auto queue = std::make_shared<FeedQueue>(feed_limit_);
        const auto sub = session->subscribe([queue](const EmittedEvent& e) {
            queue->push("id: " + std::to_string(e.seq) + "\nevent: event\ndata: " + detail::event_json(e.event).dump() + "\n\n");
        });
        res.set_header("Cache-Control", "no-cache");
        res.set_chunked_content_provider(
            "text/event-stream",
            [this, queue, session, last_status = std::chrono::steady_clock::now()](std::size_t, httplib::DataSink& sink) mutable {
                std::deque<std::string> batch;
                {
                    std::unique_lock lock(queue->mutex);
                    queue->cv.wait_for(lock, std::chrono::seconds(1), [&] { return !queue->frames.empty() || stopping_.load(); });
                    batch.swap(queue->frames);
                }
                if (stopping_) return false;
                const auto now = std::chrono::steady_clock::now();
                if (batch.empty() || now - last_status >= std::chrono::seconds(1)) {
                    batch.push_back("event: status\ndata: " + status_json(session->status()).dump() + "\n\n");
                    last_status = now;
                }
                for (const auto& frame : batch)
                    if (!sink.write(frame.data(), frame.size())) return false;
                return true;
            },
            [session, sub](bool) { session->unsubscribe(sub); });
    });
}

void ControlServer::start(const std::string& host, std::uint16_t port) {
    if (port == 0) {
        const int p = server_->bind_to_any_port(host);
        if (p <= 0) throw Error("cannot bind control port on " + host);
        port_ = static_cast<std::uint16_t>(p);
    } else {
        if (!server_->bind_to_port(host, port)) throw Error("cannot bind control port " + host + ":" + std::to_string(port));
        port_ = port;
    }
    thread_ = std::thread([this] { server_->listen_after_bind(); });
    server_->wait_until_ready();
}

void ControlServer::stop() {
    stopping_ = true;
    if (server_) server_->stop();
    if (thread_.joinable()) thread_.join();
}

}  // namespace plgen
