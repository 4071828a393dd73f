#include <thread>

#include <gtest/gtest.h>
#include <httplib.h>
#include <json.hpp>

#include "fixtures.hpp"
#include "plgen/control.hpp"
#include "plgen/io.hpp"

using namespace plgen;
using namespace std::chrono_literals;
using Json = nlohmann::json;

namespace {

std::shared_ptr<StreamSession> make_session(double m = 0.05, std::uint64_t max_events = 0) {
    StreamConfig c;
    c.listen = false;
    c.time_multiplier = m;
    c.max_events = max_events;
    return std::make_shared<StreamSession>(fixtures::single_activity(), c);
}

struct Served {
    ControlServer server;
    std::unique_ptr<httplib::Client> client;

    Served() {
        server.start("127.0.0.1", 0);
        client = std::make_unique<httplib::Client>("127.0.0.1", server.port());
        client->set_read_timeout(10, 0);
    }
};

// Event ids seen on one /v1/feed connection until `want` arrived or time ran out.
std::vector<std::uint64_t> read_feed(std::uint16_t port, std::size_t want, std::chrono::seconds limit) {
    httplib::Client c("127.0.0.1", port);
    c.set_read_timeout(limit.count() + 2, 0);
    std::vector<std::uint64_t> ids;
    std::string pending;
    const auto until = std::chrono::steady_clock::now() + limit;
    c.Get("/v1/feed", [&](const char* data, std::size_t n) {
        pending.append(data, n);
        for (auto end = pending.find("\n\n"); end != std::string::npos; end = pending.find("\n\n")) {
            const auto frame = pending.substr(0, end);
            pending.erase(0, end + 2);
            if (frame.find("event: event") != std::string::npos) ids.push_back(std::stoull(frame.substr(4, frame.find('\n') - 4)));
        }
        return ids.size() < want && std::chrono::steady_clock::now() < until;
    });
    return ids;
}

}  // namespace

TEST(Control, NoSessionIs404) {
    Served s;
    for (auto path : {"/v1/status", "/v1/feed"}) {
        auto r = s.client->Get(path);
        ASSERT_TRUE(r);
        EXPECT_EQ(r->status, 404) << path;
        EXPECT_EQ(Json::parse(r->body)["error"], "no_session");
    }
    for (auto path : {"/v1/model", "/v1/multiplier", "/v1/stop"}) {
        auto r = s.client->Post(path, "{}", "application/json");
        ASSERT_TRUE(r);
        EXPECT_EQ(r->status, 404) << path;
    }
}

TEST(Control, StatusCountsAndStop) {
    Served s;
    auto session = make_session(0.02, 50);
    s.server.attach(session);
    auto r = s.client->Get("/v1/status");
    ASSERT_TRUE(r);
    EXPECT_EQ(r->status, 200);
    auto j = Json::parse(r->body);
    EXPECT_EQ(j["events_emitted"], 0);
    EXPECT_EQ(j["running"], false);
    EXPECT_EQ(j["current_model_name"], "single");
    EXPECT_EQ(r->get_header_value("Access-Control-Allow-Origin"), "*");

    session->start();
    session->wait();
    j = Json::parse(s.client->Get("/v1/status")->body);
    EXPECT_EQ(j["events_emitted"], 50);
    EXPECT_EQ(j["recent_events"].size(), 50u);

    auto stop = s.client->Post("/v1/stop", "", "application/json");
    ASSERT_TRUE(stop);
    EXPECT_EQ(stop->status, 200);
    EXPECT_EQ(Json::parse(stop->body)["running"], false);
}

TEST(Control, ModelSwap) {
    Served s;
    auto session = make_session();
    s.server.attach(session);
    session->start();

    auto ok = s.client->Post("/v1/model", export_native(fixtures::xor_and_model()), "application/json");
    ASSERT_TRUE(ok);
    EXPECT_EQ(ok->status, 200);
    EXPECT_EQ(Json::parse(ok->body)["model"], "xor_and");
    EXPECT_EQ(session->status().current_model_name, "xor_and");

    // the same model again is accepted
    EXPECT_EQ(s.client->Post("/v1/model", export_native(fixtures::xor_and_model()), "application/json")->status, 200);

    auto pnml = s.client->Post("/v1/model", export_pnml(fixtures::running_example()), "application/xml");
    ASSERT_TRUE(pnml);
    EXPECT_EQ(pnml->status, 200) << pnml->body;

    auto bad = fixtures::single_activity().parts();
    bad.name = "dangling";
    bad.sequences.push_back({{"A"}, {"ghost"}, false});
    auto rejected = s.client->Post("/v1/model", export_native(ProcessModel(bad)), "application/json");
    ASSERT_TRUE(rejected);
    EXPECT_EQ(rejected->status, 422);
    const auto body = Json::parse(rejected->body);
    EXPECT_EQ(body["error"], "invalid_model");
    ASSERT_FALSE(body["violations"].empty());
    EXPECT_EQ(body["violations"][0]["code"], "dangling-sequence");
    EXPECT_NE(session->status().current_model_name, "dangling");

    auto garbage = s.client->Post("/v1/model", "{\"format\": ", "application/json");
    ASSERT_TRUE(garbage);
    EXPECT_EQ(garbage->status, 400);
    EXPECT_EQ(Json::parse(garbage->body)["error"], "parse_error");
    EXPECT_TRUE(session->running());
    session->stop();
}

TEST(Control, Multiplier) {
    Served s;
    auto session = make_session();
    s.server.attach(session);
    EXPECT_EQ(s.client->Post("/v1/multiplier", "{\"value\": 0}", "application/json")->status, 400);
    EXPECT_EQ(s.client->Post("/v1/multiplier", "{\"value\": -2}", "application/json")->status, 400);
    EXPECT_EQ(s.client->Post("/v1/multiplier", "fast", "text/plain")->status, 400);
    EXPECT_EQ(s.client->Post("/v1/multiplier", "{\"value\": 2.0}", "application/json")->status, 200);
    EXPECT_DOUBLE_EQ(session->status().time_multiplier, 2.0);
    EXPECT_EQ(s.client->Post("/v1/multiplier", "2.0", "application/json")->status, 200);
    EXPECT_DOUBLE_EQ(Json::parse(s.client->Get("/v1/status")->body)["time_multiplier"].get<double>(), 2.0);
}

TEST(Control, FeedDeliversEveryEventToEverySubscriber) {
    Served s;
    auto session = make_session(0.05, 10);
    s.server.attach(session);
    std::vector<std::uint64_t> first, second;
    std::thread a([&] { first = read_feed(s.server.port(), 10, 8s); });
    std::thread b([&] { second = read_feed(s.server.port(), 10, 8s); });
    std::this_thread::sleep_for(500ms);
    session->start();
    a.join();
    b.join();
    const std::vector<std::uint64_t> expected{1, 2, 3, 4, 5, 6, 7, 8, 9, 10};
    EXPECT_EQ(first, expected);
    EXPECT_EQ(second, expected);
}

TEST(Control, DetachReturnsTo404) {
    Served s;
    auto session = make_session();
    s.server.attach(session);
    EXPECT_EQ(s.client->Get("/v1/status")->status, 200);
    s.server.detach();
    EXPECT_EQ(s.client->Get("/v1/status")->status, 404);
}
