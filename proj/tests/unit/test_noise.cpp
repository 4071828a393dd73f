#include <numeric>
#include <set>

#include <gtest/gtest.h>

#include "plgen/error.hpp"
#include "plgen/noise.hpp"

using namespace plgen;

namespace {

Trace make_trace(int n, const std::string& case_id = "c1") {
    Trace t{case_id, {}};
    for (int i = 0; i < n; ++i) t.events.push_back({case_id, std::string(1, static_cast<char>('A' + i)), 1000LL * (i + 1), Lifecycle::Complete, {}});
    return t;
}

std::set<std::string> names_of(const Trace& t) {
    std::set<std::string> out;
    for (const auto& e : t.events) out.insert(e.activity);
    return out;
}

}  // namespace

TEST(Noise, ZeroConfigIsIdentity) {
    NoiseConfig zero;
    Rng rng(1);
    auto t = make_trace(6);
    t.events[2].attributes["x"] = {std::int64_t{5}, true};
    const auto before = t;
    apply_noise(t, zero, rng);
    EXPECT_EQ(t, before);
    apply_trace_noise(t, zero, rng);
    for (std::size_t i = 0; i < t.events.size(); ++i) apply_event_noise(t, i, zero, rng);
    for (auto& e : t.events) apply_data_noise(e, zero, rng);
    EXPECT_EQ(t, before);
}

TEST(Noise, HeadRemovalOfOneOrTwo) {
    NoiseConfig c;
    c.p_missing_head = 1;
    c.max_head_size = 2;
    std::set<std::size_t> lengths;
    for (std::uint64_t s = 0; s < 200; ++s) {
        Rng rng(s);
        auto t = make_trace(5);
        apply_trace_noise(t, c, rng);
        lengths.insert(t.events.size());
        ASSERT_EQ(t.events.back().activity, "E");
    }
    EXPECT_EQ(lengths, (std::set<std::size_t>{3, 4}));
}

TEST(Noise, RemovalKeepsOneEvent) {
    NoiseConfig c;
    c.p_missing_head = c.p_missing_tail = c.p_missing_episode = 1;
    c.max_head_size = c.max_tail_size = c.max_episode_size = 10;
    for (std::uint64_t s = 0; s < 100; ++s) {
        Rng rng(s);
        auto t = make_trace(3);
        apply_trace_noise(t, c, rng);
        ASSERT_EQ(t.events.size(), 1u);
    }
}

TEST(Noise, AlienEventOutsideAlphabet) {
    NoiseConfig c;
    c.p_alien_event = 1;
    const auto alphabet = names_of(make_trace(5));
    for (std::uint64_t s = 0; s < 1000; ++s) {
        Rng rng(s);
        auto t = make_trace(5);
        apply_noise(t, c, rng, alphabet);
        ASSERT_EQ(t.events.size(), 6u);
        int outside = 0;
        for (const auto& e : t.events) outside += !alphabet.contains(e.activity);
        ASSERT_EQ(outside, 1);
        for (std::size_t i = 1; i < t.events.size(); ++i) ASSERT_LE(t.events[i - 1].timestamp, t.events[i].timestamp);
    }
}

TEST(Noise, DoubledEventIsAdjacentCopy) {
    NoiseConfig c;
    c.p_doubled_event = 1;
    Rng rng(4);
    auto t = make_trace(5);
    apply_noise(t, c, rng);
    ASSERT_EQ(t.events.size(), 6u);
    int copies = 0;
    for (std::size_t i = 1; i < t.events.size(); ++i) copies += t.events[i] == t.events[i - 1];
    EXPECT_EQ(copies, 1);
}

TEST(Noise, ForcedSwapReversesPair) {
    NoiseConfig c;
    c.p_swap_order = 1;
    Rng rng(0);
    auto t = make_trace(2);
    apply_noise(t, c, rng);
    ASSERT_EQ(t.events.size(), 2u);
    EXPECT_EQ(t.events[0].activity, "B");
    EXPECT_EQ(t.events[1].activity, "A");
    EXPECT_EQ(t.events[0].timestamp, 1000);
    EXPECT_EQ(t.events[1].timestamp, 2000);
}

TEST(Noise, NoRenameLeavesNames) {
    NoiseConfig c;
    c.p_swap_order = 0;
    c.p_rename_activity = 0;
    Rng rng(0);
    auto t = make_trace(8);
    for (std::size_t i = 0; i < t.events.size(); ++i) apply_event_noise(t, i, c, rng);
    EXPECT_EQ(t, make_trace(8));
}

TEST(Noise, ForcedRenameChangesEveryName) {
    NoiseConfig c;
    c.p_rename_activity = 1;
    int changed = 0, total = 0;
    for (std::uint64_t s = 0; s < 100; ++s) {
        Rng rng(s);
        auto t = make_trace(10);
        const auto before = t;
        apply_noise(t, c, rng);
        for (std::size_t i = 0; i < t.events.size(); ++i) {
            ++total;
            changed += t.events[i].activity != before.events[i].activity;
            ASSERT_EQ(t.events[i].timestamp, before.events[i].timestamp);
        }
    }
    EXPECT_EQ(total, 1000);
    EXPECT_EQ(changed, 1000);
}

TEST(Noise, DeltaZeroKeepsInteger) {
    NoiseConfig c;
    c.p_perturb_integer = 1;
    c.delta_max = 0;
    Rng rng(0);
    Event e{"c", "A", 0, Lifecycle::Complete, {{"x", {std::int64_t{100}, true}}}};
    apply_data_noise(e, c, rng);
    EXPECT_EQ(std::get<std::int64_t>(e.attributes["x"].value), 100);
}

TEST(Noise, PerturbationWithinDelta) {
    NoiseConfig c;
    c.p_perturb_integer = 1;
    c.delta_max = 10;
    Rng rng(9);
    double sum = 0;
    constexpr int n = 10000;
    for (int i = 0; i < n; ++i) {
        Event e{"c", "A", 0, Lifecycle::Complete, {{"x", {std::int64_t{100}, true}}}};
        apply_data_noise(e, c, rng);
        const auto v = std::get<std::int64_t>(e.attributes["x"].value);
        ASSERT_GE(v, 90);
        ASSERT_LE(v, 110);
        sum += static_cast<double>(v - 100);
    }
    EXPECT_NEAR(sum / n, 0.0, 0.3);
}

TEST(Noise, StaticAttributesUntouched) {
    NoiseConfig c;
    c.p_perturb_integer = c.p_perturb_string = 1;
    c.delta_max = 10;
    Rng rng(0);
    Event e{"c", "A", 0, Lifecycle::Complete, {{"plain", {std::string("fixed"), false}}, {"s", {std::string("abc"), true}}}};
    apply_data_noise(e, c, rng);
    EXPECT_EQ(std::get<std::string>(e.attributes["plain"].value), "fixed");
    EXPECT_NE(std::get<std::string>(e.attributes["s"].value), "abc");
}

TEST(NoiseProfiles, NoneIsZero) { EXPECT_TRUE(noise_profile("none").is_zero()); }

TEST(NoiseProfiles, DataOnly) {
    const auto c = noise_profile("data_only");
    EXPECT_EQ(c.p_missing_head + c.p_missing_tail + c.p_missing_episode + c.p_alien_event + c.p_doubled_event + c.p_swap_order + c.p_rename_activity, 0.0);
    EXPECT_GT(c.p_perturb_integer, 0.0);
    EXPECT_GT(c.p_perturb_string, 0.0);
}

TEST(NoiseProfiles, NamesOnly) {
    auto c = noise_profile("names_only");
    EXPECT_GT(c.p_rename_activity, 0.0);
    c.p_rename_activity = 0;
    EXPECT_TRUE(c.is_zero());
}

TEST(NoiseProfiles, CompleteEnablesEverything) {
    const auto c = noise_profile("complete");
    for (double p : {c.p_missing_head, c.p_missing_tail, c.p_missing_episode, c.p_alien_event, c.p_doubled_event, c.p_rename_activity,
                     c.p_swap_order, c.p_perturb_integer, c.p_perturb_string})
        EXPECT_DOUBLE_EQ(p, 0.05);
}

TEST(NoiseProfiles, UnknownNameThrows) { EXPECT_THROW(noise_profile("loud"), ConfigError); }

TEST(NoiseConfig, RejectsProbabilityAboveOne) {
    NoiseConfig c;
    c.p_swap_order = 1.5;
    EXPECT_THROW(c.check(), ConfigError);
}
