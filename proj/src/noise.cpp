#include "plgen/noise.hpp"

#include <algorithm>

#include "plgen/error.hpp"

namespace plgen {

std::string_view to_string(Lifecycle l) { return l == Lifecycle::Start ? "start" : "complete"; }

Lifecycle lifecycle_from_string(std::string_view text) {
    if (text == "start") return Lifecycle::Start;
    if (text == "complete") return Lifecycle::Complete;
    throw Error("unknown lifecycle '" + std::string(text) + "'");
}

void Trace::sort() {
    std::stable_sort(events.begin(), events.end(), [](const Event& a, const Event& b) { return a.timestamp < b.timestamp; });
}

std::size_t EventLog::event_count() const {
    std::size_t n = 0;
    for (const auto& t : traces) n += t.events.size();
    return n;
}

void NoiseConfig::check() const {
    const std::pair<const char*, double> probs[] = {
        {"p_missing_head", p_missing_head}, {"p_missing_tail", p_missing_tail}, {"p_missing_episode", p_missing_episode},
        {"p_alien_event", p_alien_event},   {"p_doubled_event", p_doubled_event}, {"p_rename_activity", p_rename_activity},
        {"p_swap_order", p_swap_order},     {"p_perturb_integer", p_perturb_integer}, {"p_perturb_string", p_perturb_string},
    };
    for (const auto& [field, p] : probs)
        if (!(p >= 0.0 && p <= 1.0)) throw ConfigError(field, "must be within [0, 1]");
    if (p_missing_head > 0 && max_head_size < 1) throw ConfigError("max_head_size", "must be at least 1");
    if (p_missing_tail > 0 && max_tail_size < 1) throw ConfigError("max_tail_size", "must be at least 1");
    if (p_missing_episode > 0 && max_episode_size < 1) throw ConfigError("max_episode_size", "must be at least 1");
    if (delta_max < 0) throw ConfigError("delta_max", "must be non-negative");
}

bool NoiseConfig::is_zero() const {
    return p_missing_head == 0 && p_missing_tail == 0 && p_missing_episode == 0 && p_alien_event == 0 && p_doubled_event == 0 &&
           p_rename_activity == 0 && p_swap_order == 0 && p_perturb_integer == 0 && p_perturb_string == 0;
}

NoiseConfig noise_profile(std::string_view name) {
    constexpr double p = 0.05;
    NoiseConfig c;
    c.max_head_size = c.max_tail_size = c.max_episode_size = 3;
    c.delta_max = 10;
    const bool control = name == "complete" || name == "control_flow_only";
    const bool data = name == "complete" || name == "data_only";
    const bool names = name == "complete" || name == "names_only";
    if (!control && !data && !names && name != "none") throw ConfigError("noise", "unknown noise profile '" + std::string(name) + "'");
    if (control) {
        c.p_missing_head = c.p_missing_tail = c.p_missing_episode = p;
        c.p_alien_event = c.p_doubled_event = c.p_swap_order = p;
    }
    if (names) c.p_rename_activity = p;
    if (data) c.p_perturb_integer = c.p_perturb_string = p;
    return c;
}

namespace {

std::size_t removal_size(int max_size, std::size_t available, Rng& rng) {
    const auto k = static_cast<std::size_t>(rng.uniform_int(1, max_size));
    return std::min(k, available);
}

std::string fresh_name(Rng& rng, const std::set<std::string>& avoid, const std::string& differ_from = {}) {
    for (;;) {
        auto s = rng.lowercase_string(8);
        if (s != differ_from && !avoid.contains(s)) return s;
    }
}

void rename(Event& e, const NoiseConfig& config, Rng& rng) {
    if (rng.bernoulli(config.p_rename_activity)) e.activity = fresh_name(rng, {}, e.activity);
}

bool swap_with_next(Trace& trace, std::size_t index, const NoiseConfig& config, Rng& rng) {
    if (index + 1 >= trace.events.size() || !rng.bernoulli(config.p_swap_order)) return false;
    auto& a = trace.events[index];
    auto& b = trace.events[index + 1];
    std::swap(a, b);
    std::swap(a.timestamp, b.timestamp);
    return true;
}

}  // namespace

void apply_trace_noise(Trace& trace, const NoiseConfig& config, Rng& rng, const std::set<std::string>& alphabet) {
    auto& ev = trace.events;
    if (!ev.empty() && rng.bernoulli(config.p_missing_head)) {
        const auto k = removal_size(config.max_head_size, ev.size() - 1, rng);
        ev.erase(ev.begin(), ev.begin() + static_cast<std::ptrdiff_t>(k));
    }
    if (!ev.empty() && rng.bernoulli(config.p_missing_tail)) {
        const auto k = removal_size(config.max_tail_size, ev.size() - 1, rng);
        ev.erase(ev.end() - static_cast<std::ptrdiff_t>(k), ev.end());
    }
    if (!ev.empty() && rng.bernoulli(config.p_missing_episode)) {
        const auto k = removal_size(config.max_episode_size, ev.size() - 1, rng);
        const auto from = rng.index(ev.size() - k + 1);
        ev.erase(ev.begin() + static_cast<std::ptrdiff_t>(from), ev.begin() + static_cast<std::ptrdiff_t>(from + k));
    }
    if (!ev.empty() && rng.bernoulli(config.p_alien_event)) {
        Event alien;
        alien.case_id = trace.case_id;
        alien.activity = fresh_name(rng, alphabet);
        const auto [lo, hi] = std::minmax_element(ev.begin(), ev.end(), [](const Event& a, const Event& b) { return a.timestamp < b.timestamp; });
        alien.timestamp = rng.uniform_int(lo->timestamp, hi->timestamp);
        alien.lifecycle = Lifecycle::Complete;
        ev.insert(ev.begin() + static_cast<std::ptrdiff_t>(rng.index(ev.size() + 1)), std::move(alien));
    }
    if (!ev.empty() && rng.bernoulli(config.p_doubled_event)) {
        const auto i = rng.index(ev.size());
        Event copy = ev[i];
        ev.insert(ev.begin() + static_cast<std::ptrdiff_t>(i + 1), std::move(copy));
    }
    trace.sort();
}

bool apply_event_noise(Trace& trace, std::size_t index, const NoiseConfig& config, Rng& rng) {
    if (index >= trace.events.size()) throw Error("event index out of range");
    rename(trace.events[index], config, rng);
    return swap_with_next(trace, index, config, rng);
}

void apply_data_noise(Event& event, const NoiseConfig& config, Rng& rng) {
    for (auto& [name, attr] : event.attributes) {
        if (!attr.dynamic) continue;
        if (auto* i = std::get_if<std::int64_t>(&attr.value)) {
            if (rng.bernoulli(config.p_perturb_integer)) *i += rng.uniform_int(-config.delta_max, config.delta_max);
        } else if (rng.bernoulli(config.p_perturb_string)) {
            auto& s = std::get<std::string>(attr.value);
            s = fresh_name(rng, {}, s);
        }
    }
}

void apply_noise(Trace& trace, const NoiseConfig& config, Rng& rng, const std::set<std::string>& alphabet) {
    if (config.is_zero()) return;
    apply_trace_noise(trace, config, rng, alphabet);
    for (auto& e : trace.events) rename(e, config, rng);
    // Disjoint pairs only, so a swapped event is not dragged further along.
    for (std::size_t i = 0; i + 1 < trace.events.size();) i += swap_with_next(trace, i, config, rng) ? 2 : 1;
    for (auto& e : trace.events) apply_data_noise(e, config, rng);
    trace.sort();
}

}  // namespace plgen
