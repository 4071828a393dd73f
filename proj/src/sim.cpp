#include "plgen/sim.hpp"

#include <algorithm>
#include <cstdio>
#include <thread>

#include "plgen/error.hpp"

namespace plgen {

void SimulationConfig::check() const {
    if (trace_count < 1) throw ConfigError("trace_count", "must be at least 1");
    if (!(loop_probability >= 0.0 && loop_probability <= 1.0)) throw ConfigError("loop_probability", "must be within [0, 1]");
    if (default_gap_seconds < 0) throw ConfigError("default_gap_seconds", "must be non-negative");
    if (inter_arrival_seconds < 0) throw ConfigError("inter_arrival_seconds", "must be non-negative");
    if (max_steps < 1) throw ConfigError("max_steps", "must be positive");
    noise.check();
}

std::string case_id_for(const SimulationConfig& config, std::uint64_t index) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%04llu", static_cast<unsigned long long>(index + 1));
    return config.case_id_prefix + buf;
}

TraceState::TraceState(const ProcessModel& model, std::string case_id, std::uint64_t seed)
    : rng(seed), tokens(model.sequences().size()) {
    trace.case_id = std::move(case_id);
}

std::size_t TraceState::token_count() const {
    std::size_t n = 0;
    for (const auto& t : tokens) n += t.size();
    return n;
}

Simulator::Simulator(const ProcessModel& model, SimulationConfig config)
    : model_(model), config_(std::move(config)), scripts_(config_.scripts) {
    config_.check();
    if (auto report = validate(model_); !report.empty()) throw InvalidModelError(std::move(report));
    for (const auto& a : model_.activities()) {
        alphabet_.insert(a.name);
        if (a.time_profile.time_after) scripts_.check(*a.time_profile.time_after);
        if (a.time_profile.time_lasted) scripts_.check(*a.time_profile.time_lasted);
    }
    for (const auto& d : model_.data_objects())
        if (d.generator) scripts_.check(*d.generator);
}

Trace Simulator::simulate_trace(std::uint64_t index, SimulationStats* stats) {
    const auto case_id = case_id_for(config_, index);
    const auto start = config_.base_time_ms + static_cast<std::int64_t>(index) * config_.inter_arrival_seconds * 1000;
    Trace t = simulate_case(case_id, start, derive_seed(config_.seed, 1, index), stats);
    if (!config_.noise.is_zero()) {
        Rng noise_rng(derive_seed(config_.seed ^ mix64(config_.noise.seed), 2, index));
        apply_noise(t, config_.noise, noise_rng, alphabet_);
    }
    return t;
}

Trace Simulator::simulate_case(const std::string& case_id, std::int64_t start_ms, std::uint64_t seed, SimulationStats* stats) {
    TraceState state(model_, case_id, seed);
    const auto& starts = model_.start_events();
    const auto& start = starts[state.rng.index(starts.size())].id;
    simulate_process(state, start, std::nullopt, start_ms);
    scripts_.clear_scratchpad(case_id);

    state.stats.tokens_left = state.token_count();
    if (state.stats.tokens_left > 0) {
        std::string stuck;
        for (std::size_t e = 0; e < state.tokens.size(); ++e)
            if (!state.tokens[e].empty()) stuck += (stuck.empty() ? "" : ", ") + model_.sequences()[e].target.value;
        throw SimulationError("deadlock in case " + case_id + ": tokens waiting at " + stuck);
    }
    if (!state.reached_end) throw SimulationError("case " + case_id + " never reached an end event");
    state.trace.sort();
    if (stats) *stats = state.stats;
    return std::move(state.trace);
}

std::size_t Simulator::pick_exclusive(TraceState& state, const std::vector<std::size_t>& edges) {
    const auto& seqs = model_.sequences();
    std::vector<std::size_t> forward, back;
    for (auto e : edges) (seqs[e].rollback ? back : forward).push_back(e);
    if (!back.empty() && !forward.empty()) {
        if (state.rng.bernoulli(config_.loop_probability)) {
            ++state.stats.rollbacks_taken;
            return back[state.rng.index(back.size())];
        }
        return forward[state.rng.index(forward.size())];
    }
    return edges[state.rng.index(edges.size())];
}

void Simulator::simulate_process(TraceState& state, const ComponentId& component, std::optional<std::size_t> incoming_edge, std::int64_t clock) {
    struct Item {
        ComponentId component;
        std::optional<std::size_t> edge;
        std::int64_t clock;
    };
    const auto& seqs = model_.sequences();
    std::vector<Item> work{{component, incoming_edge, clock}};

    auto emit = [&](std::size_t edge, std::int64_t at) {
        state.tokens[edge].push_back(at);
        work.push_back({seqs[edge].target, edge, at});
    };
    auto take = [&](std::size_t edge) {
        auto& q = state.tokens[edge];
        if (q.empty()) throw SimulationError("no token on sequence " + seqs[edge].source.value + " -> " + seqs[edge].target.value);
        const auto at = q.front();
        q.erase(q.begin());
        return at;
    };

    while (!work.empty()) {
        Item item = std::move(work.back());
        work.pop_back();
        if (++state.stats.steps > config_.max_steps)
            throw SimulationError("case " + state.trace.case_id + " exceeded " + std::to_string(config_.max_steps) + " steps");
        const auto& out = model_.outgoing_edges(item.component);
        std::int64_t now = item.clock;

        switch (model_.kind_of(item.component)) {
            case ComponentKind::StartEvent:
                for (auto e : out) emit(e, now);
                break;
            case ComponentKind::EndEvent:
                if (item.edge) take(*item.edge);
                state.reached_end = true;
                break;
            case ComponentKind::Activity: {
                if (item.edge) now = take(*item.edge);
                now = simulate_activity(state, item.component, now);
                // Several outgoing sequences on an activity behave as a choice.
                if (!out.empty()) emit(out.size() == 1 ? out.front() : out[state.rng.index(out.size())], now);
                break;
            }
            case ComponentKind::Gateway: {
                const auto& gw = model_.gateway(item.component);
                if (gw.kind == GatewayKind::Exclusive) {
                    if (item.edge) now = take(*item.edge);
                    if (!out.empty()) emit(pick_exclusive(state, out), now);
                    break;
                }
                const auto& in = model_.incoming_edges(item.component);
                if (in.size() > 1) {
                    const bool all_seen = std::all_of(in.begin(), in.end(), [&](std::size_t e) { return !state.tokens[e].empty(); });
                    if (!all_seen) break;
                    now = 0;
                    for (auto e : in) now = std::max(now, take(e));
                } else if (item.edge) {
                    now = take(*item.edge);
                }
                std::vector<std::size_t> branches(out.begin(), out.end());
                state.rng.shuffle(std::span<std::size_t>(branches));
                for (auto e : branches) emit(e, now);
                break;
            }
            case ComponentKind::DataObject: throw SimulationError("data object " + item.component.value + " in the control flow");
        }
    }
}

AttributeValue Simulator::data_value(const DataObject& d, const std::string& case_id, Rng& rng) {
    AttributeValue v;
    if (d.kind == DataObjectKind::Plain) {
        v.value = d.plain_value.value_or("");
        return v;
    }
    v.dynamic = true;
    const auto result = scripts_.evaluate(*d.generator, case_id, rng);
    if (const auto* i = std::get_if<std::int64_t>(&result)) v.value = *i;
    else v.value = std::get<std::string>(result);
    return v;
}

std::int64_t Simulator::simulate_activity(TraceState& state, const ComponentId& id, std::int64_t clock) {
    const auto& a = model_.activity(id);
    const auto& case_id = state.trace.case_id;
    auto& events = state.trace.events;
    const std::optional<std::size_t> previous = events.empty() ? std::nullopt : std::optional<std::size_t>(events.size() - 1);

    const std::int64_t after =
        a.time_profile.time_after ? scripts_.evaluate_seconds(*a.time_profile.time_after, case_id, state.rng) : config_.default_gap_seconds;
    Event start{case_id, a.name, clock + after * 1000, Lifecycle::Start, {}};
    std::int64_t end_clock = start.timestamp;
    std::optional<Event> complete;
    if (a.instantaneous()) {
        start.lifecycle = config_.instantaneous_lifecycle;
    } else {
        const auto lasted = scripts_.evaluate_seconds(*a.time_profile.time_lasted, case_id, state.rng);
        end_clock = start.timestamp + lasted * 1000;
        complete = Event{case_id, a.name, end_clock, Lifecycle::Complete, {}};
    }

    for (const auto& assoc : model_.associations_of(id)) {
        const auto& d = model_.data_object(assoc.data_object);
        auto value = data_value(d, case_id, state.rng);
        if (assoc.direction == Direction::Generated) {
            start.attributes[d.name] = std::move(value);
        } else if (previous) {
            events[*previous].attributes[d.name] = std::move(value);
        } else {
            ++state.stats.required_without_predecessor;
            start.attributes[d.name] = std::move(value);
        }
    }
    events.push_back(std::move(start));
    if (complete) events.push_back(std::move(*complete));
    return end_clock;
}

EventLog simulate_log(const ProcessModel& model, const SimulationConfig& config, unsigned jobs) {
    config.check();
    EventLog log;
    log.traces.resize(config.trace_count);
    jobs = std::max(1u, std::min<unsigned>(jobs, static_cast<unsigned>(std::min<std::uint64_t>(config.trace_count, 256))));
    if (jobs == 1) {
        Simulator sim(model, config);
        for (std::uint64_t i = 0; i < config.trace_count; ++i) log.traces[i] = sim.simulate_trace(i);
        return log;
    }
    if (auto report = validate(model); !report.empty()) throw InvalidModelError(std::move(report));
    std::vector<std::exception_ptr> errors(jobs);
    std::vector<std::thread> pool;
    for (unsigned j = 0; j < jobs; ++j) {
        pool.emplace_back([&, j] {
            try {
                Simulator sim(model, config);
                for (std::uint64_t i = j; i < config.trace_count; i += jobs) log.traces[i] = sim.simulate_trace(i);
            } catch (...) {
                errors[j] = std::current_exception();
            }
        });
    }
    for (auto& t : pool) t.join();
    for (auto& e : errors)
        if (e) std::rethrow_exception(e);
    return log;
}

}  // namespace plgen
