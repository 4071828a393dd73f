#pragma once

#include <cstdint>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "plgen/log.hpp"
#include "plgen/model.hpp"
#include "plgen/noise.hpp"
#include "plgen/random.hpp"
#include "plgen/scripting.hpp"

namespace plgen {

struct SimulationConfig {
    std::uint64_t trace_count = 1;
    std::uint64_t seed = 0;
    // Chance of taking the rollback path at a loop's exclusive split.
    double loop_probability = 0.5;
    std::int64_t default_gap_seconds = 1;
    std::string case_id_prefix = "case_";
    std::int64_t base_time_ms = 1704067200000;  // 2024-01-01T00:00:00Z
    std::int64_t inter_arrival_seconds = 3600;
    Lifecycle instantaneous_lifecycle = Lifecycle::Complete;
    // Component visits allowed per trace before it is declared runaway.
    std::uint64_t max_steps = 1'000'000;
    NoiseConfig noise;
    ScriptOptions scripts;

    void check() const;
};

/// "case_0001" style id for the trace at zero-based `index`.
std::string case_id_for(const SimulationConfig& config, std::uint64_t index);

struct SimulationStats {
    // REQUIRED data that had no preceding event and went onto the current one.
    std::uint64_t required_without_predecessor = 0;
    std::uint64_t rollbacks_taken = 0;
    std::uint64_t steps = 0;
    // Tokens left after the trace finished; zero for a sound run.
    std::size_t tokens_left = 0;
};

/// Per-trace token game state. Tokens live on sequences, each with the clock of
/// the branch that produced it.
struct TraceState {
    Trace trace;
    Rng rng;
    std::vector<std::vector<std::int64_t>> tokens;  // indexed like model.sequences()
    SimulationStats stats;
    bool reached_end = false;

    TraceState(const ProcessModel& model, std::string case_id, std::uint64_t seed);
    std::size_t token_count() const;
};

/// Runs a validated model. Owns the hook engine, so one Simulator per thread.
class Simulator {
  public:
    /// Throws InvalidModelError when validate(model) is not empty.
    Simulator(const ProcessModel& model, SimulationConfig config);

    const ProcessModel& model() const { return model_; }
    const SimulationConfig& config() const { return config_; }

    /// Trace number `index` (zero-based): token game, sort, then noise.
    Trace simulate_trace(std::uint64_t index, SimulationStats* stats = nullptr);

    /// Noise-free trace with an explicit case id, start clock and RNG seed.
    Trace simulate_case(const std::string& case_id, std::int64_t start_ms, std::uint64_t seed, SimulationStats* stats = nullptr);

    /// Token game from `component`, entered through sequence `incoming_edge`
    /// (whose token must already be in `state.tokens`). Runs until no component
    /// can fire. A parallel join whose inputs are incomplete leaves its tokens in place.
    void simulate_process(TraceState& state, const ComponentId& component, std::optional<std::size_t> incoming_edge, std::int64_t clock);

    /// Appends the events of one activity execution; returns the clock after it.
    std::int64_t simulate_activity(TraceState& state, const ComponentId& activity, std::int64_t clock);

  private:
    ProcessModel model_;
    SimulationConfig config_;
    ScriptEngine scripts_;
    std::set<std::string> alphabet_;

    std::size_t pick_exclusive(TraceState& state, const std::vector<std::size_t>& edges);
    AttributeValue data_value(const DataObject& d, const std::string& case_id, Rng& rng);
};

/// `config.trace_count` traces; `jobs` > 1 splits them across threads with identical output.
EventLog simulate_log(const ProcessModel& model, const SimulationConfig& config, unsigned jobs = 1);

}  // namespace plgen
