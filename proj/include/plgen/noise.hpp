#pragma once

#include <cstdint>
#include <set>
#include <string>
#include <string_view>

#include "plgen/log.hpp"
#include "plgen/random.hpp"

namespace plgen {

struct NoiseConfig {
    // trace level
    double p_missing_head = 0.0;
    int max_head_size = 1;
    double p_missing_tail = 0.0;
    int max_tail_size = 1;
    double p_missing_episode = 0.0;
    int max_episode_size = 1;
    double p_alien_event = 0.0;
    double p_doubled_event = 0.0;
    // event level
    double p_rename_activity = 0.0;
    double p_swap_order = 0.0;
    // data level, dynamic attributes only
    double p_perturb_integer = 0.0;
    std::int64_t delta_max = 0;
    double p_perturb_string = 0.0;
    std::uint64_t seed = 0;

    void check() const;
    bool is_zero() const;
    bool operator==(const NoiseConfig&) const = default;
};

/// Presets: complete, control_flow_only, data_only, names_only, none.
/// Every enabled phenomenon gets probability 0.05, sizes cap at 3 and delta_max is 10.
NoiseConfig noise_profile(std::string_view name);

/// Head/tail/episode removal, then alien and doubled insertion, then re-sort.
/// Removals keep at least one event. Alien names avoid `alphabet`.
void apply_trace_noise(Trace& trace, const NoiseConfig& config, Rng& rng, const std::set<std::string>& alphabet = {});

/// Rename and swap-with-successor for the event at `index`. Returns true when a swap happened.
bool apply_event_noise(Trace& trace, std::size_t index, const NoiseConfig& config, Rng& rng);

void apply_data_noise(Event& event, const NoiseConfig& config, Rng& rng);

/// Everything above in that order, over the whole trace.
void apply_noise(Trace& trace, const NoiseConfig& config, Rng& rng, const std::set<std::string>& alphabet = {});

}  // namespace plgen
