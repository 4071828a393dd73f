#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>

#include "plgen/evolve.hpp"
#include "plgen/grammar.hpp"
#include "plgen/noise.hpp"
#include "plgen/sim.hpp"
#include "plgen/stream.hpp"

namespace plgen::cli {

// Everything one JSON config file can set. Command-line flags override it.
struct Settings {
    std::optional<std::uint64_t> seed;
    GrammarConfig grammar;
    SimulationConfig simulation;
    EvolutionConfig evolution;
    bool has_evolution = false;  // the file had an "evolution" section
    StreamConfig stream;
    std::uint16_t control_port = 0;
    std::string control_host = "127.0.0.1";
};

/// Throws ConfigError naming the offending key (e.g. "grammar.max_depth").
Settings load_settings(const std::filesystem::path& path);

/// "0.2,0.4,0.15,0.15,0.1"
std::array<double, 5> parse_weights(const std::string& text);

}  // namespace plgen::cli
