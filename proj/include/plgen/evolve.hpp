#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "plgen/grammar.hpp"
#include "plgen/model.hpp"

namespace plgen {

struct EvolutionConfig {
    double p_replace = 0.1;
    GrammarConfig subprocess = [] {
        GrammarConfig g;
        g.max_depth = 2;
        return g;
    }();
    std::uint64_t seed = 0;
    // Fragment samples tried per activity before the activity is kept as is.
    int max_attempts = 16;

    void check() const;
};

struct EvolutionReport {
    std::vector<ComponentId> replaced;  // includes removals
    std::size_t removed = 0;            // replaced by a skip
    std::vector<std::string> warnings;
};

/// Copy of `model` where each activity, with probability p_replace, is swapped for
/// a fragment sampled from the subprocess grammar. Throws InvalidModelError on invalid input.
ProcessModel evolve(const ProcessModel& model, const EvolutionConfig& config, EvolutionReport* report = nullptr);

}  // namespace plgen
