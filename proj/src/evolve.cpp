#include "plgen/evolve.hpp"

#include <algorithm>
#include <set>

#include "plgen/error.hpp"

namespace plgen {

void EvolutionConfig::check() const {
    if (!(p_replace >= 0.0 && p_replace <= 1.0)) throw ConfigError("p_replace", "must be within [0, 1]");
    if (max_attempts < 1) throw ConfigError("max_attempts", "must be at least 1");
    subprocess.check();
}

namespace {

struct Edge {
    ComponentId other;
    bool rollback;
};

// Drops the activity, its sequences, its associations and the data objects behind them.
void remove_activity(ModelParts& parts, const ComponentId& id, std::vector<Edge>& preds, std::vector<Edge>& succs) {
    std::vector<Sequence> kept;
    for (auto& s : parts.sequences) {
        if (s.target == id) preds.push_back({s.source, s.rollback});
        else if (s.source == id) succs.push_back({s.target, s.rollback});
        else kept.push_back(std::move(s));
    }
    parts.sequences = std::move(kept);

    std::set<ComponentId> dropped;
    std::erase_if(parts.associations, [&](const Association& a) {
        if (a.activity != id) return false;
        dropped.insert(a.data_object);
        return true;
    });
    std::erase_if(parts.data_objects, [&](const DataObject& d) { return dropped.contains(d.id); });
    std::erase_if(parts.activities, [&](const Activity& a) { return a.id == id; });
}

}  // namespace

ProcessModel evolve(const ProcessModel& model, const EvolutionConfig& config, EvolutionReport* report) {
    config.check();
    if (auto r = validate(model); !r.empty()) throw InvalidModelError(std::move(r));
    Rng rng(config.seed);
    ModelParts parts = model.parts();
    EvolutionReport local;

    for (const auto& original : model.activities()) {
        if (!rng.bernoulli(config.p_replace)) continue;
        bool done = false;
        for (int attempt = 0; attempt < config.max_attempts && !done; ++attempt) {
            ModelParts candidate = parts;
            // Built before the removal so fresh names continue past the replaced one.
            FragmentBuilder builder(candidate, rng);
            std::vector<Edge> preds, succs;
            remove_activity(candidate, original.id, preds, succs);
            const auto tree = derive_graph(config.subprocess, rng);
            const auto fragment = builder.build(tree);
            if (fragment.empty()) {
                for (const auto& p : preds)
                    for (const auto& s : succs) builder.connect(p.other, s.other, p.rollback || s.rollback);
            } else {
                for (const auto& p : preds) builder.connect(p.other, *fragment.entry, p.rollback);
                for (const auto& s : succs) builder.connect(*fragment.exit, s.other, s.rollback);
            }
            if (!validate(ProcessModel(candidate)).empty()) continue;
            parts = std::move(candidate);
            local.replaced.push_back(original.id);
            if (fragment.empty()) ++local.removed;
            done = true;
        }
        if (!done)
            local.warnings.push_back("kept " + original.id.value + " (" + original.name + "): no valid replacement in " +
                                     std::to_string(config.max_attempts) + " attempts");
    }

    parts.provenance["evolve.seed"] = std::to_string(config.seed);
    parts.provenance["evolve.p_replace"] = std::to_string(config.p_replace);
    parts.provenance["evolve.replaced"] = std::to_string(local.replaced.size());
    if (report) *report = std::move(local);
    return ProcessModel(std::move(parts));
}

}  // namespace plgen
