#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "plgen/model.hpp"
#include "plgen/random.hpp"

namespace plgen {

/// Parameters of the stochastic process grammar
///
///     P    -> start ; G ; end
///     G    -> G' | G_loop                      (1 - p_loop, p_loop)
///     G'   -> A | (G;G) | (A;G_and;A) | (A;G_xor;A) | skip     (weights, normalized)
///     G_and -> G and G | G and G_and            (clamped by max_and_branches)
///     G_xor -> G xor G | G xor G_xor            (clamped by max_xor_branches)
///     G_loop -> (G' loop G)
///     A    -> A_act | A_do                      (1 - p_dataobject, p_dataobject)
struct GrammarConfig {
    enum Weight : std::size_t { Activity = 0, Sequence, Parallel, Exclusive, Skip };

    double p_loop = 0.1;
    std::array<double, 5> weights{0.2, 0.4, 0.15, 0.15, 0.1};
    int max_and_branches = 3;
    int max_xor_branches = 3;
    double p_dataobject = 0.1;
    // Share of data objects that are required (the rest are generated).
    double p_required = 0.5;
    int max_depth = 3;
    std::uint64_t seed = 0;

    /// Throws ConfigError naming the offending field.
    void check() const;
    /// Weights scaled to sum to one.
    std::array<double, 5> normalized_weights() const;
};

enum class Symbol {
    Process,
    Graph,
    SimpleGraph,
    LoopGraph,
    ParallelBranches,
    ExclusiveBranches,
    Task,
    PlainTask,
    DataTask,
    Data,
    // terminals
    StartEvent,
    EndEvent,
    ActivityName,
    DataName,
    Empty,
};

enum class Production {
    GraphSimple,
    GraphLoop,
    SimpleActivity,
    SimpleSequence,
    SimpleParallel,
    SimpleExclusive,
    SimpleSkip,
    BranchPair,
    BranchExtend,
    TaskPlain,
    TaskWithData,
    DataRequired,
    DataGenerated,
};

std::string_view to_string(Production p);

/// Sampling context for one expansion.
struct DerivationState {
    // Number of G-expansions on the path from the root.
    int depth = 1;
    // Branches the enclosing split block already has if it stops now (pair = 2).
    int branches = 2;
};

struct DerivationNode {
    Symbol symbol = Symbol::Empty;
    std::optional<Production> production;
    std::vector<DerivationNode> children;
    int depth = 0;
};

/// The distribution sample_production draws from, after depth forcing and branch clamping.
std::vector<std::pair<Production, double>> production_distribution(Symbol nonterminal, const DerivationState& state, const GrammarConfig& config);

Production sample_production(Symbol nonterminal, const DerivationState& state, const GrammarConfig& config, Rng& rng);

/// Production counts from one or more derivations.
struct DerivationStats {
    // Unforced G' choices (depth below max_depth), indexed like GrammarConfig::weights.
    std::array<std::uint64_t, 5> simple_choices{};
    std::uint64_t forced_simple_choices = 0;
    int max_and_branches_seen = 0;
    int max_xor_branches_seen = 0;
};

/// Samples a full derivation tree from the start symbol.
DerivationNode derive_process(const GrammarConfig& config, Rng& rng, DerivationStats* stats = nullptr);

/// Samples a G subtree (no start/end events), as used for model evolution.
DerivationNode derive_graph(const GrammarConfig& config, Rng& rng, DerivationStats* stats = nullptr);

/// Grows an existing ModelParts with fresh components. Names continue the
/// model's "Activity A, B, ..., Z, AA, ..." and "variable_a, ..." sequences and
/// ids continue its counter, so materializing into an evolved model stays unique.
class FragmentBuilder {
  public:
    /// Entry/exit flow objects of a materialized subgraph; both empty for skip.
    struct Fragment {
        std::optional<ComponentId> entry;
        std::optional<ComponentId> exit;
        bool empty() const { return !entry.has_value(); }
    };

    FragmentBuilder(ModelParts& parts, Rng& rng);

    Fragment build(const DerivationNode& node);

    ComponentId add_activity();
    ComponentId add_gateway(GatewayKind kind);
    ComponentId add_start_event();
    ComponentId add_end_event();
    /// Plain data object named variable_x with a random 8-letter value, associated with `activity`.
    ComponentId add_data_object(const ComponentId& activity, Direction direction);
    /// Adds a sequence unless the same (source, target) pair exists. Returns whether it was added.
    bool connect(const ComponentId& from, const ComponentId& to, bool rollback = false);

  private:
    ModelParts& parts_;
    Rng& rng_;
    std::uint64_t next_id_ = 1;
    std::uint64_t next_activity_ = 0;
    std::uint64_t next_variable_ = 0;

    ComponentId fresh_id(const char* prefix);
    Fragment concat(Fragment a, Fragment b);
    Fragment build_block(const DerivationNode& node, GatewayKind kind);
};

/// "A", ..., "Z", "AA", "AB", ... for index 0, 1, ...
std::string alphabetic_label(std::uint64_t index, char first = 'A');
/// Inverse of alphabetic_label; nullopt when `label` is not of that form.
std::optional<std::uint64_t> alphabetic_index(std::string_view label, char first = 'A');

/// Turns a Process derivation into a model. When the top-level subgraph does
/// not begin (end) with an activity, a boundary activity is inserted so the
/// start (end) event only touches activities.
ProcessModel materialize(const DerivationNode& process, Rng& rng, std::string name = "process");

/// Random block-structured model; a pure function of `config` (seed included).
ProcessModel generate_model(const GrammarConfig& config, DerivationStats* stats = nullptr);

/// Gives each activity an extra plain data object with probability p_dataobject.
ProcessModel attach_data_objects(const ProcessModel& model, const GrammarConfig& config, Rng& rng);

}  // namespace plgen
