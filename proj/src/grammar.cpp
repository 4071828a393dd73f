#include "plgen/grammar.hpp"

#include <algorithm>
#include <cmath>
#include <set>

#include "plgen/error.hpp"

namespace plgen {

void GrammarConfig::check() const {
    auto unit = [](const char* field, double v) {
        if (!(v >= 0.0 && v <= 1.0)) throw ConfigError(field, "must be within [0, 1]");
    };
    unit("p_loop", p_loop);
    unit("p_dataobject", p_dataobject);
    unit("p_required", p_required);
    double total = 0.0;
    for (double w : weights) {
        if (!(w >= 0.0) || !std::isfinite(w)) throw ConfigError("weights", "weights must be finite and non-negative");
        total += w;
    }
    if (total <= 0.0) throw ConfigError("weights", "at least one weight must be positive");
    if (max_and_branches < 2) throw ConfigError("max_and_branches", "must be at least 2");
    if (max_xor_branches < 2) throw ConfigError("max_xor_branches", "must be at least 2");
    if (max_depth < 1) throw ConfigError("max_depth", "must be at least 1");
}

std::array<double, 5> GrammarConfig::normalized_weights() const {
    double total = 0.0;
    for (double w : weights) total += w;
    std::array<double, 5> out{};
    for (std::size_t i = 0; i < out.size(); ++i) out[i] = weights[i] / total;
    return out;
}

std::string_view to_string(Production p) {
    switch (p) {
        case Production::GraphSimple: return "G->G'";
        case Production::GraphLoop: return "G->G_loop";
        case Production::SimpleActivity: return "G'->A";
        case Production::SimpleSequence: return "G'->(G;G)";
        case Production::SimpleParallel: return "G'->(A;G_and;A)";
        case Production::SimpleExclusive: return "G'->(A;G_xor;A)";
        case Production::SimpleSkip: return "G'->skip";
        case Production::BranchPair: return "G_x->G x G";
        case Production::BranchExtend: return "G_x->G x G_x";
        case Production::TaskPlain: return "A->A_act";
        case Production::TaskWithData: return "A->A_do";
        case Production::DataRequired: return "A_do->required";
        case Production::DataGenerated: return "A_do->generated";
    }
    return "?";
}

std::vector<std::pair<Production, double>> production_distribution(Symbol nonterminal, const DerivationState& state, const GrammarConfig& config) {
    const bool at_limit = state.depth >= config.max_depth;
    switch (nonterminal) {
        case Symbol::Graph: {
            const double loop = at_limit ? 0.0 : config.p_loop;
            return {{Production::GraphSimple, 1.0 - loop}, {Production::GraphLoop, loop}};
        }
        case Symbol::SimpleGraph: {
            if (at_limit)
                return {{Production::SimpleActivity, 0.5}, {Production::SimpleSequence, 0.0}, {Production::SimpleParallel, 0.0},
                        {Production::SimpleExclusive, 0.0}, {Production::SimpleSkip, 0.5}};
            const auto w = config.normalized_weights();
            return {{Production::SimpleActivity, w[0]}, {Production::SimpleSequence, w[1]}, {Production::SimpleParallel, w[2]},
                    {Production::SimpleExclusive, w[3]}, {Production::SimpleSkip, w[4]}};
        }
        case Symbol::ParallelBranches:
        case Symbol::ExclusiveBranches: {
            const int cap = nonterminal == Symbol::ParallelBranches ? config.max_and_branches : config.max_xor_branches;
            const double extend = (at_limit || state.branches >= cap) ? 0.0 : 0.5;
            return {{Production::BranchPair, 1.0 - extend}, {Production::BranchExtend, extend}};
        }
        case Symbol::Task: return {{Production::TaskPlain, 1.0 - config.p_dataobject}, {Production::TaskWithData, config.p_dataobject}};
        case Symbol::DataTask:
        case Symbol::Data: return {{Production::DataRequired, config.p_required}, {Production::DataGenerated, 1.0 - config.p_required}};
        default: throw Error("symbol has no productions");
    }
}

Production sample_production(Symbol nonterminal, const DerivationState& state, const GrammarConfig& config, Rng& rng) {
    const auto dist = production_distribution(nonterminal, state, config);
    std::vector<double> weights;
    weights.reserve(dist.size());
    for (const auto& [p, w] : dist) weights.push_back(w);
    return dist[rng.weighted(weights)].first;
}

namespace {

DerivationNode leaf(Symbol s, int depth) {
    DerivationNode n;
    n.symbol = s;
    n.depth = depth;
    return n;
}

class Deriver {
  public:
    Deriver(const GrammarConfig& config, Rng& rng, DerivationStats* stats) : config_(config), rng_(rng), stats_(stats) {}

    DerivationNode process() {
        DerivationNode p = leaf(Symbol::Process, 0);
        p.children.push_back(leaf(Symbol::StartEvent, 0));
        p.children.push_back(graph(1));
        p.children.push_back(leaf(Symbol::EndEvent, 0));
        return p;
    }

    DerivationNode graph(int depth) {
        DerivationNode g = leaf(Symbol::Graph, depth);
        g.production = sample_production(Symbol::Graph, {depth, 2}, config_, rng_);
        if (*g.production == Production::GraphSimple) {
            g.children.push_back(simple(depth));
        } else {
            DerivationNode loop = leaf(Symbol::LoopGraph, depth);
            loop.children.push_back(simple(depth));
            loop.children.push_back(graph(depth + 1));
            g.children.push_back(std::move(loop));
        }
        return g;
    }

  private:
    const GrammarConfig& config_;
    Rng& rng_;
    DerivationStats* stats_;

    DerivationNode simple(int depth) {
        DerivationNode s = leaf(Symbol::SimpleGraph, depth);
        const auto p = sample_production(Symbol::SimpleGraph, {depth, 2}, config_, rng_);
        s.production = p;
        if (stats_) {
            if (depth >= config_.max_depth) ++stats_->forced_simple_choices;
            else ++stats_->simple_choices[static_cast<std::size_t>(p) - static_cast<std::size_t>(Production::SimpleActivity)];
        }
        switch (p) {
            case Production::SimpleActivity: s.children.push_back(task(depth)); break;
            case Production::SimpleSequence:
                s.children.push_back(graph(depth + 1));
                s.children.push_back(graph(depth + 1));
                break;
            case Production::SimpleParallel:
            case Production::SimpleExclusive:
                s.children.push_back(task(depth));
                s.children.push_back(branches(p == Production::SimpleParallel ? Symbol::ParallelBranches : Symbol::ExclusiveBranches, depth, 2));
                s.children.push_back(task(depth));
                break;
            default: s.children.push_back(leaf(Symbol::Empty, depth)); break;
        }
        return s;
    }

    DerivationNode branches(Symbol kind, int depth, int count) {
        DerivationNode b = leaf(kind, depth);
        const auto p = sample_production(kind, {depth, count}, config_, rng_);
        b.production = p;
        b.children.push_back(graph(depth + 1));
        if (p == Production::BranchPair) {
            b.children.push_back(graph(depth + 1));
            if (stats_) {
                auto& seen = kind == Symbol::ParallelBranches ? stats_->max_and_branches_seen : stats_->max_xor_branches_seen;
                seen = std::max(seen, count);
            }
        } else {
            b.children.push_back(branches(kind, depth, count + 1));
        }
        return b;
    }

    DerivationNode task(int depth) {
        DerivationNode a = leaf(Symbol::Task, depth);
        a.production = sample_production(Symbol::Task, {depth, 2}, config_, rng_);
        DerivationNode act = leaf(Symbol::PlainTask, depth);
        act.children.push_back(leaf(Symbol::ActivityName, depth));
        if (*a.production == Production::TaskPlain) {
            a.children.push_back(std::move(act));
        } else {
            DerivationNode with_data = leaf(Symbol::DataTask, depth);
            with_data.production = sample_production(Symbol::Data, {depth, 2}, config_, rng_);
            with_data.children.push_back(std::move(act));
            DerivationNode d = leaf(Symbol::Data, depth);
            d.children.push_back(leaf(Symbol::DataName, depth));
            with_data.children.push_back(std::move(d));
            a.children.push_back(std::move(with_data));
        }
        return a;
    }
};

std::uint64_t id_suffix(const std::string& id) {
    const auto pos = id.rfind('_');
    if (pos == std::string::npos || pos + 1 >= id.size()) return 0;
    std::uint64_t v = 0;
    for (std::size_t i = pos + 1; i < id.size(); ++i) {
        if (id[i] < '0' || id[i] > '9') return 0;
        v = v * 10 + static_cast<std::uint64_t>(id[i] - '0');
    }
    return v;
}

constexpr std::string_view kActivityPrefix = "Activity ";
constexpr std::string_view kVariablePrefix = "variable_";

}  // namespace

DerivationNode derive_process(const GrammarConfig& config, Rng& rng, DerivationStats* stats) {
    config.check();
    return Deriver(config, rng, stats).process();
}

DerivationNode derive_graph(const GrammarConfig& config, Rng& rng, DerivationStats* stats) {
    config.check();
    return Deriver(config, rng, stats).graph(1);
}

std::string alphabetic_label(std::uint64_t index, char first) {
    std::string out;
    std::uint64_t n = index + 1;
    while (n > 0) {
        --n;
        out.insert(out.begin(), static_cast<char>(first + n % 26));
        n /= 26;
    }
    return out;
}

std::optional<std::uint64_t> alphabetic_index(std::string_view label, char first) {
    if (label.empty() || label.size() > 12) return std::nullopt;
    std::uint64_t n = 0;
    for (char c : label) {
        if (c < first || c >= first + 26) return std::nullopt;
        n = n * 26 + static_cast<std::uint64_t>(c - first) + 1;
    }
    return n - 1;
}

FragmentBuilder::FragmentBuilder(ModelParts& parts, Rng& rng) : parts_(parts), rng_(rng) {
    auto bump = [&](const ComponentId& id) { next_id_ = std::max(next_id_, id_suffix(id.value) + 1); };
    for (const auto& e : parts_.start_events) bump(e.id);
    for (const auto& e : parts_.end_events) bump(e.id);
    for (const auto& g : parts_.gateways) bump(g.id);
    for (const auto& a : parts_.activities) {
        bump(a.id);
        if (a.name.starts_with(kActivityPrefix))
            if (auto i = alphabetic_index(std::string_view(a.name).substr(kActivityPrefix.size()))) next_activity_ = std::max(next_activity_, *i + 1);
    }
    for (const auto& d : parts_.data_objects) {
        bump(d.id);
        if (d.name.starts_with(kVariablePrefix))
            if (auto i = alphabetic_index(std::string_view(d.name).substr(kVariablePrefix.size()), 'a')) next_variable_ = std::max(next_variable_, *i + 1);
    }
}

ComponentId FragmentBuilder::fresh_id(const char* prefix) { return ComponentId{std::string(prefix) + "_" + std::to_string(next_id_++)}; }

ComponentId FragmentBuilder::add_activity() {
    Activity a;
    a.id = fresh_id("act");
    a.name = std::string(kActivityPrefix) + alphabetic_label(next_activity_++);
    parts_.activities.push_back(a);
    return a.id;
}

ComponentId FragmentBuilder::add_gateway(GatewayKind kind) {
    Gateway g{fresh_id(kind == GatewayKind::Parallel ? "and" : "xor"), kind};
    parts_.gateways.push_back(g);
    return g.id;
}

ComponentId FragmentBuilder::add_start_event() {
    parts_.start_events.push_back({fresh_id("start")});
    return parts_.start_events.back().id;
}

ComponentId FragmentBuilder::add_end_event() {
    parts_.end_events.push_back({fresh_id("end")});
    return parts_.end_events.back().id;
}

ComponentId FragmentBuilder::add_data_object(const ComponentId& activity, Direction direction) {
    DataObject d;
    d.id = fresh_id("data");
    d.name = std::string(kVariablePrefix) + alphabetic_label(next_variable_++, 'a');
    d.kind = DataObjectKind::Plain;
    d.plain_value = rng_.lowercase_string(8);
    parts_.data_objects.push_back(d);
    parts_.associations.push_back({activity, d.id, direction});
    return d.id;
}

bool FragmentBuilder::connect(const ComponentId& from, const ComponentId& to, bool rollback) {
    for (const auto& s : parts_.sequences)
        if (s.source == from && s.target == to) return false;
    parts_.sequences.push_back({from, to, rollback});
    return true;
}

FragmentBuilder::Fragment FragmentBuilder::concat(Fragment a, Fragment b) {
    if (a.empty()) return b;
    if (b.empty()) return a;
    connect(*a.exit, *b.entry);
    return {a.entry, b.exit};
}

FragmentBuilder::Fragment FragmentBuilder::build_block(const DerivationNode& node, GatewayKind kind) {
    const Fragment first = build(node.children[0]);
    std::vector<Fragment> branches;
    bool has_skip = false;
    for (const DerivationNode* b = &node.children[1];;) {
        for (std::size_t i = 0; i < b->children.size(); ++i) {
            const auto& child = b->children[i];
            if (child.symbol == Symbol::ParallelBranches || child.symbol == Symbol::ExclusiveBranches) continue;
            Fragment f = build(child);
            // Several skip branches collapse into a single gateway-to-gateway edge.
            if (f.empty()) has_skip = true;
            else branches.push_back(f);
        }
        if (b->children.size() == 2 && (b->children[1].symbol == Symbol::ParallelBranches || b->children[1].symbol == Symbol::ExclusiveBranches))
            b = &b->children[1];
        else break;
    }
    const Fragment last = build(node.children[2]);

    const std::size_t distinct = branches.size() + (has_skip ? 1 : 0);
    if (distinct < 2) {
        // A block with a single distinct path is just that path.
        Fragment middle = branches.empty() ? Fragment{} : branches.front();
        return concat(concat(first, middle), last);
    }
    const ComponentId split = add_gateway(kind);
    const ComponentId join = add_gateway(kind);
    for (const auto& f : branches) {
        connect(split, *f.entry);
        connect(*f.exit, join);
    }
    if (has_skip) connect(split, join);
    return concat(concat(first, Fragment{split, join}), last);
}

FragmentBuilder::Fragment FragmentBuilder::build(const DerivationNode& node) {
    switch (node.symbol) {
        case Symbol::Graph:
            return node.children.empty() ? Fragment{} : build(node.children.front());
        case Symbol::LoopGraph: {
            const ComponentId join = add_gateway(GatewayKind::Exclusive);
            const Fragment body = build(node.children[0]);
            const ComponentId split = add_gateway(GatewayKind::Exclusive);
            const Fragment rollback = build(node.children[1]);
            if (body.empty()) {
                connect(join, split);
            } else {
                connect(join, *body.entry);
                connect(*body.exit, split);
            }
            if (rollback.empty()) {
                connect(split, join, true);
            } else {
                connect(split, *rollback.entry, true);
                connect(*rollback.exit, join);
            }
            return {join, split};
        }
        case Symbol::SimpleGraph: {
            switch (node.production.value_or(Production::SimpleSkip)) {
                case Production::SimpleActivity: return build(node.children[0]);
                case Production::SimpleSequence: {
                    Fragment a = build(node.children[0]);
                    Fragment b = build(node.children[1]);
                    return concat(a, b);
                }
                case Production::SimpleParallel: return build_block(node, GatewayKind::Parallel);
                case Production::SimpleExclusive: return build_block(node, GatewayKind::Exclusive);
                default: return {};
            }
        }
        case Symbol::Task:
            return build(node.children.front());
        case Symbol::PlainTask: {
            const auto id = add_activity();
            return {id, id};
        }
        case Symbol::DataTask: {
            const auto id = add_activity();
            add_data_object(id, node.production == Production::DataRequired ? Direction::Required : Direction::Generated);
            return {id, id};
        }
        case Symbol::Empty: return {};
        default: throw Error("cannot materialize this grammar symbol as a subgraph");
    }
}

ProcessModel materialize(const DerivationNode& process, Rng& rng, std::string name) {
    if (process.symbol != Symbol::Process || process.children.size() != 3) throw Error("materialize expects a Process derivation");
    ModelParts parts;
    parts.id = ComponentId{"process"};
    parts.name = std::move(name);
    FragmentBuilder builder(parts, rng);
    const auto start = builder.add_start_event();
    auto body = builder.build(process.children[1]);
    if (body.empty()) {
        const auto a = builder.add_activity();
        body = {a, a};
    }
    const auto end = builder.add_end_event();
    auto is_activity = [&](const ComponentId& id) {
        return std::any_of(parts.activities.begin(), parts.activities.end(), [&](const Activity& a) { return a.id == id; });
    };
    if (!is_activity(*body.entry)) {
        const auto a = builder.add_activity();
        builder.connect(a, *body.entry);
        body.entry = a;
    }
    if (!is_activity(*body.exit)) {
        const auto a = builder.add_activity();
        builder.connect(*body.exit, a);
        body.exit = a;
    }
    builder.connect(start, *body.entry);
    builder.connect(*body.exit, end);
    return ProcessModel(std::move(parts));
}

ProcessModel generate_model(const GrammarConfig& config, DerivationStats* stats) {
    config.check();
    Rng rng(config.seed);
    const auto tree = derive_process(config, rng, stats);
    ProcessModel base = materialize(tree, rng, "process_" + std::to_string(config.seed));
    ModelParts parts = base.parts();
    auto& prov = parts.provenance;
    prov["generator"] = "grammar";
    prov["seed"] = std::to_string(config.seed);
    prov["p_loop"] = std::to_string(config.p_loop);
    std::string w;
    for (std::size_t i = 0; i < config.weights.size(); ++i) w += (i ? "," : "") + std::to_string(config.weights[i]);
    prov["weights"] = w;
    prov["max_and_branches"] = std::to_string(config.max_and_branches);
    prov["max_xor_branches"] = std::to_string(config.max_xor_branches);
    prov["p_dataobject"] = std::to_string(config.p_dataobject);
    prov["max_depth"] = std::to_string(config.max_depth);
    return ProcessModel(std::move(parts));
}

ProcessModel attach_data_objects(const ProcessModel& model, const GrammarConfig& config, Rng& rng) {
    config.check();
    ModelParts parts = model.parts();
    FragmentBuilder builder(parts, rng);
    const auto activities = model.activities();
    for (const auto& a : activities) {
        if (!rng.bernoulli(config.p_dataobject)) continue;
        builder.add_data_object(a.id, rng.bernoulli(config.p_required) ? Direction::Required : Direction::Generated);
    }
    return ProcessModel(std::move(parts));
}

}  // namespace plgen
