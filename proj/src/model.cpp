#include "plgen/model.hpp"

#include <deque>
#include <set>
#include <sstream>

#include "plgen/error.hpp"

namespace plgen {

namespace {

const std::vector<std::size_t> kNoEdges;

bool is_flow_object(ComponentKind k) { return k != ComponentKind::DataObject; }

bool sequence_allowed(ComponentKind from, ComponentKind to) {
    using K = ComponentKind;
    switch (from) {
        case K::StartEvent: return to == K::Activity;
        case K::Activity: return to == K::EndEvent || to == K::Activity || to == K::Gateway;
        case K::Gateway: return to == K::Gateway || to == K::Activity;
        default: return false;
    }
}

std::string_view kind_name(ComponentKind k) {
    switch (k) {
        case ComponentKind::StartEvent: return "start event";
        case ComponentKind::EndEvent: return "end event";
        case ComponentKind::Activity: return "activity";
        case ComponentKind::Gateway: return "gateway";
        case ComponentKind::DataObject: return "data object";
    }
    return "?";
}

}  // namespace

ProcessModel::ProcessModel(ModelParts parts) : parts_(std::move(parts)) {
    auto add = [&](const ComponentId& id, ComponentKind kind, std::size_t pos) {
        if (kinds_.emplace(id.value, kind).second) position_.emplace(id.value, pos);
    };
    for (std::size_t i = 0; i < parts_.start_events.size(); ++i) add(parts_.start_events[i].id, ComponentKind::StartEvent, i);
    for (std::size_t i = 0; i < parts_.end_events.size(); ++i) add(parts_.end_events[i].id, ComponentKind::EndEvent, i);
    for (std::size_t i = 0; i < parts_.activities.size(); ++i) add(parts_.activities[i].id, ComponentKind::Activity, i);
    for (std::size_t i = 0; i < parts_.gateways.size(); ++i) add(parts_.gateways[i].id, ComponentKind::Gateway, i);
    for (std::size_t i = 0; i < parts_.data_objects.size(); ++i) add(parts_.data_objects[i].id, ComponentKind::DataObject, i);
    for (std::size_t i = 0; i < parts_.sequences.size(); ++i) {
        out_edges_[parts_.sequences[i].source.value].push_back(i);
        in_edges_[parts_.sequences[i].target.value].push_back(i);
    }
    for (std::size_t i = 0; i < parts_.associations.size(); ++i) assoc_by_activity_[parts_.associations[i].activity.value].push_back(i);
}

ComponentKind ProcessModel::kind_of(const ComponentId& c) const {
    auto it = kinds_.find(c.value);
    if (it == kinds_.end()) throw LookupError("unknown component id '" + c.value + "'");
    return it->second;
}

const Activity& ProcessModel::activity(const ComponentId& c) const {
    if (kind_of(c) != ComponentKind::Activity) throw LookupError("'" + c.value + "' is not an activity");
    return parts_.activities[position_.at(c.value)];
}

const Gateway& ProcessModel::gateway(const ComponentId& c) const {
    if (kind_of(c) != ComponentKind::Gateway) throw LookupError("'" + c.value + "' is not a gateway");
    return parts_.gateways[position_.at(c.value)];
}

const DataObject& ProcessModel::data_object(const ComponentId& c) const {
    if (kind_of(c) != ComponentKind::DataObject) throw LookupError("'" + c.value + "' is not a data object");
    return parts_.data_objects[position_.at(c.value)];
}

const std::vector<std::size_t>& ProcessModel::outgoing_edges(const ComponentId& c) const {
    kind_of(c);
    auto it = out_edges_.find(c.value);
    return it == out_edges_.end() ? kNoEdges : it->second;
}

const std::vector<std::size_t>& ProcessModel::incoming_edges(const ComponentId& c) const {
    kind_of(c);
    auto it = in_edges_.find(c.value);
    return it == in_edges_.end() ? kNoEdges : it->second;
}

std::vector<ComponentId> ProcessModel::incoming(const ComponentId& c) const {
    std::vector<ComponentId> result;
    for (auto i : incoming_edges(c)) result.push_back(parts_.sequences[i].source);
    return result;
}

std::vector<ComponentId> ProcessModel::outgoing(const ComponentId& c) const {
    std::vector<ComponentId> result;
    for (auto i : outgoing_edges(c)) result.push_back(parts_.sequences[i].target);
    return result;
}

std::vector<Association> ProcessModel::associations_of(const ComponentId& c) const {
    std::vector<Association> result;
    auto it = assoc_by_activity_.find(c.value);
    if (it != assoc_by_activity_.end())
        for (auto i : it->second) result.push_back(parts_.associations[i]);
    return result;
}

std::vector<std::string> ProcessModel::activity_names() const {
    std::vector<std::string> names;
    names.reserve(parts_.activities.size());
    for (const auto& a : parts_.activities) names.push_back(a.name);
    return names;
}

std::string_view to_string(ViolationCode code) {
    switch (code) {
        case ViolationCode::DuplicateId: return "duplicate-id";
        case ViolationCode::MissingStartEvent: return "missing-start-event";
        case ViolationCode::MissingEndEvent: return "missing-end-event";
        case ViolationCode::DanglingSequence: return "dangling-sequence";
        case ViolationCode::SelfLoop: return "self-loop";
        case ViolationCode::ForbiddenSequence: return "forbidden-sequence";
        case ViolationCode::DuplicateSequence: return "duplicate-sequence";
        case ViolationCode::DanglingAssociation: return "dangling-association";
        case ViolationCode::DataObjectCardinality: return "data-object-cardinality";
        case ViolationCode::EmptyActivityName: return "empty-activity-name";
        case ViolationCode::DataObjectShape: return "data-object-shape";
        case ViolationCode::MixedGateway: return "mixed-gateway";
        case ViolationCode::Unreachable: return "unreachable";
        case ViolationCode::CannotReachEnd: return "cannot-reach-end";
    }
    return "unknown";
}

ValidationReport validate(const ProcessModel& model) {
    ValidationReport report;
    const auto& p = model.parts();
    auto violation = [&](ViolationCode code, std::vector<ComponentId> ids, std::string msg) {
        report.push_back({code, std::move(ids), std::move(msg)});
    };

    std::set<std::string> seen;
    auto check_id = [&](const ComponentId& id) {
        if (!seen.insert(id.value).second) violation(ViolationCode::DuplicateId, {id}, "id '" + id.value + "' used more than once");
    };
    for (const auto& e : p.start_events) check_id(e.id);
    for (const auto& e : p.end_events) check_id(e.id);
    for (const auto& a : p.activities) check_id(a.id);
    for (const auto& g : p.gateways) check_id(g.id);
    for (const auto& d : p.data_objects) check_id(d.id);

    if (p.start_events.empty()) violation(ViolationCode::MissingStartEvent, {}, "model has no start event");
    if (p.end_events.empty()) violation(ViolationCode::MissingEndEvent, {}, "model has no end event");

    for (const auto& a : p.activities)
        if (a.name.empty()) violation(ViolationCode::EmptyActivityName, {a.id}, "activity '" + a.id.value + "' has an empty name");

    for (const auto& d : p.data_objects) {
        const bool plain = d.kind == DataObjectKind::Plain;
        const bool ok = plain ? (d.plain_value.has_value() && !d.generator) : (d.generator.has_value() && !d.plain_value);
        if (!ok)
            violation(ViolationCode::DataObjectShape, {d.id},
                      plain ? "plain data object '" + d.id.value + "' needs a value and no generator"
                            : "dynamic data object '" + d.id.value + "' needs a generator and no plain value");
    }

    std::set<std::pair<std::string, std::string>> edges;
    for (const auto& s : p.sequences) {
        if (!model.contains(s.source) || !model.contains(s.target)) {
            violation(ViolationCode::DanglingSequence, {s.source, s.target},
                      "sequence " + s.source.value + " -> " + s.target.value + " references an unknown component");
            continue;
        }
        if (s.source == s.target) {
            violation(ViolationCode::SelfLoop, {s.source}, "sequence from '" + s.source.value + "' to itself");
            continue;
        }
        const auto from = model.kind_of(s.source), to = model.kind_of(s.target);
        if (!sequence_allowed(from, to))
            violation(ViolationCode::ForbiddenSequence, {s.source, s.target},
                      "sequence " + s.source.value + " -> " + s.target.value + " connects a " + std::string(kind_name(from)) + " to a " +
                          std::string(kind_name(to)) + ", which the sequence typing rule forbids");
        if (!edges.emplace(s.source.value, s.target.value).second)
            violation(ViolationCode::DuplicateSequence, {s.source, s.target}, "sequence " + s.source.value + " -> " + s.target.value + " appears twice");
    }

    std::map<std::string, int> uses;
    for (const auto& a : p.associations) {
        const bool act_ok = model.contains(a.activity) && model.kind_of(a.activity) == ComponentKind::Activity;
        const bool do_ok = model.contains(a.data_object) && model.kind_of(a.data_object) == ComponentKind::DataObject;
        if (!act_ok || !do_ok) {
            violation(ViolationCode::DanglingAssociation, {a.activity, a.data_object},
                      "association " + a.activity.value + " / " + a.data_object.value + " must join an activity and a data object");
            continue;
        }
        ++uses[a.data_object.value];
    }
    for (const auto& [d, n] : uses)
        if (n > 1)
            violation(ViolationCode::DataObjectCardinality, {ComponentId{d}},
                      "data object '" + d + "' participates in " + std::to_string(n) + " associations (at most one allowed)");

    for (const auto& g : p.gateways) {
        if (model.incoming_edges(g.id).size() > 1 && model.outgoing_edges(g.id).size() > 1)
            violation(ViolationCode::MixedGateway, {g.id}, "gateway '" + g.id.value + "' is both a split and a join");
    }

    // Reachability over well-formed edges only.
    auto sweep = [&](bool forward) {
        std::set<std::string> reached;
        std::deque<std::string> queue;
        const auto& roots = forward ? p.start_events : p.end_events;
        for (const auto& r : roots)
            if (reached.insert(r.id.value).second) queue.push_back(r.id.value);
        while (!queue.empty()) {
            const ComponentId cur{queue.front()};
            queue.pop_front();
            const auto& idx = forward ? model.outgoing_edges(cur) : model.incoming_edges(cur);
            for (auto i : idx) {
                const auto& s = p.sequences[i];
                const auto& next = forward ? s.target : s.source;
                if (!model.contains(next) || !is_flow_object(model.kind_of(next))) continue;
                if (reached.insert(next.value).second) queue.push_back(next.value);
            }
        }
        return reached;
    };
    const auto from_start = sweep(true);
    const auto to_end = sweep(false);
    auto check_reach = [&](const ComponentId& id) {
        if (!from_start.contains(id.value))
            violation(ViolationCode::Unreachable, {id}, "'" + id.value + "' is not reachable from a start event");
        if (!to_end.contains(id.value))
            violation(ViolationCode::CannotReachEnd, {id}, "'" + id.value + "' cannot reach an end event");
    };
    for (const auto& a : p.activities) check_reach(a.id);
    for (const auto& g : p.gateways) check_reach(g.id);
    return report;
}

std::string describe(const ValidationReport& report) {
    std::ostringstream out;
    for (const auto& v : report) out << "[" << to_string(v.code) << "] " << v.message << "\n";
    return out.str();
}

}  // namespace plgen
