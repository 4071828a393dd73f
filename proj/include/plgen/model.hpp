#pragma once

#include <compare>
#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

#include "plgen/error.hpp"
#include "plgen/hook.hpp"

namespace plgen {

struct ComponentId {
    std::string value;

    auto operator<=>(const ComponentId&) const = default;
    bool operator==(const ComponentId&) const = default;
};

enum class ComponentKind { StartEvent, EndEvent, Activity, Gateway, DataObject };
enum class GatewayKind { Exclusive, Parallel };
enum class DataObjectKind { Plain, DynamicInteger, DynamicString };
enum class Direction { Required, Generated };

struct BoundaryEvent {
    ComponentId id;
    bool operator==(const BoundaryEvent&) const = default;
};
using StartEvent = BoundaryEvent;
using EndEvent = BoundaryEvent;

struct Activity {
    ComponentId id;
    std::string name;
    ScriptHookPair time_profile;

    bool instantaneous() const { return !time_profile.time_lasted.has_value(); }
    bool operator==(const Activity&) const = default;
};

struct Gateway {
    ComponentId id;
    GatewayKind kind = GatewayKind::Exclusive;
    bool operator==(const Gateway&) const = default;
};

struct DataObject {
    ComponentId id;
    std::string name;
    DataObjectKind kind = DataObjectKind::Plain;
    std::optional<std::string> plain_value;
    std::optional<ScriptHook> generator;
    bool operator==(const DataObject&) const = default;
};

struct Association {
    ComponentId activity;
    ComponentId data_object;
    Direction direction = Direction::Generated;
    bool operator==(const Association&) const = default;
};

struct Sequence {
    ComponentId source;
    ComponentId target;
    // First edge of a loop's rollback path, leaving the loop's exclusive split.
    bool rollback = false;

    bool operator==(const Sequence&) const = default;
};

/// Plain aggregate of everything a model holds; the input to ProcessModel's constructor.
struct ModelParts {
    ComponentId id{"process"};
    std::string name;
    std::vector<StartEvent> start_events;
    std::vector<EndEvent> end_events;
    std::vector<Activity> activities;
    std::vector<Gateway> gateways;
    std::vector<DataObject> data_objects;
    std::vector<Sequence> sequences;
    std::vector<Association> associations;
    // Free-form reproduction data (generator seeds and settings).
    std::map<std::string, std::string> provenance;

    bool operator==(const ModelParts&) const = default;
};

/// Immutable process-model graph with adjacency indices. Build a new one to change anything.
class ProcessModel {
  public:
    ProcessModel() : ProcessModel(ModelParts{}) {}
    explicit ProcessModel(ModelParts parts);

    const ModelParts& parts() const { return parts_; }
    const ComponentId& id() const { return parts_.id; }
    const std::string& name() const { return parts_.name; }
    const std::vector<StartEvent>& start_events() const { return parts_.start_events; }
    const std::vector<EndEvent>& end_events() const { return parts_.end_events; }
    const std::vector<Activity>& activities() const { return parts_.activities; }
    const std::vector<Gateway>& gateways() const { return parts_.gateways; }
    const std::vector<DataObject>& data_objects() const { return parts_.data_objects; }
    const std::vector<Sequence>& sequences() const { return parts_.sequences; }
    const std::vector<Association>& associations() const { return parts_.associations; }

    bool contains(const ComponentId& c) const { return kinds_.contains(c.value); }
    /// Throws LookupError for unknown ids.
    ComponentKind kind_of(const ComponentId& c) const;

    const Activity& activity(const ComponentId& c) const;
    const Gateway& gateway(const ComponentId& c) const;
    const DataObject& data_object(const ComponentId& c) const;

    /// Sequence predecessors of a flow object, in edge order. Throws LookupError for unknown ids.
    std::vector<ComponentId> incoming(const ComponentId& c) const;
    /// Sequence successors of a flow object, in edge order.
    std::vector<ComponentId> outgoing(const ComponentId& c) const;
    /// Indices into sequences() of the edges leaving / entering `c`.
    const std::vector<std::size_t>& outgoing_edges(const ComponentId& c) const;
    const std::vector<std::size_t>& incoming_edges(const ComponentId& c) const;

    /// Associations touching activity `c`, in declaration order.
    std::vector<Association> associations_of(const ComponentId& c) const;

    std::vector<std::string> activity_names() const;

    bool operator==(const ProcessModel& other) const { return parts_ == other.parts_; }

  private:
    ModelParts parts_;
    std::unordered_map<std::string, ComponentKind> kinds_;
    std::unordered_map<std::string, std::size_t> position_;
    std::unordered_map<std::string, std::vector<std::size_t>> out_edges_;
    std::unordered_map<std::string, std::vector<std::size_t>> in_edges_;
    std::unordered_map<std::string, std::vector<std::size_t>> assoc_by_activity_;
};

enum class ViolationCode {
    DuplicateId,
    MissingStartEvent,
    MissingEndEvent,
    DanglingSequence,
    SelfLoop,
    ForbiddenSequence,
    DuplicateSequence,
    DanglingAssociation,
    DataObjectCardinality,
    EmptyActivityName,
    DataObjectShape,
    MixedGateway,
    Unreachable,
    CannotReachEnd,
};

std::string_view to_string(ViolationCode code);

struct Violation {
    ViolationCode code;
    std::vector<ComponentId> components;
    std::string message;
};

using ValidationReport = std::vector<Violation>;

/// Every violated structural invariant, with the offending ids. Empty means valid.
ValidationReport validate(const ProcessModel& model);

std::string describe(const ValidationReport& report);

/// A model was rejected because validate() found violations.
class InvalidModelError : public Error {
  public:
    explicit InvalidModelError(ValidationReport report) : Error("invalid model:\n" + describe(report)), report_(std::move(report)) {}
    const ValidationReport& report() const { return report_; }

  private:
    ValidationReport report_;
};

}  // namespace plgen

template <>
struct std::hash<plgen::ComponentId> {
    std::size_t operator()(const plgen::ComponentId& id) const noexcept { return std::hash<std::string>{}(id.value); }
};
