#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

namespace plgen {

enum class Lifecycle { Start, Complete };

std::string_view to_string(Lifecycle l);
Lifecycle lifecycle_from_string(std::string_view text);

struct AttributeValue {
    std::variant<std::int64_t, std::string> value;
    // Produced by a dynamic data object; only these are touched by data noise.
    bool dynamic = false;

    bool is_integer() const { return std::holds_alternative<std::int64_t>(value); }
    bool operator==(const AttributeValue&) const = default;
};

struct Event {
    std::string case_id;
    std::string activity;
    std::int64_t timestamp = 0;  // ms since epoch
    Lifecycle lifecycle = Lifecycle::Complete;
    std::map<std::string, AttributeValue> attributes;

    bool operator==(const Event&) const = default;
};

struct Trace {
    std::string case_id;
    std::vector<Event> events;

    /// Stable sort by timestamp, so ties keep insertion order.
    void sort();
    bool operator==(const Trace&) const = default;
};

struct EventLog {
    std::vector<Trace> traces;

    std::size_t event_count() const;
    bool operator==(const EventLog&) const = default;
};

}  // namespace plgen
