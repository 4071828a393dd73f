#pragma once

#include <optional>
#include <string>

namespace plgen {

enum class ReturnKind { Integer, Text, Seconds };

/// A user-defined value generator: a script plus the function to call with the case id.
struct ScriptHook {
    std::string source;
    std::string entry_point;  // generate, time_after or time_lasted
    ReturnKind return_kind = ReturnKind::Seconds;
    std::optional<std::string> path;  // set when the source was loaded from a file

    bool operator==(const ScriptHook&) const = default;
};

/// Time behavior of an activity. No `time_lasted` means the activity is instantaneous.
struct ScriptHookPair {
    std::optional<ScriptHook> time_after;
    std::optional<ScriptHook> time_lasted;

    bool operator==(const ScriptHookPair&) const = default;
};

}  // namespace plgen
