#pragma once

#include <cstdint>
#include <filesystem>
#include <map>
#include <memory>
#include <mutex>
#include <string>
#include <string_view>
#include <variant>

#include "plgen/error.hpp"
#include "plgen/hook.hpp"
#include "plgen/random.hpp"

namespace plgen {

/// Result of a hook: integers for seconds and integer data objects, text otherwise.
using ScriptValue = std::variant<std::int64_t, std::string>;

std::string to_string(const ScriptValue& v);

/// Compile, runtime, or return-type failure of a hook. Carries the script name and the case id.
class ScriptError : public Error {
  public:
    ScriptError(std::string script, std::string case_id, int line, const std::string& message);
    const std::string& script() const { return script_; }
    const std::string& case_id() const { return case_id_; }
    int line() const { return line_; }
    const std::string& message() const { return message_; }

  private:
    std::string script_, case_id_;
    int line_;
    std::string message_;
};

struct ScriptOptions {
    // Evaluation steps (statements + expression nodes) allowed per call.
    std::size_t step_budget = 1'000'000;
    // Enables read_file/write_file/append_file inside scripts.
    bool allow_io = false;
};

namespace script {
struct Module;
}

/// Compiles and runs hook scripts. One engine per simulation run; not thread-safe.
///
/// The dialect is a sandboxed Python subset, so hooks such as
///
///     from random import randint
///     def time_lasted(caseid):
///         return randint(60*5, 60*15)
///
/// run unchanged. Randomness comes only from the host Rng passed to evaluate().
/// Each case id owns a key-value scratchpad (scratch_get / scratch_set) that
/// persists across hook calls of the same engine.
class ScriptEngine {
  public:
    explicit ScriptEngine(ScriptOptions options = {});
    ~ScriptEngine();
    ScriptEngine(ScriptEngine&&) noexcept;
    ScriptEngine& operator=(ScriptEngine&&) noexcept;

    /// Throws ScriptError unless the source compiles and defines the entry point with arity 1.
    void check(const ScriptHook& hook);

    ScriptValue evaluate(const ScriptHook& hook, std::string_view case_id, Rng& rng);

    /// evaluate() for Seconds hooks: a non-negative integer.
    std::int64_t evaluate_seconds(const ScriptHook& hook, std::string_view case_id, Rng& rng);

    void clear_scratchpad(std::string_view case_id);

    const ScriptOptions& options() const { return options_; }

  private:
    struct State;
    ScriptOptions options_;
    std::unique_ptr<State> state_;

    const script::Module& compile(const ScriptHook& hook);
};

/// A hook whose source is read from `path`. Throws Error naming the path when unreadable.
ScriptHook load_hook(const std::filesystem::path& path, std::string entry_point, ReturnKind kind);

std::string_view to_string(ReturnKind kind);
ReturnKind return_kind_from_string(std::string_view text);

}  // namespace plgen
