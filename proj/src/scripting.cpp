#include "plgen/scripting.hpp"

#include <fstream>
#include <sstream>

#include "script_ast.hpp"

namespace plgen {

namespace {

std::string script_name(const ScriptHook& hook) { return hook.path ? *hook.path + ":" + hook.entry_point : hook.entry_point; }

}  // namespace

std::string to_string(const ScriptValue& v) {
    return std::holds_alternative<std::int64_t>(v) ? std::to_string(std::get<std::int64_t>(v)) : std::get<std::string>(v);
}

ScriptError::ScriptError(std::string script, std::string case_id, int line, const std::string& message)
    : Error("script " + script + (line > 0 ? " line " + std::to_string(line) : "") + (case_id.empty() ? "" : " (case " + case_id + ")") +
            ": " + message),
      script_(std::move(script)),
      case_id_(std::move(case_id)),
      line_(line),
      message_(message) {}

struct ScriptEngine::State {
    std::map<std::string, std::unique_ptr<script::Module>> compiled;
    std::map<std::string, std::map<std::string, script::Value>, std::less<>> scratch;
};

ScriptEngine::ScriptEngine(ScriptOptions options) : options_(options), state_(std::make_unique<State>()) {}
ScriptEngine::~ScriptEngine() = default;
ScriptEngine::ScriptEngine(ScriptEngine&&) noexcept = default;
ScriptEngine& ScriptEngine::operator=(ScriptEngine&&) noexcept = default;

const script::Module& ScriptEngine::compile(const ScriptHook& hook) {
    auto it = state_->compiled.find(hook.source);
    if (it != state_->compiled.end()) return *it->second;
    try {
        auto module = std::make_unique<script::Module>(script::parse(hook.source));
        return *state_->compiled.emplace(hook.source, std::move(module)).first->second;
    } catch (const script::ScriptFault& f) {
        throw ScriptError(script_name(hook), "", f.line, std::string("syntax error: ") + f.what());
    }
}

void ScriptEngine::check(const ScriptHook& hook) {
    const auto& module = compile(hook);
    auto it = module.functions.find(hook.entry_point);
    if (it == module.functions.end()) throw ScriptError(script_name(hook), "", 0, "entry point '" + hook.entry_point + "' is not defined");
    if (it->second.params.size() != 1)
        throw ScriptError(script_name(hook), "", it->second.line,
                          "entry point '" + hook.entry_point + "' must take exactly one argument (the case id)");
}

ScriptValue ScriptEngine::evaluate(const ScriptHook& hook, std::string_view case_id, Rng& rng) {
    check(hook);
    const auto& module = compile(hook);
    auto scratch_it = state_->scratch.find(case_id);
    if (scratch_it == state_->scratch.end()) scratch_it = state_->scratch.emplace(std::string(case_id), std::map<std::string, script::Value>{}).first;
    script::HostContext host{rng, scratch_it->second, options_.allow_io, options_.step_budget};
    script::Value result;
    try {
        result = script::call_function(module, hook.entry_point, {script::Value(std::string(case_id))}, host);
    } catch (const script::ScriptFault& f) {
        throw ScriptError(script_name(hook), std::string(case_id), f.line, f.what());
    }
    auto type_error = [&](const char* want) {
        return ScriptError(script_name(hook), std::string(case_id), 0,
                           std::string("type error: expected ") + want + " return value, got '" + script::type_name(result) + "'");
    };
    switch (hook.return_kind) {
        case ReturnKind::Text:
            if (!result.is_str()) throw type_error("a string");
            return std::get<std::string>(result.v);
        case ReturnKind::Integer:
        case ReturnKind::Seconds:
            if (!result.is_int()) throw type_error("an integer");
            if (hook.return_kind == ReturnKind::Seconds && std::get<std::int64_t>(result.v) < 0)
                throw ScriptError(script_name(hook), std::string(case_id), 0,
                                  "negative number of seconds (" + std::to_string(std::get<std::int64_t>(result.v)) + ")");
            return std::get<std::int64_t>(result.v);
    }
    return std::int64_t{0};
}

std::int64_t ScriptEngine::evaluate_seconds(const ScriptHook& hook, std::string_view case_id, Rng& rng) {
    auto v = evaluate(hook, case_id, rng);
    if (!std::holds_alternative<std::int64_t>(v)) throw ScriptError(script_name(hook), std::string(case_id), 0, "type error: expected seconds");
    return std::get<std::int64_t>(v);
}

void ScriptEngine::clear_scratchpad(std::string_view case_id) {
    if (auto it = state_->scratch.find(case_id); it != state_->scratch.end()) state_->scratch.erase(it);
}

ScriptHook load_hook(const std::filesystem::path& path, std::string entry_point, ReturnKind kind) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw Error("cannot read hook file '" + path.string() + "'");
    std::ostringstream buf;
    buf << in.rdbuf();
    return ScriptHook{buf.str(), std::move(entry_point), kind, path.string()};
}

std::string_view to_string(ReturnKind kind) {
    switch (kind) {
        case ReturnKind::Integer: return "integer";
        case ReturnKind::Text: return "text";
        case ReturnKind::Seconds: return "seconds";
    }
    return "seconds";
}

ReturnKind return_kind_from_string(std::string_view text) {
    if (text == "integer") return ReturnKind::Integer;
    if (text == "text") return ReturnKind::Text;
    if (text == "seconds") return ReturnKind::Seconds;
    throw ConfigError("return_kind", "unknown value '" + std::string(text) + "'");
}

}  // namespace plgen
