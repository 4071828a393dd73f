#pragma once

// Internal representation of the hook scripting dialect: a small, sandboxed
// subset of Python (def/return/if/elif/else/while/for, assignments,
// arithmetic, comparisons, lists, strings, and a fixed set of builtins).

#include <cstdint>
#include <map>
#include <memory>
#include <stdexcept>
#include <string>
#include <variant>
#include <vector>

#include "plgen/random.hpp"

namespace plgen::script {

struct Value;
using List = std::vector<Value>;

struct Value {
    std::variant<std::monostate, bool, std::int64_t, double, std::string, std::shared_ptr<List>> v;

    Value() = default;
    Value(bool b) : v(b) {}
    Value(std::int64_t i) : v(i) {}
    Value(double d) : v(d) {}
    Value(std::string s) : v(std::move(s)) {}
    Value(std::shared_ptr<List> l) : v(std::move(l)) {}

    bool is_none() const { return std::holds_alternative<std::monostate>(v); }
    bool is_bool() const { return std::holds_alternative<bool>(v); }
    bool is_int() const { return std::holds_alternative<std::int64_t>(v); }
    bool is_float() const { return std::holds_alternative<double>(v); }
    bool is_number() const { return is_int() || is_float() || is_bool(); }
    bool is_str() const { return std::holds_alternative<std::string>(v); }
    bool is_list() const { return std::holds_alternative<std::shared_ptr<List>>(v); }
};

std::string type_name(const Value& v);

/// Error raised while compiling or running a script; `line` is 1-based.
struct ScriptFault : std::runtime_error {
    ScriptFault(const std::string& what, int line) : std::runtime_error(what), line(line) {}
    int line;
};

enum class TokenType { Name, Int, Float, String, Op, Newline, Indent, Dedent, End };

struct Token {
    TokenType type;
    std::string text;
    int line;
};

std::vector<Token> tokenize(const std::string& source);

struct Expr {
    enum class Kind { Const, Name, Attr, Call, Index, Unary, Binary, And, Or, Not, Compare, ListLit, Cond };
    Kind kind;
    int line = 0;
    Value constant;
    std::string name;  // identifier, attribute, or operator
    std::vector<std::string> ops;  // comparison chain operators
    std::vector<std::unique_ptr<Expr>> args;
};

struct Stmt {
    enum class Kind { Return, Assign, AugAssign, IndexAssign, If, While, For, Pass, Break, Continue, ExprStmt };
    Kind kind;
    int line = 0;
    std::string target;
    std::string op;
    std::unique_ptr<Expr> expr;
    std::unique_ptr<Expr> index_base;
    std::unique_ptr<Expr> index;
    std::vector<std::unique_ptr<Stmt>> body;
    std::vector<std::unique_ptr<Stmt>> orelse;
};

using Block = std::vector<std::unique_ptr<Stmt>>;

struct Function {
    std::string name;
    std::vector<std::string> params;
    Block body;
    int line = 0;
};

struct Module {
    std::map<std::string, Function> functions;
    Block globals;
    // Local name -> builtin name, from `from random import randint as r` style imports.
    std::map<std::string, std::string> imported;
    // Modules reachable by attribute access, e.g. `random.randint`.
    std::vector<std::string> modules;
};

/// Parses a whole script. Throws ScriptFault on syntax errors or disallowed imports.
Module parse(const std::string& source);

/// What the host exposes to a running script.
struct HostContext {
    Rng& rng;
    std::map<std::string, Value>& scratch;  // per-case scratchpad
    bool allow_io = false;
    std::size_t step_budget = 1'000'000;
};

/// Runs module-level statements, then calls `name(args...)`. Throws ScriptFault.
Value call_function(const Module& module, const std::string& name, std::vector<Value> args, HostContext& host);

}  // namespace plgen::script
