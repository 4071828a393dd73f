#include <charconv>
#include <cmath>
#include <fstream>
#include <functional>
#include <numbers>
#include <sstream>

#include "script_ast.hpp"

namespace plgen::script {

std::string type_name(const Value& v) {
    if (v.is_none()) return "NoneType";
    if (v.is_bool()) return "bool";
    if (v.is_int()) return "int";
    if (v.is_float()) return "float";
    if (v.is_str()) return "str";
    return "list";
}

namespace {

constexpr int kMaxCallDepth = 64;
constexpr std::size_t kMaxSequenceLength = 1'000'000;

enum class Flow { Normal, Return, Break, Continue };

bool truthy(const Value& v) {
    if (v.is_none()) return false;
    if (v.is_bool()) return std::get<bool>(v.v);
    if (v.is_int()) return std::get<std::int64_t>(v.v) != 0;
    if (v.is_float()) return std::get<double>(v.v) != 0.0;
    if (v.is_str()) return !std::get<std::string>(v.v).empty();
    return !std::get<std::shared_ptr<List>>(v.v)->empty();
}

double as_double(const Value& v) {
    if (v.is_int()) return static_cast<double>(std::get<std::int64_t>(v.v));
    if (v.is_bool()) return std::get<bool>(v.v) ? 1.0 : 0.0;
    return std::get<double>(v.v);
}

bool integral(const Value& v) { return v.is_int() || v.is_bool(); }

std::int64_t as_int(const Value& v) {
    if (v.is_bool()) return std::get<bool>(v.v) ? 1 : 0;
    return std::get<std::int64_t>(v.v);
}

std::string format_float(double d) {
    if (std::isnan(d)) return "nan";
    if (std::isinf(d)) return d > 0 ? "inf" : "-inf";
    char buf[64];
    auto [end, ec] = std::to_chars(buf, buf + sizeof buf, d);
    std::string s(buf, end);
    if (s.find_first_of(".en") == std::string::npos) s += ".0";
    return s;
}

std::string repr(const Value& v);

std::string to_str(const Value& v) {
    if (v.is_none()) return "None";
    if (v.is_bool()) return std::get<bool>(v.v) ? "True" : "False";
    if (v.is_int()) return std::to_string(std::get<std::int64_t>(v.v));
    if (v.is_float()) return format_float(std::get<double>(v.v));
    if (v.is_str()) return std::get<std::string>(v.v);
    std::string out = "[";
    const auto& list = *std::get<std::shared_ptr<List>>(v.v);
    for (std::size_t i = 0; i < list.size(); ++i) out += (i ? ", " : "") + repr(list[i]);
    return out + "]";
}

std::string repr(const Value& v) { return v.is_str() ? "'" + std::get<std::string>(v.v) + "'" : to_str(v); }

bool equal(const Value& a, const Value& b) {
    if (a.is_number() && b.is_number()) {
        if (integral(a) && integral(b)) return as_int(a) == as_int(b);
        return as_double(a) == as_double(b);
    }
    if (a.is_str() && b.is_str()) return std::get<std::string>(a.v) == std::get<std::string>(b.v);
    if (a.is_none() && b.is_none()) return true;
    if (a.is_list() && b.is_list()) {
        const auto& x = *std::get<std::shared_ptr<List>>(a.v);
        const auto& y = *std::get<std::shared_ptr<List>>(b.v);
        if (x.size() != y.size()) return false;
        for (std::size_t i = 0; i < x.size(); ++i)
            if (!equal(x[i], y[i])) return false;
        return true;
    }
    return false;
}

std::int64_t checked(bool overflow, std::int64_t r, int line) {
    if (overflow) throw ScriptFault("integer overflow", line);
    return r;
}

std::int64_t floor_div(std::int64_t a, std::int64_t b, int line) {
    if (b == 0) throw ScriptFault("integer division by zero", line);
    if (a == INT64_MIN && b == -1) throw ScriptFault("integer overflow", line);
    std::int64_t q = a / b;
    if ((a % b != 0) && ((a < 0) != (b < 0))) --q;
    return q;
}

std::int64_t py_mod(std::int64_t a, std::int64_t b, int line) {
    if (b == 0) throw ScriptFault("integer modulo by zero", line);
    if (b == -1) return 0;
    std::int64_t r = a % b;
    if (r != 0 && ((r < 0) != (b < 0))) r += b;
    return r;
}

class Interpreter {
  public:
    Interpreter(const Module& module, HostContext& host) : module_(module), host_(host) {}

    Value run(const std::string& name, std::vector<Value> args) {
        std::map<std::string, Value> module_scope;
        globals_ = &module_scope;
        Value ignored;
        exec_block(module_.globals, module_scope, ignored);
        auto it = module_.functions.find(name);
        if (it == module_.functions.end()) throw ScriptFault("function '" + name + "' is not defined", 0);
        return call_user(it->second, std::move(args), 0);
    }

  private:
    const Module& module_;
    HostContext& host_;
    std::map<std::string, Value>* globals_ = nullptr;
    std::size_t steps_ = 0;
    int depth_ = 0;

    void tick(int line) {
        if (++steps_ > host_.step_budget)
            throw ScriptFault("step budget of " + std::to_string(host_.step_budget) + " exhausted (runaway script?)", line);
    }

    Value call_user(const Function& f, std::vector<Value> args, int line) {
        if (args.size() != f.params.size())
            throw ScriptFault(f.name + "() takes " + std::to_string(f.params.size()) + " argument(s) but " + std::to_string(args.size()) +
                                  " were given",
                              line ? line : f.line);
        if (++depth_ > kMaxCallDepth) throw ScriptFault("maximum call depth exceeded", line);
        std::map<std::string, Value> locals;
        for (std::size_t i = 0; i < args.size(); ++i) locals[f.params[i]] = std::move(args[i]);
        Value result;
        exec_block(f.body, locals, result);
        --depth_;
        return result;
    }

    Flow exec_block(const Block& block, std::map<std::string, Value>& scope, Value& result) {
        for (const auto& stmt : block) {
            const Flow flow = exec(*stmt, scope, result);
            if (flow != Flow::Normal) return flow;
        }
        return Flow::Normal;
    }

    Flow exec(const Stmt& s, std::map<std::string, Value>& scope, Value& result) {
        tick(s.line);
        switch (s.kind) {
            case Stmt::Kind::Return:
                result = s.expr ? eval(*s.expr, scope) : Value();
                return Flow::Return;
            case Stmt::Kind::Assign:
                scope[s.target] = eval(*s.expr, scope);
                return Flow::Normal;
            case Stmt::Kind::AugAssign: {
                Value current = lookup(s.target, scope, s.line);
                scope[s.target] = binary(s.op, current, eval(*s.expr, scope), s.line);
                return Flow::Normal;
            }
            case Stmt::Kind::IndexAssign: {
                Value base = eval(*s.index_base, scope);
                if (!base.is_list()) throw ScriptFault("'" + type_name(base) + "' does not support item assignment", s.line);
                auto& list = *std::get<std::shared_ptr<List>>(base.v);
                list[index_of(list.size(), eval(*s.index, scope), s.line)] = eval(*s.expr, scope);
                return Flow::Normal;
            }
            case Stmt::Kind::If:
                if (truthy(eval(*s.expr, scope))) return exec_block(s.body, scope, result);
                return exec_block(s.orelse, scope, result);
            case Stmt::Kind::While:
                while (truthy(eval(*s.expr, scope))) {
                    const Flow flow = exec_block(s.body, scope, result);
                    if (flow == Flow::Break) break;
                    if (flow == Flow::Return) return flow;
                }
                return Flow::Normal;
            case Stmt::Kind::For: {
                Value seq = eval(*s.expr, scope);
                std::vector<Value> items;
                if (seq.is_list()) items = *std::get<std::shared_ptr<List>>(seq.v);
                else if (seq.is_str())
                    for (char c : std::get<std::string>(seq.v)) items.emplace_back(std::string(1, c));
                else throw ScriptFault("'" + type_name(seq) + "' is not iterable", s.line);
                for (auto& item : items) {
                    scope[s.target] = std::move(item);
                    const Flow flow = exec_block(s.body, scope, result);
                    if (flow == Flow::Break) break;
                    if (flow == Flow::Return) return flow;
                }
                return Flow::Normal;
            }
            case Stmt::Kind::Pass: return Flow::Normal;
            case Stmt::Kind::Break: return Flow::Break;
            case Stmt::Kind::Continue: return Flow::Continue;
            case Stmt::Kind::ExprStmt: eval(*s.expr, scope); return Flow::Normal;
        }
        return Flow::Normal;
    }

    Value lookup(const std::string& name, const std::map<std::string, Value>& scope, int line) {
        if (auto it = scope.find(name); it != scope.end()) return it->second;
        if (globals_)
            if (auto it = globals_->find(name); it != globals_->end()) return it->second;
        throw ScriptFault("name '" + name + "' is not defined", line);
    }

    static std::size_t index_of(std::size_t size, const Value& idx, int line) {
        if (!integral(idx)) throw ScriptFault("indices must be integers", line);
        std::int64_t i = as_int(idx);
        if (i < 0) i += static_cast<std::int64_t>(size);
        if (i < 0 || i >= static_cast<std::int64_t>(size)) throw ScriptFault("index out of range", line);
        return static_cast<std::size_t>(i);
    }

    Value eval(const Expr& e, std::map<std::string, Value>& scope) {
        tick(e.line);
        switch (e.kind) {
            case Expr::Kind::Const: return e.constant;
            case Expr::Kind::Name: return lookup(e.name, scope, e.line);
            case Expr::Kind::Attr: {
                if (e.args[0]->kind == Expr::Kind::Name && e.args[0]->name == "math") {
                    if (e.name == "pi") return Value(std::numbers::pi);
                    if (e.name == "e") return Value(std::numbers::e);
                }
                throw ScriptFault("attribute access is only supported for module functions", e.line);
            }
            case Expr::Kind::Call: return call(e, scope);
            case Expr::Kind::Index: {
                Value base = eval(*e.args[0], scope);
                Value idx = eval(*e.args[1], scope);
                if (base.is_list()) {
                    const auto& list = *std::get<std::shared_ptr<List>>(base.v);
                    return list[index_of(list.size(), idx, e.line)];
                }
                if (base.is_str()) {
                    const auto& str = std::get<std::string>(base.v);
                    return Value(std::string(1, str[index_of(str.size(), idx, e.line)]));
                }
                throw ScriptFault("'" + type_name(base) + "' is not subscriptable", e.line);
            }
            case Expr::Kind::Unary: {
                Value v = eval(*e.args[0], scope);
                if (!v.is_number()) throw ScriptFault("bad operand type for unary " + e.name + ": '" + type_name(v) + "'", e.line);
                if (e.name == "+") return integral(v) ? Value(as_int(v)) : v;
                if (integral(v)) return Value(checked(as_int(v) == INT64_MIN, -as_int(v), e.line));
                return Value(-as_double(v));
            }
            case Expr::Kind::Binary: return binary(e.name, eval(*e.args[0], scope), eval(*e.args[1], scope), e.line);
            case Expr::Kind::And: {
                Value l = eval(*e.args[0], scope);
                return truthy(l) ? eval(*e.args[1], scope) : l;
            }
            case Expr::Kind::Or: {
                Value l = eval(*e.args[0], scope);
                return truthy(l) ? l : eval(*e.args[1], scope);
            }
            case Expr::Kind::Not: return Value(!truthy(eval(*e.args[0], scope)));
            case Expr::Kind::Compare: {
                Value left = eval(*e.args[0], scope);
                for (std::size_t i = 0; i < e.ops.size(); ++i) {
                    Value right = eval(*e.args[i + 1], scope);
                    if (!compare(e.ops[i], left, right, e.line)) return Value(false);
                    left = std::move(right);
                }
                return Value(true);
            }
            case Expr::Kind::ListLit: {
                auto list = std::make_shared<List>();
                for (const auto& a : e.args) list->push_back(eval(*a, scope));
                return Value(list);
            }
            case Expr::Kind::Cond:
                return truthy(eval(*e.args[0], scope)) ? eval(*e.args[1], scope) : eval(*e.args[2], scope);
        }
        return Value();
    }

    bool compare(const std::string& op, const Value& a, const Value& b, int line) {
        if (op == "==") return equal(a, b);
        if (op == "!=") return !equal(a, b);
        if (op == "in" || op == "not in") {
            bool found = false;
            if (b.is_list()) {
                for (const auto& item : *std::get<std::shared_ptr<List>>(b.v))
                    if (equal(item, a)) found = true;
            } else if (b.is_str() && a.is_str()) {
                found = std::get<std::string>(b.v).find(std::get<std::string>(a.v)) != std::string::npos;
            } else {
                throw ScriptFault("argument of type '" + type_name(b) + "' is not iterable", line);
            }
            return op == "in" ? found : !found;
        }
        int order;
        if (a.is_number() && b.is_number()) {
            if (integral(a) && integral(b)) order = as_int(a) < as_int(b) ? -1 : (as_int(a) > as_int(b) ? 1 : 0);
            else order = as_double(a) < as_double(b) ? -1 : (as_double(a) > as_double(b) ? 1 : 0);
        } else if (a.is_str() && b.is_str()) {
            order = std::get<std::string>(a.v).compare(std::get<std::string>(b.v));
        } else {
            throw ScriptFault("'" + op + "' not supported between '" + type_name(a) + "' and '" + type_name(b) + "'", line);
        }
        if (op == "<") return order < 0;
        if (op == "<=") return order <= 0;
        if (op == ">") return order > 0;
        return order >= 0;
    }

    Value binary(const std::string& op, const Value& a, const Value& b, int line) {
        if (a.is_number() && b.is_number()) {
            if (integral(a) && integral(b)) {
                const std::int64_t x = as_int(a), y = as_int(b);
                std::int64_t r = 0;
                if (op == "+") {
                    const bool overflow = __builtin_add_overflow(x, y, &r);
                    return Value(checked(overflow, r, line));
                }
                if (op == "-") {
                    const bool overflow = __builtin_sub_overflow(x, y, &r);
                    return Value(checked(overflow, r, line));
                }
                if (op == "*") {
                    const bool overflow = __builtin_mul_overflow(x, y, &r);
                    return Value(checked(overflow, r, line));
                }
                if (op == "//") return Value(floor_div(x, y, line));
                if (op == "%") return Value(py_mod(x, y, line));
                if (op == "/") {
                    if (y == 0) throw ScriptFault("division by zero", line);
                    return Value(static_cast<double>(x) / static_cast<double>(y));
                }
                if (op == "**") {
                    if (y < 0) return Value(std::pow(static_cast<double>(x), static_cast<double>(y)));
                    std::int64_t acc = 1;
                    for (std::int64_t i = 0; i < y; ++i) {
                        const bool overflow = __builtin_mul_overflow(acc, x, &r);
                        acc = checked(overflow, r, line);
                        if (acc == 0 || acc == 1) break;
                    }
                    return Value(acc);
                }
            } else {
                const double x = as_double(a), y = as_double(b);
                if (op == "+") return Value(x + y);
                if (op == "-") return Value(x - y);
                if (op == "*") return Value(x * y);
                if (op == "**") return Value(std::pow(x, y));
                if (y == 0.0) throw ScriptFault("float division by zero", line);
                if (op == "/") return Value(x / y);
                if (op == "//") return Value(std::floor(x / y));
                if (op == "%") {
                    double r = std::fmod(x, y);
                    if (r != 0.0 && ((r < 0) != (y < 0))) r += y;
                    return Value(r);
                }
            }
        }
        if (op == "+" && a.is_str() && b.is_str()) return Value(std::get<std::string>(a.v) + std::get<std::string>(b.v));
        if (op == "+" && a.is_list() && b.is_list()) {
            auto list = std::make_shared<List>(*std::get<std::shared_ptr<List>>(a.v));
            const auto& other = *std::get<std::shared_ptr<List>>(b.v);
            list->insert(list->end(), other.begin(), other.end());
            return Value(list);
        }
        if (op == "*" && ((a.is_str() && integral(b)) || (integral(a) && b.is_str()))) {
            const auto& s = a.is_str() ? std::get<std::string>(a.v) : std::get<std::string>(b.v);
            const std::int64_t times = a.is_str() ? as_int(b) : as_int(a);
            if (times > 0 && s.size() * static_cast<std::size_t>(times) > kMaxSequenceLength) throw ScriptFault("string too long", line);
            std::string out;
            for (std::int64_t i = 0; i < times; ++i) out += s;
            return Value(out);
        }
        if (op == "%" && a.is_str()) throw ScriptFault("string formatting with % is not supported; use str() and +", line);
        throw ScriptFault("unsupported operand types for " + op + ": '" + type_name(a) + "' and '" + type_name(b) + "'", line);
    }

    // ---- calls ----

    std::string resolve_builtin(const Expr& callee) {
        if (callee.kind == Expr::Kind::Name) {
            if (auto it = module_.imported.find(callee.name); it != module_.imported.end()) return it->second;
            static const std::map<std::string, std::string> bare = {
                {"randint", "random.randint"}, {"uniform", "random.uniform"}, {"choice", "random.choice"},
                {"gauss", "random.gauss"},     {"random", "random.random"},
            };
            if (auto it = bare.find(callee.name); it != bare.end()) return it->second;
            return callee.name;
        }
        if (callee.kind == Expr::Kind::Attr && callee.args[0]->kind == Expr::Kind::Name) return callee.args[0]->name + "." + callee.name;
        throw ScriptFault("expression is not callable", callee.line);
    }

    Value call(const Expr& e, std::map<std::string, Value>& scope) {
        const Expr& callee = *e.args[0];
        std::vector<Value> args;
        for (std::size_t i = 1; i < e.args.size(); ++i) args.push_back(eval(*e.args[i], scope));
        if (callee.kind == Expr::Kind::Name)
            if (auto it = module_.functions.find(callee.name); it != module_.functions.end()) return call_user(it->second, std::move(args), e.line);
        return builtin(resolve_builtin(callee), args, e.line);
    }

    static void arity(const std::string& name, const std::vector<Value>& args, std::size_t lo, std::size_t hi, int line) {
        if (args.size() < lo || args.size() > hi)
            throw ScriptFault(name + "() got " + std::to_string(args.size()) + " argument(s)", line);
    }

    static std::int64_t want_int(const std::string& name, const Value& v, int line) {
        if (!integral(v)) throw ScriptFault(name + "() expects an integer, got '" + type_name(v) + "'", line);
        return as_int(v);
    }

    static double want_number(const std::string& name, const Value& v, int line) {
        if (!v.is_number()) throw ScriptFault(name + "() expects a number, got '" + type_name(v) + "'", line);
        return as_double(v);
    }

    static std::string want_str(const std::string& name, const Value& v, int line) {
        if (!v.is_str()) throw ScriptFault(name + "() expects a string, got '" + type_name(v) + "'", line);
        return std::get<std::string>(v.v);
    }

    void require_io(const std::string& name, int line) const {
        if (!host_.allow_io) throw ScriptFault(name + "(): file access is disabled for hook scripts (enable with --allow-script-io)", line);
    }

    Value builtin(const std::string& name, const std::vector<Value>& args, int line) {
        if (name == "random.randint") {
            arity(name, args, 2, 2, line);
            const auto lo = want_int(name, args[0], line), hi = want_int(name, args[1], line);
            if (hi < lo) throw ScriptFault("randint(): empty range", line);
            return Value(host_.rng.uniform_int(lo, hi));
        }
        if (name == "random.random") {
            arity(name, args, 0, 0, line);
            return Value(host_.rng.uniform01());
        }
        if (name == "random.uniform") {
            arity(name, args, 2, 2, line);
            return Value(host_.rng.uniform_real(want_number(name, args[0], line), want_number(name, args[1], line)));
        }
        if (name == "random.gauss") {
            arity(name, args, 2, 2, line);
            return Value(host_.rng.normal(want_number(name, args[0], line), want_number(name, args[1], line)));
        }
        if (name == "random.choice") {
            arity(name, args, 1, 1, line);
            if (args[0].is_list()) {
                const auto& list = *std::get<std::shared_ptr<List>>(args[0].v);
                if (list.empty()) throw ScriptFault("choice() from an empty sequence", line);
                return list[host_.rng.index(list.size())];
            }
            const auto s = want_str(name, args[0], line);
            if (s.empty()) throw ScriptFault("choice() from an empty sequence", line);
            return Value(std::string(1, s[host_.rng.index(s.size())]));
        }
        if (name == "math.floor" || name == "math.ceil") {
            arity(name, args, 1, 1, line);
            const double x = want_number(name, args[0], line);
            return Value(static_cast<std::int64_t>(name == "math.floor" ? std::floor(x) : std::ceil(x)));
        }
        if (name == "math.sqrt" || name == "math.log" || name == "math.exp") {
            arity(name, args, 1, 1, line);
            const double x = want_number(name, args[0], line);
            if (name == "math.sqrt") {
                if (x < 0) throw ScriptFault("math domain error", line);
                return Value(std::sqrt(x));
            }
            if (name == "math.log") {
                if (x <= 0) throw ScriptFault("math domain error", line);
                return Value(std::log(x));
            }
            return Value(std::exp(x));
        }
        if (name == "int") {
            arity(name, args, 1, 1, line);
            const Value& v = args[0];
            if (integral(v)) return Value(as_int(v));
            if (v.is_float()) {
                const double d = std::get<double>(v.v);
                if (!std::isfinite(d) || std::fabs(d) > 9.2e18) throw ScriptFault("int(): value out of range", line);
                return Value(static_cast<std::int64_t>(std::trunc(d)));
            }
            if (v.is_str()) {
                const auto& s = std::get<std::string>(v.v);
                std::int64_t out = 0;
                auto [p, ec] = std::from_chars(s.data(), s.data() + s.size(), out);
                if (ec != std::errc() || p != s.data() + s.size()) throw ScriptFault("int(): invalid literal '" + s + "'", line);
                return Value(out);
            }
            throw ScriptFault("int() argument must be a number or string", line);
        }
        if (name == "float") {
            arity(name, args, 1, 1, line);
            if (args[0].is_number()) return Value(as_double(args[0]));
            if (args[0].is_str()) {
                try {
                    return Value(std::stod(std::get<std::string>(args[0].v)));
                } catch (const std::exception&) {
                    throw ScriptFault("float(): invalid literal", line);
                }
            }
            throw ScriptFault("float() argument must be a number or string", line);
        }
        if (name == "str") {
            arity(name, args, 0, 1, line);
            return Value(args.empty() ? std::string() : to_str(args[0]));
        }
        if (name == "bool") {
            arity(name, args, 0, 1, line);
            return Value(!args.empty() && truthy(args[0]));
        }
        if (name == "len") {
            arity(name, args, 1, 1, line);
            if (args[0].is_str()) return Value(static_cast<std::int64_t>(std::get<std::string>(args[0].v).size()));
            if (args[0].is_list()) return Value(static_cast<std::int64_t>(std::get<std::shared_ptr<List>>(args[0].v)->size()));
            throw ScriptFault("object of type '" + type_name(args[0]) + "' has no len()", line);
        }
        if (name == "abs") {
            arity(name, args, 1, 1, line);
            if (integral(args[0])) {
                const auto x = as_int(args[0]);
                return Value(checked(x == INT64_MIN, x < 0 ? -x : x, line));
            }
            return Value(std::fabs(want_number(name, args[0], line)));
        }
        if (name == "round") {
            arity(name, args, 1, 2, line);
            const double x = want_number(name, args[0], line);
            if (args.size() == 1) return Value(static_cast<std::int64_t>(std::nearbyint(x)));
            const double scale = std::pow(10.0, static_cast<double>(want_int(name, args[1], line)));
            return Value(std::nearbyint(x * scale) / scale);
        }
        if (name == "min" || name == "max") {
            if (args.empty()) throw ScriptFault(name + "() expects at least one argument", line);
            std::vector<Value> items = args;
            if (args.size() == 1 && args[0].is_list()) items = *std::get<std::shared_ptr<List>>(args[0].v);
            if (items.empty()) throw ScriptFault(name + "() arg is an empty sequence", line);
            Value best = items[0];
            for (std::size_t i = 1; i < items.size(); ++i)
                if (compare(name == "min" ? "<" : ">", items[i], best, line)) best = items[i];
            return best;
        }
        if (name == "range") {
            arity(name, args, 1, 3, line);
            std::int64_t start = 0, stop, step = 1;
            if (args.size() == 1) stop = want_int(name, args[0], line);
            else {
                start = want_int(name, args[0], line);
                stop = want_int(name, args[1], line);
                if (args.size() == 3) step = want_int(name, args[2], line);
            }
            if (step == 0) throw ScriptFault("range() step must not be zero", line);
            auto list = std::make_shared<List>();
            for (std::int64_t i = start; step > 0 ? i < stop : i > stop; i += step) {
                if (list->size() >= kMaxSequenceLength) throw ScriptFault("range() too large", line);
                list->emplace_back(i);
            }
            return Value(list);
        }
        if (name == "print") return Value();
        if (name == "scratch_get") {
            arity(name, args, 1, 2, line);
            const auto key = want_str(name, args[0], line);
            if (auto it = host_.scratch.find(key); it != host_.scratch.end()) return it->second;
            return args.size() == 2 ? args[1] : Value();
        }
        if (name == "scratch_set") {
            arity(name, args, 2, 2, line);
            host_.scratch[want_str(name, args[0], line)] = args[1];
            return Value();
        }
        if (name == "read_file") {
            arity(name, args, 1, 1, line);
            require_io(name, line);
            std::ifstream in(want_str(name, args[0], line), std::ios::binary);
            if (!in) return Value();
            std::ostringstream buf;
            buf << in.rdbuf();
            return Value(buf.str());
        }
        if (name == "write_file" || name == "append_file") {
            arity(name, args, 2, 2, line);
            require_io(name, line);
            std::ofstream out(want_str(name, args[0], line), name == "write_file" ? std::ios::trunc : std::ios::app);
            if (!out) throw ScriptFault(name + "(): cannot open file", line);
            out << to_str(args[1]);
            return Value();
        }
        throw ScriptFault("name '" + name + "' is not defined", line);
    }
};

}  // namespace

Value call_function(const Module& module, const std::string& name, std::vector<Value> args, HostContext& host) {
    return Interpreter(module, host).run(name, std::move(args));
}

}  // namespace plgen::script
