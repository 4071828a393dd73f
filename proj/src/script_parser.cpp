#include <algorithm>
#include <set>

#include "script_ast.hpp"

namespace plgen::script {

namespace {

const std::set<std::string> kImportableModules = {"random", "math"};

class Parser {
  public:
    explicit Parser(std::vector<Token> tokens) : tokens_(std::move(tokens)) {}

    Module parse_module() {
        Module module;
        while (!at(TokenType::End)) {
            if (accept(TokenType::Newline)) continue;
            if (peek_name("def")) {
                Function f = parse_def();
                if (module.functions.contains(f.name)) throw ScriptFault("function '" + f.name + "' defined twice", f.line);
                auto name = f.name;
                module.functions.emplace(std::move(name), std::move(f));
            } else if (peek_name("import") || peek_name("from")) {
                parse_import(module);
            } else {
                module.globals.push_back(parse_statement());
            }
        }
        return module;
    }

  private:
    std::vector<Token> tokens_;
    std::size_t pos_ = 0;

    const Token& cur() const { return tokens_[pos_]; }
    bool at(TokenType t) const { return cur().type == t; }
    bool peek_op(const char* op) const { return cur().type == TokenType::Op && cur().text == op; }
    bool peek_name(const char* word) const { return cur().type == TokenType::Name && cur().text == word; }

    bool accept(TokenType t) {
        if (!at(t)) return false;
        ++pos_;
        return true;
    }
    bool accept_op(const char* op) {
        if (!peek_op(op)) return false;
        ++pos_;
        return true;
    }
    bool accept_name(const char* word) {
        if (!peek_name(word)) return false;
        ++pos_;
        return true;
    }
    [[noreturn]] void fail(const std::string& what) const {
        const std::string near = cur().text.empty() ? "" : " near '" + cur().text + "'";
        throw ScriptFault(what + near, cur().line);
    }
    void expect_op(const char* op) {
        if (!accept_op(op)) fail(std::string("expected '") + op + "'");
    }
    std::string expect_identifier() {
        if (!at(TokenType::Name)) fail("expected a name");
        return tokens_[pos_++].text;
    }
    void expect_newline() {
        if (!accept(TokenType::Newline) && !at(TokenType::End) && !at(TokenType::Dedent)) fail("expected end of line");
    }

    void parse_import(Module& module) {
        const int line = cur().line;
        if (accept_name("import")) {
            do {
                auto name = expect_identifier();
                if (!kImportableModules.contains(name)) throw ScriptFault("module '" + name + "' is not available to hook scripts", line);
                module.modules.push_back(name);
            } while (accept_op(","));
        } else {
            accept_name("from");
            auto mod = expect_identifier();
            if (!kImportableModules.contains(mod)) throw ScriptFault("module '" + mod + "' is not available to hook scripts", line);
            if (!accept_name("import")) fail("expected 'import'");
            do {
                auto name = expect_identifier();
                auto alias = name;
                if (accept_name("as")) alias = expect_identifier();
                module.imported[alias] = mod + "." + name;
            } while (accept_op(","));
        }
        expect_newline();
    }

    Function parse_def() {
        Function f;
        f.line = cur().line;
        accept_name("def");
        f.name = expect_identifier();
        expect_op("(");
        if (!peek_op(")")) {
            do {
                f.params.push_back(expect_identifier());
            } while (accept_op(","));
        }
        expect_op(")");
        expect_op(":");
        f.body = parse_suite();
        return f;
    }

    Block parse_suite() {
        Block block;
        if (!accept(TokenType::Newline)) {
            // single-line suite: `if x: return 1`
            block.push_back(parse_simple());
            return block;
        }
        if (!accept(TokenType::Indent)) fail("expected an indented block");
        while (!accept(TokenType::Dedent)) {
            if (at(TokenType::End)) break;
            if (accept(TokenType::Newline)) continue;
            block.push_back(parse_statement());
        }
        return block;
    }

    std::unique_ptr<Stmt> make(Stmt::Kind kind) {
        auto s = std::make_unique<Stmt>();
        s->kind = kind;
        s->line = cur().line;
        return s;
    }

    std::unique_ptr<Stmt> parse_statement() {
        if (peek_name("if")) return parse_if();
        if (peek_name("while")) {
            auto s = make(Stmt::Kind::While);
            ++pos_;
            s->expr = parse_expr();
            expect_op(":");
            s->body = parse_suite();
            return s;
        }
        if (peek_name("for")) {
            auto s = make(Stmt::Kind::For);
            ++pos_;
            s->target = expect_identifier();
            if (!accept_name("in")) fail("expected 'in'");
            s->expr = parse_expr();
            expect_op(":");
            s->body = parse_suite();
            return s;
        }
        if (peek_name("def")) fail("nested function definitions are not supported");
        if (peek_name("import") || peek_name("from")) fail("imports are only allowed at top level");
        return parse_simple();
    }

    std::unique_ptr<Stmt> parse_if() {
        auto s = make(Stmt::Kind::If);
        ++pos_;  // if / elif
        s->expr = parse_expr();
        expect_op(":");
        s->body = parse_suite();
        if (peek_name("elif")) {
            s->orelse.push_back(parse_if());
        } else if (accept_name("else")) {
            expect_op(":");
            s->orelse = parse_suite();
        }
        return s;
    }

    std::unique_ptr<Stmt> parse_simple() {
        std::unique_ptr<Stmt> s;
        if (peek_name("return")) {
            s = make(Stmt::Kind::Return);
            ++pos_;
            if (!at(TokenType::Newline) && !at(TokenType::End) && !at(TokenType::Dedent)) s->expr = parse_expr();
        } else if (peek_name("pass")) {
            s = make(Stmt::Kind::Pass);
            ++pos_;
        } else if (peek_name("break")) {
            s = make(Stmt::Kind::Break);
            ++pos_;
        } else if (peek_name("continue")) {
            s = make(Stmt::Kind::Continue);
            ++pos_;
        } else {
            const int line = cur().line;
            auto target = parse_expr();
            static const char* const aug[] = {"+=", "-=", "*=", "/=", "//=", "%=", "**="};
            if (peek_op("=")) {
                ++pos_;
                if (target->kind == Expr::Kind::Name) {
                    s = make(Stmt::Kind::Assign);
                    s->target = target->name;
                } else if (target->kind == Expr::Kind::Index) {
                    s = make(Stmt::Kind::IndexAssign);
                    s->index_base = std::move(target->args[0]);
                    s->index = std::move(target->args[1]);
                } else {
                    throw ScriptFault("cannot assign to this expression", line);
                }
                s->line = line;
                s->expr = parse_expr();
            } else if (auto it = std::find_if(std::begin(aug), std::end(aug), [&](const char* op) { return peek_op(op); }); it != std::end(aug)) {
                if (target->kind != Expr::Kind::Name) throw ScriptFault("augmented assignment needs a plain name", line);
                s = make(Stmt::Kind::AugAssign);
                s->line = line;
                s->target = target->name;
                s->op = std::string(*it).substr(0, std::string(*it).size() - 1);
                ++pos_;
                s->expr = parse_expr();
            } else {
                s = make(Stmt::Kind::ExprStmt);
                s->line = line;
                s->expr = std::move(target);
            }
        }
        expect_newline();
        return s;
    }

    // ---- expressions, lowest precedence first ----

    std::unique_ptr<Expr> node(Expr::Kind kind, int line) {
        auto e = std::make_unique<Expr>();
        e->kind = kind;
        e->line = line;
        return e;
    }

    std::unique_ptr<Expr> parse_expr() {
        auto value = parse_or();
        if (peek_name("if")) {
            const int line = cur().line;
            ++pos_;
            auto cond = parse_or();
            if (!accept_name("else")) fail("expected 'else' in conditional expression");
            auto other = parse_expr();
            auto e = node(Expr::Kind::Cond, line);
            e->args.push_back(std::move(cond));
            e->args.push_back(std::move(value));
            e->args.push_back(std::move(other));
            return e;
        }
        return value;
    }

    std::unique_ptr<Expr> parse_or() {
        auto left = parse_and();
        while (peek_name("or")) {
            auto e = node(Expr::Kind::Or, cur().line);
            ++pos_;
            e->args.push_back(std::move(left));
            e->args.push_back(parse_and());
            left = std::move(e);
        }
        return left;
    }

    std::unique_ptr<Expr> parse_and() {
        auto left = parse_not();
        while (peek_name("and")) {
            auto e = node(Expr::Kind::And, cur().line);
            ++pos_;
            e->args.push_back(std::move(left));
            e->args.push_back(parse_not());
            left = std::move(e);
        }
        return left;
    }

    std::unique_ptr<Expr> parse_not() {
        if (peek_name("not")) {
            auto e = node(Expr::Kind::Not, cur().line);
            ++pos_;
            e->args.push_back(parse_not());
            return e;
        }
        return parse_comparison();
    }

    std::unique_ptr<Expr> parse_comparison() {
        auto first = parse_arith();
        std::unique_ptr<Expr> cmp;
        for (;;) {
            std::string op;
            if (cur().type == TokenType::Op && (cur().text == "==" || cur().text == "!=" || cur().text == "<" || cur().text == "<=" ||
                                                cur().text == ">" || cur().text == ">=")) {
                op = cur().text;
                ++pos_;
            } else if (peek_name("in")) {
                op = "in";
                ++pos_;
            } else if (peek_name("not") && pos_ + 1 < tokens_.size() && tokens_[pos_ + 1].type == TokenType::Name && tokens_[pos_ + 1].text == "in") {
                op = "not in";
                pos_ += 2;
            } else {
                break;
            }
            if (!cmp) {
                cmp = node(Expr::Kind::Compare, first->line);
                cmp->args.push_back(std::move(first));
            }
            cmp->ops.push_back(op);
            cmp->args.push_back(parse_arith());
        }
        return cmp ? std::move(cmp) : std::move(first);
    }

    std::unique_ptr<Expr> binary(std::string op, std::unique_ptr<Expr> l, std::unique_ptr<Expr> r, int line) {
        auto e = node(Expr::Kind::Binary, line);
        e->name = std::move(op);
        e->args.push_back(std::move(l));
        e->args.push_back(std::move(r));
        return e;
    }

    std::unique_ptr<Expr> parse_arith() {
        auto left = parse_term();
        while (peek_op("+") || peek_op("-")) {
            auto op = cur().text;
            const int line = cur().line;
            ++pos_;
            left = binary(op, std::move(left), parse_term(), line);
        }
        return left;
    }

    std::unique_ptr<Expr> parse_term() {
        auto left = parse_unary();
        while (peek_op("*") || peek_op("/") || peek_op("//") || peek_op("%")) {
            auto op = cur().text;
            const int line = cur().line;
            ++pos_;
            left = binary(op, std::move(left), parse_unary(), line);
        }
        return left;
    }

    std::unique_ptr<Expr> parse_unary() {
        if (peek_op("-") || peek_op("+")) {
            auto e = node(Expr::Kind::Unary, cur().line);
            e->name = cur().text;
            ++pos_;
            e->args.push_back(parse_unary());
            return e;
        }
        return parse_power();
    }

    std::unique_ptr<Expr> parse_power() {
        auto base = parse_postfix();
        if (peek_op("**")) {
            const int line = cur().line;
            ++pos_;
            return binary("**", std::move(base), parse_unary(), line);
        }
        return base;
    }

    std::unique_ptr<Expr> parse_postfix() {
        auto e = parse_atom();
        for (;;) {
            const int line = cur().line;
            if (accept_op("(")) {
                auto call = node(Expr::Kind::Call, line);
                call->args.push_back(std::move(e));
                if (!peek_op(")")) {
                    do {
                        if (peek_op(")")) break;
                        call->args.push_back(parse_expr());
                    } while (accept_op(","));
                }
                expect_op(")");
                e = std::move(call);
            } else if (accept_op("[")) {
                auto idx = node(Expr::Kind::Index, line);
                idx->args.push_back(std::move(e));
                idx->args.push_back(parse_expr());
                expect_op("]");
                e = std::move(idx);
            } else if (accept_op(".")) {
                auto attr = node(Expr::Kind::Attr, line);
                attr->name = expect_identifier();
                attr->args.push_back(std::move(e));
                e = std::move(attr);
            } else {
                return e;
            }
        }
    }

    std::unique_ptr<Expr> parse_atom() {
        const Token& t = cur();
        const int line = t.line;
        switch (t.type) {
            case TokenType::Int: {
                auto e = node(Expr::Kind::Const, line);
                try {
                    e->constant = Value(static_cast<std::int64_t>(std::stoll(t.text)));
                } catch (const std::exception&) {
                    fail("integer literal out of range");
                }
                ++pos_;
                return e;
            }
            case TokenType::Float: {
                auto e = node(Expr::Kind::Const, line);
                e->constant = Value(std::stod(t.text));
                ++pos_;
                return e;
            }
            case TokenType::String: {
                auto e = node(Expr::Kind::Const, line);
                std::string text = t.text;
                ++pos_;
                while (at(TokenType::String)) text += tokens_[pos_++].text;  // implicit concatenation
                e->constant = Value(std::move(text));
                return e;
            }
            case TokenType::Name: {
                auto e = node(Expr::Kind::Const, line);
                if (t.text == "True") e->constant = Value(true);
                else if (t.text == "False") e->constant = Value(false);
                else if (t.text == "None") e->constant = Value();
                else {
                    static const std::set<std::string> reserved = {"def", "return", "if", "elif", "else", "while", "for", "in", "and",
                                                                   "or", "not", "pass", "break", "continue", "import", "from"};
                    if (reserved.contains(t.text)) fail("unexpected keyword");
                    e->kind = Expr::Kind::Name;
                    e->name = t.text;
                }
                ++pos_;
                return e;
            }
            case TokenType::Op:
                if (t.text == "(") {
                    ++pos_;
                    auto e = parse_expr();
                    expect_op(")");
                    return e;
                }
                if (t.text == "[") {
                    ++pos_;
                    auto e = node(Expr::Kind::ListLit, line);
                    while (!peek_op("]")) {
                        e->args.push_back(parse_expr());
                        if (!accept_op(",")) break;
                    }
                    expect_op("]");
                    return e;
                }
                break;
            default:
                break;
        }
        fail("expected an expression");
    }
};

}  // namespace

Module parse(const std::string& source) { return Parser(tokenize(source)).parse_module(); }

}  // namespace plgen::script
