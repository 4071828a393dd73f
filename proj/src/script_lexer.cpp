#include <cctype>

#include "script_ast.hpp"

namespace plgen::script {

namespace {

const char* const kThreeCharOps[] = {"//=", "**="};
const char* const kTwoCharOps[] = {"==", "!=", "<=", ">=", "//", "**", "+=", "-=", "*=", "/=", "%="};
const std::string kSingleOps = "+-*/%<>=()[],:.";

}  // namespace

std::vector<Token> tokenize(const std::string& source) {
    std::vector<Token> tokens;
    std::vector<std::size_t> indents{0};
    int depth = 0;  // bracket nesting; newlines inside brackets are ignored
    int line = 1;
    std::size_t i = 0;
    bool at_line_start = true;
    const std::size_t n = source.size();

    while (i < n) {
        if (at_line_start && depth == 0) {
            std::size_t width = 0;
            std::size_t j = i;
            while (j < n && (source[j] == ' ' || source[j] == '\t')) {
                width += source[j] == '\t' ? 8 - (width % 8) : 1;
                ++j;
            }
            if (j >= n) break;
            if (source[j] == '\n' || source[j] == '\r' || source[j] == '#') {
                // blank or comment-only line
                while (j < n && source[j] != '\n') ++j;
                if (j < n) ++j;
                ++line;
                i = j;
                continue;
            }
            if (width > indents.back()) {
                indents.push_back(width);
                tokens.push_back({TokenType::Indent, "", line});
            } else {
                while (width < indents.back()) {
                    indents.pop_back();
                    tokens.push_back({TokenType::Dedent, "", line});
                }
                if (width != indents.back()) throw ScriptFault("inconsistent indentation", line);
            }
            i = j;
            at_line_start = false;
        }
        const char c = source[i];
        if (c == '\n') {
            if (depth == 0) {
                tokens.push_back({TokenType::Newline, "", line});
                at_line_start = true;
            }
            ++line;
            ++i;
            continue;
        }
        if (c == ' ' || c == '\t' || c == '\r') {
            ++i;
            continue;
        }
        if (c == '\\' && i + 1 < n && source[i + 1] == '\n') {
            i += 2;
            ++line;
            continue;
        }
        if (c == '#') {
            while (i < n && source[i] != '\n') ++i;
            continue;
        }
        if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
            std::size_t j = i;
            while (j < n && (std::isalnum(static_cast<unsigned char>(source[j])) || source[j] == '_')) ++j;
            tokens.push_back({TokenType::Name, source.substr(i, j - i), line});
            i = j;
            continue;
        }
        if (std::isdigit(static_cast<unsigned char>(c)) || (c == '.' && i + 1 < n && std::isdigit(static_cast<unsigned char>(source[i + 1])))) {
            std::size_t j = i;
            bool is_float = false;
            while (j < n && (std::isdigit(static_cast<unsigned char>(source[j])) || source[j] == '_')) ++j;
            if (j < n && source[j] == '.') {
                is_float = true;
                ++j;
                while (j < n && std::isdigit(static_cast<unsigned char>(source[j]))) ++j;
            }
            if (j < n && (source[j] == 'e' || source[j] == 'E')) {
                std::size_t k = j + 1;
                if (k < n && (source[k] == '+' || source[k] == '-')) ++k;
                if (k < n && std::isdigit(static_cast<unsigned char>(source[k]))) {
                    is_float = true;
                    j = k;
                    while (j < n && std::isdigit(static_cast<unsigned char>(source[j]))) ++j;
                }
            }
            std::string text;
            for (std::size_t k = i; k < j; ++k)
                if (source[k] != '_') text += source[k];
            tokens.push_back({is_float ? TokenType::Float : TokenType::Int, text, line});
            i = j;
            continue;
        }
        if (c == '"' || c == '\'') {
            const char quote = c;
            std::string text;
            std::size_t j = i + 1;
            for (;;) {
                if (j >= n || source[j] == '\n') throw ScriptFault("unterminated string literal", line);
                if (source[j] == quote) break;
                if (source[j] == '\\' && j + 1 < n) {
                    const char e = source[j + 1];
                    switch (e) {
                        case 'n': text += '\n'; break;
                        case 't': text += '\t'; break;
                        case '\\': text += '\\'; break;
                        case '\'': text += '\''; break;
                        case '"': text += '"'; break;
                        default: text += '\\'; text += e;
                    }
                    j += 2;
                    continue;
                }
                text += source[j++];
            }
            tokens.push_back({TokenType::String, text, line});
            i = j + 1;
            continue;
        }
        bool matched = false;
        for (const char* op : kThreeCharOps) {
            if (source.compare(i, 3, op) == 0) {
                tokens.push_back({TokenType::Op, op, line});
                i += 3;
                matched = true;
                break;
            }
        }
        if (!matched) {
            for (const char* op : kTwoCharOps) {
                if (source.compare(i, 2, op) == 0) {
                    tokens.push_back({TokenType::Op, op, line});
                    i += 2;
                    matched = true;
                    break;
                }
            }
        }
        if (!matched && kSingleOps.find(c) != std::string::npos) {
            if (c == '(' || c == '[') ++depth;
            if ((c == ')' || c == ']') && depth > 0) --depth;
            tokens.push_back({TokenType::Op, std::string(1, c), line});
            ++i;
            matched = true;
        }
        if (!matched) throw ScriptFault(std::string("unexpected character '") + c + "'", line);
    }
    if (!tokens.empty() && tokens.back().type != TokenType::Newline && tokens.back().type != TokenType::Dedent)
        tokens.push_back({TokenType::Newline, "", line});
    while (indents.size() > 1) {
        indents.pop_back();
        tokens.push_back({TokenType::Dedent, "", line});
    }
    tokens.push_back({TokenType::End, "", line});
    return tokens;
}

}  // namespace plgen::script
