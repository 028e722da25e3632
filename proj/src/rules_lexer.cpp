#include "algas/rules.hpp"

#include <cctype>
#include <unordered_map>

namespace algas {

namespace {

bool is_ident_start(char ch) {
    return std::isalpha(static_cast<unsigned char>(ch)) != 0;
}

bool is_ident_char(char ch) {
    return std::isalnum(static_cast<unsigned char>(ch)) != 0;
}

bool is_digit(char ch) {
    return std::isdigit(static_cast<unsigned char>(ch)) != 0;
}

const std::unordered_map<std::string_view, TokenKind>& keyword_map() {
    static const std::unordered_map<std::string_view, TokenKind> map = {
        {"IF", TokenKind::KwIf},
        {"AND", TokenKind::KwAnd},
        {"THEN", TokenKind::KwThen},
        {"NOT", TokenKind::KwNot},
        {"Not", TokenKind::KwNot},  // accepted: the published rule typography
        {"DECLARE", TokenKind::KwDeclare},
        {"MODE", TokenKind::KwMode},
        {"SIGNAL", TokenKind::KwSignal},
        {"CAPABILITY", TokenKind::KwCapability},
        {"SENSOR", TokenKind::KwSensor},
        {"INPUT", TokenKind::KwInput},
        {"OUTPUT", TokenKind::KwOutput},
        {"WIDTH", TokenKind::KwWidth},
        {"RANGE", TokenKind::KwRange},
        {"WITH", TokenKind::KwWith},
        {"RULE", TokenKind::KwRule},
        {"TAGS", TokenKind::KwTags},
        {"WEIGHT", TokenKind::KwWeight},
        {"is", TokenKind::KwIs},
        {"signal", TokenKind::KwSignalAct},
        {"enable", TokenKind::KwEnableAct},
        {"Stop", TokenKind::KwStopAct},
        {"Enter", TokenKind::KwEnterAct},
    };
    return map;
}

}  // namespace

const char* token_kind_name(TokenKind kind) {
    switch (kind) {
        case TokenKind::KwIf: return "IF";
        case TokenKind::KwAnd: return "AND";
        case TokenKind::KwThen: return "THEN";
        case TokenKind::KwNot: return "NOT";
        case TokenKind::KwDeclare: return "DECLARE";
        case TokenKind::KwMode: return "MODE";
        case TokenKind::KwSignal: return "SIGNAL";
        case TokenKind::KwCapability: return "CAPABILITY";
        case TokenKind::KwSensor: return "SENSOR";
        case TokenKind::KwInput: return "INPUT";
        case TokenKind::KwOutput: return "OUTPUT";
        case TokenKind::KwWidth: return "WIDTH";
        case TokenKind::KwRange: return "RANGE";
        case TokenKind::KwWith: return "WITH";
        case TokenKind::KwRule: return "RULE";
        case TokenKind::KwTags: return "TAGS";
        case TokenKind::KwWeight: return "WEIGHT";
        case TokenKind::KwIs: return "'is'";
        case TokenKind::KwSignalAct: return "'signal'";
        case TokenKind::KwEnableAct: return "'enable'";
        case TokenKind::KwStopAct: return "'Stop'";
        case TokenKind::KwEnterAct: return "'Enter'";
        case TokenKind::Ident: return "identifier";
        case TokenKind::Qualifier: return "qualifier";
        case TokenKind::Number: return "number";
        case TokenKind::LParen: return "'('";
        case TokenKind::RParen: return "')'";
        case TokenKind::Comma: return "','";
        case TokenKind::Period: return "'.'";
        case TokenKind::EndOfFile: return "end of file";
    }
    return "?";
}

std::string format_diagnostic(const std::string& file, const Diagnostic& d) {
    return file + ":" + std::to_string(d.pos.line) + ":" + std::to_string(d.pos.col) + ": " +
           (d.severity == Severity::Error ? "error: " : "warning: ") + d.message;
}

bool has_errors(const std::vector<Diagnostic>& diagnostics) {
    for (const auto& d : diagnostics) {
        if (d.severity == Severity::Error) return true;
    }
    return false;
}

TokenizeResult tokenize(std::string_view source) {
    TokenizeResult result;
    SourcePos pos;
    std::size_t i = 0;

    auto advance = [&](char ch) {
        if (ch == '\n') {
            ++pos.line;
            pos.col = 1;
        } else {
            ++pos.col;
        }
    };
    auto error = [&](SourcePos at, std::string message) {
        result.diagnostics.push_back({Severity::Error, at, std::move(message)});
    };

    while (i < source.size()) {
        const char ch = source[i];
        const SourcePos start = pos;
        if (ch == ' ' || ch == '\t' || ch == '\r' || ch == '\n') {
            advance(ch);
            ++i;
            continue;
        }
        if (ch == '#') {  // comment to end of line
            while (i < source.size() && source[i] != '\n') {
                advance(source[i]);
                ++i;
            }
            continue;
        }
        if (ch == '(') { result.tokens.push_back({TokenKind::LParen, "(", start}); advance(ch); ++i; continue; }
        if (ch == ')') { result.tokens.push_back({TokenKind::RParen, ")", start}); advance(ch); ++i; continue; }
        if (ch == ',') { result.tokens.push_back({TokenKind::Comma, ",", start}); advance(ch); ++i; continue; }
        if (ch == '.') { result.tokens.push_back({TokenKind::Period, ".", start}); advance(ch); ++i; continue; }
        if (ch == '*') {
            advance(ch);
            ++i;
            std::string inner;
            bool closed = false;
            bool clean = true;
            while (i < source.size()) {
                const char q = source[i];
                if (q == '*') {
                    advance(q);
                    ++i;
                    closed = true;
                    break;
                }
                if (q == '\n') break;  // qualifiers never span lines
                if (!(std::isalnum(static_cast<unsigned char>(q)) || q == ' ' || q == '-')) {
                    clean = false;
                }
                inner.push_back(q);
                advance(q);
                ++i;
            }
            if (!closed) {
                error(start, "unterminated qualifier (missing closing '*')");
            } else if (inner.empty()) {
                error(start, "empty qualifier");
            } else if (!clean) {
                error(start, "qualifier may contain only letters, digits, spaces, and hyphens");
            } else {
                result.tokens.push_back({TokenKind::Qualifier, inner, start});
            }
            continue;
        }
        if (is_digit(ch) || (ch == '-' && i + 1 < source.size() && is_digit(source[i + 1]))) {
            std::string text;
            if (ch == '-') {
                text.push_back('-');
                advance(ch);
                ++i;
            }
            bool seen_dot = false;
            bool malformed = false;
            while (i < source.size()) {
                const char n = source[i];
                if (is_digit(n)) {
                    text.push_back(n);
                } else if (n == '.' && !seen_dot && i + 1 < source.size() && is_digit(source[i + 1])) {
                    // '.' is also the statement terminator; it only joins a
                    // number when a digit follows.
                    seen_dot = true;
                    text.push_back(n);
                } else if (is_ident_start(n)) {
                    malformed = true;
                    text.push_back(n);
                } else {
                    break;
                }
                advance(n);
                ++i;
            }
            if (malformed) {
                error(start, "malformed number '" + text + "'");
            } else {
                result.tokens.push_back({TokenKind::Number, text, start});
            }
            continue;
        }
        if (is_ident_start(ch)) {
            std::string text(1, ch);
            advance(ch);
            ++i;
            while (i < source.size()) {
                const char n = source[i];
                if (is_ident_char(n)) {
                    text.push_back(n);
                } else if (n == '-' && i + 1 < source.size() && is_ident_char(source[i + 1])) {
                    text.push_back(n);
                } else {
                    break;
                }
                advance(n);
                ++i;
            }
            auto it = keyword_map().find(text);
            if (it != keyword_map().end()) {
                result.tokens.push_back({it->second, text, start});
            } else {
                result.tokens.push_back({TokenKind::Ident, text, start});
            }
            continue;
        }
        error(start, std::string("illegal character '") + ch + "'");
        advance(ch);
        ++i;
    }
    result.tokens.push_back({TokenKind::EndOfFile, "", pos});
    return result;
}

}  // namespace algas
