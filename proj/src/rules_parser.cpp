#include "algas/rules.hpp"

#include <charconv>

namespace algas {

namespace {

class Parser {
  public:
    explicit Parser(const std::vector<Token>& tokens) : tokens_(tokens) {}

    ParseResult run() {
        while (!at(TokenKind::EndOfFile)) {
            const std::size_t before = i_;
            statement();
            if (i_ == before) skip_token();  // never stall
        }
        return {std::move(ast_), std::move(diagnostics_)};
    }

  private:
    const std::vector<Token>& tokens_;
    std::size_t i_ = 0;
    RuleAst ast_;
    std::vector<Diagnostic> diagnostics_;

    const Token& peek() const { return tokens_[i_]; }
    bool at(TokenKind kind) const { return peek().kind == kind; }
    const Token& take() { return tokens_[i_++]; }
    void skip_token() {
        if (!at(TokenKind::EndOfFile)) ++i_;
    }

    void error_here(std::string message) {
        diagnostics_.push_back({Severity::Error, peek().pos, std::move(message)});
    }

    // Skip past the next '.' (statement resynchronization).
    void resync() {
        while (!at(TokenKind::EndOfFile)) {
            if (take().kind == TokenKind::Period) return;
        }
    }

    bool expect(TokenKind kind) {
        if (at(kind)) {
            take();
            return true;
        }
        error_here(std::string("expected ") + token_kind_name(kind) + ", got " +
                   token_kind_name(peek().kind) +
                   (peek().text.empty() ? "" : " '" + peek().text + "'"));
        return false;
    }

    std::optional<std::string> expect_ident() {
        if (at(TokenKind::Ident)) return take().text;
        error_here(std::string("expected identifier, got ") + token_kind_name(peek().kind) +
                   (peek().text.empty() ? "" : " '" + peek().text + "'"));
        return std::nullopt;
    }

    std::optional<std::string> expect_qualifier() {
        if (at(TokenKind::Qualifier)) return take().text;
        error_here(std::string("expected qualifier (*...*), got ") +
                   token_kind_name(peek().kind));
        return std::nullopt;
    }

    std::optional<NumberLit> expect_number(bool integer_required) {
        if (!at(TokenKind::Number)) {
            error_here(std::string("expected number, got ") + token_kind_name(peek().kind));
            return std::nullopt;
        }
        const Token tok = take();
        NumberLit lit;
        lit.text = tok.text;
        lit.is_integer = tok.text.find('.') == std::string::npos;
        if (integer_required && !lit.is_integer) {
            diagnostics_.push_back({Severity::Error, tok.pos,
                                    "expected integer, got '" + tok.text + "'"});
            return std::nullopt;
        }
        {
            auto [p, ec] = std::from_chars(tok.text.data(), tok.text.data() + tok.text.size(),
                                           lit.value);
            if (ec != std::errc{} || p != tok.text.data() + tok.text.size()) {
                diagnostics_.push_back({Severity::Error, tok.pos,
                                        "number out of range: '" + tok.text + "'"});
                return std::nullopt;
            }
        }
        if (lit.is_integer) {
            auto [p, ec] = std::from_chars(tok.text.data(), tok.text.data() + tok.text.size(),
                                           lit.int_value);
            if (ec != std::errc{} || p != tok.text.data() + tok.text.size()) {
                diagnostics_.push_back({Severity::Error, tok.pos,
                                        "integer out of range: '" + tok.text + "'"});
                return std::nullopt;
            }
        }
        return lit;
    }

    void statement() {
        switch (peek().kind) {
            case TokenKind::KwDeclare: declaration(); return;
            case TokenKind::KwRule: fls_rule(); return;
            case TokenKind::KwIf: flight_rule(); return;
            default:
                error_here(std::string("expected DECLARE, RULE, or IF, got ") +
                           token_kind_name(peek().kind) +
                           (peek().text.empty() ? "" : " '" + peek().text + "'"));
                resync();
        }
    }

    bool term_list(std::vector<TermDecl>& out) {
        if (!expect(TokenKind::LParen)) return false;
        while (true) {
            TermDecl term;
            auto label = expect_qualifier();
            if (!label) return false;
            term.label = *label;
            if (!expect(TokenKind::LParen)) return false;
            for (int k = 0; k < 4; ++k) {
                if (k > 0 && !expect(TokenKind::Comma)) return false;
                auto n = expect_number(true);
                if (!n) return false;
                term.breakpoints[static_cast<std::size_t>(k)] =
                    static_cast<std::int32_t>(n->int_value);
            }
            if (!expect(TokenKind::RParen)) return false;
            out.push_back(std::move(term));
            if (at(TokenKind::Comma)) {
                take();
                continue;
            }
            break;
        }
        return expect(TokenKind::RParen);
    }

    void declaration() {
        Declaration decl;
        decl.pos = peek().pos;
        take();  // DECLARE
        bool ok = true;
        switch (peek().kind) {
            case TokenKind::KwMode:
            case TokenKind::KwSignal:
            case TokenKind::KwCapability: {
                const TokenKind kw = take().kind;
                decl.kind = kw == TokenKind::KwMode      ? Declaration::Kind::Mode
                            : kw == TokenKind::KwSignal ? Declaration::Kind::Signal
                                                        : Declaration::Kind::Capability;
                auto name = expect_ident();
                ok = name.has_value();
                if (name) decl.name = *name;
                break;
            }
            case TokenKind::KwSensor: {
                take();
                decl.kind = Declaration::Kind::Sensor;
                auto name = expect_ident();
                ok = name.has_value();
                if (name) decl.name = *name;
                ok = ok && expect(TokenKind::KwWith) && expect(TokenKind::LParen);
                while (ok) {
                    auto q = expect_qualifier();
                    ok = q.has_value();
                    if (q) decl.qualifiers.push_back(*q);
                    if (ok && at(TokenKind::Comma)) {
                        take();
                        continue;
                    }
                    break;
                }
                ok = ok && expect(TokenKind::RParen);
                break;
            }
            case TokenKind::KwInput: {
                take();
                decl.kind = Declaration::Kind::Input;
                auto name = expect_ident();
                ok = name.has_value();
                if (name) decl.name = *name;
                ok = ok && expect(TokenKind::KwWidth);
                if (ok) {
                    auto w = expect_number(true);
                    ok = w.has_value();
                    if (w) decl.width = static_cast<int>(w->int_value);
                }
                ok = ok && expect(TokenKind::KwWith) && term_list(decl.terms);
                break;
            }
            case TokenKind::KwOutput: {
                take();
                decl.kind = Declaration::Kind::Output;
                auto name = expect_ident();
                ok = name.has_value();
                if (name) decl.name = *name;
                ok = ok && expect(TokenKind::KwRange) && expect(TokenKind::LParen);
                if (ok) {
                    auto lo = expect_number(true);
                    ok = lo.has_value() && expect(TokenKind::Comma);
                    auto hi = ok ? expect_number(true) : std::nullopt;
                    ok = ok && hi.has_value() && expect(TokenKind::RParen);
                    if (lo) decl.range_lo = static_cast<std::int32_t>(lo->int_value);
                    if (hi) decl.range_hi = static_cast<std::int32_t>(hi->int_value);
                }
                ok = ok && expect(TokenKind::KwWith) && term_list(decl.terms);
                break;
            }
            default:
                error_here("expected MODE, SIGNAL, CAPABILITY, SENSOR, INPUT, or OUTPUT "
                           "after DECLARE");
                ok = false;
        }
        if (!ok) {
            resync();
            return;
        }
        if (!expect(TokenKind::Period)) {
            resync();
            return;
        }
        ast_.declarations.push_back(std::move(decl));
    }

    void fls_rule() {
        FlsRuleStmt rule;
        rule.pos = peek().pos;
        take();  // RULE
        bool ok = true;
        if (at(TokenKind::KwTags)) {
            take();
            ok = expect(TokenKind::LParen);
            while (ok) {
                auto tag = expect_ident();
                ok = tag.has_value();
                if (tag) rule.tags.push_back(*tag);
                if (ok && at(TokenKind::Comma)) {
                    take();
                    continue;
                }
                break;
            }
            ok = ok && expect(TokenKind::RParen);
        }
        ok = ok && expect(TokenKind::KwIf);
        while (ok) {
            ok = expect(TokenKind::LParen);
            auto sig = ok ? expect_ident() : std::nullopt;
            ok = ok && sig.has_value() && expect(TokenKind::KwIs);
            auto term = ok ? expect_qualifier() : std::nullopt;
            ok = ok && term.has_value() && expect(TokenKind::RParen);
            if (ok) rule.antecedents.emplace_back(*sig, *term);
            if (ok && at(TokenKind::KwAnd)) {
                take();
                if (at(TokenKind::KwIf)) take();  // "AND IF" normalized away
                continue;
            }
            break;
        }
        ok = ok && expect(TokenKind::KwThen) && expect(TokenKind::LParen);
        if (ok) {
            auto sig = expect_ident();
            ok = sig.has_value() && expect(TokenKind::KwIs);
            auto term = ok ? expect_qualifier() : std::nullopt;
            ok = ok && term.has_value() && expect(TokenKind::RParen);
            if (ok) {
                rule.out_signal = *sig;
                rule.out_term = *term;
            }
        }
        if (ok && at(TokenKind::KwWeight)) {
            take();
            auto w = expect_number(false);
            ok = w.has_value();
            if (w) {
                rule.weight = *w;
                rule.has_weight = true;
            }
        }
        if (!ok || !expect(TokenKind::Period)) {
            resync();
            return;
        }
        ast_.fls_rules.push_back(std::move(rule));
    }

    void flight_rule() {
        FlightRule rule;
        rule.pos = peek().pos;
        take();  // IF
        bool ok = true;
        while (ok) {
            ok = expect(TokenKind::LParen);
            if (!ok) break;
            bool negated = false;
            if (at(TokenKind::KwNot)) {
                take();
                negated = true;
            }
            auto name = expect_ident();
            ok = name.has_value();
            if (!ok) break;
            if (at(TokenKind::KwIs)) {
                take();
                if (negated) {
                    error_here("NOT applies to mode predicates only");
                    ok = false;
                    break;
                }
                auto q = expect_qualifier();
                ok = q.has_value() && expect(TokenKind::RParen);
                if (ok) rule.antecedents.push_back(FuzzyPredicate{*name, *q});
            } else {
                ok = expect(TokenKind::RParen);
                if (ok) rule.antecedents.push_back(ModePredicate{*name, negated});
            }
            if (ok && at(TokenKind::KwAnd)) {
                take();
                if (at(TokenKind::KwIf)) take();  // "AND IF"
                continue;
            }
            break;
        }
        ok = ok && expect(TokenKind::KwThen) && expect(TokenKind::LParen);
        while (ok) {
            if (at(TokenKind::RParen)) {
                error_here("empty action list");
                ok = false;
                break;
            }
            Action action;
            switch (peek().kind) {
                case TokenKind::Qualifier: {
                    action.kind = ActionKind::Fuzzy;
                    action.verb = take().text;
                    auto target = expect_ident();
                    ok = target.has_value();
                    if (target) action.target = *target;
                    break;
                }
                case TokenKind::KwSignalAct:
                case TokenKind::KwEnableAct:
                case TokenKind::KwStopAct:
                case TokenKind::KwEnterAct: {
                    const TokenKind kw = take().kind;
                    action.kind = kw == TokenKind::KwSignalAct   ? ActionKind::Signal
                                  : kw == TokenKind::KwEnableAct ? ActionKind::Enable
                                  : kw == TokenKind::KwStopAct   ? ActionKind::StopMode
                                                                 : ActionKind::EnterMode;
                    auto target = expect_ident();
                    ok = target.has_value();
                    if (target) action.target = *target;
                    break;
                }
                default:
                    error_here(std::string("expected action (fuzzy verb, 'signal', 'enable', "
                                           "'Stop', or 'Enter'), got ") +
                               token_kind_name(peek().kind) +
                               (peek().text.empty() ? "" : " '" + peek().text + "'"));
                    ok = false;
            }
            if (!ok) break;
            rule.actions.push_back(std::move(action));
            if (at(TokenKind::Comma)) {
                take();
                continue;
            }
            break;
        }
        ok = ok && expect(TokenKind::RParen);
        if (!ok || !expect(TokenKind::Period)) {
            resync();
            return;
        }
        ast_.flight_rules.push_back(std::move(rule));
    }
};

}  // namespace

ParseResult parse(const std::vector<Token>& tokens) {
    if (tokens.empty() || tokens.back().kind != TokenKind::EndOfFile) {
        return {{}, {{Severity::Error, {}, "token stream missing end-of-file marker"}}};
    }
    return Parser(tokens).run();
}

}  // namespace algas
