#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <variant>
#include <vector>

#include "algas/fls.hpp"

namespace algas {

struct SourcePos {
    int line = 1;
    int col = 1;
};

enum class Severity : std::uint8_t { Error, Warning };

struct Diagnostic {
    Severity severity = Severity::Error;
    SourcePos pos;
    std::string message;
};

// "file:line:col: severity: message"
std::string format_diagnostic(const std::string& file, const Diagnostic& d);

bool has_errors(const std::vector<Diagnostic>& diagnostics);

// ---------------------------------------------------------------------------
// Tokens

enum class TokenKind : std::uint8_t {
    KwIf, KwAnd, KwThen, KwNot,
    KwDeclare, KwMode, KwSignal, KwCapability, KwSensor, KwInput, KwOutput,
    KwWidth, KwRange, KwWith, KwRule, KwTags, KwWeight,
    KwIs,         // lowercase 'is'
    KwSignalAct,  // lowercase 'signal' (action verb)
    KwEnableAct,  // lowercase 'enable'
    KwStopAct,    // 'Stop'
    KwEnterAct,   // 'Enter'
    Ident, Qualifier, Number,
    LParen, RParen, Comma, Period,
    EndOfFile,
};

const char* token_kind_name(TokenKind kind);

struct Token {
    TokenKind kind = TokenKind::EndOfFile;
    std::string text;  // identifier name, qualifier inner text, or number literal
    SourcePos pos;
};

struct TokenizeResult {
    std::vector<Token> tokens;  // always ends with EndOfFile
    std::vector<Diagnostic> diagnostics;
};

TokenizeResult tokenize(std::string_view source);

// ---------------------------------------------------------------------------
// AST

struct NumberLit {
    bool is_integer = true;
    std::int64_t int_value = 0;
    double value = 0.0;
    std::string text;  // literal as written; pretty-print emits it verbatim
    friend bool operator==(const NumberLit&, const NumberLit&) = default;
};

struct ModePredicate {
    std::string mode;
    bool negated = false;
    friend bool operator==(const ModePredicate&, const ModePredicate&) = default;
};

struct FuzzyPredicate {
    std::string signal;
    std::string qualifier;
    friend bool operator==(const FuzzyPredicate&, const FuzzyPredicate&) = default;
};

using Atom = std::variant<ModePredicate, FuzzyPredicate>;

enum class ActionKind : std::uint8_t { Fuzzy, Signal, Enable, StopMode, EnterMode };

struct Action {
    ActionKind kind = ActionKind::Signal;
    std::string verb;  // fuzzy verb text, e.g. "further-reduce"
    std::string target;
    friend bool operator==(const Action&, const Action&) = default;
};

struct FlightRule {
    std::vector<Atom> antecedents;
    std::vector<Action> actions;
    SourcePos pos;
    friend bool operator==(const FlightRule& a, const FlightRule& b) {
        return a.antecedents == b.antecedents && a.actions == b.actions;
    }
};

struct TermDecl {
    std::string label;
    std::array<std::int32_t, 4> breakpoints{};
    friend bool operator==(const TermDecl&, const TermDecl&) = default;
};

struct Declaration {
    enum class Kind : std::uint8_t { Mode, Signal, Capability, Sensor, Input, Output };
    Kind kind = Kind::Mode;
    std::string name;
    std::vector<std::string> qualifiers;  // Sensor
    int width = 0;                        // Input
    std::int32_t range_lo = 0;            // Output
    std::int32_t range_hi = 0;
    std::vector<TermDecl> terms;  // Input / Output
    SourcePos pos;
    friend bool operator==(const Declaration& a, const Declaration& b) {
        return a.kind == b.kind && a.name == b.name && a.qualifiers == b.qualifiers &&
               a.width == b.width && a.range_lo == b.range_lo && a.range_hi == b.range_hi &&
               a.terms == b.terms;
    }
};

struct FlsRuleStmt {
    std::vector<std::string> tags;
    // (input signal, term label) per antecedent, in source order
    std::vector<std::pair<std::string, std::string>> antecedents;
    std::string out_signal;
    std::string out_term;
    NumberLit weight{true, 1, 1.0, "1"};
    bool has_weight = false;
    SourcePos pos;
    friend bool operator==(const FlsRuleStmt& a, const FlsRuleStmt& b) {
        return a.tags == b.tags && a.antecedents == b.antecedents &&
               a.out_signal == b.out_signal && a.out_term == b.out_term &&
               a.weight == b.weight && a.has_weight == b.has_weight;
    }
};

struct RuleAst {
    std::vector<Declaration> declarations;
    std::vector<FlsRuleStmt> fls_rules;
    std::vector<FlightRule> flight_rules;
    friend bool operator==(const RuleAst&, const RuleAst&) = default;
};

struct ParseResult {
    RuleAst ast;
    std::vector<Diagnostic> diagnostics;
};

ParseResult parse(const std::vector<Token>& tokens);

std::string pretty_print(const RuleAst& ast);

// ---------------------------------------------------------------------------
// Compiled table

struct SymbolTable {
    std::vector<std::string> modes;
    std::vector<std::string> signals;
    std::vector<std::string> capabilities;
    // sensor name -> allowed qualifiers
    std::vector<std::pair<std::string, std::vector<std::string>>> sensors;

    int mode_id(std::string_view name) const;
    int signal_id(std::string_view name) const;
    int capability_id(std::string_view name) const;
    int sensor_id(std::string_view name) const;
};

struct CompiledAction {
    enum class Op : std::uint8_t { HalveGates, RaiseSignal, EnableCapability, StopMode, EnterMode };
    Op op = Op::RaiseSignal;
    int arg = 0;  // tag index for HalveGates, symbol id otherwise
};

struct CompiledRow {
    std::uint32_t mode_require = 0;
    std::uint32_t mode_forbid = 0;
    std::vector<int> predicates;  // indices into RuleTable::predicates
    std::vector<CompiledAction> actions;
    SourcePos pos;
};

struct RuleTable {
    SymbolTable symbols;
    // Distinct (sensor, qualifier) pairs in order of first use.
    std::vector<std::pair<std::string, std::string>> predicates;
    std::vector<CompiledRow> rows;
    std::vector<std::string> tags;           // FLS gate-adjust targets
    std::vector<std::vector<int>> tag_rules;  // tag index -> FLS rule indices

    int predicate_index(std::string_view signal, std::string_view qualifier) const;
    int tag_index(std::string_view name) const;
};

struct CompiledRules {
    RuleTable table;
    FlsRuleSet fls;
};

struct CompileResult {
    std::optional<CompiledRules> compiled;  // set only when diagnostics carry no error
    std::vector<Diagnostic> diagnostics;
};

SymbolTable build_symbols(const RuleAst& ast, std::vector<Diagnostic>& diagnostics);
CompileResult compile(const RuleAst& ast, const SymbolTable& symbols);

// tokenize + parse + compile; never throws, all failures are diagnostics.
CompileResult load_rules(std::string_view source);

// ---------------------------------------------------------------------------
// Per-tick evaluation

inline constexpr Degree kDefaultPredicateThreshold = kDegreeOne / 2;

struct Directives {
    GateVector gates;
    std::uint32_t signals = 0;  // bit per signal id
    std::uint32_t stops = 0;    // bit per mode id
    int enter_mode = -1;        // at most one; earliest rule wins
    bool enter_conflict = false;
    std::uint32_t enables = 0;  // bit per capability id
    friend bool operator==(const Directives&, const Directives&) = default;
};

// degrees is indexed by predicate id; missing entries read as 0.
Directives evaluate(const CompiledRules& rules, std::uint32_t modes,
                    const std::vector<Degree>& degrees,
                    Degree threshold = kDefaultPredicateThreshold);

}  // namespace algas
