#include "algas/rules.hpp"

#include <algorithm>
#include <cmath>
#include <set>

namespace algas {

namespace {

int find_name(const std::vector<std::string>& names, std::string_view name) {
    for (std::size_t i = 0; i < names.size(); ++i) {
        if (names[i] == name) return static_cast<int>(i);
    }
    return -1;
}

std::size_t edit_distance(std::string_view a, std::string_view b) {
    std::vector<std::size_t> row(b.size() + 1);
    for (std::size_t j = 0; j <= b.size(); ++j) row[j] = j;
    for (std::size_t i = 1; i <= a.size(); ++i) {
        std::size_t diag = row[0];
        row[0] = i;
        for (std::size_t j = 1; j <= b.size(); ++j) {
            const std::size_t up = row[j];
            row[j] = std::min({row[j] + 1, row[j - 1] + 1,
                               diag + (a[i - 1] == b[j - 1] ? 0 : 1)});
            diag = up;
        }
    }
    return row[b.size()];
}

std::string with_suggestions(std::string message, std::string_view name,
                             const std::vector<std::string>& candidates) {
    std::vector<std::string> close;
    for (const auto& c : candidates) {
        if (edit_distance(name, c) <= 2) close.push_back(c);
    }
    std::sort(close.begin(), close.end());
    if (!close.empty()) {
        message += "; did you mean ";
        for (std::size_t i = 0; i < close.size() && i < 3; ++i) {
            if (i > 0) message += " or ";
            message += "'" + close[i] + "'";
        }
        message += "?";
    }
    return message;
}

constexpr int kMaxBitSymbols = 32;

struct Compiler {
    const RuleAst& ast;
    const SymbolTable& symbols;
    std::vector<Diagnostic> diagnostics;
    CompiledRules out;

    // declaration bookkeeping for FLS channels
    const Declaration* input11 = nullptr;
    const Declaration* input10 = nullptr;
    const Declaration* output = nullptr;

    void error(SourcePos pos, std::string message) {
        diagnostics.push_back({Severity::Error, pos, std::move(message)});
    }
    void warn(SourcePos pos, std::string message) {
        diagnostics.push_back({Severity::Warning, pos, std::move(message)});
    }

    TermSet make_term_set(const Declaration& decl, std::int32_t lo, std::int32_t hi) {
        TermSet set;
        set.signal_name = decl.name;
        set.lo = lo;
        set.hi = hi;
        for (const auto& t : decl.terms) {
            set.terms.push_back(Term{t.label, Trapezoid{t.breakpoints[0], t.breakpoints[1],
                                                        t.breakpoints[2], t.breakpoints[3]}});
        }
        for (const auto& msg : set.validate()) error(decl.pos, msg);
        return set;
    }

    void collect_fls_channels() {
        for (const auto& decl : ast.declarations) {
            if (decl.kind == Declaration::Kind::Input) {
                if (decl.width == kRadarWidth) {
                    if (input11) error(decl.pos, "duplicate 11-bit INPUT declaration");
                    input11 = &decl;
                } else if (decl.width == kLidarWidth) {
                    if (input10) error(decl.pos, "duplicate 10-bit INPUT declaration");
                    input10 = &decl;
                } else {
                    error(decl.pos, "INPUT width must be 10 or 11, got " +
                                        std::to_string(decl.width));
                }
            } else if (decl.kind == Declaration::Kind::Output) {
                if (output) error(decl.pos, "duplicate OUTPUT declaration");
                output = &decl;
                if (decl.range_lo < -128 || decl.range_hi > 127 || decl.range_lo >= decl.range_hi) {
                    error(decl.pos, "OUTPUT range must lie within [-128, 127]");
                }
            }
        }
        if (!ast.fls_rules.empty()) {
            if (!input11 || !input10) {
                error({}, "fuzzy rulebase requires one 11-bit and one 10-bit INPUT declaration");
            }
            if (!output) error({}, "fuzzy rulebase requires an OUTPUT declaration");
        }
        if (has_errors(diagnostics)) return;
        if (input11) {
            out.fls.radar_terms = make_term_set(*input11, 0, full_scale(kRadarWidth));
        }
        if (input10) {
            out.fls.lidar_terms = make_term_set(*input10, 0, full_scale(kLidarWidth));
        }
        if (output) {
            out.fls.output_terms = make_term_set(*output, output->range_lo, output->range_hi);
        }
    }

    void compile_fls_rules() {
        if (!input11 || !input10 || !output) return;
        std::set<std::pair<int, int>> seen;
        for (const auto& stmt : ast.fls_rules) {
            FlsRule rule;
            int radar_term = -1;
            int lidar_term = -1;
            if (stmt.antecedents.size() != 2) {
                error(stmt.pos, "fuzzy rule must test both inputs exactly once");
                continue;
            }
            bool ok = true;
            for (const auto& [sig, term] : stmt.antecedents) {
                if (sig == input11->name) {
                    if (radar_term >= 0) {
                        error(stmt.pos, "input '" + sig + "' tested twice");
                        ok = false;
                        break;
                    }
                    radar_term = out.fls.radar_terms.index_of(term);
                    if (radar_term < 0) {
                        error(stmt.pos, with_suggestions("unknown term '*" + term + "*' for '" +
                                                             sig + "'",
                                                         term, term_labels(out.fls.radar_terms)));
                        ok = false;
                    }
                } else if (sig == input10->name) {
                    if (lidar_term >= 0) {
                        error(stmt.pos, "input '" + sig + "' tested twice");
                        ok = false;
                        break;
                    }
                    lidar_term = out.fls.lidar_terms.index_of(term);
                    if (lidar_term < 0) {
                        error(stmt.pos, with_suggestions("unknown term '*" + term + "*' for '" +
                                                             sig + "'",
                                                         term, term_labels(out.fls.lidar_terms)));
                        ok = false;
                    }
                } else {
                    error(stmt.pos,
                          with_suggestions("unresolved input '" + sig + "'", sig,
                                           {input11->name, input10->name}));
                    ok = false;
                }
                if (!ok) break;
            }
            if (!ok || radar_term < 0 || lidar_term < 0) continue;
            if (stmt.out_signal != output->name) {
                error(stmt.pos, with_suggestions("unresolved output '" + stmt.out_signal + "'",
                                                 stmt.out_signal, {output->name}));
                continue;
            }
            const int out_term = out.fls.output_terms.index_of(stmt.out_term);
            if (out_term < 0) {
                error(stmt.pos, with_suggestions("unknown term '*" + stmt.out_term + "*' for '" +
                                                     stmt.out_signal + "'",
                                                 stmt.out_term, term_labels(out.fls.output_terms)));
                continue;
            }
            rule.radar_term = radar_term;
            rule.lidar_term = lidar_term;
            rule.out_term = out_term;
            if (stmt.has_weight) {
                if (stmt.weight.value < 0.0 || stmt.weight.value > 1.0) {
                    error(stmt.pos, "WEIGHT must lie in [0, 1]");
                    continue;
                }
                rule.base_weight = static_cast<Weight>(std::lround(stmt.weight.value * kWeightOne));
            }
            rule.tags = stmt.tags;
            const int rule_index = static_cast<int>(out.fls.rules.size());
            for (const auto& tag : stmt.tags) {
                int idx = out.table.tag_index(tag);
                if (idx < 0) {
                    idx = static_cast<int>(out.table.tags.size());
                    out.table.tags.push_back(tag);
                    out.table.tag_rules.emplace_back();
                }
                out.table.tag_rules[static_cast<std::size_t>(idx)].push_back(rule_index);
            }
            if (!seen.insert({radar_term, lidar_term}).second) {
                warn(stmt.pos, "duplicate fuzzy rule antecedent pair");
            }
            out.fls.rules.push_back(std::move(rule));
        }
    }

    static std::vector<std::string> term_labels(const TermSet& set) {
        std::vector<std::string> labels;
        for (const auto& t : set.terms) labels.push_back(t.label);
        return labels;
    }

    int intern_predicate(const FuzzyPredicate& pred, SourcePos pos) {
        const int sensor = symbols.sensor_id(pred.signal);
        if (sensor < 0) {
            std::vector<std::string> names;
            for (const auto& [n, q] : symbols.sensors) names.push_back(n);
            error(pos, with_suggestions("unresolved sensor '" + pred.signal + "'", pred.signal,
                                        names));
            return -1;
        }
        const auto& quals = symbols.sensors[static_cast<std::size_t>(sensor)].second;
        if (std::find(quals.begin(), quals.end(), pred.qualifier) == quals.end()) {
            error(pos, with_suggestions("qualifier '*" + pred.qualifier +
                                            "*' not declared for sensor '" + pred.signal + "'",
                                        pred.qualifier, quals));
            return -1;
        }
        const int existing = out.table.predicate_index(pred.signal, pred.qualifier);
        if (existing >= 0) return existing;
        out.table.predicates.emplace_back(pred.signal, pred.qualifier);
        return static_cast<int>(out.table.predicates.size() - 1);
    }

    void compile_flight_rules() {
        for (const auto& rule : ast.flight_rules) {
            CompiledRow row;
            row.pos = rule.pos;
            bool ok = true;
            for (const auto& atom : rule.antecedents) {
                if (const auto* mp = std::get_if<ModePredicate>(&atom)) {
                    const int id = symbols.mode_id(mp->mode);
                    if (id < 0) {
                        error(rule.pos, with_suggestions("unresolved mode '" + mp->mode + "'",
                                                         mp->mode, symbols.modes));
                        ok = false;
                        continue;
                    }
                    (mp->negated ? row.mode_forbid : row.mode_require) |= 1u << id;
                } else {
                    const auto& fp = std::get<FuzzyPredicate>(atom);
                    const int pred = intern_predicate(fp, rule.pos);
                    if (pred < 0) {
                        ok = false;
                        continue;
                    }
                    row.predicates.push_back(pred);
                }
            }
            for (const auto& action : rule.actions) {
                CompiledAction op;
                switch (action.kind) {
                    case ActionKind::Fuzzy: {
                        if (action.verb != "further-reduce") {
                            error(rule.pos, "unknown fuzzy verb '*" + action.verb + "*'");
                            ok = false;
                            continue;
                        }
                        const int tag = out.table.tag_index(action.target);
                        if (tag < 0) {
                            error(rule.pos,
                                  with_suggestions("unresolved rule tag '" + action.target + "'",
                                                   action.target, out.table.tags));
                            ok = false;
                            continue;
                        }
                        op.op = CompiledAction::Op::HalveGates;
                        op.arg = tag;
                        break;
                    }
                    case ActionKind::Signal: {
                        const int id = symbols.signal_id(action.target);
                        if (id < 0) {
                            error(rule.pos,
                                  with_suggestions("unresolved signal '" + action.target + "'",
                                                   action.target, symbols.signals));
                            ok = false;
                            continue;
                        }
                        op.op = CompiledAction::Op::RaiseSignal;
                        op.arg = id;
                        break;
                    }
                    case ActionKind::Enable: {
                        const int id = symbols.capability_id(action.target);
                        if (id < 0) {
                            error(rule.pos, with_suggestions("unresolved capability '" +
                                                                 action.target + "'",
                                                             action.target, symbols.capabilities));
                            ok = false;
                            continue;
                        }
                        op.op = CompiledAction::Op::EnableCapability;
                        op.arg = id;
                        break;
                    }
                    case ActionKind::StopMode:
                    case ActionKind::EnterMode: {
                        const int id = symbols.mode_id(action.target);
                        if (id < 0) {
                            error(rule.pos,
                                  with_suggestions("unresolved mode '" + action.target + "'",
                                                   action.target, symbols.modes));
                            ok = false;
                            continue;
                        }
                        op.op = action.kind == ActionKind::StopMode
                                    ? CompiledAction::Op::StopMode
                                    : CompiledAction::Op::EnterMode;
                        op.arg = id;
                        break;
                    }
                }
                row.actions.push_back(op);
            }
            if (!ok) continue;
            out.table.rows.push_back(std::move(row));
        }
        // duplicate detection on the source-level rules that compiled clean
        for (std::size_t i = 0; i + 1 < ast.flight_rules.size(); ++i) {
            for (std::size_t j = i + 1; j < ast.flight_rules.size(); ++j) {
                if (ast.flight_rules[i] == ast.flight_rules[j]) {
                    warn(ast.flight_rules[j].pos,
                         "duplicate rule (identical antecedents and actions)");
                }
            }
        }
    }
};

}  // namespace

int SymbolTable::mode_id(std::string_view name) const {
    return find_name(modes, name);
}
int SymbolTable::signal_id(std::string_view name) const {
    return find_name(signals, name);
}
int SymbolTable::capability_id(std::string_view name) const {
    return find_name(capabilities, name);
}
int SymbolTable::sensor_id(std::string_view name) const {
    for (std::size_t i = 0; i < sensors.size(); ++i) {
        if (sensors[i].first == name) return static_cast<int>(i);
    }
    return -1;
}

int RuleTable::predicate_index(std::string_view signal, std::string_view qualifier) const {
    for (std::size_t i = 0; i < predicates.size(); ++i) {
        if (predicates[i].first == signal && predicates[i].second == qualifier) {
            return static_cast<int>(i);
        }
    }
    return -1;
}

int RuleTable::tag_index(std::string_view name) const {
    return find_name(tags, name);
}

SymbolTable build_symbols(const RuleAst& ast, std::vector<Diagnostic>& diagnostics) {
    SymbolTable symbols;
    std::vector<std::string> all_names;
    for (const auto& decl : ast.declarations) {
        if (find_name(all_names, decl.name) >= 0) {
            diagnostics.push_back({Severity::Error, decl.pos,
                                   "redeclaration of '" + decl.name + "'"});
            continue;
        }
        all_names.push_back(decl.name);
        switch (decl.kind) {
            case Declaration::Kind::Mode: symbols.modes.push_back(decl.name); break;
            case Declaration::Kind::Signal: symbols.signals.push_back(decl.name); break;
            case Declaration::Kind::Capability: symbols.capabilities.push_back(decl.name); break;
            case Declaration::Kind::Sensor:
                symbols.sensors.emplace_back(decl.name, decl.qualifiers);
                break;
            case Declaration::Kind::Input:
            case Declaration::Kind::Output:
                break;  // handled by the FLS channel pass
        }
    }
    auto check_bits = [&](const std::vector<std::string>& names, const char* what) {
        if (names.size() > kMaxBitSymbols) {
            diagnostics.push_back({Severity::Error, {},
                                   std::string("too many ") + what + " declarations (max 32)"});
        }
    };
    check_bits(symbols.modes, "MODE");
    check_bits(symbols.signals, "SIGNAL");
    check_bits(symbols.capabilities, "CAPABILITY");
    return symbols;
}

CompileResult compile(const RuleAst& ast, const SymbolTable& symbols) {
    Compiler c{ast, symbols, {}, {}, nullptr, nullptr, nullptr};
    c.out.table.symbols = symbols;
    c.collect_fls_channels();
    if (!has_errors(c.diagnostics)) {
        c.compile_fls_rules();
        c.compile_flight_rules();
    }
    CompileResult result;
    result.diagnostics = std::move(c.diagnostics);
    if (!has_errors(result.diagnostics)) {
        if (c.input11 && c.input10 && c.output) {
            c.out.fls.finalize();
        }
        result.compiled = std::move(c.out);
    }
    return result;
}

CompileResult load_rules(std::string_view source) {
    auto lexed = tokenize(source);
    auto parsed = parse(lexed.tokens);
    std::vector<Diagnostic> diagnostics = std::move(lexed.diagnostics);
    diagnostics.insert(diagnostics.end(), parsed.diagnostics.begin(), parsed.diagnostics.end());
    SymbolTable symbols = build_symbols(parsed.ast, diagnostics);
    CompileResult compiled = compile(parsed.ast, symbols);
    diagnostics.insert(diagnostics.end(), compiled.diagnostics.begin(),
                       compiled.diagnostics.end());
    CompileResult result;
    result.diagnostics = std::move(diagnostics);
    if (!has_errors(result.diagnostics)) result.compiled = std::move(compiled.compiled);
    return result;
}

}  // namespace algas
