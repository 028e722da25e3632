#include "algas/rules.hpp"

#include <sstream>

namespace algas {

namespace {

void print_term_list(std::ostringstream& os, const std::vector<TermDecl>& terms) {
    os << "(";
    for (std::size_t i = 0; i < terms.size(); ++i) {
        if (i > 0) os << ", ";
        const auto& t = terms[i];
        os << "*" << t.label << "* (" << t.breakpoints[0] << ", " << t.breakpoints[1] << ", "
           << t.breakpoints[2] << ", " << t.breakpoints[3] << ")";
    }
    os << ")";
}

std::string weight_text(const NumberLit& w) {
    return w.text.empty() ? std::to_string(w.int_value) : w.text;
}

}  // namespace

std::string pretty_print(const RuleAst& ast) {
    std::ostringstream os;
    for (const auto& d : ast.declarations) {
        os << "DECLARE ";
        switch (d.kind) {
            case Declaration::Kind::Mode: os << "MODE " << d.name; break;
            case Declaration::Kind::Signal: os << "SIGNAL " << d.name; break;
            case Declaration::Kind::Capability: os << "CAPABILITY " << d.name; break;
            case Declaration::Kind::Sensor:
                os << "SENSOR " << d.name << " WITH (";
                for (std::size_t i = 0; i < d.qualifiers.size(); ++i) {
                    if (i > 0) os << ", ";
                    os << "*" << d.qualifiers[i] << "*";
                }
                os << ")";
                break;
            case Declaration::Kind::Input:
                os << "INPUT " << d.name << " WIDTH " << d.width << " WITH ";
                print_term_list(os, d.terms);
                break;
            case Declaration::Kind::Output:
                os << "OUTPUT " << d.name << " RANGE (" << d.range_lo << ", " << d.range_hi
                   << ") WITH ";
                print_term_list(os, d.terms);
                break;
        }
        os << ".\n";
    }
    for (const auto& r : ast.fls_rules) {
        os << "RULE ";
        if (!r.tags.empty()) {
            os << "TAGS (";
            for (std::size_t i = 0; i < r.tags.size(); ++i) {
                if (i > 0) os << ", ";
                os << r.tags[i];
            }
            os << ") ";
        }
        for (std::size_t i = 0; i < r.antecedents.size(); ++i) {
            os << (i == 0 ? "IF" : " AND") << " (" << r.antecedents[i].first << " is *"
               << r.antecedents[i].second << "*)";
        }
        os << " THEN (" << r.out_signal << " is *" << r.out_term << "*)";
        if (r.has_weight) os << " WEIGHT " << weight_text(r.weight);
        os << ".\n";
    }
    for (const auto& r : ast.flight_rules) {
        for (std::size_t i = 0; i < r.antecedents.size(); ++i) {
            os << (i == 0 ? "IF" : " AND") << " (";
            if (const auto* mp = std::get_if<ModePredicate>(&r.antecedents[i])) {
                if (mp->negated) os << "NOT ";
                os << mp->mode;
            } else {
                const auto& fp = std::get<FuzzyPredicate>(r.antecedents[i]);
                os << fp.signal << " is *" << fp.qualifier << "*";
            }
            os << ")";
        }
        os << " THEN (";
        for (std::size_t i = 0; i < r.actions.size(); ++i) {
            if (i > 0) os << ", ";
            const auto& a = r.actions[i];
            switch (a.kind) {
                case ActionKind::Fuzzy: os << "*" << a.verb << "* " << a.target; break;
                case ActionKind::Signal: os << "signal " << a.target; break;
                case ActionKind::Enable: os << "enable " << a.target; break;
                case ActionKind::StopMode: os << "Stop " << a.target; break;
                case ActionKind::EnterMode: os << "Enter " << a.target; break;
            }
        }
        os << ").\n";
    }
    return os.str();
}

}  // namespace algas
