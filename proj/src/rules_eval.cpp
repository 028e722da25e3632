#include "algas/rules.hpp"

namespace algas {

Directives evaluate(const CompiledRules& rules, std::uint32_t modes,
                    const std::vector<Degree>& degrees, Degree threshold) {
    Directives d;
    d.gates = rules.fls.all_enabled();
    for (const auto& row : rules.table.rows) {
        if ((modes & row.mode_require) != row.mode_require) continue;
        if ((modes & row.mode_forbid) != 0) continue;
        bool fired = true;
        for (const int pred : row.predicates) {
            const auto idx = static_cast<std::size_t>(pred);
            const Degree degree = idx < degrees.size() ? degrees[idx] : 0;
            if (degree < threshold) {
                fired = false;
                break;
            }
        }
        if (!fired) continue;
        for (const auto& action : row.actions) {
            switch (action.op) {
                case CompiledAction::Op::HalveGates:
                    for (const int r : rules.table.tag_rules[static_cast<std::size_t>(action.arg)]) {
                        auto& gate = d.gates[static_cast<std::size_t>(r)];
                        gate.weight = static_cast<Weight>(gate.weight >> 1);
                    }
                    break;
                case CompiledAction::Op::RaiseSignal:
                    d.signals |= 1u << action.arg;
                    break;
                case CompiledAction::Op::EnableCapability:
                    d.enables |= 1u << action.arg;
                    break;
                case CompiledAction::Op::StopMode:
                    d.stops |= 1u << action.arg;
                    break;
                case CompiledAction::Op::EnterMode:
                    if (d.enter_mode < 0) {
                        d.enter_mode = action.arg;
                    } else if (d.enter_mode != action.arg) {
                        d.enter_conflict = true;  // earliest rule in file order wins
                    }
                    break;
            }
        }
    }
    return d;
}

}  // namespace algas
