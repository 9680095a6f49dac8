#pragma once

// PRISM-language CTMC text from a composed global model.

#include <array>
#include <charconv>
#include <string>
#include <vector>

#include "quantum/composer.hpp"
#include "quantum/model.hpp"

namespace quantum {

/// Shortest decimal text that parses back to exactly `v`.
inline std::string format_rate(double v) {
    std::array<char, 64> buf{};
    auto [ptr, ec] = std::to_chars(buf.data(), buf.data() + buf.size(), v);
    (void)ec;
    return std::string(buf.data(), ptr);
}

inline std::string state_var(const StateEncoding& enc) { return enc.module_id + "_state"; }

inline std::string attribute_var(const StateEncoding& enc, const Attribute& a) { return enc.module_id + "_" + a.name; }

/// Compact in-state term used inside labels and formulas:
/// `(x_state=4)` or `(0<=x_state&x_state<=2)`.
inline std::string compact_in_state(const StateEncoding& enc, const EncodedState& s) {
    const std::string var = state_var(enc);
    if (s.span_hi > s.id) return "(" + std::to_string(s.id) + "<=" + var + "&" + var + "<=" + std::to_string(s.span_hi) + ")";
    return "(" + var + "=" + std::to_string(s.id) + ")";
}

/// Renders a bound guard/update expression with PRISM variable names.
inline std::string render_prism(const Expr& e, const QumModel& model, const std::vector<StateEncoding>& encodings) {
    return render(e, [&](const Expr& node) -> std::string {
        const auto c = static_cast<std::size_t>(node.component);
        const StateEncoding& enc = encodings.at(c);
        if (node.op == Expr::Op::Var) return attribute_var(enc, model.components[c].attributes.at(static_cast<std::size_t>(node.attribute)));
        EncodedState span;
        span.id = node.lo;
        span.span_hi = node.hi;
        return compact_in_state(enc, span);
    });
}

/// Body of a state configuration: member terms joined by `&` or `|`.
inline std::string config_body(const StateConfiguration& cfg, const std::vector<StateEncoding>& encodings) {
    std::string out;
    const char* join = cfg.op == ConfigOperator::And ? "&" : "|";
    for (std::size_t i = 0; i < cfg.members.size(); ++i) {
        const auto& m = cfg.members[i];
        const StateEncoding& enc = encodings.at(m.component);
        if (i) out += join;
        out += compact_in_state(enc, enc.at(m.state));
    }
    return out;
}

struct PrismModel {
    std::string header = "ctmc";
    std::vector<std::string> constants;
    std::vector<std::string> formulas;
    std::vector<std::string> modules;
    std::vector<std::string> labels;

    std::string text() const {
        std::string out = header + "\n";
        auto block = [&](const std::vector<std::string>& items, bool spaced) {
            if (items.empty()) return;
            out += "\n";
            for (std::size_t i = 0; i < items.size(); ++i) {
                if (spaced && i) out += "\n";
                out += items[i];
                if (items[i].empty() || items[i].back() != '\n') out += "\n";
            }
        };
        block(constants, false);
        block(formulas, false);
        block(modules, true);
        block(labels, false);
        return out;
    }
};

/// One module: the state variable, bounded attributes and one command per
/// flat transition in source order.
inline std::string emit_module(const ComposedMachine& machine, const StateEncoding& enc, const QumComponent& component,
                               const QumModel& model, const std::vector<StateEncoding>& encodings) {
    const std::string var = state_var(enc);
    std::string out = "module " + enc.module_id + "\n";
    out += "  " + var + " : [0.." + std::to_string(enc.total_count - 1) + "] init " + std::to_string(machine.initial) + ";\n";
    for (const auto& a : component.attributes)
        out += "  " + attribute_var(enc, a) + " : [" + std::to_string(a.lo) + ".." + std::to_string(a.hi) + "] init " + std::to_string(a.init) + ";\n";
    if (!machine.flat_transitions.empty()) out += "\n";
    for (const auto& t : machine.flat_transitions) {
        std::string guard = var + "=" + std::to_string(t.source);
        if (!is_trivially_true(t.guard)) guard += "&(" + render_prism(t.guard, model, encodings) + ")";
        std::string update = "(" + var + "'=" + std::to_string(t.target) + ")";
        for (const auto& u : t.updates) {
            const auto& a = component.attributes.at(static_cast<std::size_t>(u.attribute_index));
            update += "&(" + attribute_var(enc, a) + "'=" + render_prism(u.value, model, encodings) + ")";
        }
        std::string rate = t.rate ? format_rate(*t.rate) : "1";
        out += "  [" + t.action + "] " + guard + " -> " + rate + " : " + update + ";\n";
    }
    out += "endmodule\n";
    return out;
}

inline std::vector<std::string> emit_labels(const QumModel& model, const std::vector<StateEncoding>& encodings) {
    std::vector<std::string> out;
    for (const auto& cfg : model.state_configs) out.push_back("label \"" + cfg.name + "\" = " + config_body(cfg, encodings) + ";");
    return out;
}

/// Named formulas mirroring the labels, so properties may refer to a state
/// configuration by its bare name.
inline std::vector<std::string> emit_formulas(const QumModel& model, const std::vector<StateEncoding>& encodings) {
    std::vector<std::string> out;
    for (const auto& cfg : model.state_configs) out.push_back("formula " + cfg.name + " = " + config_body(cfg, encodings) + ";");
    return out;
}

inline PrismModel emit_model(const GlobalModel& g) {
    PrismModel p;
    p.constants.push_back("const double T;");
    p.formulas = emit_formulas(g.model, g.encodings);
    for (std::size_t c = 0; c < g.machines.size(); ++c)
        p.modules.push_back(emit_module(g.machines[c], g.encodings[c], g.model.components[c], g.model, g.encodings));
    p.labels = emit_labels(g.model, g.encodings);
    return p;
}

}  // namespace quantum
