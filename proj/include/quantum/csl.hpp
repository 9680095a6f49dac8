#pragma once

// Time-bounded reachability properties over the generated PRISM model.

#include <string>
#include <vector>

#include "quantum/model.hpp"
#include "quantum/prism.hpp"

namespace quantum {

enum class CslCategory { ComponentFailure, AnyFailure, StateConfig, RawStateFormula };

inline const char* to_string(CslCategory c) {
    switch (c) {
        case CslCategory::ComponentFailure: return "component failure";
        case CslCategory::AnyFailure: return "any failure";
        case CslCategory::StateConfig: return "state configuration";
        case CslCategory::RawStateFormula: return "state formula";
    }
    return "?";
}

struct CslProperty {
    std::string name;
    CslCategory category = CslCategory::ComponentFailure;
    std::string text;
    std::string expanded;  // same property with labels/formulas inlined
    std::string source;    // model element the property was derived from
    std::string time_symbol = "T";
};

inline std::string until_template(const std::string& body, const std::string& time_symbol = "T") {
    return "P=? [ (true) U<=" + time_symbol + " (" + body + ") ]";
}

/// Failure boundary test without the enclosing parentheses.
inline std::string failure_condition(const StateEncoding& enc) {
    if (enc.synthetic_idle) return state_var(enc) + " >= 1";
    return state_var(enc) + " > " + std::to_string(enc.normstate_count - 1);
}

inline CslProperty component_failure(const QumComponent& component, const StateEncoding& enc) {
    CslProperty p;
    p.name = enc.module_id + "_failure";
    p.category = CslCategory::ComponentFailure;
    p.source = component.name;
    p.text = until_template(failure_condition(enc));
    p.expanded = p.text;
    return p;
}

inline CslProperty any_failure(const QumModel& model, const std::vector<StateEncoding>& encodings) {
    std::string body;
    if (encodings.size() == 1) {
        body = failure_condition(encodings.front());
    } else {
        for (std::size_t i = 0; i < encodings.size(); ++i) body += (i ? "|(" : "(") + failure_condition(encodings[i]) + ")";
    }
    CslProperty p;
    p.name = "any_failure";
    p.category = CslCategory::AnyFailure;
    p.source = model.model_name;
    p.text = until_template(body);
    p.expanded = p.text;
    return p;
}

/// The label-based property plus the bare state formula.
inline std::vector<CslProperty> state_config_property(const StateConfiguration& cfg, const std::vector<StateEncoding>& encodings) {
    std::string body = config_body(cfg, encodings);
    CslProperty p;
    p.name = cfg.name;
    p.category = CslCategory::StateConfig;
    p.source = cfg.name;
    p.text = until_template(cfg.name);
    p.expanded = until_template(body);

    CslProperty raw;
    raw.name = cfg.name + "_formula";
    raw.category = CslCategory::RawStateFormula;
    raw.source = cfg.name;
    raw.text = body;
    raw.expanded = body;
    return {p, raw};
}

inline std::vector<CslProperty> generate_properties(const QumModel& model, const std::vector<StateEncoding>& encodings) {
    std::vector<CslProperty> out;
    for (std::size_t i = 0; i < model.components.size(); ++i) out.push_back(component_failure(model.components[i], encodings[i]));
    if (!model.components.empty()) out.push_back(any_failure(model, encodings));
    for (const auto& cfg : model.state_configs)
        for (auto& p : state_config_property(cfg, encodings)) out.push_back(std::move(p));
    return out;
}

/// `.csl` text: a `//` comment before every property line.
inline std::string emit_csl(const std::vector<CslProperty>& props, bool expanded = false) {
    std::string out;
    for (const auto& p : props) {
        out += "// " + std::string(to_string(p.category)) + ": " + p.source + "\n";
        out += (expanded ? p.expanded : p.text) + "\n";
    }
    return out;
}

}  // namespace quantum
