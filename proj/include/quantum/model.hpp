#pragma once

// Domain model for annotated architecture models: raw (as parsed) and
// validated forms, profile validation, rate resolution and the integer
// state encoding shared by code generation and analysis.

#include <algorithm>
#include <cctype>
#include <cstddef>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "quantum/error.hpp"
#include "quantum/expr.hpp"

namespace quantum {

enum class TransitionKind {
    Plain,
    Stochastic,
    AbstractStochastic,
    Failure,
    AbstractFailure,
    Repair,
    AbstractRepair,
    OperationCall,
    OperationTrigger,
};

inline const char* to_string(TransitionKind k) {
    switch (k) {
        case TransitionKind::Plain: return "plain";
        case TransitionKind::Stochastic: return "stochastic";
        case TransitionKind::AbstractStochastic: return "abstract_stochastic";
        case TransitionKind::Failure: return "failure";
        case TransitionKind::AbstractFailure: return "abstract_failure";
        case TransitionKind::Repair: return "repair";
        case TransitionKind::AbstractRepair: return "abstract_repair";
        case TransitionKind::OperationCall: return "call";
        case TransitionKind::OperationTrigger: return "trigger";
    }
    return "?";
}

inline std::optional<TransitionKind> transition_kind_from(const std::string& s) {
    static const std::map<std::string, TransitionKind> table = {
        {"plain", TransitionKind::Plain},
        {"stochastic", TransitionKind::Stochastic},
        {"abstract_stochastic", TransitionKind::AbstractStochastic},
        {"failure", TransitionKind::Failure},
        {"abstract_failure", TransitionKind::AbstractFailure},
        {"repair", TransitionKind::Repair},
        {"abstract_repair", TransitionKind::AbstractRepair},
        {"call", TransitionKind::OperationCall},
        {"trigger", TransitionKind::OperationTrigger},
    };
    auto it = table.find(s);
    if (it == table.end()) return std::nullopt;
    return it->second;
}

inline bool is_abstract(TransitionKind k) {
    return k == TransitionKind::AbstractStochastic || k == TransitionKind::AbstractFailure ||
           k == TransitionKind::AbstractRepair;
}

inline bool needs_concrete_rate(TransitionKind k) {
    return k == TransitionKind::Stochastic || k == TransitionKind::Failure || k == TransitionKind::Repair;
}

inline bool is_failure_entry(TransitionKind k) {
    return k == TransitionKind::Failure || k == TransitionKind::AbstractFailure;
}

inline bool is_repair(TransitionKind k) { return k == TransitionKind::Repair || k == TransitionKind::AbstractRepair; }

enum class ConfigOperator { And, Or };

inline const char* to_string(ConfigOperator op) { return op == ConfigOperator::And ? "AND" : "OR"; }

struct ConfigTag {
    std::string config;
    ConfigOperator op = ConfigOperator::Or;
    bool operator==(const ConfigTag&) const = default;
};

// ---------------------------------------------------------------------------
// Raw model: names as text, nothing resolved.

struct RawState {
    std::string name;
    std::vector<RawState> children;
    std::string initial;  // child name; empty = first child
    std::vector<std::string> entry_ops;
    std::vector<ConfigTag> config_tags;
};

struct RawTransition {
    std::string label;
    TransitionKind kind = TransitionKind::Plain;
    std::string source;  // dotted state path; "*" = whole normal region (failure entries)
    std::string target;  // dotted state path; empty = machine initial state
    std::optional<double> rate;
    std::optional<std::string> rate_name;
    std::string operation;
    std::string guard;
    std::string updates;
};

struct RawMachine {
    std::string name;
    bool failure = false;
    std::string initial;
    std::vector<RawState> states;
    std::vector<RawTransition> transitions;
};

struct RawAttribute {
    std::string name;
    int lo = 0, hi = 0, init = 0;
};

struct RateEntry {
    std::string name;
    double rate = 0.0;  // events per hour
    bool operator==(const RateEntry&) const = default;
};

struct RawComponent {
    std::string name;
    std::vector<RawMachine> machines;
    std::vector<RateEntry> rates;
    std::vector<RawAttribute> attributes;
    std::vector<std::string> operations;  // provided (callee side)
};

struct RawModel {
    std::string name;
    std::vector<RawComponent> components;
};

// ---------------------------------------------------------------------------
// Validated model.

struct State {
    std::string name;
    std::vector<State> children;
    std::size_t initial = 0;
    std::vector<std::string> entry_ops;
    std::vector<ConfigTag> config_tags;

    bool is_leaf() const { return children.empty(); }
    bool operator==(const State&) const = default;
};

/// Points into a component: machine -1 is the normal machine, k >= 0 the
/// k-th failure machine. An empty path denotes the machine as a whole.
struct StateRef {
    int machine = -1;
    std::vector<std::size_t> path;
    auto operator<=>(const StateRef&) const = default;
};

struct Transition {
    std::string label;
    TransitionKind kind = TransitionKind::Plain;
    StateRef source;
    StateRef target;
    std::optional<double> rate;
    std::optional<std::string> rate_name;
    std::string operation;
    Expr guard = Expr::boolean(true);
    std::vector<Update> updates;

    bool operator==(const Transition&) const = default;
};

struct StateMachine {
    std::string name;
    std::vector<State> states;
    std::size_t initial = 0;
    std::vector<Transition> transitions;
    bool operator==(const StateMachine&) const = default;
};

struct Attribute {
    std::string name;
    int lo = 0, hi = 0, init = 0;
    bool operator==(const Attribute&) const = default;
};

struct QumComponent {
    std::string name;
    std::optional<StateMachine> normal_machine;
    std::vector<StateMachine> failure_machines;
    std::vector<RateEntry> rates;
    std::vector<Attribute> attributes;
    std::vector<std::string> operations;

    const StateMachine& machine(int index) const { return index < 0 ? *normal_machine : failure_machines.at(index); }

    std::optional<double> rate_named(const std::string& n) const {
        for (const auto& r : rates)
            if (r.name == n) return r.rate;
        return std::nullopt;
    }

    /// Concrete rate of a transition after resolving abstract rate names.
    std::optional<double> effective_rate(const Transition& t) const {
        if (t.rate) return t.rate;
        if (t.rate_name) return rate_named(*t.rate_name);
        return std::nullopt;
    }

    bool operator==(const QumComponent&) const = default;
};

struct ConfigMember {
    std::size_t component = 0;
    StateRef state;
    bool operator==(const ConfigMember&) const = default;
};

struct StateConfiguration {
    std::string name;
    ConfigOperator op = ConfigOperator::Or;
    std::vector<ConfigMember> members;
    bool operator==(const StateConfiguration&) const = default;
};

struct OperationSignature {
    std::string name;
    std::size_t owner = 0;                 // providing (callee) component
    std::optional<std::size_t> caller;     // component issuing the call, if any
    bool operator==(const OperationSignature&) const = default;
};

struct QumModel {
    std::string model_name;
    std::vector<QumComponent> components;
    std::vector<StateConfiguration> state_configs;
    std::vector<OperationSignature> operations;

    std::optional<std::size_t> component_index(const std::string& n) const {
        for (std::size_t i = 0; i < components.size(); ++i)
            if (components[i].name == n) return i;
        return std::nullopt;
    }

    const StateConfiguration* config(const std::string& n) const {
        for (const auto& c : state_configs)
            if (c.name == n) return &c;
        return nullptr;
    }

    const OperationSignature* operation(const std::string& n) const {
        for (const auto& o : operations)
            if (o.name == n) return &o;
        return nullptr;
    }

    bool operator==(const QumModel&) const = default;
};

inline const State& state_at(const QumComponent& c, const StateRef& ref) {
    const auto& m = c.machine(ref.machine);
    const std::vector<State>* level = &m.states;
    const State* s = nullptr;
    for (std::size_t idx : ref.path) {
        s = &level->at(idx);
        level = &s->children;
    }
    if (!s) throw Error(ErrorKind::UnknownState, "machine reference has no state");
    return *s;
}

inline std::string state_path_text(const QumComponent& c, const StateRef& ref) {
    const auto& m = c.machine(ref.machine);
    std::string out = m.name;
    const std::vector<State>* level = &m.states;
    for (std::size_t idx : ref.path) {
        const State& s = level->at(idx);
        out += "." + s.name;
        level = &s.children;
    }
    return out;
}

// ---------------------------------------------------------------------------
// Validation.

struct Violation {
    ErrorKind kind;
    std::string subject;
    std::string message;

    std::string text() const {
        std::string out = std::string(to_string(kind)) + "(" + subject + ")";
        if (!message.empty()) out += ": " + message;
        return out;
    }
};

struct ValidationResult {
    std::optional<QumModel> model;
    std::vector<Violation> violations;
    bool ok() const { return model.has_value(); }
};

namespace detail {

inline bool is_identifier(const std::string& s) {
    if (s.empty() || !(std::isalpha(static_cast<unsigned char>(s[0])) || s[0] == '_')) return false;
    return std::all_of(s.begin(), s.end(), [](char c) { return std::isalnum(static_cast<unsigned char>(c)) || c == '_'; });
}

inline std::vector<std::string> split_path(const std::string& p) {
    std::vector<std::string> out;
    std::string cur;
    for (char c : p) {
        if (c == '.') {
            out.push_back(cur);
            cur.clear();
        } else {
            cur += c;
        }
    }
    out.push_back(cur);
    return out;
}

class Validator {
public:
    explicit Validator(const RawModel& raw) : raw_(raw) {}

    ValidationResult run() {
        QumModel model;
        model.model_name = raw_.name;

        std::set<std::string> comp_names;
        for (const auto& rc : raw_.components) {
            if (!comp_names.insert(rc.name).second) report(ErrorKind::DuplicateName, rc.name, "component name reused");
            if (!is_identifier(rc.name)) report(ErrorKind::DuplicateName, rc.name, "component name is not an identifier");
        }

        // Structure first (states, attributes, rates) so that cross-component
        // references in guards can be resolved afterwards.
        for (const auto& rc : raw_.components) model.components.push_back(structure(rc));

        // Operation signatures.
        std::map<std::string, std::size_t> provider;
        for (std::size_t ci = 0; ci < raw_.components.size(); ++ci) {
            std::set<std::string> own;
            for (const auto& op : raw_.components[ci].operations) {
                if (!own.insert(op).second)
                    report(ErrorKind::DuplicateName, raw_.components[ci].name + "." + op, "operation declared twice");
                else if (provider.count(op))
                    report(ErrorKind::DuplicateName, op, "operation provided by several components");
                else {
                    provider[op] = ci;
                    model.operations.push_back({op, ci, std::nullopt});
                }
            }
        }
        provider_ = provider;

        for (std::size_t ci = 0; ci < raw_.components.size(); ++ci) transitions(model, ci);
        configurations(model);

        ValidationResult result;
        result.violations = violations_;
        if (violations_.empty()) result.model = std::move(model);
        return result;
    }

private:
    void report(ErrorKind k, std::string subject, std::string message = {}) {
        violations_.push_back({k, std::move(subject), std::move(message)});
    }

    State state(const RawState& rs, const std::string& where) {
        State s;
        s.name = rs.name;
        s.entry_ops = rs.entry_ops;
        s.config_tags = rs.config_tags;
        std::set<std::string> names;
        for (const auto& child : rs.children) {
            if (!names.insert(child.name).second) report(ErrorKind::DuplicateName, where + "." + child.name, "sibling state name reused");
            s.children.push_back(state(child, where + "." + child.name));
        }
        if (!rs.children.empty()) {
            if (rs.initial.empty()) {
                s.initial = 0;
            } else {
                auto it = std::find_if(rs.children.begin(), rs.children.end(), [&](const RawState& c) { return c.name == rs.initial; });
                if (it == rs.children.end()) report(ErrorKind::DanglingStateRef, where + "." + rs.initial, "unknown initial sub-state");
                else s.initial = static_cast<std::size_t>(it - rs.children.begin());
            }
        }
        return s;
    }

    StateMachine machine(const RawMachine& rm, const std::string& comp) {
        StateMachine m;
        m.name = rm.name;
        std::string where = comp + "." + rm.name;
        std::set<std::string> names;
        for (const auto& rs : rm.states) {
            if (!names.insert(rs.name).second) report(ErrorKind::DuplicateName, where + "." + rs.name, "sibling state name reused");
            m.states.push_back(state(rs, where + "." + rs.name));
        }
        if (m.states.empty()) {
            report(ErrorKind::DanglingStateRef, where, "state machine has no states");
        } else if (!rm.initial.empty()) {
            auto it = std::find_if(rm.states.begin(), rm.states.end(), [&](const RawState& s) { return s.name == rm.initial; });
            if (it == rm.states.end()) report(ErrorKind::DanglingStateRef, where + "." + rm.initial, "unknown initial state");
            else m.initial = static_cast<std::size_t>(it - rm.states.begin());
        }
        return m;
    }

    QumComponent structure(const RawComponent& rc) {
        QumComponent c;
        c.name = rc.name;
        c.operations = rc.operations;
        std::set<std::string> machine_names;
        for (const auto& rm : rc.machines) {
            if (!machine_names.insert(rm.name).second) report(ErrorKind::DuplicateName, rc.name + "." + rm.name, "machine name reused");
            if (rm.failure) {
                c.failure_machines.push_back(machine(rm, rc.name));
            } else if (c.normal_machine) {
                report(ErrorKind::DuplicateName, rc.name + "." + rm.name, "more than one normal-behaviour machine");
            } else {
                c.normal_machine = machine(rm, rc.name);
            }
        }
        if (c.failure_machines.empty()) report(ErrorKind::EmptyFailureMachines, rc.name);

        std::set<std::string> rate_names;
        for (const auto& r : rc.rates) {
            if (!rate_names.insert(r.name).second) report(ErrorKind::DuplicateName, rc.name + "." + r.name, "rate name reused");
            if (!(r.rate > 0.0)) report(ErrorKind::InvalidTransition, rc.name + "." + r.name, "rates must be positive");
            c.rates.push_back(r);
        }
        std::set<std::string> attr_names;
        for (const auto& a : rc.attributes) {
            if (!attr_names.insert(a.name).second) report(ErrorKind::DuplicateName, rc.name + "." + a.name, "attribute name reused");
            if (!is_identifier(a.name)) report(ErrorKind::UnsupportedGuard, rc.name + "." + a.name, "attribute name is not an identifier");
            if (!(a.lo <= a.init && a.init <= a.hi))
                report(ErrorKind::AttributeOutOfRange, rc.name + "." + a.name, "initial value outside declared domain");
            c.attributes.push_back({a.name, a.lo, a.hi, a.init});
        }
        return c;
    }

    static std::optional<StateRef> resolve_path(const QumComponent& c, int machine_index, const std::string& text) {
        if (machine_index < 0 && !c.normal_machine) return std::nullopt;
        const StateMachine& m = c.machine(machine_index);
        StateRef ref{machine_index, {}};
        if (text.empty()) return ref;
        auto parts = split_path(text);
        const std::vector<State>* level = &m.states;
        for (const auto& part : parts) {
            auto it = std::find_if(level->begin(), level->end(), [&](const State& s) { return s.name == part; });
            if (it == level->end()) {
                // A bare name may also denote a unique state anywhere in the machine.
                if (parts.size() == 1) return find_unique(m, machine_index, part);
                return std::nullopt;
            }
            ref.path.push_back(static_cast<std::size_t>(it - level->begin()));
            level = &it->children;
        }
        return ref;
    }

    static std::optional<StateRef> find_unique(const StateMachine& m, int machine_index, const std::string& name) {
        std::vector<StateRef> hits;
        std::vector<std::size_t> path;
        auto walk = [&](auto&& self, const std::vector<State>& level) -> void {
            for (std::size_t i = 0; i < level.size(); ++i) {
                path.push_back(i);
                if (level[i].name == name) hits.push_back({machine_index, path});
                self(self, level[i].children);
                path.pop_back();
            }
        };
        walk(walk, m.states);
        if (hits.size() != 1) return std::nullopt;
        return hits.front();
    }

    /// Resolves `Comp.State.Sub` / `State` against every machine of a component.
    static std::optional<StateRef> resolve_any(const QumComponent& c, const std::vector<std::string>& path) {
        std::string joined;
        for (std::size_t i = 0; i < path.size(); ++i) joined += (i ? "." : "") + path[i];
        std::vector<StateRef> hits;
        auto try_machine = [&](int idx) {
            const StateMachine& m = c.machine(idx);
            // Optional leading machine name.
            if (path.size() > 1 && path.front() == m.name) {
                std::string rest;
                for (std::size_t i = 1; i < path.size(); ++i) rest += (i > 1 ? "." : "") + path[i];
                if (auto r = resolve_path(c, idx, rest)) hits.push_back(*r);
                return;
            }
            if (auto r = resolve_path(c, idx, joined)) hits.push_back(*r);
        };
        if (c.normal_machine) try_machine(-1);
        for (std::size_t k = 0; k < c.failure_machines.size(); ++k) try_machine(static_cast<int>(k));
        if (hits.size() != 1) return std::nullopt;
        return hits.front();
    }

    void bind_names(const QumModel& model, std::size_t owner, Expr& e, const std::string& where) {
        visit(e, [&](Expr& node) {
            if (node.op == Expr::Op::Var) {
                std::size_t ci = owner;
                if (!node.qualifier.empty()) {
                    auto idx = model.component_index(node.qualifier);
                    if (!idx) {
                        report(ErrorKind::DanglingStateRef, where, "unknown component '" + node.qualifier + "' in guard");
                        return;
                    }
                    ci = *idx;
                }
                const auto& attrs = model.components[ci].attributes;
                auto it = std::find_if(attrs.begin(), attrs.end(), [&](const Attribute& a) { return a.name == node.name; });
                if (it == attrs.end()) {
                    report(ErrorKind::UnsupportedGuard, where, "unknown attribute '" + node.name + "'");
                    return;
                }
                node.component = static_cast<int>(ci);
                node.attribute = static_cast<int>(it - attrs.begin());
            } else if (node.op == Expr::Op::At) {
                auto idx = model.component_index(node.qualifier);
                if (!idx) {
                    report(ErrorKind::DanglingStateRef, where, "unknown component '" + node.qualifier + "' in guard");
                    return;
                }
                if (!resolve_any(model.components[*idx], node.state_path)) {
                    report(ErrorKind::DanglingStateRef, where, "unknown state in at(" + node.qualifier + ", ...)");
                    return;
                }
                node.component = static_cast<int>(*idx);
            }
        });
    }

    void transitions(QumModel& model, std::size_t ci) {
        const RawComponent& rc = raw_.components[ci];
        QumComponent& c = model.components[ci];
        int failure_index = 0;
        for (const auto& rm : rc.machines) {
            int mi;
            if (rm.failure) {
                mi = failure_index++;
            } else {
                mi = -1;
            }
            if (!rm.failure && (!c.normal_machine || c.normal_machine->name != rm.name)) continue;
            StateMachine& m = mi < 0 ? *c.normal_machine : c.failure_machines[static_cast<std::size_t>(mi)];
            std::size_t auto_label = 0;
            for (const auto& rt : rm.transitions) {
                std::string where = rc.name + "." + rm.name + ":" + (rt.label.empty() ? "#" + std::to_string(auto_label) : rt.label);
                ++auto_label;
                Transition t;
                t.kind = rt.kind;
                t.rate = rt.rate;
                t.rate_name = rt.rate_name;
                t.operation = rt.operation;

                int src_machine = mi, dst_machine = mi;
                if (is_failure_entry(rt.kind)) {
                    if (!rm.failure) report(ErrorKind::InvalidTransition, where, "failure transitions must be declared in a failure machine");
                    src_machine = -1;
                } else if (is_repair(rt.kind)) {
                    if (!rm.failure) report(ErrorKind::InvalidTransition, where, "repair transitions must be declared in a failure machine");
                    dst_machine = -1;
                }

                if (is_failure_entry(rt.kind) && (rt.source == "*" || rt.source.empty())) {
                    t.source = StateRef{-1, {}};
                } else if (auto r = resolve_path(c, src_machine, rt.source); r && !(rt.source.empty())) {
                    t.source = *r;
                } else {
                    report(ErrorKind::DanglingStateRef, where, "unknown source state '" + rt.source + "'");
                }
                if (is_failure_entry(rt.kind) && rt.source != "*" && !rt.source.empty() && !c.normal_machine)
                    report(ErrorKind::DanglingStateRef, where, "component has no normal machine");
                bool target_may_be_machine = is_failure_entry(rt.kind);
                if (auto r = resolve_path(c, dst_machine, rt.target); r && (target_may_be_machine || !rt.target.empty())) {
                    t.target = *r;
                } else if (is_repair(rt.kind) && !c.normal_machine) {
                    report(ErrorKind::InvalidTransition, where, "repair target requires a normal machine");
                } else {
                    report(ErrorKind::DanglingStateRef, where, "unknown target state '" + rt.target + "'");
                }

                // Rates.
                if (needs_concrete_rate(rt.kind)) {
                    if (!rt.rate || !(*rt.rate > 0)) report(ErrorKind::InvalidTransition, where, "concrete stochastic transition needs a positive rate");
                    if (rt.rate_name) report(ErrorKind::InvalidTransition, where, "concrete stochastic transition must not name an abstract rate");
                } else if (is_abstract(rt.kind)) {
                    if (rt.rate) report(ErrorKind::InvalidTransition, where, "abstract transition must not carry a rate");
                    if (!rt.rate_name) report(ErrorKind::InvalidTransition, where, "abstract transition needs a rate name");
                } else if (rt.kind == TransitionKind::OperationCall) {
                    if (rt.rate && !(*rt.rate > 0)) report(ErrorKind::InvalidTransition, where, "call rate must be positive");
                } else if (rt.rate || rt.rate_name) {
                    report(ErrorKind::InvalidTransition, where, std::string(to_string(rt.kind)) + " transitions carry no rate");
                }
                if (rt.rate_name && !c.rate_named(*rt.rate_name)) report(ErrorKind::MissingRate, *rt.rate_name);

                // Operations.
                if (rt.kind == TransitionKind::OperationCall || rt.kind == TransitionKind::OperationTrigger) {
                    if (rt.operation.empty()) report(ErrorKind::InvalidTransition, where, "operation name missing");
                    else if (!provider_.count(rt.operation)) report(ErrorKind::UnboundOperation, rc.name + "." + rt.operation, "no component provides this operation");
                    else if (rt.kind == TransitionKind::OperationTrigger && provider_.at(rt.operation) != ci)
                        report(ErrorKind::InvalidTransition, where, "trigger on an operation owned by another component");
                } else if (!rt.operation.empty()) {
                    report(ErrorKind::InvalidTransition, where, "only call/trigger transitions name an operation");
                }

                try {
                    t.guard = parse_guard(rt.guard);
                    bind_names(model, ci, t.guard, where);
                } catch (const Error& e) {
                    report(ErrorKind::UnsupportedGuard, where, e.detail());
                }
                try {
                    t.updates = parse_updates(rt.updates);
                    for (auto& u : t.updates) {
                        auto it = std::find_if(c.attributes.begin(), c.attributes.end(), [&](const Attribute& a) { return a.name == u.attribute; });
                        if (it == c.attributes.end()) report(ErrorKind::UnsupportedGuard, where, "update of unknown local attribute '" + u.attribute + "'");
                        else u.attribute_index = static_cast<int>(it - c.attributes.begin());
                        bind_names(model, ci, u.value, where);
                    }
                } catch (const Error& e) {
                    report(ErrorKind::UnsupportedGuard, where, e.detail());
                }
                t.label = rt.label.empty() ? default_label(c, t) : rt.label;
                m.transitions.push_back(std::move(t));
            }
        }

        // Entry operations are calls issued on entering a state.
        auto check_entries = [&](auto&& self, const std::vector<State>& level, const std::string& where) -> void {
            for (const auto& s : level) {
                if (s.entry_ops.size() > 1) report(ErrorKind::InvalidTransition, where + "." + s.name, "at most one entry operation per state");
                for (const auto& op : s.entry_ops)
                    if (!provider_.count(op)) report(ErrorKind::UnboundOperation, rc.name + "." + op, "no component provides this operation");
                self(self, s.children, where + "." + s.name);
            }
        };
        if (c.normal_machine) check_entries(check_entries, c.normal_machine->states, rc.name + "." + c.normal_machine->name);
        for (const auto& fm : c.failure_machines) check_entries(check_entries, fm.states, rc.name + "." + fm.name);
    }

    static std::string default_label(const QumComponent& c, const Transition& t) {
        if (!t.operation.empty()) return t.operation;
        auto name = [&](const StateRef& r) { return r.path.empty() ? c.machine(r.machine).name : state_at(c, r).name; };
        return c.name + "_" + name(t.source) + "_" + name(t.target);
    }

    void configurations(QumModel& model) {
        std::map<std::string, std::size_t> index;
        for (std::size_t ci = 0; ci < model.components.size(); ++ci) {
            const QumComponent& c = model.components[ci];
            auto walk = [&](auto&& self, const std::vector<State>& level, StateRef ref) -> void {
                for (std::size_t i = 0; i < level.size(); ++i) {
                    ref.path.push_back(i);
                    for (const auto& tag : level[i].config_tags) {
                        auto it = index.find(tag.config);
                        if (it == index.end()) {
                            if (!is_identifier(tag.config)) report(ErrorKind::DuplicateName, tag.config, "configuration name is not an identifier");
                            it = index.emplace(tag.config, model.state_configs.size()).first;
                            model.state_configs.push_back({tag.config, tag.op, {}});
                        } else if (model.state_configs[it->second].op != tag.op) {
                            if (!mixed_.count(tag.config)) report(ErrorKind::MixedOperatorConfig, tag.config);
                            mixed_.insert(tag.config);
                        }
                        model.state_configs[it->second].members.push_back({ci, ref});
                    }
                    self(self, level[i].children, ref);
                    ref.path.pop_back();
                }
            };
            if (c.normal_machine) walk(walk, c.normal_machine->states, StateRef{-1, {}});
            for (std::size_t k = 0; k < c.failure_machines.size(); ++k)
                walk(walk, c.failure_machines[k].states, StateRef{static_cast<int>(k), {}});
        }
    }

    const RawModel& raw_;
    std::vector<Violation> violations_;
    std::map<std::string, std::size_t> provider_;
    std::set<std::string> mixed_;
};

}  // namespace detail

/// Checks profile constraints and resolves references. Total: malformed
/// input yields violations, never an exception.
inline ValidationResult validate(const RawModel& raw) {
    ValidationResult result;
    try {
        result = detail::Validator(raw).run();
    } catch (const std::exception& e) {
        result.model.reset();
        result.violations.push_back({ErrorKind::InvalidTransition, raw.name, e.what()});
    }
    if (result.model) {
        // Record which component calls each operation (transitions and entry ops).
        QumModel& m = *result.model;
        std::vector<Violation> extra;
        auto note_call = [&](const std::string& op, std::size_t caller) {
            for (auto& sig : m.operations) {
                if (sig.name != op) continue;
                if (sig.caller && *sig.caller != caller)
                    extra.push_back({ErrorKind::AmbiguousOperation, op, "called from more than one component"});
                sig.caller = caller;
            }
        };
        for (std::size_t ci = 0; ci < m.components.size(); ++ci) {
            const auto& c = m.components[ci];
            auto scan = [&](const StateMachine& sm) {
                for (const auto& t : sm.transitions)
                    if (t.kind == TransitionKind::OperationCall) note_call(t.operation, ci);
                auto walk = [&](auto&& self, const std::vector<State>& level) -> void {
                    for (const auto& s : level) {
                        for (const auto& op : s.entry_ops) note_call(op, ci);
                        self(self, s.children);
                    }
                };
                walk(walk, sm.states);
            };
            if (c.normal_machine) scan(*c.normal_machine);
            for (const auto& fm : c.failure_machines) scan(fm);
        }
        if (!extra.empty()) {
            result.violations = extra;
            result.model.reset();
        }
    }
    return result;
}

inline QumModel validate_or_throw(const RawModel& raw) {
    auto r = validate(raw);
    if (!r.ok()) {
        std::string all;
        for (const auto& v : r.violations) all += (all.empty() ? "" : "; ") + v.text();
        throw Error(r.violations.front().kind, all);
    }
    return std::move(*r.model);
}

// ---------------------------------------------------------------------------
// Module identifiers and state encoding.

/// Lower-cased component names with non-alphanumerics mapped to '_';
/// collisions get a numeric suffix.
inline std::vector<std::string> module_ids(const QumModel& model) {
    std::vector<std::string> out;
    std::set<std::string> used;
    for (const auto& c : model.components) {
        std::string id;
        for (char ch : c.name) id += std::isalnum(static_cast<unsigned char>(ch)) ? static_cast<char>(std::tolower(static_cast<unsigned char>(ch))) : '_';
        if (id.empty() || std::isdigit(static_cast<unsigned char>(id[0]))) id = "c_" + id;
        std::string candidate = id;
        for (int n = 2; used.count(candidate); ++n) candidate = id + "_" + std::to_string(n);
        used.insert(candidate);
        out.push_back(candidate);
    }
    return out;
}

struct EncodedState {
    std::string name;
    std::string qualified;  // Machine.State.Sub
    StateRef ref;
    int id = 0;
    int span_hi = 0;  // largest descendant id (== id for leaves)
    bool leaf = true;
    bool failure = false;
    bool operator==(const EncodedState&) const = default;
};

struct StateEncoding {
    std::string component;
    std::string module_id;
    std::vector<EncodedState> states;  // pre-order, index == id
    int normstate_count = 0;
    int total_count = 0;
    bool synthetic_idle = false;  // component has no normal machine

    const EncodedState& at(const StateRef& ref) const {
        for (const auto& s : states)
            if (s.ref == ref) return s;
        throw Error(ErrorKind::UnknownState, component + ": unencoded state reference");
    }

    /// Looks a state up by qualified path ("Machine.A.B"), path inside a
    /// machine ("A.B") or a bare name that is unique in the component.
    const EncodedState& find(const std::string& name) const {
        std::vector<const EncodedState*> hits;
        for (const auto& s : states) {
            if (s.qualified == name) return s;
            auto dot = s.qualified.find('.');
            std::string inner = dot == std::string::npos ? s.qualified : s.qualified.substr(dot + 1);
            if (inner == name || s.name == name) hits.push_back(&s);
        }
        if (hits.size() == 1) return *hits.front();
        if (hits.empty()) throw Error(ErrorKind::UnknownState, component + "." + name);
        throw Error(ErrorKind::UnknownState, component + "." + name + " is ambiguous");
    }

    /// Leaf reached when entering `ref` (initial sub-states followed).
    int entry_leaf(const QumComponent& c, const StateRef& ref) const {
        StateRef r = ref;
        const StateMachine& m = c.machine(r.machine);
        if (r.path.empty()) r.path.push_back(m.initial);
        const State* s = &state_at(c, r);
        while (!s->children.empty()) {
            r.path.push_back(s->initial);
            s = &s->children[s->initial];
        }
        return at(r).id;
    }

    bool operator==(const StateEncoding&) const = default;
};

/// Deterministic pre-order numbering: normal region first, then failure
/// machines in declaration order; each composite's descendants form the
/// contiguous id range [id, span_hi].
inline StateEncoding assign_ids(const QumComponent& c, const std::string& module_id) {
    StateEncoding enc;
    enc.component = c.name;
    enc.module_id = module_id;
    auto walk = [&](auto&& self, const std::vector<State>& level, StateRef ref, const std::string& prefix, bool failure) -> void {
        for (std::size_t i = 0; i < level.size(); ++i) {
            ref.path.push_back(i);
            std::size_t pos = enc.states.size();
            EncodedState es;
            es.name = level[i].name;
            es.qualified = prefix + "." + level[i].name;
            es.ref = ref;
            es.id = static_cast<int>(pos);
            es.leaf = level[i].children.empty();
            es.failure = failure;
            enc.states.push_back(es);
            self(self, level[i].children, ref, es.qualified, failure);
            enc.states[pos].span_hi = static_cast<int>(enc.states.size()) - 1;
            ref.path.pop_back();
        }
    };
    if (c.normal_machine) {
        walk(walk, c.normal_machine->states, StateRef{-1, {}}, c.normal_machine->name, false);
    } else {
        EncodedState idle;
        idle.name = "idle";
        idle.qualified = "idle";
        idle.ref = StateRef{-1, {}};
        enc.states.push_back(idle);
        enc.synthetic_idle = true;
    }
    enc.normstate_count = static_cast<int>(enc.states.size());
    for (std::size_t k = 0; k < c.failure_machines.size(); ++k)
        walk(walk, c.failure_machines[k].states, StateRef{static_cast<int>(k), {}}, c.failure_machines[k].name, true);
    enc.total_count = static_cast<int>(enc.states.size());
    return enc;
}

inline std::vector<StateEncoding> assign_ids(const QumModel& model) {
    auto ids = module_ids(model);
    std::vector<StateEncoding> out;
    for (std::size_t i = 0; i < model.components.size(); ++i) out.push_back(assign_ids(model.components[i], ids[i]));
    return out;
}

inline std::string in_state_expr(const StateEncoding& enc, const EncodedState& s) {
    const std::string var = enc.module_id + "_state";
    if (s.span_hi > s.id)
        return "(" + std::to_string(s.id) + " <= " + var + " & " + var + " <= " + std::to_string(s.span_hi) + ")";
    return "(" + var + " = " + std::to_string(s.id) + ")";
}

/// `(lo <= m_state & m_state <= hi)` for composites, `(m_state = id)` for leaves.
inline std::string in_state_expr(const StateEncoding& enc, const std::string& state) {
    return in_state_expr(enc, enc.find(state));
}

}  // namespace quantum
