#pragma once

// Merges each component's normal machine with its failure patterns into one
// flat machine, then assembles the synchronized global model. Operation calls
// become shared actions: the caller's transition fires together with the
// callee's trigger. A call the callee cannot accept in its current state is
// discarded (callee unchanged), as for unhandled events in UML.

#include <algorithm>
#include <cstddef>
#include <functional>
#include <map>
#include <optional>
#include <set>
#include <span>
#include <string>
#include <vector>

#include "quantum/error.hpp"
#include "quantum/expr.hpp"
#include "quantum/model.hpp"

namespace quantum {

/// Default rate (per hour) for untimed transitions: plain transitions and
/// calls that carry no stochastic rate.
inline constexpr double kDefaultFastRate = 1e9;

enum class FlatKind { Local, FailureEntry, Repair, Call, Trigger, Discard };

inline const char* to_string(FlatKind k) {
    switch (k) {
        case FlatKind::Local: return "local";
        case FlatKind::FailureEntry: return "failure";
        case FlatKind::Repair: return "repair";
        case FlatKind::Call: return "call";
        case FlatKind::Trigger: return "trigger";
        case FlatKind::Discard: return "discard";
    }
    return "?";
}

struct FlatTransition {
    int source = 0;
    int target = 0;
    FlatKind kind = FlatKind::Local;
    std::optional<double> rate;  // empty for triggers/discards (weight 1)
    std::string action;          // operation name for call/trigger/discard
    std::string label;           // event label
    Expr guard = Expr::boolean(true);
    std::vector<Update> updates;

    bool synchronizing() const { return !action.empty(); }
};

struct ComposedMachine {
    std::string component;
    StateEncoding encoding;
    std::vector<int> flat_states;  // leaf ids, ascending
    std::vector<FlatTransition> flat_transitions;
    int initial = 0;
};

namespace detail {

inline std::vector<int> leaves_under(const StateEncoding& enc, const EncodedState& s) {
    std::vector<int> out;
    for (int id = s.id; id <= s.span_hi; ++id)
        if (enc.states[static_cast<std::size_t>(id)].leaf) out.push_back(id);
    return out;
}

inline std::vector<int> normal_leaves(const StateEncoding& enc) {
    std::vector<int> out;
    for (int id = 0; id < enc.normstate_count; ++id)
        if (enc.states[static_cast<std::size_t>(id)].leaf) out.push_back(id);
    return out;
}

/// Entry operations executed when entering `ref` and descending initial sub-states.
inline std::vector<std::string> entry_chain_ops(const QumComponent& c, const StateRef& ref) {
    std::vector<std::string> ops;
    StateRef r = ref;
    const StateMachine& m = c.machine(r.machine);
    if (r.path.empty()) r.path.push_back(m.initial);
    const State* s = &state_at(c, r);
    for (;;) {
        ops.insert(ops.end(), s->entry_ops.begin(), s->entry_ops.end());
        if (s->children.empty()) break;
        s = &s->children[s->initial];
    }
    return ops;
}

}  // namespace detail

/// Builds the flat machine of one component. Failure entries are replicated
/// from every normal leaf (stochastic race between patterns); transitions
/// declared on composite states are replicated onto all leaf descendants,
/// with a deeper trigger on the same operation shadowing a replicated one.
inline ComposedMachine compose(const QumComponent& c, const StateEncoding& enc, double fast_rate = kDefaultFastRate) {
    ComposedMachine out;
    out.component = c.name;
    out.encoding = enc;
    for (const auto& s : enc.states)
        if (s.leaf) out.flat_states.push_back(s.id);
    out.initial = c.normal_machine ? enc.entry_leaf(c, StateRef{-1, {}}) : 0;

    struct Pending {
        FlatTransition flat;
        std::size_t depth;  // depth of declared source, for shadowing
    };
    std::vector<Pending> pending;

    auto emit = [&](const Transition& t) {
        std::vector<int> sources;
        std::size_t depth = t.source.path.size();
        if (t.source.path.empty()) {
            sources = detail::normal_leaves(enc);
        } else {
            sources = detail::leaves_under(enc, enc.at(t.source));
        }
        int target = enc.entry_leaf(c, t.target);

        FlatTransition f;
        f.target = target;
        f.label = t.label;
        f.guard = t.guard;
        f.updates = t.updates;
        switch (t.kind) {
            case TransitionKind::Failure:
            case TransitionKind::AbstractFailure: f.kind = FlatKind::FailureEntry; break;
            case TransitionKind::Repair:
            case TransitionKind::AbstractRepair: f.kind = FlatKind::Repair; break;
            case TransitionKind::OperationCall: f.kind = FlatKind::Call; f.action = t.operation; break;
            case TransitionKind::OperationTrigger: f.kind = FlatKind::Trigger; f.action = t.operation; break;
            default: f.kind = FlatKind::Local; break;
        }
        auto entry_ops = detail::entry_chain_ops(c, t.target);
        if (entry_ops.size() > 1)
            throw Error(ErrorKind::InvalidTransition, c.name + ":" + t.label + " enters states issuing several calls");
        if (!entry_ops.empty()) {
            if (f.kind == FlatKind::Trigger || (f.kind == FlatKind::Call && f.action != entry_ops.front()))
                throw Error(ErrorKind::InvalidTransition, c.name + ":" + t.label + " combines a call/trigger with an entry call");
            if (f.kind == FlatKind::Local || f.kind == FlatKind::Call) {
                f.kind = FlatKind::Call;
                f.action = entry_ops.front();
                f.label = f.action;
            }
        }
        if (f.kind == FlatKind::Call || f.kind == FlatKind::Trigger) f.label = f.action;
        if (f.kind != FlatKind::Trigger) {
            auto r = c.effective_rate(t);
            f.rate = r ? *r : fast_rate;
        }
        for (int s : sources) {
            FlatTransition copy = f;
            copy.source = s;
            pending.push_back({std::move(copy), depth});
        }
    };

    if (c.normal_machine)
        for (const auto& t : c.normal_machine->transitions) emit(t);
    for (const auto& fm : c.failure_machines)
        for (const auto& t : fm.transitions) emit(t);

    // Innermost-first: drop replicated triggers shadowed by deeper ones.
    std::map<std::pair<int, std::string>, std::size_t> deepest;
    for (const auto& p : pending)
        if (p.flat.kind == FlatKind::Trigger) {
            auto key = std::make_pair(p.flat.source, p.flat.action);
            deepest[key] = std::max(deepest[key], p.depth);
        }
    for (auto& p : pending) {
        if (p.flat.kind == FlatKind::Trigger && p.depth < deepest[{p.flat.source, p.flat.action}]) continue;
        out.flat_transitions.push_back(std::move(p.flat));
    }

    // Calls the current state cannot accept are discarded.
    for (const auto& op : c.operations) {
        for (int leaf : out.flat_states) {
            std::optional<Expr> accepted;
            bool always = false;
            for (const auto& t : out.flat_transitions) {
                if (t.kind != FlatKind::Trigger || t.action != op || t.source != leaf) continue;
                if (is_trivially_true(t.guard)) always = true;
                accepted = accepted ? Expr::binary(Expr::Op::Or, std::move(*accepted), t.guard) : t.guard;
            }
            if (always) continue;
            FlatTransition d;
            d.source = leaf;
            d.target = leaf;
            d.kind = FlatKind::Discard;
            d.action = op;
            d.label = op;
            d.guard = accepted ? Expr::unary(Expr::Op::Not, std::move(*accepted)) : Expr::boolean(true);
            out.flat_transitions.push_back(std::move(d));
        }
    }
    return out;
}

/// One enabled step of the global model.
struct GlobalMove {
    std::string label;
    double rate = 0;
    std::vector<int> target;
    std::size_t component = 0;             // local mover, or caller for syncs
    std::optional<std::size_t> callee;
    const FlatTransition* transition = nullptr;
    const FlatTransition* callee_transition = nullptr;
};

struct SyncAction {
    std::string name;
    std::size_t caller = 0;
    std::size_t callee = 0;
};

struct GlobalModel {
    QumModel model;
    std::vector<StateEncoding> encodings;
    std::vector<ComposedMachine> machines;
    std::vector<SyncAction> sync_actions;
    std::vector<std::size_t> offsets;  // start of each component's slot block
    std::size_t width = 0;

    Valuation valuation(std::span<const int> s) const { return Valuation{s, offsets}; }

    std::vector<int> initial_state() const {
        std::vector<int> s(width, 0);
        for (std::size_t c = 0; c < machines.size(); ++c) {
            s[offsets[c]] = machines[c].initial;
            const auto& attrs = model.components[c].attributes;
            for (std::size_t a = 0; a < attrs.size(); ++a) s[offsets[c] + 1 + a] = attrs[a].init;
        }
        return s;
    }

    const SyncAction* sync(const std::string& action) const {
        for (const auto& a : sync_actions)
            if (a.name == action) return &a;
        return nullptr;
    }

    /// Every label that some transition of the model can produce.
    std::set<std::string> event_labels() const {
        std::set<std::string> out;
        for (const auto& m : machines)
            for (const auto& t : m.flat_transitions)
                if (t.kind != FlatKind::Discard) out.insert(t.label);
        return out;
    }

    std::vector<GlobalMove> successors(std::span<const int> s) const {
        std::vector<GlobalMove> out;
        Valuation v = valuation(s);
        for (std::size_t c = 0; c < machines.size(); ++c) {
            int here = s[offsets[c]];
            for (const auto& t : machines[c].flat_transitions) {
                if (t.source != here) continue;
                if (t.kind == FlatKind::Trigger || t.kind == FlatKind::Discard) continue;
                if (!eval(t.guard, v)) continue;
                if (t.kind == FlatKind::Call) {
                    const SyncAction* a = sync(t.action);
                    if (!a) continue;
                    std::size_t callee = a->callee;
                    int there = s[offsets[callee]];
                    for (const auto& u : machines[callee].flat_transitions) {
                        if ((u.kind != FlatKind::Trigger && u.kind != FlatKind::Discard) || u.action != t.action) continue;
                        if (u.source != there || !eval(u.guard, v)) continue;
                        GlobalMove mv;
                        mv.label = t.action;
                        mv.rate = *t.rate;
                        mv.component = c;
                        mv.callee = callee;
                        mv.transition = &t;
                        mv.callee_transition = &u;
                        mv.target.assign(s.begin(), s.end());
                        apply(mv.target, c, t, v);
                        apply(mv.target, callee, u, v);
                        out.push_back(std::move(mv));
                    }
                } else {
                    GlobalMove mv;
                    mv.label = t.label;
                    mv.rate = *t.rate;
                    mv.component = c;
                    mv.transition = &t;
                    mv.target.assign(s.begin(), s.end());
                    apply(mv.target, c, t, v);
                    out.push_back(std::move(mv));
                }
            }
        }
        return out;
    }

private:
    void apply(std::vector<int>& target, std::size_t c, const FlatTransition& t, const Valuation& pre) const {
        target[offsets[c]] = t.target;
        const auto& attrs = model.components[c].attributes;
        for (const auto& u : t.updates) {
            long value = eval(u.value, pre);
            const auto& a = attrs[static_cast<std::size_t>(u.attribute_index)];
            if (value < a.lo || value > a.hi)
                throw Error(ErrorKind::AttributeOutOfRange, model.components[c].name + "." + a.name + " := " + std::to_string(value));
            target[offsets[c] + 1 + static_cast<std::size_t>(u.attribute_index)] = static_cast<int>(value);
        }
    }
};

namespace detail {

inline void bind_states(Expr& e, const std::vector<StateEncoding>& encodings) {
    visit(e, [&](Expr& node) {
        if (node.op != Expr::Op::At) return;
        std::string joined;
        for (std::size_t i = 0; i < node.state_path.size(); ++i) joined += (i ? "." : "") + node.state_path[i];
        const auto& enc = encodings.at(static_cast<std::size_t>(node.component));
        const EncodedState& s = enc.find(joined);
        node.lo = s.id;
        node.hi = s.span_hi;
    });
}

}  // namespace detail

/// Composes every component and wires operation calls into shared actions.
inline GlobalModel build_global(const QumModel& model, double fast_rate = kDefaultFastRate) {
    GlobalModel g;
    g.model = model;
    g.encodings = assign_ids(model);
    for (std::size_t c = 0; c < model.components.size(); ++c) g.machines.push_back(compose(model.components[c], g.encodings[c], fast_rate));

    std::map<std::string, std::size_t> callers;
    for (std::size_t c = 0; c < g.machines.size(); ++c)
        for (const auto& t : g.machines[c].flat_transitions)
            if (t.kind == FlatKind::Call) {
                auto [it, fresh] = callers.emplace(t.action, c);
                if (!fresh && it->second != c) throw Error(ErrorKind::AmbiguousOperation, t.action);
            }
    for (const auto& [op, caller] : callers) {
        const OperationSignature* sig = model.operation(op);
        if (!sig) throw Error(ErrorKind::UnboundOperation, model.components[caller].name + ", " + op);
        const auto& callee_machine = g.machines[sig->owner];
        bool bound = std::any_of(callee_machine.flat_transitions.begin(), callee_machine.flat_transitions.end(),
                                 [&](const FlatTransition& t) { return t.kind == FlatKind::Trigger && t.action == op; });
        if (!bound) throw Error(ErrorKind::UnboundOperation, model.components[caller].name + ", " + op);
        if (sig->owner == caller) throw Error(ErrorKind::InvalidTransition, "component " + model.components[caller].name + " calls its own operation " + op);
        g.sync_actions.push_back({op, caller, sig->owner});
    }
    // Operations nobody calls never fire.
    for (auto& m : g.machines) {
        std::erase_if(m.flat_transitions, [&](const FlatTransition& t) {
            return (t.kind == FlatKind::Trigger || t.kind == FlatKind::Discard) && !callers.count(t.action);
        });
    }
    for (auto& m : g.machines)
        for (auto& t : m.flat_transitions) {
            detail::bind_states(t.guard, g.encodings);
            for (auto& u : t.updates) detail::bind_states(u.value, g.encodings);
        }

    std::size_t offset = 0;
    for (const auto& c : model.components) {
        g.offsets.push_back(offset);
        offset += 1 + c.attributes.size();
    }
    g.width = offset;
    return g;
}

// ---------------------------------------------------------------------------
// State predicates.

using StatePredicate = std::function<bool(std::span<const int>)>;

inline bool in_state(const GlobalModel& g, std::size_t component, const StateRef& ref, std::span<const int> s) {
    const EncodedState& es = g.encodings[component].at(ref);
    int v = s[g.offsets[component]];
    return es.id <= v && v <= es.span_hi;
}

inline StatePredicate config_predicate(const GlobalModel& g, const StateConfiguration& cfg) {
    return [&g, cfg](std::span<const int> s) {
        bool all = true, any = false;
        for (const auto& m : cfg.members) {
            bool hit = in_state(g, m.component, m.state, s);
            all = all && hit;
            any = any || hit;
        }
        return cfg.op == ConfigOperator::And ? all : any;
    };
}

inline StatePredicate config_predicate(const GlobalModel& g, const std::string& name) {
    const StateConfiguration* cfg = g.model.config(name);
    if (!cfg) throw Error(ErrorKind::UnknownConfig, name);
    return config_predicate(g, *cfg);
}

/// The component has entered one of its failure patterns.
inline StatePredicate component_failed(const GlobalModel& g, std::size_t component) {
    return [&g, component](std::span<const int> s) { return s[g.offsets[component]] >= g.encodings[component].normstate_count; };
}

// ---------------------------------------------------------------------------
// Replay.

struct ReplayResult {
    std::vector<int> final_state;
    std::optional<std::size_t> stuck;  // index of the first event that was not enabled
    std::vector<std::vector<int>> states;  // visited states, starting with the initial one
    std::vector<GlobalMove> moves;

    bool ok() const { return !stuck.has_value(); }
};

/// Applies events by label from the initial state. The first enabled move
/// with the label (in model order) is taken. Unknown labels raise
/// UnknownEvent; known but disabled ones stop the replay with `stuck`.
inline ReplayResult replay(const GlobalModel& g, std::span<const std::string> events, const StatePredicate& stop_at = {}) {
    auto labels = g.event_labels();
    ReplayResult r;
    r.final_state = g.initial_state();
    r.states.push_back(r.final_state);
    for (std::size_t i = 0; i < events.size(); ++i) {
        if (stop_at && stop_at(r.final_state)) break;
        if (!labels.count(events[i])) throw Error(ErrorKind::UnknownEvent, events[i]);
        auto moves = g.successors(r.final_state);
        auto it = std::find_if(moves.begin(), moves.end(), [&](const GlobalMove& m) { return m.label == events[i]; });
        if (it == moves.end()) {
            r.stuck = i;
            return r;
        }
        r.final_state = it->target;
        r.states.push_back(r.final_state);
        r.moves.push_back(*it);
    }
    return r;
}

inline ReplayResult replay(const GlobalModel& g, const std::vector<std::string>& events, const StatePredicate& stop_at = {}) {
    return replay(g, std::span<const std::string>(events), stop_at);
}

/// True when replaying `events` visits a state satisfying `target`.
inline bool replay_reaches(const GlobalModel& g, std::span<const std::string> events, const StatePredicate& target) {
    auto r = replay(g, events, target);
    return std::any_of(r.states.begin(), r.states.end(), [&](const std::vector<int>& s) { return target(s); });
}

}  // namespace quantum
