#pragma once

// Fault trees from counterexamples: counterfactual event filtering, grouping
// into causal classes and order-sensitivity detection by replay.

#include <algorithm>
#include <cstdio>
#include <map>
#include <set>
#include <string>
#include <vector>

#include "quantum/composer.hpp"
#include "quantum/ctmc.hpp"

namespace quantum {

enum class EventKind { Failure, OperationCall, Local };

inline const char* to_string(EventKind k) {
    switch (k) {
        case EventKind::Failure: return "failure";
        case EventKind::OperationCall: return "call";
        case EventKind::Local: return "local";
    }
    return "?";
}

enum class Gate { And, Pand, Seq };

inline const char* to_string(Gate g) {
    switch (g) {
        case Gate::And: return "AND";
        case Gate::Pand: return "PAND";
        case Gate::Seq: return "SEQ";
    }
    return "?";
}

struct BasicEvent {
    std::string label;
    EventKind kind = EventKind::Local;
    bool operator==(const BasicEvent&) const = default;
};

struct FilteredPath {
    std::vector<std::string> events;  // kept events, original order
    double probability = 0;
};

struct CausalClass {
    Gate gate = Gate::And;
    std::vector<std::string> sequence;  // kept events of the representative, in order
    std::vector<BasicEvent> leaves;     // failure and call events of `sequence`
    std::vector<std::pair<std::size_t, std::size_t>> order;  // sequence index pairs that must stay ordered
    double probability = 0;
    std::size_t members = 0;
};

struct FaultTree {
    std::string top;
    std::vector<CausalClass> classes;  // descending probability

    double probability() const {
        double s = 0;
        for (const auto& c : classes) s += c.probability;
        return s;
    }
};

/// Replays labels against every resolution of label ambiguity at once.
/// True when some visited state satisfies `hazard`.
inline bool reaches(const GlobalModel& g, const std::vector<std::string>& events, const StatePredicate& hazard) {
    std::set<std::vector<int>> current{g.initial_state()};
    if (hazard(*current.begin())) return true;
    for (const auto& e : events) {
        std::set<std::vector<int>> next;
        for (const auto& s : current)
            for (auto& mv : g.successors(s))
                if (mv.label == e) next.insert(std::move(mv.target));
        if (next.empty()) return false;
        for (const auto& s : next)
            if (hazard(s)) return true;
        current = std::move(next);
    }
    return false;
}

/// Kind of each event label, derived from the composed transitions.
inline std::map<std::string, EventKind> event_kinds(const GlobalModel& g) {
    std::map<std::string, EventKind> out;
    for (const auto& m : g.machines)
        for (const auto& t : m.flat_transitions) {
            if (t.kind == FlatKind::Discard) continue;
            EventKind k = t.kind == FlatKind::FailureEntry ? EventKind::Failure
                          : t.synchronizing()              ? EventKind::OperationCall
                                                           : EventKind::Local;
            auto [it, fresh] = out.emplace(t.label, k);
            if (!fresh && k == EventKind::Failure) it->second = k;
        }
    return out;
}

/// Drops events whose removal still lets the replay reach the hazard,
/// repeating until every remaining event is necessary.
inline std::vector<FilteredPath> causal_filter(const Counterexample& ce, const GlobalModel& g, const StatePredicate& hazard) {
    std::vector<FilteredPath> out;
    for (const auto& p : ce.paths) {
        FilteredPath f;
        f.probability = p.probability;
        f.events = p.events;
        if (reaches(g, f.events, hazard)) {
            bool changed = true;
            while (changed) {
                changed = false;
                for (std::size_t i = 0; i < f.events.size();) {
                    std::vector<std::string> without = f.events;
                    without.erase(without.begin() + static_cast<std::ptrdiff_t>(i));
                    if (reaches(g, without, hazard)) {
                        f.events = std::move(without);
                        changed = true;
                    } else {
                        ++i;
                    }
                }
            }
        }
        out.push_back(std::move(f));
    }
    return out;
}

/// Groups filtered paths by kept-event multiset and determines each class's
/// gate from adjacent transpositions of its representative sequence.
inline std::vector<CausalClass> classify(const std::vector<FilteredPath>& paths, const GlobalModel& g, const StatePredicate& hazard) {
    auto kinds = event_kinds(g);
    std::map<std::multiset<std::string>, std::size_t> index;
    std::vector<CausalClass> classes;
    std::vector<double> best;
    for (const auto& p : paths) {
        std::multiset<std::string> key(p.events.begin(), p.events.end());
        auto it = index.find(key);
        if (it == index.end()) {
            index.emplace(key, classes.size());
            CausalClass c;
            c.sequence = p.events;
            c.probability = p.probability;
            c.members = 1;
            classes.push_back(std::move(c));
            best.push_back(p.probability);
        } else {
            CausalClass& c = classes[it->second];
            c.probability += p.probability;
            ++c.members;
            if (p.probability > best[it->second]) {
                best[it->second] = p.probability;
                c.sequence = p.events;
            }
        }
    }
    for (auto& c : classes) {
        for (const auto& e : c.sequence) {
            auto k = kinds.count(e) ? kinds.at(e) : EventKind::Local;
            if (k != EventKind::Local) c.leaves.push_back({e, k});
        }
        std::size_t swappable = 0, pairs = 0;
        for (std::size_t i = 0; i + 1 < c.sequence.size(); ++i) {
            if (c.sequence[i] == c.sequence[i + 1]) continue;
            ++pairs;
            auto swapped = c.sequence;
            std::swap(swapped[i], swapped[i + 1]);
            if (reaches(g, swapped, hazard)) ++swappable;
            else c.order.push_back({i, i + 1});
        }
        if (swappable == pairs) c.gate = Gate::And;
        else if (swappable == 0) c.gate = Gate::Pand;
        else c.gate = Gate::Seq;
    }
    std::stable_sort(classes.begin(), classes.end(), [](const CausalClass& a, const CausalClass& b) {
        if (a.probability != b.probability) return a.probability > b.probability;
        return a.sequence < b.sequence;
    });
    return classes;
}

inline FaultTree build_fault_tree(const Counterexample& ce, const GlobalModel& g, const StatePredicate& hazard, std::string top) {
    FaultTree ft;
    ft.top = std::move(top);
    ft.classes = classify(causal_filter(ce, g, hazard), g, hazard);
    return ft;
}

inline std::string format_probability(double p) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.5e", p);
    return buf;
}

/// Ordering constraints as text, e.g. "a < b, b < c".
inline std::string order_text(const CausalClass& c) {
    std::string out;
    for (const auto& [a, b] : c.order) {
        if (!out.empty()) out += ", ";
        out += c.sequence[a] + " < " + c.sequence[b];
    }
    return out;
}

inline std::string dump_text(const FaultTree& ft) {
    std::string out = "OR " + ft.top + " p=" + format_probability(ft.probability()) + " classes=" + std::to_string(ft.classes.size()) + "\n";
    for (const auto& c : ft.classes) {
        out += "  " + std::string(to_string(c.gate)) + " p=" + format_probability(c.probability) + " paths=" + std::to_string(c.members);
        if (!c.order.empty()) out += " [" + order_text(c) + "]";
        out += "\n";
        for (const auto& e : c.leaves) out += "    " + std::string(to_string(e.kind)) + " " + e.label + "\n";
    }
    return out;
}

inline std::string dot_escape(const std::string& s) {
    std::string out;
    for (char ch : s) {
        if (ch == '"' || ch == '\\') out += '\\';
        out += ch;
    }
    return out;
}

inline std::string emit_dot(const FaultTree& ft) {
    std::string out = "digraph FaultTree {\n  rankdir=TB;\n  node [fontname=\"Helvetica\"];\n";
    out += "  top [shape=box, label=\"" + dot_escape(ft.top) + "\\nOR\"];\n";
    for (std::size_t i = 0; i < ft.classes.size(); ++i) {
        const auto& c = ft.classes[i];
        std::string gate = "g" + std::to_string(i);
        std::string label = std::string(to_string(c.gate)) + "\\np=" + format_probability(c.probability);
        if (!c.order.empty()) label += "\\n" + dot_escape(order_text(c));
        out += "  " + gate + " [shape=" + (c.gate == Gate::And ? "invhouse" : "house") + ", label=\"" + label + "\"];\n";
        out += "  top -> " + gate + ";\n";
        for (std::size_t j = 0; j < c.leaves.size(); ++j) {
            std::string leaf = gate + "_e" + std::to_string(j);
            out += "  " + leaf + " [shape=" + (c.leaves[j].kind == EventKind::Failure ? "circle" : "ellipse") + ", label=\"" +
                   dot_escape(c.leaves[j].label) + "\\n(" + to_string(c.leaves[j].kind) + ")\"];\n";
            out += "  " + gate + " -> " + leaf + ";\n";
        }
    }
    out += "}\n";
    return out;
}

}  // namespace quantum
