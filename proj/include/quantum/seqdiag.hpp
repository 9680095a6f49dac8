#pragma once

// Sequence diagrams for causal classes: one lifeline per component, one alt
// operand per class, par fragments for adjacent order-free events. Emitted
// as PlantUML text or as an interaction appended to the source XMI.

#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "quantum/composer.hpp"
#include "quantum/error.hpp"
#include "quantum/fault_tree.hpp"
#include "quantum/xmi.hpp"

namespace quantum {

struct Message {
    std::size_t number = 0;  // 1-based within the operand
    std::size_t from = 0;    // lifeline indices
    std::size_t to = 0;
    std::string event;
    std::string text;  // `transition("A","B")` or `op()`

    bool self() const { return from == to; }
};

/// A single message, or a par fragment with one compartment per message.
struct Step {
    bool par = false;
    std::vector<Message> messages;
};

struct Operand {
    std::string name;
    double probability = 0;
    std::vector<Step> steps;

    std::vector<const Message*> messages() const {
        std::vector<const Message*> out;
        for (const auto& s : steps)
            for (const auto& m : s.messages) out.push_back(&m);
        return out;
    }
};

struct SequenceDiagram {
    std::string title;
    std::vector<std::string> lifelines;
    std::vector<Operand> operands;
};

namespace detail {

inline Message message_for(const GlobalModel& g, const GlobalMove* move, const std::string& event) {
    Message m;
    m.event = event;
    const FlatTransition* t = move ? move->transition : nullptr;
    std::size_t comp = move ? move->component : 0;
    if (!t) {
        // Not replayable from here: fall back to the first transition with this label.
        for (std::size_t c = 0; c < g.machines.size() && !t; ++c)
            for (const auto& ft : g.machines[c].flat_transitions)
                if (ft.label == event && ft.kind != FlatKind::Discard && ft.kind != FlatKind::Trigger) {
                    t = &ft;
                    comp = c;
                    break;
                }
    }
    m.from = comp;
    m.to = comp;
    if (t && t->kind == FlatKind::Call) {
        if (const SyncAction* a = g.sync(t->action)) m.to = a->callee;
        m.text = t->action + "()";
    } else if (t) {
        const auto& enc = g.encodings[comp];
        m.text = "transition(\"" + enc.states[static_cast<std::size_t>(t->source)].name + "\",\"" +
                 enc.states[static_cast<std::size_t>(t->target)].name + "\")";
    } else {
        m.text = event + "()";
    }
    return m;
}

inline std::string xml_escape(std::string_view s) {
    std::string out;
    for (char c : s) {
        switch (c) {
            case '&': out += "&amp;"; break;
            case '<': out += "&lt;"; break;
            case '>': out += "&gt;"; break;
            case '"': out += "&quot;"; break;
            case '\'': out += "&apos;"; break;
            default: out += c;
        }
    }
    return out;
}

}  // namespace detail

/// Operand order: descending probability, ties by event labels.
inline SequenceDiagram build_diagram(const std::vector<CausalClass>& classes, const GlobalModel& g, std::string title = {}) {
    SequenceDiagram d;
    d.title = std::move(title);
    for (const auto& c : g.model.components) d.lifelines.push_back(c.name);

    std::vector<const CausalClass*> sorted;
    for (const auto& c : classes) sorted.push_back(&c);
    std::stable_sort(sorted.begin(), sorted.end(), [](const CausalClass* a, const CausalClass* b) {
        if (a->probability != b->probability) return a->probability > b->probability;
        return a->sequence < b->sequence;
    });

    for (const CausalClass* c : sorted) {
        Operand op;
        op.probability = c->probability;
        op.name = "P=" + format_probability(c->probability);
        auto r = replay(g, c->sequence);
        std::set<std::size_t> ordered;  // i such that events i, i+1 must stay ordered
        for (const auto& [a, b] : c->order) ordered.insert(a);

        std::size_t number = 1;
        for (std::size_t i = 0; i < c->sequence.size();) {
            std::size_t j = i;
            while (j + 1 < c->sequence.size() && !ordered.count(j) && c->sequence[j] != c->sequence[j + 1]) ++j;
            Step step;
            step.par = j > i;
            for (std::size_t k = i; k <= j; ++k) {
                const GlobalMove* mv = k < r.moves.size() ? &r.moves[k] : nullptr;
                Message m = detail::message_for(g, mv, c->sequence[k]);
                m.number = number++;
                step.messages.push_back(std::move(m));
            }
            op.steps.push_back(std::move(step));
            i = j + 1;
        }
        d.operands.push_back(std::move(op));
    }
    return d;
}

inline std::string emit_plantuml(const SequenceDiagram& d) {
    std::string out = "@startuml\n";
    if (!d.title.empty()) out += "title " + d.title + "\n";
    for (std::size_t i = 0; i < d.lifelines.size(); ++i) out += "participant \"" + d.lifelines[i] + "\" as L" + std::to_string(i) + "\n";
    auto line = [](const Message& m, const std::string& indent) {
        return indent + "L" + std::to_string(m.from) + " -> L" + std::to_string(m.to) + " : " + std::to_string(m.number) + ": " + m.text + "\n";
    };
    for (std::size_t o = 0; o < d.operands.size(); ++o) {
        const Operand& op = d.operands[o];
        out += (o == 0 ? "alt " : "else ") + op.name + "\n";
        for (const auto& step : op.steps) {
            if (!step.par) {
                out += line(step.messages.front(), "  ");
                continue;
            }
            out += "  par\n";
            for (std::size_t k = 0; k < step.messages.size(); ++k) {
                if (k) out += "  else\n";
                out += line(step.messages[k], "    ");
            }
            out += "  end\n";
        }
    }
    if (!d.operands.empty()) out += "end\n";
    out += "@enduml\n";
    return out;
}

/// XMI fragment for the diagram, all ids prefixed with `prefix`.
inline std::string interaction_xmi(const SequenceDiagram& d, const std::string& prefix, const std::string& indent = "    ") {
    using detail::xml_escape;
    const std::string i1 = indent, i2 = indent + "  ", i3 = i2 + "  ";
    std::string frags, msgs;
    std::size_t serial = 0;
    auto id = [&](const std::string& kind) { return prefix + kind + std::to_string(serial++); };

    auto emit_message = [&](const Message& m, std::size_t op_index, const std::string& ind) {
        std::string mid = prefix + "m" + std::to_string(op_index) + "_" + std::to_string(m.number);
        std::string send = mid + "_send", recv = mid + "_recv";
        std::string s;
        s += ind + "<fragment xmi:type=\"uml:MessageOccurrenceSpecification\" xmi:id=\"" + send + "\" covered=\"" + prefix + "ll" +
             std::to_string(m.from) + "\" message=\"" + mid + "\"/>\n";
        s += ind + "<fragment xmi:type=\"uml:MessageOccurrenceSpecification\" xmi:id=\"" + recv + "\" covered=\"" + prefix + "ll" +
             std::to_string(m.to) + "\" message=\"" + mid + "\"/>\n";
        msgs += i2 + "<message xmi:id=\"" + mid + "\" name=\"" + xml_escape(std::to_string(m.number) + ": " + m.text) +
                "\" messageSort=\"synchCall\" sendEvent=\"" + send + "\" receiveEvent=\"" + recv + "\"/>\n";
        return s;
    };

    std::string body;
    for (std::size_t i = 0; i < d.lifelines.size(); ++i)
        body += i2 + "<lifeline xmi:id=\"" + prefix + "ll" + std::to_string(i) + "\" name=\"" + xml_escape(d.lifelines[i]) + "\"/>\n";
    if (!d.operands.empty()) {
        frags += i2 + "<fragment xmi:type=\"uml:CombinedFragment\" xmi:id=\"" + id("alt") + "\" interactionOperator=\"alt\">\n";
        for (std::size_t o = 0; o < d.operands.size(); ++o) {
            const Operand& op = d.operands[o];
            frags += i3 + "<operand xmi:id=\"" + prefix + "op" + std::to_string(o) + "\" name=\"" + xml_escape(op.name) + "\">\n";
            const std::string i4 = i3 + "  ";
            for (const auto& step : op.steps) {
                if (!step.par) {
                    frags += emit_message(step.messages.front(), o, i4);
                    continue;
                }
                frags += i4 + "<fragment xmi:type=\"uml:CombinedFragment\" xmi:id=\"" + id("par") + "\" interactionOperator=\"par\">\n";
                for (const auto& m : step.messages) {
                    frags += i4 + "  <operand xmi:id=\"" + id("cmp") + "\">\n";
                    frags += emit_message(m, o, i4 + "    ");
                    frags += i4 + "  </operand>\n";
                }
                frags += i4 + "</fragment>\n";
            }
            frags += i3 + "</operand>\n";
        }
        frags += i2 + "</fragment>\n";
    }
    std::string name = d.title.empty() ? "Counterexample" : d.title;
    std::string out;
    out += i1 + "<packagedElement xmi:type=\"uml:Package\" xmi:id=\"" + prefix + "pkg\" name=\"" + xml_escape(name) + "\">\n";
    out += i1 + "  <packagedElement xmi:type=\"uml:Interaction\" xmi:id=\"" + prefix + "int\" name=\"" + xml_escape(name) + "\">\n";
    out += body + frags + msgs;
    out += i1 + "  </packagedElement>\n";
    out += i1 + "</packagedElement>\n";
    return out;
}

/// Inserts the diagram as a new package just before the closing
/// `</uml:Model>`; every byte of the original outside that point is kept.
inline std::string append_xmi(const SequenceDiagram& d, std::string_view original) {
    (void)detail::read_xml_document(original);  // XmlSyntax on malformed input
    const std::string close = "</uml:Model>";
    std::size_t at = original.rfind(close);
    if (at == std::string_view::npos) throw Error(ErrorKind::XmlSyntax, "no uml:Model element to extend");
    int k = 1;
    while (original.find("xmi:id=\"qumcx" + std::to_string(k) + "_pkg\"") != std::string_view::npos) ++k;
    std::string out(original.substr(0, at));
    out += interaction_xmi(d, "qumcx" + std::to_string(k) + "_", "  ");
    out += original.substr(at);
    return out;
}

}  // namespace quantum
