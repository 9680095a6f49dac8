#pragma once

// XMI 2.1 subset reader. See docs/xmi-dialect.md for the pinned subset:
// stereotype applications are top-level `QuantUM:*` elements that point at
// model elements through `base_*` xmi:id references.

#include <boost/property_tree/ptree.hpp>
#include <boost/property_tree/xml_parser.hpp>

#include <charconv>
#include <functional>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include "quantum/error.hpp"
#include "quantum/model.hpp"

namespace quantum {

using boost::property_tree::ptree;

namespace detail {

inline std::string attr(const ptree& node, const std::string& name, const std::string& fallback = {}) {
    if (auto a = node.get_child_optional("<xmlattr>." + name)) return a->data();
    return fallback;
}

inline ptree read_xml_document(std::string_view bytes) {
    ptree doc;
    std::istringstream in{std::string(bytes)};
    try {
        boost::property_tree::read_xml(in, doc, boost::property_tree::xml_parser::no_comments);
    } catch (const boost::property_tree::xml_parser_error& e) {
        throw Error(ErrorKind::XmlSyntax, e.message(), static_cast<int>(e.line()));
    } catch (const std::exception& e) {
        throw Error(ErrorKind::XmlSyntax, e.what(), 0);
    }
    return doc;
}

inline std::vector<std::string> split_ws(const std::string& s) {
    std::vector<std::string> out;
    std::istringstream in(s);
    std::string w;
    while (in >> w) out.push_back(w);
    return out;
}

inline double parse_real(const std::string& s, const std::string& what) {
    double v = 0;
    auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (s.empty() || ec != std::errc() || ptr != s.data() + s.size()) throw Error(ErrorKind::XmlSyntax, "malformed number for " + what + ": '" + s + "'");
    return v;
}

inline int parse_int(const std::string& s, const std::string& what) {
    int v = 0;
    const char* b = s.data();
    if (!s.empty() && *b == '+') ++b;
    auto [ptr, ec] = std::from_chars(b, s.data() + s.size(), v);
    if (s.empty() || ec != std::errc() || ptr != s.data() + s.size()) throw Error(ErrorKind::XmlSyntax, "malformed integer for " + what + ": '" + s + "'");
    return v;
}

class XmiReader {
public:
    RawModel run(std::string_view bytes) {
        ptree doc = read_xml_document(bytes);
        auto root_it = doc.begin();
        if (doc.empty() || root_it->first != "xmi:XMI") throw Error(ErrorKind::UnsupportedXmiVersion, "root element must be xmi:XMI");
        const ptree& root = root_it->second;
        if (attr(root, "xmi:version") != "2.1") throw Error(ErrorKind::UnsupportedXmiVersion, "xmi:version '" + attr(root, "xmi:version") + "'");

        const ptree* model = nullptr;
        for (const auto& [key, child] : root)
            if (key == "uml:Model" && !model) model = &child;
        if (!model) throw Error(ErrorKind::XmlSyntax, "no uml:Model element");

        bool profile = false;
        for (const auto& [key, child] : *model) {
            if (key != "profileApplication") continue;
            for (const auto& [k2, c2] : child)
                if (k2 == "appliedProfile" && attr(c2, "href").find("QuantUM") != std::string::npos) profile = true;
        }
        if (!profile) throw Error(ErrorKind::MissingProfileApplication, "model does not apply the QuantUM profile");

        // Stereotype applications.
        for (const auto& [key, child] : root) {
            if (key.rfind("QuantUM:", 0) != 0) continue;
            std::string stereo = key.substr(8);
            if (stereo == "QUMComponent") {
                std::string base = attr(child, "base_Class");
                if (base.empty()) base = attr(child, "base_Component");
                if (base.empty()) base = attr(child, "base_Interface");
                components_[base] = &child;
            } else if (stereo == "QUMStateConfiguration") {
                configs_[attr(child, "base_State")].push_back(&child);
            } else {
                transition_stereo_[attr(child, "base_Transition")] = {stereo, &child};
            }
        }

        RawModel out;
        out.name = attr(*model, "name");
        collect_classes(*model, out);
        return out;
    }

private:
    struct StateInfo {
        int machine_role = 0;  // 0 normal, 1 failure
        std::string machine_id;
        std::string path;  // dotted path from the machine root
    };

    void collect_classes(const ptree& container, RawModel& out) {
        for (const auto& [key, child] : container) {
            if (key != "packagedElement") continue;
            std::string type = attr(child, "xmi:type");
            if (type == "uml:Package") {
                collect_classes(child, out);
            } else if (type == "uml:Class" || type == "uml:Component" || type == "uml:Interface") {
                auto it = components_.find(attr(child, "xmi:id"));
                if (it != components_.end()) out.components.push_back(component(child, *it->second));
            }
        }
    }

    RawComponent component(const ptree& cls, const ptree& stereo) {
        RawComponent c;
        c.name = attr(cls, "name");
        states_.clear();
        operations_.clear();
        for (const auto& [key, child] : cls) {
            if (key == "ownedOperation") {
                operations_[attr(child, "xmi:id")] = attr(child, "name");
                c.operations.push_back(attr(child, "name"));
            } else if (key == "ownedAttribute") {
                RawAttribute a;
                a.name = attr(child, "name");
                a.lo = parse_int(attr(child, "lower", "0"), a.name);
                a.hi = parse_int(attr(child, "upper", "0"), a.name);
                a.init = parse_int(attr(child, "default", attr(child, "lower", "0")), a.name);
                c.attributes.push_back(a);
            }
        }
        for (const auto& [key, child] : stereo) {
            if (key != "rates") continue;
            c.rates.push_back({attr(child, "name"), parse_real(attr(child, "rate"), "rate " + attr(child, "name"))});
        }
        std::string normal_id = attr(stereo, "normalBehavior");
        auto failure_ids = split_ws(attr(stereo, "failurePatterns"));

        std::map<std::string, const ptree*> behaviors;
        std::vector<std::string> order;
        for (const auto& [key, child] : cls) {
            if (key == "ownedBehavior" && attr(child, "xmi:type") == "uml:StateMachine") {
                behaviors[attr(child, "xmi:id")] = &child;
                order.push_back(attr(child, "xmi:id"));
            }
        }
        // Index states of every machine first; failure entries refer across machines.
        for (const auto& id : order) {
            int role = id == normal_id ? 0 : 1;
            states_[id] = {role, id, ""};
            index_region_states(*behaviors[id], id, role, "");
        }
        if (!normal_id.empty() && behaviors.count(normal_id)) c.machines.push_back(machine(*behaviors[normal_id], false));
        for (const auto& fid : failure_ids) {
            if (!behaviors.count(fid)) throw Error(ErrorKind::XmlSyntax, "failure pattern '" + fid + "' is not a state machine of " + c.name);
            c.machines.push_back(machine(*behaviors[fid], true));
        }
        return c;
    }

    void index_region_states(const ptree& owner, const std::string& machine_id, int role, const std::string& prefix) {
        for (const auto& [key, region] : owner) {
            if (key != "region") continue;
            for (const auto& [k2, v] : region) {
                if (k2 != "subvertex" || attr(v, "xmi:type") != "uml:State") continue;
                std::string path = prefix.empty() ? attr(v, "name") : prefix + "." + attr(v, "name");
                states_[attr(v, "xmi:id")] = {role, machine_id, path};
                index_region_states(v, machine_id, role, path);
            }
        }
    }

    std::string initial_of(const ptree& owner) {
        for (const auto& [key, region] : owner) {
            if (key != "region") continue;
            std::string pseudo;
            for (const auto& [k2, v] : region)
                if (k2 == "subvertex" && attr(v, "xmi:type") == "uml:Pseudostate" && attr(v, "kind", "initial") == "initial") pseudo = attr(v, "xmi:id");
            for (const auto& [k2, v] : region)
                if (k2 == "transition" && !pseudo.empty() && attr(v, "source") == pseudo) {
                    auto it = states_.find(attr(v, "target"));
                    if (it == states_.end()) return {};
                    auto dot = it->second.path.rfind('.');
                    return dot == std::string::npos ? it->second.path : it->second.path.substr(dot + 1);
                }
        }
        return {};
    }

    std::vector<RawState> region_states(const ptree& owner) {
        std::vector<RawState> out;
        for (const auto& [key, region] : owner) {
            if (key != "region") continue;
            for (const auto& [k2, v] : region) {
                if (k2 != "subvertex" || attr(v, "xmi:type") != "uml:State") continue;
                RawState s;
                s.name = attr(v, "name");
                for (const auto& [k3, e] : v)
                    if (k3 == "entry") s.entry_ops.push_back(operation_name(attr(e, "operation")));
                auto cfg = configs_.find(attr(v, "xmi:id"));
                if (cfg != configs_.end()) {
                    for (const ptree* app : cfg->second) {
                        std::string op = attr(*app, "operator", "OR");
                        if (op != "AND" && op != "OR") throw Error(ErrorKind::XmlSyntax, "configuration operator must be AND or OR");
                        s.config_tags.push_back({attr(*app, "name"), op == "AND" ? ConfigOperator::And : ConfigOperator::Or});
                    }
                }
                s.children = region_states(v);
                if (!s.children.empty()) s.initial = initial_of(v);
                out.push_back(std::move(s));
            }
        }
        return out;
    }

    std::string operation_name(const std::string& id) {
        auto it = operations_.find(id);
        if (it != operations_.end()) return it->second;
        for (const auto& [oid, name] : all_operations_)
            if (oid == id) return name;
        return id;  // dangling; validation reports it
    }

    void collect_transitions(const ptree& owner, std::vector<RawTransition>& out) {
        for (const auto& [key, region] : owner) {
            if (key != "region") continue;
            for (const auto& [k2, v] : region) {
                if (k2 == "transition") {
                    auto src = states_.find(attr(v, "source"));
                    auto dst = states_.find(attr(v, "target"));
                    // Initial-pseudostate transitions carry no behaviour.
                    if (src == states_.end() && states_.count(attr(v, "target")) && !transition_stereo_.count(attr(v, "xmi:id"))) continue;
                    out.push_back(transition(v, src == states_.end() ? nullptr : &src->second,
                                             dst == states_.end() ? nullptr : &dst->second));
                } else if (k2 == "subvertex") {
                    collect_transitions(v, out);
                }
            }
        }
    }

    RawTransition transition(const ptree& v, const StateInfo* src, const StateInfo* dst) {
        RawTransition t;
        t.label = attr(v, "name");
        t.kind = TransitionKind::Plain;
        for (const auto& [key, child] : v) {
            if (key == "trigger") {
                t.kind = TransitionKind::OperationTrigger;
                t.operation = operation_name(attr(child, "operation"));
            } else if (key == "effect") {
                std::string type = attr(child, "xmi:type");
                if (type == "uml:CallOperationAction") {
                    t.kind = TransitionKind::OperationCall;
                    t.operation = operation_name(attr(child, "operation"));
                } else {
                    t.updates = attr(child, "body");
                }
            } else if (key == "guard") {
                t.guard = attr(child, "body");
            }
        }
        auto st = transition_stereo_.find(attr(v, "xmi:id"));
        if (st != transition_stereo_.end()) {
            const auto& [name, app] = st->second;
            static const std::map<std::string, TransitionKind> kinds = {
                {"QUMStochasticTransition", TransitionKind::Stochastic},
                {"QUMAbstractStochasticTransition", TransitionKind::AbstractStochastic},
                {"QUMFailureTransition", TransitionKind::Failure},
                {"QUMAbstractFailureTransition", TransitionKind::AbstractFailure},
                {"QUMRepairTransition", TransitionKind::Repair},
                {"QUMAbstractRepairTransition", TransitionKind::AbstractRepair},
            };
            auto k = kinds.find(name);
            if (k == kinds.end()) throw Error(ErrorKind::XmlSyntax, "unknown stereotype QuantUM:" + name);
            bool abstract = is_abstract(k->second);
            if (t.kind != TransitionKind::OperationCall) t.kind = k->second;
            std::string rate = attr(*app, "rate");
            if (!rate.empty()) t.rate = parse_real(rate, "transition rate");
            if (abstract) t.rate_name = attr(*app, "name");
        }
        if (src) t.source = src->path.empty() ? "*" : src->path;
        else t.source = "?" + attr(v, "source");
        if (dst) t.target = dst->path;
        else t.target = "?" + attr(v, "target");
        return t;
    }

    RawMachine machine(const ptree& sm, bool failure) {
        RawMachine m;
        m.name = attr(sm, "name");
        m.failure = failure;
        m.states = region_states(sm);
        m.initial = initial_of(sm);
        collect_transitions(sm, m.transitions);
        return m;
    }

    std::map<std::string, const ptree*> components_;
    std::map<std::string, std::vector<const ptree*>> configs_;
    std::map<std::string, std::pair<std::string, const ptree*>> transition_stereo_;
    std::map<std::string, StateInfo> states_;
    std::map<std::string, std::string> operations_;
    std::map<std::string, std::string> all_operations_;

public:
    void preload_operations(const ptree& model) {
        std::function<void(const ptree&)> walk = [&](const ptree& node) {
            for (const auto& [key, child] : node) {
                if (key == "ownedOperation") all_operations_[attr(child, "xmi:id")] = attr(child, "name");
                if (key != "<xmlattr>") walk(child);
            }
        };
        walk(model);
    }
};

}  // namespace detail

/// Reads the pinned XMI 2.1 subset into a raw model.
inline RawModel parse_xmi(std::string_view bytes) {
    detail::XmiReader reader;
    {
        // Operations are referenced across classes (entry calls, call effects).
        ptree doc = detail::read_xml_document(bytes);
        if (!doc.empty()) reader.preload_operations(doc.begin()->second);
    }
    return reader.run(bytes);
}

struct InteractionSummary {
    std::string name;
    std::vector<std::string> lifelines;
    std::vector<std::string> operands;  // names of the top-level alt operands
    std::size_t messages = 0;
};

/// Lists the sequence-diagram interactions contained in an XMI document.
inline std::vector<InteractionSummary> xmi_interactions(std::string_view bytes) {
    ptree doc = detail::read_xml_document(bytes);
    std::vector<InteractionSummary> out;
    std::function<void(const ptree&)> walk = [&](const ptree& node) {
        for (const auto& [key, child] : node) {
            if (key == "<xmlattr>") continue;
            if ((key == "packagedElement" || key == "ownedBehavior") && detail::attr(child, "xmi:type") == "uml:Interaction") {
                InteractionSummary s;
                s.name = detail::attr(child, "name");
                for (const auto& [k2, c2] : child) {
                    if (k2 == "lifeline") s.lifelines.push_back(detail::attr(c2, "name"));
                    if (k2 == "message") ++s.messages;
                    if (k2 == "fragment" && detail::attr(c2, "interactionOperator") == "alt")
                        for (const auto& [k3, c3] : c2)
                            if (k3 == "operand") s.operands.push_back(detail::attr(c3, "name"));
                }
                out.push_back(std::move(s));
            } else {
                walk(child);
            }
        }
    };
    walk(doc);
    return out;
}

}  // namespace quantum
