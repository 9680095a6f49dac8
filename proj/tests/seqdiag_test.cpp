#include <gtest/gtest.h>

#include <string>

#include "quantum/seqdiag.hpp"
#include "support.hpp"

using namespace quantum;
using testing_support::model_path;
using testing_support::native;
using testing_support::slurp;

namespace {

const char* kPair = R"(
model Pair
component A {
  machine normal N { initial Up state Up }
  machine failure F { initial Down state Down tag both AND transition FailA : failure * -> Down rate 0.1 }
}
component B {
  machine normal N { initial Up state Up }
  machine failure F { initial Down state Down tag both AND transition FailB : failure * -> Down rate 0.2 }
}
)";

CausalClass make_class(std::vector<std::string> seq, double p, std::vector<std::pair<std::size_t, std::size_t>> order = {}) {
    CausalClass c;
    c.sequence = std::move(seq);
    c.probability = p;
    c.order = std::move(order);
    c.members = 1;
    return c;
}

std::size_t count_lines_starting(const std::string& text, const std::string& prefix) {
    std::size_t n = 0, pos = 0;
    while (pos < text.size()) {
        std::size_t end = text.find('\n', pos);
        if (end == std::string::npos) end = text.size();
        if (text.compare(pos, prefix.size(), prefix) == 0) ++n;
        pos = end + 1;
    }
    return n;
}

SequenceDiagram airbag_diagram(const GlobalModel& g) {
    Ctmc c = build_ctmc(g);
    auto hazard = config_predicate(g, "inadvertent_deployment");
    auto target = mark_states(c, hazard);
    double p = transient_until(c, target, 10.0);
    CounterexampleOptions opt;
    opt.mass_fraction = 0.99;
    auto ce = collect_counterexample(c, target, 10.0, p, opt);
    return build_diagram(build_fault_tree(ce, g, hazard, "inadvertent_deployment").classes, g, "inadvertent_deployment");
}

}  // namespace

TEST(Diagram, SingleFailureIsOneSelfMessage) {
    auto g = build_global(native(testing_support::two_state("Pump", 0.1)));
    auto d = build_diagram({make_class({"fail"}, 0.3)}, g, "down");
    ASSERT_EQ(d.operands.size(), 1u);
    EXPECT_EQ(d.operands[0].name, "P=3.00000e-01");
    ASSERT_EQ(d.operands[0].steps.size(), 1u);
    const Message& m = d.operands[0].steps[0].messages.at(0);
    EXPECT_FALSE(d.operands[0].steps[0].par);
    EXPECT_TRUE(m.self());
    EXPECT_EQ(m.number, 1u);
    EXPECT_EQ(m.text, "transition(\"Ok\",\"Failed\")");
}

TEST(Diagram, UnorderedEventsShareAParFragment) {
    auto g = build_global(native(kPair));
    auto d = build_diagram({make_class({"FailA", "FailB"}, 0.02)}, g);
    ASSERT_EQ(d.operands.size(), 1u);
    ASSERT_EQ(d.operands[0].steps.size(), 1u);
    const Step& s = d.operands[0].steps[0];
    EXPECT_TRUE(s.par);
    ASSERT_EQ(s.messages.size(), 2u);
    EXPECT_EQ(s.messages[0].from, 0u);
    EXPECT_EQ(s.messages[1].from, 1u);

    std::string puml = emit_plantuml(d);
    EXPECT_NE(puml.find("  par\n    L0 -> L0 : 1: transition(\"Up\",\"Down\")\n  else\n    L1 -> L1 : 2: transition(\"Up\",\"Down\")\n  end\n"),
              std::string::npos)
        << puml;
}

TEST(Diagram, OrderedEventsStaySequential) {
    auto g = build_global(testing_support::airbag());
    auto d = build_diagram({make_class({"MicroControllerFailure", "enableFET", "armFASIC", "fireFASIC"}, 0.04, {{0, 1}, {1, 2}, {2, 3}})}, g);
    const Operand& op = d.operands.at(0);
    ASSERT_EQ(op.steps.size(), 4u);
    for (const auto& s : op.steps) EXPECT_FALSE(s.par);
    auto msgs = op.messages();
    const std::size_t mc = *g.model.component_index("MicroController");
    const std::size_t fet = *g.model.component_index("FET");
    const std::size_t fasic = *g.model.component_index("FASIC");
    EXPECT_TRUE(msgs[0]->self());
    EXPECT_EQ(msgs[1]->from, mc);
    EXPECT_EQ(msgs[1]->to, fet);
    EXPECT_EQ(msgs[1]->text, "enableFET()");
    EXPECT_EQ(msgs[2]->to, fasic);
    EXPECT_EQ(msgs[3]->text, "fireFASIC()");
    for (std::size_t i = 0; i < msgs.size(); ++i) EXPECT_EQ(msgs[i]->number, i + 1);
}

TEST(Diagram, OperandsSortedByProbability) {
    auto g = build_global(native(kPair));
    auto d = build_diagram({make_class({"FailA"}, 0.1), make_class({"FailB"}, 0.5)}, g);
    ASSERT_EQ(d.operands.size(), 2u);
    EXPECT_EQ(d.operands[0].probability, 0.5);
    std::string puml = emit_plantuml(d);
    EXPECT_EQ(count_lines_starting(puml, "alt P="), 1u);
    EXPECT_EQ(count_lines_starting(puml, "else P="), 1u);
    EXPECT_LT(puml.find("alt P=5.00000e-01"), puml.find("else P=1.00000e-01"));
}

TEST(Diagram, AirbagHasOneOperandPerClass) {
    auto g = build_global(testing_support::airbag());
    auto d = airbag_diagram(g);
    EXPECT_EQ(d.operands.size(), 5u);
    EXPECT_EQ(d.lifelines.size(), 5u);
    std::string puml = emit_plantuml(d);
    EXPECT_EQ(puml.rfind("@startuml\n", 0), 0u);
    EXPECT_EQ(puml.substr(puml.size() - 8), "@enduml\n");
    EXPECT_EQ(count_lines_starting(puml, "alt P="), 1u);
    EXPECT_EQ(count_lines_starting(puml, "else P="), 4u);
    EXPECT_EQ(count_lines_starting(puml, "participant "), 5u);
}

TEST(Diagram, EmptyDiagramIsWellFormed) {
    auto g = build_global(native(kPair));
    std::string puml = emit_plantuml(build_diagram({}, g, "both"));
    EXPECT_EQ(puml, "@startuml\ntitle both\nparticipant \"A\" as L0\nparticipant \"B\" as L1\n@enduml\n");
}

TEST(XmiExport, AppendsInteractionAndKeepsTheModel) {
    const std::string original = slurp(model_path("minimal.xmi"));
    QumModel m = validate_or_throw(parse_xmi(original));
    auto g = build_global(m);
    auto d = build_diagram({make_class({"Leak"}, 0.6)}, g, "leak");
    EXPECT_TRUE(xmi_interactions(original).empty());

    std::string once = append_xmi(d, original);
    auto found = xmi_interactions(once);
    ASSERT_EQ(found.size(), 1u);
    EXPECT_EQ(found[0].name, "leak");
    EXPECT_EQ(found[0].lifelines, std::vector<std::string>{"Pump"});
    EXPECT_EQ(found[0].operands, std::vector<std::string>{"P=6.00000e-01"});
    EXPECT_EQ(found[0].messages, 1u);
    EXPECT_EQ(validate_or_throw(parse_xmi(once)), m);

    std::string twice = append_xmi(d, once);
    EXPECT_EQ(xmi_interactions(twice).size(), 2u);
    EXPECT_NE(twice.find("qumcx2_pkg"), std::string::npos);
    EXPECT_EQ(validate_or_throw(parse_xmi(twice)), m);
}

TEST(XmiExport, OriginalBytesArePreserved) {
    const std::string original = slurp(model_path("minimal.xmi"));
    auto g = build_global(validate_or_throw(parse_xmi(original)));
    std::string out = append_xmi(build_diagram({make_class({"Leak"}, 0.6)}, g), original);
    const std::size_t cut = original.rfind("</uml:Model>");
    EXPECT_EQ(out.substr(0, cut), original.substr(0, cut));
    EXPECT_EQ(out.substr(out.size() - (original.size() - cut)), original.substr(cut));
    EXPECT_NE(out.find("<!-- one component, one failure pattern -->"), std::string::npos);
}

TEST(XmiExport, AirbagInteraction) {
    const std::string original = slurp(model_path("airbag.xmi"));
    auto g = build_global(validate_or_throw(parse_xmi(original)));
    auto found = xmi_interactions(append_xmi(airbag_diagram(g), original));
    ASSERT_EQ(found.size(), 1u);
    EXPECT_EQ(found[0].operands.size(), 5u);
    EXPECT_EQ(found[0].lifelines.size(), 5u);
}

TEST(XmiExport, MalformedInputRejected) {
    auto g = build_global(native(kPair));
    try {
        append_xmi(build_diagram({}, g), "<xmi:XMI><uml:Model>");
        FAIL();
    } catch (const Error& e) {
        EXPECT_EQ(e.kind(), ErrorKind::XmlSyntax);
    }
}

TEST(XmiExport, EscapesMarkup) {
    SequenceDiagram d;
    d.title = "a<b & \"c\"";
    d.lifelines = {"L&1"};
    std::string xmi = interaction_xmi(d, "p_");
    EXPECT_NE(xmi.find("name=\"a&lt;b &amp; &quot;c&quot;\""), std::string::npos);
    EXPECT_NE(xmi.find("name=\"L&amp;1\""), std::string::npos);
}
