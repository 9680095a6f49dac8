#include <gtest/gtest.h>

#include <string>

#include "quantum/csl.hpp"
#include "quantum/prism_check.hpp"
#include "support.hpp"

using namespace quantum;
using testing_support::native;

TEST(Csl, UntilTemplate) {
    EXPECT_EQ(until_template("mc_state > 3"), "P=? [ (true) U<=T (mc_state > 3) ]");
    EXPECT_EQ(until_template("x", "Tmax"), "P=? [ (true) U<=Tmax (x) ]");
}

TEST(Csl, ComponentFailureUsesNormalStateCount) {
    auto m = native(R"(
model M
component MC {
  machine normal N { initial A state A state B state C state D }
  machine failure F { initial X state X transition f : failure * -> X rate 1 }
}
)");
    auto enc = assign_ids(m).front();
    auto p = component_failure(m.components[0], enc);
    EXPECT_EQ(p.text, "P=? [ (true) U<=T (mc_state > 3) ]");
    EXPECT_EQ(p.category, CslCategory::ComponentFailure);
    EXPECT_EQ(p.source, "MC");
}

TEST(Csl, FailureOnlyComponentUsesIdleBoundary) {
    auto m = native("model M component Ext { machine failure F { initial X state X transition f : failure * -> X rate 1 } }");
    auto enc = assign_ids(m).front();
    EXPECT_EQ(component_failure(m.components[0], enc).text, "P=? [ (true) U<=T (ext_state >= 1) ]");
}

TEST(Csl, AnyFailureSingleComponentHasNoJoin) {
    auto m = native(testing_support::two_state());
    EXPECT_EQ(any_failure(m, assign_ids(m)).text, "P=? [ (true) U<=T (mc_state > 0) ]");
}

TEST(Csl, StateConfigurationHasLabelAndRawForms) {
    auto m = native(testing_support::two_state());
    auto props = state_config_property(*m.config("down"), assign_ids(m));
    ASSERT_EQ(props.size(), 2u);
    EXPECT_EQ(props[0].text, "P=? [ (true) U<=T (down) ]");
    EXPECT_EQ(props[0].expanded, "P=? [ (true) U<=T ((mc_state=1)) ]");
    EXPECT_EQ(props[1].category, CslCategory::RawStateFormula);
    EXPECT_EQ(props[1].text, "(mc_state=1)");
}

TEST(Csl, AirbagMatchesGoldenFile) {
    auto m = testing_support::airbag();
    std::string text = emit_csl(generate_properties(m, assign_ids(m)));
    EXPECT_EQ(text, testing_support::slurp(std::string(QUANTUM_GOLDEN_DIR) + "/airbag.csl"));
}

TEST(Csl, EveryPropertyChecksAgainstTheEmittedModel) {
    auto g = build_global(testing_support::airbag());
    auto table = prism::check_program(prism::parse_program(emit_model(g).text()));
    auto props = generate_properties(g.model, g.encodings);
    EXPECT_NO_THROW(prism::check_properties(prism::parse_properties(emit_csl(props)), table));
    EXPECT_NO_THROW(prism::check_properties(prism::parse_properties(emit_csl(props, true)), table));
    EXPECT_EQ(prism::parse_properties(emit_csl(props)).size(), props.size());
}

TEST(Csl, CommentPrecedesEachProperty) {
    auto m = native(testing_support::two_state());
    std::string text = emit_csl(generate_properties(m, assign_ids(m)));
    EXPECT_EQ(text,
              "// component failure: MC\nP=? [ (true) U<=T (mc_state > 0) ]\n"
              "// any failure: Tiny\nP=? [ (true) U<=T (mc_state > 0) ]\n"
              "// state configuration: down\nP=? [ (true) U<=T (down) ]\n"
              "// state formula: down\n(mc_state=1)\n");
}

TEST(Csl, UnknownIdentifierInPropertyIsRejected) {
    auto g = build_global(testing_support::airbag());
    auto table = prism::check_program(prism::parse_program(emit_model(g).text()));
    EXPECT_THROW(prism::check_properties(prism::parse_properties("P=? [ (true) U<=T (nosuch) ]\n"), table), Error);
}
