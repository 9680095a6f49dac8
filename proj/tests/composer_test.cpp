#include <gtest/gtest.h>

#include <algorithm>
#include <string>
#include <vector>

#include "quantum/composer.hpp"
#include "support.hpp"

using namespace quantum;
using testing_support::native;

namespace {

std::size_t count_kind(const ComposedMachine& m, FlatKind k) {
    return static_cast<std::size_t>(
        std::count_if(m.flat_transitions.begin(), m.flat_transitions.end(), [&](const FlatTransition& t) { return t.kind == k; }));
}

int state_of(const GlobalModel& g, const std::string& component, std::span<const int> s) {
    auto c = *g.model.component_index(component);
    return s[g.offsets[c]];
}

int id_of(const GlobalModel& g, const std::string& component, const std::string& state) {
    return g.encodings[*g.model.component_index(component)].find(state).id;
}

ErrorKind kind_of(const std::function<void()>& f) {
    try {
        f();
    } catch (const Error& e) {
        return e.kind();
    }
    ADD_FAILURE() << "no error raised";
    return ErrorKind::Io;
}

const char* kCallerCallee = R"(
model CC
component Caller {
  machine normal N { initial Idle state Idle state Asked
    transition ask : call Idle -> Asked rate 2 op ping }
  machine failure F { initial Dead state Dead transition die : failure * -> Dead rate 0.5 }
}
component Callee {
  operation ping
  machine normal N { initial Waiting state Waiting state Done
    transition ping : trigger Waiting -> Done op ping }
  machine failure F { initial Dead state Dead transition die2 : failure * -> Dead rate 0.25 }
}
)";

}  // namespace

TEST(Compose, FailureEntryRacesFromEveryNormalLeaf) {
    auto m = native(R"(
model M
component MC {
  machine normal N { initial A state A state B { initial B1 state B1 state B2 } }
  machine failure F { initial X state X transition f : failure * -> X rate 0.01 }
}
)");
    auto enc = assign_ids(m).front();
    auto cm = compose(m.components[0], enc);
    ASSERT_EQ(count_kind(cm, FlatKind::FailureEntry), 3u);
    std::vector<int> sources;
    for (const auto& t : cm.flat_transitions) {
        EXPECT_EQ(t.target, enc.find("X").id);
        EXPECT_EQ(t.rate, 0.01);
        sources.push_back(t.source);
    }
    EXPECT_EQ(sources, (std::vector<int>{enc.find("A").id, enc.find("B1").id, enc.find("B2").id}));
}

TEST(Compose, CompositeSourceReplicatesToLeavesAndTargetEntersInitial) {
    auto m = native(R"(
model M
component MC {
  machine normal N { initial A
    state A { initial A2 state A1 state A2 }
    state B
    transition leave : stochastic A -> B rate 3
    transition back : stochastic B -> A rate 4 }
  machine failure F { initial X state X transition f : failure * -> X rate 1 }
}
)");
    auto enc = assign_ids(m).front();
    auto cm = compose(m.components[0], enc);
    EXPECT_EQ(cm.initial, enc.find("A2").id);
    int leaving = 0;
    for (const auto& t : cm.flat_transitions) {
        if (t.label == "leave") {
            ++leaving;
            EXPECT_EQ(t.target, enc.find("B").id);
        }
        if (t.label == "back") EXPECT_EQ(t.target, enc.find("A2").id);
    }
    EXPECT_EQ(leaving, 2);
}

TEST(Compose, UntimedTransitionsUseTheFastRate) {
    auto m = native(R"(
model M
component MC {
  machine normal N { initial A state A state B transition go : plain A -> B }
  machine failure F { initial X state X transition f : failure * -> X rate 1 }
}
)");
    auto cm = compose(m.components[0], assign_ids(m).front(), 1234.0);
    auto it = std::find_if(cm.flat_transitions.begin(), cm.flat_transitions.end(), [](const FlatTransition& t) { return t.label == "go"; });
    ASSERT_NE(it, cm.flat_transitions.end());
    EXPECT_EQ(it->rate, 1234.0);
}

TEST(Compose, DeeperTriggerShadowsReplicatedOne) {
    auto m = native(R"(
model M
component User {
  machine normal N { initial A state A state B transition c : call A -> B rate 1 op poke }
  machine failure F { initial X state X transition f : failure * -> X rate 1 }
}
component Box {
  operation poke
  machine normal N { initial Outer
    state Outer { initial In1 state In1 state In2 }
    state Gone
    transition outer : trigger Outer -> Gone op poke
    transition inner : trigger Outer.In1 -> Outer.In2 op poke }
  machine failure F { initial X state X transition f : failure * -> X rate 1 }
}
)");
    auto g = build_global(m);
    const auto& box = g.machines[1];
    const auto& enc = g.encodings[1];
    std::vector<std::pair<int, int>> triggers;
    for (const auto& t : box.flat_transitions)
        if (t.kind == FlatKind::Trigger) triggers.emplace_back(t.source, t.target);
    std::sort(triggers.begin(), triggers.end());
    EXPECT_EQ(triggers, (std::vector<std::pair<int, int>>{{enc.find("In1").id, enc.find("In2").id}, {enc.find("In2").id, enc.find("Gone").id}}));
}

TEST(Compose, EntryOperationTurnsIncomingTransitionIntoCall) {
    auto g = build_global(testing_support::airbag());
    const auto& mc = g.machines[*g.model.component_index("MicroController")];
    auto it = std::find_if(mc.flat_transitions.begin(), mc.flat_transitions.end(), [](const FlatTransition& t) { return t.action == "enableFET" && t.rate == kDefaultFastRate; });
    ASSERT_NE(it, mc.flat_transitions.end());
    EXPECT_EQ(it->kind, FlatKind::Call);
    EXPECT_EQ(it->label, "enableFET");
}

TEST(Global, CallSynchronizesWithTrigger) {
    auto g = build_global(native(kCallerCallee));
    ASSERT_EQ(g.sync_actions.size(), 1u);
    EXPECT_EQ(g.sync_actions[0].caller, 0u);
    EXPECT_EQ(g.sync_actions[0].callee, 1u);

    auto moves = g.successors(g.initial_state());
    auto it = std::find_if(moves.begin(), moves.end(), [](const GlobalMove& m) { return m.label == "ping"; });
    ASSERT_NE(it, moves.end());
    EXPECT_EQ(it->rate, 2.0);
    EXPECT_EQ(state_of(g, "Caller", it->target), id_of(g, "Caller", "Asked"));
    EXPECT_EQ(state_of(g, "Callee", it->target), id_of(g, "Callee", "Done"));
    // Triggers never move on their own.
    EXPECT_EQ(std::count_if(moves.begin(), moves.end(), [](const GlobalMove& m) { return m.label == "ping"; }), 1);
}

TEST(Global, CallIntoFailedCalleeIsDiscarded) {
    auto g = build_global(native(kCallerCallee));
    std::vector<std::string> events{"die2", "ping"};
    auto r = replay(g, events);
    ASSERT_TRUE(r.ok());
    EXPECT_EQ(state_of(g, "Caller", r.final_state), id_of(g, "Caller", "Asked"));
    EXPECT_EQ(state_of(g, "Callee", r.final_state), id_of(g, "Callee", "Dead"));
}

TEST(Global, AirbagStuckHighFetIgnoresEnable) {
    auto g = build_global(testing_support::airbag());
    std::vector<std::string> events{"FETStuckHigh", "MicroControllerFailure", "enableFET"};
    auto r = replay(g, events);
    ASSERT_TRUE(r.ok());
    EXPECT_EQ(state_of(g, "FET", r.final_state), id_of(g, "FET", "StuckHigh"));
    EXPECT_EQ(state_of(g, "MicroController", r.final_state), id_of(g, "MicroController", "FETEnabled"));
}

TEST(Global, AirbagFailureChainDeploys) {
    auto g = build_global(testing_support::airbag());
    std::vector<std::string> events{"MicroControllerFailure", "enableFET", "armFASIC", "fireFASIC"};
    auto r = replay(g, events);
    ASSERT_TRUE(r.ok());
    EXPECT_EQ(state_of(g, "FASIC", r.final_state), id_of(g, "FASIC", "Deployed"));
    EXPECT_TRUE(config_predicate(g, "inadvertent_deployment")(r.final_state));
    EXPECT_FALSE(config_predicate(g, "inadvertent_deployment")(r.states[3]));
}

TEST(Global, GuardSelectsBetweenTriggers) {
    auto g = build_global(testing_support::airbag());
    std::vector<std::string> events{"MicroControllerFailure", "armFASIC", "fireFASIC"};
    auto r = replay(g, events);
    ASSERT_TRUE(r.ok());
    EXPECT_EQ(state_of(g, "FASIC", r.final_state), id_of(g, "FASIC", "FiredUnpowered"));
}

TEST(Global, InitialStateAndLayout) {
    auto g = build_global(testing_support::airbag());
    EXPECT_EQ(g.width, 8u);  // five state slots, three attributes
    auto s = g.initial_state();
    EXPECT_EQ(state_of(g, "FASIC", s), id_of(g, "FASIC", "Idle"));
    EXPECT_EQ(state_of(g, "MicroController", s), id_of(g, "MicroController", "Evaluating"));
    // With accelerations at zero only failures change the state initially.
    for (const auto& mv : g.successors(s))
        if (mv.target != s) EXPECT_EQ(mv.transition->kind, FlatKind::FailureEntry) << mv.label;
}

TEST(Global, UncalledTriggersAreRemoved) {
    auto g = build_global(native(R"(
model M
component Lonely {
  operation ping
  machine normal N { initial A state A state B transition ping : trigger A -> B op ping }
  machine failure F { initial X state X transition f : failure * -> X rate 1 }
}
)"));
    EXPECT_EQ(count_kind(g.machines[0], FlatKind::Trigger), 0u);
    EXPECT_EQ(count_kind(g.machines[0], FlatKind::Discard), 0u);
    EXPECT_TRUE(g.sync_actions.empty());
}

TEST(Global, CallWithoutAnyTriggerIsUnbound) {
    EXPECT_EQ(kind_of([] {
                  build_global(native(R"(
model M
component A {
  machine normal N { initial P state P state Q transition c : call P -> Q rate 1 op ping }
  machine failure F { initial X state X transition f : failure * -> X rate 1 }
}
component B {
  operation ping
  machine normal N { initial P state P }
  machine failure F { initial X state X transition f : failure * -> X rate 1 }
}
)"));
              }),
              ErrorKind::UnboundOperation);
}

TEST(Global, TwoCallersOfOneOperationAreAmbiguous) {
    std::string text = kCallerCallee;
    text += R"(
component Other {
  machine normal N { initial P state P state Q transition c : call P -> Q rate 1 op ping }
  machine failure F { initial X state X transition f3 : failure * -> X rate 1 }
}
)";
    EXPECT_EQ(kind_of([&] { build_global(native(text)); }), ErrorKind::AmbiguousOperation);
}

TEST(Global, UpdateOutsideAttributeRange) {
    auto g = build_global(native(R"(
model M
component A {
  attribute n : [0..1] init 1
  machine normal N { initial P state P transition inc : stochastic P -> P rate 1 do "n = n + 1" }
  machine failure F { initial X state X transition f : failure * -> X rate 1 }
}
)"));
    EXPECT_EQ(kind_of([&] { g.successors(g.initial_state()); }), ErrorKind::AttributeOutOfRange);
}

TEST(Replay, StopsAtFirstDisabledEvent) {
    auto g = build_global(testing_support::airbag());
    std::vector<std::string> events{"FASICShortage", "enableFET"};
    auto r = replay(g, events);
    ASSERT_TRUE(r.stuck.has_value());
    EXPECT_EQ(*r.stuck, 1u);
    EXPECT_EQ(r.states.size(), 2u);
}

TEST(Replay, UnknownLabel) {
    auto g = build_global(testing_support::airbag());
    std::vector<std::string> events{"Meteor"};
    EXPECT_EQ(kind_of([&] { replay(g, events); }), ErrorKind::UnknownEvent);
}

TEST(Replay, StopPredicateEndsEarly) {
    auto g = build_global(testing_support::airbag());
    std::vector<std::string> events{"FASICShortage", "FETStuckHigh"};
    auto hazard = config_predicate(g, "inadvertent_deployment");
    auto r = replay(g, events, hazard);
    EXPECT_EQ(r.moves.size(), 1u);
    EXPECT_TRUE(replay_reaches(g, events, hazard));
}

TEST(Predicates, UnknownConfigAndComponentFailure) {
    auto g = build_global(testing_support::airbag());
    EXPECT_EQ(kind_of([&] { config_predicate(g, "nope"); }), ErrorKind::UnknownConfig);
    auto fet_failed = component_failed(g, *g.model.component_index("FET"));
    auto s = g.initial_state();
    EXPECT_FALSE(fet_failed(s));
    std::vector<std::string> events{"FETStuckHigh"};
    EXPECT_TRUE(fet_failed(replay(g, events).final_state));
}
