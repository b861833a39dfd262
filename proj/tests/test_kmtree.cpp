#include <gtest/gtest.h>

#include <set>

#include "helpers.hpp"
#include "wpn/kmtree.hpp"
#include "wpn/reduce.hpp"
#include "wpn/semantics.hpp"

using namespace wpn;
using wpn::test::om;
using wpn::test::W;

namespace {

bool same_downward(const std::vector<OmegaMarking>& a, const std::vector<OmegaMarking>& b) {
  auto covered = [](const OmegaMarking& x, const std::vector<OmegaMarking>& s) {
    for (const auto& y : s)
      if (leq(x, y)) return true;
    return false;
  };
  for (const auto& x : a)
    if (!covered(x, b)) return false;
  for (const auto& x : b)
    if (!covered(x, a)) return false;
  return true;
}

}  // namespace

TEST(KMTree, RunningExampleCoverabilitySet) {
  KMTree t = build_km(wpn::test::load("n1.wpn"));
  auto cs = coverability_set(t);
  EXPECT_EQ(cs, (std::vector<OmegaMarking>{om({1, 0, 0}), om({0, W, W})}));
  EXPECT_TRUE(place_bounded(t, 0));
  EXPECT_FALSE(place_bounded(t, 1));
  EXPECT_FALSE(place_bounded(t, 2));
  EXPECT_FALSE(is_bounded(t));
  EXPECT_TRUE(coverable(t, Marking{0, 1, 1}));
  EXPECT_FALSE(coverable(t, Marking{2, 0, 0}));
}

TEST(KMTree, PrimedNet) {
  KMTree t = build_km(wpn::test::load("n1prime.wpn"));
  EXPECT_TRUE(same_downward(coverability_set(t), {om({1, 0, 0}), om({0, W, W})}));
}

TEST(KMTree, TreeShape) {
  KMTree t = build_km(wpn::test::load("n1.wpn"));
  EXPECT_EQ(t.node(0).label, om({1, 0, 0}));
  EXPECT_EQ(t.node(1).label, om({0, W, 0}));
  EXPECT_EQ(t.node(2).label, om({0, W, 2}));
  EXPECT_EQ(t.node(4).label, om({0, W, W}));
  for (NodeId n = 0; n < t.size(); ++n) {
    const KMNode& k = t.node(n);
    if (k.parent) {
      auto ps = omega_support(t.node(*k.parent).label), cs = omega_support(k.label);
      EXPECT_TRUE(std::includes(cs.begin(), cs.end(), ps.begin(), ps.end()));
    }
    if (k.stopped) {
      ASSERT_TRUE(k.jump_target.has_value());
      EXPECT_EQ(t.node(*k.jump_target).label, k.label);
      EXPECT_TRUE(k.children.empty());
    }
  }
  EXPECT_LE(t.max_call_depth(), t.net().place_count() + 1);
}

TEST(KMTree, ChildrenPerEnabledTransition) {
  KMTree t = build_km(wpn::test::load("n1.wpn"));
  for (NodeId n = 0; n < t.size(); ++n) {
    const KMNode& k = t.node(n);
    if (k.stopped) continue;
    std::size_t en = 0;
    for (const auto& tr : t.net().transitions) en += enabled(k.label, tr);
    EXPECT_EQ(k.children.size(), en) << "node " << n;
  }
}

TEST(KMTree, Post) {
  Net n1 = wpn::test::load("n1.wpn");
  std::vector<KMNode> nodes(2);
  nodes[0].label = om({0, W, 0});
  nodes[0].children = {1};
  nodes[1].label = om({0, W, 2});
  nodes[1].parent = 0;
  nodes[1].via = 1;
  EXPECT_EQ(post(n1, nodes, 1, n1.transitions[1]), om({0, W, W}));
  EXPECT_EQ(post(n1, nodes, 0, n1.transitions[1]), om({0, W, 2}));
}

// t fires once; pumping a must not make p unbounded
TEST(KMTree, AccelerationNeedsGrowthToNewMarking) {
  Net n{"once", {"q", "r", "p"}, {{"a", {0, 0, 0}, {1, 0, 0}}, {"t", {0, 1, 0}, {0, 0, 1}}}, Marking{0, 1, 0}};
  KMTree tree = build_km(n);
  EXPECT_TRUE(place_bounded(tree, 2));
  EXPECT_FALSE(place_bounded(tree, 0));
  EXPECT_FALSE(coverable(tree, Marking{0, 0, 2}));
  EXPECT_TRUE(coverable(tree, Marking{5, 0, 1}));
}

TEST(KMTree, SelfLoopStops) {
  Net n{"loop", {"p"}, {{"t", {1}, {1}}}, Marking{1}};
  KMTree t = build_km(n);
  ASSERT_EQ(t.size(), 2u);
  EXPECT_TRUE(t.node(1).stopped);
  EXPECT_EQ(t.node(1).jump_target, NodeId{0});
}

TEST(KMTree, DeadNet) {
  Net n{"dead", {"p"}, {{"t", {1}, {0}}}, Marking{0}};
  EXPECT_EQ(build_km(n).size(), 1u);
  EXPECT_EQ(coverability_set(build_km(n)), std::vector<OmegaMarking>{om({0})});
}

TEST(KMTree, Budget) {
  KMOptions o;
  o.max_nodes = 3;
  EXPECT_THROW(build_km(wpn::test::load("n1.wpn"), o), BudgetExceeded);
}

TEST(Regions, RunningExample) {
  KMTree t = build_km(wpn::test::load("n1.wpn"));
  std::set<std::vector<bool>> supports;
  for (const auto& r : region_graphs(t)) {
    supports.insert(r.support);
    for (NodeId v : r.vertices) {
      std::vector<bool> s(3);
      for (PlaceId p : omega_support(t.node(v).label)) s[p] = true;
      EXPECT_EQ(s, r.support);
    }
    for (const auto& e : r.edges)
      if (!e.transition) {
        EXPECT_EQ(t.node(e.from).label, t.node(e.to).label);
      }
  }
  EXPECT_EQ(supports, (std::set<std::vector<bool>>{{false, false, false}, {false, true, false}, {false, true, true}}));
}

TEST(SelfCovering, RunningExample) {
  KMTree t = build_km(wpn::test::load("n1.wpn"));
  auto w = find_self_covering(t);
  ASSERT_TRUE(w.has_value());
  auto ts = w->loop_transitions();
  EXPECT_NE(std::find(ts.begin(), ts.end(), 3u), ts.end());
  EXPECT_EQ(w->total_effect, (EffectVector{0, 0, 0}));
  EXPECT_FALSE(w->pi2.empty());
  EXPECT_TRUE(nonnegative(w->total_effect));
  for (const auto& s : w->pi2) EXPECT_TRUE(same_support(t.node(s.from).label, w->start_label));
}

TEST(SelfCovering, PrimedNetNone) { EXPECT_FALSE(find_self_covering(build_km(wpn::test::load("n1prime.wpn")))); }

TEST(SelfCovering, UsesJumpEdge) {
  // token moves p -> q -> p; no single tree edge is nonnegative
  Net n{"jump", {"p", "q"}, {{"a", {1, 0}, {0, 1}}, {"b", {0, 1}, {1, 0}}}, Marking{1, 0}};
  KMTree t = build_km(n);
  auto w = find_self_covering(t);
  ASSERT_TRUE(w.has_value());
  bool jump = false;
  for (const auto& s : w->pi2) jump |= !s.transition.has_value();
  EXPECT_TRUE(jump);
}

// Two loops, each losing tokens somewhere; only together do they pump.
TEST(SelfCovering, CombinedCycles) {
  Net n{"combo",
        {"a", "b", "c"},
        {{"go", {0, 0, 1}, {kOmega, kOmega, 0}}, {"u", {1, 0, 0}, {0, 2, 0}}, {"v", {0, 1, 0}, {2, 0, 0}}},
        Marking{0, 0, 1}};
  KMTree t = build_km(n);
  auto w = find_self_covering(t);
  ASSERT_TRUE(w.has_value());
  auto ts = w->loop_transitions();
  EXPECT_EQ(std::count(ts.begin(), ts.end(), 1u) > 0 && std::count(ts.begin(), ts.end(), 2u) > 0, true);
  EXPECT_TRUE(nonnegative(w->total_effect));
  EXPECT_EQ(terminates(n, n.initial).answer, Answer::no);
}

// Same loops but both lose a token overall: terminates.
TEST(SelfCovering, CombinedCyclesNegative) {
  Net n{"combo_neg",
        {"a", "b", "c"},
        {{"go", {0, 0, 1}, {kOmega, kOmega, 0}}, {"u", {2, 0, 0}, {0, 1, 0}}, {"v", {0, 2, 0}, {1, 0, 0}}},
        Marking{0, 0, 1}};
  EXPECT_EQ(terminates(n, n.initial).answer, Answer::yes);
}

TEST(Terminates, Examples) {
  EXPECT_EQ(terminates(wpn::test::load("n1.wpn"), Marking{1, 0, 0}).answer, Answer::no);
  EXPECT_EQ(terminates(wpn::test::load("n1prime.wpn"), Marking{1, 0, 0}).answer, Answer::yes);
  Net b = wpn::test::load("fig1b.wpn"), c = wpn::test::load("fig1c.wpn");
  Verdict vb = terminates(b, b.initial);
  EXPECT_EQ(vb.answer, Answer::no);
  ASSERT_TRUE(std::holds_alternative<StutterWitness>(vb.witness));
  EXPECT_EQ(std::get<StutterWitness>(vb.witness).loop_transitions(), std::vector<TransitionId>{0});
  EXPECT_EQ(terminates(c, c.initial).answer, Answer::yes);
  EXPECT_EQ(terminates(wpn::test::load("fig1a.wpn"), Marking{3, 0}).answer, Answer::yes);
}

TEST(Isomorphism, RemovingOmegaInputs) {
  Net d = wpn::test::load("drain.wpn");
  KMTree a = build_km(d), b = build_km(rem_input_omegas(d));
  EXPECT_TRUE(isomorphic(a, b));
  EXPECT_FALSE(isomorphic(a, build_km(wpn::test::load("n1.wpn"))));
}
