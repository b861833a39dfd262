#pragma once

#include <cstdint>
#include <optional>

#include "wpn/core.hpp"
#include "wpn/extended.hpp"
#include "wpn/semantics.hpp"
#include "wpn/verdict.hpp"

namespace wpn {

struct ExploreBudget {
  std::size_t depth = 6;
  Tokens cap = 2;
  std::size_t max_states = 200'000;
  unsigned threads = 1;
};

struct ReachEdge {
  std::size_t from = 0;
  std::size_t to = 0;
  TransitionId transition = 0;
  FiringChoices choices;
};

// Breadth-first window over the reachable markings. Markings are numbered in
// discovery order; every marking except the root has a parent edge.
struct ReachabilityGraph {
  std::vector<Marking> markings;
  std::vector<std::size_t> depth;
  std::vector<ReachEdge> edges;
  std::vector<std::size_t> parent_edge;
  bool truncated = false;

  std::optional<std::size_t> index_of(const Marking& m) const;
  Execution path_to(std::size_t node) const;
};

ReachabilityGraph explore(const ExtNet& net, const Marking& m0, const ExploreBudget& budget);
ReachabilityGraph explore(const Net& net, const Marking& m0, const ExploreBudget& budget);

// Yes with a replayable execution reaching a marking >= m, otherwise Unknown.
Verdict oracle_coverable(const ExtNet& net, const Marking& m0, const Marking& m, const ExploreBudget& budget);
Verdict oracle_coverable(const Net& net, const Marking& m0, const Marking& m, const ExploreBudget& budget);

std::optional<SelfCoveringExecution> find_self_covering_execution(const ExtNet& net, const Marking& m0,
                                                                  const ExploreBudget& budget);
std::optional<SelfCoveringExecution> find_self_covering_execution(const Net& net, const Marking& m0,
                                                                  const ExploreBudget& budget);

struct RandomNetParams {
  std::size_t places = 3;
  std::size_t transitions = 4;
  Tokens max_weight = 2;
  Tokens max_initial = 2;
  double omega_in_prob = 0.1;
  double omega_out_prob = 0.1;
  double arc_prob = 0.4;
  bool transfer = false;
  bool reset = false;
};

ExtNet random_ext_net(std::uint64_t seed, const RandomNetParams& params);
// Requires params without transfer/reset.
Net random_net(std::uint64_t seed, const RandomNetParams& params);

// WPN_SEED from the environment, or fallback.
std::uint64_t seed_from_env(std::uint64_t fallback);

}  // namespace wpn
