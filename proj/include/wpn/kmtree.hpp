#pragma once

#include <optional>
#include <vector>

#include "wpn/core.hpp"
#include "wpn/verdict.hpp"

namespace wpn {

class BudgetExceeded : public Error {
 public:
  using Error::Error;
};

// Recursive calls are deterministic in their start marking, so a call whose
// root label was already built reuses that subtree: a call root can have
// several incoming edges. parent/via record the first one.
struct KMNode {
  OmegaMarking label;
  std::optional<NodeId> parent;
  // Transition labelling the edge parent -> this node.
  std::optional<TransitionId> via;
  std::vector<NodeId> children;
  // child_via[i] labels the edge to children[i].
  std::vector<TransitionId> child_via;
  // Root of the recursive construction call that created this node.
  NodeId call_root = 0;
  std::size_t call_depth = 0;
  bool stopped = false;
  // For stopped nodes: the ancestor carrying the same label.
  std::optional<NodeId> jump_target;
};

class KMTree {
 public:
  KMTree(Net net, std::vector<KMNode> nodes) : net_(std::move(net)), nodes_(std::move(nodes)) {}

  const Net& net() const { return net_; }
  NodeId root() const { return 0; }
  std::size_t size() const { return nodes_.size(); }
  const KMNode& node(NodeId n) const { return nodes_.at(n); }
  const std::vector<KMNode>& nodes() const { return nodes_; }
  // Node ids from the root down to n.
  std::vector<NodeId> path_to(NodeId n) const;
  std::size_t max_call_depth() const;

 private:
  Net net_;
  std::vector<KMNode> nodes_;
};

struct KMOptions {
  std::size_t max_nodes = 2'000'000;
};

// Successor label of node n through t, accelerating against the deepest
// ancestor (inside n's construction call) whose label is strictly below n's.
OmegaMarking post(const Net& net, const std::vector<KMNode>& nodes, NodeId n, const Transition& t);
OmegaMarking post(const KMTree& tree, NodeId n, TransitionId t);

KMTree build_km(const Net& net, const OmegaMarking& m0, const KMOptions& opts = {});
KMTree build_km(const Net& net, const KMOptions& opts = {});

// Maximal labels of the tree, deduplicated, in node order.
std::vector<OmegaMarking> coverability_set(const KMTree& tree);
bool is_bounded(const KMTree& tree);
bool place_bounded(const KMTree& tree, PlaceId p);
bool coverable(const KMTree& tree, const Marking& m);

struct RegionEdge {
  NodeId from = 0;
  NodeId to = 0;
  std::optional<TransitionId> transition;  // empty for jump edges
  EffectVector effect;
};

struct RegionGraph {
  std::vector<bool> support;
  std::vector<NodeId> vertices;
  std::vector<RegionEdge> edges;
};

std::vector<RegionGraph> region_graphs(const KMTree& tree);

std::optional<StutterWitness> find_self_covering(const KMTree& tree);

// Yes iff the net terminates from m0; No carries a StutterWitness.
Verdict terminates(const Net& net, const Marking& m0, const KMOptions& opts = {});

bool isomorphic(const KMTree& a, const KMTree& b);

}  // namespace wpn
