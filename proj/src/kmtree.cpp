#include "wpn/kmtree.hpp"

#include <algorithm>
#include <deque>
#include <map>
#include <numeric>

#include "wpn/lp.hpp"
#include "wpn/semantics.hpp"

namespace wpn {

std::vector<NodeId> KMTree::path_to(NodeId n) const {
  std::vector<NodeId> path{n};
  while (nodes_.at(path.back()).parent) path.push_back(*nodes_[path.back()].parent);
  std::reverse(path.begin(), path.end());
  return path;
}

std::size_t KMTree::max_call_depth() const {
  std::size_t d = 0;
  for (const auto& n : nodes_) d = std::max(d, n.call_depth);
  return d;
}

OmegaMarking post(const Net&, const std::vector<KMNode>& nodes, NodeId n, const Transition& t) {
  OmegaMarking next = fire_omega(nodes.at(n).label, t);
  // Inside one call no acceleration happened between an ancestor and n, so
  // the effect of ancestor -> n -> t is the label difference. The ancestor is
  // compared with the new marking: against n's own label the acceleration
  // could mark places that t increments only once.
  NodeId cur = n;
  while (cur != nodes[cur].call_root && nodes[cur].parent) {
    cur = *nodes[cur].parent;
    const OmegaMarking& low = nodes[cur].label;
    if (strictly_less(low, next)) {
      for (PlaceId p = 0; p < next.size(); ++p)
        if (low[p] < next[p]) next[p] = kOmega;
      break;
    }
  }
  return next;
}

OmegaMarking post(const KMTree& tree, NodeId n, TransitionId t) {
  return post(tree.net(), tree.nodes(), n, tree.net().transitions.at(t));
}

namespace {

class Builder {
 public:
  Builder(const Net& net, const KMOptions& opts) : net_(net), opts_(opts) {}

  NodeId build(const OmegaMarking& m0, std::size_t depth) {
    if (auto it = calls_.find(m0); it != calls_.end()) return it->second;
    NodeId root = add(m0, 0, depth);
    nodes_[root].call_root = root;
    calls_.emplace(m0, root);
    std::deque<NodeId> queue{root};
    while (!queue.empty()) {
      NodeId n = queue.front();
      queue.pop_front();
      if (auto a = equal_ancestor(n)) {
        nodes_[n].stopped = true;
        nodes_[n].jump_target = a;
        continue;
      }
      for (TransitionId t = 0; t < net_.transitions.size(); ++t) {
        const Transition& tr = net_.transitions[t];
        if (!enabled(nodes_[n].label, tr)) continue;
        OmegaMarking next = post(net_, nodes_, n, tr);
        NodeId child;
        if (nb_omega(next) > nb_omega(nodes_[n].label)) {
          child = build(next, depth + 1);
        } else {
          child = add(std::move(next), root, depth);
          queue.push_back(child);
        }
        if (!nodes_[child].parent && child != 0) {
          nodes_[child].parent = n;
          nodes_[child].via = t;
        }
        nodes_[n].children.push_back(child);
        nodes_[n].child_via.push_back(t);
      }
    }
    return root;
  }

  std::vector<KMNode> take() { return std::move(nodes_); }

 private:
  NodeId add(OmegaMarking label, NodeId call_root, std::size_t depth) {
    if (nodes_.size() >= opts_.max_nodes)
      throw BudgetExceeded("KM tree exceeds " + std::to_string(opts_.max_nodes) + " nodes");
    KMNode node;
    node.label = std::move(label);
    node.call_root = call_root;
    node.call_depth = depth;
    nodes_.push_back(std::move(node));
    return nodes_.size() - 1;
  }

  std::optional<NodeId> equal_ancestor(NodeId n) const {
    NodeId cur = n;
    while (cur != nodes_[cur].call_root && nodes_[cur].parent) {
      cur = *nodes_[cur].parent;
      if (nodes_[cur].label == nodes_[n].label) return cur;
    }
    return std::nullopt;
  }

  const Net& net_;
  const KMOptions& opts_;
  std::vector<KMNode> nodes_;
  std::map<OmegaMarking, NodeId> calls_;
};

}  // namespace

KMTree build_km(const Net& net, const OmegaMarking& m0, const KMOptions& opts) {
  if (m0.size() != net.place_count()) throw Error("initial marking has wrong dimension");
  Builder b(net, opts);
  b.build(m0, 0);
  return KMTree(net, b.take());
}

KMTree build_km(const Net& net, const KMOptions& opts) { return build_km(net, OmegaMarking(net.initial), opts); }

std::vector<OmegaMarking> coverability_set(const KMTree& tree) {
  std::vector<OmegaMarking> labels;
  for (const auto& n : tree.nodes())
    if (std::find(labels.begin(), labels.end(), n.label) == labels.end()) labels.push_back(n.label);
  std::vector<OmegaMarking> maximal;
  for (const auto& l : labels) {
    bool dominated = std::any_of(labels.begin(), labels.end(), [&](const OmegaMarking& o) { return strictly_less(l, o); });
    if (!dominated) maximal.push_back(l);
  }
  return maximal;
}

bool is_bounded(const KMTree& tree) {
  return std::all_of(tree.nodes().begin(), tree.nodes().end(), [](const KMNode& n) { return nb_omega(n.label) == 0; });
}

bool place_bounded(const KMTree& tree, PlaceId p) {
  return std::all_of(tree.nodes().begin(), tree.nodes().end(), [p](const KMNode& n) { return !n.label.values.at(p).is_omega(); });
}

bool coverable(const KMTree& tree, const Marking& m) { return downward_contains(coverability_set(tree), m); }

namespace {

struct UnionFind {
  std::vector<std::size_t> parent;
  explicit UnionFind(std::size_t n) : parent(n) { std::iota(parent.begin(), parent.end(), 0); }
  std::size_t find(std::size_t x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  }
  void unite(std::size_t a, std::size_t b) {
    a = find(a);
    b = find(b);
    if (a != b) parent[std::max(a, b)] = std::min(a, b);
  }
};

std::vector<bool> support_mask(const OmegaMarking& m) {
  std::vector<bool> s(m.size());
  for (PlaceId p = 0; p < m.size(); ++p) s[p] = m[p].is_omega();
  return s;
}

}  // namespace

std::vector<RegionGraph> region_graphs(const KMTree& tree) {
  const auto& nodes = tree.nodes();
  UnionFind uf(nodes.size());
  for (NodeId n = 0; n < nodes.size(); ++n) {
    if (nodes[n].parent && same_support(nodes[*nodes[n].parent].label, nodes[n].label)) uf.unite(n, *nodes[n].parent);
    if (nodes[n].jump_target) uf.unite(n, *nodes[n].jump_target);
  }
  std::map<std::size_t, std::size_t> index;
  std::vector<RegionGraph> regions;
  for (NodeId n = 0; n < nodes.size(); ++n) {
    auto [it, fresh] = index.emplace(uf.find(n), regions.size());
    if (fresh) regions.push_back({support_mask(nodes[n].label), {}, {}});
    regions[it->second].vertices.push_back(n);
  }
  const std::size_t places = tree.net().place_count();
  for (NodeId n = 0; n < nodes.size(); ++n) {
    auto& region = regions[index.at(uf.find(n))];
    if (nodes[n].parent && same_support(nodes[*nodes[n].parent].label, nodes[n].label))
      region.edges.push_back({*nodes[n].parent, n, nodes[n].via, effect_of(tree.net().transitions[*nodes[n].via])});
    if (nodes[n].jump_target) region.edges.push_back({n, *nodes[n].jump_target, std::nullopt, EffectVector(places, 0)});
  }
  return regions;
}

namespace {

// A simple cycle of a region graph: the tree path top -> leaf closed by the
// jump leaf -> top.
struct Cycle {
  NodeId top = 0;
  NodeId leaf = 0;
  std::vector<NodeId> path;  // top .. leaf
  EffectVector effect;
};

class CycleSearch {
 public:
  CycleSearch(const KMTree& tree, std::vector<Cycle> cycles) : tree_(tree), cycles_(std::move(cycles)) {}

  std::optional<StutterWitness> run() {
    std::vector<std::size_t> all(cycles_.size());
    std::iota(all.begin(), all.end(), 0);
    for (auto& comp : components(all))
      if (auto w = search(comp)) return w;
    return std::nullopt;
  }

 private:
  std::vector<std::vector<std::size_t>> components(const std::vector<std::size_t>& ids) const {
    UnionFind uf(ids.size());
    std::map<NodeId, std::size_t> owner;
    for (std::size_t i = 0; i < ids.size(); ++i)
      for (NodeId v : cycles_[ids[i]].path) {
        auto [it, fresh] = owner.emplace(v, i);
        if (!fresh) uf.unite(i, it->second);
      }
    std::map<std::size_t, std::vector<std::size_t>> groups;
    for (std::size_t i = 0; i < ids.size(); ++i) groups[uf.find(i)].push_back(ids[i]);
    std::vector<std::vector<std::size_t>> out;
    for (auto& [_, g] : groups) out.push_back(std::move(g));
    return out;
  }

  // Looks for positive multiplicities on a connected set of cycles whose
  // combined effect is nonnegative, shrinking to the maximal feasible support.
  std::optional<StutterWitness> search(const std::vector<std::size_t>& comp) {
    const std::size_t places = tree_.net().place_count();
    std::vector<std::vector<Rational>> rows;
    for (PlaceId p = 0; p < places; ++p) {
      bool absorbed = std::any_of(comp.begin(), comp.end(), [&](std::size_t c) { return cycles_[c].effect[p].is_omega(); });
      if (absorbed) continue;
      std::vector<Rational> row;
      for (std::size_t c : comp) row.emplace_back(cycles_[c].effect[p].value());
      rows.push_back(std::move(row));
    }
    std::vector<Rational> weight(comp.size(), 0);
    std::vector<bool> in_support(comp.size(), false);
    for (std::size_t i = 0; i < comp.size(); ++i) {
      if (in_support[i]) continue;
      auto a = rows;
      std::vector<Rational> b(rows.size(), 0);
      std::vector<Rational> unit(comp.size(), 0);
      unit[i] = 1;
      a.push_back(unit);
      b.push_back(1);
      auto x = feasible_point(a, b);
      if (!x) continue;
      for (std::size_t j = 0; j < comp.size(); ++j) {
        weight[j] += (*x)[j];
        if ((*x)[j] > 0) in_support[j] = true;
      }
    }
    std::vector<std::size_t> support;
    for (std::size_t i = 0; i < comp.size(); ++i)
      if (in_support[i]) support.push_back(comp[i]);
    if (support.empty()) return std::nullopt;
    if (support.size() == comp.size()) return realize(comp, weight);
    for (auto& sub : components(support))
      if (auto w = search(sub)) return w;
    return std::nullopt;
  }

  StutterWitness realize(const std::vector<std::size_t>& comp, const std::vector<Rational>& weight) const {
    mpz_class lcm = 1;
    for (const auto& w : weight) mpz_lcm(lcm.get_mpz_t(), lcm.get_mpz_t(), w.get_den_mpz_t());
    std::vector<mpz_class> mult;
    mpz_class g = 0;
    for (const auto& w : weight) {
      mpz_class k = w.get_num() * (lcm / w.get_den());
      mult.push_back(k);
      mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), k.get_mpz_t());
    }
    // Edge multiset: child id -> traversals of the tree edge into it, leaf -> jumps.
    std::map<NodeId, std::vector<std::pair<NodeId, std::optional<TransitionId>>>> out;
    std::map<std::pair<NodeId, NodeId>, unsigned long> count;
    for (std::size_t i = 0; i < comp.size(); ++i) {
      mpz_class k = mult[i] / g;
      if (!k.fits_ulong_p()) throw Error("cycle multiplicity too large");
      const Cycle& c = cycles_[comp[i]];
      for (std::size_t j = 0; j + 1 < c.path.size(); ++j) count[{c.path[j], c.path[j + 1]}] += k.get_ui();
      count[{c.leaf, c.top}] += k.get_ui();
    }
    // Hierholzer over the multigraph; adjacency in (from, to) order.
    std::map<NodeId, std::vector<NodeId>> adj;
    for (const auto& [edge, k] : count)
      for (unsigned long r = 0; r < k; ++r) adj[edge.first].push_back(edge.second);
    for (auto& [_, v] : adj) std::reverse(v.begin(), v.end());
    NodeId start = cycles_[comp.front()].top;
    std::vector<NodeId> stack{start}, circuit;
    while (!stack.empty()) {
      auto& next = adj[stack.back()];
      if (next.empty()) {
        circuit.push_back(stack.back());
        stack.pop_back();
      } else {
        NodeId v = next.back();
        next.pop_back();
        stack.push_back(v);
      }
    }
    std::reverse(circuit.begin(), circuit.end());

    StutterWitness w;
    w.pi1 = tree_.path_to(start);
    w.start_label = tree_.node(start).label;
    w.total_effect = EffectVector(tree_.net().place_count(), 0);
    for (std::size_t i = 0; i + 1 < circuit.size(); ++i) {
      NodeId from = circuit[i], to = circuit[i + 1];
      const KMNode& dst = tree_.node(to);
      std::optional<TransitionId> t;
      if (dst.parent == std::optional<NodeId>(from)) t = dst.via;
      if (t) w.total_effect = add_effects(w.total_effect, effect_of(tree_.net().transitions[*t]));
      w.pi2.push_back({from, to, t});
    }
    return w;
  }

  const KMTree& tree_;
  std::vector<Cycle> cycles_;
};

StutterWitness single_step(const KMTree& tree, const RegionEdge& e) {
  StutterWitness w;
  w.pi1 = tree.path_to(e.from);
  w.start_label = tree.node(e.from).label;
  w.pi2.push_back({e.from, e.to, e.transition});
  w.total_effect = e.effect;
  return w;
}

}  // namespace

std::optional<StutterWitness> find_self_covering(const KMTree& tree) {
  const std::size_t places = tree.net().place_count();
  for (const auto& region : region_graphs(tree)) {
    for (const auto& e : region.edges)
      if (e.transition && nonnegative(e.effect)) return single_step(tree, e);

    std::vector<Cycle> cycles;
    for (NodeId v : region.vertices) {
      const KMNode& leaf = tree.node(v);
      if (!leaf.jump_target) continue;
      Cycle c;
      c.top = *leaf.jump_target;
      c.leaf = v;
      c.effect = EffectVector(places, 0);
      for (NodeId cur = v; cur != c.top; cur = *tree.node(cur).parent) {
        c.path.push_back(cur);
        c.effect = add_effects(c.effect, effect_of(tree.net().transitions[*tree.node(cur).via]));
      }
      c.path.push_back(c.top);
      std::reverse(c.path.begin(), c.path.end());
      cycles.push_back(std::move(c));
    }
    for (const auto& c : cycles) {
      if (!nonnegative(c.effect)) continue;
      return CycleSearch(tree, {c}).run();
    }
    if (auto w = CycleSearch(tree, std::move(cycles)).run()) return w;
  }
  return std::nullopt;
}

Verdict terminates(const Net& net, const Marking& m0, const KMOptions& opts) {
  KMTree tree = build_km(net, OmegaMarking(m0), opts);
  auto w = find_self_covering(tree);
  Verdict v = w ? Verdict::no("self-covering stuttering path in the KM tree") : Verdict::yes("no self-covering stuttering path");
  if (w) v.witness = std::move(*w);
  v.nodes = tree.size();
  return v;
}

bool isomorphic(const KMTree& a, const KMTree& b) {
  if (a.size() != b.size()) return false;
  std::vector<std::optional<NodeId>> match(a.size());
  std::vector<std::pair<NodeId, NodeId>> stack{{a.root(), b.root()}};
  while (!stack.empty()) {
    auto [x, y] = stack.back();
    stack.pop_back();
    if (match[x]) {
      if (*match[x] != y) return false;
      continue;
    }
    match[x] = y;
    const KMNode& nx = a.node(x);
    const KMNode& ny = b.node(y);
    if (nx.label != ny.label || nx.stopped != ny.stopped || nx.child_via != ny.child_via) return false;
    for (std::size_t i = 0; i < nx.children.size(); ++i) stack.emplace_back(nx.children[i], ny.children[i]);
  }
  return true;
}

std::vector<TransitionId> StutterWitness::loop_transitions() const {
  std::vector<TransitionId> r;
  for (const auto& s : pi2)
    if (s.transition) r.push_back(*s.transition);
  return r;
}

}  // namespace wpn
