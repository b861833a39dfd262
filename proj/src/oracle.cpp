#include "wpn/oracle.hpp"

#include <cstdlib>
#include <deque>
#include <random>
#include <thread>
#include <unordered_map>

namespace wpn {

std::optional<std::size_t> ReachabilityGraph::index_of(const Marking& m) const {
  for (std::size_t i = 0; i < markings.size(); ++i)
    if (markings[i] == m) return i;
  return std::nullopt;
}

Execution ReachabilityGraph::path_to(std::size_t node) const {
  std::vector<const ReachEdge*> rev;
  while (node != 0) {
    rev.push_back(&edges[parent_edge[node]]);
    node = rev.back()->from;
  }
  Execution e{markings.at(0), {}};
  for (auto it = rev.rbegin(); it != rev.rend(); ++it)
    e.steps.push_back({(*it)->transition, (*it)->choices, markings[(*it)->to]});
  return e;
}

namespace {

struct Expansion {
  TransitionId transition;
  Successor succ;
};

std::vector<Expansion> expand(const ExtNet& net, const Marking& m, Tokens cap) {
  std::vector<Expansion> out;
  for (TransitionId t = 0; t < net.transitions.size(); ++t)
    for (auto& s : successors(m, net.transitions[t], cap)) out.push_back({t, std::move(s)});
  return out;
}

}  // namespace

ReachabilityGraph explore(const ExtNet& net, const Marking& m0, const ExploreBudget& budget) {
  ReachabilityGraph g;
  std::unordered_map<Marking, std::size_t, MarkingHash> index;
  g.markings.push_back(m0);
  g.depth.push_back(0);
  g.parent_edge.push_back(0);
  index.emplace(m0, 0);
  std::vector<std::size_t> frontier{0};
  const unsigned threads = std::max(1u, budget.threads);

  for (std::size_t d = 0; d < budget.depth && !frontier.empty(); ++d) {
    // Successor lists are computed per frontier node (possibly in parallel) and
    // merged in frontier order, so numbering does not depend on thread count.
    std::vector<std::vector<Expansion>> results(frontier.size());
    auto work = [&](std::size_t begin, std::size_t step) {
      for (std::size_t i = begin; i < frontier.size(); i += step)
        results[i] = expand(net, g.markings[frontier[i]], budget.cap);
    };
    if (threads == 1 || frontier.size() < 2) {
      work(0, 1);
    } else {
      std::vector<std::thread> pool;
      for (unsigned w = 0; w < threads; ++w) pool.emplace_back(work, w, threads);
      for (auto& th : pool) th.join();
    }
    std::vector<std::size_t> next;
    for (std::size_t i = 0; i < frontier.size(); ++i) {
      for (auto& ex : results[i]) {
        auto it = index.find(ex.succ.marking);
        std::size_t to;
        if (it != index.end()) {
          to = it->second;
        } else {
          if (g.markings.size() >= budget.max_states) {
            g.truncated = true;
            continue;
          }
          to = g.markings.size();
          index.emplace(ex.succ.marking, to);
          g.markings.push_back(ex.succ.marking);
          g.depth.push_back(d + 1);
          g.parent_edge.push_back(g.edges.size());
          next.push_back(to);
        }
        g.edges.push_back({frontier[i], to, ex.transition, std::move(ex.succ.choices)});
      }
    }
    frontier = std::move(next);
  }
  return g;
}

ReachabilityGraph explore(const Net& net, const Marking& m0, const ExploreBudget& budget) {
  return explore(to_ext(net), m0, budget);
}

Verdict oracle_coverable(const ExtNet& net, const Marking& m0, const Marking& m, const ExploreBudget& budget) {
  ReachabilityGraph g = explore(net, m0, budget);
  for (std::size_t i = 0; i < g.markings.size(); ++i) {
    if (!leq(m, g.markings[i])) continue;
    Verdict v = Verdict::yes("explored execution covers the target");
    v.witness = g.path_to(i);
    v.nodes = g.markings.size();
    return v;
  }
  Verdict v = Verdict::unknown("no covering execution within the exploration budget", budget.depth);
  v.nodes = g.markings.size();
  return v;
}

Verdict oracle_coverable(const Net& net, const Marking& m0, const Marking& m, const ExploreBudget& budget) {
  return oracle_coverable(to_ext(net), m0, m, budget);
}

std::optional<SelfCoveringExecution> find_self_covering_execution(const ExtNet& net, const Marking& m0,
                                                                  const ExploreBudget& budget) {
  ReachabilityGraph g = explore(net, m0, budget);
  std::vector<std::vector<std::size_t>> out(g.markings.size());
  for (std::size_t e = 0; e < g.edges.size(); ++e) out[g.edges[e].from].push_back(e);

  for (std::size_t u = 0; u < g.markings.size(); ++u) {
    // Breadth-first search from u for a marking covering m_u after at least one step.
    std::vector<std::size_t> via(g.markings.size(), SIZE_MAX);
    std::vector<bool> seen(g.markings.size(), false);
    std::deque<std::size_t> queue;
    for (std::size_t e : out[u]) {
      std::size_t v = g.edges[e].to;
      if (!seen[v]) seen[v] = true, via[v] = e, queue.push_back(v);
    }
    while (!queue.empty()) {
      std::size_t v = queue.front();
      queue.pop_front();
      if (leq(g.markings[u], g.markings[v])) {
        SelfCoveringExecution w{g.path_to(u), 0};
        w.loop_start = w.run.length();
        std::vector<std::size_t> loop;
        for (std::size_t x = v;;) {
          loop.push_back(via[x]);
          x = g.edges[via[x]].from;
          if (x == u) break;
        }
        for (auto it = loop.rbegin(); it != loop.rend(); ++it) {
          const ReachEdge& e = g.edges[*it];
          w.run.steps.push_back({e.transition, e.choices, g.markings[e.to]});
        }
        return w;
      }
      for (std::size_t e : out[v]) {
        std::size_t x = g.edges[e].to;
        if (!seen[x]) seen[x] = true, via[x] = e, queue.push_back(x);
      }
    }
  }
  return std::nullopt;
}

std::optional<SelfCoveringExecution> find_self_covering_execution(const Net& net, const Marking& m0,
                                                                  const ExploreBudget& budget) {
  return find_self_covering_execution(to_ext(net), m0, budget);
}

namespace {

// Portable draws: the standard distributions differ between library vendors.
struct Draw {
  std::mt19937_64 rng;
  std::uint64_t below(std::uint64_t n) { return n ? rng() % n : 0; }
  bool chance(double p) { return static_cast<double>(rng() >> 11) * 0x1.0p-53 < p; }
};

}  // namespace

ExtNet random_ext_net(std::uint64_t seed, const RandomNetParams& params) {
  Draw d{std::mt19937_64(seed)};
  const std::size_t n = std::max<std::size_t>(1, params.places);
  ExtNet net;
  net.name = "random_" + std::to_string(seed);
  for (std::size_t p = 0; p < n; ++p) net.places.push_back("p" + std::to_string(p + 1));
  net.initial = Marking(n);
  for (std::size_t p = 0; p < n; ++p) net.initial[p] = d.below(params.max_initial + 1);
  const Tokens w = std::max<Tokens>(1, params.max_weight);
  for (std::size_t i = 0; i < params.transitions; ++i) {
    ExtTransition t{"t" + std::to_string(i + 1), std::vector<ArcLabel>(n), std::vector<ArcLabel>(n)};
    for (std::size_t p = 0; p < n; ++p) {
      if (d.chance(params.arc_prob)) t.input[p] = d.chance(params.omega_in_prob) ? ArcLabel::omega() : ArcLabel::num(1 + d.below(w));
      if (d.chance(params.arc_prob)) t.output[p] = d.chance(params.omega_out_prob) ? ArcLabel::omega() : ArcLabel::num(1 + d.below(w));
    }
    bool do_transfer = params.transfer && d.chance(0.5);
    bool do_reset = !do_transfer && params.reset && d.chance(0.5);
    if (do_transfer) {
      PlaceId s = d.below(n), dst = d.below(n);
      t.input[s] = ArcLabel::transfer();
      t.output[dst] = ArcLabel::transfer();
    } else if (do_reset) {
      t.input[d.below(n)] = ArcLabel::reset();
    }
    net.transitions.push_back(std::move(t));
  }
  net.validate();
  return net;
}

Net random_net(std::uint64_t seed, const RandomNetParams& params) {
  if (params.transfer || params.reset) throw Error("random_net produces plain omega nets only");
  return to_net(random_ext_net(seed, params));
}

std::uint64_t seed_from_env(std::uint64_t fallback) {
  const char* s = std::getenv("WPN_SEED");
  if (!s || !*s) return fallback;
  return std::strtoull(s, nullptr, 10);
}

}  // namespace wpn
