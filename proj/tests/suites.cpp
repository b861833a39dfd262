#include "suites.hpp"

#include <algorithm>
#include <random>
#include <set>
#include <sstream>

#include "helpers.hpp"
#include "wpn/kmtree.hpp"
#include "wpn/oracle.hpp"
#include "wpn/rackoff.hpp"
#include "wpn/reduce.hpp"

namespace wpn::suites {

namespace {

std::string str(const Marking& m) {
  std::ostringstream os;
  os << m;
  return os.str();
}

RandomNetParams small(std::uint64_t i, double w_in, double w_out) {
  RandomNetParams p;
  p.places = 2 + i % 3;
  p.transitions = 2 + i % 4;
  p.max_weight = 2;
  p.max_initial = 2;
  p.omega_in_prob = w_in;
  p.omega_out_prob = w_out;
  return p;
}

template <class N>
Execution random_walk(const N& net, const Marking& m0, std::size_t len, Tokens cap, std::mt19937_64& rng) {
  Execution e{m0, {}};
  Marking m = m0;
  for (std::size_t i = 0; i < len; ++i) {
    std::vector<std::pair<TransitionId, Successor>> all;
    for (TransitionId t = 0; t < net.transitions.size(); ++t)
      for (auto& s : successors(m, net.transitions[t], cap)) all.emplace_back(t, std::move(s));
    if (all.empty()) break;
    auto& [t, s] = all[rng() % all.size()];
    e.steps.push_back({t, s.choices, s.marking});
    m = s.marking;
  }
  return e;
}

Tokens max_input(const Net& net) {
  Tokens w = 0;
  for (const auto& t : net.transitions)
    for (auto v : t.input)
      if (!v.is_omega()) w = std::max(w, v.value());
  return w;
}

// Concrete run of the loop part of a stuttering witness from a large marking in
// the concretisation of its start label.
SelfCoveringExecution realize_stutter(const Net& net, const StutterWitness& w) {
  const auto loop = w.loop_transitions();
  const Tokens big = (max_input(net) + 1) * (loop.size() + 1) + 1;
  Marking start(net.place_count());
  for (PlaceId p = 0; p < start.size(); ++p) start[p] = w.start_label[p].is_omega() ? big : w.start_label[p].value();
  SelfCoveringExecution out{{start, {}}, 0};
  Marking m = start;
  for (TransitionId t : loop) {
    const Transition& tr = net.transitions[t];
    FiringChoices c;
    for (PlaceId p = 0; p < m.size(); ++p) {
      if (tr.input[p].is_omega()) c.omega_inputs[p] = 0;
      if (tr.output[p].is_omega()) c.omega_outputs[p] = big;
    }
    m = fire_concrete(m, tr, c);
    out.run.steps.push_back({t, c, m});
  }
  return out;
}

}  // namespace

Result effect_additivity(std::size_t n, std::uint64_t seed) {
  Result r;
  std::mt19937_64 rng(seed);
  for (std::size_t i = 0; i < n; ++i) {
    Net net = random_net(seed + i, small(i, 0.2, 0.2));
    Execution e = random_walk(net, net.initial, rng() % 7, 3, rng);
    EffectVector eff = effect_of_seq(net, e.transitions());
    const Marking& last = e.marking(e.length());
    ++r.instances;
    for (PlaceId p = 0; p < net.place_count(); ++p) {
      bool touched = false;
      for (TransitionId t : e.transitions())
        touched |= net.transitions[t].input[p].is_omega() || net.transitions[t].output[p].is_omega();
      if (touched) continue;
      auto expect = static_cast<std::int64_t>(net.initial[p]) + eff[p].value();
      if (static_cast<std::int64_t>(last[p]) != expect) r.fail(net.name + " place " + net.places[p]);
    }
  }
  return r;
}

Result upward_replay(std::size_t n, std::uint64_t seed) {
  Result r;
  std::mt19937_64 rng(seed);
  for (std::uint64_t i = 0; r.instances < n && i < 50 * n; ++i) {
    Net net = random_net(seed + i, small(i, 0.2, 0.4));
    Execution e = random_walk(net, net.initial, 1 + rng() % 6, 2, rng);
    EffectVector eff = effect_of_seq(net, e.transitions());
    std::vector<PlaceId> grow;
    for (PlaceId p = 0; p < eff.size(); ++p)
      if (eff[p].is_omega()) grow.push_back(p);
    if (grow.empty()) continue;
    ++r.instances;
    Marking target = e.marking(e.length());
    Execution inflated = e;
    for (PlaceId p : grow) {
      Tokens d = rng() % 4;
      target[p] += d;
      for (std::size_t k = inflated.length(); k-- > 0;)
        if (net.transitions[inflated.steps[k].transition].output[p].is_omega()) {
          inflated.steps[k].choices.omega_outputs[p] += d;
          break;
        }
    }
    try {
      Marking m = inflated.initial;
      for (auto& s : inflated.steps) s.after = m = fire_concrete(m, net.transitions[s.transition], s.choices);
      if (m != target || !replays(net, inflated)) r.fail(net.name + " reached " + str(m) + " not " + str(target));
    } catch (const Error& ex) {
      r.fail(net.name + ": " + ex.what());
    }
  }
  return r;
}

Result strong_monotonicity(std::size_t n, std::uint64_t seed) {
  Result r;
  std::mt19937_64 rng(seed);
  for (std::size_t i = 0; i < n; ++i) {
    RandomNetParams p = small(i, 0.2, 0.2);
    p.transfer = i % 3 == 1;
    p.reset = i % 3 == 2;
    ExtNet net = random_ext_net(seed + i, p);
    Marking m(net.place_count()), big(net.place_count());
    for (PlaceId q = 0; q < m.size(); ++q) {
      m[q] = rng() % 4;
      big[q] = m[q] + rng() % 3;
    }
    ++r.instances;
    for (const auto& t : net.transitions) {
      if (!enabled(m, t)) continue;
      if (!enabled(big, t)) {
        r.fail(net.name + " " + t.name + " disabled at larger marking");
        continue;
      }
      for (const auto& s : successors(m, t, 2))
        if (!leq(s.marking, fire_extended(big, t, s.choices))) r.fail(net.name + " " + t.name + " successor not dominated");
    }
  }
  return r;
}

Result threshold_growth(std::size_t n, std::uint64_t seed) {
  Result r;
  std::mt19937_64 rng(seed);
  for (std::size_t i = 0; i < n; ++i) {
    Net net = random_net(seed + i, small(i, 0.2, 0.2));
    const std::size_t np = net.place_count();
    ThresholdFn h;
    for (std::size_t k = 0; k <= np; ++k) h.values.push_back(1 + rng() % 6);
    OmegaMarking m(np);
    for (PlaceId p = 0; p < np; ++p) m[p] = rng() % 3 == 0 ? kOmega : ExtValue(rng() % 5);
    ++r.instances;
    for (int step = 0; step < 8; ++step) {
      std::vector<TransitionId> en;
      for (TransitionId t = 0; t < net.transitions.size(); ++t)
        if (enabled(m, net.transitions[t])) en.push_back(t);
      if (en.empty()) break;
      OmegaMarking next = fire_threshold(m, net.transitions[en[rng() % en.size()]], h);
      for (PlaceId p : omega_support(m))
        if (!next[p].is_omega()) r.fail(net.name + " lost omega on " + net.places[p]);
      m = next;
    }
  }
  return r;
}

Result threshold_replay(std::size_t n, std::uint64_t seed) {
  Result r;
  std::mt19937_64 rng(seed);
  for (std::uint64_t i = 0; r.instances < n && i < 50 * n; ++i) {
    Net net = rem_input_omegas(random_net(seed + i, small(i, 0.0, 0.2)));
    const std::size_t np = net.place_count();
    ThresholdFn h;
    for (std::size_t k = 0; k <= np; ++k) h.values.push_back(2 + rng() % 8);
    OmegaMarking m1(np);
    for (PlaceId p = 0; p < np; ++p) m1[p] = rng() % 3 == 0 ? kOmega : ExtValue(rng() % 4);
    if (nb_omega(m1) == 0) m1[rng() % np] = kOmega;
    std::vector<TransitionId> sigma;
    OmegaMarking m2 = m1;
    for (int step = 0; step < 6; ++step) {
      std::vector<TransitionId> en;
      for (TransitionId t = 0; t < net.transitions.size(); ++t)
        if (enabled(m2, net.transitions[t])) en.push_back(t);
      if (en.empty()) break;
      TransitionId t = en[rng() % en.size()];
      OmegaMarking next = fire_threshold(m2, net.transitions[t], h);
      if (!same_support(next, m1)) break;
      sigma.push_back(t);
      m2 = next;
    }
    if (sigma.empty()) continue;
    ++r.instances;
    // Besides R per step, the start has to pay for the largest single input.
    const Tokens R = max_finite_effect(net), slack = R * sigma.size();
    Marking start(np);
    for (PlaceId p = 0; p < np; ++p) start[p] = m1[p].is_omega() ? slack + max_input(net) + rng() % 3 : m1[p].value();
    Marking cur = start;
    bool ok = true;
    for (TransitionId t : sigma) {
      // omega outputs give back what the step may take from the place
      FiringChoices c;
      for (PlaceId p = 0; p < np; ++p)
        if (net.transitions[t].output[p].is_omega()) c.omega_outputs[p] = max_input(net);
      if (!enabled(cur, net.transitions[t])) {
        ok = false;
        break;
      }
      cur = fire_concrete(cur, net.transitions[t], c);
    }
    if (!ok) {
      r.fail(net.name + " concrete replay blocked");
      continue;
    }
    for (PlaceId p = 0; p < np; ++p) {
      if (m2[p].is_omega()) {
        if (cur[p] + slack < start[p]) r.fail(net.name + " omega place dropped too far");
      } else if (cur[p] != m2[p].value()) {
        r.fail(net.name + " finite place differs");
      }
    }
  }
  return r;
}

Result eff_abs_linearity(std::size_t n, std::uint64_t seed) {
  Result r;
  std::mt19937_64 rng(seed);
  for (std::size_t i = 0; i < n; ++i) {
    Net net = random_net(seed + i, small(i, 0.2, 0.3));
    std::vector<TransitionId> a, b;
    for (std::size_t k = rng() % 5; k > 0; --k) a.push_back(rng() % net.transitions.size());
    for (std::size_t k = rng() % 5; k > 0; --k) b.push_back(rng() % net.transitions.size());
    std::vector<TransitionId> ab = a;
    ab.insert(ab.end(), b.begin(), b.end());
    std::set<PlaceId> omega;
    EffectVector e = effect_of_seq(net, ab);
    for (PlaceId p = 0; p < e.size(); ++p)
      if (e[p].is_omega() || rng() % 4 == 0) omega.insert(p);
    auto x = eff_abs(net, omega, a), y = eff_abs(net, omega, b), z = eff_abs(net, omega, ab);
    ++r.instances;
    for (PlaceId p = 0; p < z.size(); ++p) {
      std::int64_t want = omega.count(p) ? std::max(x[p], y[p]) : x[p] + y[p];
      if (z[p] != want) r.fail(net.name + " place " + net.places[p]);
    }
  }
  return r;
}

Result oracle_km_coverability(std::size_t nets, std::uint64_t seed) {
  Result r;
  std::mt19937_64 rng(seed);
  for (std::size_t i = 0; i < nets; ++i) {
    Net net = random_net(seed + i, small(i, 0.15, 0.15));
    KMTree tree = build_km(net);
    const auto cs = coverability_set(tree);
    ReachabilityGraph g = explore(net, net.initial, {5, 2, 20000, 1});
    ++r.instances;
    for (std::size_t k = 0; k < g.markings.size(); ++k) {
      if (!replays(net, g.path_to(k))) r.fail(net.name + " oracle path does not replay");
      if (!downward_contains(cs, g.markings[k])) r.fail(net.name + " reached " + str(g.markings[k]) + " but KM says not coverable");
    }
    for (int q = 0; q < 5; ++q) {
      Marking target(net.place_count());
      for (auto& v : target.tokens) v = rng() % 4;
      if (downward_contains(cs, target)) continue;
      for (const auto& m : g.markings)
        if (leq(target, m)) r.fail(net.name + " oracle covers " + str(target) + " but KM says no");
    }
  }
  return r;
}

Result oracle_km_termination(std::size_t nets, std::uint64_t seed) {
  Result r;
  for (std::size_t i = 0; i < nets; ++i) {
    Net net = random_net(seed + i, small(i, 0.15, 0.15));
    Verdict v = terminates(net, net.initial);
    auto w = find_self_covering_execution(net, net.initial, {5, 2, 20000, 1});
    ++r.instances;
    if (w && !is_self_covering(net, *w)) r.fail(net.name + " oracle witness does not replay");
    if (w && v.answer != Answer::no) r.fail(net.name + " oracle finds a self-covering execution, KM says terminates");
    if (v.answer == Answer::no) {
      if (!std::holds_alternative<StutterWitness>(v.witness)) {
        r.fail(net.name + " non-termination without witness");
        continue;
      }
      const auto& sw = std::get<StutterWitness>(v.witness);
      if (sw.pi2.empty() || !nonnegative(sw.total_effect)) r.fail(net.name + " malformed stuttering witness");
      if (!is_self_covering(net, realize_stutter(net, sw))) r.fail(net.name + " stuttering witness does not pump");
    }
  }
  return r;
}

Result km_soundness(std::size_t nets, std::uint64_t seed) {
  Result r;
  for (std::size_t i = 0; i < nets; ++i) {
    Net net = random_net(seed + i, small(i, 0.15, 0.15));
    KMTree tree = build_km(net);
    std::set<OmegaMarking> labels;
    for (const auto& n : tree.nodes()) labels.insert(n.label);
    ReachabilityGraph g = explore(net, net.initial, {10, 3, 200000, 1});
    for (const auto& l : labels)
      for (Tokens B = 1; B <= 3; ++B) {
        Marking target(l.size());
        for (PlaceId p = 0; p < l.size(); ++p) target[p] = l[p].is_omega() ? B : std::min(l[p].value(), B);
        ++r.instances;
        bool found = false;
        for (const auto& m : g.markings) found = found || leq(target, m);
        if (!found) r.fail(net.name + " label target " + str(target) + " not reached");
      }
  }
  return r;
}

Result km_completeness(std::size_t nets, std::uint64_t seed) {
  Result r;
  for (std::size_t i = 0; i < nets; ++i) {
    Net net = random_net(seed + i, small(i, 0.15, 0.15));
    KMTree tree = build_km(net);
    std::set<OmegaMarking> labels;
    for (const auto& n : tree.nodes()) labels.insert(n.label);
    ReachabilityGraph g = explore(net, net.initial, {7, 3, 50000, 1});
    for (const auto& m : g.markings) {
      ++r.instances;
      bool below = false;
      for (const auto& l : labels) below = below || leq(OmegaMarking(m), l);
      if (!below) r.fail(net.name + " reached " + str(m) + " above every label");
    }
  }
  return r;
}

Result rem_input_omegas_agreement(std::size_t nets, std::uint64_t seed) {
  Result r;
  for (std::size_t i = 0; i < nets; ++i) {
    // same corpus shape as the oracle cross-check
    Net net = random_net(seed + i, small(i, 0.15, 0.15));
    Net reduced = rem_input_omegas(net);
    ++r.instances;
    if (terminates(net, net.initial).answer != terminates(reduced, reduced.initial).answer)
      r.fail(net.name + " termination differs");
    if (!isomorphic(build_km(net), build_km(reduced))) r.fail(net.name + " trees differ");
  }
  return r;
}

Result lock_invariant(std::size_t nets, std::uint64_t seed) {
  Result r;
  for (std::size_t i = 0; i < nets; ++i) {
    Net net = random_net(seed + i, small(i, 0.3, 0.3));
    PlainReduction red = to_plain_pn(net);
    ReachabilityGraph g = explore(red.net, red.net.initial, {8, 1, 20000, 1});
    for (const auto& m : g.markings) {
      ++r.instances;
      Tokens sum = 0;
      for (PlaceId p = net.place_count(); p < m.size(); ++p) sum += m[p];
      if (sum != 1) r.fail(net.name + " lock sum " + std::to_string(sum));
    }
  }
  return r;
}

Result lock_correspondence(const std::string& net_file, std::size_t depth, std::size_t reduced_depth) {
  Result r;
  Net net = wpn::test::load(net_file);
  PlainReduction red = to_plain_pn(net);
  const Tokens cap = 2;
  ReachabilityGraph g = explore(net, net.initial, {depth, cap, 200000, 1});
  ReachabilityGraph h = explore(red.net, red.net.initial, {reduced_depth, 1, 500000, 1});
  std::set<Marking> reduced(h.markings.begin(), h.markings.end());
  // Every marking of the source, reached by a run whose simulation fits the
  // reduced depth, lifts to a reachable marking of the reduced net.
  for (std::size_t k = 0; k < g.markings.size(); ++k) {
    std::size_t cost = 0;
    for (const auto& s : g.path_to(k).steps) {
      const Transition& t = net.transitions[s.transition];
      if (!t.has_omega_input() && !t.has_omega_output()) {
        ++cost;
        continue;
      }
      cost += 2;
      for (const auto& [p, v] : s.choices.omega_inputs) cost += v;
      for (const auto& [p, v] : s.choices.omega_outputs) cost += v;
    }
    if (cost > reduced_depth) continue;
    ++r.instances;
    if (!reduced.count(red.lift.apply(g.markings[k]))) r.fail(net_file + " lift of " + str(g.markings[k]) + " missing");
  }
  // Every reduced marking with the global lock held projects to a reachable source marking.
  ReachabilityGraph wide = explore(net, net.initial, {reduced_depth, reduced_depth, 500000, 1});
  std::set<Marking> source(wide.markings.begin(), wide.markings.end());
  for (const auto& m : h.markings) {
    if (red.lift.apply(red.lift.project(m)) != m) continue;
    ++r.instances;
    if (!source.count(red.lift.project(m))) r.fail(net_file + " projection of " + str(m) + " unreachable");
  }
  return r;
}

Result pred_basis_bruteforce(std::size_t nets, std::uint64_t seed) {
  Result r;
  std::mt19937_64 rng(seed);
  const Tokens B = 6;
  for (std::size_t i = 0; i < nets; ++i) {
    RandomNetParams p = small(i, 0, 0);
    p.transfer = i % 2 == 0;
    p.reset = i % 2 == 1;
    ExtNet net = random_ext_net(seed + i, p);
    const std::size_t np = net.place_count();
    ++r.instances;
    for (const auto& t : net.transitions) {
      Marking u(np);
      for (auto& v : u.tokens) v = rng() % 4;
      auto basis = pred_basis(t, u);
      Marking m(np);
      for (;;) {
        bool brute = enabled(m, t) && leq(u, fire_extended(m, t, {}));
        bool sym = false;
        for (const auto& b : basis) sym = sym || leq(b, m);
        if (brute != sym) r.fail(net.name + " " + t.name + " at " + str(m));
        PlaceId q = 0;
        while (q < np && m[q] == B) m[q++] = 0;
        if (q == np) break;
        ++m[q];
      }
    }
  }
  return r;
}

Result monotone_termination_vs_oracle(std::size_t nets, std::uint64_t seed) {
  Result r;
  for (std::size_t i = 0; i < nets; ++i) {
    RandomNetParams p = small(i, 0.3, 0);
    p.transfer = i % 2 == 0;
    p.reset = i % 2 == 1;
    ExtNet net = random_ext_net(seed + i, p);
    Verdict v = terminates_monotone(net, net.initial);
    auto w = find_self_covering_execution(net, net.initial, {5, 2, 20000, 1});
    ++r.instances;
    if (v.answer == Answer::unknown) {
      r.fail(net.name + " monotone tree budget exceeded");
      continue;
    }
    if (w && v.answer != Answer::no) r.fail(net.name + " oracle pumps but verdict is terminates");
    if (v.answer == Answer::no &&
        (!std::holds_alternative<SelfCoveringExecution>(v.witness) ||
         !is_self_covering(net, std::get<SelfCoveringExecution>(v.witness))))
      r.fail(net.name + " witness does not replay");
  }
  return r;
}

Result backward_vs_oracle(std::size_t nets, std::uint64_t seed) {
  Result r;
  std::mt19937_64 rng(seed);
  for (std::size_t i = 0; i < nets; ++i) {
    RandomNetParams p = small(i, 0.15, 0.15);
    p.transfer = i % 3 == 1;
    p.reset = i % 3 == 2;
    ExtNet net = random_ext_net(seed + i, p);
    ReachabilityGraph g = explore(net, net.initial, {4, 2, 5000, 1});
    ++r.instances;
    std::vector<Marking> targets;
    for (int q = 0; q < 3; ++q) targets.push_back(g.markings[rng() % g.markings.size()]);
    for (int q = 0; q < 3; ++q) {
      Marking t(net.place_count());
      for (auto& v : t.tokens) v = rng() % 4;
      targets.push_back(t);
    }
    for (const auto& t : targets) {
      bool oracle = false;
      for (const auto& m : g.markings) oracle = oracle || leq(t, m);
      Verdict v = backward_coverable(net, net.initial, t);
      if (oracle && v.answer != Answer::yes) r.fail(net.name + " oracle covers " + str(t) + " backward says " + to_string(v.answer));
      if (v.answer == Answer::yes && std::holds_alternative<Execution>(v.witness)) {
        const Execution& e = std::get<Execution>(v.witness);
        if (!replays(net, e) || !leq(t, e.marking(e.length()))) r.fail(net.name + " backward witness invalid");
      }
    }
  }
  return r;
}

Result reset_to_transfer_agreement(std::size_t nets, std::uint64_t seed) {
  Result r;
  for (std::size_t i = 0; i < nets; ++i) {
    RandomNetParams p = small(i, 0.3, 0);
    p.reset = true;
    ExtNet net = random_ext_net(seed + i, p);
    ExtNet tr = reset_to_transfer(net);
    ++r.instances;
    if (terminates_monotone(net, net.initial).answer != terminates_monotone(tr, tr.initial).answer)
      r.fail(net.name + " termination verdicts differ");
    bool a = find_self_covering_execution(net, net.initial, {5, 2, 50000, 1}).has_value();
    bool b = find_self_covering_execution(tr, tr.initial, {5, 2, 50000, 1}).has_value();
    if (a != b) r.fail(net.name + " oracle verdicts differ");
  }
  return r;
}

}  // namespace wpn::suites
