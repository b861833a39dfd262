#include "wpn/extended.hpp"

#include <algorithm>
#include <deque>
#include <map>
#include <unordered_set>

#include "wpn/kmtree.hpp"
#include "wpn/oracle.hpp"
#include "wpn/reduce.hpp"

namespace wpn {

std::string to_string(const ArcLabel& a) {
  switch (a.kind) {
    case ArcLabel::Kind::num: return std::to_string(a.weight);
    case ArcLabel::Kind::omega: return "w";
    case ArcLabel::Kind::transfer: return "T";
    case ArcLabel::Kind::reset: return "R";
  }
  return "?";
}

std::optional<PlaceId> ExtTransition::transfer_source() const {
  for (PlaceId p = 0; p < input.size(); ++p)
    if (input[p].is_transfer()) return p;
  return std::nullopt;
}

std::optional<PlaceId> ExtTransition::transfer_target() const {
  for (PlaceId p = 0; p < output.size(); ++p)
    if (output[p].is_transfer()) return p;
  return std::nullopt;
}

std::optional<PlaceId> ExtTransition::reset_place() const {
  for (PlaceId p = 0; p < input.size(); ++p)
    if (input[p].is_reset()) return p;
  return std::nullopt;
}

bool ExtTransition::has_omega() const {
  return std::any_of(input.begin(), input.end(), [](const ArcLabel& a) { return a.is_omega(); }) ||
         std::any_of(output.begin(), output.end(), [](const ArcLabel& a) { return a.is_omega(); });
}

bool ExtTransition::has_special() const { return transfer_source() || reset_place(); }

std::string NetClass::name() const {
  std::string s = omega_in && omega_out ? "wPN" : omega_in ? "wIPN" : omega_out ? "wOPN" : "PN";
  if (transfer) s += "+T";
  if (reset) s += "+R";
  return s;
}

NetClass ExtNet::classify() const {
  NetClass c;
  for (const auto& t : transitions) {
    for (const auto& a : t.input) {
      c.omega_in = c.omega_in || a.is_omega();
      c.transfer = c.transfer || a.is_transfer();
      c.reset = c.reset || a.is_reset();
    }
    for (const auto& a : t.output) c.omega_out = c.omega_out || a.is_omega();
  }
  return c;
}

void ExtNet::validate() const {
  std::unordered_set<std::string> seen;
  for (const auto& p : places)
    if (!seen.insert(p).second) throw Error("duplicate place name '" + p + "'");
  seen.clear();
  for (const auto& t : transitions) {
    if (!seen.insert(t.name).second) throw Error("duplicate transition name '" + t.name + "'");
    if (t.input.size() != places.size() || t.output.size() != places.size())
      throw Error("transition '" + t.name + "' has wrong arc dimension");
    std::size_t special_in = 0, transfer_in = 0, transfer_out = 0, reset_in = 0;
    for (const auto& a : t.input) {
      special_in += a.is_transfer() || a.is_reset();
      transfer_in += a.is_transfer();
      reset_in += a.is_reset();
    }
    for (const auto& a : t.output) {
      if (a.is_reset()) throw WellFormednessError("transition '" + t.name + "': reset arcs are only allowed on inputs");
      transfer_out += a.is_transfer();
    }
    if (special_in > 1)
      throw WellFormednessError("transition '" + t.name + "': at most one input place may carry T or R");
    if (transfer_out > 1) throw WellFormednessError("transition '" + t.name + "': at most one output place may carry T");
    if ((transfer_in > 0) != (transfer_out > 0))
      throw WellFormednessError("transition '" + t.name + "': an input T needs a matching output T and vice versa");
    if (reset_in && transfer_out)
      throw WellFormednessError("transition '" + t.name + "': a reset input excludes an output T");
  }
  if (initial.size() != places.size()) throw Error("initial marking has wrong dimension");
}

std::size_t ExtNet::place_index(const std::string& n) const {
  for (std::size_t i = 0; i < places.size(); ++i)
    if (places[i] == n) return i;
  throw Error("unknown place '" + n + "'");
}

ExtNet to_ext(const Net& net) {
  ExtNet r{net.name, net.places, {}, net.initial};
  auto conv = [](ExtValue v) { return v.is_omega() ? ArcLabel::omega() : ArcLabel::num(v.value()); };
  for (const auto& t : net.transitions) {
    ExtTransition e{t.name, {}, {}};
    for (auto v : t.input) e.input.push_back(conv(v));
    for (auto v : t.output) e.output.push_back(conv(v));
    r.transitions.push_back(std::move(e));
  }
  return r;
}

Net to_net(const ExtNet& net) {
  Net r{net.name, net.places, {}, net.initial};
  auto conv = [&](const ArcLabel& a) -> ExtValue {
    if (a.is_omega()) return kOmega;
    if (a.is_num()) return a.weight;
    throw UnsupportedArcs("net '" + net.name + "' has transfer or reset arcs");
  };
  for (const auto& t : net.transitions) {
    Transition e{t.name, {}, {}};
    for (const auto& a : t.input) e.input.push_back(conv(a));
    for (const auto& a : t.output) e.output.push_back(conv(a));
    r.transitions.push_back(std::move(e));
  }
  return r;
}

bool enabled(const Marking& m, const ExtTransition& t) {
  if (m.size() != t.input.size()) throw Error("marking dimension mismatch");
  for (PlaceId p = 0; p < m.size(); ++p)
    if (t.input[p].is_num() && m[p] < t.input[p].weight) return false;
  return true;
}

namespace {

void check_choice_keys(const std::map<PlaceId, Tokens>& chosen, const std::vector<ArcLabel>& arcs, const std::string& tname) {
  std::size_t omega_arcs = 0;
  for (const auto& a : arcs) omega_arcs += a.is_omega();
  for (const auto& [p, _] : chosen)
    if (p >= arcs.size() || !arcs[p].is_omega())
      throw ChoiceOutOfRange("choice for place " + std::to_string(p) + " which is not an omega arc of '" + tname + "'");
  if (chosen.size() != omega_arcs) throw ChoiceOutOfRange("missing omega choice for '" + tname + "'");
}

}  // namespace

Marking fire_extended(const Marking& m, const ExtTransition& t, const FiringChoices& c) {
  if (!enabled(m, t)) throw NotEnabled("transition '" + t.name + "' is not enabled");
  check_choice_keys(c.omega_inputs, t.input, t.name);
  check_choice_keys(c.omega_outputs, t.output, t.name);
  auto source = t.transfer_source();
  Marking r(m.size());
  for (PlaceId p = 0; p < m.size(); ++p) {
    const ArcLabel& in = t.input[p];
    Tokens take = in.is_num() ? in.weight : in.is_omega() ? c.omega_inputs.at(p) : m[p];
    if (take > m[p]) throw ChoiceOutOfRange("omega input choice exceeds available tokens");
    const ArcLabel& out = t.output[p];
    Tokens give = out.is_num() ? out.weight : out.is_omega() ? c.omega_outputs.at(p) : m[*source];
    Tokens v;
    if (__builtin_add_overflow(m[p] - take, give, &v)) throw std::overflow_error("token overflow");
    r[p] = v;
  }
  return r;
}

std::vector<Successor> successors(const Marking& m, const ExtTransition& t, Tokens cap) {
  std::vector<Successor> out;
  if (!enabled(m, t)) return out;
  std::vector<std::pair<PlaceId, bool>> slots;
  std::vector<Tokens> limit;
  for (PlaceId p = 0; p < m.size(); ++p)
    if (t.input[p].is_omega()) slots.emplace_back(p, true), limit.push_back(m[p]);
  for (PlaceId p = 0; p < m.size(); ++p)
    if (t.output[p].is_omega()) slots.emplace_back(p, false), limit.push_back(cap);
  std::vector<Tokens> digit(slots.size(), 0);
  while (true) {
    FiringChoices c;
    for (std::size_t i = 0; i < slots.size(); ++i)
      (slots[i].second ? c.omega_inputs : c.omega_outputs)[slots[i].first] = digit[i];
    Marking next = fire_extended(m, t, c);
    out.push_back({std::move(c), std::move(next)});
    bool advanced = false;
    for (std::size_t i = slots.size(); i-- > 0;) {
      if (digit[i] < limit[i]) {
        ++digit[i];
        advanced = true;
        break;
      }
      digit[i] = 0;
    }
    if (!advanced) return out;
  }
}

bool replays(const ExtNet& net, const Execution& e) {
  if (e.initial.size() != net.place_count()) return false;
  Marking cur = e.initial;
  for (const auto& s : e.steps) {
    if (s.transition >= net.transitions.size()) return false;
    try {
      cur = fire_extended(cur, net.transitions[s.transition], s.choices);
    } catch (const Error&) {
      return false;
    }
    if (cur != s.after) return false;
  }
  return true;
}

bool is_self_covering(const ExtNet& net, const SelfCoveringExecution& e) {
  if (!replays(net, e.run) || e.loop_start >= e.run.length()) return false;
  return leq(e.run.marking(e.loop_start), e.run.marking(e.run.length()));
}

bool UpwardClosedSet::contains(const Marking& m) const {
  return std::any_of(basis_.begin(), basis_.end(), [&](const Marking& b) { return leq(b, m); });
}

bool UpwardClosedSet::insert(const Marking& m) {
  if (contains(m)) return false;
  std::erase_if(basis_, [&](const Marking& b) { return leq(m, b); });
  basis_.push_back(m);
  return true;
}

std::vector<Marking> pred_basis(const ExtTransition& t, const Marking& u) {
  if (t.has_omega()) throw UnsupportedNet("pred_basis needs a transition without omega arcs");
  const std::size_t n = u.size();
  if (t.input.size() != n) throw Error("marking dimension mismatch");
  auto src = t.transfer_source();
  auto dst = t.transfer_target();
  auto rst = t.reset_place();

  Marking base(n);
  for (PlaceId p = 0; p < n; ++p) {
    if (p == src || p == dst || p == rst) continue;
    Tokens in = t.input[p].weight, out = t.output[p].weight;
    // u(p) - (out - in), at least the input weight.
    Tokens need = u[p] + in > out ? u[p] + in - out : 0;
    base[p] = std::max(in, need);
  }
  if (rst) {
    if (t.output[*rst].weight < u[*rst]) return {};
    base[*rst] = 0;
  }
  if (!src) return {base};
  if (*src == *dst) {
    base[*src] = u[*src];
    return {base};
  }
  if (t.output[*src].weight < u[*src]) return {};
  std::vector<Marking> out;
  Tokens in_d = t.input[*dst].weight;
  for (Tokens k = 0; k <= u[*dst]; ++k) {
    Marking m = base;
    m[*src] = k;
    m[*dst] = in_d + (u[*dst] - k);
    out.push_back(std::move(m));
  }
  return out;
}

namespace {

Execution replay_names(const ExtNet& net, const Marking& m0, const std::vector<TransitionId>& seq) {
  Execution e{m0, {}};
  Marking cur = m0;
  for (TransitionId t : seq) {
    cur = fire_extended(cur, net.transitions[t], {});
    e.steps.push_back({t, {}, cur});
  }
  return e;
}

}  // namespace

Verdict backward_coverable(const ExtNet& net, const Marking& m0, const Marking& m, const BackwardOptions& opts) {
  net.validate();
  const bool lowered = net.classify().omega_in || net.classify().omega_out;
  ExtNet work = net;
  Marking start = m0, target = m;
  if (lowered) {
    ExtReduction r = lock_reduction(net);
    work = std::move(r.net);
    start = r.lift.apply(m0);
    target = Marking(work.place_count());
    for (PlaceId p = 0; p < m.size(); ++p) target[r.lift.place_map[p]] = m[p];
  }

  UpwardClosedSet set;
  set.insert(target);
  // Each inserted element remembers the transition leading into its successor element.
  std::map<Marking, std::pair<TransitionId, Marking>> next;
  std::deque<Marking> work_list{target};
  std::optional<Marking> hit;
  if (leq(target, start)) hit = target;
  std::size_t inserted = 1;
  while (!hit && !work_list.empty()) {
    Marking u = std::move(work_list.front());
    work_list.pop_front();
    if (std::find(set.basis().begin(), set.basis().end(), u) == set.basis().end()) continue;
    for (TransitionId t = 0; t < work.transitions.size() && !hit; ++t) {
      for (const auto& v : pred_basis(work.transitions[t], u)) {
        if (!set.insert(v)) continue;
        next.emplace(v, std::make_pair(t, u));
        if (++inserted > opts.max_basis) {
          Verdict out = Verdict::unknown("backward saturation exceeded its basis budget", opts.max_basis);
          out.nodes = inserted;
          return out;
        }
        if (leq(v, start)) {
          hit = v;
          break;
        }
        work_list.push_back(v);
      }
    }
  }
  Verdict out = hit ? Verdict::yes("backward saturation reached the initial marking")
                    : Verdict::no("saturated predecessor set excludes the initial marking");
  out.nodes = set.basis().size();
  if (hit) {
    std::vector<TransitionId> seq;
    Marking cur = *hit;
    while (cur != target) {
      const auto& [t, succ] = next.at(cur);
      seq.push_back(t);
      cur = succ;
    }
    if (lowered) {
      TransitionTrace trace{work.name, {}};
      for (TransitionId t : seq) trace.transitions.push_back(work.transitions[t].name);
      out.witness = std::move(trace);
    } else {
      out.witness = replay_names(work, start, seq);
    }
  }
  return out;
}

Verdict terminates_monotone(const ExtNet& net, const Marking& m0, const MonotoneOptions& opts) {
  net.validate();
  if (net.classify().omega_out) throw UnsupportedNet("omega outputs make the reachability tree infinitely branching");
  const ExtNet work = rem_input_omegas(net);
  // Choices that replay the reduced firing in the original net.
  std::vector<FiringChoices> zero(net.transitions.size());
  for (std::size_t t = 0; t < net.transitions.size(); ++t)
    for (PlaceId p = 0; p < net.place_count(); ++p)
      if (net.transitions[t].input[p].is_omega()) zero[t].omega_inputs[p] = 0;

  std::vector<Marking> path{m0};
  std::vector<TransitionId> fired;
  std::vector<TransitionId> cursor{0};
  std::size_t nodes = 1;
  while (!cursor.empty()) {
    TransitionId& t = cursor.back();
    while (t < work.transitions.size() && !enabled(path.back(), work.transitions[t])) ++t;
    if (t == work.transitions.size()) {
      cursor.pop_back();
      path.pop_back();
      if (!fired.empty()) fired.pop_back();
      continue;
    }
    TransitionId chosen = t++;
    Marking child = fire_extended(path.back(), work.transitions[chosen], {});
    if (++nodes > opts.max_nodes) {
      Verdict v = Verdict::unknown("reachability tree exceeded its node budget", opts.max_nodes);
      v.nodes = nodes;
      return v;
    }
    for (std::size_t i = 0; i < path.size(); ++i) {
      if (!leq(path[i], child)) continue;
      SelfCoveringExecution w{{m0, {}}, i};
      for (std::size_t j = 0; j < fired.size(); ++j) w.run.steps.push_back({fired[j], zero[fired[j]], path[j + 1]});
      w.run.steps.push_back({chosen, zero[chosen], child});
      Verdict v = Verdict::no("a node dominates one of its ancestors");
      v.witness = std::move(w);
      v.nodes = nodes;
      return v;
    }
    path.push_back(std::move(child));
    fired.push_back(chosen);
    cursor.push_back(0);
  }
  Verdict v = Verdict::yes("finite reachability tree has no dominated ancestor");
  v.nodes = nodes;
  return v;
}

std::string to_string(ProblemKind k) {
  switch (k) {
    case ProblemKind::reachability: return "reachability";
    case ProblemKind::boundedness: return "boundedness";
    case ProblemKind::place_boundedness: return "place-boundedness";
    case ProblemKind::coverability: return "coverability";
    case ProblemKind::termination: return "termination";
  }
  return "?";
}

namespace {

TransitionTrace tree_trace(const KMTree& tree, NodeId n) {
  TransitionTrace trace{tree.net().name, {}};
  for (NodeId v : tree.path_to(n))
    if (tree.node(v).via) trace.transitions.push_back(tree.net().transitions[*tree.node(v).via].name);
  return trace;
}

// Omega-output cap for witness searches: enough to cover the target and to
// pay for every finite input consumed along budget steps.
Tokens witness_cap(const Net& net, const Marking& m, std::uint64_t budget) {
  Tokens sum = 0, w = 1;
  for (Tokens v : m.tokens) sum += v;
  for (const auto& t : net.transitions)
    for (auto v : t.input)
      if (!v.is_omega()) w = std::max(w, v.value());
  return std::max<Tokens>(1, sum) + w * budget;
}

Verdict solve_omega_net(const Net& net, const Problem& pb) {
  KMTree tree = build_km(net);
  Verdict v;
  switch (pb.kind) {
    case ProblemKind::boundedness: {
      v = is_bounded(tree) ? Verdict::yes("no omega in the coverability set") : Verdict::no("omega in the coverability set");
      for (NodeId n = 0; n < tree.size() && v.answer == Answer::no; ++n)
        if (nb_omega(tree.node(n).label) > 0) {
          v.witness = tree_trace(tree, n);
          break;
        }
      break;
    }
    case ProblemKind::place_boundedness: {
      PlaceId p = pb.place.value();
      v = place_bounded(tree, p) ? Verdict::yes("place never omega in the coverability set")
                                 : Verdict::no("place is omega in the coverability set");
      for (NodeId n = 0; n < tree.size() && v.answer == Answer::no; ++n)
        if (tree.node(n).label[p].is_omega()) {
          v.witness = tree_trace(tree, n);
          break;
        }
      break;
    }
    case ProblemKind::coverability: {
      const Marking& m = pb.target.value();
      if (!coverable(tree, m)) {
        v = Verdict::no("target outside the downward closure of the coverability set");
        break;
      }
      v = Verdict::yes("target below a coverability-set element");
      ExploreBudget b{pb.budget, witness_cap(net, m, pb.budget), 200'000, 1};
      Verdict o = oracle_coverable(net, net.initial, m, b);
      if (o.answer == Answer::yes) v.witness = std::move(o.witness);
      break;
    }
    case ProblemKind::reachability: {
      const Marking& m = pb.target.value();
      if (!coverable(tree, m)) {
        v = Verdict::no("target is not even coverable");
        break;
      }
      ExploreBudget b{pb.budget, witness_cap(net, m, pb.budget), 200'000, 1};
      ReachabilityGraph g = explore(net, net.initial, b);
      if (auto i = g.index_of(m)) {
        v = Verdict::yes("bounded search reached the target");
        v.witness = g.path_to(*i);
      } else {
        v = Verdict::unknown("bounded reachability search found no execution (semi-decision)", pb.budget);
      }
      break;
    }
    case ProblemKind::termination: {
      v = terminates(net, net.initial);
      break;
    }
  }
  v.nodes = tree.size();
  return v;
}

}  // namespace

Verdict solve(const ExtNet& net, const Problem& pb) {
  net.validate();
  const NetClass c = net.classify();
  if ((pb.kind == ProblemKind::coverability || pb.kind == ProblemKind::reachability) &&
      (!pb.target || pb.target->size() != net.place_count()))
    throw Error("problem needs a target marking over the net's places");
  if (pb.kind == ProblemKind::place_boundedness && (!pb.place || *pb.place >= net.place_count()))
    throw Error("problem needs a place of the net");

  if (!c.extended()) return solve_omega_net(to_net(net), pb);

  const std::string cls = c.name();
  switch (pb.kind) {
    case ProblemKind::reachability:
      return Verdict::undecidable("reachability is undecidable for " + cls);
    case ProblemKind::place_boundedness:
      return Verdict::undecidable("place-boundedness is undecidable for " + cls);
    case ProblemKind::boundedness:
      if (c.reset) return Verdict::undecidable("boundedness is undecidable for " + cls);
      return Verdict::unknown("boundedness is decidable for " + cls +
                              " (Dufourd, Jancar, Schnoebelen 1999) but no procedure is implemented");
    case ProblemKind::coverability:
      return backward_coverable(net, net.initial, *pb.target);
    case ProblemKind::termination:
      if (c.omega_out) return Verdict::undecidable("termination is undecidable for " + cls);
      return terminates_monotone(net, net.initial);
  }
  return Verdict::unknown("unhandled problem");
}

}  // namespace wpn
