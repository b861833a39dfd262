#include "wpn/report.hpp"

#include <cmath>
#include <sstream>

namespace wpn {

std::string to_string(Answer a) {
  switch (a) {
    case Answer::yes: return "yes";
    case Answer::no: return "no";
    case Answer::undecidable: return "undecidable";
    case Answer::unknown: return "unknown";
  }
  return "unknown";
}

Names Names::of(const Net& net) {
  Names n{net.places, {}};
  for (const auto& t : net.transitions) n.transitions.push_back(t.name);
  return n;
}

Names Names::of(const ExtNet& net) {
  Names n{net.places, {}};
  for (const auto& t : net.transitions) n.transitions.push_back(t.name);
  return n;
}

std::string label_string(const OmegaMarking& m) {
  std::string s = "(";
  for (std::size_t i = 0; i < m.size(); ++i) {
    if (i) s += ',';
    s += m[i].is_omega() ? std::string("w") : std::to_string(m[i].value());
  }
  return s + ")";
}

Json marking_json(const Marking& m, const Names& names) {
  Json j = Json::object();
  for (PlaceId p = 0; p < m.size(); ++p) j[names.places.at(p)] = m[p];
  return j;
}

Json marking_json(const OmegaMarking& m, const Names& names) {
  Json j = Json::object();
  for (PlaceId p = 0; p < m.size(); ++p) {
    if (m[p].is_omega())
      j[names.places.at(p)] = "w";
    else
      j[names.places.at(p)] = m[p].value();
  }
  return j;
}

namespace {

Json effect_json(const EffectVector& e, const Names& names) {
  Json j = Json::object();
  for (PlaceId p = 0; p < e.size(); ++p) {
    if (e[p].is_omega())
      j[names.places.at(p)] = "w";
    else
      j[names.places.at(p)] = e[p].value();
  }
  return j;
}

Json steps_json(const Execution& e, const Names& names) {
  Json steps = Json::array();
  for (const auto& s : e.steps) {
    Json j;
    j["transition"] = names.transitions.at(s.transition);
    auto choice_map = [&](const std::map<PlaceId, Tokens>& c) {
      Json o = Json::object();
      for (const auto& [p, v] : c) o[names.places.at(p)] = v;
      return o;
    };
    if (!s.choices.omega_inputs.empty()) j["omega_inputs"] = choice_map(s.choices.omega_inputs);
    if (!s.choices.omega_outputs.empty()) j["omega_outputs"] = choice_map(s.choices.omega_outputs);
    j["marking"] = marking_json(s.after, names);
    steps.push_back(std::move(j));
  }
  return steps;
}

}  // namespace

Json witness_json(const Witness& w, const Names& names) {
  struct Visitor {
    const Names& names;
    Json operator()(const std::monostate&) const { return nullptr; }
    Json operator()(const Execution& e) const {
      Json j;
      j["kind"] = "execution";
      j["initial"] = marking_json(e.initial, names);
      j["steps"] = steps_json(e, names);
      return j;
    }
    Json operator()(const SelfCoveringExecution& e) const {
      Json j;
      j["kind"] = "self-covering-execution";
      j["initial"] = marking_json(e.run.initial, names);
      j["steps"] = steps_json(e.run, names);
      j["loop_start"] = e.loop_start;
      return j;
    }
    Json operator()(const StutterWitness& s) const {
      Json j;
      j["kind"] = "stuttering-path";
      j["prefix"] = s.pi1;
      Json loop = Json::array();
      for (const auto& st : s.pi2) {
        Json e;
        e["from"] = st.from;
        e["to"] = st.to;
        if (st.transition)
          e["transition"] = names.transitions.at(*st.transition);
        else
          e["transition"] = nullptr;
        loop.push_back(std::move(e));
      }
      j["loop"] = std::move(loop);
      Json ts = Json::array();
      for (TransitionId t : s.loop_transitions()) ts.push_back(names.transitions.at(t));
      j["loop_transitions"] = std::move(ts);
      j["start_label"] = marking_json(s.start_label, names);
      j["total_effect"] = effect_json(s.total_effect, names);
      return j;
    }
    Json operator()(const TransitionTrace& t) const {
      Json j;
      j["kind"] = "transition-trace";
      j["net"] = t.net_name;
      j["transitions"] = t.transitions;
      return j;
    }
  };
  return std::visit(Visitor{names}, w);
}

Json verdict_report(const ExtNet& net, const Problem& problem, const std::string& problem_text, const Verdict& v,
                    double time_ms) {
  const Names names = Names::of(net);
  Json j;
  j["schema"] = kReportSchema;
  Json pb;
  pb["kind"] = to_string(problem.kind);
  pb["text"] = problem_text;
  if (problem.place) pb["place"] = names.places.at(*problem.place);
  if (problem.target) pb["target"] = marking_json(*problem.target, names);
  if (problem.kind == ProblemKind::reachability) pb["bounded_semi_decision"] = true;
  j["problem"] = std::move(pb);
  Json n;
  n["name"] = net.name;
  n["class"] = net.classify().name();
  n["places"] = net.place_count();
  n["transitions"] = net.transitions.size();
  j["net"] = std::move(n);
  j["verdict"] = to_string(v.answer);
  j["detail"] = v.detail;
  if (v.has_witness()) j["witness"] = witness_json(v.witness, names);
  if (v.budget) j["budget"] = *v.budget;
  j["stats"] = {{"nodes", v.nodes}, {"time_ms", time_ms}};
  return j;
}

Json tree_json(const KMTree& tree) {
  const Names names = Names::of(tree.net());
  Json j;
  j["net"] = tree.net().name;
  j["size"] = tree.size();
  j["max_call_depth"] = tree.max_call_depth();
  Json nodes = Json::array();
  for (NodeId i = 0; i < tree.size(); ++i) {
    const KMNode& n = tree.node(i);
    Json o;
    o["id"] = i;
    o["label"] = label_string(n.label);
    o["parent"] = n.parent ? Json(*n.parent) : Json(nullptr);
    o["transition"] = n.via ? Json(names.transitions.at(*n.via)) : Json(nullptr);
    o["call_depth"] = n.call_depth;
    o["stopped"] = n.stopped;
    if (n.jump_target) o["jump_target"] = *n.jump_target;
    Json kids = Json::array();
    for (std::size_t c = 0; c < n.children.size(); ++c)
      kids.push_back(Json{{"node", n.children[c]}, {"transition", names.transitions.at(n.child_via[c])}});
    o["children"] = std::move(kids);
    nodes.push_back(std::move(o));
  }
  j["nodes"] = std::move(nodes);
  Json cs = Json::array();
  for (const auto& m : coverability_set(tree)) cs.push_back(label_string(m));
  j["coverability_set"] = std::move(cs);
  j["bounded"] = is_bounded(tree);
  Json unbounded = Json::array();
  for (PlaceId p = 0; p < tree.net().place_count(); ++p)
    if (!place_bounded(tree, p)) unbounded.push_back(names.places[p]);
  j["unbounded_places"] = std::move(unbounded);
  return j;
}

namespace {

std::string dot_quote(const std::string& s) {
  std::string r = "\"";
  for (char c : s) {
    if (c == '"' || c == '\\') r += '\\';
    r += c;
  }
  return r + "\"";
}

}  // namespace

std::string tree_dot(const KMTree& tree) {
  const Names names = Names::of(tree.net());
  std::ostringstream os;
  os << "digraph " << dot_quote("km_" + tree.net().name) << " {\n";
  os << "  node [shape=box, fontname=\"monospace\"];\n";
  for (NodeId i = 0; i < tree.size(); ++i) {
    const KMNode& n = tree.node(i);
    os << "  n" << i << " [label=" << dot_quote("n" + std::to_string(i) + " " + label_string(n.label));
    if (n.stopped) os << ", style=dashed";
    os << "];\n";
  }
  for (NodeId i = 0; i < tree.size(); ++i) {
    const KMNode& n = tree.node(i);
    for (std::size_t c = 0; c < n.children.size(); ++c)
      os << "  n" << i << " -> n" << n.children[c] << " [label=" << dot_quote(names.transitions.at(n.child_via[c]))
         << "];\n";
  }
  for (NodeId i = 0; i < tree.size(); ++i) {
    const KMNode& n = tree.node(i);
    if (n.jump_target) os << "  n" << i << " -> n" << *n.jump_target << " [style=dotted, constraint=false];\n";
  }
  os << "}\n";
  return os.str();
}

Json graph_json(const ExtNet& net, const ReachabilityGraph& g, const ExploreBudget& budget) {
  const Names names = Names::of(net);
  Json j;
  j["net"] = net.name;
  j["depth"] = budget.depth;
  j["cap"] = budget.cap;
  j["truncated"] = g.truncated;
  Json ms = Json::array();
  for (std::size_t i = 0; i < g.markings.size(); ++i)
    ms.push_back({{"id", i}, {"depth", g.depth[i]}, {"marking", marking_json(g.markings[i], names)}});
  j["markings"] = std::move(ms);
  Json es = Json::array();
  for (const auto& e : g.edges) {
    Json o;
    o["from"] = e.from;
    o["to"] = e.to;
    o["transition"] = names.transitions.at(e.transition);
    auto choice_map = [&](const std::map<PlaceId, Tokens>& c) {
      Json x = Json::object();
      for (const auto& [p, v] : c) x[names.places.at(p)] = v;
      return x;
    };
    if (!e.choices.omega_inputs.empty()) o["omega_inputs"] = choice_map(e.choices.omega_inputs);
    if (!e.choices.omega_outputs.empty()) o["omega_outputs"] = choice_map(e.choices.omega_outputs);
    es.push_back(std::move(o));
  }
  j["edges"] = std::move(es);
  return j;
}

std::string graph_dot(const ExtNet& net, const ReachabilityGraph& g) {
  const Names names = Names::of(net);
  std::ostringstream os;
  os << "digraph " << dot_quote("reach_" + net.name) << " {\n";
  os << "  node [shape=ellipse, fontname=\"monospace\"];\n";
  for (std::size_t i = 0; i < g.markings.size(); ++i)
    os << "  m" << i << " [label=" << dot_quote(label_string(OmegaMarking(g.markings[i]))) << "];\n";
  for (const auto& e : g.edges) {
    std::string label = names.transitions.at(e.transition);
    for (const auto& [p, v] : e.choices.omega_inputs) label += " " + names.places[p] + "-" + std::to_string(v);
    for (const auto& [p, v] : e.choices.omega_outputs) label += " " + names.places[p] + "+" + std::to_string(v);
    os << "  m" << e.from << " -> m" << e.to << " [label=" << dot_quote(label) << "];\n";
  }
  os << "}\n";
  return os.str();
}

namespace {

Json big_json(const BigNat& v) {
  Json j;
  j["bits"] = mpz_sizeinbase(v.get_mpz_t(), 2);
  if (j["bits"].get<std::size_t>() <= 256) j["value"] = v.get_str();
  return j;
}

}  // namespace

Json bounds_json(const Net& net, std::uint64_t c, std::uint64_t max_bits) {
  const RackoffParams params = RackoffParams::from_net(net, c);
  Json j;
  j["net"] = net.name;
  j["R"] = params.R;
  j["places"] = params.places;
  j["c"] = params.c;
  j["k"] = params.k;
  const std::vector<double> est = ell_log2_estimates(params);
  // Largest index whose values stay below the cap.
  std::size_t last = 0;
  bool any = est[0] <= static_cast<double>(max_bits);
  while (any && last < params.places && est[last + 1] <= static_cast<double>(max_bits)) ++last;
  Json h1 = Json::array(), h2 = Json::array(), ell = Json::array();
  if (any) {
    ThresholdTables t = threshold_sequences_upto(params, last, max_bits);
    for (std::size_t i = 0; i <= last; ++i) {
      h1.push_back(big_json(t.h1[i]));
      h2.push_back(big_json(t.h2[i]));
      ell.push_back(big_json(t.ell[i]));
    }
  }
  for (std::size_t i = any ? last + 1 : 0; i <= params.places; ++i) {
    Json e;
    e["bits_estimate"] = static_cast<std::uint64_t>(std::ceil(est[i])) + 1;
    ell.push_back(std::move(e));
  }
  j["h1"] = std::move(h1);
  j["h2"] = std::move(h2);
  j["ell"] = std::move(ell);
  j["length_bound"] = j["ell"].back();
  Json checks = Json::array();
  for (std::size_t i = 0; i <= params.places; ++i) {
    Json e;
    e["i"] = i;
    try {
      e["holds"] = check_growth_bound(params, i, max_bits);
    } catch (const BoundTooLarge&) {
      e["holds"] = nullptr;
    }
    checks.push_back(std::move(e));
  }
  j["growth_check"] = std::move(checks);
  return j;
}

}  // namespace wpn
