#include "wpn/reduce.hpp"

namespace wpn {

Marking MarkingLift::apply(const Marking& m) const {
  if (m.size() != place_map.size()) throw Error("marking dimension mismatch");
  Marking r(target_places);
  for (PlaceId p = 0; p < m.size(); ++p) r[place_map[p]] = m[p];
  for (const auto& [p, v] : fixed) r[p] = v;
  return r;
}

Marking MarkingLift::project(const Marking& m) const {
  if (m.size() != target_places) throw Error("marking dimension mismatch");
  Marking r(place_map.size());
  for (PlaceId p = 0; p < place_map.size(); ++p) r[p] = m[place_map[p]];
  return r;
}

std::string fresh_name(const std::string& base, std::set<std::string>& taken) {
  std::string name = base;
  for (int i = 1; taken.count(name); ++i) name = base + "_" + std::to_string(i);
  taken.insert(name);
  return name;
}

Net rem_input_omegas(const Net& net) {
  Net r = net;
  for (auto& t : r.transitions)
    for (auto& v : t.input)
      if (v.is_omega()) v = 0;
  return r;
}

ExtNet rem_input_omegas(const ExtNet& net) {
  ExtNet r = net;
  for (auto& t : r.transitions)
    for (auto& a : t.input)
      if (a.is_omega()) a = ArcLabel::num(0);
  return r;
}

namespace {

ExtTransition blank(std::string name, std::size_t places) {
  return {std::move(name), std::vector<ArcLabel>(places), std::vector<ArcLabel>(places)};
}

}  // namespace

ExtReduction lock_reduction(const ExtNet& net) {
  net.validate();
  const std::size_t n = net.place_count();
  std::set<std::string> place_names(net.places.begin(), net.places.end());
  std::set<std::string> trans_names;
  for (const auto& t : net.transitions) trans_names.insert(t.name);

  ExtReduction out;
  out.net.name = net.name + "_pn";
  out.net.places = net.places;
  const PlaceId lock_g = out.net.places.size();
  out.net.places.push_back(fresh_name("lock_g", place_names));
  out.lock_places.push_back(lock_g);

  struct Locks {
    PlaceId first = 0;
    PlaceId fill = 0;
  };
  std::vector<std::optional<Locks>> locks(net.transitions.size());
  for (std::size_t i = 0; i < net.transitions.size(); ++i) {
    const auto& t = net.transitions[i];
    if (!t.has_omega()) continue;
    Locks l;
    l.first = l.fill = out.net.places.size();
    out.net.places.push_back(fresh_name("lock_" + t.name, place_names));
    out.lock_places.push_back(l.first);
    if (t.has_special()) {
      l.fill = out.net.places.size();
      out.net.places.push_back(fresh_name("lock_" + t.name + "_mid", place_names));
      out.lock_places.push_back(l.fill);
    }
    locks[i] = l;
  }
  const std::size_t total = out.net.places.size();

  for (std::size_t i = 0; i < net.transitions.size(); ++i) {
    const auto& t = net.transitions[i];
    if (!locks[i]) {
      ExtTransition c = blank(t.name, total);
      std::copy(t.input.begin(), t.input.end(), c.input.begin());
      std::copy(t.output.begin(), t.output.end(), c.output.begin());
      c.input[lock_g] = c.output[lock_g] = ArcLabel::num(1);
      out.net.transitions.push_back(std::move(c));
      continue;
    }
    const Locks l = *locks[i];
    ExtTransition begin = blank(fresh_name(t.name + "_begin", trans_names), total);
    for (PlaceId p = 0; p < n; ++p)
      if (t.input[p].is_num()) begin.input[p] = t.input[p];
    begin.input[lock_g] = ArcLabel::num(1);
    begin.output[l.first] = ArcLabel::num(1);
    out.net.transitions.push_back(std::move(begin));

    if (t.has_special()) {
      ExtTransition mid = blank(fresh_name(t.name + "_mid", trans_names), total);
      for (PlaceId p = 0; p < n; ++p) {
        if (t.input[p].is_transfer() || t.input[p].is_reset()) mid.input[p] = t.input[p];
        if (t.output[p].is_transfer()) mid.output[p] = t.output[p];
      }
      mid.input[l.first] = ArcLabel::num(1);
      mid.output[l.fill] = ArcLabel::num(1);
      out.net.transitions.push_back(std::move(mid));
    }

    ExtTransition end = blank(fresh_name(t.name + "_end", trans_names), total);
    for (PlaceId p = 0; p < n; ++p)
      if (t.output[p].is_num()) end.output[p] = t.output[p];
    end.input[l.fill] = ArcLabel::num(1);
    end.output[lock_g] = ArcLabel::num(1);
    out.net.transitions.push_back(std::move(end));

    for (PlaceId p = 0; p < n; ++p) {
      if (!t.input[p].is_omega()) continue;
      ExtTransition d = blank(fresh_name(t.name + "_drain_" + net.places[p], trans_names), total);
      d.input[p] = ArcLabel::num(1);
      d.input[l.first] = d.output[l.first] = ArcLabel::num(1);
      out.net.transitions.push_back(std::move(d));
    }
    for (PlaceId p = 0; p < n; ++p) {
      if (!t.output[p].is_omega()) continue;
      ExtTransition f = blank(fresh_name(t.name + "_fill_" + net.places[p], trans_names), total);
      f.output[p] = ArcLabel::num(1);
      f.input[l.fill] = f.output[l.fill] = ArcLabel::num(1);
      out.net.transitions.push_back(std::move(f));
    }
  }

  out.lift.target_places = total;
  for (PlaceId p = 0; p < n; ++p) out.lift.place_map.push_back(p);
  for (PlaceId p : out.lock_places) out.lift.fixed.emplace_back(p, p == lock_g ? 1 : 0);
  out.net.initial = out.lift.apply(net.initial);
  return out;
}

PlainReduction to_plain_pn(const ExtNet& net) {
  if (net.classify().extended()) throw UnsupportedArcs("the plain-net reduction does not accept transfer or reset arcs");
  ExtReduction r = lock_reduction(net);
  return {to_net(r.net), std::move(r.lift)};
}

PlainReduction to_plain_pn(const Net& net) { return to_plain_pn(to_ext(net)); }

ExtNet reset_to_transfer(const ExtNet& net) {
  if (!net.classify().reset) return net;
  ExtNet r = net;
  std::set<std::string> names(net.places.begin(), net.places.end());
  const PlaceId trash = r.places.size();
  r.places.push_back(fresh_name("p_trash", names));
  r.initial.tokens.push_back(0);
  for (auto& t : r.transitions) {
    t.input.push_back(ArcLabel::num(0));
    t.output.push_back(ArcLabel::num(0));
    if (auto p = t.reset_place()) {
      t.input[*p] = ArcLabel::transfer();
      t.output[trash] = ArcLabel::transfer();
    }
  }
  return r;
}

}  // namespace wpn
