#include "wpn/semantics.hpp"

namespace wpn {

std::vector<TransitionId> Execution::transitions() const {
  std::vector<TransitionId> r;
  r.reserve(steps.size());
  for (const auto& s : steps) r.push_back(s.transition);
  return r;
}

bool enabled(const OmegaMarking& m, const Transition& t) {
  if (m.size() != t.input.size()) throw Error("marking dimension mismatch");
  for (PlaceId p = 0; p < m.size(); ++p)
    if (!t.input[p].is_omega() && m[p] < t.input[p]) return false;
  return true;
}

bool enabled(const Marking& m, const Transition& t) {
  if (m.size() != t.input.size()) throw Error("marking dimension mismatch");
  for (PlaceId p = 0; p < m.size(); ++p)
    if (!t.input[p].is_omega() && m[p] < t.input[p].value()) return false;
  return true;
}

OmegaMarking fire_omega(const OmegaMarking& m, const Transition& t) {
  if (!enabled(m, t)) throw NotEnabled("transition '" + t.name + "' is not enabled");
  OmegaMarking r(m.size());
  for (PlaceId p = 0; p < m.size(); ++p) {
    EffectValue v = ext_add(ext_sub(to_effect(m[p]), to_effect(t.input[p])), to_effect(t.output[p]));
    r[p] = to_ext(v);
  }
  return r;
}

namespace {

void check_keys(const std::map<PlaceId, Tokens>& chosen, const std::vector<ExtValue>& arcs, const std::string& tname) {
  std::size_t omega_arcs = 0;
  for (PlaceId p = 0; p < arcs.size(); ++p) omega_arcs += arcs[p].is_omega();
  for (const auto& [p, _] : chosen)
    if (p >= arcs.size() || !arcs[p].is_omega())
      throw ChoiceOutOfRange("choice for place " + std::to_string(p) + " which is not an omega arc of '" + tname + "'");
  if (chosen.size() != omega_arcs) throw ChoiceOutOfRange("missing omega choice for '" + tname + "'");
}

Tokens checked_add(Tokens a, Tokens b) {
  Tokens r;
  if (__builtin_add_overflow(a, b, &r)) throw std::overflow_error("token overflow");
  return r;
}

}  // namespace

Marking fire_concrete(const Marking& m, const Transition& t, const FiringChoices& c) {
  if (!enabled(m, t)) throw NotEnabled("transition '" + t.name + "' is not enabled");
  check_keys(c.omega_inputs, t.input, t.name);
  check_keys(c.omega_outputs, t.output, t.name);
  Marking r(m.size());
  for (PlaceId p = 0; p < m.size(); ++p) {
    Tokens in = t.input[p].is_omega() ? c.omega_inputs.at(p) : t.input[p].value();
    if (in > m[p]) throw ChoiceOutOfRange("omega input choice exceeds available tokens");
    Tokens out = t.output[p].is_omega() ? c.omega_outputs.at(p) : t.output[p].value();
    r[p] = checked_add(m[p] - in, out);
  }
  return r;
}

std::vector<Successor> successors(const Marking& m, const Transition& t, Tokens cap) {
  std::vector<Successor> out;
  if (!enabled(m, t)) return out;
  // Odometer over (input choices..., output choices...) in place order.
  struct Slot {
    PlaceId place;
    bool input;
    Tokens limit;
  };
  std::vector<Slot> slots;
  for (PlaceId p = 0; p < m.size(); ++p)
    if (t.input[p].is_omega()) slots.push_back({p, true, m[p]});
  for (PlaceId p = 0; p < m.size(); ++p)
    if (t.output[p].is_omega()) slots.push_back({p, false, cap});
  std::vector<Tokens> digit(slots.size(), 0);
  while (true) {
    FiringChoices c;
    for (std::size_t i = 0; i < slots.size(); ++i)
      (slots[i].input ? c.omega_inputs : c.omega_outputs)[slots[i].place] = digit[i];
    Marking next = fire_concrete(m, t, c);
    out.push_back({std::move(c), std::move(next)});
    bool advanced = false;
    for (std::size_t i = slots.size(); i-- > 0;) {
      if (digit[i] < slots[i].limit) {
        ++digit[i];
        advanced = true;
        break;
      }
      digit[i] = 0;
    }
    if (!advanced) return out;
  }
}

bool replays(const Net& net, const Execution& e) {
  if (e.initial.size() != net.place_count()) return false;
  Marking cur = e.initial;
  for (const auto& s : e.steps) {
    if (s.transition >= net.transitions.size()) return false;
    try {
      cur = fire_concrete(cur, net.transitions[s.transition], s.choices);
    } catch (const Error&) {
      return false;
    }
    if (cur != s.after) return false;
  }
  return true;
}

bool is_self_covering(const Net& net, const SelfCoveringExecution& e) {
  if (!replays(net, e.run)) return false;
  if (e.loop_start >= e.run.length()) return false;
  return leq(e.run.marking(e.loop_start), e.run.marking(e.run.length()));
}

Tokens ThresholdFn::at(std::size_t i) const {
  if (i >= values.size()) throw DomainExceeded("threshold function undefined at " + std::to_string(i));
  return values[i];
}

OmegaMarking threshold_ceil(const OmegaMarking& m, const ThresholdFn& h) {
  Tokens bound = h.at(nb_nat(m));
  OmegaMarking r = m;
  for (auto& v : r.values)
    if (!v.is_omega() && v.value() >= bound) v = kOmega;
  return r;
}

OmegaMarking threshold_floor(const OmegaMarking& m, const ThresholdFn& h) {
  if (nb_omega(m) == 0) return m;
  Tokens fill = h.at(nb_nat(m) + 1);
  OmegaMarking r = m;
  for (auto& v : r.values)
    if (v.is_omega()) v = fill;
  return r;
}

OmegaMarking fire_threshold(const OmegaMarking& m, const Transition& t, const ThresholdFn& h) {
  if (!enabled(m, t)) throw NotEnabled("transition '" + t.name + "' is not enabled");
  EffectVector e = effect_of(t);
  OmegaMarking r(m.size());
  for (PlaceId p = 0; p < m.size(); ++p) r[p] = to_ext(ext_add(to_effect(m[p]), e[p]));
  return threshold_ceil(r, h);
}

}  // namespace wpn
