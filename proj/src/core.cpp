#include "wpn/core.hpp"

#include <sstream>
#include <unordered_set>

namespace wpn {

Tokens ExtValue::value() const {
  if (omega_) throw Error("value() called on omega");
  return value_;
}

std::int64_t EffectValue::value() const {
  if (omega_) throw Error("value() called on omega");
  return value_;
}

EffectValue to_effect(ExtValue v) {
  if (v.is_omega()) return kOmegaEffect;
  if (v.value() > static_cast<Tokens>(INT64_MAX)) throw std::overflow_error("token count exceeds effect range");
  return EffectValue(static_cast<std::int64_t>(v.value()));
}

ExtValue to_ext(EffectValue v) {
  if (v.is_omega()) return kOmega;
  if (v.value() < 0) throw Error("negative value cannot be a token count");
  return ExtValue(static_cast<Tokens>(v.value()));
}

EffectValue ext_add(EffectValue a, EffectValue b) {
  if (a.is_omega() || b.is_omega()) return kOmegaEffect;
  std::int64_t r;
  if (__builtin_add_overflow(a.value(), b.value(), &r)) throw std::overflow_error("effect overflow");
  return r;
}

// omega - x = omega, c - omega = c.
EffectValue ext_sub(EffectValue a, EffectValue b) {
  if (a.is_omega()) return kOmegaEffect;
  if (b.is_omega()) return a;
  std::int64_t r;
  if (__builtin_sub_overflow(a.value(), b.value(), &r)) throw std::overflow_error("effect overflow");
  return r;
}

std::string to_string(ExtValue v) { return v.is_omega() ? "w" : std::to_string(v.value()); }
std::string to_string(EffectValue v) { return v.is_omega() ? "w" : std::to_string(v.value()); }
std::ostream& operator<<(std::ostream& os, ExtValue v) { return os << to_string(v); }
std::ostream& operator<<(std::ostream& os, EffectValue v) { return os << to_string(v); }

OmegaMarking::OmegaMarking(const Marking& m) {
  values.reserve(m.size());
  for (Tokens t : m.tokens) values.emplace_back(t);
}

namespace {
template <typename Seq>
std::ostream& print_tuple(std::ostream& os, const Seq& s) {
  os << '(';
  for (std::size_t i = 0; i < s.size(); ++i) {
    if (i) os << ',';
    os << s[i];
  }
  return os << ')';
}
}  // namespace

std::ostream& operator<<(std::ostream& os, const Marking& m) { return print_tuple(os, m.tokens); }
std::ostream& operator<<(std::ostream& os, const OmegaMarking& m) { return print_tuple(os, m.values); }
std::ostream& operator<<(std::ostream& os, const EffectVector& e) { return print_tuple(os, e); }

bool Transition::has_omega_input() const {
  for (auto v : input)
    if (v.is_omega()) return true;
  return false;
}

bool Transition::has_omega_output() const {
  for (auto v : output)
    if (v.is_omega()) return true;
  return false;
}

std::string to_string(NetKind k) {
  switch (k) {
    case NetKind::plain: return "PN";
    case NetKind::omega_input: return "wIPN";
    case NetKind::omega_output: return "wOPN";
    case NetKind::omega: return "wPN";
  }
  return "?";
}

NetKind Net::kind() const {
  bool in = false, out = false;
  for (const auto& t : transitions) {
    in = in || t.has_omega_input();
    out = out || t.has_omega_output();
  }
  if (in && out) return NetKind::omega;
  if (in) return NetKind::omega_input;
  if (out) return NetKind::omega_output;
  return NetKind::plain;
}

void Net::validate() const {
  std::unordered_set<std::string> seen;
  for (const auto& p : places)
    if (!seen.insert(p).second) throw Error("duplicate place name '" + p + "'");
  seen.clear();
  for (const auto& t : transitions) {
    if (!seen.insert(t.name).second) throw Error("duplicate transition name '" + t.name + "'");
    if (t.input.size() != places.size() || t.output.size() != places.size())
      throw Error("transition '" + t.name + "' has wrong arc dimension");
  }
  if (initial.size() != places.size()) throw Error("initial marking has wrong dimension");
}

std::size_t Net::place_index(const std::string& n) const {
  for (std::size_t i = 0; i < places.size(); ++i)
    if (places[i] == n) return i;
  throw Error("unknown place '" + n + "'");
}

std::size_t Net::transition_index(const std::string& n) const {
  for (std::size_t i = 0; i < transitions.size(); ++i)
    if (transitions[i].name == n) return i;
  throw Error("unknown transition '" + n + "'");
}

std::vector<PlaceId> omega_support(const OmegaMarking& m) {
  std::vector<PlaceId> s;
  for (PlaceId p = 0; p < m.size(); ++p)
    if (m[p].is_omega()) s.push_back(p);
  return s;
}

std::size_t nb_omega(const OmegaMarking& m) {
  std::size_t n = 0;
  for (auto v : m.values) n += v.is_omega();
  return n;
}

std::size_t nb_nat(const OmegaMarking& m) { return m.size() - nb_omega(m); }

bool same_support(const OmegaMarking& a, const OmegaMarking& b) {
  if (a.size() != b.size()) return false;
  for (PlaceId p = 0; p < a.size(); ++p)
    if (a[p].is_omega() != b[p].is_omega()) return false;
  return true;
}

bool leq_on(const OmegaMarking& m1, const OmegaMarking& m2, const std::vector<bool>& restrict) {
  if (m1.size() != m2.size()) throw Error("marking dimension mismatch");
  for (PlaceId p = 0; p < m1.size(); ++p) {
    bool in = p < restrict.size() && restrict[p];
    if (in ? !(m1[p] <= m2[p]) : !(m1[p] == m2[p])) return false;
  }
  return true;
}

bool leq(const OmegaMarking& m1, const OmegaMarking& m2) {
  if (m1.size() != m2.size()) throw Error("marking dimension mismatch");
  for (PlaceId p = 0; p < m1.size(); ++p)
    if (m1[p] > m2[p]) return false;
  return true;
}

bool leq(const Marking& m1, const Marking& m2) {
  if (m1.size() != m2.size()) throw Error("marking dimension mismatch");
  for (PlaceId p = 0; p < m1.size(); ++p)
    if (m1[p] > m2[p]) return false;
  return true;
}

bool strictly_less(const OmegaMarking& m1, const OmegaMarking& m2) { return leq(m1, m2) && m1 != m2; }

bool in_gamma(const Marking& m, const OmegaMarking& om) {
  if (m.size() != om.size()) throw Error("marking dimension mismatch");
  for (PlaceId p = 0; p < m.size(); ++p)
    if (!om[p].is_omega() && om[p].value() != m[p]) return false;
  return true;
}

bool downward_contains(const std::vector<OmegaMarking>& set, const Marking& m) {
  OmegaMarking om(m);
  for (const auto& s : set)
    if (leq(om, s)) return true;
  return false;
}

EffectVector effect_of(const Transition& t) {
  EffectVector e(t.input.size());
  for (PlaceId p = 0; p < e.size(); ++p) e[p] = ext_sub(to_effect(t.output[p]), to_effect(t.input[p]));
  return e;
}

EffectVector add_effects(const EffectVector& a, const EffectVector& b) {
  if (a.size() != b.size()) throw Error("effect dimension mismatch");
  EffectVector r(a.size());
  for (PlaceId p = 0; p < a.size(); ++p) r[p] = ext_add(a[p], b[p]);
  return r;
}

EffectVector effect_of_seq(const Net& net, const std::vector<TransitionId>& seq) {
  EffectVector e(net.place_count(), EffectValue(0));
  for (TransitionId t : seq) e = add_effects(e, effect_of(net.transitions.at(t)));
  return e;
}

bool nonnegative(const EffectVector& e) {
  for (auto v : e)
    if (v < EffectValue(0)) return false;
  return true;
}

std::size_t MarkingHash::operator()(const Marking& m) const {
  std::size_t h = m.size();
  for (Tokens t : m.tokens) h = h * 1000003u ^ std::hash<Tokens>{}(t);
  return h;
}

std::size_t MarkingHash::operator()(const OmegaMarking& m) const {
  std::size_t h = m.size();
  for (auto v : m.values) h = h * 1000003u ^ (v.is_omega() ? 0x9e3779b97f4a7c15ull : std::hash<Tokens>{}(v.value()));
  return h;
}

}  // namespace wpn
