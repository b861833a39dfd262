#pragma once

#include <compare>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <initializer_list>
#include <ostream>
#include <stdexcept>
#include <string>
#include <vector>

namespace wpn {

using Tokens = std::uint64_t;
using PlaceId = std::size_t;
using TransitionId = std::size_t;

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// A natural number or omega. Used for arc weights and omega-marking entries.
class ExtValue {
 public:
  constexpr ExtValue() = default;
  constexpr ExtValue(Tokens n) : value_(n) {}

  static constexpr ExtValue omega() {
    ExtValue v;
    v.omega_ = true;
    return v;
  }

  constexpr bool is_omega() const { return omega_; }
  Tokens value() const;

  friend constexpr bool operator==(const ExtValue& a, const ExtValue& b) {
    return a.omega_ == b.omega_ && (a.omega_ || a.value_ == b.value_);
  }
  friend constexpr std::strong_ordering operator<=>(const ExtValue& a, const ExtValue& b) {
    if (a.omega_ || b.omega_) return a.omega_ <=> b.omega_;
    return a.value_ <=> b.value_;
  }

 private:
  Tokens value_ = 0;
  bool omega_ = false;
};

inline constexpr ExtValue kOmega = ExtValue::omega();

// An integer or omega. Used for effects of transitions and sequences.
class EffectValue {
 public:
  constexpr EffectValue() = default;
  constexpr EffectValue(std::int64_t n) : value_(n) {}

  static constexpr EffectValue omega() {
    EffectValue v;
    v.omega_ = true;
    return v;
  }

  constexpr bool is_omega() const { return omega_; }
  std::int64_t value() const;

  friend constexpr bool operator==(const EffectValue& a, const EffectValue& b) {
    return a.omega_ == b.omega_ && (a.omega_ || a.value_ == b.value_);
  }
  friend constexpr std::strong_ordering operator<=>(const EffectValue& a, const EffectValue& b) {
    if (a.omega_ || b.omega_) return a.omega_ <=> b.omega_;
    return a.value_ <=> b.value_;
  }

 private:
  std::int64_t value_ = 0;
  bool omega_ = false;
};

inline constexpr EffectValue kOmegaEffect = EffectValue::omega();

EffectValue to_effect(ExtValue v);
// Throws if v is negative.
ExtValue to_ext(EffectValue v);

EffectValue ext_add(EffectValue a, EffectValue b);
EffectValue ext_sub(EffectValue a, EffectValue b);

std::string to_string(ExtValue v);
std::string to_string(EffectValue v);
std::ostream& operator<<(std::ostream& os, ExtValue v);
std::ostream& operator<<(std::ostream& os, EffectValue v);

struct Marking {
  std::vector<Tokens> tokens;

  Marking() = default;
  explicit Marking(std::size_t n) : tokens(n, 0) {}
  explicit Marking(std::vector<Tokens> v) : tokens(std::move(v)) {}
  Marking(std::initializer_list<Tokens> v) : tokens(v) {}

  std::size_t size() const { return tokens.size(); }
  Tokens& operator[](PlaceId p) { return tokens[p]; }
  Tokens operator[](PlaceId p) const { return tokens[p]; }

  friend bool operator==(const Marking&, const Marking&) = default;
  friend auto operator<=>(const Marking&, const Marking&) = default;
};

struct OmegaMarking {
  std::vector<ExtValue> values;

  OmegaMarking() = default;
  explicit OmegaMarking(std::size_t n) : values(n) {}
  explicit OmegaMarking(std::vector<ExtValue> v) : values(std::move(v)) {}
  OmegaMarking(std::initializer_list<ExtValue> v) : values(v) {}
  explicit OmegaMarking(const Marking& m);

  std::size_t size() const { return values.size(); }
  ExtValue& operator[](PlaceId p) { return values[p]; }
  ExtValue operator[](PlaceId p) const { return values[p]; }

  friend bool operator==(const OmegaMarking&, const OmegaMarking&) = default;
  friend auto operator<=>(const OmegaMarking&, const OmegaMarking&) = default;
};

using EffectVector = std::vector<EffectValue>;

std::ostream& operator<<(std::ostream& os, const Marking& m);
std::ostream& operator<<(std::ostream& os, const OmegaMarking& m);
std::ostream& operator<<(std::ostream& os, const EffectVector& e);

struct Transition {
  std::string name;
  std::vector<ExtValue> input;
  std::vector<ExtValue> output;

  bool has_omega_input() const;
  bool has_omega_output() const;
  bool operator==(const Transition&) const = default;
};

enum class NetKind { plain, omega_input, omega_output, omega };

std::string to_string(NetKind k);

struct Net {
  std::string name;
  std::vector<std::string> places;
  std::vector<Transition> transitions;
  Marking initial;

  std::size_t place_count() const { return places.size(); }
  NetKind kind() const;
  // Throws Error on dimension mismatches or duplicate names.
  void validate() const;
  std::size_t place_index(const std::string& name) const;
  std::size_t transition_index(const std::string& name) const;
  bool operator==(const Net&) const = default;
};

// Places marked omega, in index order.
std::vector<PlaceId> omega_support(const OmegaMarking& m);
std::size_t nb_omega(const OmegaMarking& m);
std::size_t nb_nat(const OmegaMarking& m);
bool same_support(const OmegaMarking& a, const OmegaMarking& b);

// m1 <=_{restrict} m2: pointwise <= on restrict, equality elsewhere.
bool leq_on(const OmegaMarking& m1, const OmegaMarking& m2, const std::vector<bool>& restrict);
bool leq(const OmegaMarking& m1, const OmegaMarking& m2);
bool leq(const Marking& m1, const Marking& m2);
// leq and not equal.
bool strictly_less(const OmegaMarking& m1, const OmegaMarking& m2);
bool in_gamma(const Marking& m, const OmegaMarking& om);
bool downward_contains(const std::vector<OmegaMarking>& set, const Marking& m);

EffectVector effect_of(const Transition& t);
EffectVector effect_of_seq(const Net& net, const std::vector<TransitionId>& seq);
EffectVector add_effects(const EffectVector& a, const EffectVector& b);
bool nonnegative(const EffectVector& e);

struct MarkingHash {
  std::size_t operator()(const Marking& m) const;
  std::size_t operator()(const OmegaMarking& m) const;
};

}  // namespace wpn
