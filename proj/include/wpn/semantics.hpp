#pragma once

#include <map>
#include <optional>

#include "wpn/core.hpp"

namespace wpn {

class NotEnabled : public Error {
 public:
  using Error::Error;
};
class ChoiceOutOfRange : public Error {
 public:
  using Error::Error;
};
class DomainExceeded : public Error {
 public:
  using Error::Error;
};

// Tokens consumed on omega inputs and produced on omega outputs by one firing.
struct FiringChoices {
  std::map<PlaceId, Tokens> omega_inputs;
  std::map<PlaceId, Tokens> omega_outputs;
  bool operator==(const FiringChoices&) const = default;
};

struct Step {
  TransitionId transition = 0;
  FiringChoices choices;
  Marking after;
  bool operator==(const Step&) const = default;
};

// m0 t1 m1 ... tn mn, with the choices used at every step.
struct Execution {
  Marking initial;
  std::vector<Step> steps;

  std::size_t length() const { return steps.size(); }
  const Marking& marking(std::size_t i) const { return i == 0 ? initial : steps[i - 1].after; }
  std::vector<TransitionId> transitions() const;
  bool operator==(const Execution&) const = default;
};

// An execution with positions loop_start < length() and m_{loop_start} <= m_{length()}.
struct SelfCoveringExecution {
  Execution run;
  std::size_t loop_start = 0;
};

bool enabled(const OmegaMarking& m, const Transition& t);
bool enabled(const Marking& m, const Transition& t);

// m - I(t) + O(t) under the extended arithmetic.
OmegaMarking fire_omega(const OmegaMarking& m, const Transition& t);

// Choice keys must be exactly the omega arcs of t; omega inputs range over 0..m(p).
Marking fire_concrete(const Marking& m, const Transition& t, const FiringChoices& choices);

struct Successor {
  FiringChoices choices;
  Marking marking;
};

// All concrete successors with omega outputs in 0..cap and omega inputs in 0..m(p).
std::vector<Successor> successors(const Marking& m, const Transition& t, Tokens cap);

// Checks every step of the execution with fire_concrete.
bool replays(const Net& net, const Execution& e);
bool is_self_covering(const Net& net, const SelfCoveringExecution& e);

// h : {0..|P|} -> N as an explicit table.
struct ThresholdFn {
  std::vector<Tokens> values;
  Tokens at(std::size_t i) const;
};

OmegaMarking threshold_ceil(const OmegaMarking& m, const ThresholdFn& h);
OmegaMarking threshold_floor(const OmegaMarking& m, const ThresholdFn& h);
// ceil(m + effect(t)); requires t enabled at m.
OmegaMarking fire_threshold(const OmegaMarking& m, const Transition& t, const ThresholdFn& h);

}  // namespace wpn
