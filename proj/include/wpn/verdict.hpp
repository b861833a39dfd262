#pragma once

#include <optional>
#include <string>
#include <variant>

#include "wpn/core.hpp"
#include "wpn/semantics.hpp"

namespace wpn {

enum class Answer { yes, no, undecidable, unknown };

std::string to_string(Answer a);

using NodeId = std::size_t;

struct StutterStep {
  NodeId from = 0;
  NodeId to = 0;
  // Empty for a jump back to an equal-labelled ancestor.
  std::optional<TransitionId> transition;
};

// pi1 is the tree path from the root to the start of pi2; pi2 is a walk with
// nonnegative total effect inside one constant-support region.
struct StutterWitness {
  std::vector<NodeId> pi1;
  std::vector<StutterStep> pi2;
  EffectVector total_effect;
  OmegaMarking start_label;

  std::vector<TransitionId> loop_transitions() const;
};

// A transition sequence of a (possibly derived) net, by name.
struct TransitionTrace {
  std::string net_name;
  std::vector<std::string> transitions;
};

using Witness = std::variant<std::monostate, Execution, SelfCoveringExecution, StutterWitness, TransitionTrace>;

struct Verdict {
  Answer answer = Answer::unknown;
  std::string detail;
  std::optional<std::uint64_t> budget;
  Witness witness;
  // Size of the structure the procedure built (tree nodes, states, basis elements).
  std::size_t nodes = 0;

  static Verdict yes(std::string detail = {}) { return {Answer::yes, std::move(detail), std::nullopt, {}, 0}; }
  static Verdict no(std::string detail = {}) { return {Answer::no, std::move(detail), std::nullopt, {}, 0}; }
  static Verdict undecidable(std::string detail) { return {Answer::undecidable, std::move(detail), std::nullopt, {}, 0}; }
  static Verdict unknown(std::string detail, std::optional<std::uint64_t> budget = std::nullopt) {
    return {Answer::unknown, std::move(detail), budget, {}, 0};
  }
  bool has_witness() const { return !std::holds_alternative<std::monostate>(witness); }
};

}  // namespace wpn
