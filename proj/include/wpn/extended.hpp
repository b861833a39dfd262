#pragma once

#include <optional>
#include <string>
#include <vector>

#include "wpn/core.hpp"
#include "wpn/semantics.hpp"
#include "wpn/verdict.hpp"

namespace wpn {

class WellFormednessError : public Error {
 public:
  using Error::Error;
};
class UnsupportedNet : public Error {
 public:
  using Error::Error;
};
class UnsupportedArcs : public Error {
 public:
  using Error::Error;
};

struct ArcLabel {
  enum class Kind { num, omega, transfer, reset };
  Kind kind = Kind::num;
  Tokens weight = 0;

  static ArcLabel num(Tokens n) { return {Kind::num, n}; }
  static ArcLabel omega() { return {Kind::omega, 0}; }
  static ArcLabel transfer() { return {Kind::transfer, 0}; }
  static ArcLabel reset() { return {Kind::reset, 0}; }

  bool is_num() const { return kind == Kind::num; }
  bool is_omega() const { return kind == Kind::omega; }
  bool is_transfer() const { return kind == Kind::transfer; }
  bool is_reset() const { return kind == Kind::reset; }
  bool operator==(const ArcLabel&) const = default;
};

std::string to_string(const ArcLabel& a);

struct ExtTransition {
  std::string name;
  std::vector<ArcLabel> input;
  std::vector<ArcLabel> output;

  std::optional<PlaceId> transfer_source() const;
  std::optional<PlaceId> transfer_target() const;
  std::optional<PlaceId> reset_place() const;
  bool has_omega() const;
  bool has_special() const;
  bool operator==(const ExtTransition&) const = default;
};

// Which arc features a net uses.
struct NetClass {
  bool omega_in = false;
  bool omega_out = false;
  bool transfer = false;
  bool reset = false;

  bool extended() const { return transfer || reset; }
  // e.g. "wPN", "wOPN+T", "PN+R", "wIPN+T+R".
  std::string name() const;
  bool operator==(const NetClass&) const = default;
};

struct ExtNet {
  std::string name;
  std::vector<std::string> places;
  std::vector<ExtTransition> transitions;
  Marking initial;

  std::size_t place_count() const { return places.size(); }
  NetClass classify() const;
  // Throws WellFormednessError on arc constraint violations, Error on shape problems.
  void validate() const;
  std::size_t place_index(const std::string& n) const;
  bool operator==(const ExtNet&) const = default;
};

ExtNet to_ext(const Net& net);
// Throws UnsupportedArcs when transfer or reset arcs are present.
Net to_net(const ExtNet& net);

bool enabled(const Marking& m, const ExtTransition& t);
Marking fire_extended(const Marking& m, const ExtTransition& t, const FiringChoices& choices);
std::vector<Successor> successors(const Marking& m, const ExtTransition& t, Tokens cap);
bool replays(const ExtNet& net, const Execution& e);
bool is_self_covering(const ExtNet& net, const SelfCoveringExecution& e);

// Upward-closed set of markings represented by its minimal elements.
class UpwardClosedSet {
 public:
  bool contains(const Marking& m) const;
  // Adds m unless already covered; drops basis elements above m.
  bool insert(const Marking& m);
  const std::vector<Marking>& basis() const { return basis_; }

 private:
  std::vector<Marking> basis_;
};

// Minimal markings from which firing t covers u. Requires t without omega arcs.
std::vector<Marking> pred_basis(const ExtTransition& t, const Marking& u);

struct BackwardOptions {
  std::size_t max_basis = 200'000;
};

Verdict backward_coverable(const ExtNet& net, const Marking& m0, const Marking& m, const BackwardOptions& opts = {});

struct MonotoneOptions {
  std::size_t max_nodes = 2'000'000;
};

// Finite reachability tree cut at nodes dominating an ancestor. Omega inputs
// are dropped first; omega outputs are refused with UnsupportedNet.
Verdict terminates_monotone(const ExtNet& net, const Marking& m0, const MonotoneOptions& opts = {});

enum class ProblemKind { reachability, boundedness, place_boundedness, coverability, termination };

std::string to_string(ProblemKind k);

struct Problem {
  ProblemKind kind = ProblemKind::termination;
  std::optional<PlaceId> place;
  std::optional<Marking> target;
  // Search budget for bounded semi-decisions.
  std::uint64_t budget = 10;
};

Verdict solve(const ExtNet& net, const Problem& problem);

}  // namespace wpn
