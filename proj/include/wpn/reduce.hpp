#pragma once

#include <set>
#include <string>

#include "wpn/core.hpp"
#include "wpn/extended.hpp"

namespace wpn {

// Embedding of the source places into the reduced net; fresh places take fixed values.
struct MarkingLift {
  std::vector<PlaceId> place_map;
  std::vector<std::pair<PlaceId, Tokens>> fixed;
  std::size_t target_places = 0;

  Marking apply(const Marking& m) const;
  Marking project(const Marking& m) const;
};

// First of base, base_1, base_2, ... not in taken; the result is added to taken.
std::string fresh_name(const std::string& base, std::set<std::string>& taken);

// Omega input arcs become 0.
Net rem_input_omegas(const Net& net);
ExtNet rem_input_omegas(const ExtNet& net);

struct PlainReduction {
  Net net;
  MarkingLift lift;
};

struct ExtReduction {
  ExtNet net;
  MarkingLift lift;
  std::vector<PlaceId> lock_places;
};

// Lock construction removing omega arcs. A global lock serialises the
// simulation of omega transitions, which are split into a begin step, one
// drain loop per omega input, one fill loop per omega output and an end step.
// Transfer and reset arcs of such a transition fire in a middle step between
// the drains and the fills. The result preserves reachability through the
// lift but not termination; never use it for termination queries.
ExtReduction lock_reduction(const ExtNet& net);

// Refuses transfer/reset arcs with UnsupportedArcs.
PlainReduction to_plain_pn(const Net& net);
PlainReduction to_plain_pn(const ExtNet& net);

// Each reset on p becomes a transfer p -> p_trash. Nets without resets are returned unchanged.
ExtNet reset_to_transfer(const ExtNet& net);

}  // namespace wpn
