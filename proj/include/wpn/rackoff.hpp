#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <set>
#include <vector>

#include "wpn/core.hpp"
#include "wpn/verdict.hpp"

namespace wpn {

using BigNat = mpz_class;

class BudgetZero : public Error {
 public:
  using Error::Error;
};
class BoundTooLarge : public Error {
 public:
  using Error::Error;
};

// Largest absolute finite effect of any transition on any place.
Tokens max_finite_effect(const Net& net);

struct RackoffParams {
  std::uint64_t c = 2;
  std::uint64_t k = 6;
  Tokens R = 0;
  std::size_t places = 0;

  static RackoffParams from_net(const Net& net, std::uint64_t c = 2);
  static RackoffParams make(Tokens R, std::size_t places, std::uint64_t c);
};

struct ThresholdTables {
  std::vector<BigNat> h1, h2, ell;
};

// Binary size estimate of ell(i) for i = 0..places, computed in floating point.
std::vector<double> ell_log2_estimates(const RackoffParams& params);

// Exact tables for i = 0..places. Throws BoundTooLarge when some value would
// need more than max_bits bits.
ThresholdTables threshold_sequences(const RackoffParams& params, std::uint64_t max_bits = std::uint64_t{1} << 26);

// Tables for i = 0..last only.
ThresholdTables threshold_sequences_upto(const RackoffParams& params, std::size_t last,
                                         std::uint64_t max_bits = std::uint64_t{1} << 26);

BigNat length_bound(const RackoffParams& params, std::uint64_t max_bits = std::uint64_t{1} << 26);

// ell(i) <= (2R)^(k^(i+1) * places^(3(i+1))), evaluated exactly.
bool check_growth_bound(const RackoffParams& params, std::size_t i, std::uint64_t max_bits = std::uint64_t{1} << 26);

// Per place: on omega_places 1 if some step has an omega effect there, else 0;
// elsewhere the integer sum of effects.
std::vector<std::int64_t> eff_abs(const Net& net, const std::set<PlaceId>& omega_places,
                                  const std::vector<TransitionId>& seq);

// Deterministic version of the guess-and-verify procedure: a prefix under the
// omega semantics, omega replaced by a large concrete value, then a loop
// whose effect covers the start. Total length is at most bound. A hit is
// replayed concretely before being reported as No (does not terminate).
Verdict bounded_self_covering_search(const Net& net, const Marking& m0, std::uint64_t bound, std::uint64_t seed = 0);

}  // namespace wpn
