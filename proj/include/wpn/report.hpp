#pragma once

#include <json.hpp>
#include <string>

#include "wpn/extended.hpp"
#include "wpn/kmtree.hpp"
#include "wpn/oracle.hpp"
#include "wpn/rackoff.hpp"
#include "wpn/verdict.hpp"

namespace wpn {

using Json = nlohmann::ordered_json;

inline constexpr const char* kReportSchema = "wpn-verdict-report/1";

// Place and transition names for rendering.
struct Names {
  std::vector<std::string> places;
  std::vector<std::string> transitions;

  static Names of(const Net& net);
  static Names of(const ExtNet& net);
};

std::string label_string(const OmegaMarking& m);  // "(1,w,0)"
Json marking_json(const Marking& m, const Names& names);
Json marking_json(const OmegaMarking& m, const Names& names);
Json witness_json(const Witness& w, const Names& names);

// problem_text is echoed as given, e.g. "cover=p2=1,p3=1".
Json verdict_report(const ExtNet& net, const Problem& problem, const std::string& problem_text, const Verdict& v,
                    double time_ms);

Json tree_json(const KMTree& tree);
std::string tree_dot(const KMTree& tree);

Json graph_json(const ExtNet& net, const ReachabilityGraph& g, const ExploreBudget& budget);
std::string graph_dot(const ExtNet& net, const ReachabilityGraph& g);

// Exact values are printed while they fit in max_bits; beyond that only a size estimate.
Json bounds_json(const Net& net, std::uint64_t c, std::uint64_t max_bits = std::uint64_t{1} << 24);

}  // namespace wpn
