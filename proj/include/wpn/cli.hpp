#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "wpn/netfile.hpp"
#include "wpn/report.hpp"

namespace wpn {

// Bad command-line input (unknown problem, unknown place, ...). Exit code 2.
class UsageError : public Error {
 public:
  using Error::Error;
};

Problem parse_problem(const std::string& text, const ExtNet& net, std::uint64_t budget);

Json check_command(const ExtNet& net, const std::string& problem, std::uint64_t budget, bool timing);
Json kmtree_command(const ExtNet& net);
std::string kmtree_dot_command(const ExtNet& net);
std::string reduce_command(const ExtNet& net, const std::string& to);
Json explore_command(const ExtNet& net, const ExploreBudget& budget);
std::string explore_dot_command(const ExtNet& net, const ExploreBudget& budget);
Json bounds_command(const ExtNet& net, std::uint64_t c);

// args excludes the program name. Returns the process exit code:
// 0 done, 2 parse/validation/usage error, 3 internal failure.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace wpn
