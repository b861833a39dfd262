#include "wpn/cli.hpp"

#include <CLI11.hpp>
#include <chrono>
#include <fstream>
#include <iostream>
#include <sstream>

#include "wpn/reduce.hpp"

namespace wpn {

Problem parse_problem(const std::string& text, const ExtNet& net, std::uint64_t budget) {
  Problem pb;
  pb.budget = budget;
  auto rest = [&](const std::string& prefix) -> std::optional<std::string> {
    if (text.rfind(prefix, 0) == 0) return text.substr(prefix.size());
    return std::nullopt;
  };
  if (text == "termination") {
    pb.kind = ProblemKind::termination;
  } else if (text == "boundedness") {
    pb.kind = ProblemKind::boundedness;
  } else if (auto p = rest("place-bound=")) {
    pb.kind = ProblemKind::place_boundedness;
    try {
      pb.place = net.place_index(*p);
    } catch (const Error& e) {
      throw UsageError(e.what());
    }
  } else if (auto m = rest("cover=")) {
    pb.kind = ProblemKind::coverability;
    pb.target = parse_marking(*m, net.places);
  } else if (auto m2 = rest("reach=")) {
    pb.kind = ProblemKind::reachability;
    pb.target = parse_marking(*m2, net.places);
  } else {
    throw UsageError("unknown problem '" + text + "'");
  }
  return pb;
}

Json check_command(const ExtNet& net, const std::string& problem, std::uint64_t budget, bool timing) {
  Problem pb = parse_problem(problem, net, budget);
  auto start = std::chrono::steady_clock::now();
  Verdict v = solve(net, pb);
  double ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
  return verdict_report(net, pb, problem, v, timing ? ms : 0.0);
}

Json kmtree_command(const ExtNet& net) { return tree_json(build_km(to_net(net))); }

std::string kmtree_dot_command(const ExtNet& net) { return tree_dot(build_km(to_net(net))); }

std::string reduce_command(const ExtNet& net, const std::string& to) {
  if (to == "pn") return emit_net(to_plain_pn(net).net);
  if (to == "remiw") return emit_net(rem_input_omegas(net));
  if (to == "transfer") return emit_net(reset_to_transfer(net));
  throw UsageError("unknown reduction '" + to + "' (expected pn, remiw or transfer)");
}

Json explore_command(const ExtNet& net, const ExploreBudget& budget) {
  return graph_json(net, explore(net, net.initial, budget), budget);
}

std::string explore_dot_command(const ExtNet& net, const ExploreBudget& budget) {
  return graph_dot(net, explore(net, net.initial, budget));
}

Json bounds_command(const ExtNet& net, std::uint64_t c) { return bounds_json(to_net(net), c); }

namespace {

ExtNet load(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw UsageError("cannot read '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse_net(ss.str());
}

void write_file(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw UsageError("cannot write '" + path + "'");
  out << text;
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Analysis of omega Petri nets", "wpn"};
  app.require_subcommand(1);
  bool no_timing = false;
  app.add_flag("--no-timing", no_timing, "Report time_ms as 0 (for reproducible output)");
  app.fallthrough();

  std::string file, problem, dot_path, to, format = "json";
  std::uint64_t budget = 10, c = 2;
  ExploreBudget eb;

  auto* check = app.add_subcommand("check", "Decide a problem on a net");
  check->add_option("file", file, "Net file")->required();
  check->add_option("--problem", problem,
                    "termination | boundedness | place-bound=<p> | cover=<marking> | reach=<marking>")
      ->required();
  check->add_option("--budget", budget, "Search budget for bounded semi-decisions");

  auto* km = app.add_subcommand("kmtree", "Build the Karp-Miller tree");
  km->add_option("file", file, "Net file")->required();
  km->add_option("--dot", dot_path, "Also write the tree as DOT to this file ('-' for stdout instead of JSON)");

  auto* red = app.add_subcommand("reduce", "Transform a net");
  red->add_option("file", file, "Net file")->required();
  red->add_option("--to", to, "pn | remiw | transfer")->required();

  auto* exp = app.add_subcommand("explore", "Bounded concrete exploration");
  exp->add_option("file", file, "Net file")->required();
  exp->add_option("--depth", eb.depth, "Maximal number of firings");
  exp->add_option("--cap", eb.cap, "Maximal tokens per omega choice");
  exp->add_option("--max-states", eb.max_states, "State limit");
  exp->add_option("--threads", eb.threads, "Worker threads");
  exp->add_option("--format", format, "json | dot")->check(CLI::IsMember({"json", "dot"}));

  auto* bnd = app.add_subcommand("bounds", "Rackoff-style length bounds");
  bnd->add_option("file", file, "Net file")->required();
  bnd->add_option("--c", c, "Constant c (k = 3c)");

  try {
    std::vector<std::string> rev(args.rbegin(), args.rend());
    app.parse(rev);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return 0;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n";
    return 2;
  }

  try {
    ExtNet net = load(file);
    if (*check) {
      out << check_command(net, problem, budget, !no_timing).dump(2) << "\n";
    } else if (*km) {
      if (dot_path == "-") {
        out << kmtree_dot_command(net);
      } else {
        out << kmtree_command(net).dump(2) << "\n";
        if (!dot_path.empty()) write_file(dot_path, kmtree_dot_command(net));
      }
    } else if (*red) {
      out << reduce_command(net, to);
    } else if (*exp) {
      if (format == "dot")
        out << explore_dot_command(net, eb);
      else
        out << explore_command(net, eb).dump(2) << "\n";
    } else if (*bnd) {
      out << bounds_command(net, c).dump(2) << "\n";
    }
  } catch (const ParseError& e) {
    err << "parse error: " << e.what() << "\n";
    return 2;
  } catch (const WellFormednessError& e) {
    err << "ill-formed net: " << e.what() << "\n";
    return 2;
  } catch (const UsageError& e) {
    err << "error: " << e.what() << "\n";
    return 2;
  } catch (const UnsupportedArcs& e) {
    err << "unsupported: " << e.what() << "\n";
    return 2;
  } catch (const UnsupportedNet& e) {
    err << "unsupported: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    err << "internal error: " << e.what() << "\n";
    return 3;
  }
  return 0;
}

}  // namespace wpn
