#pragma once

#include <fstream>
#include <sstream>
#include <string>

#include "wpn/extended.hpp"
#include "wpn/netfile.hpp"

namespace wpn::test {

inline std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

inline ExtNet load_ext(const std::string& name) { return parse_net(read_file(std::string(WPN_NETS_DIR) + "/" + name)); }
inline Net load(const std::string& name) { return to_net(load_ext(name)); }

inline OmegaMarking om(std::initializer_list<long> v) {
  OmegaMarking m;
  for (long x : v) m.values.push_back(x < 0 ? kOmega : ExtValue(static_cast<Tokens>(x)));
  return m;
}

constexpr long W = -1;  // omega in om{...}

}  // namespace wpn::test
