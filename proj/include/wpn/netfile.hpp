#pragma once

#include <string>

#include "wpn/core.hpp"
#include "wpn/extended.hpp"

namespace wpn {

class ParseError : public Error {
 public:
  ParseError(std::size_t line, std::size_t column, const std::string& msg)
      : Error(std::to_string(line) + ":" + std::to_string(column) + ": " + msg), line_(line), column_(column) {}
  std::size_t line() const { return line_; }
  std::size_t column() const { return column_; }

 private:
  std::size_t line_;
  std::size_t column_;
};

// Parses the .wpn text format and checks arc well-formedness.
ExtNet parse_net(const std::string& text);
std::string emit_net(const ExtNet& net);
std::string emit_net(const Net& net);

// Sparse marking literal "p1=1,p2=0"; unlisted places are 0.
Marking parse_marking(const std::string& text, const std::vector<std::string>& places);
std::string format_marking(const Marking& m, const std::vector<std::string>& places);

}  // namespace wpn
