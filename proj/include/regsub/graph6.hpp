#pragma once

#include <stdexcept>
#include <string>

#include "regsub/graph.hpp"

namespace regsub {

// graph6 short form (ASCII, n <= 62): byte 0 is n+63, then the upper
// triangle in column order (0,1),(0,2),(1,2),(0,3),... packed 6 bits per
// byte, MSB first, zero-padded, each byte offset by 63.

struct Graph6Error : std::runtime_error {
  std::size_t offset;  // byte index of the offending character
  Graph6Error(const std::string& what, std::size_t at)
      : std::runtime_error(what + " at byte " + std::to_string(at)),
        offset(at) {}
};

Graph parse_graph6(const std::string& s);
std::string write_graph6(const Graph& g);  // n <= 62

}  // namespace regsub
