#include "regsub/graph6.hpp"

#include <stdexcept>

namespace regsub {

Graph parse_graph6(const std::string& s) {
  if (s.empty()) throw Graph6Error("empty graph6 string", 0);
  const unsigned char head = static_cast<unsigned char>(s[0]);
  if (head == 126)
    throw Graph6Error("long-form graph6 header not supported (n > 62)", 0);
  if (head < 63 || head > 125)
    throw Graph6Error("invalid graph6 header byte", 0);
  const int n = head - 63;
  const int pair_bits = n * (n - 1) / 2;
  const std::size_t need = 1 + (pair_bits + 5) / 6;
  if (s.size() < need)
    throw Graph6Error("truncated graph6 body, expected " +
                          std::to_string(need) + " bytes",
                      s.size());
  if (s.size() > need)
    throw Graph6Error("trailing bytes after graph6 body", need);

  Graph g(n);
  int bit = 0;  // column order: (0,1),(0,2),(1,2),(0,3),...
  for (int v = 1; v < n; ++v) {
    for (int u = 0; u < v; ++u, ++bit) {
      const std::size_t at = 1 + bit / 6;
      const unsigned char c = static_cast<unsigned char>(s[at]);
      if (c < 63 || c > 126)
        throw Graph6Error("invalid graph6 body byte", at);
      if ((c - 63) >> (5 - bit % 6) & 1) g.add_edge(u, v);
    }
  }
  // Padding bits must be zero.
  if (pair_bits % 6 != 0) {
    const std::size_t at = need - 1;
    const unsigned char c = static_cast<unsigned char>(s[at]);
    if (c < 63 || c > 126) throw Graph6Error("invalid graph6 body byte", at);
    if ((c - 63) & ((1 << (6 - pair_bits % 6)) - 1))
      throw Graph6Error("nonzero padding bits", at);
  }
  return g;
}

std::string write_graph6(const Graph& g) {
  const int n = g.n();
  if (n > 62)
    throw std::invalid_argument(
        "graph6 short form holds at most 62 vertices, got " +
        std::to_string(n));
  std::string out(1 + (n * (n - 1) / 2 + 5) / 6, '\0');
  out[0] = static_cast<char>(63 + n);
  int bit = 0;
  int acc = 0;
  std::size_t at = 1;
  for (int v = 1; v < n; ++v) {
    for (int u = 0; u < v; ++u) {
      acc = (acc << 1) | (g.has_edge(u, v) ? 1 : 0);
      if (++bit % 6 == 0) out[at++] = static_cast<char>(63 + acc), acc = 0;
    }
  }
  if (bit % 6 != 0) out[at] = static_cast<char>(63 + (acc << (6 - bit % 6)));
  return out;
}

}  // namespace regsub
