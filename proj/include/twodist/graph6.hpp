#pragma once

// graph6 encoding: a size field followed by the upper triangle of the
// adjacency matrix in column order (0,1),(0,2),(1,2),(0,3),... packed six
// bits per printable character (value + 63), most significant bit first.

#include <cstddef>
#include <stdexcept>
#include <string>
#include <string_view>

#include "twodist/graph.hpp"

namespace twodist {

class Graph6Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

namespace detail {

inline constexpr std::string_view kGraph6Header = ">>graph6<<";

inline std::string_view trim_record(std::string_view text) {
  while (!text.empty() && (text.back() == '\n' || text.back() == '\r' || text.back() == ' ' || text.back() == '\t')) {
    text.remove_suffix(1);
  }
  while (!text.empty() && (text.front() == ' ' || text.front() == '\t')) text.remove_prefix(1);
  if (text.starts_with(kGraph6Header)) text.remove_prefix(kGraph6Header.size());
  return text;
}

inline int graph6_value(char c) {
  const int v = static_cast<unsigned char>(c);
  if (v < 63 || v > 126) {
    throw Graph6Error("graph6: character code " + std::to_string(v) + " outside [63,126]");
  }
  return v - 63;
}

}  // namespace detail

inline Graph parse_graph6(std::string_view text) {
  text = detail::trim_record(text);
  if (text.empty()) throw Graph6Error("graph6: empty record");

  std::size_t pos = 0;
  long n = 0;
  if (text[0] == '~') {
    if (text.size() >= 2 && text[1] == '~') throw Graph6Error("graph6: order exceeds 64");
    if (text.size() < 4) throw Graph6Error("graph6: truncated multi-byte length");
    for (std::size_t i = 1; i <= 3; ++i) n = (n << 6) | detail::graph6_value(text[i]);
    if (n < 63) throw Graph6Error("graph6: non-canonical multi-byte length");
    pos = 4;
  } else {
    n = detail::graph6_value(text[0]);
    pos = 1;
  }
  if (n < 2 || n > kMaxVertices) {
    throw Graph6Error("graph6: order " + std::to_string(n) + " outside supported range [2,64]");
  }

  const std::size_t bits = static_cast<std::size_t>(n) * static_cast<std::size_t>(n - 1) / 2;
  const std::size_t chars = (bits + 5) / 6;
  const std::string_view payload = text.substr(pos);
  if (payload.size() < chars) {
    throw Graph6Error("graph6: payload has " + std::to_string(payload.size()) + " characters, expected " +
                      std::to_string(chars));
  }
  if (payload.size() > chars) throw Graph6Error("graph6: trailing characters after payload");

  Graph g(static_cast<int>(n));
  std::size_t k = 0;
  for (int j = 1; j < n; ++j) {
    for (int i = 0; i < j; ++i, ++k) {
      const int v = detail::graph6_value(payload[k / 6]);
      if ((v >> (5 - k % 6)) & 1) g.add_edge(i, j);
    }
  }
  return g;
}

inline std::string serialize_graph6(const Graph& g) {
  const int n = g.order();
  std::string out;
  if (n <= 62) {
    out.push_back(static_cast<char>(n + 63));
  } else {
    out.push_back('~');
    out.push_back(static_cast<char>(((n >> 12) & 63) + 63));
    out.push_back(static_cast<char>(((n >> 6) & 63) + 63));
    out.push_back(static_cast<char>((n & 63) + 63));
  }
  int acc = 0;
  int filled = 0;
  for (int j = 1; j < n; ++j) {
    for (int i = 0; i < j; ++i) {
      acc = (acc << 1) | (g.has_edge(i, j) ? 1 : 0);
      if (++filled == 6) {
        out.push_back(static_cast<char>(acc + 63));
        acc = 0;
        filled = 0;
      }
    }
  }
  if (filled > 0) out.push_back(static_cast<char>((acc << (6 - filled)) + 63));
  return out;
}

}  // namespace twodist
