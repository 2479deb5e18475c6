#pragma once

#include "graph.hpp"

#include <charconv>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

namespace gamma_cone {

/// Input text could not be decoded. `position` is a 1-based line number for
/// edge lists and a 0-based byte offset for graph6.
class parse_error : public input_error {
public:
  parse_error(const std::string &msg, std::size_t position)
      : input_error(msg), position_(position) {}
  std::size_t position() const { return position_; }

private:
  std::size_t position_;
};

namespace detail {

inline std::string_view trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string_view::npos)
    return {};
  const auto last = s.find_last_not_of(" \t\r");
  return s.substr(first, last - first + 1);
}

inline std::vector<std::string_view> split_ws(std::string_view s) {
  std::vector<std::string_view> out;
  std::size_t i = 0;
  while (i < s.size()) {
    while (i < s.size() && (s[i] == ' ' || s[i] == '\t'))
      ++i;
    std::size_t j = i;
    while (j < s.size() && s[j] != ' ' && s[j] != '\t')
      ++j;
    if (j > i)
      out.push_back(s.substr(i, j - i));
    i = j;
  }
  return out;
}

inline bool parse_size(std::string_view tok, std::size_t &out) {
  const auto *end = tok.data() + tok.size();
  auto [ptr, ec] = std::from_chars(tok.data(), end, out);
  return ec == std::errc() && ptr == end;
}

} // namespace detail

// ---------------------------------------------------------------------------
// Edge-list text
//
//   # comment
//   n 4
//   0 1
//   1 2
//
// Blank lines and '#' lines are skipped anywhere. Duplicate edges collapse.

inline Graph parse_edge_list(std::string_view text) {
  std::size_t line_no = 0;
  std::size_t n = 0;
  bool have_header = false;
  std::vector<Edge> edges;

  std::size_t start = 0;
  while (start <= text.size()) {
    auto end = text.find('\n', start);
    if (end == std::string_view::npos)
      end = text.size();
    const auto line = detail::trim(text.substr(start, end - start));
    start = end + 1;
    ++line_no;
    if (line.empty() || line.front() == '#')
      continue;

    const auto tokens = detail::split_ws(line);
    if (!have_header) {
      if (tokens.size() != 2 || tokens[0] != "n" ||
          !detail::parse_size(tokens[1], n))
        throw parse_error("line " + std::to_string(line_no) +
                              ": expected header 'n <count>'",
                          line_no);
      if (n == 0)
        throw parse_error("line " + std::to_string(line_no) +
                              ": empty graph (n = 0)",
                          line_no);
      have_header = true;
      continue;
    }

    std::size_t u = 0, v = 0;
    if (tokens.size() != 2 || !detail::parse_size(tokens[0], u) ||
        !detail::parse_size(tokens[1], v))
      throw parse_error("line " + std::to_string(line_no) +
                            ": expected 'u v', got '" + std::string(line) + "'",
                        line_no);
    if (u >= n || v >= n)
      throw parse_error("line " + std::to_string(line_no) + ": vertex id " +
                            std::to_string(std::max(u, v)) +
                            " out of range for n = " + std::to_string(n),
                        line_no);
    if (u == v)
      throw parse_error("line " + std::to_string(line_no) +
                            ": loop edge at vertex " + std::to_string(u),
                        line_no);
    edges.emplace_back(u, v);
  }
  if (!have_header)
    throw parse_error("missing header 'n <count>'", line_no);
  return Graph(n, std::move(edges));
}

inline std::string encode_edge_list(const Graph &g) {
  std::ostringstream out;
  out << "n " << g.vertex_count();
  for (const auto &[u, v] : g.edges())
    out << '\n' << u << ' ' << v;
  return out.str();
}

// ---------------------------------------------------------------------------
// graph6, restricted to n <= 62 (single size byte n + 63).
//
// Bits are the upper triangle in column order x(0,1), x(0,2), x(1,2),
// x(0,3), ... packed six per byte, most significant first, each byte + 63.

inline constexpr std::size_t graph6_max_vertices = 62;

inline Graph parse_graph6(std::string_view line) {
  constexpr std::string_view header = ">>graph6<<";
  std::size_t offset = 0;
  if (line.substr(0, header.size()) == header) {
    line.remove_prefix(header.size());
    offset = header.size();
  }
  while (!line.empty() && (line.back() == '\n' || line.back() == '\r'))
    line.remove_suffix(1);
  if (line.empty())
    throw parse_error("graph6: empty input", offset);

  for (std::size_t i = 0; i < line.size(); ++i) {
    const auto c = static_cast<unsigned char>(line[i]);
    if (c < 63 || c > 126)
      throw parse_error("graph6: byte " + std::to_string(offset + i) +
                            " has value " + std::to_string(c) +
                            " outside [63,126]",
                        offset + i);
  }
  const auto size_byte = static_cast<unsigned char>(line[0]);
  if (size_byte == 126)
    throw parse_error("graph6: graphs with more than 62 vertices are not "
                      "supported",
                      offset);
  const std::size_t n = size_byte - 63;
  const std::size_t bit_count = n * (n > 0 ? n - 1 : 0) / 2;
  const std::size_t byte_count = (bit_count + 5) / 6;
  if (line.size() - 1 < byte_count)
    throw parse_error("graph6: truncated bit stream (expected " +
                          std::to_string(byte_count) + " data bytes, got " +
                          std::to_string(line.size() - 1) + ")",
                      offset + line.size());
  if (line.size() - 1 > byte_count)
    throw parse_error("graph6: trailing data after " +
                          std::to_string(byte_count) + " data bytes",
                      offset + 1 + byte_count);

  std::vector<Edge> edges;
  std::size_t k = 0;
  for (Vertex j = 1; j < n; ++j)
    for (Vertex i = 0; i < j; ++i, ++k) {
      const auto byte = static_cast<unsigned char>(line[1 + k / 6]) - 63;
      if (byte & (1u << (5 - k % 6)))
        edges.emplace_back(i, j);
    }
  return Graph(n, std::move(edges));
}

inline std::string encode_graph6(const Graph &g) {
  const std::size_t n = g.vertex_count();
  if (n > graph6_max_vertices)
    throw input_error("graph6: graphs with more than 62 vertices are not "
                      "supported");
  const std::size_t bit_count = n * (n > 0 ? n - 1 : 0) / 2;
  std::vector<unsigned> packed((bit_count + 5) / 6, 0);
  std::size_t k = 0;
  for (Vertex j = 1; j < n; ++j)
    for (Vertex i = 0; i < j; ++i, ++k)
      if (g.has_edge(i, j))
        packed[k / 6] |= 1u << (5 - k % 6);
  std::string out(1, static_cast<char>(n + 63));
  for (unsigned b : packed)
    out.push_back(static_cast<char>(b + 63));
  return out;
}

} // namespace gamma_cone
