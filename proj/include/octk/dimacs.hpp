#pragma once

// DIMACS-style edge lists:
//
//   c <comment>
//   p edge <n> <m>
//   e <u> <v>          (1-indexed)
//
// Conversion to 0-indexed vertices happens here and nowhere else.

#include <istream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "octk/graph.hpp"

namespace octk {

class ParseError : public std::runtime_error {
public:
  ParseError(std::size_t line, const std::string& what)
      : std::runtime_error("line " + std::to_string(line) + ": " + what), line_(line) {}
  std::size_t line() const { return line_; }

private:
  std::size_t line_;
};

struct DimacsGraph {
  UndirectedGraph graph;
  std::vector<std::string> comments;  // text after "c ", in file order
};

namespace detail {

inline bool parse_count(std::istringstream& in, unsigned long long& out) {
  std::string token;
  if (!(in >> token) || token.empty() || token[0] == '-' || token[0] == '+') return false;
  try {
    std::size_t used = 0;
    out = std::stoull(token, &used);
    return used == token.size();
  } catch (const std::exception&) {
    return false;
  }
}

}  // namespace detail

inline DimacsGraph parse_dimacs_with_comments(std::istream& in) {
  DimacsGraph out;
  std::string line;
  std::size_t line_no = 0;
  bool have_header = false;
  unsigned long long n = 0;
  std::vector<Edge> edges;

  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    std::size_t first = line.find_first_not_of(" \t");
    if (first == std::string::npos) continue;
    std::string_view body(line);
    body.remove_prefix(first);
    char kind = body.front();
    if (kind == 'c' && (body.size() == 1 || body[1] == ' ' || body[1] == '\t')) {
      out.comments.emplace_back(body.size() > 2 ? body.substr(2) : std::string_view{});
      continue;
    }
    std::istringstream fields{std::string(body)};
    std::string tag;
    fields >> tag;
    if (tag == "p") {
      if (have_header) throw ParseError(line_no, "duplicate header");
      std::string format;
      unsigned long long m = 0;
      if (!(fields >> format) || format != "edge" || !detail::parse_count(fields, n) ||
          !detail::parse_count(fields, m))
        throw ParseError(line_no, "malformed header, expected 'p edge <n> <m>'");
      if (n > 0xFFFFFFFEull) throw ParseError(line_no, "vertex count too large");
      std::string extra;
      if (fields >> extra) throw ParseError(line_no, "trailing tokens in header");
      have_header = true;
    } else if (tag == "e") {
      if (!have_header) throw ParseError(line_no, "edge before header");
      unsigned long long u = 0, v = 0;
      if (!detail::parse_count(fields, u) || !detail::parse_count(fields, v))
        throw ParseError(line_no, "malformed edge line");
      std::string extra;
      if (fields >> extra) throw ParseError(line_no, "trailing tokens in edge line");
      if (u < 1 || v < 1 || u > n || v > n)
        throw ParseError(line_no, "vertex index out of range");
      if (u == v) throw ParseError(line_no, "self-loop on vertex " + std::to_string(u));
      edges.emplace_back(static_cast<Vertex>(u - 1), static_cast<Vertex>(v - 1));
    } else {
      throw ParseError(line_no, "unrecognized line");
    }
  }
  if (!have_header) throw ParseError(line_no, "missing 'p edge' header");
  out.graph = UndirectedGraph(static_cast<std::size_t>(n), std::move(edges));
  return out;
}

inline UndirectedGraph parse_dimacs(std::istream& in) {
  return parse_dimacs_with_comments(in).graph;
}

/// Accepts " / " as a line separator as well as newlines, which keeps
/// one-line fixtures readable.
inline UndirectedGraph parse_dimacs(std::string_view text) {
  std::string normalized;
  normalized.reserve(text.size());
  for (std::size_t i = 0; i < text.size(); ++i) {
    if (text.substr(i, 3) == " / ") {
      normalized.push_back('\n');
      i += 2;
    } else {
      normalized.push_back(text[i]);
    }
  }
  std::istringstream in(normalized);
  return parse_dimacs(in);
}

/// Canonical emission: comments, header, then edges in lexicographic order.
inline std::string write_dimacs(const UndirectedGraph& g,
                                const std::vector<std::string>& comments = {}) {
  std::ostringstream out;
  for (const auto& c : comments) out << "c " << c << '\n';
  out << "p edge " << g.vertex_count() << ' ' << g.edge_count() << '\n';
  for (auto [u, v] : g.edges()) out << "e " << u + 1 << ' ' << v + 1 << '\n';
  return out.str();
}

}  // namespace octk
