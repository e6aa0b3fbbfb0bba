#pragma once

// Plain-text object files.
//
//   CLASS
//   Polytope
//
//   FACETS
//   1 1 0 0
//   1 -1 0 0
//
// A section is a key line, value lines, and a blank line. '#' starts a
// comment. Matrices with no rows carry a "# cols N" line so the width
// survives; Hasse diagrams start with the vertex count followed by one
// "dim {face} {upper covers}" line per node.

#include "latpoly/engine.hpp"

#include <algorithm>
#include <fstream>
#include <istream>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

namespace latpoly {

class ObjectFileError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

namespace detail {

inline void write_set(std::ostream& os, const IndexSet& s) { os << format_set(s); }

inline void write_value(std::ostream& os, const PropertyValue& v) {
  std::visit(
      [&](const auto& x) {
        using T = std::decay_t<decltype(x)>;
        if constexpr (std::is_same_v<T, bool>) {
          os << (x ? 1 : 0) << '\n';
        } else if constexpr (std::is_same_v<T, Integer> || std::is_same_v<T, Rational>) {
          os << x << '\n';
        } else if constexpr (std::is_same_v<T, RatVector>) {
          if (!x.empty()) os << x << '\n';
        } else if constexpr (std::is_same_v<T, RatMatrix>) {
          if (x.rows() == 0) os << "# cols " << x.cols() << '\n';
          os << x;
        } else if constexpr (std::is_same_v<T, IncidenceMatrix>) {
          for (const auto& row : x) {
            write_set(os, row);
            os << '\n';
          }
        } else if constexpr (std::is_same_v<T, Graph>) {
          os << x;
        } else if constexpr (std::is_same_v<T, HasseDiagram>) {
          os << x.n_vertices << '\n';
          std::vector<IndexSet> up(x.nodes.size());
          for (auto [lo, hi] : x.covers) up[lo].push_back(hi);
          for (std::size_t i = 0; i < x.nodes.size(); ++i) {
            os << x.nodes[i].dim << ' ';
            write_set(os, x.nodes[i].face);
            os << ' ';
            std::sort(up[i].begin(), up[i].end());
            write_set(os, up[i]);
            os << '\n';
          }
        }
      },
      v);
}

inline Rational parse_rational(const std::string& tok) {
  Rational q;
  if (tok.empty() || q.set_str(tok, 10) != 0) throw std::invalid_argument("bad number '" + tok + "'");
  if (q.get_den() == 0) throw std::invalid_argument("zero denominator in '" + tok + "'");
  q.canonicalize();
  return q;
}

inline std::vector<std::string> tokens(const std::string& line) {
  std::istringstream is(line);
  std::vector<std::string> out;
  for (std::string t; is >> t;) out.push_back(t);
  return out;
}

inline RatVector parse_row(const std::string& line) {
  RatVector v;
  for (const auto& t : tokens(line)) v.push_back(parse_rational(t));
  return v;
}

// Reads "{a b c}" starting at pos, advances pos past the closing brace.
inline IndexSet parse_set(const std::string& line, std::size_t& pos) {
  while (pos < line.size() && line[pos] == ' ') ++pos;
  if (pos >= line.size() || line[pos] != '{') throw std::invalid_argument("expected '{'");
  std::size_t close = line.find('}', pos);
  if (close == std::string::npos) throw std::invalid_argument("missing '}'");
  IndexSet s;
  for (const auto& t : tokens(line.substr(pos + 1, close - pos - 1))) {
    std::size_t used = 0;
    int k = std::stoi(t, &used);
    if (used != t.size() || k < 0) throw std::invalid_argument("bad index '" + t + "'");
    s.push_back(k);
  }
  pos = close + 1;
  return s;
}

inline IndexSet parse_whole_set(const std::string& line) {
  std::size_t pos = 0;
  IndexSet s = parse_set(line, pos);
  if (line.find_first_not_of(' ', pos) != std::string::npos) throw std::invalid_argument("trailing text after set");
  return s;
}

struct Section {
  std::string key;
  std::vector<std::string> lines;
  std::optional<std::size_t> cols;
  int line_number = 0;
};

inline PropertyValue parse_value(ValueKind kind, const Section& s) {
  const auto& L = s.lines;
  auto single = [&]() -> const std::string& {
    if (L.size() != 1) throw std::invalid_argument("expected exactly one value line");
    return L[0];
  };
  switch (kind) {
    case ValueKind::Boolean: {
      const auto t = tokens(single());
      if (t.size() != 1 || (t[0] != "0" && t[0] != "1")) throw std::invalid_argument("boolean must be 0 or 1");
      return t[0] == "1";
    }
    case ValueKind::Integer: {
      const auto t = tokens(single());
      Integer z;
      if (t.size() != 1 || z.set_str(t[0], 10) != 0) throw std::invalid_argument("bad integer");
      return z;
    }
    case ValueKind::Rational: {
      const auto t = tokens(single());
      if (t.size() != 1) throw std::invalid_argument("expected one rational");
      return parse_rational(t[0]);
    }
    case ValueKind::Vector:
      if (L.empty()) return RatVector{};
      return parse_row(single());
    case ValueKind::Matrix: {
      std::vector<RatVector> rows;
      for (const auto& l : L) rows.push_back(parse_row(l));
      std::size_t cols = rows.empty() ? s.cols.value_or(0) : rows[0].size();
      for (const auto& r : rows)
        if (r.size() != cols) throw std::invalid_argument("ragged matrix");
      return RatMatrix::from_rows(rows, cols);
    }
    case ValueKind::Incidence: {
      IncidenceMatrix m;
      for (const auto& l : L) m.push_back(parse_whole_set(l));
      return m;
    }
    case ValueKind::Graph: {
      Graph g(L.size());
      for (std::size_t i = 0; i < L.size(); ++i)
        for (int w : parse_whole_set(L[i])) {
          if (w < 0 || static_cast<std::size_t>(w) >= L.size()) throw std::invalid_argument("neighbour out of range");
          if (static_cast<std::size_t>(w) == i) throw std::invalid_argument("loop in graph");
          g.add_edge(static_cast<int>(i), w);
        }
      return g;
    }
    case ValueKind::Hasse: {
      if (L.empty()) throw std::invalid_argument("missing vertex count");
      HasseDiagram h;
      h.n_vertices = std::stoi(L[0]);
      for (std::size_t i = 1; i < L.size(); ++i) {
        std::size_t pos = 0;
        int d = std::stoi(L[i], &pos);
        IndexSet face = parse_set(L[i], pos);
        IndexSet up = parse_set(L[i], pos);
        h.nodes.push_back({face, d});
        for (int u : up) h.covers.emplace_back(static_cast<int>(i - 1), u);
      }
      std::sort(h.covers.begin(), h.covers.end());
      return h;
    }
  }
  throw std::logic_error("unhandled kind");
}

}  // namespace detail

inline void save(const ComputationObject& obj, std::ostream& os) {
  os << "CLASS\n" << obj.class_tag() << "\n\n";
  for (const auto& [key, value] : obj.store()) {
    os << key << '\n';
    detail::write_value(os, *value);
    os << '\n';
  }
}

inline void save(const ComputationObject& obj, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw ObjectFileError("cannot write " + path);
  save(obj, out);
  if (!out) throw ObjectFileError("error writing " + path);
}

inline ComputationObject load(std::istream& is, std::shared_ptr<Rulebase> rb) {
  std::vector<detail::Section> sections;
  detail::Section cur;
  bool open = false;
  int n = 0;
  for (std::string line; std::getline(is, line);) {
    ++n;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    std::string body = line;
    if (auto hash = line.find('#'); hash != std::string::npos) {
      auto t = detail::tokens(line.substr(hash + 1));
      if (open && t.size() == 2 && t[0] == "cols") cur.cols = static_cast<std::size_t>(std::stoul(t[1]));
      body = line.substr(0, hash);
      if (body.find_first_not_of(" \t") == std::string::npos) continue;  // comment-only line
    }
    if (body.find_first_not_of(" \t") == std::string::npos) {
      if (open) sections.push_back(std::move(cur));
      cur = {};
      open = false;
      continue;
    }
    if (!open) {
      cur.key = detail::tokens(body).at(0);
      cur.line_number = n;
      open = true;
    } else {
      cur.lines.push_back(body);
    }
  }
  if (open) sections.push_back(std::move(cur));

  if (sections.empty() || sections[0].key != "CLASS") throw ObjectFileError("first section must be CLASS");
  if (sections[0].lines.size() != 1) throw ObjectFileError("section CLASS: expected one class name");
  const std::string cls = detail::tokens(sections[0].lines[0]).at(0);
  if (!rb->has_class(cls)) throw ObjectFileError("section CLASS: unknown class " + cls);
  ComputationObject obj(rb, cls);
  for (std::size_t i = 1; i < sections.size(); ++i) {
    const auto& s = sections[i];
    const std::string where = "section " + s.key + " (line " + std::to_string(s.line_number) + ")";
    if (!rb->has_property(s.key)) throw ObjectFileError(where + ": unknown property");
    if (obj.has(s.key)) throw ObjectFileError(where + ": duplicate section");
    try {
      obj.set(s.key, detail::parse_value(rb->property(s.key).kind, s));
    } catch (const ObjectFileError&) {
      throw;
    } catch (const std::exception& e) {
      throw ObjectFileError(where + ": " + e.what());
    }
  }
  return obj;
}

inline ComputationObject load(const std::string& path, std::shared_ptr<Rulebase> rb) {
  std::ifstream in(path);
  if (!in) throw ObjectFileError("cannot read " + path);
  return load(in, std::move(rb));
}

}  // namespace latpoly
