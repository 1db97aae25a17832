#include "fockweight/graph.hpp"

#include <algorithm>
#include <map>
#include <set>

#include "fockweight/error.hpp"

namespace fockweight {

Graph Graph::validate(const GraphSpec& spec) {
  if (spec.vertices.empty()) throw ConfigError("graph has no vertices");
  Graph g;
  std::set<std::string> seen;
  for (const auto& v : spec.vertices) {
    if (v.empty()) throw ConfigError("empty vertex identifier");
    if (!seen.insert(v).second) throw ConfigError("duplicate identifier '" + v + "'");
  }
  for (const auto& e : spec.edges) {
    if (e.name.empty()) throw ConfigError("empty edge identifier");
    if (!seen.insert(e.name).second) throw ConfigError("duplicate identifier '" + e.name + "'");
  }
  g.vertices_ = spec.vertices;
  std::sort(g.vertices_.begin(), g.vertices_.end());

  std::vector<GraphSpec::EdgeSpec> edges = spec.edges;
  std::sort(edges.begin(), edges.end(),
            [](const auto& a, const auto& b) { return a.name < b.name; });
  for (const auto& e : edges) {
    auto s = g.find_vertex(e.source);
    auto r = g.find_vertex(e.range);
    if (!s) throw ConfigError("edge '" + e.name + "' has undeclared source vertex '" + e.source + "'");
    if (!r) throw ConfigError("edge '" + e.name + "' has undeclared range vertex '" + e.range + "'");
    g.edges_.push_back(Edge{e.name, *s, *r});
    if (e.name.size() != 1) g.compact_ = false;
  }
  return g;
}

std::optional<VertexId> Graph::find_vertex(std::string_view name) const {
  auto it = std::lower_bound(vertices_.begin(), vertices_.end(), name);
  if (it == vertices_.end() || *it != name) return std::nullopt;
  return VertexId{static_cast<std::uint32_t>(it - vertices_.begin())};
}

std::optional<EdgeId> Graph::find_edge(std::string_view name) const {
  auto it = std::lower_bound(edges_.begin(), edges_.end(), name,
                             [](const Edge& e, std::string_view n) { return e.name < n; });
  if (it == edges_.end() || it->name != name) return std::nullopt;
  return EdgeId{static_cast<std::uint32_t>(it - edges_.begin())};
}

std::vector<VertexId> Graph::vertex_ids() const {
  std::vector<VertexId> out;
  for (std::uint32_t i = 0; i < vertices_.size(); ++i) out.push_back(VertexId{i});
  return out;
}

std::vector<EdgeId> Graph::edge_ids() const {
  std::vector<EdgeId> out;
  for (std::uint32_t i = 0; i < edges_.size(); ++i) out.push_back(EdgeId{i});
  return out;
}

GraphSpec Graph::spec() const {
  GraphSpec s;
  s.vertices = vertices_;
  for (const auto& e : edges_)
    s.edges.push_back({e.name, vertices_[e.source.value], vertices_[e.range.value]});
  return s;
}

std::optional<Path> Path::from_edges(const Graph& g, std::vector<EdgeId> edges) {
  if (edges.empty()) return std::nullopt;
  for (std::size_t i = 0; i + 1 < edges.size(); ++i)
    if (g.source(edges[i]) != g.range(edges[i + 1])) return std::nullopt;
  VertexId s = g.source(edges.back());
  VertexId r = g.range(edges.front());
  return Path(s, r, std::move(edges));
}

VertexId Path::vertex_at(const Graph& g, std::size_t position) const {
  if (edges_.empty()) return source_;
  if (position < edges_.size()) return g.range(edges_[position]);
  return source_;
}

Path Path::slice(const Graph& g, std::size_t begin, std::size_t end) const {
  if (begin >= end) return vertex(vertex_at(g, begin));
  std::vector<EdgeId> part(edges_.begin() + static_cast<std::ptrdiff_t>(begin),
                           edges_.begin() + static_cast<std::ptrdiff_t>(end));
  const VertexId s = g.source(part.back()), r = g.range(part.front());
  return Path(s, r, std::move(part));
}

std::strong_ordering operator<=>(const Path& a, const Path& b) {
  if (auto c = a.length() <=> b.length(); c != 0) return c;
  if (a.is_vertex()) return a.source_ <=> b.source_;
  return std::lexicographical_compare_three_way(a.edges_.begin(), a.edges_.end(), b.edges_.begin(),
                                                b.edges_.end());
}

std::optional<Path> compose(const Path& w, const Path& v) {
  if (w.source() != v.range()) return std::nullopt;
  if (w.is_vertex()) return v;
  if (v.is_vertex()) return w;
  std::vector<EdgeId> edges;
  edges.reserve(w.length() + v.length());
  edges.insert(edges.end(), w.edges_.begin(), w.edges_.end());
  edges.insert(edges.end(), v.edges_.begin(), v.edges_.end());
  return Path(v.source(), w.range(), std::move(edges));
}

Path reversed(const Path& p) {
  std::vector<EdgeId> edges(p.edges_.rbegin(), p.edges_.rend());
  return Path(p.range(), p.source(), std::move(edges));
}

std::string label(const Graph& g, const Path& p) {
  if (p.is_vertex()) return g.vertex_name(p.source());
  std::string out;
  for (std::size_t i = 0; i < p.length(); ++i) {
    if (i > 0 && !g.compact_labels()) out += '.';
    out += g.edge(p.edges()[i]).name;
  }
  return out;
}

Path parse_path(const Graph& g, std::string_view text) {
  if (auto x = g.find_vertex(text)) return Path::vertex(*x);
  std::vector<std::string_view> parts;
  if (text.find('.') != std::string_view::npos) {
    std::size_t start = 0;
    while (true) {
      auto dot = text.find('.', start);
      parts.push_back(text.substr(start, dot - start));
      if (dot == std::string_view::npos) break;
      start = dot + 1;
    }
  } else if (g.compact_labels()) {
    for (std::size_t i = 0; i < text.size(); ++i) parts.push_back(text.substr(i, 1));
  } else {
    parts.push_back(text);
  }
  std::vector<EdgeId> edges;
  for (auto part : parts) {
    auto e = g.find_edge(part);
    if (!e) throw ConfigError("unknown edge '" + std::string(part) + "' in path '" + std::string(text) + "'");
    edges.push_back(*e);
  }
  auto p = Path::from_edges(g, std::move(edges));
  if (!p) throw ConfigError("'" + std::string(text) + "' is not a path (edges do not compose)");
  return *p;
}

std::size_t PathHash::operator()(const Path& p) const noexcept {
  std::size_t h = 1469598103934665603ull ^ p.length();
  auto mix = [&h](std::uint64_t x) {
    h ^= x + 0x9e3779b97f4a7c15ull + (h << 6) + (h >> 2);
  };
  mix(p.source().value);
  for (EdgeId e : p.edges()) mix(e.value);
  return h;
}

PathTable::PathTable(const Graph& g, std::size_t horizon) : horizon_(horizon) {
  std::vector<Path> level;
  for (VertexId x : g.vertex_ids()) level.push_back(Path::vertex(x));
  for (std::size_t len = 0; len <= horizon; ++len) {
    std::sort(level.begin(), level.end());
    paths_.insert(paths_.end(), level.begin(), level.end());
    prefix_counts_.push_back(paths_.size());
    if (len == horizon) break;
    std::vector<Path> next;
    for (const Path& p : level) {
      for (EdgeId e : g.edge_ids()) {
        if (auto q = compose(p, Path::edge(g, e))) next.push_back(std::move(*q));
      }
    }
    level = std::move(next);
  }
  index_.reserve(paths_.size());
  for (std::size_t i = 0; i < paths_.size(); ++i) index_.emplace(paths_[i], i);
}

std::optional<std::size_t> PathTable::index_of(const Path& p) const {
  auto it = index_.find(p);
  if (it == index_.end()) return std::nullopt;
  return it->second;
}

Graph opposite_graph(const Graph& g) {
  GraphSpec s = g.spec();
  for (auto& e : s.edges) std::swap(e.source, e.range);
  return Graph::validate(s);
}

}  // namespace fockweight
