#pragma once

// Finite directed multigraphs and their path semigroupoids.
//
// Paths compose right to left: the path e1 e2 ... ek applies ek first, so
// s(e1...ek) = s(ek), r(e1...ek) = r(e1), and wv exists iff s(w) = r(v).
// Vertices are the paths of length 0.

#include <compare>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

namespace fockweight {

struct VertexId {
  std::uint32_t value = 0;
  friend auto operator<=>(VertexId, VertexId) = default;
};

struct EdgeId {
  std::uint32_t value = 0;
  friend auto operator<=>(EdgeId, EdgeId) = default;
};

/// Raw, unvalidated graph description as read from a config.
struct GraphSpec {
  struct EdgeSpec {
    std::string name;
    std::string source;
    std::string range;
  };
  std::vector<std::string> vertices;
  std::vector<EdgeSpec> edges;
};

struct Edge {
  std::string name;
  VertexId source;
  VertexId range;
  friend bool operator==(const Edge&, const Edge&) = default;
};

/// Validated finite graph. Vertex and edge ids are ranks in the
/// lexicographic order of their names, so id order is name order.
class Graph {
 public:
  /// Throws ConfigError on duplicate identifiers, dangling endpoints, or an
  /// empty vertex set.
  static Graph validate(const GraphSpec& spec);

  std::size_t vertex_count() const { return vertices_.size(); }
  std::size_t edge_count() const { return edges_.size(); }

  const std::string& vertex_name(VertexId v) const { return vertices_.at(v.value); }
  const Edge& edge(EdgeId e) const { return edges_.at(e.value); }
  VertexId source(EdgeId e) const { return edge(e).source; }
  VertexId range(EdgeId e) const { return edge(e).range; }

  std::optional<VertexId> find_vertex(std::string_view name) const;
  std::optional<EdgeId> find_edge(std::string_view name) const;

  std::vector<VertexId> vertex_ids() const;
  std::vector<EdgeId> edge_ids() const;

  /// True when every edge name is a single character, in which case paths
  /// print without separators.
  bool compact_labels() const { return compact_; }

  /// GraphSpec that validates back to this graph.
  GraphSpec spec() const;

  friend bool operator==(const Graph&, const Graph&) = default;

 private:
  std::vector<std::string> vertices_;
  std::vector<Edge> edges_;
  bool compact_ = true;
};

/// A vertex (length 0) or a composable edge sequence, leftmost edge first.
class Path {
 public:
  Path() = default;
  static Path vertex(VertexId x) { return Path(x, x, {}); }
  /// nullopt when the sequence is empty or not composable.
  static std::optional<Path> from_edges(const Graph& g, std::vector<EdgeId> edges);
  static Path edge(const Graph& g, EdgeId e) { return Path(g.source(e), g.range(e), {e}); }

  std::size_t length() const { return edges_.size(); }
  bool is_vertex() const { return edges_.empty(); }
  VertexId source() const { return source_; }
  VertexId range() const { return range_; }
  std::span<const EdgeId> edges() const { return edges_; }
  /// Rightmost edge, the one applied first. Requires length() > 0.
  EdgeId trailing_edge() const { return edges_.back(); }
  /// Leftmost edge. Requires length() > 0.
  EdgeId leading_edge() const { return edges_.front(); }

  /// Subpath of edges [begin, end); an empty range yields the vertex at that
  /// position.
  Path slice(const Graph& g, std::size_t begin, std::size_t end) const;
  /// Vertex between edge position-1 and position (0 = range, length = source).
  VertexId vertex_at(const Graph& g, std::size_t position) const;

  friend bool operator==(const Path&, const Path&) = default;
  /// Canonical order: length, then vertex id (length 0) or edge ids lexicographically.
  friend std::strong_ordering operator<=>(const Path& a, const Path& b);

 private:
  Path(VertexId s, VertexId r, std::vector<EdgeId> edges)
      : source_(s), range_(r), edges_(std::move(edges)) {}

  VertexId source_{};
  VertexId range_{};
  std::vector<EdgeId> edges_;

  friend std::optional<Path> compose(const Path& w, const Path& v);
  friend Path reversed(const Path& p);
};

/// wv when s(w) = r(v), nullopt otherwise.
std::optional<Path> compose(const Path& w, const Path& v);

/// Edge sequence reversed with source and range swapped. This is the
/// identification of G+ with the opposite graph's paths.
Path reversed(const Path& p);

std::string label(const Graph& g, const Path& p);

/// Parses a vertex name, a `.`-separated edge list, or (for single-character
/// edge names) a concatenated edge word. Throws ConfigError when the text
/// names no path of g.
Path parse_path(const Graph& g, std::string_view text);

struct PathHash {
  std::size_t operator()(const Path& p) const noexcept;
};

/// All paths of length <= horizon in canonical order.
class PathTable {
 public:
  PathTable(const Graph& g, std::size_t horizon);

  std::size_t horizon() const { return horizon_; }
  std::size_t size() const { return paths_.size(); }
  const Path& operator[](std::size_t i) const { return paths_[i]; }
  const std::vector<Path>& paths() const { return paths_; }
  std::optional<std::size_t> index_of(const Path& p) const;
  /// Number of paths of length <= len (a prefix of the table).
  std::size_t count_up_to(std::size_t len) const { return prefix_counts_.at(len); }

  auto begin() const { return paths_.begin(); }
  auto end() const { return paths_.end(); }

 private:
  std::size_t horizon_;
  std::vector<Path> paths_;
  std::vector<std::size_t> prefix_counts_;
  std::unordered_map<Path, std::size_t, PathHash> index_;
};

/// The graph with every edge reversed. Vertex and edge names are kept, and
/// `reversed` carries paths across in both directions.
Graph opposite_graph(const Graph& g);

}  // namespace fockweight
