#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

namespace coocnet {

enum class MergePolicy { kMax, kSum };

// Canonical undirected edge: source < target lexicographically.
struct Edge {
  std::string source;
  std::string target;
  std::uint64_t weight = 0;

  friend bool operator==(const Edge&, const Edge&) = default;
};

// Undirected weighted term graph. Nodes are interned; edges live in a sparse
// map keyed by the unordered node pair. All views returned to callers use the
// lexicographic canonical order.
class CoocGraph {
 public:
  using NodeId = std::uint32_t;

  NodeId add_node(std::string_view term);
  bool has_node(std::string_view term) const;
  const std::string& node_name(NodeId id) const { return names_[id]; }

  // Rejects self-loops and zero weights with InvalidArgumentError.
  void merge_edge(std::string_view u, std::string_view v, std::uint64_t weight, MergePolicy policy);
  void merge_edge(NodeId u, NodeId v, std::uint64_t weight, MergePolicy policy);

  // 0 when there is no edge; symmetric in its arguments.
  std::uint64_t weight(std::string_view u, std::string_view v) const;

  std::size_t node_count() const { return names_.size(); }
  std::size_t edge_count() const { return edges_.size(); }

  // Sorted ascending.
  std::vector<std::string> nodes() const;
  // Nodes with no incident edge, sorted.
  std::vector<std::string> isolated_nodes() const;
  // Sorted by (source, target).
  std::vector<Edge> edges() const;
  // (weight desc, source asc, target asc), truncated to `limit`.
  std::vector<Edge> top_edges(std::size_t limit) const;

  friend bool operator==(const CoocGraph& a, const CoocGraph& b);

 private:
  static std::uint64_t key(NodeId a, NodeId b) {
    if (a > b) std::swap(a, b);
    return (static_cast<std::uint64_t>(a) << 32) | b;
  }
  Edge make_edge(std::uint64_t key, std::uint64_t weight) const;

  std::vector<std::string> names_;
  std::unordered_map<std::string, NodeId> ids_;
  std::unordered_map<std::uint64_t, std::uint64_t> edges_;
};

enum class GraphFormat { kEdgeCsv, kGraphJson };

GraphFormat parse_graph_format(std::string_view name);

// edge-csv: header "source,target,weight" then the top `limit` edges.
// graph-json: {"nodes":[...],"edges":[{"source","target","weight"}...]} where
// nodes are those incident to exported edges plus isolated nodes.
std::string render_graph(const CoocGraph& graph, std::size_t limit, GraphFormat format);
void export_graph(const CoocGraph& graph, std::size_t limit, GraphFormat format,
                  const std::filesystem::path& path);

// Reads a file written by export_graph; the format is detected from content.
CoocGraph import_graph(const std::filesystem::path& path);
CoocGraph parse_graph(std::string_view text);

}  // namespace coocnet
