#include "coocnet/graph.hpp"

#include <algorithm>
#include <fstream>
#include <iterator>
#include <set>
#include <sstream>

#include "coocnet/error.hpp"
#include "csv.hpp"
#include "json.hpp"

namespace coocnet {

CoocGraph::NodeId CoocGraph::add_node(std::string_view term) {
  auto [it, fresh] = ids_.try_emplace(std::string(term), static_cast<NodeId>(names_.size()));
  if (fresh) names_.emplace_back(term);
  return it->second;
}

bool CoocGraph::has_node(std::string_view term) const {
  return ids_.contains(std::string(term));
}

void CoocGraph::merge_edge(std::string_view u, std::string_view v, std::uint64_t weight,
                           MergePolicy policy) {
  if (u == v) throw InvalidArgumentError("self-loop on \"" + std::string(u) + "\" rejected");
  if (weight == 0) throw InvalidArgumentError("edge weight must be at least 1");
  const NodeId a = add_node(u);
  const NodeId b = add_node(v);
  merge_edge(a, b, weight, policy);
}

void CoocGraph::merge_edge(NodeId u, NodeId v, std::uint64_t weight, MergePolicy policy) {
  if (u == v) throw InvalidArgumentError("self-loop on \"" + names_[u] + "\" rejected");
  if (weight == 0) throw InvalidArgumentError("edge weight must be at least 1");
  auto [it, fresh] = edges_.try_emplace(key(u, v), weight);
  if (fresh) return;
  if (policy == MergePolicy::kSum) {
    it->second += weight;
  } else {
    it->second = std::max(it->second, weight);
  }
}

std::uint64_t CoocGraph::weight(std::string_view u, std::string_view v) const {
  auto a = ids_.find(std::string(u));
  auto b = ids_.find(std::string(v));
  if (a == ids_.end() || b == ids_.end()) return 0;
  auto it = edges_.find(key(a->second, b->second));
  return it == edges_.end() ? 0 : it->second;
}

std::vector<std::string> CoocGraph::nodes() const {
  std::vector<std::string> out = names_;
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<std::string> CoocGraph::isolated_nodes() const {
  std::vector<bool> touched(names_.size(), false);
  for (const auto& [k, w] : edges_) {
    touched[k >> 32] = true;
    touched[k & 0xffffffffu] = true;
  }
  std::vector<std::string> out;
  for (std::size_t i = 0; i < names_.size(); ++i) {
    if (!touched[i]) out.push_back(names_[i]);
  }
  std::sort(out.begin(), out.end());
  return out;
}

Edge CoocGraph::make_edge(std::uint64_t k, std::uint64_t weight) const {
  const auto& a = names_[k >> 32];
  const auto& b = names_[k & 0xffffffffu];
  return a < b ? Edge{a, b, weight} : Edge{b, a, weight};
}

std::vector<Edge> CoocGraph::edges() const {
  std::vector<Edge> out;
  out.reserve(edges_.size());
  for (const auto& [k, w] : edges_) out.push_back(make_edge(k, w));
  std::sort(out.begin(), out.end(), [](const Edge& a, const Edge& b) {
    return a.source != b.source ? a.source < b.source : a.target < b.target;
  });
  return out;
}

std::vector<Edge> CoocGraph::top_edges(std::size_t limit) const {
  struct Ref {
    const std::string* source;
    const std::string* target;
    std::uint64_t weight;
  };
  std::vector<Ref> refs;
  refs.reserve(edges_.size());
  for (const auto& [k, w] : edges_) {
    const std::string* a = &names_[k >> 32];
    const std::string* b = &names_[k & 0xffffffffu];
    if (*b < *a) std::swap(a, b);
    refs.push_back(Ref{a, b, w});
  }
  const std::size_t keep = std::min(limit, refs.size());
  std::partial_sort(refs.begin(), refs.begin() + static_cast<std::ptrdiff_t>(keep), refs.end(),
                    [](const Ref& x, const Ref& y) {
                      if (x.weight != y.weight) return x.weight > y.weight;
                      if (*x.source != *y.source) return *x.source < *y.source;
                      return *x.target < *y.target;
                    });
  std::vector<Edge> out;
  out.reserve(keep);
  for (std::size_t i = 0; i < keep; ++i) out.push_back(Edge{*refs[i].source, *refs[i].target, refs[i].weight});
  return out;
}

bool operator==(const CoocGraph& a, const CoocGraph& b) {
  if (a.node_count() != b.node_count() || a.edge_count() != b.edge_count()) return false;
  return a.nodes() == b.nodes() && a.edges() == b.edges();
}

// ---------------------------------------------------------------------------
// Export

GraphFormat parse_graph_format(std::string_view name) {
  if (name == "edge-csv") return GraphFormat::kEdgeCsv;
  if (name == "graph-json") return GraphFormat::kGraphJson;
  throw InvalidArgumentError("unknown graph format \"" + std::string(name) + "\"");
}

namespace {

std::uint64_t parse_weight(const std::string& s, std::size_t line_no) {
  if (s.empty() || s.find_first_not_of("0123456789") != std::string::npos) {
    throw FormatError(line_no, "invalid edge weight \"" + s + "\"");
  }
  return std::stoull(s);
}

}  // namespace

std::string render_graph(const CoocGraph& graph, std::size_t limit, GraphFormat format) {
  const auto top = graph.top_edges(limit);
  if (format == GraphFormat::kEdgeCsv) {
    std::string out = "source,target,weight\n";
    for (const auto& e : top) {
      out += csv::field(e.source);
      out += ',';
      out += csv::field(e.target);
      out += ',';
      out += std::to_string(e.weight);
      out += '\n';
    }
    return out;
  }

  std::set<std::string> nodes;
  for (const auto& e : top) {
    nodes.insert(e.source);
    nodes.insert(e.target);
  }
  for (auto& n : graph.isolated_nodes()) nodes.insert(std::move(n));

  nlohmann::ordered_json doc;
  doc["nodes"] = nlohmann::ordered_json::array();
  for (const auto& n : nodes) doc["nodes"].push_back(n);
  doc["edges"] = nlohmann::ordered_json::array();
  for (const auto& e : top) {
    nlohmann::ordered_json edge;
    edge["source"] = e.source;
    edge["target"] = e.target;
    edge["weight"] = e.weight;
    doc["edges"].push_back(std::move(edge));
  }
  return doc.dump() + "\n";
}

void export_graph(const CoocGraph& graph, std::size_t limit, GraphFormat format,
                  const std::filesystem::path& path) {
  const std::string text = render_graph(graph, limit, format);
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw IoError("cannot open " + path.string() + " for writing");
  out.write(text.data(), static_cast<std::streamsize>(text.size()));
  if (!out) throw IoError("error writing " + path.string());
}

CoocGraph parse_graph(std::string_view text) {
  CoocGraph graph;
  const auto first = text.find_first_not_of(" \t\r\n");
  if (first != std::string_view::npos && text[first] == '{') {
    nlohmann::json doc;
    try {
      doc = nlohmann::json::parse(text);
      for (const auto& n : doc.at("nodes")) graph.add_node(n.get<std::string>());
      for (const auto& e : doc.at("edges")) {
        graph.merge_edge(e.at("source").get<std::string>(), e.at("target").get<std::string>(),
                         e.at("weight").get<std::uint64_t>(), MergePolicy::kMax);
      }
    } catch (const nlohmann::json::exception& e) {
      throw FormatError(1, std::string("invalid graph-json: ") + e.what());
    }
    return graph;
  }

  std::istringstream in{std::string(text)};
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line_no == 1) {
      if (line != "source,target,weight") throw FormatError(1, "expected edge-csv header");
      continue;
    }
    if (line.empty()) continue;
    auto fields = csv::split_line(line, line_no);
    if (fields.size() != 3) throw FormatError(line_no, "expected 3 fields");
    graph.merge_edge(fields[0], fields[1], parse_weight(fields[2], line_no), MergePolicy::kMax);
  }
  return graph;
}

CoocGraph import_graph(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open graph file " + path.string());
  std::string text((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
  return parse_graph(text);
}

}  // namespace coocnet
