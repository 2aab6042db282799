#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "pisdim/bitset.hpp"
#include "pisdim/ring_model.hpp"

namespace pisdim {

// Simple undirected graph stored as adjacency bit rows.
class Graph {
 public:
  Graph() = default;
  explicit Graph(std::size_t order);

  // Throws MalformedDocument on self-loops, duplicates and bad indices.
  void add_edge(std::size_t u, std::size_t v);

  std::size_t order() const noexcept { return rows_.size(); }
  std::size_t edge_count() const noexcept { return edges_; }
  bool adjacent(std::size_t u, std::size_t v) const { return rows_[u].test(v); }
  const Bitset& neighbors(std::size_t u) const { return rows_[u]; }
  std::size_t degree(std::size_t u) const { return rows_[u].count(); }

  // Edges (u, v) with u < v in lexicographic order.
  std::vector<std::pair<std::size_t, std::size_t>> edges() const;

  const std::vector<std::string>& labels() const noexcept { return labels_; }
  const std::string& label(std::size_t u) const { return labels_[u]; }
  void set_labels(std::vector<std::string> labels);

  friend bool operator==(const Graph& a, const Graph& b) { return a.rows_ == b.rows_; }

 private:
  std::vector<Bitset> rows_;
  std::vector<std::string> labels_;
  std::size_t edges_ = 0;
};

// PIS(R): vertices are the nontrivial ideals in lexicographic order,
// I ~ J iff I + J is prime.
struct PisGraph {
  RingSpec spec;
  std::vector<IdealVec> vertices;
  Graph graph;

  std::size_t index_of(const IdealVec& a) const { return vertex_index(spec, a); }
};

// Largest vertex count build() accepts (adjacency and distances are dense).
inline constexpr std::uint64_t kMaxBuildVertices = 12000;

// Throws EmptyGraph for a single field, DisconnectedRing for a product of
// exactly two fields, TooLarge above kMaxBuildVertices.
PisGraph build(const RingSpec& spec);

class DistanceMatrix {
 public:
  static constexpr std::uint8_t kInfinity = 255;

  DistanceMatrix() = default;
  explicit DistanceMatrix(std::size_t n) : n_(n), d_(n * n, kInfinity) {}

  std::size_t order() const noexcept { return n_; }
  std::uint8_t operator()(std::size_t u, std::size_t v) const { return d_[u * n_ + v]; }
  std::uint8_t& at(std::size_t u, std::size_t v) { return d_[u * n_ + v]; }
  std::span<const std::uint8_t> row(std::size_t u) const { return {d_.data() + u * n_, n_}; }

  friend bool operator==(const DistanceMatrix&, const DistanceMatrix&) = default;

 private:
  std::size_t n_ = 0;
  std::vector<std::uint8_t> d_;
};

// One breadth-first search per source over the bit rows; sources are split
// across `threads` workers. Hop counts above 254 are not representable and
// are not expected (PIS graphs have diameter at most 4).
DistanceMatrix all_pairs_distances(const Graph& g, unsigned threads = 1);

// Largest finite distance.
int diameter(const DistanceMatrix& d);
bool is_connected(const DistanceMatrix& d);
int diameter(const Graph& g);
bool is_connected(const Graph& g);

std::string export_dot(const PisGraph& g);
std::string export_json(const PisGraph& g);

struct ImportedGraph {
  std::optional<RingSpec> ring;
  std::vector<IdealVec> vertices;  // empty in plain-graph mode without index vectors
  Graph graph;
};

// Accepts {"ring":[c...] (optional), "vertices":[...], "edges":[[u,v]...]}.
// Plain-graph vertices may be index vectors, strings (labels) or any JSON
// value; "n" may replace "vertices".
ImportedGraph import_graph_json(std::string_view text);

}  // namespace pisdim
