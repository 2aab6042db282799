#include "pisdim/pis_graph.hpp"

#include <algorithm>
#include <sstream>
#include <thread>

#include "json.hpp"
#include "pisdim/error.hpp"

namespace pisdim {

using nlohmann::json;

Graph::Graph(std::size_t order) : rows_(order, Bitset(order)), labels_(order) {
  for (std::size_t u = 0; u < order; ++u) labels_[u] = std::to_string(u);
}

void Graph::add_edge(std::size_t u, std::size_t v) {
  if (u >= order() || v >= order())
    throw Error(ErrorKind::MalformedDocument, "edge endpoint out of range");
  if (u == v) throw Error(ErrorKind::MalformedDocument, "self-loop at vertex " + std::to_string(u));
  if (rows_[u].test(v))
    throw Error(ErrorKind::MalformedDocument,
                "duplicate edge " + std::to_string(u) + "-" + std::to_string(v));
  rows_[u].set(v);
  rows_[v].set(u);
  ++edges_;
}

std::vector<std::pair<std::size_t, std::size_t>> Graph::edges() const {
  std::vector<std::pair<std::size_t, std::size_t>> out;
  out.reserve(edges_);
  for (std::size_t u = 0; u < order(); ++u)
    for (auto v = rows_[u].find_next(u + 1); v < order(); v = rows_[u].find_next(v + 1))
      out.emplace_back(u, v);
  return out;
}

void Graph::set_labels(std::vector<std::string> labels) {
  if (labels.size() != order())
    throw Error(ErrorKind::MalformedDocument, "label count does not match vertex count");
  labels_ = std::move(labels);
}

PisGraph build(const RingSpec& spec) {
  const auto n = spec.arity();
  if (n == 1 && spec.ideals(0) == 2)
    throw Error(ErrorKind::EmptyGraph, "a field has no nontrivial ideals");
  if (n == 2 && spec.ideals(0) == 2 && spec.ideals(1) == 2)
    throw Error(ErrorKind::DisconnectedRing, "PIS of a product of two fields is disconnected");
  if (spec.vertex_count() > kMaxBuildVertices)
    throw Error(ErrorKind::TooLarge, spec.canonical() + " has " + std::to_string(spec.vertex_count()) +
                                         " vertices (limit " + std::to_string(kMaxBuildVertices) + ")");

  PisGraph g{spec, enumerate_ideals(spec, true), Graph(spec.vertex_count())};
  const auto order = g.vertices.size();

  std::vector<int> maxidx(n), unitidx(n);
  for (std::size_t i = 0; i < n; ++i) {
    maxidx[i] = spec.components()[i].maximal_index();
    unitidx[i] = spec.components()[i].unit_index();
  }
  for (std::size_t u = 0; u < order; ++u) {
    const auto& a = g.vertices[u].idx;
    for (std::size_t v = u + 1; v < order; ++v) {
      const auto& b = g.vertices[v].idx;
      // Inline is_prime(ideal_sum(a, b)).
      int maximal_slots = 0;
      bool ok = true;
      for (std::size_t i = 0; i < n && ok; ++i) {
        const int s = std::max(a[i], b[i]);
        if (s == maxidx[i])
          ok = ++maximal_slots == 1;
        else
          ok = s == unitidx[i];
      }
      if (ok && maximal_slots == 1) g.graph.add_edge(u, v);
    }
  }

  std::vector<std::string> labels;
  labels.reserve(order);
  for (const auto& v : g.vertices) labels.push_back(spec.label(v));
  g.graph.set_labels(std::move(labels));
  return g;
}

namespace {

void bfs_rows(const Graph& g, DistanceMatrix& d, std::size_t first, std::size_t last) {
  const auto n = g.order();
  Bitset visited(n), next(n);
  std::vector<std::size_t> frontier;
  for (std::size_t s = first; s < last; ++s) {
    visited = Bitset(n);
    visited.set(s);
    d.at(s, s) = 0;
    frontier.assign(1, s);
    for (int level = 1; !frontier.empty() && level < DistanceMatrix::kInfinity; ++level) {
      next = Bitset(n);
      for (auto u : frontier) next |= g.neighbors(u);
      next.and_not(visited);
      visited |= next;
      frontier = next.to_indices();
      for (auto v : frontier) d.at(s, v) = static_cast<std::uint8_t>(level);
    }
  }
}

}  // namespace

DistanceMatrix all_pairs_distances(const Graph& g, unsigned threads) {
  const auto n = g.order();
  DistanceMatrix d(n);
  threads = std::max(1U, std::min<unsigned>(threads, static_cast<unsigned>(std::max<std::size_t>(n, 1))));
  if (threads == 1) {
    bfs_rows(g, d, 0, n);
    return d;
  }
  // Each worker writes a disjoint block of rows.
  std::vector<std::jthread> workers;
  const std::size_t chunk = (n + threads - 1) / threads;
  for (unsigned t = 0; t < threads; ++t) {
    const auto first = std::min(n, t * chunk), last = std::min(n, first + chunk);
    workers.emplace_back([&g, &d, first, last] { bfs_rows(g, d, first, last); });
  }
  return d;
}

int diameter(const DistanceMatrix& d) {
  int best = 0;
  for (std::size_t u = 0; u < d.order(); ++u)
    for (auto x : d.row(u))
      if (x != DistanceMatrix::kInfinity) best = std::max(best, static_cast<int>(x));
  return best;
}

bool is_connected(const DistanceMatrix& d) {
  if (d.order() == 0) return false;
  return std::ranges::none_of(d.row(0), [](auto x) { return x == DistanceMatrix::kInfinity; });
}

int diameter(const Graph& g) { return diameter(all_pairs_distances(g)); }

bool is_connected(const Graph& g) { return is_connected(all_pairs_distances(g)); }

namespace {

std::string dot_escape(const std::string& s) {
  std::string out;
  for (char ch : s) {
    if (ch == '"' || ch == '\\') out += '\\';
    out += ch;
  }
  return out;
}

std::size_t as_index(const json& j, std::size_t limit, const char* what) {
  if (!j.is_number_integer() || j.get<long long>() < 0 ||
      static_cast<std::size_t>(j.get<long long>()) >= limit)
    throw Error(ErrorKind::MalformedDocument, std::string(what) + " must be an index below " +
                                                  std::to_string(limit));
  return static_cast<std::size_t>(j.get<long long>());
}

}  // namespace

std::string export_dot(const PisGraph& g) {
  std::ostringstream os;
  os << "graph \"PIS" << dot_escape(g.spec.canonical()) << "\" {\n";
  for (std::size_t u = 0; u < g.graph.order(); ++u)
    os << "  " << u << " [label=\"" << dot_escape(g.graph.label(u)) << "\"];\n";
  for (auto [u, v] : g.graph.edges()) os << "  " << u << " -- " << v << ";\n";
  os << "}\n";
  return os.str();
}

std::string export_json(const PisGraph& g) {
  json doc;
  doc["ring"] = g.spec.counts();
  doc["vertices"] = json::array();
  for (const auto& v : g.vertices) doc["vertices"].push_back(v.idx);
  doc["edges"] = json::array();
  for (auto [u, v] : g.graph.edges()) doc["edges"].push_back({u, v});
  return doc.dump() + "\n";
}

ImportedGraph import_graph_json(std::string_view text) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    throw Error(ErrorKind::MalformedDocument, e.what());
  }
  if (!doc.is_object()) throw Error(ErrorKind::MalformedDocument, "top level must be an object");

  ImportedGraph out;
  if (doc.contains("ring")) {
    const auto& ring = doc["ring"];
    if (!ring.is_array() || ring.empty())
      throw Error(ErrorKind::MalformedDocument, "\"ring\" must be a nonempty array of ideal counts");
    std::vector<int> counts;
    for (const auto& c : ring) {
      if (!c.is_number_integer() || c.get<long long>() < 2)
        throw Error(ErrorKind::MalformedDocument, "ideal counts must be integers >= 2");
      counts.push_back(c.get<int>());
    }
    out.ring = RingSpec::from_counts(counts);
  }

  std::size_t order = 0;
  std::vector<std::string> labels;
  if (doc.contains("vertices")) {
    const auto& vs = doc["vertices"];
    if (!vs.is_array()) throw Error(ErrorKind::MalformedDocument, "\"vertices\" must be an array");
    order = vs.size();
    for (const auto& v : vs) {
      if (out.ring) {
        if (!v.is_array()) throw Error(ErrorKind::MalformedDocument, "ring vertices must be index arrays");
        IdealVec a;
        for (const auto& x : v) {
          if (!x.is_number_integer()) throw Error(ErrorKind::MalformedDocument, "ideal indices must be integers");
          a.idx.push_back(x.get<int>());
        }
        try {
          out.ring->check(a);
        } catch (const Error& e) {
          throw Error(ErrorKind::MalformedDocument, e.what());
        }
        if (!out.ring->is_vertex(a))
          throw Error(ErrorKind::MalformedDocument, "trivial ideal listed as a vertex");
        labels.push_back(out.ring->label(a));
        out.vertices.push_back(std::move(a));
      } else {
        labels.push_back(v.is_string() ? v.get<std::string>() : v.dump());
      }
    }
  } else if (doc.contains("n")) {
    if (!doc["n"].is_number_integer() || doc["n"].get<long long>() < 1)
      throw Error(ErrorKind::MalformedDocument, "\"n\" must be a positive integer");
    order = doc["n"].get<std::size_t>();
    for (std::size_t u = 0; u < order; ++u) labels.push_back(std::to_string(u));
  } else {
    throw Error(ErrorKind::MalformedDocument, "missing \"vertices\"");
  }
  if (order == 0) throw Error(ErrorKind::MalformedDocument, "graph has no vertices");

  out.graph = Graph(order);
  if (!doc.contains("edges") || !doc["edges"].is_array())
    throw Error(ErrorKind::MalformedDocument, "missing \"edges\" array");
  for (const auto& e : doc["edges"]) {
    if (!e.is_array() || e.size() != 2)
      throw Error(ErrorKind::MalformedDocument, "each edge must be a pair [u, v]");
    out.graph.add_edge(as_index(e[0], order, "edge endpoint"), as_index(e[1], order, "edge endpoint"));
  }
  out.graph.set_labels(std::move(labels));
  return out;
}

}  // namespace pisdim
