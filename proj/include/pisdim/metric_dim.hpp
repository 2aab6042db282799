#pragma once

#include <chrono>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "pisdim/pis_graph.hpp"

namespace pisdim {

enum class TwinKind { Singleton, Open, Closed };
std::string_view twin_kind_name(TwinKind kind);

// Vertices x, y are twins when N(x) \ {y} = N(y) \ {x}; the relation is an
// equivalence whose classes are independent sets (open twins, equal N) or
// cliques (closed twins, equal N[.]). No third vertex distinguishes two
// members of a class.
struct TwinPartition {
  std::vector<std::vector<std::size_t>> classes;  // ordered by smallest member
  std::vector<TwinKind> kinds;

  std::size_t class_count() const noexcept { return classes.size(); }
  std::size_t vertex_count() const noexcept;
};

TwinPartition twin_partition(const Graph& g);
// Partition by equal open neighbourhoods only.
TwinPartition open_twin_partition(const Graph& g);

// |V| - number of classes: every resolving set holds all but one member of
// each class.
std::size_t twin_lower_bound(const TwinPartition& tp);

// Smallest k with k + D^k >= |V|: landmarks represent themselves, every
// other vertex gets a distinct vector in {1..D}^k.
std::size_t info_lower_bound(std::size_t order, int diameter);
std::size_t info_lower_bound(const Graph& g, const DistanceMatrix& d);

std::vector<int> representation(const DistanceMatrix& d, std::size_t v,
                                 std::span<const std::size_t> landmarks);

struct ResolveCheck {
  bool resolving = false;
  // Lowest-index unresolved pair (u < v) when not resolving.
  std::optional<std::pair<std::size_t, std::size_t>> witness;

  explicit operator bool() const noexcept { return resolving; }
};

ResolveCheck is_resolving(const DistanceMatrix& d, std::span<const std::size_t> landmarks);

enum class SolveStatus { Exact, UpperBound, InfeasibleBudget };
std::string_view status_name(SolveStatus status);

struct SolverOptions {
  std::chrono::milliseconds budget{600'000};
  unsigned threads = 1;
};

struct ResolvingReport {
  std::vector<std::size_t> set;  // ascending vertex indices
  std::size_t size = 0;
  SolveStatus status = SolveStatus::InfeasibleBudget;
  std::size_t twin_bound = 0;
  std::size_t info_bound = 0;
  std::int64_t millis = 0;
  std::uint64_t nodes = 0;  // search nodes expanded
};

// Largest graph the exact solver accepts; the pair universe is quadratic.
inline constexpr std::size_t kMaxExactVertices = 1024;

// Minimum hitting set over vertex pairs: landmark w hits pair {u, v} when
// d(u, w) != d(v, w). Twin classes contribute their lowest-index members up
// front, a greedy cover seeds the incumbent, and a depth-first branch and
// bound proves optimality. The returned set is the first optimum in the
// search order, so it does not depend on `threads`.
// Throws Disconnected for disconnected graphs, TooLarge above kMaxExactVertices.
ResolvingReport metric_dimension_exact(const Graph& g, const DistanceMatrix& d,
                                       const SolverOptions& options = {});

inline constexpr std::size_t kMaxBruteForceVertices = 14;

// Enumerates subsets in size order. Throws TooLarge above 14 vertices.
std::size_t metric_dimension_bruteforce(const DistanceMatrix& d);

// {"set":[labels], "size", "status", "bounds":{"twin","info"}, "millis"}
std::string report_json(const ResolvingReport& report, const Graph& g);

}  // namespace pisdim
