#include "pisdim/metric_dim.hpp"

#include <algorithm>
#include <atomic>
#include <limits>
#include <map>
#include <mutex>
#include <numeric>
#include <thread>

#include "json.hpp"
#include "pisdim/error.hpp"

namespace pisdim {

std::string_view twin_kind_name(TwinKind kind) {
  switch (kind) {
    case TwinKind::Singleton: return "singleton";
    case TwinKind::Open: return "open";
    case TwinKind::Closed: return "closed";
  }
  return "?";
}

std::string_view status_name(SolveStatus status) {
  switch (status) {
    case SolveStatus::Exact: return "exact";
    case SolveStatus::UpperBound: return "upper_bound";
    case SolveStatus::InfeasibleBudget: return "infeasible_budget";
  }
  return "?";
}

std::size_t TwinPartition::vertex_count() const noexcept {
  std::size_t n = 0;
  for (const auto& c : classes) n += c.size();
  return n;
}

namespace {

// N(u) \ {v} == N(v) \ {u}
bool twins(const Graph& g, std::size_t u, std::size_t v) {
  const auto a = g.neighbors(u).words();
  const auto b = g.neighbors(v).words();
  for (std::size_t k = 0; k < a.size(); ++k) {
    std::uint64_t mask = ~std::uint64_t{0};
    if ((u >> 6) == k) mask &= ~(std::uint64_t{1} << (u & 63));
    if ((v >> 6) == k) mask &= ~(std::uint64_t{1} << (v & 63));
    if ((a[k] & mask) != (b[k] & mask)) return false;
  }
  return true;
}

template <typename Same>
TwinPartition partition_by(const Graph& g, Same same) {
  const auto n = g.order();
  TwinPartition tp;
  std::vector<bool> assigned(n, false);
  for (std::size_t u = 0; u < n; ++u) {
    if (assigned[u]) continue;
    std::vector<std::size_t> cls{u};
    for (std::size_t v = u + 1; v < n; ++v)
      if (!assigned[v] && same(u, v)) {
        cls.push_back(v);
        assigned[v] = true;
      }
    TwinKind kind = TwinKind::Singleton;
    if (cls.size() > 1) kind = g.adjacent(cls[0], cls[1]) ? TwinKind::Closed : TwinKind::Open;
    tp.classes.push_back(std::move(cls));
    tp.kinds.push_back(kind);
  }
  return tp;
}

}  // namespace

TwinPartition twin_partition(const Graph& g) {
  return partition_by(g, [&](std::size_t u, std::size_t v) { return twins(g, u, v); });
}

TwinPartition open_twin_partition(const Graph& g) {
  return partition_by(g, [&](std::size_t u, std::size_t v) { return g.neighbors(u) == g.neighbors(v); });
}

std::size_t twin_lower_bound(const TwinPartition& tp) { return tp.vertex_count() - tp.class_count(); }

std::size_t info_lower_bound(std::size_t order, int diameter) {
  if (order <= 1) return 0;
  const auto base = static_cast<std::uint64_t>(std::max(diameter, 1));
  std::uint64_t power = 1;  // D^k, saturating
  for (std::size_t k = 0;; ++k) {
    if (k + power >= order) return k;
    power = power > order / base ? order : power * base;
  }
}

std::size_t info_lower_bound(const Graph& g, const DistanceMatrix& d) {
  return info_lower_bound(g.order(), diameter(d));
}

std::vector<int> representation(const DistanceMatrix& d, std::size_t v,
                                std::span<const std::size_t> landmarks) {
  std::vector<int> rep;
  rep.reserve(landmarks.size());
  for (auto w : landmarks) rep.push_back(d(v, w));
  return rep;
}

ResolveCheck is_resolving(const DistanceMatrix& d, std::span<const std::size_t> landmarks) {
  std::map<std::vector<std::uint8_t>, std::size_t> seen;
  std::vector<std::uint8_t> rep(landmarks.size());
  for (std::size_t v = 0; v < d.order(); ++v) {
    for (std::size_t i = 0; i < landmarks.size(); ++i) rep[i] = d(v, landmarks[i]);
    auto [it, inserted] = seen.try_emplace(rep, v);
    if (!inserted) return {false, std::pair{it->second, v}};
  }
  return {true, std::nullopt};
}

std::size_t metric_dimension_bruteforce(const DistanceMatrix& d) {
  const auto n = d.order();
  if (n > kMaxBruteForceVertices)
    throw Error(ErrorKind::TooLarge, "brute force is limited to " +
                                         std::to_string(kMaxBruteForceVertices) + " vertices");
  for (std::size_t k = 0; k <= n; ++k) {
    std::vector<std::size_t> subset(k);
    std::iota(subset.begin(), subset.end(), 0);
    while (true) {
      if (is_resolving(d, subset)) return k;
      // Next k-combination in lexicographic order.
      std::size_t i = k;
      while (i > 0 && subset[i - 1] == n - k + i - 1) --i;
      if (i == 0) break;
      ++subset[i - 1];
      for (std::size_t j = i; j < k; ++j) subset[j] = subset[j - 1] + 1;
    }
  }
  return n;  // unreachable for n >= 1: V itself resolves
}

namespace {

using Clock = std::chrono::steady_clock;

// Incumbent ordered by (size, top-level branch). A branch accepts a leaf only
// if it beats the incumbent in this order, so equal-size solutions from later
// branches never shadow the first optimum in search order.
constexpr std::uint64_t kNoBranch = 0xFFFF'FFFF;

constexpr std::uint64_t make_key(std::size_t size, std::uint64_t branch) {
  return (static_cast<std::uint64_t>(size) << 32) | branch;
}

struct Instance {
  const DistanceMatrix* dist = nullptr;
  std::size_t n = 0;
  int diam = 1;
  std::vector<std::size_t> preselected;
  // Reduced pair universe: pairs not resolved by the preselected landmarks
  // and not implied by a pair with a smaller candidate set.
  std::vector<Bitset> pair_cands;  // pair -> candidate landmarks (n bits)
  std::vector<Bitset> cover;       // vertex -> pairs it resolves (m bits)
  std::vector<std::uint32_t> classes0;  // representation classes under preselection
  std::vector<std::size_t> class_need;  // class size -> extra landmarks required

  std::size_t pairs() const noexcept { return pair_cands.size(); }
};

Instance prepare(const DistanceMatrix& d, const TwinPartition& tp) {
  Instance in;
  in.dist = &d;
  in.n = d.order();
  in.diam = std::max(1, diameter(d));
  const auto n = in.n;

  Bitset pre(n);
  for (const auto& cls : tp.classes)
    for (std::size_t i = 0; i + 1 < cls.size(); ++i) {
      in.preselected.push_back(cls[i]);
      pre.set(cls[i]);
    }
  std::ranges::sort(in.preselected);

  std::vector<Bitset> raw;
  for (std::size_t u = 0; u < n; ++u) {
    const auto du = d.row(u);
    for (std::size_t v = u + 1; v < n; ++v) {
      const auto dv = d.row(v);
      Bitset c(n);
      for (std::size_t w = 0; w < n; ++w)
        if (du[w] != dv[w]) c.set(w);
      if (c.intersects(pre)) continue;
      raw.push_back(std::move(c));
    }
  }

  // Drop pairs whose candidate set contains another pair's candidate set.
  std::vector<std::size_t> order(raw.size());
  std::iota(order.begin(), order.end(), 0);
  std::vector<std::size_t> sizes(raw.size());
  for (std::size_t p = 0; p < raw.size(); ++p) sizes[p] = raw[p].count();
  std::ranges::stable_sort(order, [&](auto a, auto b) { return sizes[a] < sizes[b]; });
  constexpr std::size_t kDominanceLimit = 40'000;
  std::vector<std::size_t> kept;
  for (auto p : order) {
    bool implied = false;
    if (raw.size() <= kDominanceLimit)
      for (auto q : kept)
        if (raw[q].is_subset_of(raw[p])) {
          implied = true;
          break;
        }
    if (!implied) kept.push_back(p);
  }
  for (auto p : kept) in.pair_cands.push_back(std::move(raw[p]));

  const auto m = in.pairs();
  in.cover.assign(n, Bitset(m));
  for (std::size_t p = 0; p < m; ++p) in.pair_cands[p].for_each([&](std::size_t w) { in.cover[w].set(p); });

  // Classes of equal representation with respect to the preselected set.
  in.classes0.assign(n, 0);
  {
    std::map<std::vector<std::uint8_t>, std::uint32_t> ids;
    std::vector<std::uint8_t> rep(in.preselected.size());
    for (std::size_t v = 0; v < n; ++v) {
      for (std::size_t i = 0; i < rep.size(); ++i) rep[i] = d(v, in.preselected[i]);
      auto [it, _] = ids.try_emplace(rep, static_cast<std::uint32_t>(ids.size()));
      in.classes0[v] = it->second;
    }
  }
  in.class_need.assign(n + 1, 0);
  for (std::size_t s = 0; s <= n; ++s) in.class_need[s] = info_lower_bound(s, in.diam);
  return in;
}

std::vector<std::size_t> greedy_cover(const Instance& in) {
  Bitset uncovered(in.pairs());
  uncovered.set_all();
  std::vector<std::size_t> chosen;
  while (uncovered.any()) {
    std::size_t best = in.n, best_gain = 0;
    for (std::size_t w = 0; w < in.n; ++w) {
      const auto gain = in.cover[w].count_and(uncovered);
      if (gain > best_gain) {
        best = w;
        best_gain = gain;
      }
    }
    chosen.push_back(best);
    uncovered.and_not(in.cover[best]);
  }
  return chosen;
}

struct Shared {
  std::atomic<std::uint64_t> key{~std::uint64_t{0}};
  std::mutex mu;
  std::vector<std::size_t> best;  // landmarks beyond the preselection
  std::atomic<bool> stop{false};
  std::atomic<std::uint64_t> nodes{0};
  Clock::time_point deadline;
};

class Searcher {
 public:
  Searcher(const Instance& in, Shared& shared) : in_(in), shared_(shared) {
    const auto max_depth = in.n + 2;
    uncovered_.assign(max_depth, Bitset(in.pairs()));
    excluded_.assign(max_depth, Bitset(in.n));
    classes_.assign(max_depth, std::vector<std::uint32_t>(in.n));
    remap_.assign(in.n * (static_cast<std::size_t>(in.diam) + 2), kUnset);
    class_size_.assign(in.n, 0);
  }

  struct Choice {
    std::size_t pair = 0;
    bool feasible = true;
    std::size_t bound = 0;  // extra landmarks needed below this node
  };

  // Lower bound on extra landmarks and the branching pair (fewest available
  // candidates, lowest index on ties).
  Choice analyse(std::size_t depth) {
    const auto& unc = uncovered_[depth];
    const auto& exc = excluded_[depth];
    Choice ch;
    std::size_t best_count = std::numeric_limits<std::size_t>::max();
    std::size_t packing = 0;
    used_ = Bitset(in_.n);
    for (auto p = unc.find_first(); p < unc.size(); p = unc.find_next(p + 1)) {
      const auto& cand = in_.pair_cands[p];
      const auto avail = cand.count_and_not(exc);
      if (avail == 0) {
        ch.feasible = false;
        return ch;
      }
      if (avail < best_count) {
        best_count = avail;
        ch.pair = p;
      }
      // Disjoint packing: pairs sharing no available candidate need distinct landmarks.
      bool disjoint = true;
      const auto cw = cand.words();
      const auto ew = exc.words();
      const auto uw = used_.words();
      for (std::size_t k = 0; k < cw.size(); ++k)
        if (cw[k] & ~ew[k] & uw[k]) {
          disjoint = false;
          break;
        }
      if (disjoint) {
        ++packing;
        used_ |= cand;
        used_.and_not(exc);
      }
    }
    // Representation classes: a class of size s needs k with k + D^k >= s.
    std::size_t classes_bound = 0;
    const auto& cls = classes_[depth];
    std::fill(class_size_.begin(), class_size_.end(), 0);
    for (std::size_t v = 0; v < in_.n; ++v) ++class_size_[cls[v]];
    for (auto s : class_size_) classes_bound = std::max(classes_bound, in_.class_need[s]);
    ch.bound = std::max(packing, classes_bound);
    return ch;
  }

  void refine(std::size_t depth, std::size_t landmark) {
    const auto& from = classes_[depth];
    auto& to = classes_[depth + 1];
    const auto span = static_cast<std::size_t>(in_.diam) + 2;
    std::uint32_t next = 0;
    touched_.clear();
    for (std::size_t v = 0; v < in_.n; ++v) {
      const std::size_t dv = std::min<std::size_t>((*in_.dist)(v, landmark), span - 1);
      const auto slot = from[v] * span + dv;
      if (remap_[slot] == kUnset) {
        remap_[slot] = next++;
        touched_.push_back(slot);
      }
      to[v] = remap_[slot];
    }
    for (auto s : touched_) remap_[s] = kUnset;
  }

  void set_root(const Bitset& uncovered, const Bitset& excluded, const std::vector<std::uint32_t>& classes) {
    uncovered_[0] = uncovered;
    excluded_[0] = excluded;
    classes_[0] = classes;
  }

  // Explores the subtree below `depth` with `chosen` already selected.
  void dfs(std::size_t depth, std::vector<std::size_t>& chosen, std::uint64_t branch) {
    if (shared_.stop.load(std::memory_order_relaxed)) return;
    if ((++local_nodes_ & 1023) == 0) {
      shared_.nodes.fetch_add(1024, std::memory_order_relaxed);
      if (Clock::now() >= shared_.deadline) {
        shared_.stop = true;
        return;
      }
    }
    const auto base = in_.preselected.size() + chosen.size();
    if (uncovered_[depth].none()) {
      offer(base, chosen, branch);
      return;
    }
    const auto ch = analyse(depth);
    if (!ch.feasible) return;
    if (make_key(base + ch.bound, branch) >= shared_.key.load(std::memory_order_acquire)) return;

    excluded_[depth + 1] = excluded_[depth];
    const auto& cand = in_.pair_cands[ch.pair];
    for (auto c = cand.find_first(); c < cand.size(); c = cand.find_next(c + 1)) {
      if (excluded_[depth].test(c)) continue;
      // Siblings already tried are excluded in later siblings.
      auto& unc = uncovered_[depth + 1];
      unc = uncovered_[depth];
      unc.and_not(in_.cover[c]);
      refine(depth, c);
      chosen.push_back(c);
      dfs(depth + 1, chosen, branch);
      chosen.pop_back();
      if (shared_.stop.load(std::memory_order_relaxed)) return;
      excluded_[depth + 1].set(c);
      if (make_key(base + 1, branch) >= shared_.key.load(std::memory_order_acquire)) return;
    }
  }

  // Root expansion for the top-level branch that picks the `index`-th
  // candidate of the root pair.
  void run_branch(const std::vector<std::size_t>& root_cands, std::size_t index) {
    excluded_[1] = excluded_[0];
    for (std::size_t i = 0; i < index; ++i) excluded_[1].set(root_cands[i]);
    const auto c = root_cands[index];
    uncovered_[1] = uncovered_[0];
    uncovered_[1].and_not(in_.cover[c]);
    refine(0, c);
    std::vector<std::size_t> chosen{c};
    dfs(1, chosen, index);
  }

  void flush() { shared_.nodes.fetch_add(local_nodes_ & 1023, std::memory_order_relaxed); }

 private:
  void offer(std::size_t size, const std::vector<std::size_t>& chosen, std::uint64_t branch) {
    const auto key = make_key(size, branch);
    std::lock_guard lock(shared_.mu);
    if (key < shared_.key.load()) {
      shared_.best = chosen;
      shared_.key.store(key, std::memory_order_release);
    }
  }

  static constexpr std::uint32_t kUnset = std::numeric_limits<std::uint32_t>::max();

  const Instance& in_;
  Shared& shared_;
  std::vector<Bitset> uncovered_;
  std::vector<Bitset> excluded_;
  std::vector<std::vector<std::uint32_t>> classes_;
  std::vector<std::uint32_t> remap_;
  std::vector<std::size_t> touched_;
  std::vector<std::size_t> class_size_;
  Bitset used_;
  std::uint64_t local_nodes_ = 0;
};

}  // namespace

ResolvingReport metric_dimension_exact(const Graph& g, const DistanceMatrix& d, const SolverOptions& options) {
  const auto start = Clock::now();
  const auto n = g.order();
  if (n == 0) throw Error(ErrorKind::EmptyGraph, "graph has no vertices");
  if (d.order() != n) throw Error(ErrorKind::LengthMismatch, "distance matrix does not match graph");
  if (!is_connected(d)) throw Error(ErrorKind::Disconnected, "metric dimension needs a connected graph");
  if (n > kMaxExactVertices)
    throw Error(ErrorKind::TooLarge, "exact solver is limited to " + std::to_string(kMaxExactVertices) + " vertices");

  ResolvingReport report;
  const auto tp = twin_partition(g);
  report.twin_bound = twin_lower_bound(tp);
  report.info_bound = info_lower_bound(g, d);
  auto finish = [&](ResolvingReport& r) -> ResolvingReport {
    r.size = r.set.size();
    r.millis = std::chrono::duration_cast<std::chrono::milliseconds>(Clock::now() - start).count();
    return r;
  };

  const auto deadline = start + options.budget;
  if (options.budget.count() <= 0) return finish(report);

  const Instance in = prepare(d, tp);
  if (Clock::now() >= deadline) return finish(report);

  const auto greedy = greedy_cover(in);
  Shared shared;
  shared.deadline = deadline;
  shared.best = greedy;
  shared.key = make_key(in.preselected.size() + greedy.size(), kNoBranch);

  Bitset root_uncovered(in.pairs());
  root_uncovered.set_all();
  const Bitset root_excluded(n);

  if (root_uncovered.any()) {
    Searcher root(in, shared);
    root.set_root(root_uncovered, root_excluded, in.classes0);
    const auto ch = root.analyse(0);
    const auto lower = in.preselected.size() + ch.bound;
    if (make_key(lower, 0) < shared.key.load()) {
      std::vector<std::size_t> root_cands;
      in.pair_cands[ch.pair].for_each([&](std::size_t c) { root_cands.push_back(c); });

      std::atomic<std::size_t> next{0};
      auto worker = [&] {
        Searcher s(in, shared);
        s.set_root(root_uncovered, root_excluded, in.classes0);
        for (std::size_t i; (i = next.fetch_add(1)) < root_cands.size();) {
          if (shared.stop) break;
          // Every leaf below branch i has size >= base + 1.
          if (make_key(in.preselected.size() + std::max<std::size_t>(ch.bound, 1), i) >= shared.key.load()) continue;
          s.run_branch(root_cands, i);
        }
        s.flush();
      };
      const auto threads = std::max(1U, options.threads);
      if (threads == 1) {
        worker();
      } else {
        std::vector<std::jthread> pool;
        for (unsigned t = 0; t < threads; ++t) pool.emplace_back(worker);
      }
    }
  }

  report.status = shared.stop ? SolveStatus::UpperBound : SolveStatus::Exact;
  report.nodes = shared.nodes.load();
  report.set = in.preselected;
  report.set.insert(report.set.end(), shared.best.begin(), shared.best.end());
  std::ranges::sort(report.set);
  return finish(report);
}

std::string report_json(const ResolvingReport& report, const Graph& g) {
  nlohmann::json doc;
  doc["set"] = nlohmann::json::array();
  for (auto v : report.set) doc["set"].push_back(g.label(v));
  doc["size"] = report.size;
  doc["status"] = status_name(report.status);
  doc["bounds"] = {{"twin", report.twin_bound}, {"info", report.info_bound}};
  doc["millis"] = report.millis;
  return doc.dump();
}

}  // namespace pisdim
