#pragma once

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstdint>
#include <map>
#include <string>
#include <unordered_set>
#include <vector>

#include "hypind/error.hpp"
#include "hypind/hypergraph.hpp"
#include "hypind/random.hpp"

namespace hypind {

enum class Model { complete, uniform_random, linear_random, uncrowded_random, girth5_graph, mixed_linear };

inline const char* to_string(Model m) {
  switch (m) {
    case Model::complete: return "complete";
    case Model::uniform_random: return "uniform_random";
    case Model::linear_random: return "linear_random";
    case Model::uncrowded_random: return "uncrowded_random";
    case Model::girth5_graph: return "girth5_graph";
    case Model::mixed_linear: return "mixed_linear";
  }
  return "unknown";
}

inline Model parse_model(const std::string& s) {
  for (Model m : {Model::complete, Model::uniform_random, Model::linear_random, Model::uncrowded_random,
                  Model::girth5_graph, Model::mixed_linear}) {
    if (s == to_string(m)) return m;
  }
  throw Error(Errc::invalid_argument, "unknown model '" + s + "'");
}

struct GenSpec {
  Model model = Model::uniform_random;
  std::size_t n = 0;
  std::size_t k = 2;
  /// Target t_i per edge size i. For `complete` only the keys matter
  /// (the sizes to include).
  std::map<std::size_t, double> t;
  std::uint64_t seed = 0;
};

struct GenResult {
  Hypergraph graph;
  std::map<std::size_t, double> achieved;
  /// False when a rejection budget ran out before the targets were met.
  bool feasible = true;
};

/// Rejection budget: proposals allowed per target edge.
inline constexpr std::size_t kRejectionFactor = 200;

/// Edge count |E_i| = t_i^{i-1} n / i giving average degree t_i, rounded.
inline std::size_t target_edge_count(std::size_t n, std::size_t i, double t) {
  if (t <= 0) return 0;
  return static_cast<std::size_t>(std::llround(std::pow(t, static_cast<double>(i - 1)) *
                                               static_cast<double>(n) / static_cast<double>(i)));
}

namespace detail {

inline double binomial_real(std::size_t n, std::size_t r) {
  if (r > n) return 0;
  return std::exp(std::lgamma(n + 1.0) - std::lgamma(r + 1.0) - std::lgamma(n - r + 1.0));
}

inline std::uint64_t pair_key(Vertex a, Vertex b) {
  if (a > b) std::swap(a, b);
  return (static_cast<std::uint64_t>(a) << 32) | b;
}

struct EdgeHash {
  std::size_t operator()(const std::vector<Vertex>& e) const {
    std::uint64_t x = 0x243f6a8885a308d3ULL;
    for (Vertex v : e) x = splitmix64(x ^ v);
    return static_cast<std::size_t>(x);
  }
};

inline std::vector<Vertex> random_edge(Rng& rng, std::size_t n, std::size_t i) {
  auto d = rng.distinct(static_cast<std::uint32_t>(n), static_cast<std::uint32_t>(i));
  std::vector<Vertex> e(d.begin(), d.end());
  std::sort(e.begin(), e.end());
  return e;
}

/// Visits all r-subsets of [0, n) in lexicographic order.
template <typename F>
void for_each_subset(std::size_t n, std::size_t r, F&& f) {
  if (r > n) return;
  std::vector<Vertex> c(r);
  for (std::size_t j = 0; j < r; ++j) c[j] = static_cast<Vertex>(j);
  while (true) {
    f(c);
    std::size_t j = r;
    while (j > 0 && c[j - 1] == n - r + j - 1) --j;
    if (j == 0) return;
    ++c[j - 1];
    for (std::size_t q = j; q < r; ++q) c[q] = c[q - 1] + 1;
  }
}

/// Sizes drawn in random order with the given multiplicities.
inline std::vector<std::size_t> interleaved_sizes(Rng& rng, const std::map<std::size_t, std::size_t>& counts) {
  std::vector<std::size_t> order;
  for (auto [i, c] : counts) order.insert(order.end(), c, i);
  rng.shuffle(order);
  return order;
}

/// Incremental linear hypergraph: an edge is accepted iff none of its
/// vertex pairs is already covered.
class LinearBuilder {
 public:
  explicit LinearBuilder(std::size_t n, bool uncrowded) : n_(n), uncrowded_(uncrowded), inc_(n) {}

  bool try_add(const std::vector<Vertex>& e) {
    for (std::size_t a = 0; a < e.size(); ++a) {
      for (std::size_t b = a + 1; b < e.size(); ++b) {
        if (pairs_.count(pair_key(e[a], e[b]))) return false;
      }
    }
    if (uncrowded_ && closes_short_cycle(e)) return false;
    add(e);
    return true;
  }

  /// Adds without checks (caller guarantees linearity).
  void add(const std::vector<Vertex>& e) {
    for (std::size_t a = 0; a < e.size(); ++a) {
      for (std::size_t b = a + 1; b < e.size(); ++b) pairs_.insert(pair_key(e[a], e[b]));
    }
    const auto id = static_cast<std::uint32_t>(edges_.size());
    edges_.push_back(e);
    for (Vertex v : e) inc_[v].push_back(id);
  }

  std::vector<std::vector<Vertex>> take() { return std::move(edges_); }

 private:
  // Would e be an edge of a 3- or 4-cycle? Such a cycle leaves e at some
  // x and returns at some y != x through a Berge path of 2 or 3 other edges
  // whose inner link vertices avoid x and y.
  bool closes_short_cycle(const std::vector<Vertex>& e) const {
    auto in_e = [&](Vertex v) { return std::binary_search(e.begin(), e.end(), v); };
    for (Vertex x : e) {
      for (std::uint32_t a : inc_[x]) {
        for (Vertex z1 : edges_[a]) {
          if (z1 == x || in_e(z1)) continue;
          for (std::uint32_t b : inc_[z1]) {
            if (b == a) continue;
            for (Vertex z2 : edges_[b]) {
              if (z2 == z1 || z2 == x) continue;
              if (in_e(z2)) return true;  // 3-cycle e, a, b
              for (std::uint32_t c : inc_[z2]) {
                if (c == a || c == b) continue;
                for (Vertex y : edges_[c]) {
                  if (y != x && y != z1 && y != z2 && in_e(y)) return true;  // 4-cycle
                }
              }
            }
          }
        }
      }
    }
    return false;
  }

  std::size_t n_;
  bool uncrowded_;
  std::unordered_set<std::uint64_t> pairs_;
  std::vector<std::vector<Vertex>> edges_;
  std::vector<std::vector<std::uint32_t>> inc_;
};

/// Random graph with no cycles of length 3 or 4, grown by adding uniformly
/// random valid pairs u, v (those at distance >= 4). While valid pairs are
/// common they are found by rejection; once acceptance falls below 1% the
/// remaining valid pairs are listed and drawn from directly. Validity only
/// ever goes from true to false, so drawing from the list and discarding
/// stale entries still picks uniformly among the currently valid pairs.
class Girth5Builder {
 public:
  Girth5Builder(std::size_t n, Rng& rng) : n_(n), rng_(rng), adj_(n) {
    use_bits_ = n <= kBitsetLimit;
    if (use_bits_) {
      words_ = (n + 63) / 64;
      ball_.assign(n * words_, 0);
      for (Vertex u = 0; u < n; ++u) set(u, u);
    }
  }

  /// Grows to `target` edges within `budget` proposals; returns edges added.
  std::size_t grow(std::size_t target, std::size_t budget) {
    if (n_ < 2) return 0;
    std::size_t proposals = 0, window = 0, accepted_window = 0;
    bool listed = false;
    while (edges_ < target && proposals < budget) {
      ++proposals;
      const auto u = static_cast<Vertex>(rng_.below(n_));
      const auto v = static_cast<Vertex>(rng_.below(n_));
      ++window;
      if (u != v && valid(u, v)) {
        add(u, v);
        ++accepted_window;
      }
      if (window >= kWindow) {
        if (accepted_window * 100 < window) {
          listed = true;
          break;
        }
        window = accepted_window = 0;
      }
    }
    if (listed) {
      auto list = valid_pairs();
      while (edges_ < target && !list.empty() && proposals < budget) {
        ++proposals;
        const std::size_t i = rng_.below(list.size());
        const auto u = static_cast<Vertex>(list[i] >> 32);
        const auto v = static_cast<Vertex>(list[i] & 0xffffffffU);
        if (valid(u, v)) add(u, v);
        list[i] = list.back();
        list.pop_back();
      }
    }
    return edges_;
  }

  std::vector<std::vector<Vertex>> edges() const {
    std::vector<std::vector<Vertex>> out;
    out.reserve(edges_);
    for (Vertex u = 0; u < n_; ++u) {
      for (Vertex v : adj_[u]) {
        if (u < v) out.push_back({u, v});
      }
    }
    return out;
  }

 private:
  static constexpr std::size_t kBitsetLimit = 46000;
  static constexpr std::size_t kWindow = 20000;

  bool test(Vertex u, Vertex v) const { return (ball_[u * words_ + (v >> 6)] >> (v & 63)) & 1U; }
  void set(Vertex u, Vertex v) { ball_[u * words_ + (v >> 6)] |= std::uint64_t{1} << (v & 63); }

  // dist(u, v) >= 4, i.e. the edge closes no cycle of length <= 4.
  bool valid(Vertex u, Vertex v) {
    if (use_bits_) {
      if (test(u, v)) return false;
      for (Vertex b : adj_[v]) {
        if (test(u, b)) return false;
      }
      return true;
    }
    // Ball of radius 2 around u, marked with a fresh stamp.
    ++stamp_;
    if (mark_.size() != n_) mark_.assign(n_, 0);
    mark_[u] = stamp_;
    for (Vertex a : adj_[u]) {
      mark_[a] = stamp_;
      for (Vertex b : adj_[a]) mark_[b] = stamp_;
    }
    if (mark_[v] == stamp_) return false;
    for (Vertex b : adj_[v]) {
      if (mark_[b] == stamp_) return false;
    }
    return true;
  }

  void add(Vertex u, Vertex v) {
    if (use_bits_) {
      for (Vertex a : adj_[u]) {
        set(a, v);
        set(v, a);
      }
      for (Vertex b : adj_[v]) {
        set(b, u);
        set(u, b);
      }
      set(u, v);
      set(v, u);
    }
    adj_[u].push_back(v);
    adj_[v].push_back(u);
    ++edges_;
  }

  std::vector<std::uint64_t> valid_pairs() {
    std::vector<std::uint64_t> out;
    if (use_bits_) {
      std::vector<std::uint64_t> reach(words_);
      for (Vertex u = 0; u < n_; ++u) {
        // Radius-3 ball of u: union of the radius-2 balls of u and its neighbours.
        std::copy_n(ball_.begin() + static_cast<std::ptrdiff_t>(u * words_), words_, reach.begin());
        for (Vertex a : adj_[u]) {
          const std::uint64_t* row = ball_.data() + a * words_;
          for (std::size_t w = 0; w < words_; ++w) reach[w] |= row[w];
        }
        for (std::size_t w = u >> 6; w < words_; ++w) {
          std::uint64_t free = ~reach[w];
          if (w == (u >> 6)) free &= ~((std::uint64_t{2} << (u & 63)) - 1);
          while (free) {
            const std::size_t v = w * 64 + static_cast<std::size_t>(std::countr_zero(free));
            free &= free - 1;
            if (v < n_) out.push_back((static_cast<std::uint64_t>(u) << 32) | v);
          }
        }
      }
      return out;
    }
    for (Vertex u = 0; u < n_; ++u) {
      for (Vertex v = u + 1; v < n_; ++v) {
        if (valid(u, v)) out.push_back((static_cast<std::uint64_t>(u) << 32) | v);
      }
    }
    return out;
  }

  std::size_t n_;
  Rng& rng_;
  std::vector<std::vector<Vertex>> adj_;
  bool use_bits_ = false;
  std::size_t words_ = 0;
  std::vector<std::uint64_t> ball_;
  std::vector<std::uint32_t> mark_;
  std::uint32_t stamp_ = 0;
  std::size_t edges_ = 0;
};

inline void validate(const GenSpec& s) {
  if (s.k < 2) throw Error(Errc::invalid_argument, "k must be >= 2");
  if (s.n < s.k) throw Error(Errc::invalid_argument, "n must be >= k");
  for (auto [i, t] : s.t) {
    if (i < 2 || i > s.k) throw Error(Errc::invalid_argument, "edge size " + std::to_string(i) + " outside 2..k");
    if (!(t >= 0)) throw Error(Errc::invalid_argument, "target degrees must be >= 0");
  }
  if (s.model == Model::girth5_graph && (s.k != 2 || s.t.size() > 1 || (s.t.size() == 1 && !s.t.count(2)))) {
    throw Error(Errc::invalid_argument, "girth5_graph is 2-uniform");
  }
}

}  // namespace detail

/// Generates the instance described by `spec`; never throws on infeasible
/// densities, reporting them through `feasible` instead.
inline GenResult try_gen(const GenSpec& spec) {
  detail::validate(spec);
  Rng rng(derive_seed(spec.seed, static_cast<std::uint64_t>(spec.model) + 1, spec.n));
  const std::size_t n = spec.n;
  std::vector<std::vector<Vertex>> edges;
  bool feasible = true;

  std::map<std::size_t, std::size_t> targets;
  for (auto [i, t] : spec.t) targets[i] = target_edge_count(n, i, t);
  std::size_t total_target = 0;
  for (auto [i, c] : targets) total_target += c;

  switch (spec.model) {
    case Model::complete: {
      std::vector<std::size_t> sizes;
      for (auto [i, t] : spec.t) sizes.push_back(i);
      if (sizes.empty()) sizes.push_back(spec.k);
      for (std::size_t i : sizes) {
        if (detail::binomial_real(n, i) > 5e7) throw Error(Errc::overflow, "complete hypergraph too large");
        detail::for_each_subset(n, i, [&](const std::vector<Vertex>& c) { edges.push_back(c); });
      }
      break;
    }
    case Model::uniform_random: {
      for (auto [i, count] : targets) {
        const double space = detail::binomial_real(n, i);
        const double p = std::min(1.0, static_cast<double>(count) / space);
        if (space <= 2e6) {
          detail::for_each_subset(n, i, [&](const std::vector<Vertex>& c) {
            if (rng.bernoulli(p)) edges.push_back(c);
          });
          continue;
        }
        // Binomial(space, p) edge count via geometric skips, then that many
        // distinct uniform i-sets: the same law as independent inclusion.
        std::size_t m = 0;
        double pos = static_cast<double>(rng.geometric(p));
        while (pos < space) {
          ++m;
          pos += static_cast<double>(rng.geometric(p)) + 1.0;
        }
        std::unordered_set<std::vector<Vertex>, detail::EdgeHash> seen;
        while (seen.size() < m) {
          auto e = detail::random_edge(rng, n, i);
          if (seen.insert(e).second) edges.push_back(std::move(e));
        }
      }
      break;
    }
    case Model::linear_random:
    case Model::uncrowded_random: {
      detail::LinearBuilder b(n, spec.model == Model::uncrowded_random);
      auto order = detail::interleaved_sizes(rng, targets);
      const std::size_t budget = kRejectionFactor * std::max<std::size_t>(1, total_target);
      std::size_t proposals = 0, next = 0;
      while (next < order.size() && proposals < budget) {
        ++proposals;
        if (b.try_add(detail::random_edge(rng, n, order[next]))) ++next;
      }
      feasible = next == order.size();
      edges = b.take();
      break;
    }
    case Model::girth5_graph:
    case Model::mixed_linear: {
      const std::size_t two = targets.count(2) ? targets[2] : 0;
      detail::Girth5Builder g(n, rng);
      const std::size_t got = g.grow(two, kRejectionFactor * std::max<std::size_t>(1, two));
      feasible = got >= two;
      edges = g.edges();
      if (spec.model == Model::mixed_linear) {
        detail::LinearBuilder b(n, false);
        for (const auto& e : edges) b.add(e);
        targets.erase(2);
        std::size_t rest = 0;
        for (auto [i, c] : targets) rest += c;
        auto order = detail::interleaved_sizes(rng, targets);
        const std::size_t budget = kRejectionFactor * std::max<std::size_t>(1, rest);
        std::size_t proposals = 0, next = 0;
        while (next < order.size() && proposals < budget) {
          ++proposals;
          if (b.try_add(detail::random_edge(rng, n, order[next]))) ++next;
        }
        feasible = feasible && next == order.size();
        edges = b.take();
      }
      break;
    }
  }

  GenResult r;
  r.graph = Hypergraph(n, std::move(edges));
  r.feasible = feasible;
  for (auto [i, t] : spec.t) r.achieved[i] = average_degree(r.graph, i).t;
  return r;
}

/// As try_gen, but throws Infeasible (with the achieved densities) when the
/// rejection budget ran out.
inline Hypergraph gen(const GenSpec& spec) {
  auto r = try_gen(spec);
  if (!r.feasible) {
    std::string msg = "rejection budget exhausted; achieved";
    for (auto [i, t] : r.achieved) msg += " t_" + std::to_string(i) + "=" + std::to_string(t);
    throw Error(Errc::infeasible, msg);
  }
  return std::move(r.graph);
}

/// Classical small instances: fano, petersen, c5, k4, complete3u5.
inline Hypergraph fixture(const std::string& name) {
  using E = std::vector<std::vector<Vertex>>;
  if (name == "fano") {
    return Hypergraph(7, E{{0, 1, 2}, {0, 3, 4}, {0, 5, 6}, {1, 3, 5}, {1, 4, 6}, {2, 3, 6}, {2, 4, 5}});
  }
  if (name == "petersen") {
    return Hypergraph(10, E{{0, 1}, {1, 2}, {2, 3}, {3, 4}, {4, 0}, {0, 5}, {1, 6}, {2, 7},
                            {3, 8}, {4, 9}, {5, 7}, {7, 9}, {9, 6}, {6, 8}, {8, 5}});
  }
  if (name == "c5") return Hypergraph(5, E{{0, 1}, {1, 2}, {2, 3}, {3, 4}, {4, 0}});
  if (name == "k4") return Hypergraph(4, E{{0, 1}, {0, 2}, {0, 3}, {1, 2}, {1, 3}, {2, 3}});
  if (name == "complete3u5") {
    E e;
    detail::for_each_subset(5, 3, [&](const std::vector<Vertex>& c) { e.push_back(c); });
    return Hypergraph(5, std::move(e));
  }
  throw Error(Errc::unknown_fixture, "no fixture named '" + name + "'");
}

}  // namespace hypind
