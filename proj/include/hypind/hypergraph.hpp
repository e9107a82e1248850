#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "hypind/error.hpp"

namespace hypind {

using Vertex = std::uint32_t;
using EdgeId = std::uint32_t;

/// Non-uniform hypergraph on vertices 0..n-1 with edges of size >= 2.
///
/// Edges are stored canonically: each edge is a strictly increasing vertex
/// list and the edge list is ordered by (size, lexicographic), so two
/// hypergraphs with the same edge sets compare equal regardless of the order
/// they were built in. Edge ids index that canonical order; edges of size i
/// occupy the contiguous id range `size_range(i)`. A CSR vertex -> incident
/// edge index (ascending edge ids) backs all incidence-driven algorithms.
///
/// Immutable after construction.
class Hypergraph {
 public:
  Hypergraph() : offsets_{0}, inc_offsets_{0} {}

  explicit Hypergraph(std::size_t n) : Hypergraph(n, std::vector<std::vector<Vertex>>{}) {}

  /// Validating constructor. Throws Error with OutOfRange, BadSize,
  /// RepeatedVertex or Duplicate.
  Hypergraph(std::size_t n, std::vector<std::vector<Vertex>> edges) {
    if (n > std::numeric_limits<Vertex>::max()) {
      throw Error(Errc::overflow, "vertex count exceeds 32-bit ids");
    }
    for (auto& e : edges) {
      if (e.size() < 2) throw Error(Errc::bad_size, "edge of size " + std::to_string(e.size()));
      std::sort(e.begin(), e.end());
      for (std::size_t j = 0; j < e.size(); ++j) {
        if (e[j] >= n) {
          throw Error(Errc::out_of_range,
                      "vertex " + std::to_string(e[j]) + " >= n=" + std::to_string(n));
        }
        if (j > 0 && e[j] == e[j - 1]) {
          throw Error(Errc::repeated_vertex, "vertex " + std::to_string(e[j]) + " repeated in edge");
        }
      }
    }
    std::sort(edges.begin(), edges.end(), [](const auto& a, const auto& b) {
      return a.size() != b.size() ? a.size() < b.size() : a < b;
    });
    for (std::size_t j = 1; j < edges.size(); ++j) {
      if (edges[j] == edges[j - 1]) throw Error(Errc::duplicate, "repeated edge " + describe(edges[j]));
    }
    std::vector<Vertex> pool;
    std::vector<std::uint32_t> offsets{0};
    offsets.reserve(edges.size() + 1);
    for (const auto& e : edges) {
      pool.insert(pool.end(), e.begin(), e.end());
      offsets.push_back(static_cast<std::uint32_t>(pool.size()));
    }
    assemble(n, std::move(pool), std::move(offsets));
  }

  /// Builds from a flat pool that is already canonical (strictly increasing
  /// edges in (size, lex) order, no duplicates). Used by induced-subgraph and
  /// copy constructions whose output is canonical by construction.
  static Hypergraph from_canonical(std::size_t n, std::vector<Vertex> pool,
                                   std::vector<std::uint32_t> offsets) {
    Hypergraph h;
    h.assemble(n, std::move(pool), std::move(offsets));
    return h;
  }

  std::size_t num_vertices() const { return n_; }
  std::size_t num_edges() const { return offsets_.size() - 1; }

  /// Largest edge size present; 0 for an edgeless hypergraph.
  std::size_t max_edge_size() const { return size_first_.empty() ? 0 : size_first_.size() - 2; }

  std::span<const Vertex> edge(EdgeId e) const {
    return {pool_.data() + offsets_[e], pool_.data() + offsets_[e + 1]};
  }

  std::size_t edge_size(EdgeId e) const { return offsets_[e + 1] - offsets_[e]; }

  std::span<const EdgeId> incident(Vertex v) const {
    return {inc_.data() + inc_offsets_[v], inc_.data() + inc_offsets_[v + 1]};
  }

  std::size_t degree(Vertex v) const { return inc_offsets_[v + 1] - inc_offsets_[v]; }

  /// Edge ids of size i as a half-open range [first, second).
  std::pair<EdgeId, EdgeId> size_range(std::size_t i) const {
    if (i + 1 >= size_first_.size()) return {0, 0};
    return {size_first_[i], size_first_[i + 1]};
  }

  std::size_t count_of_size(std::size_t i) const {
    auto [a, b] = size_range(i);
    return b - a;
  }

  /// Sizes i with at least one edge, ascending.
  std::vector<std::size_t> sizes_present() const {
    std::vector<std::size_t> out;
    for (std::size_t i = 2; i <= max_edge_size(); ++i) {
      if (count_of_size(i) > 0) out.push_back(i);
    }
    return out;
  }

  std::vector<std::vector<Vertex>> edge_list() const {
    std::vector<std::vector<Vertex>> out;
    out.reserve(num_edges());
    for (EdgeId e = 0; e < num_edges(); ++e) {
      auto s = edge(e);
      out.emplace_back(s.begin(), s.end());
    }
    return out;
  }

  bool contains_edge(std::span<const Vertex> sorted_edge) const {
    if (sorted_edge.empty() || sorted_edge.front() >= n_) return false;
    for (EdgeId e : incident(sorted_edge.front())) {
      auto s = edge(e);
      if (std::equal(s.begin(), s.end(), sorted_edge.begin(), sorted_edge.end())) return true;
    }
    return false;
  }

  std::span<const Vertex> pool() const { return pool_; }
  std::span<const std::uint32_t> offsets() const { return offsets_; }

  friend bool operator==(const Hypergraph& a, const Hypergraph& b) {
    return a.n_ == b.n_ && a.offsets_ == b.offsets_ && a.pool_ == b.pool_;
  }

 private:
  static std::string describe(const std::vector<Vertex>& e) {
    std::string s = "{";
    for (std::size_t j = 0; j < e.size(); ++j) s += (j ? "," : "") + std::to_string(e[j]);
    return s + "}";
  }

  void assemble(std::size_t n, std::vector<Vertex> pool, std::vector<std::uint32_t> offsets) {
    n_ = n;
    pool_ = std::move(pool);
    offsets_ = std::move(offsets);
    const std::size_t m = offsets_.size() - 1;
    size_first_.clear();
    if (m > 0) {
      const std::size_t k = offsets_[m] - offsets_[m - 1];
      size_first_.assign(k + 2, 0);
      // size_first_[i] = first edge id with size >= i.
      std::size_t e = 0;
      for (std::size_t i = 0; i <= k + 1; ++i) {
        while (e < m && offsets_[e + 1] - offsets_[e] < i) ++e;
        size_first_[i] = static_cast<EdgeId>(e);
      }
    }
    inc_offsets_.assign(n_ + 1, 0);
    for (Vertex v : pool_) ++inc_offsets_[v + 1];
    for (std::size_t v = 0; v < n_; ++v) inc_offsets_[v + 1] += inc_offsets_[v];
    inc_.assign(pool_.size(), 0);
    std::vector<std::uint32_t> cursor(inc_offsets_.begin(), inc_offsets_.end() - 1);
    for (EdgeId e = 0; e < m; ++e) {
      for (std::uint32_t j = offsets_[e]; j < offsets_[e + 1]; ++j) inc_[cursor[pool_[j]]++] = e;
    }
  }

  std::size_t n_ = 0;
  std::vector<Vertex> pool_;
  std::vector<std::uint32_t> offsets_;
  std::vector<EdgeId> size_first_;
  std::vector<std::uint32_t> inc_offsets_;
  std::vector<EdgeId> inc_;
};

/// Per-size vertex degrees d_i(v) and average degrees t_i^{i-1} = i|E_i|/n.
struct DegreeProfile {
  std::size_t k = 0;
  /// by_size[i][v] = d_i(v); entries for i < 2 are empty.
  std::vector<std::vector<std::uint32_t>> by_size;
  std::vector<double> t_pow;
  std::vector<double> t;

  std::uint32_t at(std::size_t i, Vertex v) const {
    return i < by_size.size() && !by_size[i].empty() ? by_size[i][v] : 0;
  }
};

struct AverageDegree {
  double t_pow = 0.0;
  double t = 0.0;
};

/// t_pow = i|E_i|/n and t = t_pow^{1/(i-1)}; both 0 when the layer is empty.
inline AverageDegree average_degree(const Hypergraph& h, std::size_t i) {
  if (i < 2 || h.num_vertices() == 0) return {};
  const double t_pow = static_cast<double>(i) * static_cast<double>(h.count_of_size(i)) /
                       static_cast<double>(h.num_vertices());
  return {t_pow, t_pow > 0 ? std::pow(t_pow, 1.0 / static_cast<double>(i - 1)) : 0.0};
}

/// max_i t_i over the present sizes; 0 for edgeless input.
inline double max_average_degree(const Hypergraph& h) {
  double best = 0.0;
  for (std::size_t i = 2; i <= h.max_edge_size(); ++i) best = std::max(best, average_degree(h, i).t);
  return best;
}

inline DegreeProfile degree_profile(const Hypergraph& h) {
  DegreeProfile p;
  p.k = h.max_edge_size();
  p.by_size.resize(p.k + 1);
  p.t_pow.assign(p.k + 1, 0.0);
  p.t.assign(p.k + 1, 0.0);
  for (std::size_t i = 2; i <= p.k; ++i) {
    p.by_size[i].assign(h.num_vertices(), 0);
    auto [a, b] = h.size_range(i);
    for (EdgeId e = a; e < b; ++e) {
      for (Vertex v : h.edge(e)) ++p.by_size[i][v];
    }
    auto avg = average_degree(h, i);
    p.t_pow[i] = avg.t_pow;
    p.t[i] = avg.t;
  }
  return p;
}

namespace detail {

inline void check_vertices(const Hypergraph& h, std::span<const Vertex> vs) {
  for (Vertex v : vs) {
    if (v >= h.num_vertices()) {
      throw Error(Errc::out_of_range, "vertex " + std::to_string(v) + " >= n=" +
                                          std::to_string(h.num_vertices()));
    }
  }
}

inline std::vector<Vertex> sorted_unique(std::span<const Vertex> vs) {
  std::vector<Vertex> out(vs.begin(), vs.end());
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

}  // namespace detail

/// True iff no edge of h lies entirely inside s. Duplicates in s are ignored.
inline bool is_independent(const Hypergraph& h, std::span<const Vertex> s) {
  detail::check_vertices(h, s);
  std::vector<char> in(h.num_vertices(), 0);
  for (Vertex v : s) in[v] = 1;
  for (Vertex v : s) {
    for (EdgeId e : h.incident(v)) {
      auto edge = h.edge(e);
      if (edge.front() != v) continue;  // examine each edge once, from its lowest vertex
      if (std::all_of(edge.begin(), edge.end(), [&](Vertex u) { return in[u] != 0; })) return false;
    }
  }
  return true;
}

/// Induced subhypergraph plus the map from new ids back to the parent's ids.
struct Induced {
  Hypergraph graph;
  std::vector<Vertex> to_parent;

  std::vector<Vertex> lift(std::span<const Vertex> local) const {
    std::vector<Vertex> out;
    out.reserve(local.size());
    for (Vertex v : local) out.push_back(to_parent[v]);
    return out;
  }
};

/// Subhypergraph induced on vs, relabeled to 0..|vs|-1 in increasing order of
/// the parent ids.
inline Induced induced(const Hypergraph& h, std::span<const Vertex> vs) {
  detail::check_vertices(h, vs);
  Induced out;
  out.to_parent = detail::sorted_unique(vs);
  constexpr Vertex none = std::numeric_limits<Vertex>::max();
  std::vector<Vertex> local(h.num_vertices(), none);
  for (std::size_t j = 0; j < out.to_parent.size(); ++j) local[out.to_parent[j]] = static_cast<Vertex>(j);

  std::vector<Vertex> pool;
  std::vector<std::uint32_t> offsets{0};
  for (EdgeId e = 0; e < h.num_edges(); ++e) {
    auto edge = h.edge(e);
    if (!std::all_of(edge.begin(), edge.end(), [&](Vertex u) { return local[u] != none; })) continue;
    for (Vertex u : edge) pool.push_back(local[u]);
    offsets.push_back(static_cast<std::uint32_t>(pool.size()));
  }
  out.graph = Hypergraph::from_canonical(out.to_parent.size(), std::move(pool), std::move(offsets));
  return out;
}

/// Induced on the complement of `removed`.
inline Induced induced_without(const Hypergraph& h, std::span<const Vertex> removed) {
  detail::check_vertices(h, removed);
  std::vector<char> gone(h.num_vertices(), 0);
  for (Vertex v : removed) gone[v] = 1;
  std::vector<Vertex> keep;
  keep.reserve(h.num_vertices());
  for (Vertex v = 0; v < h.num_vertices(); ++v) {
    if (!gone[v]) keep.push_back(v);
  }
  return induced(h, keep);
}

/// Subhypergraph with only the edges of the listed sizes (same vertex set).
inline Hypergraph size_layers(const Hypergraph& h, std::span<const std::size_t> sizes) {
  std::vector<Vertex> pool;
  std::vector<std::uint32_t> offsets{0};
  std::vector<std::size_t> sorted(sizes.begin(), sizes.end());
  std::sort(sorted.begin(), sorted.end());
  for (std::size_t i : sorted) {
    auto [a, b] = h.size_range(i);
    for (EdgeId e = a; e < b; ++e) {
      auto edge = h.edge(e);
      pool.insert(pool.end(), edge.begin(), edge.end());
      offsets.push_back(static_cast<std::uint32_t>(pool.size()));
    }
  }
  return Hypergraph::from_canonical(h.num_vertices(), std::move(pool), std::move(offsets));
}

/// L vertex-disjoint copies; copy c maps v to c*n + v.
inline Hypergraph disjoint_copies(const Hypergraph& h, std::size_t copies) {
  if (copies == 0) throw Error(Errc::invalid_argument, "copies must be >= 1");
  const std::size_t n = h.num_vertices();
  if (n != 0 && copies > std::numeric_limits<Vertex>::max() / n) {
    throw Error(Errc::overflow, "copies * n exceeds 32-bit vertex ids");
  }
  if (h.pool().size() != 0 &&
      copies > std::numeric_limits<std::uint32_t>::max() / h.pool().size()) {
    throw Error(Errc::overflow, "total incidence count exceeds 32 bits");
  }
  // Within one size class, copy c's edges all precede copy c+1's, and each
  // copy preserves lexicographic order, so the result stays canonical.
  std::vector<Vertex> pool;
  pool.reserve(h.pool().size() * copies);
  std::vector<std::uint32_t> offsets{0};
  offsets.reserve(h.num_edges() * copies + 1);
  for (std::size_t i = 2; i <= h.max_edge_size(); ++i) {
    auto [a, b] = h.size_range(i);
    for (std::size_t c = 0; c < copies; ++c) {
      const auto shift = static_cast<Vertex>(c * n);
      for (EdgeId e = a; e < b; ++e) {
        for (Vertex v : h.edge(e)) pool.push_back(v + shift);
        offsets.push_back(static_cast<std::uint32_t>(pool.size()));
      }
    }
  }
  return Hypergraph::from_canonical(n * copies, std::move(pool), std::move(offsets));
}

}  // namespace hypind
