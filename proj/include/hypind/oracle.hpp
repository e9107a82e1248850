#pragma once

#include <algorithm>
#include <cstdint>
#include <span>
#include <vector>

#include "hypind/cycles.hpp"
#include "hypind/error.hpp"
#include "hypind/hypergraph.hpp"

namespace hypind {

struct ExactResult {
  std::size_t alpha = 0;
  std::vector<Vertex> witness;
  std::uint64_t nodes_explored = 0;
  /// False when the node budget ran out; alpha is then only a lower bound.
  bool exact = true;
};

namespace detail {

class AlphaSearch {
 public:
  AlphaSearch(const Hypergraph& h, std::uint64_t budget)
      : h_(h), budget_(budget), state_(h.num_vertices(), kUndecided),
        in_cnt_(h.num_edges(), 0), out_cnt_(h.num_edges(), 0) {}

  ExactResult run() {
    undecided_ = h_.num_vertices();
    // Vertices in no edge belong to every maximum independent set.
    for (Vertex v = 0; v < h_.num_vertices(); ++v) {
      if (h_.degree(v) == 0) assign(v, kIn);
    }
    search();
    ExactResult r;
    r.alpha = best_.size();
    r.witness = best_;
    r.nodes_explored = nodes_;
    r.exact = !out_of_budget_;
    return r;
  }

 private:
  static constexpr std::uint8_t kUndecided = 0, kIn = 1, kOut = 2;

  // Returns false if the assignment (with forced consequences) is infeasible.
  bool assign(Vertex v, std::uint8_t s) {
    std::vector<Vertex> queue{v};
    std::vector<std::uint8_t> what{s};
    for (std::size_t qi = 0; qi < queue.size(); ++qi) {
      const Vertex u = queue[qi];
      const std::uint8_t su = what[qi];
      if (state_[u] != kUndecided) {
        if (state_[u] != su) return false;
        continue;
      }
      state_[u] = su;
      trail_.push_back(u);
      --undecided_;
      if (su == kIn) {
        ++current_;
        for (EdgeId e : h_.incident(u)) {
          ++in_cnt_[e];
          if (out_cnt_[e] != 0) continue;
          const std::size_t size = h_.edge_size(e);
          if (in_cnt_[e] == size) return false;
          if (in_cnt_[e] + 1 == size) {
            for (Vertex w : h_.edge(e)) {
              if (state_[w] == kUndecided) {
                queue.push_back(w);
                what.push_back(kOut);
              }
            }
          }
        }
      } else {
        for (EdgeId e : h_.incident(u)) ++out_cnt_[e];
      }
    }
    return true;
  }

  void undo_to(std::size_t mark) {
    while (trail_.size() > mark) {
      const Vertex u = trail_.back();
      trail_.pop_back();
      if (state_[u] == kIn) {
        --current_;
        for (EdgeId e : h_.incident(u)) --in_cnt_[e];
      } else {
        for (EdgeId e : h_.incident(u)) --out_cnt_[e];
      }
      state_[u] = kUndecided;
      ++undecided_;
    }
  }

  // Upper bound: undecided vertices minus a greedy matching of live edges
  // that have exactly two undecided vertices and all others in.
  std::size_t bound() {
    std::size_t matched = 0;
    used_.assign(h_.num_vertices(), 0);
    for (EdgeId e = 0; e < h_.num_edges(); ++e) {
      if (out_cnt_[e] != 0 || in_cnt_[e] + 2 != h_.edge_size(e)) continue;
      Vertex p = 0, q = 0;
      int c = 0;
      for (Vertex w : h_.edge(e)) {
        if (state_[w] == kUndecided) (c++ == 0 ? p : q) = w;
      }
      if (!used_[p] && !used_[q]) {
        used_[p] = used_[q] = 1;
        ++matched;
      }
    }
    return current_ + undecided_ - matched;
  }

  void record() {
    if (!best_.empty() && current_ <= best_.size()) return;
    std::vector<Vertex> s;
    for (Vertex v = 0; v < h_.num_vertices(); ++v) {
      if (state_[v] == kIn) s.push_back(v);
    }
    best_ = std::move(s);
  }

  void search() {
    ++nodes_;
    if (nodes_ > budget_) {
      out_of_budget_ = true;
      return;
    }
    if (undecided_ == 0) {
      record();
      return;
    }
    if (current_ + undecided_ <= best_.size() && !best_.empty()) return;
    if (bound() <= best_.size() && !best_.empty()) return;

    // Branch vertex: maximum number of live incident edges, lowest id on ties.
    Vertex pick = 0;
    std::size_t pick_deg = 0;
    bool any = false, free_left = false;
    for (Vertex v = 0; v < h_.num_vertices(); ++v) {
      if (state_[v] != kUndecided) continue;
      std::size_t d = 0;
      for (EdgeId e : h_.incident(v)) d += out_cnt_[e] == 0;
      if (d == 0) free_left = true;
      if (!any || d > pick_deg) {
        pick = v;
        pick_deg = d;
        any = true;
      }
    }
    if (pick_deg == 0 && free_left) {
      // Everything undecided is unconstrained: take it all.
      const std::size_t mark = trail_.size();
      for (Vertex v = 0; v < h_.num_vertices(); ++v) {
        if (state_[v] == kUndecided) assign(v, kIn);
      }
      record();
      undo_to(mark);
      return;
    }
    for (std::uint8_t s : {kIn, kOut}) {
      const std::size_t mark = trail_.size();
      if (assign(pick, s)) search();
      undo_to(mark);
      if (out_of_budget_) return;
    }
  }

  const Hypergraph& h_;
  std::uint64_t budget_;
  std::vector<std::uint8_t> state_;
  std::vector<std::uint32_t> in_cnt_, out_cnt_;
  std::vector<Vertex> trail_;
  std::vector<char> used_;
  std::vector<Vertex> best_;
  std::size_t current_ = 0, undecided_ = 0;
  std::uint64_t nodes_ = 0;
  bool out_of_budget_ = false;
};

/// Kuhn's augmenting-path matching: can each slot get a distinct vertex from
/// its candidate list? On success links[i] is slot i's vertex.
inline bool distinct_representatives(const std::vector<std::vector<Vertex>>& slots,
                                     std::vector<Vertex>& links) {
  const std::size_t j = slots.size();
  std::vector<int> owner_slot;  // parallel to owner_vertex
  std::vector<Vertex> owner_vertex;
  std::vector<int> chosen(j, -1);

  auto find_owner = [&](Vertex v) -> int {
    for (std::size_t i = 0; i < owner_vertex.size(); ++i) {
      if (owner_vertex[i] == v) return static_cast<int>(i);
    }
    return -1;
  };

  for (std::size_t s = 0; s < j; ++s) {
    std::vector<char> seen_slot(j, 0);
    auto augment = [&](auto&& self, std::size_t slot) -> bool {
      if (seen_slot[slot]) return false;
      seen_slot[slot] = 1;
      for (Vertex v : slots[slot]) {
        const int o = find_owner(v);
        if (o < 0) {
          owner_vertex.push_back(v);
          owner_slot.push_back(static_cast<int>(slot));
          chosen[slot] = static_cast<int>(v);
          return true;
        }
        if (self(self, static_cast<std::size_t>(owner_slot[o]))) {
          // The previous owner moved to a new vertex; take v.
          owner_slot[o] = static_cast<int>(slot);
          chosen[slot] = static_cast<int>(v);
          return true;
        }
      }
      return false;
    };
    if (!augment(augment, s)) return false;
  }
  links.assign(j, 0);
  for (std::size_t s = 0; s < j; ++s) links[s] = static_cast<Vertex>(chosen[s]);
  return true;
}

inline std::vector<Vertex> intersect(std::span<const Vertex> a, std::span<const Vertex> b) {
  std::vector<Vertex> out;
  std::set_intersection(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
  return out;
}

/// Definition test for edges in the given cyclic order.
inline bool is_cycle_in_order(const Hypergraph& h, std::span<const EdgeId> order,
                              std::vector<Vertex>& links) {
  const std::size_t j = order.size();
  std::vector<std::vector<Vertex>> slots(j);
  for (std::size_t i = 0; i < j; ++i) {
    slots[i] = intersect(h.edge(order[i]), h.edge(order[(i + 1) % j]));
    if (slots[i].empty()) return false;
  }
  return distinct_representatives(slots, links);
}

}  // namespace detail

/// Exact independence number by branch and bound: include/exclude on the
/// vertex with most live edges, forced exclusions when an edge has a single
/// undecided vertex left, and a matching-based upper bound.
inline ExactResult exact_alpha(const Hypergraph& h, std::uint64_t node_budget = 50'000'000) {
  if (h.num_vertices() == 0) return {};
  detail::AlphaSearch s(h, node_budget);
  return s.run();
}

/// Every j-cycle of h by testing all j-tuples of distinct edges against the
/// definition (2 <= j <= 4). For j = 2 the test is |A & B| >= 2. Each cycle is
/// listed once per cyclic order up to rotation and reflection.
/// Throws BudgetExceeded when more than `tuple_budget` tuples would be
/// examined.
inline std::vector<CycleWitness> enumerate_cycles_exhaustive(const Hypergraph& h, int j,
                                                             std::uint64_t tuple_budget = 50'000'000) {
  if (j < 2 || j > 4) throw Error(Errc::invalid_argument, "cycle length must be 2, 3 or 4");
  const std::size_t m = h.num_edges();
  double tuples = 1;
  for (int i = 0; i < j; ++i) tuples *= static_cast<double>(m - std::min<std::size_t>(m, i)) / (i + 1);
  if (tuples > static_cast<double>(tuple_budget)) {
    throw Error(Errc::budget_exceeded, "exhaustive cycle enumeration over budget");
  }
  std::vector<CycleWitness> out;
  auto emit = [&](std::vector<EdgeId> order, std::vector<Vertex> links) {
    CycleWitness w{std::move(order), std::move(links), {}};
    w.signature = detail::signature_of(h, w.edges);
    out.push_back(std::move(w));
  };
  std::vector<Vertex> links;
  for (EdgeId a = 0; a < m; ++a) {
    for (EdgeId b = a + 1; b < m; ++b) {
      if (j == 2) {
        auto common = detail::intersect(h.edge(a), h.edge(b));
        if (common.size() >= 2) emit({a, b}, {common[0], common[1]});
        continue;
      }
      for (EdgeId c = b + 1; c < m; ++c) {
        if (j == 3) {
          std::vector<EdgeId> order{a, b, c};
          if (detail::is_cycle_in_order(h, order, links)) emit(order, links);
          continue;
        }
        for (EdgeId d = c + 1; d < m; ++d) {
          // The three cyclic orders of four items up to rotation and reflection.
          for (auto order : {std::vector<EdgeId>{a, b, c, d}, std::vector<EdgeId>{a, b, d, c},
                             std::vector<EdgeId>{a, c, b, d}}) {
            if (detail::is_cycle_in_order(h, order, links)) emit(order, links);
          }
        }
      }
    }
  }
  return out;
}

/// Census assembled from exhaustive enumeration, in the same shape as
/// cycle_census (4-cycles containing a 3-cycle are excluded from `four`).
inline CycleCensus exhaustive_census(const Hypergraph& h, int max_len = 4,
                                     std::uint64_t tuple_budget = 50'000'000) {
  CycleCensus c;
  c.max_len = max_len;
  c.two_cycle_count = enumerate_cycles_exhaustive(h, 2, tuple_budget).size();
  if (max_len < 3) return c;
  for (const auto& w : enumerate_cycles_exhaustive(h, 3, tuple_budget)) c.three[w.signature] += 1;
  if (max_len < 4) return c;
  std::vector<Vertex> links;
  for (const auto& w : enumerate_cycles_exhaustive(h, 4, tuple_budget)) {
    ++c.four_all;
    bool has_three = false;
    for (int skip = 0; skip < 4 && !has_three; ++skip) {
      std::vector<EdgeId> tri;
      for (int i = 0; i < 4; ++i) {
        if (i != skip) tri.push_back(w.edges[i]);
      }
      has_three = detail::is_cycle_in_order(h, tri, links);
    }
    if (!has_three) c.four[w.signature] += 1;
  }
  return c;
}

}  // namespace hypind
