#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

#include "hypind/error.hpp"
#include "hypind/gen.hpp"
#include "hypind/hypergraph.hpp"
#include "hypind/random.hpp"

namespace hypind {

/// Edges sharing one color. Edges are sorted vertex lists of equal size.
struct ColorClass {
  std::size_t size = 0;
  std::vector<std::vector<Vertex>> edges;
};

/// Edge coloring of the complete hypergraph on n vertices with edge sizes
/// 2..ell. Only the listed classes are stored; every other edge carries its
/// own fresh color. Immutable after construction.
class Coloring {
 public:
  Coloring() = default;

  /// Edges are canonicalized (sorted within, classes sorted). An edge listed
  /// more than once keeps the first class it appears in for lookups; the
  /// repetition is reported by validate_coloring.
  Coloring(std::size_t n, std::size_t ell, std::map<std::size_t, std::size_t> u, std::vector<ColorClass> classes)
      : n_(n), ell_(ell), u_(std::move(u)), classes_(std::move(classes)) {
    if (ell_ < 2) throw Error(Errc::invalid_argument, "ell must be >= 2");
    for (std::uint32_t c = 0; c < classes_.size(); ++c) {
      auto& cls = classes_[c];
      for (auto& e : cls.edges) {
        std::sort(e.begin(), e.end());
        for (Vertex v : e) {
          if (v >= n_) throw Error(Errc::out_of_range, "vertex " + std::to_string(v) + " >= n");
        }
        if (e.size() < 2) throw Error(Errc::bad_size, "colored edge of size < 2");
      }
      std::sort(cls.edges.begin(), cls.edges.end());
      if (cls.size == 0 && !cls.edges.empty()) cls.size = cls.edges.front().size();
      for (const auto& e : cls.edges) index_.try_emplace(e, c);
    }
  }

  std::size_t n() const { return n_; }
  std::size_t ell() const { return ell_; }
  const std::map<std::size_t, std::size_t>& bounds() const { return u_; }
  std::size_t bound(std::size_t s) const {
    auto it = u_.find(s);
    return it == u_.end() ? 0 : it->second;
  }
  const std::vector<ColorClass>& classes() const { return classes_; }

  /// Class id of a sorted edge; nullopt means a fresh singleton color.
  std::optional<std::uint32_t> color_of(const std::vector<Vertex>& sorted_edge) const {
    auto it = index_.find(sorted_edge);
    if (it == index_.end()) return std::nullopt;
    return it->second;
  }

  std::size_t colored_edge_count() const { return index_.size(); }

 private:
  std::size_t n_ = 0;
  std::size_t ell_ = 2;
  std::map<std::size_t, std::size_t> u_;
  std::vector<ColorClass> classes_;
  std::unordered_map<std::vector<Vertex>, std::uint32_t, detail::EdgeHash> index_;
};

struct ColoringViolation {
  /// 'a': class not a matching; 'b': sizes mixed in a class or size outside
  /// 2..ell; 'c': class larger than its bound u_s; 'd': edge listed twice.
  char condition = 'a';
  std::uint32_t color = 0;
  std::vector<Vertex> witness;
  std::string message;
};

struct ValidationReport {
  std::vector<ColoringViolation> violations;
  bool ok() const { return violations.empty(); }
};

inline ValidationReport validate_coloring(const Coloring& c) {
  ValidationReport rep;
  std::map<std::vector<Vertex>, std::uint32_t> first;
  for (std::uint32_t id = 0; id < c.classes().size(); ++id) {
    const auto& cls = c.classes()[id];
    std::map<Vertex, std::size_t> owner;
    bool sizes_ok = true;
    for (std::size_t j = 0; j < cls.edges.size(); ++j) {
      const auto& e = cls.edges[j];
      if (e.size() != cls.size || e.size() < 2 || e.size() > c.ell()) {
        if (sizes_ok) {
          rep.violations.push_back({'b', id, e, "class mixes edge sizes or uses a size outside 2..ell"});
        }
        sizes_ok = false;
      }
      for (Vertex v : e) {
        auto [it, fresh] = owner.emplace(v, j);
        if (!fresh) rep.violations.push_back({'a', id, {v}, "two edges of one class share a vertex"});
      }
      auto [it, fresh] = first.emplace(e, id);
      if (!fresh) rep.violations.push_back({'d', id, e, "edge listed in more than one place"});
    }
    const std::size_t u = c.bound(cls.size);
    if (cls.edges.size() > u) {
      rep.violations.push_back({'c', id, {}, "class of size-" + std::to_string(cls.size) + " edges has " +
                                                 std::to_string(cls.edges.size()) + " > u = " + std::to_string(u)});
    }
  }
  return rep;
}

struct MatchingColoringParams {
  std::size_t k = 2;
  std::size_t u = 1;
  /// 0 selects the largest allowed value 1/(8 e^2 k!).
  double c0 = 0;
  /// 0 derives m = ceil(c0 n^k / u).
  std::size_t m = 0;
  std::uint64_t seed = 0;
};

inline double factorial(std::size_t k) {
  double f = 1;
  for (std::size_t j = 2; j <= k; ++j) f *= static_cast<double>(j);
  return f;
}

inline double max_c0(std::size_t k) { return 1.0 / (8.0 * std::exp(2.0) * factorial(k)); }

/// Matchings M_1..M_m of u random k-edges each (k u distinct uniform
/// vertices cut into consecutive blocks). Edges of M_i not in an earlier
/// matching get color i; all other edges keep fresh colors. Throws
/// InfeasibleMatching unless 1 <= u and k u <= n and 0 < c0 <= 1/(8 e^2 k!).
inline Coloring matching_coloring(std::size_t n, const MatchingColoringParams& prm, std::size_t ell = 0) {
  const std::size_t k = prm.k;
  if (k < 2) throw Error(Errc::infeasible_matching, "k must be >= 2");
  if (prm.u < 1 || k * prm.u > n) {
    throw Error(Errc::infeasible_matching, "k * u = " + std::to_string(k * prm.u) + " exceeds n = " + std::to_string(n));
  }
  const double c0 = prm.c0 > 0 ? prm.c0 : max_c0(k);
  if (c0 > max_c0(k) * (1 + 1e-12)) throw Error(Errc::infeasible_matching, "c0 above 1/(8 e^2 k!)");
  std::size_t m = prm.m;
  if (m == 0) {
    m = static_cast<std::size_t>(std::ceil(c0 * std::pow(static_cast<double>(n), static_cast<double>(k)) /
                                           static_cast<double>(prm.u) - 1e-9));
    m = std::max<std::size_t>(1, m);
  }
  Rng rng(derive_seed(prm.seed, 0xc0105, n));
  std::unordered_map<std::vector<Vertex>, char, detail::EdgeHash> used;
  std::vector<ColorClass> classes;
  classes.reserve(m);
  for (std::size_t i = 0; i < m; ++i) {
    auto vs = rng.distinct(static_cast<std::uint32_t>(n), static_cast<std::uint32_t>(k * prm.u));
    ColorClass cls;
    cls.size = k;
    for (std::size_t b = 0; b < prm.u; ++b) {
      std::vector<Vertex> e(vs.begin() + static_cast<std::ptrdiff_t>(b * k),
                            vs.begin() + static_cast<std::ptrdiff_t>((b + 1) * k));
      std::sort(e.begin(), e.end());
      if (used.emplace(e, 1).second) cls.edges.push_back(std::move(e));
    }
    classes.push_back(std::move(cls));
  }
  std::map<std::size_t, std::size_t> bounds{{k, prm.u}};
  return Coloring(n, std::max(ell, k), bounds, std::move(classes));
}

/// A random bounded coloring for testing: for each size s in 2..ell,
/// `per_size` classes, each a random matching of 1..u_s fresh edges.
inline Coloring random_bounded_coloring(std::size_t n, std::size_t ell, const std::map<std::size_t, std::size_t>& u,
                                        std::size_t per_size, std::uint64_t seed) {
  Rng rng(derive_seed(seed, 0x7a2d));
  std::unordered_map<std::vector<Vertex>, char, detail::EdgeHash> used;
  std::vector<ColorClass> classes;
  for (std::size_t s = 2; s <= ell; ++s) {
    const std::size_t us = u.count(s) ? u.at(s) : 0;
    const std::size_t fit = std::min(us, n / s);
    if (fit == 0) continue;
    for (std::size_t c = 0; c < per_size; ++c) {
      const std::size_t size = 1 + rng.below(fit);
      auto vs = rng.distinct(static_cast<std::uint32_t>(n), static_cast<std::uint32_t>(size * s));
      ColorClass cls;
      cls.size = s;
      for (std::size_t b = 0; b < size; ++b) {
        std::vector<Vertex> e(vs.begin() + static_cast<std::ptrdiff_t>(b * s),
                              vs.begin() + static_cast<std::ptrdiff_t>((b + 1) * s));
        std::sort(e.begin(), e.end());
        if (used.emplace(e, 1).second) cls.edges.push_back(std::move(e));
      }
      if (!cls.edges.empty()) classes.push_back(std::move(cls));
    }
  }
  return Coloring(n, ell, u, std::move(classes));
}

}  // namespace hypind
