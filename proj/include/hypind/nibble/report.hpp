#pragma once

#include <algorithm>
#include <chrono>
#include <cstdint>
#include <string>
#include <vector>

#include <json.hpp>

#include "hypind/hypergraph.hpp"

namespace hypind {

enum class Mode { practical, paper };

inline const char* to_string(Mode m) { return m == Mode::paper ? "paper" : "practical"; }

/// One nibble round as it actually ran.
struct RoundTrace {
  double r = 0;
  std::size_t n_in = 0;
  std::size_t sampled = 0;
  std::size_t independent = 0;  // |I_r|
  std::size_t n_out = 0;        // |V_{r+1}|
  std::size_t cap_repairs = 0;  // vertices dropped for violating next-round caps
  std::size_t attempts = 0;
  bool ok = false;
};

struct SolveReport {
  std::string method;
  Mode mode = Mode::practical;
  std::uint64_t seed = 0;
  std::size_t n = 0;
  std::size_t k = 0;
  double T = 0;
  std::vector<Vertex> witness;  // ascending
  bool verified = false;
  double elapsed_ms = 0;
  nlohmann::json params = nlohmann::json::object();
  std::vector<RoundTrace> trace;

  std::size_t size() const { return witness.size(); }
};

namespace detail {

class Stopwatch {
 public:
  Stopwatch() : start_(std::chrono::steady_clock::now()) {}
  double ms() const {
    return std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start_).count();
  }

 private:
  std::chrono::steady_clock::time_point start_;
};

/// Sorts the witness and fills n, k and verified.
inline void finish(SolveReport& r, const Hypergraph& h, const Stopwatch& clock) {
  std::sort(r.witness.begin(), r.witness.end());
  r.n = h.num_vertices();
  r.k = h.max_edge_size();
  r.verified = is_independent(h, r.witness);
  r.elapsed_ms = clock.ms();
}

/// Larger first, then lexicographically smaller witness.
inline bool better(const std::vector<Vertex>& a, const std::vector<Vertex>& b) {
  if (a.size() != b.size()) return a.size() > b.size();
  return a < b;
}

}  // namespace detail

}  // namespace hypind
