#pragma once

#include <fstream>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "hypind/antiramsey.hpp"
#include "hypind/cycles.hpp"
#include "hypind/error.hpp"
#include "hypind/nibble/report.hpp"

namespace hypind {

inline constexpr int kSchemaVersion = 1;

using nlohmann::json;

/// Report JSON. elapsed_ms is written as 0 unless `timing` is set, so that
/// repeated runs produce identical bytes.
inline json to_json(const SolveReport& r, bool timing = false) {
  json j;
  j["schema_version"] = kSchemaVersion;
  j["method"] = r.method;
  j["mode"] = to_string(r.mode);
  j["seed"] = r.seed;
  j["n"] = r.n;
  j["k"] = r.k;
  j["T"] = r.T;
  j["size"] = r.size();
  j["witness"] = r.witness;
  j["verified"] = r.verified;
  j["elapsed_ms"] = timing ? r.elapsed_ms : 0.0;
  json params = r.params;
  if (!r.trace.empty()) {
    json tr = json::array();
    for (const auto& t : r.trace) {
      tr.push_back({{"r", t.r},
                    {"n_in", t.n_in},
                    {"sampled", t.sampled},
                    {"independent", t.independent},
                    {"n_out", t.n_out},
                    {"cap_repairs", t.cap_repairs},
                    {"attempts", t.attempts},
                    {"ok", t.ok}});
    }
    params["trace"] = std::move(tr);
  }
  j["params"] = std::move(params);
  return j;
}

inline json to_json(const CycleCensus& c) {
  json j;
  j["max_len"] = c.max_len;
  j["two"] = c.two_cycle_count;
  auto sig_map = [](const std::map<Signature, std::uint64_t>& m) {
    json a = json::array();
    for (const auto& [sig, cnt] : m) a.push_back({{"signature", sig}, {"count", cnt}});
    return a;
  };
  j["three"] = sig_map(c.three);
  j["four"] = sig_map(c.four);
  j["three_total"] = c.three_total();
  j["four_total"] = c.four_total();
  j["four_all"] = c.four_all;
  j["linear"] = c.linear();
  j["uncrowded"] = c.uncrowded();
  j["truncated"] = c.truncated;
  return j;
}

inline json to_json(const Coloring& c) {
  json j;
  j["n"] = c.n();
  j["ell"] = c.ell();
  json u = json::object();
  for (auto [s, b] : c.bounds()) u[std::to_string(s)] = b;
  j["u"] = std::move(u);
  json classes = json::array();
  for (const auto& cls : c.classes()) classes.push_back(cls.edges);
  j["classes"] = std::move(classes);
  return j;
}

/// Parses a coloring; malformed documents raise Error(Parse).
inline Coloring coloring_from_json(const json& j) {
  try {
    const auto n = j.at("n").get<std::size_t>();
    const auto ell = j.at("ell").get<std::size_t>();
    std::map<std::size_t, std::size_t> u;
    for (const auto& [key, val] : j.at("u").items()) u[std::stoul(key)] = val.get<std::size_t>();
    std::vector<ColorClass> classes;
    for (const auto& cj : j.at("classes")) {
      ColorClass cls;
      cls.edges = cj.get<std::vector<std::vector<Vertex>>>();
      if (!cls.edges.empty()) cls.size = cls.edges.front().size();
      classes.push_back(std::move(cls));
    }
    return Coloring(n, ell, std::move(u), std::move(classes));
  } catch (const json::exception& e) {
    throw Error(Errc::parse, std::string("coloring JSON: ") + e.what());
  } catch (const std::invalid_argument& e) {
    throw Error(Errc::parse, std::string("coloring JSON: bad size key: ") + e.what());
  }
}

inline json parse_json_text(const std::string& text, const std::string& what) {
  try {
    return json::parse(text);
  } catch (const json::exception& e) {
    throw Error(Errc::parse, what + ": " + e.what());
  }
}

inline std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(Errc::parse, "cannot open '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

inline void write_file(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error(Errc::invalid_argument, "cannot write '" + path + "'");
  out << text;
}

inline Coloring load_coloring(const std::string& path) {
  return coloring_from_json(parse_json_text(read_file(path), path));
}

/// A vertex set file: either a JSON array, a report object with a
/// "witness" field, or whitespace-separated integers.
inline std::vector<Vertex> parse_vertex_set(const std::string& text) {
  auto first = text.find_first_not_of(" \t\r\n");
  if (first != std::string::npos && (text[first] == '[' || text[first] == '{')) {
    json j = parse_json_text(text, "vertex set");
    try {
      if (j.is_object()) return j.at("witness").get<std::vector<Vertex>>();
      return j.get<std::vector<Vertex>>();
    } catch (const json::exception& e) {
      throw Error(Errc::parse, std::string("vertex set: ") + e.what());
    }
  }
  std::vector<Vertex> out;
  std::istringstream ss(text);
  std::string tok;
  while (ss >> tok) {
    std::size_t pos = 0;
    unsigned long v = 0;
    try {
      v = std::stoul(tok, &pos);
    } catch (const std::exception&) {
      pos = 0;
    }
    if (pos != tok.size() || tok[0] == '-') throw Error(Errc::parse, "vertex set: bad token '" + tok + "'");
    out.push_back(static_cast<Vertex>(v));
  }
  return out;
}

}  // namespace hypind
