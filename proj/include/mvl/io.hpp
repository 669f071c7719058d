#pragma once

#include <cstdint>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "cayley.hpp"
#include "enumerate.hpp"
#include "invariants.hpp"
#include "matroid.hpp"
#include "zlattice.hpp"

namespace mvl {

using json = nlohmann::json;
using ojson = nlohmann::ordered_json;

inline constexpr std::int64_t kMaxSafeJsonInt = (std::int64_t{1} << 53) - 1;

// Integers beyond 2^53 - 1 in magnitude are written as decimal strings.
inline ojson json_int(std::int64_t v) {
  if (v > kMaxSafeJsonInt || v < -kMaxSafeJsonInt) return ojson(std::to_string(v));
  return ojson(v);
}

inline std::int64_t int_from_json(const json& j) {
  if (j.is_number_integer()) return j.get<std::int64_t>();
  if (j.is_string()) {
    const std::string s = j.get<std::string>();
    std::size_t pos = 0;
    std::int64_t v = 0;
    try {
      v = std::stoll(s, &pos);
    } catch (const std::exception&) {
      pos = 0;
    }
    if (pos == s.size() && !s.empty()) return v;
  }
  fail(ErrorKind::ParseError, "expected an integer, got " + j.dump());
}

inline ojson set_to_json(ElementSet s) {
  ojson a = ojson::array();
  for_each_element(s, [&](int e) { a.push_back(e + 1); });
  return a;
}

inline ElementSet set_from_json(const json& j, int n) {
  if (!j.is_array()) fail(ErrorKind::ParseError, "element set must be an array");
  ElementSet s;
  for (const auto& x : j) {
    if (!x.is_number_integer()) fail(ErrorKind::ParseError, "elements must be integers");
    const int e = x.get<int>();
    if (e < 1 || e > n) fail(ErrorKind::BadParameter, "element " + std::to_string(e) + " outside [1," + std::to_string(n) + "]");
    s = s.with(e - 1);
  }
  return s;
}

inline ojson to_json(const Matroid& m) {
  ojson j;
  j["n"] = m.size();
  j["rank"] = m.rank();
  ojson b = ojson::array();
  for (auto s : m.bases()) b.push_back(set_to_json(s));
  j["bases"] = std::move(b);
  return j;
}

inline Matroid matroid_from_json(const json& j) {
  if (!j.is_object() || !j.contains("n")) fail(ErrorKind::ParseError, "matroid record needs 'n'");
  const int n = j.at("n").get<int>();
  check_cap(n, "matroid input");
  if (j.contains("bases")) {
    std::vector<ElementSet> bases;
    for (const auto& b : j.at("bases")) bases.push_back(set_from_json(b, n));
    Matroid m = from_bases(n, std::move(bases));
    if (j.contains("rank") && j.at("rank").get<int>() != m.rank())
      fail(ErrorKind::BadParameter, "declared rank differs from basis size");
    return m;
  }
  if (j.contains("cyclic_flats")) {
    std::vector<RankedFlat> z;
    for (const auto& f : j.at("cyclic_flats")) {
      if (!f.contains("set") || !f.contains("rank")) fail(ErrorKind::ParseError, "cyclic flat needs 'set' and 'rank'");
      z.push_back({set_from_json(f.at("set"), n), f.at("rank").get<int>()});
    }
    return from_cyclic_flats(n, std::move(z));
  }
  fail(ErrorKind::ParseError, "matroid record needs 'bases' or 'cyclic_flats'");
}

inline ojson to_json(const OmegaPoint& p) {
  ojson j;
  j["r"] = p.r;
  j["n"] = p.n;
  ojson pt = ojson::object();
  for (const auto& [k, v] : p.coeffs) pt[k] = json_int(v);
  j["point"] = std::move(pt);
  return j;
}

inline OmegaPoint omega_from_json(const json& j) {
  if (!j.is_object() || !j.contains("r") || !j.contains("n") || !j.contains("point"))
    fail(ErrorKind::ParseError, "Omega point needs 'r', 'n' and 'point'");
  OmegaPoint p;
  p.r = j.at("r").get<int>();
  p.n = j.at("n").get<int>();
  for (auto it = j.at("point").begin(); it != j.at("point").end(); ++it) {
    const std::string& key = it.key();
    const auto ns = std::count(key.begin(), key.end(), 'N');
    if (!is_lattice_path(key) || static_cast<int>(key.size()) != p.n || ns != p.r)
      fail(ErrorKind::BadParameter, "'" + key + "' is not a lattice path of the ambient shape");
    const std::int64_t v = int_from_json(it.value());
    if (v != 0) p.coeffs[key] = v;
  }
  return p;
}

// Row i lists the coefficients of x^i y^0, x^i y^1, ...
inline ojson to_json(const TuttePoly& t) {
  ojson rows = ojson::array();
  for (const auto& row : t.t) {
    ojson r = ojson::array();
    for (auto v : row) r.push_back(json_int(v));
    rows.push_back(std::move(r));
  }
  return rows;
}

inline ojson to_json(const GInvariant& g) {
  ojson j = ojson::object();
  for (const auto& [s, c] : g) j[s] = json_int(c);
  return j;
}

// Cayley table with entries 1..g, as in {"order": g, "table": [[...],...]}.
inline CayleyTable cayley_from_json(const json& j) {
  if (!j.is_object() || !j.contains("order") || !j.contains("table"))
    fail(ErrorKind::ParseError, "Cayley table needs 'order' and 'table'");
  CayleyTable t;
  t.order = j.at("order").get<int>();
  if (t.order < 1) fail(ErrorKind::BadParameter, "group order must be positive");
  for (const auto& row : j.at("table")) {
    std::vector<int> r;
    for (const auto& x : row) {
      const int v = x.get<int>();
      if (v < 1 || v > t.order) fail(ErrorKind::BadParameter, "Cayley entry outside [1,g]");
      r.push_back(v - 1);
    }
    t.table.push_back(std::move(r));
  }
  if (!t.is_latin()) fail(ErrorKind::BadParameter, "Cayley table is not a quasigroup");
  return t;
}

inline ojson catalog_manifest(const Catalog& c) {
  ojson j;
  j["r"] = c.r;
  j["n"] = c.n;
  j["complete"] = c.complete;
  j["count"] = c.members.size();
  return j;
}

// First line {"manifest": {...}}, then one matroid record per line.
inline void write_catalog(std::ostream& os, const Catalog& c) {
  ojson head;
  head["manifest"] = catalog_manifest(c);
  os << head.dump() << "\n";
  for (const auto& m : c.members) os << to_json(m).dump() << "\n";
}

inline Catalog read_catalog(std::istream& is) {
  Catalog c;
  c.r = c.n = -1;
  std::string line;
  bool have_manifest = false;
  std::size_t lineno = 0;
  while (std::getline(is, line)) {
    ++lineno;
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    json j;
    try {
      j = json::parse(line);
    } catch (const json::exception& e) {
      fail(ErrorKind::ParseError, "catalog line " + std::to_string(lineno) + ": " + e.what());
    }
    if (j.contains("manifest")) {
      const json& m = j.at("manifest");
      c.r = m.at("r").get<int>();
      c.n = m.at("n").get<int>();
      c.complete = m.at("complete").get<bool>();
      have_manifest = true;
      continue;
    }
    c.members.push_back(matroid_from_json(j));
  }
  if (!have_manifest && !c.members.empty()) {
    c.r = c.members.front().rank();
    c.n = c.members.front().size();
    c.complete = false;
  }
  return c;
}

inline json load_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) fail(ErrorKind::ParseError, "cannot open " + path);
  try {
    return json::parse(in);
  } catch (const json::exception& e) {
    fail(ErrorKind::ParseError, path + ": " + e.what());
  }
}

inline Catalog load_catalog_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) fail(ErrorKind::ParseError, "cannot open " + path);
  return read_catalog(in);
}

}  // namespace mvl
