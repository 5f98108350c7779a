#pragma once
// JSON import/export for permutation groups, character tables and based
// rings.
//
// Group document: {"degree": d, "generators": [[images...], ...]} or
// {"preset": "<name>"}.  Table document: {"order", "exponent", "sizes",
// "element_orders", "chars"} with character values as strings in E(n)
// notation (plain integers also accepted).  The inverse-class pairing of an
// imported table is not serialized; it is re-derived from the conjugate
// columns, which is unique on any table passing the orthogonality audit.
// Every import path finishes with the full validate() audit, so a loaded
// table is trustworthy or the load throws DataError.

#include <knutson/chartab.hpp>
#include <knutson/group.hpp>
#include <knutson/presets.hpp>
#include <knutson/repring.hpp>

#include <json.hpp>

#include <cstdint>
#include <fstream>
#include <string>
#include <vector>

namespace knutson {

using Json = nlohmann::json;

inline Json group_to_json(const FiniteGroup& G) {
  Json j;
  j["degree"] = G.degree;
  Json gens = Json::array();
  for (const Permutation& p : G.generators) gens.push_back(p.images);
  j["generators"] = std::move(gens);
  return j;
}

inline FiniteGroup group_from_json(const Json& j) {
  if (!j.is_object()) throw DataError("group document must be a JSON object");
  if (j.contains("preset")) {
    if (!j["preset"].is_string()) throw DataError("group preset name must be a string");
    return presets::build(j["preset"].get<std::string>());
  }
  if (!j.contains("degree") || !j.contains("generators"))
    throw DataError("group document needs \"degree\" and \"generators\" (or \"preset\")");
  if (!j["degree"].is_number_integer()) throw DataError("group degree must be an integer");
  const long degree = j["degree"].get<long>();
  if (degree < 1) throw DataError("group degree must be positive");
  if (!j["generators"].is_array()) throw DataError("group generators must be an array");
  std::vector<Permutation> gens;
  for (const Json& g : j["generators"]) {
    if (!g.is_array()) throw DataError("each generator must be an array of images");
    std::vector<long> images;
    for (const Json& v : g) {
      if (!v.is_number_integer()) throw DataError("generator images must be integers");
      images.push_back(v.get<long>());
    }
    if (static_cast<long>(images.size()) != degree)
      throw DataError("generator image list length differs from the degree");
    try {
      gens.emplace_back(std::move(images));
    } catch (const StructuralError& ex) {
      throw DataError(std::string("bad generator: ") + ex.what());
    }
  }
  if (gens.empty()) throw DataError("group document has no generators");
  return enumerate(gens);
}

inline CharacterTable table_from_json(const Json& j) {
  if (!j.is_object()) throw DataError("table document must be a JSON object");
  for (const char* key : {"order", "exponent", "sizes", "element_orders", "chars"})
    if (!j.contains(key)) throw DataError(std::string("table document is missing \"") + key + "\"");
  if (!j["order"].is_number_integer() || !j["exponent"].is_number_integer())
    throw DataError("table order and exponent must be integers");

  CharacterTable T;
  T.group_order = Int(j["order"].get<long>());
  T.exponent = j["exponent"].get<long>();
  if (T.group_order < 1 || T.exponent < 1) throw DataError("table order and exponent must be positive");

  if (!j["sizes"].is_array() || !j["element_orders"].is_array() || !j["chars"].is_array())
    throw DataError("table sizes, element_orders, and chars must be arrays");
  for (const Json& v : j["sizes"]) {
    if (!v.is_number_integer() || v.get<long>() < 1) throw DataError("class sizes must be positive integers");
    T.sizes.push_back(Int(v.get<long>()));
  }
  for (const Json& v : j["element_orders"]) {
    if (!v.is_number_integer() || v.get<long>() < 1)
      throw DataError("element orders must be positive integers");
    T.orders.push_back(v.get<long>());
  }
  const long k = static_cast<long>(T.sizes.size());
  if (k < 1) throw DataError("table has no classes");
  if (static_cast<long>(T.orders.size()) != k) throw DataError("element_orders length differs from sizes length");
  if (static_cast<long>(j["chars"].size()) != k) throw DataError("chars row count differs from the class count");

  for (const Json& row : j["chars"]) {
    if (!row.is_array() || static_cast<long>(row.size()) != k)
      throw DataError("each chars row must be an array of one value per class");
    std::vector<Cyclotomic> vals;
    vals.reserve(static_cast<std::size_t>(k));
    for (const Json& v : row) {
      if (v.is_number_integer())
        vals.push_back(Cyclotomic::from_int(T.exponent, Int(v.get<long>())));
      else if (v.is_string())
        vals.push_back(Cyclotomic::parse(v.get<std::string>(), T.exponent));
      else
        throw DataError("character values must be integers or strings");
    }
    T.chars.push_back(std::move(vals));
  }

  for (long i = 0; i < k; ++i) {
    const auto d = T.chars[static_cast<std::size_t>(i)][0].as_integer();
    if (!d || *d < 1) throw DataError("row " + std::to_string(i) + " does not start with a positive integer degree");
    T.degrees.push_back(*d);
  }

  // Inverse classes from conjugate columns; uniqueness follows from column
  // orthogonality, so ambiguity here means the table is inconsistent anyway.
  T.inverse_class.assign(static_cast<std::size_t>(k), -1);
  for (long c = 0; c < k; ++c) {
    long found = -1;
    for (long c2 = 0; c2 < k; ++c2) {
      bool all = true;
      for (long i = 0; i < k; ++i)
        if (!(T.chars[static_cast<std::size_t>(i)][static_cast<std::size_t>(c2)] ==
              T.chars[static_cast<std::size_t>(i)][static_cast<std::size_t>(c)].conj())) {
          all = false;
          break;
        }
      if (all) {
        if (found >= 0) throw DataError("class " + std::to_string(c) + " has two conjugate column matches");
        found = c2;
      }
    }
    if (found < 0) throw DataError("class " + std::to_string(c) + " has no conjugate column match");
    T.inverse_class[static_cast<std::size_t>(c)] = found;
  }

  T.validate();
  return T;
}

inline Json table_to_json(const CharacterTable& T) {
  Json j;
  j["order"] = to_long(T.group_order);
  j["exponent"] = T.exponent;
  Json sizes = Json::array();
  for (const Int& s : T.sizes) sizes.push_back(to_long(s));
  j["sizes"] = std::move(sizes);
  j["element_orders"] = T.orders;
  Json chars = Json::array();
  for (const auto& row : T.chars) {
    Json r = Json::array();
    for (const Cyclotomic& v : row) r.push_back(v.to_string());
    chars.push_back(std::move(r));
  }
  j["chars"] = std::move(chars);
  return j;
}

inline Json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw DataError("cannot open file: " + path);
  try {
    Json j;
    in >> j;
    return j;
  } catch (const std::exception& ex) {
    throw DataError("JSON parse error in " + path + ": " + ex.what());
  }
}

inline void write_json_file(const std::string& path, const Json& j) {
  std::ofstream out(path);
  if (!out) throw DataError("cannot open file for writing: " + path);
  out << j.dump(2) << '\n';
}

inline CharacterTable table_from_file(const std::string& path) { return table_from_json(read_json_file(path)); }

inline FiniteGroup group_from_file(const std::string& path) { return group_from_json(read_json_file(path)); }

// ---------------------------------------------------------------------------
// Based rings: { "dims": [...], "unit": u, "dual": [...],
//                "leftmul": { "<i>": [[row], ...], ... } }.
// The leftmul object is keyed by basis index; absent keys mean the products
// of that basis element are not stored.  Labels are not serialized; loading
// regenerates b0..b{k-1}.
// ---------------------------------------------------------------------------

inline Json ring_to_json(const BasedRing& R) {
  const auto to_int64 = [](const Int& v) {
    if (!v.fits_slong_p()) throw DataError("ring entry too large to serialize: " + v.get_str());
    return static_cast<std::int64_t>(v.get_si());
  };
  Json j;
  j["dims"] = Json::array();
  for (const Int& d : R.dims) j["dims"].push_back(to_int64(d));
  j["unit"] = R.unit;
  j["dual"] = R.dual;
  Json lm = Json::object();
  for (long i = 0; i < R.size(); ++i) {
    if (!R.leftmul[static_cast<std::size_t>(i)]) continue;
    const IntMatrix& M = *R.leftmul[static_cast<std::size_t>(i)];
    Json rows = Json::array();
    for (long r = 0; r < M.rows; ++r) {
      Json row = Json::array();
      for (long c = 0; c < M.cols; ++c) row.push_back(to_int64(M.at(r, c)));
      rows.push_back(std::move(row));
    }
    lm[std::to_string(i)] = std::move(rows);
  }
  j["leftmul"] = std::move(lm);
  return j;
}

inline BasedRing ring_from_json(const Json& j) {
  for (const char* field : {"dims", "unit", "dual", "leftmul"})
    if (!j.contains(field)) throw DataError(std::string("ring JSON lacks field '") + field + "'");
  if (!j["dims"].is_array() || !j["dual"].is_array() || !j["leftmul"].is_object())
    throw DataError("ring JSON field has the wrong shape");
  BasedRing R;
  for (const auto& d : j["dims"]) R.dims.emplace_back(d.get<long>());
  const long k = R.size();
  if (k == 0) throw DataError("ring JSON has an empty basis");
  R.unit = j["unit"].get<long>();
  for (const auto& d : j["dual"]) R.dual.push_back(d.get<long>());
  for (long i = 0; i < k; ++i) R.labels.push_back("b" + std::to_string(i));
  R.leftmul.assign(static_cast<std::size_t>(k), std::nullopt);
  for (const auto& [key, rows] : j["leftmul"].items()) {
    long i = -1;
    try {
      i = std::stol(key);
    } catch (const std::exception&) {
      throw DataError("ring JSON leftmul key is not an index: " + key);
    }
    if (i < 0 || i >= k) throw DataError("ring JSON leftmul key out of range: " + key);
    if (!rows.is_array() || static_cast<long>(rows.size()) != k)
      throw DataError("ring JSON leftmul matrix " + key + " has the wrong row count");
    IntMatrix M(k, k);
    for (long r = 0; r < k; ++r) {
      const auto& row = rows[static_cast<std::size_t>(r)];
      if (!row.is_array() || static_cast<long>(row.size()) != k)
        throw DataError("ring JSON leftmul matrix " + key + " has a malformed row");
      for (long c = 0; c < k; ++c) M.at(r, c) = Int(row[static_cast<std::size_t>(c)].get<long>());
    }
    R.leftmul[static_cast<std::size_t>(i)] = std::move(M);
  }
  R.total_dim = 0;
  for (const Int& d : R.dims) R.total_dim += d * d;
  if (auto p = ring_problem(R)) throw DataError("ring JSON is inconsistent: " + *p);
  return R;
}

inline BasedRing ring_from_file(const std::string& path) { return ring_from_json(read_json_file(path)); }

}  // namespace knutson
