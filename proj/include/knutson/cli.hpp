#pragma once
// Command-line surface: input resolution (named presets, compound products,
// JSON files), subcommand dispatch, and JSON / pretty rendering.
//
// dispatch() is the whole tool behind the argv parser: it takes a parsed
// RunConfig, writes the report to an output stream (or --out file) and
// returns the process exit status, so the surface is drivable from tests
// without spawning processes.  Exit codes: 0 ok, 1 usage, 2 data error,
// 3 capacity, 4 internal inconsistency (theorem violation = bug).

#include <knutson/chartab.hpp>
#include <knutson/common.hpp>
#include <knutson/group.hpp>
#include <knutson/io.hpp>
#include <knutson/knutson_index.hpp>
#include <knutson/minimality.hpp>
#include <knutson/presets.hpp>
#include <knutson/repring.hpp>

#include <algorithm>
#include <fstream>
#include <iomanip>
#include <optional>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

namespace knutson::cli {

inline constexpr int EXIT_OK = 0;
inline constexpr int EXIT_USAGE = 1;
inline constexpr int EXIT_DATA = 2;
inline constexpr int EXIT_CAPACITY = 3;
inline constexpr int EXIT_INCONSISTENT = 4;

// Config problems the argv parser cannot catch (wrong source combination,
// missing selector); reported as usage errors, not data errors.
struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct RunConfig {
  std::string command;  // table | index | invertible | sylow | minimal |
                        // savitskii-report | ring-index | survey
  std::string group;    // preset name, compound "A*B", or path to group JSON
  std::string ring;     // Hopf-module descriptor or path to ring JSON
  std::string table;    // path to table JSON
  std::optional<long> chr;
  std::optional<long> basis;
  bool oracle = false;
  bool sparse = false;
  std::string format = "json";  // json | pretty
  std::string out;              // output file; empty writes to the stream
  std::vector<std::string> survey_groups;
};

// The desk-scale survey list: the eight semidirect-product counter-examples
// plus the two simple groups that bracket Savitskii's criterion.
inline const std::vector<std::string>& survey_default() {
  static const std::vector<std::string> groups = {
      "SL2_5", "D12_S3", "C3_D24", "C32_2Q8", "C15_D8",
      "C3_D40", "C5_D24", "C15_Q8", "PSL2_11", "PSL2_7",
  };
  return groups;
}

namespace detail {

inline bool looks_like_path(const std::string& spec) {
  if (spec.find('/') != std::string::npos) return true;
  return spec.size() > 5 && spec.compare(spec.size() - 5, 5, ".json") == 0;
}

// "A*B*C" builds the direct product of the named presets; a lone name is a
// preset or a path to a group document.
inline FiniteGroup group_from_spec(const std::string& spec) {
  if (spec.empty()) throw DataError("empty group spec");
  if (!looks_like_path(spec) && spec.find('*') != std::string::npos) {
    std::optional<FiniteGroup> acc;
    std::size_t start = 0;
    while (start <= spec.size()) {
      const std::size_t stop = std::min(spec.find('*', start), spec.size());
      const std::string part = spec.substr(start, stop - start);
      if (part.empty()) throw DataError("empty factor in group spec '" + spec + "'");
      FiniteGroup factor = presets::build(part);
      acc = acc ? direct_product(*acc, factor) : std::move(factor);
      start = stop + 1;
    }
    return *acc;
  }
  if (looks_like_path(spec)) return group_from_file(spec);
  return presets::build(spec);
}

inline BasedRing ring_from_spec(const std::string& spec) {
  if (spec.empty()) throw DataError("empty ring spec");
  if (looks_like_path(spec)) return ring_from_file(spec);
  return preset_hopf(spec);
}

// ---------------------------------------------------------------------------
// Rendering helpers.

inline long small(const Int& v) { return to_long(v); }

inline Json coeff_array(const std::vector<Int>& coeffs) {
  Json a = Json::array();
  for (const Int& c : coeffs) a.push_back(small(c));
  return a;
}

// Class labels in the printed-table style: element order, with letter
// suffixes only where several classes share an order (1, 2A, 2B, 3, 4, ...).
inline std::vector<std::string> class_labels(const CharacterTable& T) {
  const long k = T.num_classes();
  auto count_of = [&](long order) {
    long n = 0;
    for (long c = 0; c < k; ++c)
      if (T.orders[static_cast<std::size_t>(c)] == order) ++n;
    return n;
  };
  std::vector<std::string> labels;
  for (long c = 0; c < k; ++c) {
    const long order = T.orders[static_cast<std::size_t>(c)];
    std::string label = std::to_string(order);
    if (count_of(order) > 1) {
      long rank = 0;
      for (long b = 0; b < c; ++b)
        if (T.orders[static_cast<std::size_t>(b)] == order) ++rank;
      while (rank >= 26) {
        label += 'Z';
        rank -= 26;
      }
      label += static_cast<char>('A' + rank);
    }
    labels.push_back(std::move(label));
  }
  return labels;
}

inline void print_aligned(std::ostream& os, const std::vector<std::vector<std::string>>& rows) {
  std::vector<std::size_t> width;
  for (const auto& row : rows)
    for (std::size_t j = 0; j < row.size(); ++j) {
      if (width.size() <= j) width.resize(j + 1, 0);
      width[j] = std::max(width[j], row[j].size());
    }
  for (const auto& row : rows) {
    std::string line;
    for (std::size_t j = 0; j < row.size(); ++j) {
      if (j) line += "  ";
      line += std::string(width[j] - row[j].size(), ' ') + row[j];
    }
    while (!line.empty() && line.back() == ' ') line.pop_back();
    os << line << "\n";
  }
}

// ---------------------------------------------------------------------------
// Input resolution per command.

inline int count_sources(const RunConfig& cfg) {
  return (cfg.group.empty() ? 0 : 1) + (cfg.ring.empty() ? 0 : 1) + (cfg.table.empty() ? 0 : 1);
}

inline CharacterTable resolve_table(const RunConfig& cfg) {
  if (!cfg.ring.empty())
    throw UsageError("subcommand '" + cfg.command + "' works on character tables; pass --group or --table, not --ring");
  if (count_sources(cfg) != 1) throw UsageError("exactly one of --group or --table is required");
  if (!cfg.table.empty()) return table_from_file(cfg.table);
  return dixon_table(group_from_spec(cfg.group));
}

inline long checked_char(const CharacterTable& T, long i) {
  if (i < 0 || i >= T.num_classes())
    throw DomainError("character index " + std::to_string(i) + " out of range [0, " + std::to_string(T.num_classes()) + ")");
  return i;
}

// ---------------------------------------------------------------------------
// Subcommands.  Each returns the JSON report; pretty rendering reuses it.

inline Json index_row(const CharacterTable& T, long i, bool oracle, bool sparse) {
  IndexReport rep = knutson_index(T, i);
  if (sparse) rep.inverse = sparsify_inverse(tensor_matrix(T, i), rep.inverse);
  Json row;
  row["char"] = i;
  row["degree"] = small(T.degrees[static_cast<std::size_t>(i)]);
  row["index"] = small(rep.index);
  row["inverse"] = coeff_array(rep.inverse.coeffs);
  row["verified"] = rep.verified;
  if (oracle) {
    if (!index_minimality_certified(tensor_matrix(T, i), T.degrees, rep.index))
      throw InternalInconsistencyError("oracle refutes minimality of the reported index for character " + std::to_string(i));
    row["oracle"] = true;
  }
  return row;
}

inline Json cmd_index(const RunConfig& cfg) {
  const CharacterTable T = resolve_table(cfg);
  if (cfg.chr) return index_row(T, checked_char(T, *cfg.chr), cfg.oracle, cfg.sparse);
  Json rows = Json::array();
  for (long i = 0; i < T.num_classes(); ++i) rows.push_back(index_row(T, i, cfg.oracle, cfg.sparse));
  return rows;
}

inline Json cmd_table(const RunConfig& cfg) { return table_to_json(resolve_table(cfg)); }

inline Json cmd_invertible(const RunConfig& cfg) {
  const CharacterTable T = resolve_table(cfg);
  const KnutsonTypeReport rep = is_knutson_type(T);
  const std::vector<Int> profile = index_profile(T);
  Json rows = Json::array();
  for (long i = 0; i < T.num_classes(); ++i) {
    Json row;
    row["char"] = i;
    row["degree"] = small(T.degrees[static_cast<std::size_t>(i)]);
    row["index"] = small(profile[static_cast<std::size_t>(i)]);
    row["invertible"] = profile[static_cast<std::size_t>(i)] == 1;
    rows.push_back(std::move(row));
  }
  Json j;
  j["knutson_type"] = rep.knutson_type;
  j["failing"] = rep.failing;
  j["rows"] = std::move(rows);
  return j;
}

inline Json cmd_sylow(const RunConfig& cfg) {
  if (!cfg.ring.empty())
    throw UsageError("the Sylow pipeline needs a group: abstract based rings carry no subgroup or class data (pass --group)");
  if (!cfg.chr) throw UsageError("sylow requires --char");
  const CharacterTable T = resolve_table(cfg);
  const long i = checked_char(T, *cfg.chr);
  const InducedInverse inv = savitskii_induced_inverse(T, i);
  const Int direct = knutson_index(T, i).index;
  const Int via = index_via_sylow(T, i);
  if (via != direct || inv.index != direct)
    throw InternalInconsistencyError("Sylow product disagrees with the direct index for character " + std::to_string(i));
  Json sites = Json::array();
  for (const SavitskiiRecord& r : inv.records) {
    Json site;
    site["p"] = r.p;
    site["k"] = r.k;
    site["l"] = r.l;
    site["u"] = small(r.u);
    site["v"] = small(r.v);
    site["restriction"] = coeff_array(r.restriction.coeffs);
    sites.push_back(std::move(site));
  }
  Json j;
  j["char"] = i;
  j["degree"] = small(T.degrees[static_cast<std::size_t>(i)]);
  j["index"] = small(inv.index);
  j["inverse"] = coeff_array(inv.inverse.coeffs);
  j["verified"] = true;
  j["sites"] = std::move(sites);
  return j;
}

inline Json minimal_row(const CharacterTable& T, long i) {
  const MinimalityVerdict v = is_minimal(T, i);
  Json row;
  row["char"] = i;
  row["degree"] = small(T.degrees[static_cast<std::size_t>(i)]);
  row["minimal"] = v.minimal;
  if (v.certificate) row["certificate"] = coeff_array(v.certificate->coeffs);
  return row;
}

inline Json cmd_minimal(const RunConfig& cfg) {
  const CharacterTable T = resolve_table(cfg);
  if (cfg.chr) return minimal_row(T, checked_char(T, *cfg.chr));
  Json rows = Json::array();
  for (long i = 0; i < T.num_classes(); ++i) rows.push_back(minimal_row(T, i));
  return rows;
}

inline Json cmd_savitskii_report(const RunConfig& cfg) {
  const CharacterTable T = resolve_table(cfg);
  const ConjectureReport rep = savitskii_conjecture_report(T);
  Json rows = Json::array();
  for (long i = 0; i < static_cast<long>(rep.rows.size()); ++i) {
    const ConjectureRow& r = rep.rows[static_cast<std::size_t>(i)];
    Json row;
    row["char"] = i;
    row["degree"] = small(T.degrees[static_cast<std::size_t>(i)]);
    row["index"] = small(r.index);
    row["invertible"] = r.regular_invertible;
    row["minimal"] = r.verdict.minimal;
    if (r.verdict.certificate) row["certificate"] = coeff_array(r.verdict.certificate->coeffs);
    rows.push_back(std::move(row));
  }
  Json j;
  j["rows"] = std::move(rows);
  j["discrepancies"] = rep.discrepancies;
  return j;
}

inline Json cmd_ring_index(const RunConfig& cfg) {
  if (cfg.ring.empty() || !cfg.group.empty() || !cfg.table.empty())
    throw UsageError("ring-index takes exactly --ring (a descriptor or a ring JSON path)");
  if (!cfg.basis) throw UsageError("ring-index requires --basis");
  const BasedRing R = ring_from_spec(cfg.ring);
  const long i = *cfg.basis;
  if (i < 0 || i >= R.size())
    throw DomainError("basis index " + std::to_string(i) + " out of range [0, " + std::to_string(R.size()) + ")");
  Json j;
  j["basis"] = i;
  j["dim"] = small(R.dims[static_cast<std::size_t>(i)]);
  const std::optional<IndexReport> rep = try_knutson_index(R, i);
  if (!rep) {
    // Legal for abstract based rings: no multiple of the regular element is
    // reachable, so the index is infinite.
    j["index"] = "infinite";
    return j;
  }
  j["index"] = small(rep->index);
  j["inverse"] = coeff_array(rep->inverse.coeffs);
  j["verified"] = rep->verified;
  return j;
}

inline Json cmd_survey(const RunConfig& cfg) {
  if (!cfg.ring.empty() || !cfg.table.empty()) throw UsageError("survey takes presets via repeated --group only");
  std::vector<std::string> groups = cfg.survey_groups;
  if (!groups.empty() && !cfg.group.empty()) throw UsageError("survey takes presets via repeated --group only");
  if (groups.empty() && !cfg.group.empty()) groups.push_back(cfg.group);
  if (groups.empty()) groups = survey_default();
  Json rows = Json::array();
  for (const std::string& name : groups) {
    const CharacterTable T = dixon_table(group_from_spec(name));
    const std::vector<Int> profile = index_profile(T);
    const ConjectureReport rep = savitskii_conjecture_report(T);
    Json failing = Json::array();
    for (long i = 0; i < T.num_classes(); ++i)
      if (profile[static_cast<std::size_t>(i)] != 1) {
        Json f;
        f["char"] = i;
        f["degree"] = small(T.degrees[static_cast<std::size_t>(i)]);
        f["index"] = small(profile[static_cast<std::size_t>(i)]);
        failing.push_back(std::move(f));
      }
    Json row;
    row["group"] = name;
    row["order"] = small(T.group_order);
    row["classes"] = T.num_classes();
    row["knutson_type"] = failing.empty();
    row["failing"] = std::move(failing);
    row["discrepancies"] = rep.discrepancies;
    rows.push_back(std::move(row));
  }
  return rows;
}

// ---------------------------------------------------------------------------
// Pretty rendering per command (reuses the JSON report).

// Printed-table layout: a header line with the group invariants, then class
// labels, class sizes and one row per irreducible.
inline void render_table_pretty(std::ostream& os, const CharacterTable& T) {
  os << "order " << T.group_order.get_str() << "  exponent " << T.exponent << "  classes " << T.num_classes()
     << "\n";
  std::vector<std::vector<std::string>> grid;
  std::vector<std::string> head{"class"};
  for (std::string& l : class_labels(T)) head.push_back(std::move(l));
  grid.push_back(std::move(head));
  std::vector<std::string> size_row{"size"};
  for (const Int& s : T.sizes) size_row.push_back(s.get_str());
  grid.push_back(std::move(size_row));
  for (long i = 0; i < T.num_classes(); ++i) {
    std::vector<std::string> row{"chi" + std::to_string(i + 1)};
    for (const Cyclotomic& v : T.chars[static_cast<std::size_t>(i)]) row.push_back(v.to_string());
    grid.push_back(std::move(row));
  }
  print_aligned(os, grid);
}

inline void render_pretty(std::ostream& os, const RunConfig& cfg, const Json& j, const CharacterTable* T) {
  const std::string& c = cfg.command;
  if (c == "table") {
    render_table_pretty(os, *T);
    return;
  }
  if (c == "index" || c == "minimal") {
    const Json rows = j.is_array() ? j : Json::array({j});
    std::vector<std::vector<std::string>> grid;
    if (c == "index")
      grid.push_back({"char", "degree", "index", "verified"});
    else
      grid.push_back({"char", "degree", "minimal", "certificate"});
    for (const Json& row : rows) {
      if (c == "index") {
        grid.push_back({std::to_string(row["char"].get<long>()), std::to_string(row["degree"].get<long>()),
                        std::to_string(row["index"].get<long>()), row["verified"].get<bool>() ? "yes" : "no"});
      } else {
        std::string cert = "-";
        if (row.contains("certificate")) cert = row["certificate"].dump();
        grid.push_back({std::to_string(row["char"].get<long>()), std::to_string(row["degree"].get<long>()),
                        row["minimal"].get<bool>() ? "yes" : "no", cert});
      }
    }
    print_aligned(os, grid);
    return;
  }
  if (c == "invertible" || c == "savitskii-report") {
    std::vector<std::vector<std::string>> grid;
    if (c == "invertible")
      grid.push_back({"char", "degree", "index", "invertible"});
    else
      grid.push_back({"char", "degree", "index", "invertible", "minimal", "flag"});
    for (const Json& row : j["rows"]) {
      std::vector<std::string> line{std::to_string(row["char"].get<long>()), std::to_string(row["degree"].get<long>()),
                                    std::to_string(row["index"].get<long>()),
                                    row["invertible"].get<bool>() ? "yes" : "no"};
      if (c == "savitskii-report") {
        line.push_back(row["minimal"].get<bool>() ? "yes" : "no");
        line.push_back(row["invertible"].get<bool>() != row["minimal"].get<bool>() ? "<-" : "");
      }
      grid.push_back(std::move(line));
    }
    print_aligned(os, grid);
    if (c == "invertible")
      os << (j["knutson_type"].get<bool>() ? "Knutson type\n" : "not Knutson type\n");
    else
      os << "discrepancies: " << j["discrepancies"].dump() << "\n";
    return;
  }
  if (c == "sylow") {
    os << "char " << j["char"].get<long>() << "  degree " << j["degree"].get<long>() << "  index "
       << j["index"].get<long>() << "\n";
    std::vector<std::vector<std::string>> grid{{"p", "k", "l", "u", "v", "restriction"}};
    for (const Json& site : j["sites"])
      grid.push_back({std::to_string(site["p"].get<long>()), std::to_string(site["k"].get<long>()),
                      std::to_string(site["l"].get<long>()), std::to_string(site["u"].get<long>()),
                      std::to_string(site["v"].get<long>()), site["restriction"].dump()});
    print_aligned(os, grid);
    os << "inverse " << j["inverse"].dump() << "\n";
    return;
  }
  if (c == "ring-index") {
    os << "basis " << j["basis"].get<long>() << "  dim " << j["dim"].get<long>() << "  index ";
    if (j["index"].is_string())
      os << j["index"].get<std::string>() << "\n";
    else
      os << j["index"].get<long>() << "\n";
    return;
  }
  if (c == "survey") {
    std::vector<std::vector<std::string>> grid{{"group", "order", "classes", "type", "failing", "discrepancies"}};
    for (const Json& row : j) {
      std::string failing = "-";
      if (!row["failing"].empty()) {
        failing.clear();
        for (const Json& f : row["failing"]) {
          if (!failing.empty()) failing += " ";
          failing += std::to_string(f["degree"].get<long>()) + "->" + std::to_string(f["index"].get<long>());
        }
      }
      grid.push_back({row["group"].get<std::string>(), std::to_string(row["order"].get<long>()),
                      std::to_string(row["classes"].get<long>()), row["knutson_type"].get<bool>() ? "yes" : "no",
                      failing, row["discrepancies"].dump()});
    }
    print_aligned(os, grid);
    return;
  }
  os << j.dump(2) << "\n";
}

}  // namespace detail

// ---------------------------------------------------------------------------
// Dispatch.

inline int dispatch(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
  using namespace detail;
  try {
    Json report;
    std::optional<CharacterTable> table_for_pretty;
    if (cfg.command == "table") {
      CharacterTable T = resolve_table(cfg);
      report = table_to_json(T);
      table_for_pretty = std::move(T);
    } else if (cfg.command == "index") {
      report = cmd_index(cfg);
    } else if (cfg.command == "invertible") {
      report = cmd_invertible(cfg);
    } else if (cfg.command == "sylow") {
      report = cmd_sylow(cfg);
    } else if (cfg.command == "minimal") {
      report = cmd_minimal(cfg);
    } else if (cfg.command == "savitskii-report") {
      report = cmd_savitskii_report(cfg);
    } else if (cfg.command == "ring-index") {
      report = cmd_ring_index(cfg);
    } else if (cfg.command == "survey") {
      report = cmd_survey(cfg);
    } else {
      throw UsageError("unknown subcommand '" + cfg.command + "'");
    }

    if (cfg.format != "json" && cfg.format != "pretty") throw UsageError("--format must be json or pretty");
    std::ostringstream rendered;
    if (cfg.format == "json")
      rendered << report.dump(2) << "\n";
    else
      render_pretty(rendered, cfg, report, table_for_pretty ? &*table_for_pretty : nullptr);

    if (!cfg.out.empty()) {
      std::ofstream file(cfg.out);
      if (!file) throw DataError("cannot open output file: " + cfg.out);
      file << rendered.str();
    } else {
      out << rendered.str();
    }
    return EXIT_OK;
  } catch (const UsageError& ex) {
    err << "usage error: " << ex.what() << "\n";
    return EXIT_USAGE;
  } catch (const InternalInconsistencyError& ex) {
    err << ex.what() << "\n";
    return EXIT_INCONSISTENT;
  } catch (const CapacityError& ex) {
    err << ex.what() << "\n";
    return EXIT_CAPACITY;
  } catch (const std::exception& ex) {
    err << ex.what() << "\n";
    return EXIT_DATA;
  }
}

}  // namespace knutson::cli
