#pragma once
// Savitskii's pre-order on virtual characters of strictly positive degree,
// vanishing lattices, the minimality decision procedure with verified
// certificates, and the per-character report comparing regular invertibility
// against minimality.

#include <optional>
#include <set>
#include <utility>
#include <vector>

#include <knutson/chartab.hpp>
#include <knutson/common.hpp>
#include <knutson/knutson_index.hpp>
#include <knutson/zlattice.hpp>

namespace knutson {

// ---------------------------------------------------------------------------
// Virtual character values.
// ---------------------------------------------------------------------------

// Values of an integer combination of the table's rows on every class.
inline std::vector<Cyclotomic> virtual_values(const CharacterTable& T, const std::vector<Int>& coeffs) {
  const long k = T.num_classes();
  if (static_cast<long>(coeffs.size()) != k)
    throw StructuralError("virtual character length differs from the class count");
  std::vector<Cyclotomic> vals(static_cast<std::size_t>(k), Cyclotomic::from_int(T.exponent, 0));
  for (long i = 0; i < k; ++i) {
    const Int& a = coeffs[static_cast<std::size_t>(i)];
    if (a == 0) continue;
    for (long c = 0; c < k; ++c)
      vals[static_cast<std::size_t>(c)] =
          vals[static_cast<std::size_t>(c)] + a * T.chars[static_cast<std::size_t>(i)][static_cast<std::size_t>(c)];
  }
  return vals;
}

inline Int virtual_degree(const CharacterTable& T, const std::vector<Int>& coeffs) {
  const long k = T.num_classes();
  if (static_cast<long>(coeffs.size()) != k)
    throw StructuralError("virtual character length differs from the class count");
  Int d = 0;
  for (long i = 0; i < k; ++i) d += coeffs[static_cast<std::size_t>(i)] * T.degrees[static_cast<std::size_t>(i)];
  return d;
}

// Index of the class of the identity element (the unique class of element
// order one).
inline long identity_class(const CharacterTable& T) {
  for (long c = 0; c < T.num_classes(); ++c)
    if (T.orders[static_cast<std::size_t>(c)] == 1) return c;
  throw StructuralError("character table has no identity class");
}

// ---------------------------------------------------------------------------
// Zero sets and the pre-order.
// ---------------------------------------------------------------------------

// Classes where a character vanishes.  For a character of positive degree the
// identity class is never a member: the value there is the degree itself.
struct ZeroSet {
  std::set<long> classes;
};

inline ZeroSet zero_set(const CharacterTable& T, const std::vector<Int>& coeffs) {
  ZeroSet Z;
  const std::vector<Cyclotomic> vals = virtual_values(T, coeffs);
  for (long c = 0; c < T.num_classes(); ++c)
    if (vals[static_cast<std::size_t>(c)].is_zero()) Z.classes.insert(c);
  return Z;
}

// phi is below chi when its degree is no larger and it vanishes everywhere
// chi vanishes.  Both arguments must have strictly positive degree: the
// pre-order is defined on virtual characters of positive degree only.
inline bool pre_order_leq(const CharacterTable& T, const VirtualModule& phi, const VirtualModule& chi) {
  const Int dphi = virtual_degree(T, phi.coeffs);
  const Int dchi = virtual_degree(T, chi.coeffs);
  if (dphi <= 0 || dchi <= 0)
    throw DomainError("the pre-order compares virtual characters of strictly positive degree");
  if (dphi > dchi) return false;
  const std::vector<Cyclotomic> vphi = virtual_values(T, phi.coeffs);
  const std::vector<Cyclotomic> vchi = virtual_values(T, chi.coeffs);
  for (long c = 0; c < T.num_classes(); ++c)
    if (vchi[static_cast<std::size_t>(c)].is_zero() && !vphi[static_cast<std::size_t>(c)].is_zero()) return false;
  return true;
}

// ---------------------------------------------------------------------------
// Vanishing lattices.
// ---------------------------------------------------------------------------

// Integer basis (as matrix columns) of the lattice of coefficient vectors a
// with sum_i a_i chi_i(c) = 0 for every class c in S.  Each cyclotomic
// constraint expands into one integer constraint per power-basis coordinate,
// with denominators cleared row by row.
inline IntMatrix vanishing_lattice(const CharacterTable& T, const ZeroSet& S) {
  const long k = T.num_classes();
  if (S.classes.empty()) return IntMatrix::identity(k);
  for (long c : S.classes)
    if (c < 0 || c >= k) throw DomainError("vanishing class index out of range");

  std::vector<std::vector<Int>> rows;
  for (long c : S.classes) {
    // All values in one column share the table's common cyclotomic order.
    const std::size_t width = T.chars[0][static_cast<std::size_t>(c)].coeffs().size();
    for (std::size_t t = 0; t < width; ++t) {
      Int den = 1;
      for (long i = 0; i < k; ++i)
        den = int_lcm(den, Int(T.chars[static_cast<std::size_t>(i)][static_cast<std::size_t>(c)].coeffs()[t].get_den()));
      std::vector<Int> row(static_cast<std::size_t>(k));
      bool all_zero = true;
      for (long i = 0; i < k; ++i) {
        const Rat scaled = T.chars[static_cast<std::size_t>(i)][static_cast<std::size_t>(c)].coeffs()[t] * Rat(den);
        if (scaled.get_den() != 1) throw InternalInconsistencyError("denominator clearing failed");
        row[static_cast<std::size_t>(i)] = Int(scaled.get_num());
        if (row[static_cast<std::size_t>(i)] != 0) all_zero = false;
      }
      if (!all_zero) rows.push_back(std::move(row));
    }
  }
  if (rows.empty()) return IntMatrix::identity(k);

  IntMatrix C(static_cast<long>(rows.size()), k);
  for (long r = 0; r < C.rows; ++r)
    for (long j = 0; j < k; ++j) C.at(r, j) = rows[static_cast<std::size_t>(r)][static_cast<std::size_t>(j)];
  return kernel(C);
}

// ---------------------------------------------------------------------------
// Minimality.
// ---------------------------------------------------------------------------

struct MinimalityVerdict {
  bool minimal = false;
  // For a non-minimal character: a witness phi strictly below chi, re-verified
  // from raw values before being returned.
  std::optional<VirtualModule> certificate;
};

namespace detail {

// Minimal positive degree over the lattice vanishing on S, with a witness
// achieving it; nullopt when the lattice carries no positive-degree element.
inline std::optional<std::pair<Int, VirtualModule>> degree_minimum(const CharacterTable& T, const ZeroSet& S) {
  const IntMatrix B = vanishing_lattice(T, S);
  const FunctionalGcdWitness w = functional_gcd_witness(B, T.degrees);
  if (w.g == 0) return std::nullopt;
  VirtualModule phi;
  phi.coeffs = w.x;
  return std::make_pair(w.g, std::move(phi));
}

}  // namespace detail

// Decision procedure: chi is minimal when no virtual character of positive
// degree sits strictly below it.  A strict minorant either has smaller
// degree (step 1 finds the smallest degree compatible with chi's zero set)
// or equal degree and at least one extra zero (step 2 probes each candidate
// extra class; one extra zero suffices, so supersets are unnecessary).  The
// identity class is excluded: positive degree forces a nonzero value there.
inline MinimalityVerdict is_minimal(const CharacterTable& T, const VirtualModule& chi) {
  const Int deg = virtual_degree(T, chi.coeffs);
  if (deg <= 0) throw DomainError("minimality is defined for virtual characters of strictly positive degree");
  const ZeroSet Z = zero_set(T, chi.coeffs);
  const long id = identity_class(T);

  const auto certify = [&](VirtualModule phi) -> MinimalityVerdict {
    if (!pre_order_leq(T, phi, chi) || pre_order_leq(T, chi, phi))
      throw InternalInconsistencyError("minimality certificate failed re-verification from values");
    MinimalityVerdict v;
    v.minimal = false;
    v.certificate = std::move(phi);
    return v;
  };

  if (const auto probe = detail::degree_minimum(T, Z))
    if (probe->first < deg) return certify(probe->second);

  for (long c = 0; c < T.num_classes(); ++c) {
    if (c == id || Z.classes.count(c)) continue;
    ZeroSet S = Z;
    S.classes.insert(c);
    if (const auto probe = detail::degree_minimum(T, S))
      if (probe->first <= deg) return certify(probe->second);
  }

  MinimalityVerdict v;
  v.minimal = true;
  return v;
}

inline MinimalityVerdict is_minimal(const CharacterTable& T, long i) {
  if (i < 0 || i >= T.num_classes()) throw DomainError("character index out of range");
  VirtualModule chi;
  chi.coeffs.assign(static_cast<std::size_t>(T.num_classes()), Int(0));
  chi.coeffs[static_cast<std::size_t>(i)] = 1;
  return is_minimal(T, chi);
}

// ---------------------------------------------------------------------------
// Invertibility versus minimality, per character.
// ---------------------------------------------------------------------------

struct ConjectureRow {
  Int index;                       // Knutson index of the irreducible
  bool regular_invertible = false; // index == 1
  MinimalityVerdict verdict;
};

struct ConjectureReport {
  std::vector<ConjectureRow> rows;
  std::vector<long> discrepancies;  // rows where the two predicates disagree
};

inline ConjectureReport savitskii_conjecture_report(const CharacterTable& T) {
  ConjectureReport rep;
  for (long i = 0; i < T.num_classes(); ++i) {
    ConjectureRow row;
    row.index = knutson_index(T, i).index;
    row.regular_invertible = row.index == 1;
    row.verdict = is_minimal(T, i);
    if (row.regular_invertible != row.verdict.minimal) rep.discrepancies.push_back(i);
    rep.rows.push_back(std::move(row));
  }
  return rep;
}

}  // namespace knutson
