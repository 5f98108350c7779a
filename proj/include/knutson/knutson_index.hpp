#pragma once
// Knutson indices over based rings and character tables: minimal regular
// multipliers with verified inverses, the Knutson-type decision, Savitskii
// restriction to Sylow subgroups, the Savitskii induced inverse, and the
// Sylow product route cross-checked against the direct computation.

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include <knutson/chartab.hpp>
#include <knutson/common.hpp>
#include <knutson/group.hpp>
#include <knutson/repring.hpp>
#include <knutson/zlattice.hpp>

namespace knutson {

// ---------------------------------------------------------------------------
// Index reports.

struct IndexReport {
  Int index;              // least n >= 1 with b (x) inverse = n * (regular module)
  VirtualModule inverse;  // a particular integer solution for that n
  bool verified = false;  // inverse re-multiplied exactly to index * dims
};

namespace detail {

// Core route: minimal multiplier n of the degree vector in the column lattice
// of M, one integer solution at n, and an exact re-multiplication check.
// nullopt means no multiple of the regular module is reachable at all.
inline std::optional<IndexReport> index_from_matrix(const IntMatrix& M, const std::vector<Int>& dims) {
  std::optional<Int> n = minimal_multiplier(M, dims);
  if (!n) return std::nullopt;
  if (*n < 1) throw InternalInconsistencyError("minimal multiplier is not positive");
  std::vector<Int> target = dims;
  for (Int& d : target) d *= *n;
  std::optional<std::vector<Int>> x = solve_z(M, target);
  if (!x) throw InternalInconsistencyError("multiplier reported solvable but no integer solution was found");
  IndexReport rep;
  rep.index = *n;
  rep.inverse.coeffs = std::move(*x);
  if (mat_vec(M, rep.inverse.coeffs) != target)
    throw InternalInconsistencyError("regular inverse failed exact re-multiplication");
  rep.verified = true;
  return rep;
}

}  // namespace detail

// Left-multiplication matrix of a virtual module: the coefficient-weighted sum
// of the basis matrices (tensoring is additive in each argument).
inline IntMatrix leftmul_matrix(const BasedRing& R, const VirtualModule& v) {
  const long k = R.size();
  if (static_cast<long>(v.coeffs.size()) != k)
    throw StructuralError("virtual module length differs from basis size");
  IntMatrix M(k, k);
  for (long i = 0; i < k; ++i) {
    const Int& c = v.coeffs[static_cast<std::size_t>(i)];
    if (c == 0) continue;
    if (!R.leftmul[static_cast<std::size_t>(i)])
      throw StructuralError("left multiplication matrix unavailable for a nonzero coefficient of " +
                            R.labels[static_cast<std::size_t>(i)]);
    const IntMatrix& Mi = *R.leftmul[static_cast<std::size_t>(i)];
    for (long r = 0; r < k; ++r)
      for (long j = 0; j < k; ++j) M.at(r, j) += c * Mi.at(r, j);
  }
  return M;
}

// Knutson index of a virtual module over R.  nullopt encodes an infinite
// index (no multiple of the regular module is a left multiple): a legal
// outcome for abstract rings, an impossibility over group representation
// rings, where the index is finite and divides the degree.
inline std::optional<IndexReport> try_module_index(const BasedRing& R, const VirtualModule& v) {
  return detail::index_from_matrix(leftmul_matrix(R, v), R.dims);
}

inline std::optional<IndexReport> try_knutson_index(const BasedRing& R, long i) {
  if (i < 0 || i >= R.size()) throw DomainError("basis index out of range");
  if (!R.leftmul[static_cast<std::size_t>(i)])
    throw StructuralError("left multiplication matrix unavailable for " + R.labels[static_cast<std::size_t>(i)]);
  return detail::index_from_matrix(*R.leftmul[static_cast<std::size_t>(i)], R.dims);
}

// Entry point for rings where finiteness is a theorem (group representation
// rings and anything regular-complete): an infinite outcome is converted into
// an internal-inconsistency failure instead of a report.
inline IndexReport knutson_index(const BasedRing& R, long i) {
  std::optional<IndexReport> rep = try_knutson_index(R, i);
  if (!rep)
    throw InternalInconsistencyError("Knutson index of " + R.labels[static_cast<std::size_t>(i)] +
                                     " is infinite; impossible over a group representation ring");
  return *rep;
}

// Same computation straight off one character-table row, avoiding the cost of
// building every tensor matrix when a single character is wanted.
inline IndexReport knutson_index(const CharacterTable& T, long i) {
  if (i < 0 || i >= T.num_classes()) throw DomainError("character index out of range");
  std::optional<IndexReport> rep = detail::index_from_matrix(tensor_matrix(T, i), T.degrees);
  if (!rep) throw InternalInconsistencyError("Knutson index of a character is infinite; impossible for a group");
  return *rep;
}

// Per-row Knutson indices of a character table.
inline std::vector<Int> index_profile(const CharacterTable& T) {
  std::vector<Int> out;
  out.reserve(static_cast<std::size_t>(T.num_classes()));
  for (long i = 0; i < T.num_classes(); ++i) out.push_back(knutson_index(T, i).index);
  return out;
}

// Independent certification that n is minimal: every m in [1, n) must be
// rejected and n itself accepted by the fraction-free membership test in
// lattice_contains, an algorithm disjoint from the SNF route that produced n.
inline bool index_minimality_certified(const IntMatrix& M, const std::vector<Int>& dims, const Int& n) {
  for (Int m = 1; m <= n; ++m) {
    std::vector<Int> target = dims;
    for (Int& d : target) d *= m;
    const bool member = lattice_contains(M, target);
    if (member != (m == n)) return false;
  }
  return true;
}

// Greedy kernel-translate descent toward a coefficient-sparse inverse: walk
// along integer kernel directions of M while the l1 norm of the coefficient
// vector strictly drops.  Any output is still an exact inverse for the same
// multiplier; rounds bounds the work.
inline VirtualModule sparsify_inverse(const IntMatrix& M, VirtualModule inverse, long rounds = 64) {
  const IntMatrix K = kernel(M);
  if (K.cols == 0) return inverse;
  auto l1 = [](const std::vector<Int>& v) {
    Int s = 0;
    for (const Int& x : v) s += abs(x);
    return s;
  };
  Int best = l1(inverse.coeffs);
  for (long round = 0; round < rounds; ++round) {
    bool improved = false;
    for (long j = 0; j < K.cols; ++j) {
      for (int sign : {1, -1}) {
        std::vector<Int> cand = inverse.coeffs;
        for (long i = 0; i < K.rows; ++i) cand[static_cast<std::size_t>(i)] += sign * K.at(i, j);
        Int norm = l1(cand);
        if (norm < best) {
          best = norm;
          inverse.coeffs = std::move(cand);
          improved = true;
        }
      }
    }
    if (!improved) break;
  }
  return inverse;
}

// ---------------------------------------------------------------------------
// Knutson-type decision.

struct KnutsonTypeReport {
  bool knutson_type = true;
  std::vector<long> failing;  // basis indices whose index differs from 1 (or is infinite)
};

// A ring is of Knutson type when every basis element has index 1.  Basis
// elements of dimension 1 are invertible (the Frobenius form forces
// b (x) b* to be exactly the unit), so index 1 holds for them even when their
// left-multiplication matrix is not stored; any other absent matrix is an
// error.
inline KnutsonTypeReport is_knutson_type(const BasedRing& R) {
  KnutsonTypeReport out;
  for (long i = 0; i < R.size(); ++i) {
    if (!R.leftmul[static_cast<std::size_t>(i)]) {
      if (R.dims[static_cast<std::size_t>(i)] == 1) continue;
      throw StructuralError("left multiplication matrix unavailable for " +
                            R.labels[static_cast<std::size_t>(i)] + ", which has dimension > 1");
    }
    std::optional<IndexReport> rep = try_knutson_index(R, i);
    if (!rep || rep->index != 1) {
      out.knutson_type = false;
      out.failing.push_back(i);
    }
  }
  return out;
}

inline KnutsonTypeReport is_knutson_type(const CharacterTable& T) {
  KnutsonTypeReport out;
  for (long i = 0; i < T.num_classes(); ++i)
    if (knutson_index(T, i).index != 1) {
      out.knutson_type = false;
      out.failing.push_back(i);
    }
  return out;
}

// ---------------------------------------------------------------------------
// Sylow sites.

// A Sylow p-subgroup of the table's group, carrying its own character table,
// the class fusion into the parent, and the subgroup's representation ring.
struct SylowSite {
  long p = 0;
  long k = 0;  // |S| = p^k
  SubgroupEmbedding embedding;
  CharacterTable table;
  BasedRing ring;
};

inline SylowSite sylow_site(const CharacterTable& TG, long p) {
  const FiniteGroup& G = TG.group_ref();
  if (!TG.classes) throw StructuralError("character table carries no conjugacy data");
  SylowSite site;
  site.p = p;
  site.embedding = sylow(G, p);
  site.table = dixon_table(site.embedding.subgroup);
  fusion(G, *TG.classes, site.embedding, *site.table.classes);
  site.ring = from_table(site.table);
  long rest = to_long(site.table.group_order);
  while (rest % p == 0) {
    rest /= p;
    ++site.k;
  }
  if (rest != 1 || site.k == 0) throw InternalInconsistencyError("Sylow subgroup order is not a power of p");
  return site;
}

// One site per prime divisor of the group order, ascending.
inline std::vector<SylowSite> sylow_sites(const CharacterTable& TG) {
  long n = to_long(TG.group_order);
  std::vector<SylowSite> sites;
  for (long p = 2; p <= n; ++p) {
    if (n % p != 0) continue;
    sites.push_back(sylow_site(TG, p));
    while (n % p == 0) n /= p;
  }
  return sites;
}

// ---------------------------------------------------------------------------
// Savitskii restriction.

struct SavitskiiRecord {
  long p = 0;
  long k = 0;                 // p^k = |S| = the p-part of |G|
  long l = 0;                 // p^l = gcd(degree, p^k) = degree of the restriction
  Int u, v;                   // u*degree + v*p^k = p^l with u >= 1 minimal
  VirtualModule restriction;  // over the rows of the Sylow table
};

// The Savitskii restriction of irreducible chi to a Sylow p-subgroup:
// u * (ordinary restriction) + v * (regular module of S), with the Bezout
// pair normalized to minimal positive u.  Its degree is the p-part of
// gcd(chi(1), |S|) by construction, re-checked exactly.
inline SavitskiiRecord savitskii_restriction(const CharacterTable& TG, long chi, const SubgroupEmbedding& e,
                                             const CharacterTable& TS) {
  if (chi < 0 || chi >= TG.num_classes()) throw DomainError("character index out of range");
  const long s_order = to_long(TS.group_order);
  if (s_order < 2) throw DomainError("trivial subgroup is not a Sylow subgroup for any prime");
  long p = 2;
  while (s_order % p != 0) ++p;

  SavitskiiRecord rec;
  rec.p = p;
  long rest = s_order;
  while (rest % p == 0) {
    rest /= p;
    ++rec.k;
  }
  if (rest != 1) throw DomainError("subgroup order is not a prime power, so this is not a Sylow embedding");
  if (TG.group_order % s_order != 0 || (TG.group_order / s_order) % p == 0)
    throw DomainError("subgroup order is not the full p-part of the group order");

  const Int r = TG.degrees[static_cast<std::size_t>(chi)];
  const Int pk = s_order;
  Int s, t;
  const Int g = xgcd(r, pk, s, t);  // g = p^l
  Int gg = g;
  while (gg % p == 0) {
    gg /= p;
    ++rec.l;
  }
  if (gg != 1) throw InternalInconsistencyError("gcd with a prime power is not a prime power");
  const Int m = pk / g;  // u is determined modulo m
  rec.u = s % m;
  if (rec.u <= 0) rec.u += m;
  rec.v = (g - rec.u * r) / pk;
  if (rec.u * r + rec.v * pk != g) throw InternalInconsistencyError("Bezout normalization broke the identity");

  const std::vector<Int> base = decompose(TS, restrict(TG, ClassFunction{TG.chars[static_cast<std::size_t>(chi)]}, e, TS));
  const long kS = TS.num_classes();
  rec.restriction.coeffs.resize(static_cast<std::size_t>(kS));
  Int deg = 0;
  for (long j = 0; j < kS; ++j) {
    rec.restriction.coeffs[static_cast<std::size_t>(j)] =
        rec.u * base[static_cast<std::size_t>(j)] + rec.v * TS.degrees[static_cast<std::size_t>(j)];
    deg += rec.restriction.coeffs[static_cast<std::size_t>(j)] * TS.degrees[static_cast<std::size_t>(j)];
  }
  if (deg != g) throw InternalInconsistencyError("Savitskii restriction degree differs from the prescribed p-power");
  return rec;
}

// ---------------------------------------------------------------------------
// Savitskii induced inverse and the Sylow product route.

struct InducedInverse {
  VirtualModule inverse;                 // over the rows of the parent table
  Int index;                             // product of the per-prime restriction indices
  std::vector<SavitskiiRecord> records;  // one per prime divisor, ascending
};

// Build a regular inverse for chi from the Sylow sites: take each Savitskii
// restriction's regular inverse locally, induce it to the parent, then form
// the integer combination whose degree is the gcd of the induced degrees.
// The result is verified exactly against index * (regular module); a failure
// would falsify the Sylow product theorem and is reported as inconsistency.
inline InducedInverse savitskii_induced_inverse(const CharacterTable& TG, long chi,
                                                const std::vector<SylowSite>& sites) {
  if (sites.empty()) throw DomainError("the trivial group has no Sylow sites; its only index is 1");
  const long kG = TG.num_classes();
  InducedInverse out;
  out.index = 1;

  std::vector<std::vector<Int>> induced;
  std::vector<Int> idegs;
  for (const SylowSite& site : sites) {
    SavitskiiRecord rec = savitskii_restriction(TG, chi, site.embedding, site.table);
    std::optional<IndexReport> local = try_module_index(site.ring, rec.restriction);
    if (!local)
      throw InternalInconsistencyError("a Savitskii restriction has no regular multiple over its Sylow ring");
    out.index *= local->index;

    std::vector<Int> mu = decompose(TG, induce(site.table, combine(site.table, local->inverse.coeffs),
                                               site.embedding, TG));
    Int d = 0;
    for (long i = 0; i < kG; ++i) d += mu[static_cast<std::size_t>(i)] * TG.degrees[static_cast<std::size_t>(i)];
    if (d <= 0) throw InternalInconsistencyError("induced local inverse has nonpositive degree");
    induced.push_back(std::move(mu));
    idegs.push_back(d);
    out.records.push_back(std::move(rec));
  }

  // Chained Bezout combination achieving the gcd of the induced degrees.
  Int g = 0;
  std::vector<Int> a(induced.size(), Int(0));
  for (std::size_t i = 0; i < induced.size(); ++i) {
    if (g == 0) {
      g = idegs[i];
      a[i] = 1;
      continue;
    }
    Int s, t;
    const Int g2 = xgcd(g, idegs[i], s, t);
    for (std::size_t j = 0; j < i; ++j) a[j] *= s;
    a[i] = t;
    g = g2;
  }

  out.inverse.coeffs.assign(static_cast<std::size_t>(kG), Int(0));
  for (std::size_t i = 0; i < induced.size(); ++i) {
    if (a[i] == 0) continue;
    for (long j = 0; j < kG; ++j) out.inverse.coeffs[static_cast<std::size_t>(j)] += a[i] * induced[i][static_cast<std::size_t>(j)];
  }

  // Exact verification: chi (x) inverse decomposes as index * (degree vector).
  const std::vector<Int> got =
      decompose(TG, pointwise_product(ClassFunction{TG.chars[static_cast<std::size_t>(chi)]},
                                      combine(TG, out.inverse.coeffs)));
  for (long i = 0; i < kG; ++i)
    if (got[static_cast<std::size_t>(i)] != out.index * TG.degrees[static_cast<std::size_t>(i)])
      throw InternalInconsistencyError("Savitskii induced inverse failed exact verification");
  return out;
}

inline InducedInverse savitskii_induced_inverse(const CharacterTable& TG, long chi) {
  return savitskii_induced_inverse(TG, chi, sylow_sites(TG));
}

// Product of the restriction indices across all Sylow sites, cross-checked
// against the direct computation; disagreement would falsify the Sylow
// product theorem, so it surfaces as an inconsistency rather than a value.
inline Int index_via_sylow(const CharacterTable& TG, long chi, const std::vector<SylowSite>& sites) {
  Int prod = 1;
  for (const SylowSite& site : sites) {
    const SavitskiiRecord rec = savitskii_restriction(TG, chi, site.embedding, site.table);
    std::optional<IndexReport> local = try_module_index(site.ring, rec.restriction);
    if (!local)
      throw InternalInconsistencyError("a Savitskii restriction has no regular multiple over its Sylow ring");
    prod *= local->index;
  }
  const Int direct = knutson_index(TG, chi).index;
  if (prod != direct)
    throw InternalInconsistencyError("Sylow product route computed " + prod.get_str() +
                                     " but the direct Knutson index is " + direct.get_str());
  return prod;
}

inline Int index_via_sylow(const CharacterTable& TG, long chi) {
  return index_via_sylow(TG, chi, sylow_sites(TG));
}

}  // namespace knutson
