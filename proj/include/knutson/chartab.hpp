#pragma once
// Character tables of finite groups.
//
// - dixon_table: Burnside–Dixon over GF(ell) (class-matrix eigenvectors,
//   discrete-log lift to cyclotomic values), deterministic prime schedule.
// - inner / decompose / tensor_matrix: exact inner products; multiplicities
//   via modular evaluation + CRT, finished by an exact pointwise check.
// - restrict / induce over a SubgroupEmbedding, product_table for direct
//   products, tables_match for permutation/Galois-invariant comparison.
//
// Conventions: class 0 is the identity class; all character values are stored
// at the group exponent; rows are sorted by (degree, then coefficient vectors
// lexicographically, larger first) so the trivial-looking rows lead.

#include <knutson/common.hpp>
#include <knutson/cyclotomic.hpp>
#include <knutson/group.hpp>
#include <knutson/zlattice.hpp>

#include <algorithm>
#include <functional>
#include <map>
#include <memory>
#include <numeric>
#include <optional>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

namespace knutson {

struct ClassFunction {
  std::vector<Cyclotomic> values;

  long size() const { return static_cast<long>(values.size()); }
};

struct CharacterTable {
  Int group_order;
  long exponent = 1;
  std::vector<Int> sizes;           // class sizes
  std::vector<long> orders;         // element order per class
  std::vector<long> inverse_class;  // class index -> class of inverses
  std::vector<std::vector<Cyclotomic>> chars;  // rows = irreducibles
  std::vector<Int> degrees;         // first column

  // Group context is present only on dixon_table output; JSON-loaded and
  // product tables carry none, and operations that need it say so.
  std::shared_ptr<const FiniteGroup> group;
  std::shared_ptr<const ConjugacyData> classes;

  long num_classes() const { return static_cast<long>(sizes.size()); }
  bool has_group() const { return group != nullptr && classes != nullptr; }

  const FiniteGroup& group_ref() const {
    if (!has_group())
      throw StructuralError("this operation needs a table with attached group (a dixon_table result)");
    return *group;
  }

  ClassFunction row(long i) const {
    if (i < 0 || i >= num_classes()) throw DomainError("irreducible row index out of range");
    return ClassFunction{chars[static_cast<std::size_t>(i)]};
  }

  long trivial_row() const {
    const Cyclotomic one = Cyclotomic::from_int(exponent, 1);
    for (long i = 0; i < num_classes(); ++i) {
      bool all = true;
      for (const Cyclotomic& v : chars[static_cast<std::size_t>(i)])
        if (!(v == one)) {
          all = false;
          break;
        }
      if (all) return i;
    }
    throw InternalInconsistencyError("character table has no trivial row");
  }

  void validate() const;
};

// Full consistency audit.  Returns a diagnostic instead of throwing so
// dixon_table can treat a failure as a retry-with-next-prime condition.
inline std::optional<std::string> table_problem(const CharacterTable& T) {
  const long k = T.num_classes();
  if (k < 1) return "table has no classes";
  if (static_cast<long>(T.chars.size()) != k) return "row count differs from class count";
  if (static_cast<long>(T.orders.size()) != k || static_cast<long>(T.inverse_class.size()) != k ||
      static_cast<long>(T.degrees.size()) != k)
    return "class metadata lengths disagree";
  for (long i = 0; i < k; ++i)
    if (static_cast<long>(T.chars[static_cast<std::size_t>(i)].size()) != k)
      return "row " + std::to_string(i) + " has the wrong length";
  if (T.group_order < 1) return "group order must be positive";
  if (T.exponent < 1) return "exponent must be positive";
  if (T.orders[0] != 1 || T.sizes[0] != 1) return "class 0 must be the identity class";

  Int size_sum = 0;
  long lcm_orders = 1;
  for (long c = 0; c < k; ++c) {
    if (T.sizes[c] < 1) return "class " + std::to_string(c) + " has nonpositive size";
    if (T.orders[c] < 1) return "class " + std::to_string(c) + " has nonpositive element order";
    if (T.exponent % T.orders[c] != 0)
      return "element order of class " + std::to_string(c) + " does not divide the exponent";
    size_sum += T.sizes[c];
    lcm_orders = std::lcm(lcm_orders, T.orders[c]);
  }
  if (size_sum != T.group_order) return "class sizes do not sum to the group order";
  if (lcm_orders != T.exponent) return "exponent is not the lcm of the element orders";

  for (long c = 0; c < k; ++c) {
    const long ic = T.inverse_class[c];
    if (ic < 0 || ic >= k) return "inverse_class out of range at class " + std::to_string(c);
    if (T.inverse_class[ic] != c) return "inverse_class is not an involution at class " + std::to_string(c);
    if (T.orders[ic] != T.orders[c] || T.sizes[ic] != T.sizes[c])
      return "inverse class of " + std::to_string(c) + " has different size or order";
  }
  if (T.inverse_class[0] != 0) return "identity class must be self-inverse";

  Int deg_sq = 0;
  for (long i = 0; i < k; ++i) {
    const auto& row = T.chars[static_cast<std::size_t>(i)];
    for (long c = 0; c < k; ++c) {
      if (row[static_cast<std::size_t>(c)].order() != T.exponent)
        return "value (" + std::to_string(i) + "," + std::to_string(c) + ") is not stored at the exponent order";
      if (!row[static_cast<std::size_t>(c)].has_integer_coords())
        return "value (" + std::to_string(i) + "," + std::to_string(c) + ") is not an algebraic integer";
    }
    auto d = row[0].as_integer();
    if (!d || *d < 1) return "row " + std::to_string(i) + " has a nonpositive or irrational degree";
    if (*d != T.degrees[i]) return "degrees column disagrees with row " + std::to_string(i);
    deg_sq += *d * *d;
  }
  if (deg_sq != T.group_order) return "sum of squared degrees differs from the group order";

  // conj(chi(c)) = chi(c^{-1} class); lets orthogonality reuse inverse_class.
  for (long i = 0; i < k; ++i)
    for (long c = 0; c < k; ++c)
      if (!(T.chars[static_cast<std::size_t>(i)][static_cast<std::size_t>(T.inverse_class[c])] ==
            T.chars[static_cast<std::size_t>(i)][static_cast<std::size_t>(c)].conj()))
        return "value at the inverse class is not the conjugate at (" + std::to_string(i) + "," +
               std::to_string(c) + ")";

  // Row orthogonality: sum_c |C_c| chi_i(c) conj(chi_j(c)) = delta_ij |G|.
  for (long i = 0; i < k; ++i)
    for (long j = i; j < k; ++j) {
      Cyclotomic acc(T.exponent);
      for (long c = 0; c < k; ++c)
        acc += T.sizes[c] * (T.chars[static_cast<std::size_t>(i)][static_cast<std::size_t>(c)] *
                             T.chars[static_cast<std::size_t>(j)][static_cast<std::size_t>(T.inverse_class[c])]);
      const Cyclotomic expect = Cyclotomic::from_int(T.exponent, i == j ? T.group_order : Int(0));
      if (!(acc == expect))
        return "row orthogonality fails for rows " + std::to_string(i) + " and " + std::to_string(j);
    }

  // Column orthogonality: sum_i chi_i(c) conj(chi_i(c')) = delta_cc' |G|/|C_c|.
  for (long c = 0; c < k; ++c)
    for (long c2 = c; c2 < k; ++c2) {
      Cyclotomic acc(T.exponent);
      for (long i = 0; i < k; ++i)
        acc += T.chars[static_cast<std::size_t>(i)][static_cast<std::size_t>(c)] *
               T.chars[static_cast<std::size_t>(i)][static_cast<std::size_t>(T.inverse_class[c2])];
      Int expect = 0;
      if (c == c2) {
        if (T.group_order % T.sizes[c] != 0) return "class size does not divide the group order";
        expect = T.group_order / T.sizes[c];
      }
      if (!(acc == Cyclotomic::from_int(T.exponent, expect)))
        return "column orthogonality fails for classes " + std::to_string(c) + " and " + std::to_string(c2);
    }

  return std::nullopt;
}

inline void CharacterTable::validate() const {
  if (auto p = table_problem(*this)) throw DataError("invalid character table: " + *p);
}

namespace detail {

// Reduced row echelon form over GF(ell); drops zero rows, returns pivot
// columns (ascending, one per surviving row).
inline std::vector<long> rref_mod(std::vector<std::vector<long>>& rows, long ell) {
  const long n = rows.empty() ? 0 : static_cast<long>(rows[0].size());
  std::vector<long> pivots;
  long r = 0;
  for (long c = 0; c < n && r < static_cast<long>(rows.size()); ++c) {
    long piv = -1;
    for (long i = r; i < static_cast<long>(rows.size()); ++i)
      if (rows[static_cast<std::size_t>(i)][static_cast<std::size_t>(c)] != 0) {
        piv = i;
        break;
      }
    if (piv < 0) continue;
    std::swap(rows[static_cast<std::size_t>(r)], rows[static_cast<std::size_t>(piv)]);
    auto& pr = rows[static_cast<std::size_t>(r)];
    const long inv = inv_mod(pr[static_cast<std::size_t>(c)], ell);
    for (long t = c; t < n; ++t) pr[static_cast<std::size_t>(t)] = mul_mod(pr[static_cast<std::size_t>(t)], inv, ell);
    for (long i = 0; i < static_cast<long>(rows.size()); ++i) {
      if (i == r) continue;
      auto& ri = rows[static_cast<std::size_t>(i)];
      const long f = ri[static_cast<std::size_t>(c)];
      if (f == 0) continue;
      for (long t = c; t < n; ++t) {
        long v = ri[static_cast<std::size_t>(t)] - mul_mod(f, pr[static_cast<std::size_t>(t)], ell);
        v %= ell;
        if (v < 0) v += ell;
        ri[static_cast<std::size_t>(t)] = v;
      }
    }
    pivots.push_back(c);
    ++r;
  }
  rows.resize(static_cast<std::size_t>(r));
  return pivots;
}

// Kernel basis of (A - lambda I) over GF(ell) for a square matrix A.
inline std::vector<std::vector<long>> eigen_kernel(const std::vector<std::vector<long>>& A, long lambda,
                                                   long ell) {
  const long d = static_cast<long>(A.size());
  std::vector<std::vector<long>> M(A);
  for (long i = 0; i < d; ++i) {
    long v = (M[static_cast<std::size_t>(i)][static_cast<std::size_t>(i)] - lambda) % ell;
    if (v < 0) v += ell;
    M[static_cast<std::size_t>(i)][static_cast<std::size_t>(i)] = v;
  }
  const std::vector<long> pivots = rref_mod(M, ell);
  std::vector<char> is_pivot(static_cast<std::size_t>(d), 0);
  for (long c : pivots) is_pivot[static_cast<std::size_t>(c)] = 1;
  std::vector<std::vector<long>> kern;
  for (long c = 0; c < d; ++c) {
    if (is_pivot[static_cast<std::size_t>(c)]) continue;
    std::vector<long> v(static_cast<std::size_t>(d), 0);
    v[static_cast<std::size_t>(c)] = 1;
    for (std::size_t r = 0; r < pivots.size(); ++r)
      v[static_cast<std::size_t>(pivots[r])] = (ell - M[r][static_cast<std::size_t>(c)]) % ell;
    kern.push_back(std::move(v));
  }
  return kern;
}

inline long primitive_root(long ell) {
  if (ell == 2) return 1;
  const auto factors = factorize(ell - 1);
  for (long u = 2; u < ell; ++u) {
    bool ok = true;
    for (const auto& [p, e] : factors)
      if (pow_mod(u, (ell - 1) / p, ell) == 1) {
        ok = false;
        break;
      }
    if (ok) return u;
  }
  throw InternalInconsistencyError("no primitive root modulo " + std::to_string(ell));
}

inline long rat_mod(const Rat& q, long ell) {
  long num = to_long(Int(q.get_num() % ell));
  num %= ell;
  if (num < 0) num += ell;
  long den = to_long(Int(q.get_den() % ell));
  den %= ell;
  if (den == 0)
    throw InternalInconsistencyError("denominator vanishes modulo the working prime (prime screening bug)");
  return mul_mod(num, inv_mod(den, ell), ell);
}

// Image of a cyclotomic under zeta_Nord -> w (a primitive Nord-th root of
// unity mod ell); the value's own order must divide Nord.
inline long eval_mod(const Cyclotomic& v, long Nord, long w, long ell) {
  const long m = v.order();
  if (Nord % m != 0) throw InternalInconsistencyError("cyclotomic order does not divide the evaluation order");
  const long z = pow_mod(w, Nord / m, ell);
  const auto& c = v.coeffs();
  long acc = 0;
  for (std::size_t t = c.size(); t-- > 0;) {
    acc = mul_mod(acc, z, ell);
    if (c[t] != 0) acc = (acc + rat_mod(c[t], ell)) % ell;
  }
  return acc;
}

struct DixonRow {
  Int degree;
  std::vector<Cyclotomic> values;
};

// True when row a should be listed before row b: degree ascending, then
// coefficient vectors lexicographically with larger coordinates first (this
// places the trivial character ahead of the sign characters, matching the
// documented C2 table [[1,1],[1,-1]]).
inline bool dixon_row_before(const DixonRow& a, const DixonRow& b) {
  if (a.degree != b.degree) return a.degree < b.degree;
  for (std::size_t v = 0; v < a.values.size(); ++v) {
    const auto& ca = a.values[v].coeffs();
    const auto& cb = b.values[v].coeffs();
    for (std::size_t t = 0; t < ca.size(); ++t)
      if (ca[t] != cb[t]) return ca[t] > cb[t];
  }
  return false;
}

inline std::optional<CharacterTable> dixon_attempt(const FiniteGroup& G, const ConjugacyData& CD,
                                                   const std::vector<std::vector<long>>& members,
                                                   const std::vector<long>& inv_of, long n, long ell) {
  const long N = G.order();
  const long k = CD.num_classes();

  // Common invariant subspaces of all class matrices, kept as RREF bases;
  // refined with each class matrix until everything is one-dimensional.
  std::vector<std::vector<std::vector<long>>> spaces;
  std::vector<std::vector<long>> pivots_of;
  {
    std::vector<std::vector<long>> id(static_cast<std::size_t>(k),
                                      std::vector<long>(static_cast<std::size_t>(k), 0));
    for (long i = 0; i < k; ++i) id[static_cast<std::size_t>(i)][static_cast<std::size_t>(i)] = 1;
    std::vector<long> piv(static_cast<std::size_t>(k));
    std::iota(piv.begin(), piv.end(), 0);
    spaces.push_back(std::move(id));
    pivots_of.push_back(std::move(piv));
  }

  for (long i = 1; i < k; ++i) {
    bool any_big = false;
    for (const auto& s : spaces)
      if (s.size() > 1) {
        any_big = true;
        break;
      }
    if (!any_big) break;

    // Class matrix M[j][t] = #{(x, y) in C_i x C_j : x y = z_t}; the omega
    // vectors are its right eigenvectors with eigenvalue omega_i.
    std::vector<std::vector<long>> M(static_cast<std::size_t>(k),
                                     std::vector<long>(static_cast<std::size_t>(k), 0));
    for (long t = 0; t < k; ++t) {
      const long zt = CD.reps[static_cast<std::size_t>(t)];
      for (long x : members[static_cast<std::size_t>(i)]) {
        const long j = CD.class_of[static_cast<std::size_t>(G.mul(inv_of[static_cast<std::size_t>(x)], zt))];
        auto& cell = M[static_cast<std::size_t>(j)][static_cast<std::size_t>(t)];
        cell = (cell + 1) % ell;
      }
    }

    std::vector<std::vector<std::vector<long>>> next_spaces;
    std::vector<std::vector<long>> next_pivots;
    for (std::size_t si = 0; si < spaces.size(); ++si) {
      auto& basis = spaces[si];
      const long d = static_cast<long>(basis.size());
      if (d == 1) {
        next_spaces.push_back(std::move(basis));
        next_pivots.push_back(std::move(pivots_of[si]));
        continue;
      }

      // Restriction of M to the subspace in its RREF basis, with an exact
      // invariance re-check (fails only for a bad prime).
      std::vector<std::vector<long>> img(static_cast<std::size_t>(d),
                                         std::vector<long>(static_cast<std::size_t>(k), 0));
      for (long b = 0; b < d; ++b)
        for (long j = 0; j < k; ++j) {
          long acc = 0;
          for (long t = 0; t < k; ++t) {
            const long m = M[static_cast<std::size_t>(j)][static_cast<std::size_t>(t)];
            if (m != 0)
              acc = (acc + mul_mod(m, basis[static_cast<std::size_t>(b)][static_cast<std::size_t>(t)], ell)) % ell;
          }
          img[static_cast<std::size_t>(b)][static_cast<std::size_t>(j)] = acc;
        }
      std::vector<std::vector<long>> R(static_cast<std::size_t>(d), std::vector<long>(static_cast<std::size_t>(d)));
      for (long b = 0; b < d; ++b)
        for (long r = 0; r < d; ++r)
          R[static_cast<std::size_t>(r)][static_cast<std::size_t>(b)] =
              img[static_cast<std::size_t>(b)][static_cast<std::size_t>(pivots_of[si][static_cast<std::size_t>(r)])];
      for (long b = 0; b < d; ++b) {
        std::vector<long> rec(static_cast<std::size_t>(k), 0);
        for (long r = 0; r < d; ++r) {
          const long coef = R[static_cast<std::size_t>(r)][static_cast<std::size_t>(b)];
          if (coef == 0) continue;
          for (long c = 0; c < k; ++c)
            rec[static_cast<std::size_t>(c)] =
                (rec[static_cast<std::size_t>(c)] +
                 mul_mod(coef, basis[static_cast<std::size_t>(r)][static_cast<std::size_t>(c)], ell)) %
                ell;
        }
        if (rec != img[static_cast<std::size_t>(b)]) return std::nullopt;
      }

      long found = 0;
      for (long lam = 0; lam < ell && found < d; ++lam) {
        auto kern = eigen_kernel(R, lam, ell);
        if (kern.empty()) continue;
        std::vector<std::vector<long>> glob;
        for (auto& kv : kern) {
          std::vector<long> g(static_cast<std::size_t>(k), 0);
          for (long r = 0; r < d; ++r) {
            if (kv[static_cast<std::size_t>(r)] == 0) continue;
            for (long c = 0; c < k; ++c)
              g[static_cast<std::size_t>(c)] =
                  (g[static_cast<std::size_t>(c)] +
                   mul_mod(kv[static_cast<std::size_t>(r)], basis[static_cast<std::size_t>(r)][static_cast<std::size_t>(c)],
                           ell)) %
                  ell;
          }
          glob.push_back(std::move(g));
        }
        auto piv = rref_mod(glob, ell);
        if (glob.empty()) return std::nullopt;
        found += static_cast<long>(glob.size());
        next_spaces.push_back(std::move(glob));
        next_pivots.push_back(std::move(piv));
      }
      if (found != d) return std::nullopt;  // not diagonalizable mod ell
    }
    spaces = std::move(next_spaces);
    pivots_of = std::move(next_pivots);
  }

  if (static_cast<long>(spaces.size()) != k) return std::nullopt;
  for (const auto& s : spaces)
    if (s.size() != 1) return std::nullopt;  // two omega vectors collided mod ell

  // Normalize so the identity-class coordinate is 1.
  std::vector<std::vector<long>> omega;
  omega.reserve(static_cast<std::size_t>(k));
  for (auto& s : spaces) {
    std::vector<long> v = s[0];
    if (v[0] == 0) return std::nullopt;
    const long sc = inv_mod(v[0], ell);
    for (long& x : v) x = mul_mod(x, sc, ell);
    omega.push_back(std::move(v));
  }

  // Degrees: d^2 = |G| / (sum_j omega_j omega_{j*} / s_j) mod ell; the true d
  // is unique below sqrt(|G|) because ell > 2 sqrt(|G|).
  std::vector<long> sinv(static_cast<std::size_t>(k));
  for (long c = 0; c < k; ++c) sinv[static_cast<std::size_t>(c)] = inv_mod(CD.sizes[static_cast<std::size_t>(c)] % ell, ell);
  long sqN = 0;
  while ((sqN + 1) * (sqN + 1) <= N) ++sqN;
  std::vector<long> deg(static_cast<std::size_t>(k));
  for (long idx = 0; idx < k; ++idx) {
    long S = 0;
    for (long j = 0; j < k; ++j)
      S = (S + mul_mod(mul_mod(omega[static_cast<std::size_t>(idx)][static_cast<std::size_t>(j)],
                               omega[static_cast<std::size_t>(idx)][static_cast<std::size_t>(CD.inverse_class[static_cast<std::size_t>(j)])],
                               ell),
                       sinv[static_cast<std::size_t>(j)], ell)) %
          ell;
    if (S == 0) return std::nullopt;
    const long d2 = mul_mod(N % ell, inv_mod(S, ell), ell);
    long dd = 0;
    for (long d = 1; d <= sqN; ++d)
      if (mul_mod(d % ell, d % ell, ell) == d2) {
        dd = d;
        break;
      }
    if (dd == 0) return std::nullopt;
    deg[static_cast<std::size_t>(idx)] = dd;
  }
  {
    Int s2 = 0;
    for (long idx = 0; idx < k; ++idx) s2 += Int(deg[static_cast<std::size_t>(idx)]) * Int(deg[static_cast<std::size_t>(idx)]);
    if (s2 != Int(N)) return std::nullopt;
  }

  // Character values mod ell, then the discrete-log lift: on <g> with
  // |g| = o, chi(g) = sum_s m_s zeta_o^s where m_s is recovered by a DFT over
  // the residues chi(g^t); each m_s is an eigenvalue multiplicity in [0, d].
  std::vector<std::vector<long>> chi(static_cast<std::size_t>(k), std::vector<long>(static_cast<std::size_t>(k)));
  for (long i = 0; i < k; ++i)
    for (long c = 0; c < k; ++c)
      chi[static_cast<std::size_t>(i)][static_cast<std::size_t>(c)] =
          mul_mod(deg[static_cast<std::size_t>(i)] % ell,
                  mul_mod(omega[static_cast<std::size_t>(i)][static_cast<std::size_t>(c)], sinv[static_cast<std::size_t>(c)], ell),
                  ell);

  const long u = primitive_root(ell);
  const long w = pow_mod(u, (ell - 1) / n, ell);

  std::vector<std::vector<long>> pcls(static_cast<std::size_t>(k));
  for (long c = 0; c < k; ++c) {
    const long o = CD.orders[static_cast<std::size_t>(c)];
    pcls[static_cast<std::size_t>(c)].resize(static_cast<std::size_t>(o));
    for (long t = 0; t < o; ++t)
      pcls[static_cast<std::size_t>(c)][static_cast<std::size_t>(t)] =
          CD.class_of[static_cast<std::size_t>(G.power(CD.reps[static_cast<std::size_t>(c)], t))];
  }

  std::vector<DixonRow> rows(static_cast<std::size_t>(k));
  for (long i = 0; i < k; ++i) {
    rows[static_cast<std::size_t>(i)].degree = Int(deg[static_cast<std::size_t>(i)]);
    rows[static_cast<std::size_t>(i)].values.reserve(static_cast<std::size_t>(k));
    for (long c = 0; c < k; ++c) {
      const long o = CD.orders[static_cast<std::size_t>(c)];
      const long wo = pow_mod(w, n / o, ell);
      const long wo_inv = inv_mod(wo, ell);
      const long o_inv = inv_mod(o % ell, ell);
      std::vector<std::pair<long, Rat>> terms;
      long msum = 0;
      for (long s = 0; s < o; ++s) {
        const long step = pow_mod(wo_inv, s, ell);
        long acc = 0;
        long zp = 1;
        for (long t = 0; t < o; ++t) {
          acc = (acc + mul_mod(chi[static_cast<std::size_t>(i)][static_cast<std::size_t>(
                                   pcls[static_cast<std::size_t>(c)][static_cast<std::size_t>(t)])],
                               zp, ell)) %
                ell;
          zp = mul_mod(zp, step, ell);
        }
        const long m = mul_mod(acc, o_inv, ell);
        if (m > deg[static_cast<std::size_t>(i)]) return std::nullopt;  // lift out of range
        msum += m;
        if (m != 0) terms.emplace_back(s * (n / o), Rat(m));
      }
      if (msum != deg[static_cast<std::size_t>(i)]) return std::nullopt;
      rows[static_cast<std::size_t>(i)].values.push_back(Cyclotomic::from_terms(n, terms));
    }
  }

  std::sort(rows.begin(), rows.end(), dixon_row_before);

  CharacterTable T;
  T.group_order = Int(N);
  T.exponent = n;
  T.sizes.reserve(static_cast<std::size_t>(k));
  for (long c = 0; c < k; ++c) T.sizes.push_back(Int(CD.sizes[static_cast<std::size_t>(c)]));
  T.orders = CD.orders;
  T.inverse_class = CD.inverse_class;
  for (auto& r : rows) {
    T.degrees.push_back(r.degree);
    T.chars.push_back(std::move(r.values));
  }
  T.group = std::make_shared<FiniteGroup>(G);
  T.classes = std::make_shared<ConjugacyData>(CD);
  if (table_problem(T)) return std::nullopt;  // lift inconsistency: retry with the next prime
  return T;
}

}  // namespace detail

inline CharacterTable dixon_table(const FiniteGroup& G) {
  const long N = G.order();
  if (N > ORDER_CAP)
    throw CapacityError("character table computation capped at group order " + std::to_string(ORDER_CAP));
  const ConjugacyData CD = conjugacy(G);
  const long k = CD.num_classes();
  long n = 1;
  for (long c = 0; c < k; ++c) n = std::lcm(n, CD.orders[static_cast<std::size_t>(c)]);

  std::vector<std::vector<long>> members(static_cast<std::size_t>(k));
  for (long e = 0; e < N; ++e) members[static_cast<std::size_t>(CD.class_of[static_cast<std::size_t>(e)])].push_back(e);
  std::vector<long> inv_of(static_cast<std::size_t>(N));
  for (long e = 0; e < N; ++e) inv_of[static_cast<std::size_t>(e)] = G.inv(e);

  // Deterministic schedule: smallest primes ell = 1 (mod n) with ell^2 > 4|G|.
  long ell = 1;
  for (int attempt = 0; attempt < 8; ++attempt) {
    do {
      ell += n;
    } while (!(Int(ell) * Int(ell) > Int(4) * Int(N) && is_prime(Int(ell))));
    if (auto T = detail::dixon_attempt(G, CD, members, inv_of, n, ell)) return *T;
  }
  throw InternalInconsistencyError("Burnside-Dixon did not stabilize after 8 primes for a group of order " +
                                   std::to_string(N));
}

inline Cyclotomic inner(const CharacterTable& T, const ClassFunction& a, const ClassFunction& b) {
  const long k = T.num_classes();
  if (a.size() != k || b.size() != k) throw StructuralError("class function length differs from class count");
  long L = 1;
  for (const Cyclotomic& v : a.values) L = std::lcm(L, v.order());
  for (const Cyclotomic& v : b.values) L = std::lcm(L, v.order());
  Cyclotomic acc(L);
  for (long c = 0; c < k; ++c)
    acc += Rat(T.sizes[static_cast<std::size_t>(c)]) *
           (a.values[static_cast<std::size_t>(c)].to_order(L) * b.values[static_cast<std::size_t>(c)].to_order(L).conj());
  return make_rat(1, T.group_order) * acc;
}

inline ClassFunction regular(const CharacterTable& T) {
  ClassFunction f;
  f.values.assign(static_cast<std::size_t>(T.num_classes()), Cyclotomic(T.exponent));
  f.values[0] = Cyclotomic::from_int(T.exponent, T.group_order);
  return f;
}

inline ClassFunction pointwise_product(const ClassFunction& a, const ClassFunction& b) {
  if (a.size() != b.size()) throw StructuralError("class function length mismatch");
  long L = 1;
  for (const Cyclotomic& v : a.values) L = std::lcm(L, v.order());
  for (const Cyclotomic& v : b.values) L = std::lcm(L, v.order());
  ClassFunction out;
  out.values.reserve(a.values.size());
  for (std::size_t c = 0; c < a.values.size(); ++c)
    out.values.push_back(a.values[c].to_order(L) * b.values[c].to_order(L));
  return out;
}

// Integer combination of table rows as a class function.
inline ClassFunction combine(const CharacterTable& T, const std::vector<Int>& coeffs) {
  const long k = T.num_classes();
  if (static_cast<long>(coeffs.size()) != k) throw StructuralError("coefficient length differs from class count");
  ClassFunction out;
  out.values.assign(static_cast<std::size_t>(k), Cyclotomic(T.exponent));
  for (long i = 0; i < k; ++i) {
    if (coeffs[static_cast<std::size_t>(i)] == 0) continue;
    for (long c = 0; c < k; ++c)
      out.values[static_cast<std::size_t>(c)] +=
          coeffs[static_cast<std::size_t>(i)] * T.chars[static_cast<std::size_t>(i)][static_cast<std::size_t>(c)];
  }
  return out;
}

inline std::vector<Int> decompose(const CharacterTable& T, const ClassFunction& f) {
  const long k = T.num_classes();
  if (f.size() != k) throw StructuralError("class function length differs from class count");
  long Nord = T.exponent;
  for (const Cyclotomic& v : f.values) Nord = std::lcm(Nord, v.order());

  // |m_i| = |(1/|G|) sum_c s_c f(c) conj(chi_i(c))| <= max_c |f(c)| by
  // Cauchy-Schwarz against the orthonormal rows; magnitude_bound >= |f(c)|.
  Rat B;
  for (const Cyclotomic& v : f.values) B = std::max(B, v.magnitude_bound());
  const Rat target = Rat(2) * B + 2;

  std::vector<long> sz(static_cast<std::size_t>(k));
  std::vector<Int> cur(static_cast<std::size_t>(k), Int(0));
  Int P = 1;
  long ell = 1;
  while (Rat(P) <= target) {
    // Next admissible prime = 1 (mod Nord), coprime to the group order and to
    // every coordinate denominator.
    bool ok = false;
    do {
      ell += Nord;
      if (!is_prime(Int(ell))) continue;
      if (T.group_order % ell == 0) continue;
      ok = true;
      for (const Cyclotomic& v : f.values) {
        for (const Rat& q : v.coeffs())
          if (Int(q.get_den() % ell) == 0) {
            ok = false;
            break;
          }
        if (!ok) break;
      }
    } while (!ok);

    const long u = detail::primitive_root(ell);
    const long w = pow_mod(u, (ell - 1) / Nord, ell);
    const long invN = inv_mod(to_long(T.group_order % ell), ell);
    for (long c = 0; c < k; ++c) sz[static_cast<std::size_t>(c)] = to_long(T.sizes[static_cast<std::size_t>(c)] % ell);

    std::vector<long> fimg(static_cast<std::size_t>(k));
    for (long c = 0; c < k; ++c) fimg[static_cast<std::size_t>(c)] = detail::eval_mod(f.values[static_cast<std::size_t>(c)], Nord, w, ell);
    std::vector<std::vector<long>> rowimg(static_cast<std::size_t>(k), std::vector<long>(static_cast<std::size_t>(k)));
    for (long i = 0; i < k; ++i)
      for (long c = 0; c < k; ++c)
        rowimg[static_cast<std::size_t>(i)][static_cast<std::size_t>(c)] =
            detail::eval_mod(T.chars[static_cast<std::size_t>(i)][static_cast<std::size_t>(c)], Nord, w, ell);

    std::vector<long> m(static_cast<std::size_t>(k));
    for (long i = 0; i < k; ++i) {
      long acc = 0;
      for (long c = 0; c < k; ++c)
        acc = (acc + mul_mod(mul_mod(sz[static_cast<std::size_t>(c)], fimg[static_cast<std::size_t>(c)], ell),
                             rowimg[static_cast<std::size_t>(i)][static_cast<std::size_t>(T.inverse_class[static_cast<std::size_t>(c)])],
                             ell)) %
              ell;
      m[static_cast<std::size_t>(i)] = mul_mod(acc, invN, ell);
    }

    if (P == 1) {
      for (long i = 0; i < k; ++i) cur[static_cast<std::size_t>(i)] = Int(m[static_cast<std::size_t>(i)]);
      P = ell;
    } else {
      const long pinv = inv_mod(to_long(P % ell), ell);
      for (long i = 0; i < k; ++i) {
        long r = to_long(cur[static_cast<std::size_t>(i)] % ell);
        long t = mul_mod(((m[static_cast<std::size_t>(i)] - r) % ell + ell) % ell, pinv, ell);
        cur[static_cast<std::size_t>(i)] += P * t;
      }
      P *= ell;
    }
  }

  std::vector<Int> out(static_cast<std::size_t>(k));
  const Int half = P / 2;
  for (long i = 0; i < k; ++i)
    out[static_cast<std::size_t>(i)] =
        cur[static_cast<std::size_t>(i)] > half ? Int(cur[static_cast<std::size_t>(i)] - P) : cur[static_cast<std::size_t>(i)];

  // Exact pointwise verification: rigor does not rest on the CRT bound.
  for (long c = 0; c < k; ++c) {
    Cyclotomic s(Nord);
    for (long i = 0; i < k; ++i)
      if (out[static_cast<std::size_t>(i)] != 0)
        s += out[static_cast<std::size_t>(i)] * T.chars[static_cast<std::size_t>(i)][static_cast<std::size_t>(c)].to_order(Nord);
    if (!(s == f.values[static_cast<std::size_t>(c)].to_order(Nord)))
      throw NotVirtualError("class function is not an integer combination of the irreducible characters");
  }
  return out;
}

// Column j = decompose(chi_i tensor chi_j).  Products of two genuine table
// rows satisfy |value| <= d_i d_j, so the CRT bound is rigorous without a
// pointwise re-check; the exact dimension identity still cross-checks.
inline IntMatrix tensor_matrix(const CharacterTable& T, long i) {
  const long k = T.num_classes();
  if (i < 0 || i >= k) throw DomainError("irreducible row index out of range");
  const long Nord = T.exponent;
  Int maxd = 0;
  for (long j = 0; j < k; ++j) maxd = std::max(maxd, T.degrees[static_cast<std::size_t>(j)]);
  const Int target = Int(2) * T.degrees[static_cast<std::size_t>(i)] * maxd + 2;

  std::vector<Int> cur(static_cast<std::size_t>(k) * static_cast<std::size_t>(k), Int(0));
  Int P = 1;
  long ell = 1;
  std::vector<long> sz(static_cast<std::size_t>(k));
  while (P <= target) {
    do {
      ell += Nord;
    } while (!is_prime(Int(ell)) || T.group_order % ell == 0);

    const long u = detail::primitive_root(ell);
    const long w = pow_mod(u, (ell - 1) / Nord, ell);
    const long invN = inv_mod(to_long(T.group_order % ell), ell);
    for (long c = 0; c < k; ++c) sz[static_cast<std::size_t>(c)] = to_long(T.sizes[static_cast<std::size_t>(c)] % ell);

    std::vector<std::vector<long>> rowimg(static_cast<std::size_t>(k), std::vector<long>(static_cast<std::size_t>(k)));
    for (long r = 0; r < k; ++r)
      for (long c = 0; c < k; ++c)
        rowimg[static_cast<std::size_t>(r)][static_cast<std::size_t>(c)] =
            detail::eval_mod(T.chars[static_cast<std::size_t>(r)][static_cast<std::size_t>(c)], Nord, w, ell);

    const long pinv = P == 1 ? 0 : inv_mod(to_long(P % ell), ell);
    std::vector<long> prod(static_cast<std::size_t>(k));
    for (long j = 0; j < k; ++j) {
      for (long c = 0; c < k; ++c)
        prod[static_cast<std::size_t>(c)] =
            mul_mod(sz[static_cast<std::size_t>(c)],
                    mul_mod(rowimg[static_cast<std::size_t>(i)][static_cast<std::size_t>(c)],
                            rowimg[static_cast<std::size_t>(j)][static_cast<std::size_t>(c)], ell),
                    ell);
      for (long r = 0; r < k; ++r) {
        long acc = 0;
        for (long c = 0; c < k; ++c)
          acc = (acc + mul_mod(prod[static_cast<std::size_t>(c)],
                               rowimg[static_cast<std::size_t>(r)][static_cast<std::size_t>(T.inverse_class[static_cast<std::size_t>(c)])],
                               ell)) %
                ell;
        const long m = mul_mod(acc, invN, ell);
        Int& slot = cur[static_cast<std::size_t>(r) * static_cast<std::size_t>(k) + static_cast<std::size_t>(j)];
        if (P == 1) {
          slot = Int(m);
        } else {
          long rr = to_long(slot % ell);
          long t = mul_mod(((m - rr) % ell + ell) % ell, pinv, ell);
          slot += P * t;
        }
      }
    }
    P *= ell;
  }

  IntMatrix out(k, k);
  const Int half = P / 2;
  for (long r = 0; r < k; ++r)
    for (long j = 0; j < k; ++j) {
      const Int& v = cur[static_cast<std::size_t>(r) * static_cast<std::size_t>(k) + static_cast<std::size_t>(j)];
      out.at(r, j) = v > half ? Int(v - P) : v;
    }

  for (long j = 0; j < k; ++j) {
    Int total = 0;
    for (long r = 0; r < k; ++r) {
      if (out.at(r, j) < 0)
        throw InternalInconsistencyError("tensor decomposition produced a negative multiplicity");
      total += out.at(r, j) * T.degrees[static_cast<std::size_t>(r)];
    }
    if (total != T.degrees[static_cast<std::size_t>(i)] * T.degrees[static_cast<std::size_t>(j)])
      throw InternalInconsistencyError("tensor decomposition violates dimension multiplicativity");
  }
  return out;
}

inline ClassFunction restrict(const CharacterTable& parent, const ClassFunction& f, const SubgroupEmbedding& e,
                              const CharacterTable& sub) {
  if (f.size() != parent.num_classes()) throw StructuralError("class function length differs from parent class count");
  if (e.fusion.empty()) throw StructuralError("fusion has not been computed for this embedding");
  if (static_cast<long>(e.fusion.size()) != sub.num_classes())
    throw StructuralError("fusion length differs from subgroup class count");
  ClassFunction out;
  out.values.reserve(e.fusion.size());
  for (long c = 0; c < sub.num_classes(); ++c) {
    const long pc = e.fusion[static_cast<std::size_t>(c)];
    if (pc < 0 || pc >= parent.num_classes()) throw StructuralError("fusion image out of range");
    out.values.push_back(f.values[static_cast<std::size_t>(pc)]);
  }
  return out;
}

inline ClassFunction induce(const CharacterTable& sub, const ClassFunction& f, const SubgroupEmbedding& e,
                            const CharacterTable& parent) {
  const FiniteGroup& G = parent.group_ref();
  const ConjugacyData& GC = *parent.classes;
  const FiniteGroup& H = e.subgroup;
  const long kH = sub.num_classes();
  const long kG = parent.num_classes();
  if (f.size() != kH) throw StructuralError("class function length differs from subgroup class count");
  if (GC.num_classes() != kG) throw InternalInconsistencyError("parent table class data out of sync");
  if (static_cast<long>(e.inclusion.size()) != H.order()) throw StructuralError("inclusion map has wrong length");

  // The subgroup table must index classes exactly as conjugacy(subgroup) does.
  const ConjugacyData HC = conjugacy(H);
  if (HC.num_classes() != kH) throw StructuralError("subgroup table class count disagrees with the embedding");
  for (long c = 0; c < kH; ++c)
    if (Int(HC.sizes[static_cast<std::size_t>(c)]) != sub.sizes[static_cast<std::size_t>(c)] ||
        HC.orders[static_cast<std::size_t>(c)] != sub.orders[static_cast<std::size_t>(c)])
      throw StructuralError("subgroup table classes disagree with the embedding's subgroup");

  std::vector<long> back(static_cast<std::size_t>(G.order()), -1);
  for (long h = 0; h < H.order(); ++h) {
    const long gidx = e.inclusion[static_cast<std::size_t>(h)];
    if (gidx < 0 || gidx >= G.order() || back[static_cast<std::size_t>(gidx)] != -1)
      throw StructuralError("inclusion map is not injective into the parent group");
    back[static_cast<std::size_t>(gidx)] = h;
  }

  long L = 1;
  for (const Cyclotomic& v : f.values) L = std::lcm(L, v.order());
  std::vector<Cyclotomic> lifted;
  lifted.reserve(static_cast<std::size_t>(kH));
  for (const Cyclotomic& v : f.values) lifted.push_back(v.to_order(L));

  const Rat scale = make_rat(1, Int(H.order()));
  ClassFunction out;
  out.values.reserve(static_cast<std::size_t>(kG));
  for (long j = 0; j < kG; ++j) {
    const long g = GC.reps[static_cast<std::size_t>(j)];
    std::vector<long> count(static_cast<std::size_t>(kH), 0);
    for (long x = 0; x < G.order(); ++x) {
      const long h = back[static_cast<std::size_t>(G.conjugate(x, g))];  // x g x^{-1}
      if (h >= 0) ++count[static_cast<std::size_t>(HC.class_of[static_cast<std::size_t>(h)])];
    }
    Cyclotomic acc(L);
    for (long c = 0; c < kH; ++c)
      if (count[static_cast<std::size_t>(c)] != 0) acc += Int(count[static_cast<std::size_t>(c)]) * lifted[static_cast<std::size_t>(c)];
    out.values.push_back(scale * acc);
  }
  return out;
}

inline CharacterTable product_table(const CharacterTable& A, const CharacterTable& B) {
  const long kA = A.num_classes();
  const long kB = B.num_classes();
  if (Int(kA) * Int(kB) > 4096) throw CapacityError("product table would exceed 4096 classes");
  const long L = std::lcm(A.exponent, B.exponent);

  std::vector<std::vector<Cyclotomic>> liftA(static_cast<std::size_t>(kA));
  for (long i = 0; i < kA; ++i)
    for (long c = 0; c < kA; ++c)
      liftA[static_cast<std::size_t>(i)].push_back(A.chars[static_cast<std::size_t>(i)][static_cast<std::size_t>(c)].to_order(L));
  std::vector<std::vector<Cyclotomic>> liftB(static_cast<std::size_t>(kB));
  for (long i = 0; i < kB; ++i)
    for (long c = 0; c < kB; ++c)
      liftB[static_cast<std::size_t>(i)].push_back(B.chars[static_cast<std::size_t>(i)][static_cast<std::size_t>(c)].to_order(L));

  CharacterTable T;
  T.group_order = A.group_order * B.group_order;
  T.exponent = L;
  for (long cA = 0; cA < kA; ++cA)
    for (long cB = 0; cB < kB; ++cB) {
      T.sizes.push_back(A.sizes[static_cast<std::size_t>(cA)] * B.sizes[static_cast<std::size_t>(cB)]);
      T.orders.push_back(std::lcm(A.orders[static_cast<std::size_t>(cA)], B.orders[static_cast<std::size_t>(cB)]));
      T.inverse_class.push_back(A.inverse_class[static_cast<std::size_t>(cA)] * kB + B.inverse_class[static_cast<std::size_t>(cB)]);
    }
  for (long iA = 0; iA < kA; ++iA)
    for (long iB = 0; iB < kB; ++iB) {
      std::vector<Cyclotomic> row;
      row.reserve(static_cast<std::size_t>(kA) * static_cast<std::size_t>(kB));
      for (long cA = 0; cA < kA; ++cA)
        for (long cB = 0; cB < kB; ++cB)
          row.push_back(liftA[static_cast<std::size_t>(iA)][static_cast<std::size_t>(cA)] *
                        liftB[static_cast<std::size_t>(iB)][static_cast<std::size_t>(cB)]);
      T.chars.push_back(std::move(row));
      T.degrees.push_back(A.degrees[static_cast<std::size_t>(iA)] * B.degrees[static_cast<std::size_t>(iB)]);
    }
  return T;
}

// Equality up to simultaneous row/column permutation and per-row Galois
// conjugacy (the freedom a printed table has: ad-hoc ordering plus an
// arbitrary choice within each conjugate pair of characters).
inline bool tables_match(const CharacterTable& A, const CharacterTable& B) {
  const long k = A.num_classes();
  if (B.num_classes() != k || A.group_order != B.group_order || A.exponent != B.exponent) return false;

  {
    std::vector<Int> da = A.degrees, db = B.degrees;
    std::sort(da.begin(), da.end());
    std::sort(db.begin(), db.end());
    if (da != db) return false;
  }

  using ColKey = std::pair<long, Int>;  // (element order, class size)
  std::map<ColKey, std::vector<long>> ga, gb;
  for (long c = 0; c < k; ++c) {
    ga[{A.orders[static_cast<std::size_t>(c)], A.sizes[static_cast<std::size_t>(c)]}].push_back(c);
    gb[{B.orders[static_cast<std::size_t>(c)], B.sizes[static_cast<std::size_t>(c)]}].push_back(c);
  }
  if (ga.size() != gb.size()) return false;
  std::vector<std::pair<std::vector<long>, std::vector<long>>> groups;
  for (auto ia = ga.begin(), ib = gb.begin(); ia != ga.end(); ++ia, ++ib) {
    if (ia->first != ib->first || ia->second.size() != ib->second.size()) return false;
    groups.emplace_back(ia->second, ib->second);
  }

  // Galois variants of each A row (deduplicated).
  const long n = A.exponent;
  std::vector<std::vector<std::vector<Cyclotomic>>> variants(static_cast<std::size_t>(k));
  for (long i = 0; i < k; ++i) {
    for (long e = 1; e <= n; ++e) {
      if (std::gcd(e, n) != 1) continue;
      std::vector<Cyclotomic> row;
      row.reserve(static_cast<std::size_t>(k));
      for (long c = 0; c < k; ++c)
        row.push_back(A.chars[static_cast<std::size_t>(i)][static_cast<std::size_t>(c)].galois(e));
      bool dup = false;
      for (const auto& prev : variants[static_cast<std::size_t>(i)])
        if (prev == row) {
          dup = true;
          break;
        }
      if (!dup) variants[static_cast<std::size_t>(i)].push_back(std::move(row));
    }
  }

  std::vector<long> sigma(static_cast<std::size_t>(k), -1);  // A column -> B column

  // Kuhn's augmenting-path matching over rows for a fixed column bijection.
  auto rows_match = [&]() -> bool {
    std::vector<std::vector<long>> adj(static_cast<std::size_t>(k));
    for (long i = 0; i < k; ++i)
      for (long j = 0; j < k; ++j) {
        if (A.degrees[static_cast<std::size_t>(i)] != B.degrees[static_cast<std::size_t>(j)]) continue;
        bool any = false;
        for (const auto& v : variants[static_cast<std::size_t>(i)]) {
          bool all = true;
          for (long c = 0; c < k; ++c)
            if (!(v[static_cast<std::size_t>(c)] ==
                  B.chars[static_cast<std::size_t>(j)][static_cast<std::size_t>(sigma[static_cast<std::size_t>(c)])])) {
              all = false;
              break;
            }
          if (all) {
            any = true;
            break;
          }
        }
        if (any) adj[static_cast<std::size_t>(i)].push_back(j);
      }
    std::vector<long> match_b(static_cast<std::size_t>(k), -1);
    std::vector<char> seen;
    std::function<bool(long)> augment = [&](long i) -> bool {
      for (long j : adj[static_cast<std::size_t>(i)]) {
        if (seen[static_cast<std::size_t>(j)]) continue;
        seen[static_cast<std::size_t>(j)] = 1;
        if (match_b[static_cast<std::size_t>(j)] < 0 || augment(match_b[static_cast<std::size_t>(j)])) {
          match_b[static_cast<std::size_t>(j)] = i;
          return true;
        }
      }
      return false;
    };
    for (long i = 0; i < k; ++i) {
      seen.assign(static_cast<std::size_t>(k), 0);
      if (!augment(i)) return false;
    }
    return true;
  };

  std::function<bool(std::size_t)> assign = [&](std::size_t gi) -> bool {
    if (gi == groups.size()) return rows_match();
    const auto& [acols, bcols] = groups[gi];
    std::vector<long> perm = bcols;
    std::sort(perm.begin(), perm.end());
    do {
      for (std::size_t t = 0; t < acols.size(); ++t) sigma[static_cast<std::size_t>(acols[t])] = perm[t];
      if (assign(gi + 1)) return true;
    } while (std::next_permutation(perm.begin(), perm.end()));
    for (long c : acols) sigma[static_cast<std::size_t>(c)] = -1;
    return false;
  };

  return assign(0);
}

}  // namespace knutson
