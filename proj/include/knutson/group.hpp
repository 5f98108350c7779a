#pragma once
// Small finite permutation groups by full element enumeration: conjugacy
// classes, power maps, Sylow subgroups, and subgroup class fusion.
//
// Everything is O(|G|)-ish by brute scan.  That is a deliberate trade: all
// groups of interest stay below ORDER_CAP, where full enumeration makes
// normalizer and centralizer computations trivially correct.

#include <knutson/common.hpp>

#include <algorithm>
#include <map>
#include <numeric>
#include <sstream>

namespace knutson {

// Hard ceiling on |G|.  Covers every catalogued group (max 5040 = S7) with
// room for direct products; keeps the O(|G|^2)-ish scans tractable.
inline constexpr long ORDER_CAP = 20000;

struct Permutation {
  std::vector<long> images;  // i -> images[i], a bijection on 0..deg-1

  Permutation() = default;
  explicit Permutation(std::vector<long> im) : images(std::move(im)) {
    std::vector<char> seen(images.size(), 0);
    for (long v : images) {
      if (v < 0 || v >= static_cast<long>(images.size()) || seen[v])
        throw StructuralError("permutation images are not a bijection");
      seen[v] = 1;
    }
  }

  static Permutation identity(long deg) {
    std::vector<long> im(deg);
    std::iota(im.begin(), im.end(), 0);
    return Permutation(std::move(im));
  }

  // Cycle notation helper: unlisted points are fixed.
  static Permutation from_cycles(long deg, const std::vector<std::vector<long>>& cycles) {
    std::vector<long> im(deg);
    std::iota(im.begin(), im.end(), 0);
    for (const auto& cy : cycles)
      for (std::size_t i = 0; i < cy.size(); ++i) {
        long from = cy[i], to = cy[(i + 1) % cy.size()];
        if (from < 0 || from >= deg) throw StructuralError("cycle point out of range");
        im[from] = to;
      }
    return Permutation(std::move(im));
  }

  long degree() const { return static_cast<long>(images.size()); }
  long apply(long p) const { return images[p]; }
  bool is_identity() const {
    for (long i = 0; i < degree(); ++i)
      if (images[i] != i) return false;
    return true;
  }

  Permutation inverse() const {
    std::vector<long> im(images.size());
    for (long i = 0; i < degree(); ++i) im[images[i]] = i;
    Permutation p;
    p.images = std::move(im);  // bijection by construction, skip re-check
    return p;
  }

  // Composition: (x*y)(p) = x(y(p)), i.e. y acts first.
  friend Permutation operator*(const Permutation& x, const Permutation& y) {
    if (x.degree() != y.degree()) throw StructuralError("permutation degree mismatch");
    Permutation z;
    z.images.resize(x.images.size());
    for (long i = 0; i < x.degree(); ++i) z.images[i] = x.images[y.images[i]];
    return z;
  }

  friend bool operator==(const Permutation& x, const Permutation& y) { return x.images == y.images; }
  friend bool operator<(const Permutation& x, const Permutation& y) { return x.images < y.images; }

  // Order = lcm of cycle lengths; no group context needed.
  long order() const {
    std::vector<char> seen(images.size(), 0);
    long ord = 1;
    for (long s = 0; s < degree(); ++s) {
      if (seen[s]) continue;
      long len = 0, p = s;
      while (!seen[p]) {
        seen[p] = 1;
        p = images[p];
        ++len;
      }
      ord = std::lcm(ord, len);
    }
    return ord;
  }

  std::string to_string() const {
    std::ostringstream os;
    os << '[';
    for (long i = 0; i < degree(); ++i) os << (i ? "," : "") << images[i];
    os << ']';
    return os.str();
  }
};

// A fully enumerated permutation group.  Element 0 is the identity; the
// element order is canonical (BFS over words in the generators, extending on
// the right, generators tried in their given order), so two runs over the
// same generator list produce byte-identical element tables.
struct FiniteGroup {
  long degree = 0;
  std::vector<Permutation> generators;
  std::vector<Permutation> elements;

  long order() const { return static_cast<long>(elements.size()); }

  bool contains(const Permutation& p) const { return index_.count(p.images) != 0; }

  long index_of(const Permutation& p) const {
    auto it = index_.find(p.images);
    if (it == index_.end()) throw DomainError("permutation is not a group element");
    return it->second;
  }

  long mul(long i, long j) const { return index_of(elements[i] * elements[j]); }
  long inv(long i) const { return index_of(elements[i].inverse()); }
  long conjugate(long g, long x) const { return index_of(elements[g] * elements[x] * elements[g].inverse()); }

  long power(long g, long e) const {
    if (e < 0) throw DomainError("negative exponent");
    Permutation acc = Permutation::identity(degree);
    Permutation base = elements[g];
    while (e > 0) {
      if (e & 1) acc = acc * base;
      base = base * base;
      e >>= 1;
    }
    return index_of(acc);
  }

  std::map<std::vector<long>, long> index_;  // images -> element index
};

inline FiniteGroup enumerate(const std::vector<Permutation>& generators) {
  if (generators.empty()) throw StructuralError("enumerate needs at least one generator (use the identity)");
  const long deg = generators[0].degree();
  for (const auto& g : generators)
    if (g.degree() != deg) throw StructuralError("generators have mixed degrees");

  FiniteGroup G;
  G.degree = deg;
  G.generators = generators;
  G.elements.push_back(Permutation::identity(deg));
  G.index_[G.elements[0].images] = 0;
  for (std::size_t head = 0; head < G.elements.size(); ++head) {
    for (const auto& g : generators) {
      Permutation next = G.elements[head] * g;
      if (G.index_.count(next.images)) continue;
      if (static_cast<long>(G.elements.size()) >= ORDER_CAP)
        throw CapacityError("group order exceeds ORDER_CAP");
      G.index_[next.images] = static_cast<long>(G.elements.size());
      G.elements.push_back(std::move(next));
    }
  }
  return G;
}

inline long element_order(const FiniteGroup& G, long g) { return G.elements[g].order(); }

inline long exponent(const FiniteGroup& G) {
  long e = 1;
  for (const auto& p : G.elements) e = std::lcm(e, p.order());
  return e;
}

// Conjugacy classes, deterministically ordered by (element order, class size,
// smallest member index).  Class 0 is always {identity}.
struct ConjugacyData {
  std::vector<long> class_of;       // element index -> class index
  std::vector<long> reps;           // class index -> smallest member element index
  std::vector<long> sizes;          // class index -> |class|
  std::vector<long> orders;         // class index -> element order of members
  std::vector<long> inverse_class;  // class index -> class of inverses

  long num_classes() const { return static_cast<long>(reps.size()); }

  // Class of g^e for g in class c; well-defined because conjugation commutes
  // with powers.
  std::vector<long> power_map(const FiniteGroup& G, long e) const {
    std::vector<long> pm(reps.size());
    for (std::size_t c = 0; c < reps.size(); ++c) pm[c] = class_of[G.power(reps[c], e)];
    return pm;
  }
};

inline ConjugacyData conjugacy(const FiniteGroup& G) {
  const long n = G.order();
  std::vector<long> raw_class(n, -1);
  std::vector<std::vector<long>> members;

  std::vector<Permutation> gen_inv;
  gen_inv.reserve(G.generators.size());
  for (const auto& g : G.generators) gen_inv.push_back(g.inverse());

  for (long start = 0; start < n; ++start) {
    if (raw_class[start] >= 0) continue;
    const long cls = static_cast<long>(members.size());
    members.push_back({start});
    raw_class[start] = cls;
    // Orbit of the conjugation action; generators suffice to span it.
    for (std::size_t head = 0; head < members[cls].size(); ++head) {
      const Permutation& x = G.elements[members[cls][head]];
      for (std::size_t gi = 0; gi < G.generators.size(); ++gi) {
        long y = G.index_of(G.generators[gi] * x * gen_inv[gi]);
        if (raw_class[y] >= 0) continue;
        raw_class[y] = cls;
        members[cls].push_back(y);
      }
    }
  }

  // Sort classes by (order, size, min element index); min index is unique,
  // so the order is total and run-to-run stable.
  const long m = static_cast<long>(members.size());
  std::vector<long> by(m);
  std::iota(by.begin(), by.end(), 0);
  auto key = [&](long c) {
    return std::tuple<long, long, long>(G.elements[members[c][0]].order(),
                                        static_cast<long>(members[c].size()), members[c][0]);
  };
  std::sort(by.begin(), by.end(), [&](long a, long b) { return key(a) < key(b); });

  ConjugacyData C;
  C.class_of.assign(n, -1);
  C.reps.resize(m);
  C.sizes.resize(m);
  C.orders.resize(m);
  for (long newc = 0; newc < m; ++newc) {
    long oldc = by[newc];
    C.reps[newc] = members[oldc][0];
    C.sizes[newc] = static_cast<long>(members[oldc].size());
    C.orders[newc] = G.elements[members[oldc][0]].order();
    for (long e : members[oldc]) C.class_of[e] = newc;
  }
  C.inverse_class.resize(m);
  for (long c = 0; c < m; ++c) C.inverse_class[c] = C.class_of[G.inv(C.reps[c])];
  return C;
}

// A subgroup together with its element-wise inclusion into the parent.
// `fusion` (subgroup class -> parent class) starts empty and is filled by
// fusion().
struct SubgroupEmbedding {
  FiniteGroup subgroup;
  std::vector<long> inclusion;  // subgroup element index -> parent element index
  std::vector<long> fusion;
};

// Sylow p-subgroup by normalizer extension: start from a cyclic p-subgroup
// and, while too small, scan N_G(P) for a p-element outside P.  Sylow theory
// guarantees such an element exists whenever |P| is not yet the full p-part.
inline SubgroupEmbedding sylow(const FiniteGroup& G, long p) {
  if (p < 2 || !is_prime(p)) throw DomainError("sylow requires a prime");
  long p_part = 1, rest = G.order();
  while (rest % p == 0) {
    rest /= p;
    p_part *= p;
  }
  if (p_part == 1) throw DomainError("prime does not divide the group order");

  // Seed: a p-element obtained by powering any element of order divisible by p.
  Permutation seed = Permutation::identity(G.degree);
  for (const auto& e : G.elements) {
    long o = e.order();
    if (o % p != 0) continue;
    long q = o;
    while (q % p == 0) q /= p;
    // e^q has order the p-part of o.
    Permutation s = Permutation::identity(G.degree);
    for (long i = 0; i < q; ++i) s = s * e;
    seed = s;
    break;
  }

  std::vector<Permutation> gens{seed};
  FiniteGroup P = enumerate(gens);
  while (P.order() < p_part) {
    bool extended = false;
    for (const auto& g : G.elements) {
      // Normalizer membership: conjugating P's generators stays inside P.
      bool normalizes = true;
      Permutation gi = g.inverse();
      for (const auto& h : gens)
        if (!P.contains(g * h * gi)) {
          normalizes = false;
          break;
        }
      if (!normalizes) continue;
      long o = g.order();
      bool p_elem = true;
      long q = o;
      while (q > 1) {
        if (q % p != 0) {
          p_elem = false;
          break;
        }
        q /= p;
      }
      if (!p_elem || P.contains(g)) continue;
      gens.push_back(g);
      P = enumerate(gens);
      extended = true;
      break;
    }
    if (!extended)
      throw InternalInconsistencyError("Sylow extension found no p-element in the normalizer");
  }

  SubgroupEmbedding emb;
  emb.inclusion.resize(P.order());
  for (long i = 0; i < P.order(); ++i) emb.inclusion[i] = G.index_of(P.elements[i]);
  emb.subgroup = std::move(P);
  return emb;
}

// Identity embedding of G into itself (handy for tests and the CLI).
inline SubgroupEmbedding self_embedding(const FiniteGroup& G) {
  SubgroupEmbedding emb;
  emb.subgroup = G;
  emb.inclusion.resize(G.order());
  std::iota(emb.inclusion.begin(), emb.inclusion.end(), 0);
  return emb;
}

// Class fusion: each subgroup class lands in the unique parent class
// containing its image.  Verifies that `inclusion` is an injective
// homomorphism (on generators against all subgroup elements, which spans all
// products) before trusting it; stores and returns the map.
inline const std::vector<long>& fusion(const FiniteGroup& G, const ConjugacyData& GC,
                                       SubgroupEmbedding& emb, const ConjugacyData& HC) {
  const FiniteGroup& H = emb.subgroup;
  if (static_cast<long>(emb.inclusion.size()) != H.order())
    throw StructuralError("inclusion map has wrong length");
  {
    std::vector<long> sorted = emb.inclusion;
    std::sort(sorted.begin(), sorted.end());
    if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end())
      throw StructuralError("inclusion map is not injective");
    if (sorted.front() < 0 || sorted.back() >= G.order())
      throw StructuralError("inclusion map hits indices outside the parent");
  }
  for (const auto& gperm : H.generators) {
    long g = H.index_of(gperm);
    for (long h = 0; h < H.order(); ++h)
      if (emb.inclusion[H.mul(g, h)] != G.mul(emb.inclusion[g], emb.inclusion[h]))
        throw StructuralError("inclusion map is not a homomorphism");
  }
  emb.fusion.resize(HC.num_classes());
  for (long c = 0; c < HC.num_classes(); ++c)
    emb.fusion[c] = GC.class_of[emb.inclusion[HC.reps[c]]];
  return emb.fusion;
}

// Direct product on disjoint point sets.
inline FiniteGroup direct_product(const FiniteGroup& G, const FiniteGroup& H) {
  if (G.order() > ORDER_CAP / std::max<long>(H.order(), 1))
    throw CapacityError("direct product order exceeds ORDER_CAP");
  const long dg = G.degree, dh = H.degree;
  std::vector<Permutation> gens;
  auto lift = [&](const Permutation& p, bool left) {
    std::vector<long> im(dg + dh);
    std::iota(im.begin(), im.end(), 0);
    if (left)
      for (long i = 0; i < dg; ++i) im[i] = p.images[i];
    else
      for (long i = 0; i < dh; ++i) im[dg + i] = dg + p.images[i];
    return Permutation(std::move(im));
  };
  for (const auto& g : G.generators) gens.push_back(lift(g, true));
  for (const auto& h : H.generators) gens.push_back(lift(h, false));
  FiniteGroup P = enumerate(gens);
  if (P.order() != G.order() * H.order())
    throw InternalInconsistencyError("direct product order mismatch");
  return P;
}

}  // namespace knutson
