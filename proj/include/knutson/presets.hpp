#pragma once
// Named group presets: symmetric/alternating/cyclic/dihedral/dicyclic
// families, extraspecial 3-groups, SL2/PSL2 over small fields, and the
// order-72 / order-120 groups used as counter-examples.
//
// Constructions are validated, not assumed: each build is checked against a
// recorded fingerprint (order, exponent, multiset of conjugacy class
// (order, size) pairs) where one is on file, or against the family's order
// formula otherwise.  A mismatch is an internal inconsistency, never silent.

#include <knutson/group.hpp>

#include <array>
#include <functional>
#include <string>

namespace knutson::presets {

namespace detail {

// ---------------------------------------------------------------------------
// Small finite fields GF(p^k) for q <= 11, table-driven.  Elements are codes
// 0..q-1 encoding coefficient tuples little-endian base p.
struct SmallField {
  long p = 0, k = 1, q = 0;
  std::vector<long> add_t, mul_t;  // q*q tables

  long add(long a, long b) const { return add_t[a * q + b]; }
  long mul(long a, long b) const { return mul_t[a * q + b]; }
  long neg(long a) const {
    for (long b = 0; b < q; ++b)
      if (add(a, b) == 0) return b;
    throw InternalInconsistencyError("field negation failed");
  }
  long inv(long a) const {
    for (long b = 1; b < q; ++b)
      if (mul(a, b) == 1) return b;
    throw DomainError("field inversion of zero");
  }
};

inline SmallField make_field(long q) {
  SmallField F;
  F.q = q;
  // Reduction rows: x^k = red[0] + red[1] x + ...  (irreducible choices)
  std::vector<long> red;
  switch (q) {
    case 2: case 3: case 5: case 7: case 11:
      F.p = q;
      F.k = 1;
      break;
    case 4:
      F.p = 2; F.k = 2; red = {1, 1};  // x^2 = x + 1
      break;
    case 8:
      F.p = 2; F.k = 3; red = {1, 1, 0};  // x^3 = x + 1
      break;
    case 9:
      F.p = 3; F.k = 2; red = {2, 0};  // x^2 = -1
      break;
    default:
      throw DomainError("unsupported field size");
  }
  auto digits = [&](long code) {
    std::vector<long> d(F.k);
    for (long i = 0; i < F.k; ++i) {
      d[i] = code % F.p;
      code /= F.p;
    }
    return d;
  };
  auto encode = [&](const std::vector<long>& d) {
    long code = 0;
    for (long i = F.k - 1; i >= 0; --i) code = code * F.p + d[i];
    return code;
  };
  F.add_t.resize(q * q);
  F.mul_t.resize(q * q);
  for (long a = 0; a < q; ++a)
    for (long b = 0; b < q; ++b) {
      auto da = digits(a), db = digits(b);
      std::vector<long> sum(F.k);
      for (long i = 0; i < F.k; ++i) sum[i] = (da[i] + db[i]) % F.p;
      F.add_t[a * q + b] = encode(sum);
      std::vector<long> prod(2 * F.k - 1, 0);
      for (long i = 0; i < F.k; ++i)
        for (long j = 0; j < F.k; ++j) prod[i + j] = (prod[i + j] + da[i] * db[j]) % F.p;
      for (long i = 2 * F.k - 2; i >= F.k; --i) {
        long c = prod[i];
        if (c == 0) continue;
        prod[i] = 0;
        for (long j = 0; j < F.k; ++j) prod[i - F.k + j] = (prod[i - F.k + j] + c * red[j]) % F.p;
      }
      prod.resize(F.k);
      F.mul_t[a * q + b] = encode(prod);
    }
  return F;
}

// SL2(Fq) acting on the q^2-1 nonzero column vectors (a,b), encoded a*q+b.
inline Permutation sl2_perm(const SmallField& F, std::array<long, 4> M) {
  const long q = F.q;
  std::vector<long> im(q * q - 1);
  for (long a = 0; a < q; ++a)
    for (long b = 0; b < q; ++b) {
      if (a == 0 && b == 0) continue;
      long x = F.add(F.mul(M[0], a), F.mul(M[1], b));
      long y = F.add(F.mul(M[2], a), F.mul(M[3], b));
      im[a * q + b - 1] = x * q + y - 1;
    }
  return Permutation(std::move(im));
}

// PSL2(Fq) acting on the projective line: points 0..q-1 are [t : 1], point q
// is [1 : 0].
inline Permutation psl2_perm(const SmallField& F, std::array<long, 4> M) {
  const long q = F.q;
  std::vector<long> im(q + 1);
  auto image = [&](long x, long y) { return y == 0 ? q : F.mul(x, F.inv(y)); };
  for (long t = 0; t < q; ++t)
    im[t] = image(F.add(F.mul(M[0], t), M[1]), F.add(F.mul(M[2], t), M[3]));
  im[q] = image(M[0], M[2]);
  return Permutation(std::move(im));
}

inline std::vector<std::array<long, 4>> sl2_generator_matrices(const SmallField& F) {
  std::vector<std::array<long, 4>> gens;
  // Transvections [[1, x^j], [0, 1]] for a basis of Fq over Fp, plus the Weyl
  // element [[0, 1], [-1, 0]]; together these generate all of SL2(Fq).
  long xj = 1;
  for (long j = 0; j < F.k; ++j) {
    gens.push_back({1, xj, 0, 1});
    xj = F.mul(xj, F.p % F.q);  // next power of the adjoined root
  }
  gens.push_back({0, 1, F.neg(1), 0});
  return gens;
}

// ---------------------------------------------------------------------------
// Abstract models realized through their left-regular representation.  The
// element set is enumerated by BFS from the identity; each generator becomes
// the permutation x -> g*x of that set.
using Code = std::array<long, 4>;
using Mult = std::function<Code(const Code&, const Code&)>;

inline FiniteGroup regular_model(const Code& id, const std::vector<Code>& gens, const Mult& mult) {
  std::vector<Code> elems{id};
  std::map<Code, long> index{{id, 0}};
  for (std::size_t head = 0; head < elems.size(); ++head)
    for (const Code& g : gens) {
      Code next = mult(elems[head], g);
      if (index.emplace(next, static_cast<long>(elems.size())).second) elems.push_back(next);
      if (static_cast<long>(elems.size()) > ORDER_CAP)
        throw CapacityError("abstract model exceeds ORDER_CAP");
    }
  std::vector<Permutation> perm_gens;
  for (const Code& g : gens) {
    std::vector<long> im(elems.size());
    for (std::size_t x = 0; x < elems.size(); ++x) im[x] = index.at(mult(g, elems[x]));
    perm_gens.push_back(Permutation(std::move(im)));
  }
  FiniteGroup G = enumerate(perm_gens);
  if (G.order() != static_cast<long>(elems.size()))
    throw InternalInconsistencyError("left-regular model order mismatch");
  return G;
}

// Dihedral factor of order 2m as pairs (i, j) = r^i s^j.
inline long dih_i(long m, long i, long j, long i2) { return (i + (j ? m - i2 : i2)) % m; }

// Quaternion multiplication on (sign, axis) pairs; axes 0=1, 1=i, 2=j, 3=k.
inline constexpr long q8_ax[4][4] = {{0, 1, 2, 3}, {1, 0, 3, 2}, {2, 3, 0, 1}, {3, 2, 1, 0}};
inline constexpr long q8_sg[4][4] = {{0, 0, 0, 0}, {0, 1, 0, 1}, {0, 1, 1, 0}, {0, 0, 1, 1}};

inline FiniteGroup build_q8() {
  Mult mult = [](const Code& a, const Code& b) {
    return Code{a[0] ^ b[0] ^ q8_sg[a[1]][b[1]], q8_ax[a[1]][b[1]], 0, 0};
  };
  return regular_model({0, 0, 0, 0}, {{0, 1, 0, 0}, {0, 2, 0, 0}}, mult);
}

inline FiniteGroup build_dic(long n) {
  // <a, b | a^{2n} = 1, b^2 = a^n, b a b^{-1} = a^{-1}>, elements a^i b^j.
  Mult mult = [n](const Code& x, const Code& y) {
    long i = x[0], j = x[1], i2 = y[0], j2 = y[1];
    if (j == 0) return Code{(i + i2) % (2 * n), j2, 0, 0};
    long t = (i - i2 + 2 * n) % (2 * n);
    if (j2 == 0) return Code{t, 1, 0, 0};
    return Code{(t + n) % (2 * n), 0, 0, 0};
  };
  return regular_model({0, 0, 0, 0}, {{1, 0, 0, 0}, {0, 1, 0, 0}}, mult);
}

inline FiniteGroup build_es27(int exponent_kind) {
  if (exponent_kind == 3) {
    // Heisenberg group over F3: (a, b, c) with c picking up a*b'.
    Mult mult = [](const Code& x, const Code& y) {
      return Code{(x[0] + y[0]) % 3, (x[1] + y[1]) % 3, (x[2] + y[2] + x[0] * y[1]) % 3, 0};
    };
    return regular_model({0, 0, 0, 0}, {{1, 0, 0, 0}, {0, 1, 0, 0}}, mult);
  }
  // C9 : C3 with the order-3 automorphism x -> 4x.
  Mult mult = [](const Code& x, const Code& y) {
    long scale = 1;
    for (long r = 0; r < x[1]; ++r) scale = scale * 4 % 9;
    return Code{(x[0] + y[0] * scale) % 9, (x[1] + y[1]) % 3, 0, 0};
  };
  return regular_model({0, 0, 0, 0}, {{1, 0, 0, 0}, {0, 1, 0, 0}}, mult);
}

// (C3 x C3) : D8 -- the "D12 * S3" group of order 72: r negates both
// coordinates, s negates the second.
inline FiniteGroup build_d12_s3() {
  Mult mult = [](const Code& x, const Code& y) {
    long sx = x[2] % 2 ? 2 : 1, sy = (x[2] + x[3]) % 2 ? 2 : 1;
    return Code{(x[0] + sx * y[0]) % 3, (x[1] + sy * y[1]) % 3, dih_i(4, x[2], x[3], y[2]),
                (x[3] + y[3]) % 2};
  };
  return regular_model({0, 0, 0, 0},
                       {{1, 0, 0, 0}, {0, 1, 0, 0}, {0, 0, 1, 0}, {0, 0, 0, 1}}, mult);
}

// C3 : D24 of order 72: the rotation inverts C3, the reflection acts trivially.
inline FiniteGroup build_c3_d24() {
  Mult mult = [](const Code& x, const Code& y) {
    long s = x[1] % 2 ? 2 : 1;
    return Code{(x[0] + s * y[0]) % 3, dih_i(12, x[1], x[2], y[1]), (x[2] + y[2]) % 2, 0};
  };
  return regular_model({0, 0, 0, 0}, {{1, 0, 0, 0}, {0, 1, 0, 0}, {0, 0, 1, 0}}, mult);
}

// (C3 x C3) : Q8 of order 72: i negates the first coordinate, j the second,
// k both (the action factors through Q8 / {+-1}).
inline FiniteGroup build_c32_2q8() {
  Mult mult = [](const Code& x, const Code& y) {
    long a = x[3];
    long sx = (a == 1 || a == 3) ? 2 : 1, sy = (a == 2 || a == 3) ? 2 : 1;
    return Code{(x[0] + sx * y[0]) % 3, (x[1] + sy * y[1]) % 3, x[2] ^ y[2] ^ q8_sg[a][y[3]],
                q8_ax[a][y[3]]};
  };
  return regular_model({0, 0, 0, 0},
                       {{1, 0, 0, 0}, {0, 1, 0, 0}, {0, 0, 0, 1}, {0, 0, 0, 2}}, mult);
}

// C15 : D8 variants of order 120.  The D8 generators act on Z/15 by unit
// multipliers: 11 inverts mod 3, 4 inverts mod 5, 14 inverts both.
inline FiniteGroup build_c15_d8(long mult_r, long mult_s) {
  Mult mult = [mult_r, mult_s](const Code& x, const Code& y) {
    long m = 1;
    for (long r = 0; r < x[1]; ++r) m = m * mult_r % 15;
    if (x[2]) m = m * mult_s % 15;
    return Code{(x[0] + m * y[0]) % 15, dih_i(4, x[1], x[2], y[1]), (x[2] + y[2]) % 2, 0};
  };
  return regular_model({0, 0, 0, 0}, {{1, 0, 0, 0}, {0, 1, 0, 0}, {0, 0, 1, 0}}, mult);
}

// C15 : Q8 of order 120: i acts by 11, j by 4 (and so k by 14).  Codes are
// (c15, axis, sign, 0).
inline FiniteGroup build_c15_q8() {
  Mult mult = [](const Code& x, const Code& y) {
    static constexpr long axis_mult[4] = {1, 11, 4, 14};
    long m = axis_mult[x[1]];
    return Code{(x[0] + m * y[0]) % 15, q8_ax[x[1]][y[1]], x[2] ^ y[2] ^ q8_sg[x[1]][y[1]], 0};
  };
  return regular_model({0, 0, 0, 0}, {{1, 0, 0, 0}, {0, 1, 0, 0}, {0, 2, 0, 0}}, mult);
}

// ---------------------------------------------------------------------------
// Recorded fingerprints: order, exponent, sorted (element order, class size)
// pairs.  These pin the constructions to the intended isomorphism types.
struct Fingerprint {
  long order;
  long exponent;
  std::vector<std::pair<long, long>> classes;
};

inline const std::map<std::string, Fingerprint>& fingerprints() {
  static const std::map<std::string, Fingerprint> table = {
      {"Dic2", {8, 4, {{1,1},{2,1},{4,2},{4,2},{4,2}}}},
      {"Dic3", {12, 12, {{1,1},{2,1},{3,2},{4,3},{4,3},{6,2}}}},
      {"Dic6", {24, 12, {{1,1},{2,1},{3,2},{4,2},{4,6},{4,6},{6,2},{12,2},{12,2}}}},
      {"S4", {24, 12, {{1,1},{2,3},{2,6},{3,8},{4,6}}}},
      {"D8", {8, 4, {{1,1},{2,1},{2,2},{2,2},{4,2}}}},
      {"ES27_3", {27, 3, {{1,1},{3,1},{3,1},{3,3},{3,3},{3,3},{3,3},{3,3},{3,3},{3,3},{3,3}}}},
      {"ES27_9", {27, 9, {{1,1},{3,1},{3,1},{3,3},{3,3},{9,3},{9,3},{9,3},{9,3},{9,3},{9,3}}}},
      {"SL2_2", {6, 6, {{1,1},{2,3},{3,2}}}},
      {"SL2_3", {24, 12, {{1,1},{2,1},{3,4},{3,4},{4,6},{6,4},{6,4}}}},
      {"SL2_4", {60, 30, {{1,1},{2,15},{3,20},{5,12},{5,12}}}},
      {"SL2_5", {120, 60, {{1,1},{2,1},{3,20},{4,30},{5,12},{5,12},{6,20},{10,12},{10,12}}}},
      {"SL2_7", {336, 168, {{1,1},{2,1},{3,56},{4,42},{6,56},{7,24},{7,24},{8,42},{8,42},{14,24},{14,24}}}},
      {"SL2_8", {504, 126, {{1,1},{2,63},{3,56},{7,72},{7,72},{7,72},{9,56},{9,56},{9,56}}}},
      {"SL2_9", {720, 120, {{1,1},{2,1},{3,40},{3,40},{4,90},{5,72},{5,72},{6,40},{6,40},{8,90},{8,90},{10,72},{10,72}}}},
      {"SL2_11", {1320, 660, {{1,1},{2,1},{3,110},{4,110},{5,132},{5,132},{6,110},{10,132},{10,132},{11,60},{11,60},{12,110},{12,110},{22,60},{22,60}}}},
      {"PSL2_2", {6, 6, {{1,1},{2,3},{3,2}}}},
      {"PSL2_3", {12, 6, {{1,1},{2,3},{3,4},{3,4}}}},
      {"PSL2_4", {60, 30, {{1,1},{2,15},{3,20},{5,12},{5,12}}}},
      {"PSL2_5", {60, 30, {{1,1},{2,15},{3,20},{5,12},{5,12}}}},
      {"PSL2_7", {168, 84, {{1,1},{2,21},{3,56},{4,42},{7,24},{7,24}}}},
      {"PSL2_8", {504, 126, {{1,1},{2,63},{3,56},{7,72},{7,72},{7,72},{9,56},{9,56},{9,56}}}},
      {"PSL2_9", {360, 60, {{1,1},{2,45},{3,40},{3,40},{4,90},{5,72},{5,72}}}},
      {"PSL2_11", {660, 330, {{1,1},{2,55},{3,110},{5,132},{5,132},{6,110},{11,60},{11,60}}}},
      {"D12_S3", {72, 12, {{1,1},{2,1},{2,6},{2,6},{3,2},{3,2},{3,4},{4,18},{6,2},{6,2},{6,4},{6,6},{6,6},{6,6},{6,6}}}},
      {"C3_D24", {72, 12, {{1,1},{2,1},{2,6},{2,18},{3,2},{3,2},{3,4},{4,6},{6,2},{6,2},{6,4},{6,6},{6,6},{12,6},{12,6}}}},
      {"C32_2Q8", {72, 12, {{1,1},{2,1},{3,2},{3,2},{3,4},{4,6},{4,6},{4,18},{6,2},{6,2},{6,4},{12,6},{12,6},{12,6},{12,6}}}},
      {"C15_D8", {120, 60, {{1,1},{2,1},{2,6},{2,10},{3,2},{4,30},{5,2},{5,2},{6,2},{6,10},{6,10},{10,2},{10,2},{10,6},{10,6},{10,6},{10,6},{15,4},{15,4},{30,4},{30,4}}}},
      {"C3_D40", {120, 60, {{1,1},{2,1},{2,10},{2,30},{3,2},{4,6},{5,2},{5,2},{6,2},{6,10},{6,10},{10,2},{10,2},{15,4},{15,4},{20,6},{20,6},{20,6},{20,6},{30,4},{30,4}}}},
      {"C5_D24", {120, 60, {{1,1},{2,1},{2,6},{2,30},{3,2},{4,10},{5,2},{5,2},{6,2},{10,2},{10,2},{10,6},{10,6},{10,6},{10,6},{12,10},{12,10},{15,4},{15,4},{30,4},{30,4}}}},
      {"C15_Q8", {120, 60, {{1,1},{2,1},{3,2},{4,6},{4,10},{4,30},{5,2},{5,2},{6,2},{10,2},{10,2},{12,10},{12,10},{15,4},{15,4},{20,6},{20,6},{20,6},{20,6},{30,4},{30,4}}}},
  };
  return table;
}

inline void check_fingerprint(const FiniteGroup& G, const std::string& name) {
  auto it = fingerprints().find(name);
  if (it == fingerprints().end()) return;
  const Fingerprint& fp = it->second;
  if (G.order() != fp.order)
    throw InternalInconsistencyError("preset " + name + " has wrong order");
  if (exponent(G) != fp.exponent)
    throw InternalInconsistencyError("preset " + name + " has wrong exponent");
  ConjugacyData C = conjugacy(G);
  std::vector<std::pair<long, long>> got;
  for (long c = 0; c < C.num_classes(); ++c) got.emplace_back(C.orders[c], C.sizes[c]);
  std::sort(got.begin(), got.end());
  std::vector<std::pair<long, long>> want = fp.classes;
  std::sort(want.begin(), want.end());
  if (got != want)
    throw InternalInconsistencyError("preset " + name + " has wrong class structure");
}

inline long parse_suffix(const std::string& name, std::size_t prefix_len) {
  if (name.size() <= prefix_len) return -1;
  long v = 0;
  for (std::size_t i = prefix_len; i < name.size(); ++i) {
    char c = name[i];
    if (c < '0' || c > '9') return -1;
    v = v * 10 + (c - '0');
    if (v > ORDER_CAP) return -1;
  }
  return v;
}

}  // namespace detail

// Largest n accepted for the C_n family; bounds the quadratic memory of the
// regular action (n points x n elements).
inline constexpr long CYCLIC_CAP = 1000;

inline std::vector<std::string> list() {
  std::vector<std::string> names;
  for (long n = 1; n <= 24; ++n) names.push_back("C" + std::to_string(n));
  for (long n = 2; n <= 7; ++n) names.push_back("S" + std::to_string(n));
  for (long n = 3; n <= 7; ++n) names.push_back("A" + std::to_string(n));
  for (long n = 2; n <= 20; ++n) names.push_back("D" + std::to_string(2 * n));
  for (long n = 2; n <= 10; ++n) names.push_back("Dic" + std::to_string(n));
  names.push_back("Q8");
  names.push_back("ES27_3");
  names.push_back("ES27_9");
  for (long q : {2, 3, 4, 5, 7, 8, 9, 11}) names.push_back("SL2_" + std::to_string(q));
  for (long q : {2, 3, 4, 5, 7, 8, 9, 11}) names.push_back("PSL2_" + std::to_string(q));
  for (const char* n : {"D12_S3", "C3_D24", "C32_2Q8", "C15_D8", "C3_D40", "C5_D24", "C15_Q8"})
    names.push_back(n);
  return names;
}

inline FiniteGroup build(const std::string& name) {
  using namespace detail;
  FiniteGroup G;
  long expected_order = -1;

  if (name == "Q8") {
    G = build_q8();
  } else if (name == "ES27_3") {
    G = build_es27(3);
  } else if (name == "ES27_9") {
    G = build_es27(9);
  } else if (name == "D12_S3") {
    G = build_d12_s3();
  } else if (name == "C3_D24") {
    G = build_c3_d24();
  } else if (name == "C32_2Q8") {
    G = build_c32_2q8();
  } else if (name == "C15_D8") {
    G = build_c15_d8(14, 11);
  } else if (name == "C3_D40") {
    G = build_c15_d8(11, 4);
  } else if (name == "C5_D24") {
    G = build_c15_d8(4, 11);
  } else if (name == "C15_Q8") {
    G = build_c15_q8();
  } else if (name.rfind("Dic", 0) == 0) {
    long n = parse_suffix(name, 3);
    if (n < 2 || n > 10) throw DataError("unknown preset: " + name);
    G = build_dic(n);
    expected_order = 4 * n;
  } else if (name.rfind("PSL2_", 0) == 0 || name.rfind("SL2_", 0) == 0) {
    bool projective = name[0] == 'P';
    long q = parse_suffix(name, projective ? 5 : 4);
    if (q != 2 && q != 3 && q != 4 && q != 5 && q != 7 && q != 8 && q != 9 && q != 11)
      throw DataError("unknown preset: " + name);
    SmallField F = make_field(q);
    std::vector<Permutation> gens;
    for (const auto& M : sl2_generator_matrices(F))
      gens.push_back(projective ? psl2_perm(F, M) : sl2_perm(F, M));
    G = enumerate(gens);
    expected_order = q * (q - 1) * (q + 1) / (projective && q % 2 == 1 ? 2 : 1);
  } else if (name[0] == 'C' && name.size() > 1 && name[1] >= '0' && name[1] <= '9') {
    long n = parse_suffix(name, 1);
    if (n < 1) throw DataError("unknown preset: " + name);
    if (n > CYCLIC_CAP) throw CapacityError("cyclic preset too large");
    std::vector<long> im(n);
    for (long i = 0; i < n; ++i) im[i] = (i + 1) % n;
    G = enumerate({Permutation(std::move(im))});
    expected_order = n;
  } else if (name[0] == 'S' && name.size() > 1 && name[1] >= '0' && name[1] <= '9') {
    long n = parse_suffix(name, 1);
    if (n < 1 || n > 7) throw DataError("unknown preset: " + name);
    std::vector<Permutation> gens{Permutation::identity(std::max<long>(n, 1))};
    if (n >= 2) {
      gens = {Permutation::from_cycles(n, {{0, 1}})};
      std::vector<long> cyc(n);
      for (long i = 0; i < n; ++i) cyc[i] = i;
      if (n >= 3) gens.push_back(Permutation::from_cycles(n, {cyc}));
    }
    G = enumerate(gens);
    expected_order = 1;
    for (long i = 2; i <= n; ++i) expected_order *= i;
  } else if (name[0] == 'A' && name.size() > 1 && name[1] >= '0' && name[1] <= '9') {
    long n = parse_suffix(name, 1);
    if (n < 1 || n > 7) throw DataError("unknown preset: " + name);
    if (n <= 2) {
      G = enumerate({Permutation::identity(std::max<long>(n, 1))});
    } else {
      std::vector<Permutation> gens{Permutation::from_cycles(n, {{0, 1, 2}})};
      if (n > 3) {
        std::vector<long> cyc;
        for (long i = n % 2 == 0 ? 1 : 0; i < n; ++i) cyc.push_back(i);
        gens.push_back(Permutation::from_cycles(n, {cyc}));
      }
      G = enumerate(gens);
    }
    expected_order = 1;
    for (long i = 2; i <= n; ++i) expected_order *= i;
    expected_order = std::max<long>(expected_order / 2, 1);
  } else if (name[0] == 'D' && name.size() > 1 && name[1] >= '0' && name[1] <= '9') {
    long two_n = parse_suffix(name, 1);
    if (two_n < 4 || two_n > 40 || two_n % 2 != 0) throw DataError("unknown preset: " + name);
    long n = two_n / 2;
    if (n == 2) {
      // Klein four-group on 4 points.
      G = enumerate({Permutation::from_cycles(4, {{0, 1}, {2, 3}}),
                     Permutation::from_cycles(4, {{0, 2}, {1, 3}})});
    } else {
      std::vector<long> rot(n), refl(n);
      for (long i = 0; i < n; ++i) {
        rot[i] = (i + 1) % n;
        refl[i] = (n - i) % n;
      }
      G = enumerate({Permutation(std::move(rot)), Permutation(std::move(refl))});
    }
    expected_order = two_n;
  } else {
    throw DataError("unknown preset: " + name);
  }

  if (expected_order >= 0 && G.order() != expected_order)
    throw InternalInconsistencyError("preset " + name + " has wrong order");
  detail::check_fingerprint(G, name);
  return G;
}

// Syntactic name check only; a recognized name may still exceed capacity
// when built (e.g. very large C_n).
inline bool exists(const std::string& name) {
  using detail::parse_suffix;
  for (const char* n : {"Q8", "ES27_3", "ES27_9", "D12_S3", "C3_D24", "C32_2Q8", "C15_D8",
                        "C3_D40", "C5_D24", "C15_Q8"})
    if (name == n) return true;
  if (name.rfind("Dic", 0) == 0) {
    long n = parse_suffix(name, 3);
    return n >= 2 && n <= 10;
  }
  if (name.rfind("PSL2_", 0) == 0 || name.rfind("SL2_", 0) == 0) {
    long q = parse_suffix(name, name[0] == 'P' ? 5 : 4);
    return q == 2 || q == 3 || q == 4 || q == 5 || q == 7 || q == 8 || q == 9 || q == 11;
  }
  if (name.size() > 1 && name[1] >= '0' && name[1] <= '9') {
    long n = parse_suffix(name, 1);
    switch (name[0]) {
      case 'C': return n >= 1;
      case 'S': case 'A': return n >= 1 && n <= 7;
      case 'D': return n >= 4 && n <= 40 && n % 2 == 0;
    }
  }
  return false;
}

}  // namespace knutson::presets
