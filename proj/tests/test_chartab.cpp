// Character table machinery tests.
//
// Oracles: the Burnside-Dixon output is audited against the definitional
// orthogonality sums (exact cyclotomic arithmetic), cross-checked against
// hand-transcribed reference tables loaded from data/tables, and the
// decomposition routines are exercised on combinations built independently
// from the rows themselves.

#include <catch2/catch_amalgamated.hpp>
#include <knutson/chartab.hpp>
#include <knutson/group.hpp>
#include <knutson/io.hpp>
#include <knutson/presets.hpp>

#include <algorithm>
#include <set>
#include <string>
#include <vector>

using namespace knutson;

namespace {

std::string data_path(const std::string& rel) { return std::string(KNUTSON_DATA_DIR) + "/" + rel; }

CharacterTable golden(const std::string& stem) { return table_from_file(data_path("tables/" + stem + ".json")); }

// Definitional inner product, written independently of inner(): straight
// cyclotomic sum of size-weighted products against the conjugate.
Cyclotomic inner_oracle(const CharacterTable& T, const ClassFunction& a, const ClassFunction& b) {
  long L = T.exponent;
  for (const auto& v : a.values) L = std::lcm(L, v.order());
  for (const auto& v : b.values) L = std::lcm(L, v.order());
  Cyclotomic acc(L);
  for (long c = 0; c < T.num_classes(); ++c)
    acc += Rat(T.sizes[c]) * (a.values[c].to_order(L) * b.values[c].to_order(L).conj());
  return make_rat(1, T.group_order) * acc;
}

long find_degree_row(const CharacterTable& T, long d) {
  for (long i = 0; i < T.num_classes(); ++i)
    if (T.degrees[i] == d) return i;
  FAIL("no row of degree " << d);
  return -1;
}

}  // namespace

TEST_CASE("dixon on the cyclic group of order 2") {
  const CharacterTable T = dixon_table(presets::build("C2"));
  REQUIRE(T.num_classes() == 2);
  REQUIRE(T.exponent == 2);
  REQUIRE(T.group_order == 2);
  const Cyclotomic one = Cyclotomic::from_int(2, 1);
  const Cyclotomic minus = Cyclotomic::from_int(2, -1);
  REQUIRE(T.chars[0][0] == one);
  REQUIRE(T.chars[0][1] == one);
  REQUIRE(T.chars[1][0] == one);
  REQUIRE(T.chars[1][1] == minus);
  REQUIRE(T.trivial_row() == 0);
  REQUIRE(T.has_group());
}

TEST_CASE("dixon tables pass the full audit on a preset sweep") {
  for (const char* name : {"C1", "C6", "S3", "S4", "D8", "Q8", "Dic3", "A5"}) {
    INFO("group " << name);
    const FiniteGroup G = presets::build(name);
    const CharacterTable T = dixon_table(G);
    REQUIRE(!table_problem(T).has_value());
    REQUIRE(T.exponent == exponent(G));
    REQUIRE(T.has_group());
    REQUIRE(T.classes->num_classes() == T.num_classes());
    for (long i = 0; i < T.num_classes(); ++i) {
      // degree divides the group order (classical integrality theorem)
      REQUIRE(T.group_order % T.degrees[i] == 0);
    }
    // class metadata mirrors the attached conjugacy data
    for (long c = 0; c < T.num_classes(); ++c) {
      REQUIRE(T.sizes[c] == Int(T.classes->sizes[c]));
      REQUIRE(T.orders[c] == T.classes->orders[c]);
      REQUIRE(T.inverse_class[c] == T.classes->inverse_class[c]);
    }
  }
}

TEST_CASE("dixon row ordering is deterministic: degrees ascend") {
  for (const char* name : {"S4", "Dic6", "SL2_5"}) {
    const CharacterTable T = dixon_table(presets::build(name));
    for (long i = 0; i + 1 < T.num_classes(); ++i) REQUIRE(T.degrees[i] <= T.degrees[i + 1]);
    REQUIRE(T.degrees[0] == 1);
    REQUIRE(T.trivial_row() == 0);  // trivial row sorts ahead of the other linears
  }
}

TEST_CASE("dixon matches the transcribed reference tables") {
  const std::pair<const char*, const char*> cases[] = {
      {"S4", "s4"}, {"D8", "d8"}, {"Dic6", "dic6"}, {"SL2_5", "sl2_f5"}, {"D12_S3", "d12_s3"}};
  for (const auto& [preset, stem] : cases) {
    INFO("group " << preset);
    const CharacterTable computed = dixon_table(presets::build(preset));
    const CharacterTable reference = golden(stem);
    REQUIRE(tables_match(computed, reference));
  }
}

TEST_CASE("tables_match rejects lookalikes") {
  // Same order, different groups.
  REQUIRE_FALSE(tables_match(golden("dic6"), dixon_table(presets::build("S4"))));
  // The classic pair: identical character matrices, different element orders.
  const CharacterTable d8 = dixon_table(presets::build("D8"));
  const CharacterTable q8 = dixon_table(presets::build("Q8"));
  {
    std::vector<Int> dd = d8.degrees, dq = q8.degrees;
    REQUIRE(dd == dq);  // lookalike in degrees...
  }
  REQUIRE_FALSE(tables_match(d8, q8));  // ...but distinguished by class orders
  // And a sanity positive: a table matches itself.
  REQUIRE(tables_match(d8, d8));
}

TEST_CASE("inner products: orthonormal rows and regular character") {
  for (const char* name : {"S4", "Dic6"}) {
    INFO("group " << name);
    const CharacterTable T = dixon_table(presets::build(name));
    const ClassFunction reg = regular(T);
    for (long i = 0; i < T.num_classes(); ++i) {
      for (long j = 0; j < T.num_classes(); ++j) {
        const Cyclotomic p = inner(T, T.row(i), T.row(j));
        const auto v = p.as_integer();
        REQUIRE(v.has_value());
        REQUIRE(*v == (i == j ? 1 : 0));
        REQUIRE(p == inner_oracle(T, T.row(i), T.row(j)));
      }
      const auto r = inner(T, reg, T.row(i)).as_integer();
      REQUIRE(r.has_value());
      REQUIRE(*r == T.degrees[i]);
    }
  }
  // length guard
  const CharacterTable T = dixon_table(presets::build("S4"));
  ClassFunction bad;
  bad.values.assign(3, Cyclotomic::from_int(1, 1));
  REQUIRE_THROWS_AS(inner(T, bad, T.row(0)), StructuralError);
}

TEST_CASE("a transcribed virtual inverse: 2-dimensional character of Dic6") {
  // In the dicyclic group of order 24, the combination
  //   lambda = chi1 + chi4 + chi5 + chi6 + chi7 + chi8 + chi9
  // multiplies the first 2-dimensional character chi5 to the regular
  // character exactly (row numbering of the reference table).
  const CharacterTable T = golden("dic6");
  std::vector<Int> coeffs(T.num_classes(), 0);
  for (long idx : {0, 3, 4, 5, 6, 7, 8}) coeffs[idx] = 1;
  const ClassFunction lambda = combine(T, coeffs);
  const ClassFunction f = pointwise_product(T.row(4), lambda);
  const ClassFunction reg = regular(T);
  REQUIRE(T.degrees[4] == 2);
  for (long c = 0; c < T.num_classes(); ++c)
    REQUIRE(f.values[c].to_order(T.exponent) == reg.values[c]);
  REQUIRE(decompose(T, f) == T.degrees);
}

TEST_CASE("decompose recovers integer combinations exactly") {
  const CharacterTable T = dixon_table(presets::build("S4"));

  SECTION("regular character") { REQUIRE(decompose(T, regular(T)) == T.degrees); }

  SECTION("unit vectors") {
    for (long i = 0; i < T.num_classes(); ++i) {
      std::vector<Int> e(T.num_classes(), 0);
      e[i] = 1;
      REQUIRE(decompose(T, T.row(i)) == e);
    }
  }

  SECTION("a virtual combination with negative coefficients") {
    const std::vector<Int> coeffs = {3, -2, 0, 7, -11};
    REQUIRE(decompose(T, combine(T, coeffs)) == coeffs);
  }

  SECTION("products of rows decompose with the right total dimension") {
    const CharacterTable D = golden("dic6");
    const std::vector<Int> m = decompose(D, pointwise_product(D.row(6), D.row(4)));
    Int total = 0;
    for (long r = 0; r < D.num_classes(); ++r) {
      REQUIRE(m[r] >= 0);
      total += m[r] * D.degrees[r];
    }
    REQUIRE(total == D.degrees[6] * D.degrees[4]);
  }
}

TEST_CASE("decompose rejects non-virtual class functions") {
  const CharacterTable T = dixon_table(presets::build("S4"));

  SECTION("half the trivial character") {
    ClassFunction h;
    h.values.assign(T.num_classes(), Cyclotomic::from_rational(1, make_rat(1, 2)));
    REQUIRE_THROWS_AS(decompose(T, h), NotVirtualError);
  }

  SECTION("indicator of the identity class") {
    ClassFunction ind;
    ind.values.assign(T.num_classes(), Cyclotomic(1));
    ind.values[0] = Cyclotomic::from_int(1, 1);
    REQUIRE_THROWS_AS(decompose(T, ind), NotVirtualError);
  }
}

TEST_CASE("tensor matrices") {
  SECTION("the trivial row gives the identity matrix") {
    const CharacterTable T = dixon_table(presets::build("S4"));
    REQUIRE(tensor_matrix(T, T.trivial_row()) == IntMatrix::identity(T.num_classes()));
  }

  SECTION("column at the trivial row is the unit vector") {
    const CharacterTable T = dixon_table(presets::build("Dic3"));
    const long j0 = T.trivial_row();
    for (long i = 0; i < T.num_classes(); ++i) {
      const IntMatrix M = tensor_matrix(T, i);
      for (long r = 0; r < T.num_classes(); ++r) REQUIRE(M.at(r, j0) == (r == i ? 1 : 0));
    }
  }

  SECTION("dimension multiplicativity holds entrywise") {
    const CharacterTable T = golden("dic6");
    for (long i = 0; i < T.num_classes(); ++i) {
      const IntMatrix M = tensor_matrix(T, i);
      for (long j = 0; j < T.num_classes(); ++j) {
        Int total = 0;
        for (long r = 0; r < T.num_classes(); ++r) {
          REQUIRE(M.at(r, j) >= 0);
          total += M.at(r, j) * T.degrees[r];
        }
        REQUIRE(total == T.degrees[i] * T.degrees[j]);
      }
    }
  }

  SECTION("degree-one rows act by permutation matrices") {
    const CharacterTable T = golden("dic6");
    for (long i = 0; i < T.num_classes(); ++i) {
      if (T.degrees[i] != 1) continue;
      const IntMatrix M = tensor_matrix(T, i);
      for (long j = 0; j < T.num_classes(); ++j) {
        long ones = 0;
        for (long r = 0; r < T.num_classes(); ++r) {
          REQUIRE((M.at(r, j) == 0 || M.at(r, j) == 1));
          if (M.at(r, j) == 1) ++ones;
        }
        REQUIRE(ones == 1);
      }
    }
  }

  SECTION("the 4-dimensional characters of SL2(F5) need multiplier 2") {
    const CharacterTable T = golden("sl2_f5");
    const std::vector<Int> degs = T.degrees;
    for (long i = 0; i < T.num_classes(); ++i) {
      if (T.degrees[i] != 4) continue;
      const auto n = minimal_multiplier(tensor_matrix(T, i), degs);
      REQUIRE(n.has_value());
      REQUIRE(*n == 2);
    }
    // while the 2-dimensional ones reach the regular character directly
    for (long i = 0; i < T.num_classes(); ++i) {
      if (T.degrees[i] != 2) continue;
      const auto n = minimal_multiplier(tensor_matrix(T, i), degs);
      REQUIRE(n.has_value());
      REQUIRE(*n == 1);
    }
  }
}

TEST_CASE("degree-one multiplicity: at most once, with the twist criterion") {
  // A one-dimensional character g appears in chi_i (x) chi_j with
  // multiplicity 0 or 1, and exactly 1 precisely when
  // conj(chi_i) = chi_j * conj(g) pointwise.
  for (const char* name : {"S4", "D8", "Q8", "SL2_5"}) {
    INFO("group " << name);
    const CharacterTable T = dixon_table(presets::build(name));
    const long k = T.num_classes();
    for (long i = 0; i < k; ++i) {
      const IntMatrix M = tensor_matrix(T, i);
      for (long g = 0; g < k; ++g) {
        if (T.degrees[g] != 1) continue;
        for (long j = 0; j < k; ++j) {
          const Int& m = M.at(g, j);
          REQUIRE((m == 0 || m == 1));
          bool twist = true;
          for (long c = 0; c < k && twist; ++c)
            twist = T.chars[i][c].conj() == T.chars[j][c] * T.chars[g][c].conj();
          REQUIRE((m == 1) == twist);
        }
      }
    }
  }
}

TEST_CASE("restriction and induction along a Sylow embedding of S4") {
  const FiniteGroup G = presets::build("S4");
  const CharacterTable TG = dixon_table(G);
  SubgroupEmbedding emb = sylow(G, 2);
  const CharacterTable TH = dixon_table(emb.subgroup);
  REQUIRE(TH.group_order == 8);
  fusion(G, *TG.classes, emb, *TH.classes);

  SECTION("restriction needs a computed fusion") {
    SubgroupEmbedding fresh = sylow(G, 2);
    REQUIRE_THROWS_AS(restrict(TG, TG.row(0), fresh, dixon_table(fresh.subgroup)), StructuralError);
  }

  SECTION("trivial restricts to trivial") {
    const ClassFunction r = restrict(TG, TG.row(TG.trivial_row()), emb, TH);
    std::vector<Int> e(TH.num_classes(), 0);
    e[TH.trivial_row()] = 1;
    REQUIRE(decompose(TH, r) == e);
  }

  SECTION("the 2-dimensional character restricts to two linears, one trivial") {
    const long i2 = find_degree_row(TG, 2);
    const std::vector<Int> m = decompose(TH, restrict(TG, TG.row(i2), emb, TH));
    Int count = 0;
    for (long r = 0; r < TH.num_classes(); ++r) {
      REQUIRE((m[r] == 0 || m[r] == 1));
      if (m[r] == 1) {
        REQUIRE(TH.degrees[r] == 1);
        ++count;
      }
    }
    REQUIRE(count == 2);
    REQUIRE(m[TH.trivial_row()] == 1);
  }

  SECTION("regular restricts to index times regular") {
    const ClassFunction r = restrict(TG, regular(TG), emb, TH);
    const ClassFunction rh = regular(TH);
    const Int index = TG.group_order / TH.group_order;
    for (long c = 0; c < TH.num_classes(); ++c)
      REQUIRE(r.values[c].to_order(TG.exponent) == (index * rh.values[c]).to_order(TG.exponent));
  }

  SECTION("induction of the trivial character has degree [G:H]") {
    const ClassFunction ind = induce(TH, TH.row(TH.trivial_row()), emb, TG);
    REQUIRE(ind.values[0].as_integer() == Int(3));
    const std::vector<Int> m = decompose(TG, ind);
    for (const Int& v : m) REQUIRE(v >= 0);
  }

  SECTION("induction of the regular character is the regular character") {
    const ClassFunction ind = induce(TH, regular(TH), emb, TG);
    const ClassFunction rg = regular(TG);
    for (long c = 0; c < TG.num_classes(); ++c) REQUIRE(ind.values[c].to_order(TG.exponent) == rg.values[c]);
  }

  SECTION("Frobenius reciprocity for every pair of rows") {
    for (long i = 0; i < TG.num_classes(); ++i)
      for (long j = 0; j < TH.num_classes(); ++j) {
        const auto lhs = inner(TG, induce(TH, TH.row(j), emb, TG), TG.row(i)).as_rational();
        const auto rhs = inner(TH, restrict(TG, TG.row(i), emb, TH), TH.row(j)).as_rational();
        REQUIRE(lhs.has_value());
        REQUIRE(rhs.has_value());
        REQUIRE(*lhs == *rhs);
      }
  }

  SECTION("induction requires the parent group context") {
    const CharacterTable loaded = golden("s4");
    REQUIRE_FALSE(loaded.has_group());
    REQUIRE_THROWS_AS(induce(TH, TH.row(0), emb, loaded), StructuralError);
  }
}

TEST_CASE("restriction and induction for the odd Sylow of S3") {
  const FiniteGroup G = presets::build("S3");
  const CharacterTable TG = dixon_table(G);
  SubgroupEmbedding emb = sylow(G, 3);
  const CharacterTable TH = dixon_table(emb.subgroup);
  REQUIRE(TH.group_order == 3);
  fusion(G, *TG.classes, emb, *TH.classes);

  // The 2-dimensional character of S3 restricts to the sum of the two
  // nontrivial linear characters of C3.
  const long i2 = find_degree_row(TG, 2);
  const std::vector<Int> m = decompose(TH, restrict(TG, TG.row(i2), emb, TH));
  REQUIRE(m[TH.trivial_row()] == 0);
  Int total = 0;
  for (const Int& v : m) {
    REQUIRE((v == 0 || v == 1));
    total += v;
  }
  REQUIRE(total == 2);

  for (long i = 0; i < TG.num_classes(); ++i)
    for (long j = 0; j < TH.num_classes(); ++j) {
      const auto lhs = inner(TG, induce(TH, TH.row(j), emb, TG), TG.row(i)).as_rational();
      const auto rhs = inner(TH, restrict(TG, TG.row(i), emb, TH), TH.row(j)).as_rational();
      REQUIRE(*lhs == *rhs);
    }
}

TEST_CASE("direct product tables") {
  SECTION("product with the trivial group is the identity operation") {
    const CharacterTable T = dixon_table(presets::build("Dic3"));
    const CharacterTable One = dixon_table(presets::build("C1"));
    const CharacterTable P = product_table(T, One);
    REQUIRE(P.group_order == T.group_order);
    REQUIRE(P.exponent == T.exponent);
    REQUIRE(P.sizes == T.sizes);
    REQUIRE(P.orders == T.orders);
    REQUIRE(P.inverse_class == T.inverse_class);
    REQUIRE(P.degrees == T.degrees);
    REQUIRE(P.chars == T.chars);
  }

  SECTION("dicyclic times C2 doubles every degree") {
    const CharacterTable A = golden("dic6");
    const CharacterTable B = dixon_table(presets::build("C2"));
    const CharacterTable P = product_table(A, B);
    REQUIRE(P.num_classes() == 18);
    REQUIRE(!table_problem(P).has_value());
    std::vector<Int> want;
    for (const Int& d : A.degrees) {
      want.push_back(d);
      want.push_back(d);
    }
    std::sort(want.begin(), want.end());
    std::vector<Int> got = P.degrees;
    std::sort(got.begin(), got.end());
    REQUIRE(got == want);
  }

  SECTION("the dihedral group of order 12 is S3 x C2") {
    const CharacterTable P = product_table(dixon_table(presets::build("S3")), dixon_table(presets::build("C2")));
    const CharacterTable D = dixon_table(presets::build("D12"));
    REQUIRE(tables_match(P, D));
  }
}

TEST_CASE("table JSON round-trips") {
  for (const char* stem : {"dic6", "sl2_f5", "s4", "d8", "d12_s3"}) {
    INFO("table " << stem);
    const CharacterTable T = golden(stem);
    const CharacterTable back = table_from_json(table_to_json(T));
    REQUIRE(back.group_order == T.group_order);
    REQUIRE(back.exponent == T.exponent);
    REQUIRE(back.sizes == T.sizes);
    REQUIRE(back.orders == T.orders);
    REQUIRE(back.inverse_class == T.inverse_class);
    REQUIRE(back.degrees == T.degrees);
    REQUIRE(back.chars == T.chars);
  }
}

TEST_CASE("inverse classes are re-derived from conjugate columns") {
  const CharacterTable T = dixon_table(presets::build("C3"));
  const CharacterTable back = table_from_json(table_to_json(T));
  const std::vector<long> want = {0, 2, 1};
  REQUIRE(back.inverse_class == want);
  REQUIRE(T.inverse_class == want);
}

TEST_CASE("table JSON rejects corruption") {
  Json j = read_json_file(data_path("tables/dic6.json"));

  SECTION("a flipped character value breaks the audit") {
    Json bad = j;
    bad["chars"][1][1] = "0";
    REQUIRE_THROWS_AS(table_from_json(bad), DataError);
  }

  SECTION("missing fields are reported") {
    Json bad = j;
    bad.erase("sizes");
    REQUIRE_THROWS_AS(table_from_json(bad), DataError);
  }

  SECTION("a non-identity first class is rejected") {
    Json bad = j;
    bad["element_orders"][0] = 2;
    REQUIRE_THROWS_AS(table_from_json(bad), DataError);
  }

  SECTION("wrong class size sum is rejected") {
    Json bad = j;
    bad["sizes"][3] = 5;
    REQUIRE_THROWS_AS(table_from_json(bad), DataError);
  }
}

TEST_CASE("group JSON round-trips") {
  const FiniteGroup G = presets::build("S4");
  const FiniteGroup back = group_from_json(group_to_json(G));
  REQUIRE(back.order() == G.order());
  REQUIRE(back.degree == G.degree);
  REQUIRE(tables_match(dixon_table(back), dixon_table(G)));

  Json preset;
  preset["preset"] = "Q8";
  REQUIRE(group_from_json(preset).order() == 8);

  Json bad;
  bad["degree"] = 3;
  bad["generators"] = Json::array({Json::array({0, 0, 1})});
  REQUIRE_THROWS_AS(group_from_json(bad), DataError);
}

TEST_CASE("class function helper guards") {
  const CharacterTable T = dixon_table(presets::build("S4"));
  REQUIRE_THROWS_AS(T.row(-1), DomainError);
  REQUIRE_THROWS_AS(T.row(T.num_classes()), DomainError);
  ClassFunction a, b;
  a.values.assign(2, Cyclotomic::from_int(1, 1));
  b.values.assign(3, Cyclotomic::from_int(1, 1));
  REQUIRE_THROWS_AS(pointwise_product(a, b), StructuralError);
  std::vector<Int> short_coeffs(2, 1);
  REQUIRE_THROWS_AS(combine(T, short_coeffs), StructuralError);
}
