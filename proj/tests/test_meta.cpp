#include <set>
#include <string>

#include "doctest.h"
#include "mcg/applications.hpp"
#include "mcg/group.hpp"
#include "mcg/meta.hpp"
#include "mcg/notation.hpp"
#include "support/sweep.hpp"
#include "support/tables.hpp"

using namespace mcg;
using Index = MetacyclicGroup::Index;

namespace {

std::vector<testing_support::TableRow> all_rows() {
  auto rows = testing_support::genus10_rows();
  for (auto& r : testing_support::genus11_rows()) rows.push_back(std::move(r));
  return rows;
}

Index image(const MetacyclicGroup& H, const MetacyclicDataSet& D, const Triple& t) {
  const auto& p = D.params;
  return H.word(t.c1 * (p.m() / t.n1), t.c2 * (p.n / t.n2));
}

// For g0 = 0 an epimorphism is just an ordered product-one generating tuple with the stated
// orders, so the verdict can be checked by multiplying in the group.
bool planar_tuple_valid(const MetacyclicDataSet& D) {
  const auto H = make_group(D.params);
  Index prod = H.identity();
  std::vector<Index> gens;
  for (const auto& t : D.triples) {
    const Index x = image(H, D, t);
    if (H.element_order(x) != t.order) return false;
    prod = H.mul(prod, x);
    gens.push_back(x);
  }
  return prod == H.identity() && static_cast<Int>(H.generated_subgroup(gens).size()) == H.order();
}

}  // namespace

TEST_CASE("table rows pass both validators") {
  for (const auto& row : all_rows()) {
    CAPTURE(row.meta_text);
    const auto lit = validate_meta_literal(row.meta);
    const auto orc = validate_meta_oracle(row.meta);
    CHECK(lit.valid());
    CHECK(orc.valid());
    CHECK(lit.genus == orc.genus);
    CHECK(reverify_literal_witness(row.meta, lit.witness) == "");
    if (row.meta.g0 == 0) CHECK(planar_tuple_valid(row.meta));
  }
}

TEST_CASE("genus from the data set") {
  const auto rows = testing_support::genus10_rows();
  CHECK(genus_meta(rows[0].meta) == Rational(10));
  CHECK(genus_meta(parse_meta("((2·12,6,-1),1;[(0,1),(1,6),6])")) == Rational(11));
  const auto tiny = parse_meta("((2·4,2,-1),0;[(0,1),(1,2),2])");
  CHECK(genus_meta(tiny) < Rational(2));
  CHECK_FALSE(validate_meta(tiny).valid());
  CHECK_FALSE(validate_meta_oracle(tiny).valid());
}

TEST_CASE("literal cone orders match element orders") {
  const auto rows = all_rows();
  const auto first = cone_order_literal(rows[0].meta, 1);  // [(1,4),(0,1),4]
  CHECK(first.s == 4);
  for (const auto& row : rows) {
    const auto H = make_group(row.meta.params);
    for (std::size_t i = 0; i < row.meta.triples.size(); ++i) {
      const auto& t = row.meta.triples[i];
      CAPTURE(row.meta_text);
      CAPTURE(i);
      const auto co = cone_order_literal(row.meta, i);
      CHECK(co.s == H.element_order(image(H, row.meta, t)));
      CHECK(co.s == t.order);
      if (t.n1 == 1) CHECK(co.s == t.n2);
    }
  }
}

TEST_CASE("perturbed row is rejected by both validators") {
  auto D = testing_support::genus10_rows()[0].meta;
  auto& last = D.triples.back();
  REQUIRE(last.c2 == 3);
  REQUIRE(last.n2 == 4);
  last.c2 = 1;
  CHECK_FALSE(validate_meta_literal(D).valid());
  CHECK_FALSE(validate_meta_oracle(D).valid());
  CHECK_FALSE(planar_tuple_valid(D));
}

TEST_CASE("quaternion row with four reflections") {
  const auto D = parse_meta("((2·4,2,-1),0;[(0,1),(1,2),2]_4,[(1,4),(0,1),4],[(0,1),(1,4),4],[(3,4),(1,4),4])");
  CHECK(D.triples.size() == 7);
  const auto orc = validate_meta_oracle(D);
  CHECK(orc.valid());
  CHECK(orc.genus == Rational(10));
  CHECK(planar_tuple_valid(D));
}

TEST_CASE("dicyclic bound data set") {
  // As printed the last cone is F^(2g-1); the cone product is then F^g, not 1.
  for (Int g = 2; g <= 12; g += 2) {
    CAPTURE(g);
    const auto printed = dicyclic_bound_data_set(g);
    CHECK(print_meta(printed) == "((2·" + std::to_string(2 * g) + "," + std::to_string(g) + ",-1),0;[(1,4),(0,1),4],[(1,4),(1," +
                                     std::to_string(2 * g) + "),4],[(0,1),(" + std::to_string(2 * g - 1) + "," +
                                     std::to_string(2 * g) + ")," + std::to_string(2 * g) + "])");
    CHECK_FALSE(validate_meta_literal(printed).valid());
    CHECK_FALSE(validate_meta_oracle(printed).valid());
    CHECK_FALSE(planar_tuple_valid(printed));

    const auto fixed = dicyclic_bound_data_set(g, g - 1);
    CHECK(planar_tuple_valid(fixed));
    const auto lit = validate_meta_literal(fixed);
    CHECK(lit.valid());
    CHECK(lit.genus == Rational(g));
    CHECK(validate_meta_oracle(fixed).valid());
    CHECK(fixed.params.order() == 4 * g);
  }
}

TEST_CASE("oracle witnesses are genuine") {
  for (const auto& row : all_rows()) {
    if (row.meta.g0 == 0) continue;
    CAPTURE(row.meta_text);
    const auto H = make_group(row.meta.params);
    const auto rep = validate_meta_oracle(row.meta, H);
    REQUIRE(rep.valid());
    CHECK(testing_support::witness_holds(H, row.meta, rep));
  }
}

TEST_CASE("validators disagree only on dihedral reflection pairs over a torus") {
  const auto S = testing_support::validator_sweep(48, 6, 2);
  CHECK(S.total == 161593);
  CHECK(S.oracle_valid == 21291);
  CHECK(S.disagreements.size() == 9);
  for (const auto& d : S.disagreements) {
    CAPTURE(print_meta(d.D));
    CHECK(testing_support::dihedral_torus_kind(d));
    CHECK(testing_support::witness_holds(make_group(d.D.params), d.D, d.oracle));
  }
  // the smallest one, by hand: x1 = x2 = GF, y = F, z = 1 in S3
  const auto D = parse_meta("((2·3,3,-1),1;[(1,2),(1,3),2]_2)");
  const auto H = make_group(D.params);
  const Index x = H.word(1, 1);
  CHECK(H.mul(H.mul(H.commutator(H.F(), H.identity()), x), x) == H.identity());
  const Index gens[] = {H.F(), x};
  CHECK(static_cast<Int>(H.generated_subgroup(gens).size()) == 6);
  CHECK(validate_meta_oracle(D).valid());
  CHECK_FALSE(validate_meta_literal(D).valid());
}

TEST_CASE("notation round trip and errors") {
  for (const auto& row : all_rows()) {
    CHECK(print_meta(row.meta) == row.meta_text);
    CHECK(parse_meta(print_meta(row.meta)) == row.meta);
    CHECK(meta_from_json(meta_to_json(row.meta)) == row.meta);
  }
  CHECK(parse_meta("((2x12,6,-1),1;[(0,1),(1,6),6])") == parse_meta("((2·12,6,-1),1;[(0,1),(1,6),6])"));
  try {
    parse_meta("((2·12,6,-1),1;[(0,1),(1,6),6)");
    FAIL("expected a parse error");
  } catch (const ParseError& e) {
    CHECK(e.offset() == 30);  // the middle dot is two bytes
  }
  CHECK_THROWS_AS(parse_meta("((3·5,1,2),0;[(1,3),(0,1),3])"), std::invalid_argument);
}

TEST_CASE("label conditions") {
  // structural problems throw; label arithmetic fails condition (ii)(a)
  CHECK_THROWS(check_well_formed(parse_meta("((2·4,2,-1),0;[(1,4),(0,1),1])")));
  for (const char* s : {"((2·4,2,-1),0;[(1,3),(0,1),4],[(1,4),(0,1),4],[(0,1),(1,4),4],[(1,4),(1,4),4])",
                        "((2·4,2,-1),0;[(2,4),(0,1),4],[(1,4),(0,1),4],[(0,1),(1,4),4],[(1,4),(1,4),4])",
                        "((2·4,2,-1),0;[(0,2),(0,1),4],[(1,4),(0,1),4],[(0,1),(1,4),4],[(1,4),(1,4),4])"}) {
    CAPTURE(s);
    const auto D = parse_meta(s);
    CHECK_NOTHROW(check_well_formed(D));
    const auto lit = validate_meta_literal(D);
    CHECK_FALSE(lit.valid());
    CHECK(lit.failed_condition == "ii.a");
  }
}

TEST_CASE("distinct cyclic factors printed in the tables") {
  std::set<std::string> seen;
  for (const auto& row : all_rows()) {
    seen.insert(print_cyclic(sorted_cyclic(row.DG)));
    seen.insert(print_cyclic(sorted_cyclic(row.DF)));
  }
  // 12 in the genus-10 table, 11 in the genus-11 table, none shared
  CHECK(seen.size() == 23);
}
