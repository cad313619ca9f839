// One PASS/FAIL line per acceptance criterion. A criterion may be listed as a known failure;
// it then prints FAIL with the reason, and the run still succeeds only if the failure is
// exactly the documented one. Anything else makes the exit status 1.

#include <chrono>
#include <iostream>
#include <map>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "mcg/applications.hpp"
#include "mcg/classify.hpp"
#include "mcg/cyclic.hpp"
#include "mcg/derive.hpp"
#include "mcg/group.hpp"
#include "mcg/meta.hpp"
#include "support/disguise.hpp"
#include "support/factor_oracle.hpp"
#include "support/split_oracle.hpp"
#include "support/sweep.hpp"
#include "support/tables.hpp"

using namespace mcg;
using testing_support::same_factor;

namespace {

struct Outcome {
  bool pass = true;
  // a failure that matches the documented analysis
  bool documented = false;
  std::vector<std::string> problems;
  std::string note;

  void require(bool ok, const std::string& what) {
    if (!ok) {
      pass = false;
      problems.push_back(what);
    }
  }
};

EnumerationFilters nonsplit(bool exclude_quaternion) {
  EnumerationFilters f;
  f.nonsplit_only = true;
  f.exclude_quaternion = exclude_quaternion;
  return f;
}

std::map<GroupParams, int> per_group(const ClassificationTable& T) {
  std::map<GroupParams, int> out;
  for (const auto& row : T.rows) ++out[row.params];
  return out;
}

// Matches printed rows to representatives; returns the indices of printed rows whose
// printed factors differ from the representative's derived ones.
std::set<std::size_t> match_rows(const ClassificationTable& T, const std::vector<testing_support::TableRow>& printed,
                                 Outcome& o) {
  std::set<std::size_t> hit, mismatched;
  for (std::size_t i = 0; i < printed.size(); ++i) {
    const auto& row = printed[i];
    int matches = 0;
    for (std::size_t j = 0; j < T.rows.size(); ++j) {
      const auto& rep = T.rows[j].rep;
      if (rep.params != row.meta.params || rep.g0 != row.meta.g0 || rep.triples.size() != row.meta.triples.size())
        continue;
      const auto W = equivalent(rep, row.meta);
      if (!W) continue;
      o.require(reverify_equivalence(rep, row.meta, *W).empty(), "equivalence witness fails for " + row.meta_text);
      ++matches;
      hit.insert(j);
      if (!same_factor(T.rows[j].DF, row.DF) || !same_factor(T.rows[j].DG, row.DG)) mismatched.insert(i);
    }
    o.require(matches == 1, row.meta_text + " matches " + std::to_string(matches) + " classes");
  }
  o.require(hit.size() == T.rows.size(), "some class matches no printed row");
  return mismatched;
}

Outcome table_genus_10() {
  Outcome o;
  const auto T = enumerate_meta(10, nonsplit(false));
  const auto c = per_group(T);
  o.require(T.rows.size() == 13, std::to_string(T.rows.size()) + " classes");
  o.require(c.count({2, 4, 2, 3}) && c.at({2, 4, 2, 3}) == 5, "M(2,4,2,-1) count");
  o.require(c.count({2, 8, 4, 7}) && c.at({2, 8, 4, 7}) == 2, "M(2,8,4,-1) count");
  o.require(c.count({2, 12, 6, 7}) && c.at({2, 12, 6, 7}) == 2, "M(2,12,6,7) count");
  o.require(c.count({2, 20, 10, 19}) && c.at({2, 20, 10, 19}) == 4, "M(2,20,10,-1) count");
  const auto printed = testing_support::genus10_rows();
  const auto bad = match_rows(T, printed, o);
  if (!bad.empty()) {
    std::ostringstream os;
    os << "printed factors differ in rows";
    for (auto i : bad) os << ' ' << i + 1;
    o.require(false, os.str());
  }
  // Known: rows 1 and 2 print a genus-8 factor (((1,2),2) for ((1,2),4)) and put the
  // D_F/D_G pair in swapped slots. Everything else must hold for the failure to be the known one.
  if (!o.pass && o.problems.size() == 1 && bad == std::set<std::size_t>{0, 1}) {
    const auto wrong = parse_cyclic("(4,0;((1,4),3),((3,4),3),((1,2),2))");
    const auto right = parse_cyclic("(4,0;((1,4),3),((3,4),3),((1,2),4))");
    auto fix = [&](const CyclicDataSet& D) { return same_factor(D, wrong) ? right : D; };
    bool as_known = validate_cyclic(wrong).genus == Rational(8);
    for (std::size_t i : bad) {
      const auto& row = printed[i];
      as_known = as_known && (same_factor(row.DF, wrong) || same_factor(row.DG, wrong)) &&
                 same_factor(derive_DF(row.meta), fix(row.DG)) && same_factor(derive_DG(row.meta), fix(row.DF));
    }
    o.documented = as_known;
    o.note = "rows 1-2 print a genus-8 factor in swapped D_G/D_F slots; the other 11 pairs are exact";
  }
  return o;
}

Outcome table_genus_11() {
  Outcome o;
  const auto T = enumerate_meta(11, nonsplit(true));
  const auto c = per_group(T);
  o.require(T.rows.size() == 10, std::to_string(T.rows.size()) + " classes");
  o.require(c.count({2, 12, 6, 11}) && c.at({2, 12, 6, 11}) == 1, "M(2,12,6,-1) count");
  o.require(c.count({4, 8, 4, 7}) && c.at({4, 8, 4, 7}) == 8, "M(4,8,4,-1) count");
  o.require(c.count({2, 20, 10, 11}) && c.at({2, 20, 10, 11}) == 1, "M(2,20,10,11) count");
  const auto bad = match_rows(T, testing_support::genus11_rows(), o);
  o.require(bad.empty(), std::to_string(bad.size()) + " printed pairs differ");
  return o;
}

Outcome order_bound() {
  Outcome o;
  bool only_known = true;
  for (Int g = 2; g <= 12; ++g) {
    const auto R = bound_check(g);
    const std::string at = " at genus " + std::to_string(g);
    o.require(R.max_nonsplit_order <= 4 * g, "non-split order " + std::to_string(R.max_nonsplit_order) + at);
    if (!R.above_bound.empty()) {
      o.require(false, std::to_string(R.above_bound.size()) + " non-split data sets above 4g" + at);
      // known: genus 11, order 80, two groups M(4,20,10,7) and M(4,20,10,17)
      std::set<GroupParams> canonical;
      for (const auto& D : R.above_bound) {
        const auto H = make_group(D.params);
        canonical.insert(H.canonical_presentation());
        only_known = only_known && D.params.order() == 80 && !testing_support::split_by_pairs(H) &&
                     validate_meta_oracle(D, H).valid() && genus_meta(D) == Rational(g);
      }
      only_known = only_known && g == 11 &&
                   canonical == std::set<GroupParams>{{4, 20, 10, 7}, {4, 20, 10, 17}};
    }
    if (g % 2 == 0) {
      const auto printed = dicyclic_bound_data_set(g);
      const bool printed_ok = validate_meta_oracle(printed).valid() && genus_meta(printed) == Rational(g);
      o.require(printed_ok, "printed Dic_g set invalid" + at);
      const auto fixed = dicyclic_bound_data_set(g, g - 1);
      // known: the printed set has cone product F^g; with exponent g-1 it is valid of order 4g
      only_known = only_known && fixed.params.order() == 4 * g && validate_meta_oracle(fixed).valid() &&
                   validate_meta_literal(fixed).valid() && genus_meta(fixed) == Rational(g) &&
                   R.max_nonsplit_order == 4 * g;
    }
  }
  o.documented = !o.pass && only_known;
  o.note = "order 80 at genus 11 (M(4,20,10,7), M(4,20,10,17)) and a misprinted Dic_g exponent; with exponent g-1 order 4g is attained for every even g";
  return o;
}

Outcome dual_validators() {
  Outcome o;
  const auto S = testing_support::validator_sweep(48, 6, 2);
  o.require(S.disagreements.empty(), std::to_string(S.disagreements.size()) + " of " + std::to_string(S.total) +
                                         " candidates disagree");
  bool only_known = true;
  for (const auto& d : S.disagreements)
    only_known = only_known && testing_support::dihedral_torus_kind(d) &&
                 testing_support::witness_holds(make_group(d.D.params), d.D, d.oracle);
  o.documented = !o.pass && only_known;
  o.note = "all disagreements are dihedral, g0 = 1, two equal reflections; the literal hyperbolic images G^a, F^b miss the oracle's witness";
  return o;
}

Outcome lifts() {
  Outcome o;
  auto check = [&](const std::string& name, const std::string& text, const LiftTarget& target, Int genus,
                   const std::string& DF, const std::string& DG) {
    const auto L = lift_to_split(parse_meta(text), target);
    if (!L) {
      o.require(false, name + ": no lift");
      return;
    }
    o.require(L->genus == genus, name + ": genus " + std::to_string(L->genus));
    o.require(make_group(L->lifted.params).is_split(), name + ": lift not split");
    o.require(validate_meta_oracle(L->lifted).valid(), name + ": lift invalid");
    o.require(same_factor(derive_DF(L->lifted), parse_cyclic(DF)), name + ": D_F " + print_cyclic(derive_DF(L->lifted)));
    o.require(same_factor(derive_DG(L->lifted), parse_cyclic(DG)), name + ": D_G " + print_cyclic(derive_DG(L->lifted)));
  };
  check("Dic6", "((2·12,6,-1),1;[(0,1),(1,6),6])", {}, 21, "(12,1;((1,6),2),((5,6),2))", "(4,6,1;)");
  check("Dic10", "((2·20,10,-1),0;[(1,4),(0,1),4],[(1,4),(9,20),4],[(0,1),(1,20),20])",
        {parse_cyclic("(20,0;((1,20),2),((19,20),2))"), parse_cyclic("(4,0;((1,4),2),((1,2),19))")}, 19,
        "(20,0;((1,20),2),((19,20),2))", "(4,0;((1,4),2),((1,2),19))");
  check("Q8", "((2·4,2,-1),1;[(1,4),(0,1),4],[(0,1),(1,4),4],[(1,4),(1,4),4])", {}, 19, "(4,4;((1,4),2),((3,4),2))",
        "(4,4;((1,4),2),((1,2),3))");
  return o;
}

Outcome small_genus_construction() {
  Outcome o;
  const auto D = parse_meta("((11·10,11,2),0;[(1,2),(1,11),2],[(1,5),(7,11),5],[(3,10),(0,1),10])");
  const auto lit = validate_meta_literal(D);
  const auto orc = validate_meta_oracle(D);
  o.require(lit.valid(), "literal validator: " + lit.failed_condition);
  o.require(orc.valid(), "oracle validator: " + orc.failed_condition);
  // g = 2 is the genus of S/<F>; F acts freely, so S has genus 11 (2 - 1) + 1 = 12
  o.require(genus_meta(D) == Rational(12), "genus " + genus_meta(D).str());
  const auto DF = derive_DF(D);
  o.require(is_free(DF) && DF.n == 11 && DF.g0 == 2, "D_F " + print_cyclic(DF));
  const auto H = make_group(D.params);
  o.require(same_factor(testing_support::factor_by_orbits(D, H, H.F()), parse_cyclic("(11,2,1;)")), "orbit count of D_F");
  const auto Gbar = derive_DGbar(D);
  o.require(canonicalize_cyclic(Gbar) == canonicalize_cyclic(parse_cyclic("(10,0;(1,2),(1,5),(3,10))")),
            "D_Gbar " + print_cyclic(Gbar));
  return o;
}

Outcome properties() {
  Outcome o;
  std::mt19937 rng(20261016);
  std::size_t relation_pairs = 0, derived = 0, free_planar = 0, dicyclic_lifts = 0;
  for (Int g = 2; g <= 6; ++g) {
    const auto T = enumerate_meta(g);
    std::map<GroupParams, std::vector<std::pair<std::size_t, MetacyclicDataSet>>> pools;
    for (std::size_t j = 0; j < T.rows.size(); ++j) {
      const auto& row = T.rows[j];
      const auto H = make_group(row.params);
      for (const auto& F : {row.DF, row.DG}) {
        const auto v = validate_cyclic(F);
        o.require(v.valid && v.genus == Rational(g), "derived factor " + print_cyclic(F) + " of " + print_meta(row.rep));
        ++derived;
      }
      if (is_free(row.DF) && row.rep.g0 == 0) {
        ++free_planar;
        o.require(testing_support::split_by_pairs(H), "free over the sphere but not split: " + print_meta(row.rep));
      }
      auto& pool = pools[row.params];
      pool.push_back({j, row.rep});
      pool.push_back({j, testing_support::disguise(row.rep, H, rng, false)});
    }
    for (const auto& [params, pool] : pools) {
      const std::size_t P = pool.size();
      std::vector<std::vector<char>> rel(P, std::vector<char>(P, 0));
      for (std::size_t i = 0; i < P; ++i)
        for (std::size_t j = 0; j < P; ++j) {
          const auto& A = pool[i].second;
          const auto& B = pool[j].second;
          if (A.g0 != B.g0 || A.triples.size() != B.triples.size()) continue;
          rel[i][j] = equivalent(A, B).has_value();
          ++relation_pairs;
        }
      for (std::size_t i = 0; i < P; ++i) {
        o.require(rel[i][i], "not reflexive on " + print_meta(pool[i].second));
        for (std::size_t j = 0; j < P; ++j) {
          o.require(rel[i][j] == rel[j][i], "not symmetric");
          o.require(static_cast<bool>(rel[i][j]) == (pool[i].first == pool[j].first), "classes and relation differ");
          for (std::size_t k = 0; k < P; ++k)
            if (rel[i][j] && rel[j][k]) o.require(rel[i][k], "not transitive");
        }
      }
    }
  }
  for (Int g = 2; g <= 12; ++g)
    for (Int n = 2; 4 * n <= 84 * (g - 1); n += 2) {
      const auto H = make_group({2, 2 * n, n, 2 * n - 1});
      for (const auto& row : classes_for_group(H, g, false)) {
        const auto L = lift_to_split(row.rep);
        o.require(L && L->genus == 2 * g - 1, "no split lift for " + print_meta(row.rep));
        ++dicyclic_lifts;
      }
    }
  o.require(free_planar > 0 && dicyclic_lifts > 0, "empty property domain");
  std::ostringstream os;
  os << relation_pairs << " equivalence tests, " << derived << " derived factors, " << free_planar
     << " free planar, " << dicyclic_lifts << " dicyclic lifts";
  o.note = os.str();
  return o;
}

}  // namespace

int main() {
  struct Criterion {
    std::string name;
    Outcome (*run)();
    bool known_red;
  };
  const std::vector<Criterion> criteria{
      {"genus-10 non-split table: 13 classes, rows equivalent, factors exact", table_genus_10, true},
      {"genus-11 non-split table without quaternion groups: 10 classes, factors exact", table_genus_11, false},
      {"order bound: no non-split action above 4g for g = 2..12, Dic_g attains 4g", order_bound, true},
      {"literal and oracle validators agree on every candidate (|H| <= 48, g <= 6, g0 <= 2)", dual_validators, true},
      {"split lifts of the Dic6, Dic10 and Q8 actions: genus 21, 19, 19 with the stated factors", lifts, false},
      {"free construction for g = 2, n = 11, k = 2: valid, D_F (11,2,1;), D_Gbar (10,0;(1,2),(1,5),(3,10))", small_genus_construction, false},
      {"property suites: equivalence relation, derived factors, free planar split, dicyclic lifts", properties, false},
  };

  int unexpected = 0;
  for (const auto& c : criteria) {
    const auto t0 = std::chrono::steady_clock::now();
    const Outcome o = c.run();
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    std::ostringstream time;
    time.precision(1);
    time << std::fixed << " (" << secs << " s)";
    std::cout << (o.pass ? "PASS " : "FAIL ") << c.name << time.str() << "\n";
    for (const auto& p : o.problems) std::cout << "     " << p << "\n";
    if (o.pass) {
      if (!o.note.empty() && !c.known_red) std::cout << "     " << o.note << "\n";
      if (c.known_red) std::cout << "     listed as a known failure but passed\n";
      continue;
    }
    if (c.known_red && o.documented) {
      std::cout << "     known failure: " << o.note << "\n";
    } else {
      std::cout << "     unexpected failure\n";
      ++unexpected;
    }
  }
  std::cout << (unexpected ? "acceptance: unexpected failures\n" : "acceptance: only documented failures\n");
  return unexpected ? 1 : 0;
}
