#include "mcg/applications.hpp"

#include <algorithm>
#include <atomic>
#include <map>
#include <sstream>
#include <stdexcept>
#include <thread>

#include "mcg/derive.hpp"

namespace mcg {

// ---------------------------------------------------------------- order bound

bool BoundReport::holds() const {
  if (max_nonsplit_order > 4 * genus || !above_bound.empty()) return false;
  if (genus % 2 != 0) return true;
  const GroupParams dic{2, 2 * genus, genus, 2 * genus - 1};
  return max_nonsplit_order == 4 * genus &&
         std::find(attained_by.begin(), attained_by.end(), dic) != attained_by.end();
}

MetacyclicDataSet dicyclic_bound_data_set(Int g, std::optional<Int> last_exponent) {
  if (g < 2 || g % 2 != 0) throw std::invalid_argument("the dicyclic bound data set needs an even genus >= 2");
  MetacyclicDataSet D;
  D.params = checked_params(2, 2 * g, g, -1);
  D.g0 = 0;
  D.triples = {{1, 4, 0, 1, 4}, {1, 4, 1, 2 * g, 4}};
  D.triples.push_back(triple_from_exponents(D.params, 0, last_exponent.value_or(2 * g - 1), 2 * g));
  return D;
}

namespace {

// Non-split presentations of order N (not reduced to one per isomorphism type).
std::vector<GroupParams> nonsplit_candidates_of_order(Int N) {
  std::vector<GroupParams> out;
  for (Int u : divisors(N)) {
    const Int n = N / u;
    if (u < 2 || n < 3) continue;
    for (Int r : divisors(n)) {
      if (r == n) continue;
      for (Int k : units(n)) {
        if (k == 1 || pow_mod(k, u, n) != 1 || mod(r * (k - 1), n) != 0) continue;
        out.push_back({u, n, r, k});
      }
    }
  }
  return out;
}

}  // namespace

BoundReport bound_check(Int g, unsigned workers) {
  if (g < 2) throw std::invalid_argument("genus must be at least 2");
  BoundReport R;
  R.genus = g;
  EnumerationFilters f;
  f.nonsplit_only = true;
  f.workers = workers;
  const auto T = enumerate_meta(g, f);
  for (const auto& row : T.rows) {
    const Int N = row.params.order();
    if (N > R.max_nonsplit_order) {
      R.max_nonsplit_order = N;
      R.attained_by.clear();
    }
    if (N == R.max_nonsplit_order &&
        std::find(R.attained_by.begin(), R.attained_by.end(), row.params) == R.attained_by.end())
      R.attained_by.push_back(row.params);
  }

  // above 4g: only orders admitting a Riemann-Hurwitz signature with cone orders dividing N
  R.scanned_to = 84 * (g - 1);
  std::vector<GroupParams> jobs;
  for (Int N = 4 * g + 1; N <= R.scanned_to; ++N) {
    std::vector<Int> ords;
    for (Int d : divisors(N))
      if (d >= 2) ords.push_back(d);
    if (signatures(g, N, ords).empty()) continue;
    for (const auto& p : nonsplit_candidates_of_order(N)) jobs.push_back(p);
  }
  std::vector<std::vector<MetacyclicDataSet>> found(jobs.size());
  std::atomic<std::size_t> next{0};
  auto work = [&] {
    for (std::size_t i; (i = next.fetch_add(1)) < jobs.size();) {
      const MetacyclicGroup H(jobs[i]);
      if (H.is_split()) continue;
      for (auto& row : classes_for_group(H, g, false)) found[i].push_back(std::move(row.rep));
    }
  };
  std::vector<std::thread> pool;
  for (unsigned w = 1; w < std::max(1U, workers); ++w) pool.emplace_back(work);
  work();
  for (auto& t : pool) t.join();
  for (auto& v : found)
    for (auto& D : v) R.above_bound.push_back(std::move(D));

  if (g % 2 == 0) {
    auto check = [g](const MetacyclicDataSet& D) {
      const auto lit = validate_meta(D);
      const auto orc = validate_meta_oracle(D);
      return lit.valid() && orc.valid() && lit.genus == Rational(g) && D.params.order() == 4 * g;
    };
    R.dicyclic = dicyclic_bound_data_set(g);
    R.dicyclic_valid = check(*R.dicyclic);
    R.dicyclic_corrected = dicyclic_bound_data_set(g, g - 1);
    R.dicyclic_corrected_valid = check(*R.dicyclic_corrected);
  }
  return R;
}

std::string bound_to_text(const BoundReport& R) {
  std::ostringstream os;
  os << "genus " << R.genus << ": largest non-split order " << R.max_nonsplit_order << " (4g = " << 4 * R.genus
     << ")\n";
  os << "attained by:";
  for (const auto& p : R.attained_by) os << ' ' << to_string(p);
  os << "\n";
  os << "non-split data sets with order in (" << 4 * R.genus << ", " << R.scanned_to << "]: " << R.above_bound.size()
     << "\n";
  for (const auto& D : R.above_bound) os << "  " << print_meta(D) << "\n";
  if (R.dicyclic)
    os << "dicyclic data set " << print_meta(*R.dicyclic) << ": " << (R.dicyclic_valid ? "valid" : "invalid") << "\n";
  if (R.dicyclic_corrected)
    os << "dicyclic data set " << print_meta(*R.dicyclic_corrected) << ": "
       << (R.dicyclic_corrected_valid ? "valid" : "invalid") << "\n";
  os << "bound " << (R.holds() ? "holds" : "violated") << "\n";
  return os.str();
}

nlohmann::ordered_json bound_to_json(const BoundReport& R) {
  nlohmann::ordered_json j;
  j["schema"] = "mcg/1";
  j["kind"] = "bound";
  j["genus"] = R.genus;
  j["max_nonsplit_order"] = R.max_nonsplit_order;
  auto att = nlohmann::ordered_json::array();
  for (const auto& p : R.attained_by) att.push_back(to_string(p));
  j["attained_by"] = att;
  j["scanned_to"] = R.scanned_to;
  auto above = nlohmann::ordered_json::array();
  for (const auto& D : R.above_bound) above.push_back(print_meta(D));
  j["above_bound"] = above;
  if (R.dicyclic) {
    j["dicyclic"] = print_meta(*R.dicyclic);
    j["dicyclic_valid"] = R.dicyclic_valid;
  }
  if (R.dicyclic_corrected) {
    j["dicyclic_corrected"] = print_meta(*R.dicyclic_corrected);
    j["dicyclic_corrected_valid"] = R.dicyclic_corrected_valid;
  }
  j["holds"] = R.holds();
  return j;
}

// ---------------------------------------------------------------- dicyclic actions

std::optional<DicyclicForm> dicyclic_form(const CyclicDataSet& DF) {
  std::map<std::pair<Int, Int>, Int> count;  // (m, c) -> multiplicity
  for (const auto& c : DF.cones) ++count[{c.m, mod(c.c, c.m)}];
  DicyclicForm form{DF.n, DF.g0, DF.d, {}};
  for (const auto& [key, mult] : count) {
    const auto [m, c] = key;
    const Int neg = mod(-c, m);
    if (neg == c) {
      if (mult % 2 != 0) return std::nullopt;
      for (Int i = 0; i < mult / 2; ++i) form.pairs.push_back({c, m});
      continue;
    }
    const auto it = count.find({m, neg});
    if (it == count.end() || it->second != mult) return std::nullopt;
    if (c < neg)
      for (Int i = 0; i < mult; ++i) form.pairs.push_back({c, m});
  }
  std::stable_sort(form.pairs.begin(), form.pairs.end(), cone_before);
  return form;
}

namespace {

Int pair_sum(const std::vector<Cone>& pairs, Int degree) {
  Int s = 0;
  for (const auto& p : pairs) s += p.c * (degree / p.m);
  return mod(s, degree);
}

// sign choices for clause (ii)(c): some choice with sum = 2 (mod 2n)
std::optional<std::vector<Cone>> signed_pairs_summing_to(const std::vector<Cone>& pairs, Int degree, Int target) {
  std::vector<Cone> cur = pairs;
  std::function<bool(std::size_t, Int)> rec = [&](std::size_t i, Int acc) {
    if (i == pairs.size()) return mod(acc - target, degree) == 0;
    for (Int sign : {1, -1}) {
      cur[i].c = mod(sign * pairs[i].c, pairs[i].m);
      if (rec(i + 1, acc + cur[i].c * (degree / pairs[i].m))) return true;
    }
    return false;
  };
  if (rec(0, 0)) return cur;
  return std::nullopt;
}

Triple f_power(const GroupParams& p, const Cone& c) {
  return triple_from_exponents(p, 0, c.c * (p.n / c.m), c.m);
}

}  // namespace

DicyclicResult dicyclic_exists(const CyclicDataSet& DF) {
  if (DF.n % 2 != 0) throw std::invalid_argument("D_F must have even degree 2n");
  const Int n = DF.n / 2;
  if (n % 2 != 0) throw std::invalid_argument("n = " + std::to_string(n) + " is odd; Dic_n is then split");
  check_well_formed(DF);

  // The shape test comes first: an unpaired cone list is a negative answer even when the
  // input would also fail validation.
  DicyclicResult R;
  R.form = dicyclic_form(DF);
  if (!R.form) {
    R.message = "cones do not pair under c -> -c";
    return R;
  }
  const auto verdict = validate_cyclic(DF);
  if (!verdict.valid) throw std::invalid_argument("D_F is not a valid cyclic data set: " + verdict.message);
  const auto& pairs = R.form->pairs;
  const Int deg = DF.n;
  const Int half_units = std::count(pairs.begin(), pairs.end(), Cone{1, 2});
  const GroupParams p = checked_params(2, deg, n, -1);
  MetacyclicDataSet W{p, 0, {}};

  auto without_halves = [&](std::size_t drop) {
    // the remaining pairs once `drop` copies of the (1,2) pair are set aside
    std::vector<Cone> rest;
    std::size_t dropped = 0;
    for (const auto& c : pairs) {
      if (c == Cone{1, 2} && dropped < drop) {
        ++dropped;
        continue;
      }
      rest.push_back(c);
    }
    return rest;
  };

  if (DF.g0 % 2 == 0) {
    if (half_units < 1) {
      R.message = "g0 even and no self-paired (1,2) cone";
      return R;
    }
    R.clause = "i";
    const auto rest = without_halves(1);
    W.g0 = DF.g0 / 2;
    W.triples.push_back(triple_from_exponents(p, 1, 0, 4));
    W.triples.push_back(triple_from_exponents(p, 3, -pair_sum(rest, deg), 4));
    for (const auto& c : rest) W.triples.push_back(f_power(p, c));
  } else {
    const bool even_sum = pair_sum(pairs, deg) % 2 == 0;
    Int l = 1;
    for (const auto& c : pairs) l = lcm(l, c.m);
    std::optional<std::vector<Cone>> signed_pairs;
    if (half_units >= 2) {
      R.clause = "ii.a";
    } else if (DF.g0 == 1 && (signed_pairs = signed_pairs_summing_to(pairs, deg, 2))) {
      R.clause = "ii.c";
    } else if (DF.g0 == 1 && even_sum && l == deg) {
      R.clause = "ii.d";
    } else if (DF.g0 >= 3 && even_sum) {
      R.clause = "ii.b";
    } else {
      R.message = "g0 odd and none of the clauses (a)-(d) holds";
      return R;
    }
    // Four G-type cones give the involution on S/<F> four fixed points, so the orbit genus
    // drops to (g0 - 1)/2 in clause (a); without them it is (g0 + 1)/2.
    W.g0 = R.clause == "ii.a" ? (DF.g0 - 1) / 2 : (DF.g0 + 1) / 2;
    if (R.clause == "ii.a") {
      const auto rest = without_halves(2);
      W.triples.push_back(triple_from_exponents(p, 1, 0, 4));
      W.triples.push_back(triple_from_exponents(p, 1, 0, 4));
      W.triples.push_back(triple_from_exponents(p, 1, 1, 4));
      W.triples.push_back(triple_from_exponents(p, 1, 1 - pair_sum(rest, deg), 4));
      for (const auto& c : rest) W.triples.push_back(f_power(p, c));
    } else {
      for (const auto& c : signed_pairs ? *signed_pairs : pairs) W.triples.push_back(f_power(p, c));
    }
  }
  R.exists = true;
  R.witness = W;
  const auto lit = validate_meta(W);
  const auto orc = validate_meta_oracle(W);
  R.witness_valid = lit.valid() && orc.valid();
  if (R.witness_valid) {
    const auto derived = derive_DF(W);
    R.witness_matches = is_free(derived) && is_free(DF)
                            ? derived.n == DF.n && derived.g0 == DF.g0
                            : canonicalize_cyclic(derived) == canonicalize_cyclic(DF);
  }
  R.message = R.witness_valid ? (R.witness_matches ? "witness valid" : "witness valid but derives a different D_F")
                              : "witness fails validation: " + lit.message;
  return R;
}

nlohmann::ordered_json dicyclic_to_json(const DicyclicResult& R) {
  nlohmann::ordered_json j;
  j["schema"] = "mcg/1";
  j["kind"] = "dicyclic";
  j["exists"] = R.exists;
  if (R.form) {
    auto pairs = nlohmann::ordered_json::array();
    for (const auto& c : R.form->pairs) pairs.push_back({{"c", c.c}, {"m", c.m}});
    j["pairs"] = pairs;
  }
  if (!R.clause.empty()) j["clause"] = R.clause;
  if (R.witness) {
    j["witness"] = print_meta(*R.witness);
    j["witness_valid"] = R.witness_valid;
    j["witness_matches"] = R.witness_matches;
  }
  j["message"] = R.message;
  return j;
}

// ---------------------------------------------------------------- lifts

namespace {

// Calls visit(lift) for each valid lift in lexicographic shift order until it returns true.
template <class Visit>
void for_each_lift(const MetacyclicDataSet& D, Visit visit) {
  const auto& p = D.params;
  if (p.r == p.n) throw std::invalid_argument("amalgam r = n: the group is already split");
  const Int nu = p.n / p.r;
  const GroupParams lp = checked_params(nu * p.u, p.n, p.n, p.k);
  const MetacyclicGroup H(lp);
  const std::size_t L = D.triples.size();
  const Int m = D.m();  // equals the order of G in the lift

  std::vector<Int> shifts(L, 0);
  for (;;) {
    MetacyclicDataSet T{lp, D.g0, {}};
    for (std::size_t i = 0; i < L; ++i) {
      const Int gamma = mod(gamma_of(D, i) + shifts[i] * p.u, m);
      const Int delta = mod(delta_of(D, i) - shifts[i] * p.r, p.n);
      T.triples.push_back(triple_from_exponents(lp, gamma, delta, D.triples[i].order));
    }
    if (validate_meta_oracle(T, H).valid() && validate_meta(T).valid()) {
      if (visit(LiftResult{nu, T, shifts, genus_meta(T).num()}, H)) return;
    }
    std::size_t i = L;
    while (i > 0 && ++shifts[i - 1] == nu) shifts[--i] = 0;
    if (i == 0) return;
  }
}

bool factor_matches(const CyclicDataSet& derived, const std::optional<CyclicDataSet>& want) {
  if (!want) return true;
  if (is_free(derived) && is_free(*want)) return derived.n == want->n && derived.g0 == want->g0;
  return canonicalize_cyclic(derived) == canonicalize_cyclic(*want);
}

}  // namespace

std::vector<LiftResult> all_lifts(const MetacyclicDataSet& D) {
  std::vector<LiftResult> out;
  for_each_lift(D, [&](LiftResult R, const MetacyclicGroup&) {
    out.push_back(std::move(R));
    return false;
  });
  return out;
}

std::optional<LiftResult> lift_to_split(const MetacyclicDataSet& D, const LiftTarget& target) {
  std::optional<LiftResult> found;
  for_each_lift(D, [&](LiftResult R, const MetacyclicGroup& H) {
    if (!factor_matches(derive_DF(R.lifted, H), target.DF) || !factor_matches(derive_DG(R.lifted, H), target.DG))
      return false;
    found = std::move(R);
    return true;
  });
  return found;
}

nlohmann::ordered_json lift_to_json(const LiftResult& R) {
  nlohmann::ordered_json j;
  j["schema"] = "mcg/1";
  j["kind"] = "lift";
  j["nu"] = R.nu;
  j["genus"] = R.genus;
  j["lifted"] = print_meta(R.lifted);
  j["shifts"] = R.shifts;
  j["D_F"] = print_cyclic(sorted_cyclic(derive_DF(R.lifted)));
  j["D_G"] = print_cyclic(sorted_cyclic(derive_DG(R.lifted)));
  return j;
}

}  // namespace mcg
