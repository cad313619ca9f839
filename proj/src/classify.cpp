#include "mcg/classify.hpp"

#include <algorithm>
#include <atomic>
#include <map>
#include <mutex>
#include <sstream>
#include <stdexcept>
#include <thread>

#include "mcg/derive.hpp"

namespace mcg {

using Index = MetacyclicGroup::Index;

std::string to_string(EquivalenceMode m) { return m == EquivalenceMode::global ? "global" : "per-pair"; }

EquivalenceMode parse_equivalence_mode(const std::string& s) {
  if (s == "global" || s == "global-a") return EquivalenceMode::global;
  if (s == "per-pair" || s == "per-pair-a" || s == "pair") return EquivalenceMode::per_pair;
  throw std::invalid_argument("unknown equivalence mode '" + s + "' (expected global or per-pair)");
}

// ---------------------------------------------------------------- equivalence

namespace {

struct PairWitness {
  Int a = 0, a_i = 0, b_i = 0;
};

// Triple i of D' against triple j of D under a fixed shift a.
std::optional<PairWitness> pair_witness(const MetacyclicDataSet& D, std::size_t j, const MetacyclicDataSet& Dp,
                                        std::size_t i, Int a) {
  const auto& p = D.params;
  const Int m = D.m();
  if (Dp.triples[i].order != D.triples[j].order) return std::nullopt;
  const Int gp = gamma_of(Dp, i), g = gamma_of(D, j);
  if (mod(gp - g - a * p.u, m) != 0) return std::nullopt;
  const Int dp = delta_of(Dp, i), d = delta_of(D, j);
  const Int twist = mod(pow_mod(p.k, g, p.n) - 1, p.n);
  const Int ord = multiplicative_order(p.k, p.n);
  for (Int ai = 0; ai < ord; ++ai) {
    const Int base = mod(d * pow_mod(p.k, ai, p.n) - a * p.r, p.n);
    for (Int bi = 0; bi < p.n; ++bi)
      if (mod(base + bi * twist - dp, p.n) == 0) return PairWitness{a, ai, bi};
  }
  return std::nullopt;
}

// Perfect matching by augmenting paths; adj[i] lists admissible j for row i.
std::optional<std::vector<std::size_t>> perfect_matching(const std::vector<std::vector<std::size_t>>& adj) {
  const std::size_t L = adj.size();
  std::vector<std::ptrdiff_t> owner(L, -1);
  std::vector<char> seen;
  std::function<bool(std::size_t)> augment = [&](std::size_t i) {
    for (std::size_t j : adj[i]) {
      if (seen[j]) continue;
      seen[j] = 1;
      if (owner[j] < 0 || augment(static_cast<std::size_t>(owner[j]))) {
        owner[j] = static_cast<std::ptrdiff_t>(i);
        return true;
      }
    }
    return false;
  };
  for (std::size_t i = 0; i < L; ++i) {
    seen.assign(L, 0);
    if (!augment(i)) return std::nullopt;
  }
  std::vector<std::size_t> match(L);
  for (std::size_t j = 0; j < L; ++j) match[static_cast<std::size_t>(owner[j])] = j;
  return match;
}

}  // namespace

std::optional<EquivalenceWitness> equivalent(const MetacyclicDataSet& D, const MetacyclicDataSet& Dp,
                                             EquivalenceMode mode) {
  if (D.params != Dp.params) throw std::invalid_argument("equivalence needs equal group parameters");
  if (D.g0 != Dp.g0) throw std::invalid_argument("equivalence needs equal orbit genus");
  if (D.triples.size() != Dp.triples.size()) throw std::invalid_argument("equivalence needs equal numbers of cones");
  const std::size_t L = D.triples.size();
  const Int m = D.m();

  auto solve = [&](std::optional<Int> fixed_a) -> std::optional<EquivalenceWitness> {
    std::vector<std::vector<std::size_t>> adj(L);
    std::map<std::pair<std::size_t, std::size_t>, PairWitness> wit;
    for (std::size_t i = 0; i < L; ++i)
      for (std::size_t j = 0; j < L; ++j) {
        std::optional<PairWitness> w;
        if (fixed_a) {
          w = pair_witness(D, j, Dp, i, *fixed_a);
        } else {
          for (Int a = 0; a < m && !w; ++a) w = pair_witness(D, j, Dp, i, a);
        }
        if (w) {
          adj[i].push_back(j);
          wit[{i, j}] = *w;
        }
      }
    auto match = perfect_matching(adj);
    if (!match) return std::nullopt;
    EquivalenceWitness W;
    W.match = *match;
    for (std::size_t i = 0; i < L; ++i) {
      const auto& w = wit.at({i, W.match[i]});
      W.a.push_back(w.a);
      W.a_i.push_back(w.a_i);
      W.b_i.push_back(w.b_i);
    }
    return W;
  };

  if (mode == EquivalenceMode::per_pair) return solve(std::nullopt);
  for (Int a = 0; a < m; ++a)
    if (auto W = solve(a)) return W;
  return std::nullopt;
}

std::string reverify_equivalence(const MetacyclicDataSet& D, const MetacyclicDataSet& Dp,
                                 const EquivalenceWitness& W) {
  const auto& p = D.params;
  const std::size_t L = D.triples.size();
  if (Dp.params != p || Dp.triples.size() != L || W.match.size() != L) return "shape";
  std::vector<char> used(L, 0);
  for (std::size_t i = 0; i < L; ++i) {
    const std::size_t j = W.match[i];
    if (j >= L || used[j]) return "bijection";
    used[j] = 1;
    if (Dp.triples[i].order != D.triples[j].order) return "i";
    if (mod(gamma_of(Dp, i) - gamma_of(D, j) - W.a[i] * p.u, D.m()) != 0) return "ii";
    const Int rhs = delta_of(D, j) * pow_mod(p.k, W.a_i[i], p.n) +
                    W.b_i[i] * (pow_mod(p.k, gamma_of(D, j), p.n) - 1) - W.a[i] * p.r;
    if (mod(delta_of(Dp, i) - rhs, p.n) != 0) return "iii";
  }
  return {};
}

// ---------------------------------------------------------------- candidates

bool is_generalized_quaternion(const GroupParams& p) {
  if (p.u != 2 || p.n < 4 || (p.n & (p.n - 1)) != 0) return false;
  return p.r == p.n / 2 && mod(p.k, p.n) == p.n - 1;
}

std::vector<GroupParams> candidate_groups(Int g, const EnumerationFilters& f) {
  const Int bound = f.max_order > 0 ? f.max_order : (f.nonsplit_only ? 4 * g : 84 * (g - 1));
  std::vector<GroupParams> out;
  auto consider = [&](const GroupParams& p) {
    if (p.k == 1) return;
    if (f.exclude_quaternion && is_generalized_quaternion(p)) return;
    if (f.nonsplit_only && p.r == p.n) return;
    if (f.nonsplit_only || f.canonical_presentations) {
      const MetacyclicGroup H(p);
      if (f.nonsplit_only && H.is_split()) return;
      if (f.canonical_presentations && H.canonical_presentation() != p) return;
    }
    out.push_back(p);
  };
  if (f.only) {
    if (f.only->order() <= bound) consider(checked_params(f.only->u, f.only->n, f.only->r, f.only->k));
    return out;
  }
  for (Int N = 4; N <= bound; ++N)
    for (Int u : divisors(N)) {
      const Int n = N / u;
      if (u < 2 || n < 3) continue;
      for (Int r : divisors(n))
        for (Int k : units(n)) {
          if (pow_mod(k, u, n) != 1 || mod(r * (k - 1), n) != 0) continue;
          consider(GroupParams{u, n, r, k});
        }
    }
  std::sort(out.begin(), out.end(), [](const GroupParams& a, const GroupParams& b) {
    return std::tuple(a.order(), a.n, a.r, a.k) < std::tuple(b.order(), b.n, b.r, b.k);
  });
  return out;
}

std::vector<Signature> signatures(Int g, Int N, const std::vector<Int>& orders) {
  std::vector<Int> ords = orders;
  std::sort(ords.begin(), ords.end());
  ords.erase(std::unique(ords.begin(), ords.end()), ords.end());
  const Rational target(2 * g - 2, N);
  std::vector<Signature> out;
  for (Int g0 = 0;; ++g0) {
    const Rational R = target - Rational(2 * g0 - 2);
    if (R < Rational(0)) break;
    std::vector<Int> cur;
    std::function<void(std::size_t, Rational)> rec = [&](std::size_t from, Rational left) {
      if (left == Rational(0)) {
        out.push_back({g0, cur});
        return;
      }
      // every further term contributes at least 1/2
      if (left < Rational(1, 2)) return;
      for (std::size_t i = from; i < ords.size(); ++i) {
        const Rational term = Rational(1) - Rational(1, ords[i]);
        if (left < term) break;  // terms grow with the order
        cur.push_back(ords[i]);
        rec(i, left - term);
        cur.pop_back();
      }
    };
    rec(0, R);
  }
  return out;
}

// ---------------------------------------------------------------- realization

namespace {

class Realizer {
 public:
  Realizer(const MetacyclicGroup& H, Int g0) : H_(H), g0_(g0), N_(static_cast<Index>(H.order())) {
    if (g0 >= 1) {
      // elements expressible as a product of g0 commutators
      ElementSet single(static_cast<std::size_t>(N_));
      for (Index y = 0; y < N_; ++y)
        for (Index z = 0; z < N_; ++z) single.insert(static_cast<std::size_t>(H.commutator(y, z)));
      ElementSet acc = single;
      for (Int j = 1; j < g0; ++j) {
        ElementSet next(static_cast<std::size_t>(N_));
        for (auto a : acc.members())
          for (auto b : single.members()) next.insert(static_cast<std::size_t>(H.mul(a, b)));
        acc = next;
      }
      products_ = acc;
    }
  }

  /// Images x_i with x_i in class cls[i], or empty when the class sequence is not realizable.
  std::optional<std::vector<Index>> realize(const std::vector<Int>& cls, const std::vector<Int>& orders) {
    cls_ = &cls;
    orders_ = &orders;
    x_.assign(cls.size(), 0);
    found_.reset();
    fallback_.reset();
    if (cls.empty()) {
      if (g0_ == 0) return std::nullopt;
      literal_valid_ = accept_leaf(H_.identity()) == Leaf::both;
      return fallback_;
    }
    x_[0] = H_.classes()[static_cast<std::size_t>(cls[0])].front();
    dfs(1, x_[0]);
    literal_valid_ = found_.has_value();
    return found_ ? found_ : fallback_;
  }

  /// Whether the tuple returned by the last realize() also passes the literal conditions.
  bool literal_valid() const { return literal_valid_; }

 private:
  void dfs(std::size_t i, Index prefix) {
    if (found_) return;
    const auto& cls = *cls_;
    const std::size_t L = cls.size();
    if (g0_ == 0 && i + 1 == L) {
      const Index last = H_.inv(prefix);
      if (H_.class_id(last) != cls[i]) return;
      x_[i] = last;
      leaf(H_.identity());
      return;
    }
    if (i == L) {
      leaf(prefix);
      return;
    }
    for (Index y : H_.classes()[static_cast<std::size_t>(cls[i])]) {
      x_[i] = y;
      dfs(i + 1, H_.mul(prefix, y));
      if (found_) return;
    }
  }

  enum class Leaf { none, oracle, both };

  void leaf(Index product) {
    if (accept_leaf(product) == Leaf::both) found_ = x_;
  }

  // Realizability is decided by the epimorphism search; among realizing tuples the first one
  // that also satisfies the literal conditions is preferred as representative.
  Leaf accept_leaf(Index product) {
    if (g0_ == 0) {
      if (product != H_.identity()) return Leaf::none;
      if (H_.generated_subgroup(x_).size() != static_cast<std::size_t>(N_)) return Leaf::none;
    } else if (!products_.contains(static_cast<std::size_t>(H_.inv(product)))) {
      return Leaf::none;
    }
    const MetacyclicDataSet D = data_set();
    if (g0_ > 0 && !validate_meta_oracle(D, H_).valid()) return Leaf::none;
    if (!fallback_) fallback_ = x_;
    return validate_meta(D).valid() ? Leaf::both : Leaf::oracle;
  }

  MetacyclicDataSet data_set() const {
    MetacyclicDataSet D{H_.params(), g0_, {}};
    for (std::size_t i = 0; i < x_.size(); ++i) {
      const Element e = H_.element(x_[i]);
      D.triples.push_back(triple_from_exponents(H_.params(), e.b, e.a, (*orders_)[i]));
    }
    return D;
  }

  const MetacyclicGroup& H_;
  Int g0_;
  Index N_;
  ElementSet products_;
  const std::vector<Int>* cls_ = nullptr;
  const std::vector<Int>* orders_ = nullptr;
  std::vector<Index> x_;
  std::optional<std::vector<Index>> found_;
  std::optional<std::vector<Index>> fallback_;
  bool literal_valid_ = false;
};

}  // namespace

std::vector<ClassRow> classes_for_group(const MetacyclicGroup& H, Int g, bool validate_rows) {
  const auto& p = H.params();
  const Index N = static_cast<Index>(H.order());
  std::map<Int, std::vector<Int>> classes_of_order;
  for (std::size_t c = 0; c < H.classes().size(); ++c) {
    const Int o = H.element_order(H.classes()[c].front());
    if (o >= 2) classes_of_order[o].push_back(static_cast<Int>(c));
  }
  std::vector<Int> orders;
  for (const auto& [o, _] : classes_of_order) orders.push_back(o);

  std::vector<ClassRow> rows;
  std::map<Int, Realizer> realizers;
  for (const auto& sig : signatures(g, N, orders)) {
    auto it = realizers.find(sig.g0);
    if (it == realizers.end()) it = realizers.emplace(sig.g0, Realizer(H, sig.g0)).first;
    Realizer& R = it->second;

    // runs of equal orders; each run takes a non-decreasing sequence of class ids
    std::vector<std::pair<Int, std::size_t>> runs;
    for (Int o : sig.orders) {
      if (!runs.empty() && runs.back().first == o)
        ++runs.back().second;
      else
        runs.push_back({o, 1});
    }
    std::vector<Int> cls;
    std::function<void(std::size_t, std::size_t, std::size_t)> pick = [&](std::size_t run, std::size_t filled,
                                                                          std::size_t from) {
      if (run == runs.size()) {
        auto x = R.realize(cls, sig.orders);
        if (!x) return;
        MetacyclicDataSet D{p, sig.g0, {}};
        for (std::size_t i = 0; i < x->size(); ++i) {
          const Element e = H.element((*x)[i]);
          D.triples.push_back(triple_from_exponents(p, e.b, e.a, sig.orders[i]));
        }
        const bool literal = R.literal_valid();
        if (validate_rows) {
          const auto orc = validate_meta_oracle(D, H);
          if (!orc.valid())
            throw std::logic_error("enumerated representative failed validation: " + print_meta(D) + " (" +
                                   orc.message + ")");
          if (literal != validate_meta(D).valid())
            throw std::logic_error("literal verdict changed on re-validation: " + print_meta(D));
        }
        rows.push_back({p, D, sorted_cyclic(derive_DG(D, H)), sorted_cyclic(derive_DF(D, H)), literal});
        return;
      }
      const auto& pool = classes_of_order.at(runs[run].first);
      if (filled == runs[run].second) {
        pick(run + 1, 0, 0);
        return;
      }
      for (std::size_t c = from; c < pool.size(); ++c) {
        cls.push_back(pool[c]);
        pick(run, filled + 1, c);
        cls.pop_back();
      }
    };
    pick(0, 0, 0);
  }
  return rows;
}

bool row_before(const ClassRow& a, const ClassRow& b) {
  const auto& p = a.params;
  const auto& q = b.params;
  return std::tuple(p.order(), p.n, p.r, p.k, a.rep.g0, a.rep.triples) <
         std::tuple(q.order(), q.n, q.r, q.k, b.rep.g0, b.rep.triples);
}

ClassificationTable enumerate_meta(Int g, const EnumerationFilters& filters) {
  if (g < 2) throw std::invalid_argument("genus must be at least 2");
  ClassificationTable T;
  T.genus = g;
  T.filters = filters;
  const auto groups = candidate_groups(g, filters);
  if (filters.progress)
    filters.progress("genus " + std::to_string(g) + ": " + std::to_string(groups.size()) + " candidate groups");

  std::vector<std::vector<ClassRow>> found(groups.size());
  std::vector<std::exception_ptr> errors(groups.size());
  std::atomic<std::size_t> next{0};
  std::mutex log_mutex;
  auto work = [&] {
    for (std::size_t i; (i = next.fetch_add(1)) < groups.size();) {
      try {
        const MetacyclicGroup H(groups[i]);
        found[i] = classes_for_group(H, g, filters.validate_rows);
        // distinct class multisets can never be equivalent; check anyway under the chosen mode
        for (std::size_t a = 0; a < found[i].size(); ++a)
          for (std::size_t b = a + 1; b < found[i].size(); ++b) {
            const auto& A = found[i][a].rep;
            const auto& B = found[i][b].rep;
            if (A.g0 == B.g0 && A.triples.size() == B.triples.size() && equivalent(A, B, filters.mode))
              throw std::logic_error("duplicate class: " + print_meta(A) + " ~ " + print_meta(B));
          }
      } catch (...) {
        errors[i] = std::current_exception();
      }
      if (filters.progress) {
        std::lock_guard lock(log_mutex);
        filters.progress(to_string(groups[i]) + ": " + std::to_string(found[i].size()) + " classes");
      }
    }
  };
  const unsigned workers = std::max(1U, filters.workers);
  if (workers == 1) {
    work();
  } else {
    std::vector<std::thread> pool;
    for (unsigned w = 0; w < workers; ++w) pool.emplace_back(work);
    for (auto& t : pool) t.join();
  }
  for (auto& e : errors)
    if (e) std::rethrow_exception(e);
  for (auto& rows : found)
    for (auto& row : rows) T.rows.push_back(std::move(row));
  std::sort(T.rows.begin(), T.rows.end(), row_before);
  return T;
}

// ---------------------------------------------------------------- query

namespace {

bool same_factor(const CyclicDataSet& derived, const CyclicDataSet& given) {
  // a free factor's rotation class is not determined by fixed-point data
  if (is_free(derived) && is_free(given)) return derived.n == given.n && derived.g0 == given.g0;
  return canonicalize_cyclic(derived) == canonicalize_cyclic(given);
}

}  // namespace

std::optional<MetacyclicDataSet> query_pair(const CyclicDataSet& DF, const CyclicDataSet& DG, Int u, Int r, Int k) {
  check_well_formed(DF);
  check_well_formed(DG);
  const GroupParams p = checked_params(u, DF.n, r, k);
  if (DG.n != p.m())
    throw std::invalid_argument("D_G has degree " + std::to_string(DG.n) + " but G has order " +
                                std::to_string(p.m()));
  const Rational gf = genus_cyclic(DF), gg = genus_cyclic(DG);
  if (!(gf == gg)) throw std::invalid_argument("D_F and D_G have different genus (" + gf.str() + " vs " + gg.str() + ")");
  if (!gf.is_integer() || gf.num() < 2) throw std::invalid_argument("genus must be an integer at least 2");
  if (!validate_cyclic(DF).valid || !validate_cyclic(DG).valid) return std::nullopt;
  const MetacyclicGroup H(p);
  for (const auto& row : classes_for_group(H, gf.num(), false))
    if (same_factor(row.DF, DF) && same_factor(row.DG, DG)) return row.rep;
  return std::nullopt;
}

// ---------------------------------------------------------------- emitters

namespace {

std::string group_label(const GroupParams& p) {
  const std::string k = (p.n > 2 && p.k == p.n - 1) ? "-1" : std::to_string(p.k);
  return "M(" + std::to_string(p.u) + "," + std::to_string(p.n) + "," + std::to_string(p.r) + "," + k + ")";
}

std::string factors_text(const ClassRow& row) {
  return "[" + print_cyclic(row.DG) + ";" + print_cyclic(row.DF) + "]";
}

std::string filter_text(const EnumerationFilters& f) {
  std::string s;
  s += f.nonsplit_only ? "non-split" : "all";
  if (f.exclude_quaternion) s += ", quaternion groups excluded";
  return s;
}

std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

}  // namespace

std::string table_to_text(const ClassificationTable& T) {
  std::ostringstream os;
  os << "# genus " << T.genus << ", " << filter_text(T.filters) << ", " << T.rows.size() << " classes\n";
  os << "# group | data set | [D_G;D_F]\n";
  for (const auto& row : T.rows) {
    os << group_label(row.params) << " | " << print_meta(row.rep) << " | " << factors_text(row);
    if (is_free(row.DF) || is_free(row.DG)) os << " | free factor, rotation class not determined";
    os << "\n";
  }
  return os.str();
}

std::string table_to_csv(const ClassificationTable& T) {
  std::ostringstream os;
  os << "u,n,r,k,g0,data_set,D_G,D_F,free_factor\n";
  for (const auto& row : T.rows) {
    const auto& p = row.params;
    os << p.u << ',' << p.n << ',' << p.r << ',' << p.k << ',' << row.rep.g0 << ',' << csv_field(print_meta(row.rep))
       << ',' << csv_field(print_cyclic(row.DG)) << ',' << csv_field(print_cyclic(row.DF)) << ','
       << ((is_free(row.DF) || is_free(row.DG)) ? "yes" : "no") << '\n';
  }
  return os.str();
}

nlohmann::ordered_json table_to_json(const ClassificationTable& T) {
  nlohmann::ordered_json j;
  j["schema"] = "mcg/1";
  j["kind"] = "classification";
  j["genus"] = T.genus;
  j["filters"] = {{"nonsplit", T.filters.nonsplit_only},
                  {"exclude_quaternion", T.filters.exclude_quaternion},
                  {"equivalence", to_string(T.filters.mode)}};
  auto rows = nlohmann::ordered_json::array();
  for (const auto& row : T.rows) {
    nlohmann::ordered_json r;
    r["group"] = {{"u", row.params.u}, {"n", row.params.n}, {"r", row.params.r}, {"k", row.params.k}};
    r["text"] = print_meta(row.rep);
    r["data_set"] = meta_to_json(row.rep);
    r["D_G"] = cyclic_to_json(row.DG);
    r["D_F"] = cyclic_to_json(row.DF);
    r["D_G_text"] = print_cyclic(row.DG);
    r["D_F_text"] = print_cyclic(row.DF);
    if (is_free(row.DF) || is_free(row.DG)) r["d_undetermined"] = true;
    rows.push_back(std::move(r));
  }
  j["rows"] = std::move(rows);
  return j;
}

}  // namespace mcg
