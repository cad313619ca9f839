#include "mcg/meta.hpp"

#include <algorithm>

#include "mcg/notation.hpp"

namespace mcg {

Int gamma_of(const MetacyclicDataSet& D, std::size_t i) {
  const auto& t = D.triples[i];
  return mod(t.c1 * (D.m() / t.n1), D.m());
}

Int delta_of(const MetacyclicDataSet& D, std::size_t i) {
  const auto& t = D.triples[i];
  return mod(t.c2 * (D.params.n / t.n2), D.params.n);
}

Triple triple_from_exponents(const GroupParams& p, Int gamma, Int delta, Int order) {
  const Int m = p.m();
  gamma = mod(gamma, m);
  delta = mod(delta, p.n);
  Triple t;
  t.order = order;
  if (gamma == 0) {
    t.c1 = 0;
    t.n1 = 1;
  } else {
    const Int g = gcd(gamma, m);
    t.n1 = m / g;
    t.c1 = gamma / g;
  }
  if (delta == 0) {
    t.c2 = 0;
    t.n2 = 1;
  } else {
    const Int g = gcd(delta, p.n);
    t.n2 = p.n / g;
    t.c2 = delta / g;
  }
  return t;
}

Rational genus_meta(const MetacyclicDataSet& D) {
  Rational rhs(2 * D.g0 - 2);
  for (const auto& t : D.triples) rhs += Rational(1) - Rational(1, t.order);
  return Rational(1) + Rational(D.params.order()) * rhs / Rational(2);
}

void check_well_formed(const MetacyclicDataSet& D) {
  checked_params(D.params.u, D.params.n, D.params.r, D.params.k);
  auto bad = [](const std::string& why) { throw MalformedDataSet("malformed metacyclic data set: " + why); };
  if (D.g0 < 0) bad("orbit genus must be non-negative");
  for (std::size_t i = 0; i < D.triples.size(); ++i) {
    const auto& t = D.triples[i];
    const std::string at = " in triple " + std::to_string(i + 1);
    if (t.n1 < 1 || t.n2 < 1) bad("label moduli must be positive" + at);
    if (t.c1 < 0 || t.c1 >= t.n1 || t.c2 < 0 || t.c2 >= t.n2) bad("labels must be reduced residues" + at);
    if (t.order < 2) bad("cone order must be at least 2" + at);
  }
}

namespace {

// Precomputed residues shared by the literal checks.
struct Arith {
  Int u, n, r, k, m;
  std::vector<Int> kpow;  // k^j mod n for j in [0,u)

  explicit Arith(const GroupParams& p) : u(p.u), n(p.n), r(p.r), k(p.k), m(p.m()) {
    kpow.resize(static_cast<std::size_t>(u));
    for (Int j = 0; j < u; ++j) kpow[j] = pow_mod(k, j, n);
  }
  // k^e for any e >= 0; k^u = 1 so only e mod u matters.
  Int kp(Int e) const { return kpow[mod(e, u)]; }
  // delta * (k^(gamma(p-1)) + ... + k^gamma + 1)
  Int geometric(Int gamma, Int delta, Int p) const {
    Int acc = 0;
    for (Int s = 1; s <= p; ++s) acc = (acc + kp(gamma * (p - s))) % n;
    return delta % n * acc % n;
  }
};

ValidationReport failed(ValidationReport R, std::string cond, std::string msg) {
  R.verdict = Verdict::invalid;
  R.failed_condition = std::move(cond);
  R.message = std::move(msg);
  return R;
}

struct Step {
  Int parent = -1;
  Int pass = -1;
  Int letter = -1;
  Int power = 0;
};

// Reachable (E mod m, S mod n) states of words x_1^{p_1} ... x_l^{p_l} x_1^{p_{l+1}} ...
// Each pass appends one power of every letter in order; the set only grows with the pass count.
struct Reach {
  std::vector<Step> step;  // indexed by E*n + S; pass == -2 marks unreached
  Int passes = 0;
  bool fixpoint = false;
};

Reach reach_states(const MetacyclicDataSet& D, const Arith& A, Int v_max) {
  const Int ell = static_cast<Int>(D.triples.size());
  const Int states = A.m * A.n;
  const Int pmax = lcm(A.m, A.n);
  Reach R;
  R.step.assign(static_cast<std::size_t>(states), Step{-1, -2, -1, 0});
  R.step[0] = Step{-1, -1, -1, 0};
  std::vector<Int> frontier{0};
  std::vector<Int> all{0};

  std::vector<std::vector<std::pair<Int, Int>>> powers(static_cast<std::size_t>(ell));
  for (Int i = 0; i < ell; ++i) {
    const Int g = gamma_of(D, i), d = delta_of(D, i);
    for (Int p = 1; p < pmax; ++p) powers[i].push_back({mod(p * g, A.m), A.geometric(g, d, p)});
  }
  if (ell == 0) {
    R.fixpoint = true;
    return R;
  }
  for (Int pass = 0; pass < v_max; ++pass) {
    bool grew = false;
    for (Int i = 0; i < ell; ++i) {
      const std::size_t before = all.size();
      for (std::size_t idx = 0; idx < before; ++idx) {
        const Int s = all[idx];
        const Int E = s / A.n, S = s % A.n;
        for (std::size_t pi = 0; pi < powers[i].size(); ++pi) {
          const auto [pe, ps] = powers[i][pi];
          const Int E2 = (E + pe) % A.m;
          const Int S2 = (S * A.kp(pe) + ps) % A.n;
          const Int id = E2 * A.n + S2;
          if (R.step[id].pass != -2) continue;
          R.step[id] = Step{s, pass, i, static_cast<Int>(pi) + 1};
          all.push_back(id);
          grew = true;
        }
      }
    }
    R.passes = pass + 1;
    if (!grew) {
      R.fixpoint = true;
      break;
    }
  }
  return R;
}

// Exponent vector (length ell * v) for the word reaching `state`.
std::vector<Int> word_vector(const Reach& R, Int state, Int ell, Int v) {
  std::vector<Int> out(static_cast<std::size_t>(ell * v), 0);
  while (state != 0) {
    const Step& st = R.step[state];
    out[st.pass * ell + st.letter] = st.power;
    state = st.parent;
  }
  return out;
}

Int passes_used(const Reach& R, Int state) {
  Int v = 0;
  while (state != 0) {
    v = std::max(v, R.step[state].pass + 1);
    state = R.step[state].parent;
  }
  return v;
}

// Finds a with E = e0 + a u (mod m) and S = s0 - a r (mod n).
std::optional<Int> solve_a(const Arith& A, Int E, Int S, Int e0, Int s0) {
  for (Int a = 0; a < A.m; ++a)
    if (mod(E - e0 - a * A.u, A.m) == 0 && mod(S - s0 + a * A.r, A.n) == 0) return a;
  return std::nullopt;
}

struct Hit {
  Int state = -1;
  Int coeff = 0;
};

std::optional<Hit> find_state(const Reach& R, const Arith& A, Int e0, Int s0) {
  // Scan in discovery order so the shortest-phase witness wins deterministically.
  for (Int id = 0; id < static_cast<Int>(R.step.size()); ++id) {
    if (R.step[id].pass == -2) continue;
    if (auto a = solve_a(A, id / A.n, id % A.n, e0, s0)) return Hit{id, *a};
  }
  return std::nullopt;
}

Int literal_A(const MetacyclicDataSet& D, const Arith& Ar) {
  const std::size_t ell = D.triples.size();
  Int A = 0;
  for (std::size_t i = 0; i < ell; ++i) {
    Int term = delta_of(D, i);
    for (std::size_t s = i + 1; s < ell; ++s) term = term * Ar.kp(gamma_of(D, s)) % Ar.n;
    A = (A + term) % Ar.n;
  }
  return A;
}

}  // namespace

ConeOrder cone_order_literal(const MetacyclicDataSet& D, std::size_t i) {
  const Arith A(D.params);
  const Int g = gamma_of(D, i), d = delta_of(D, i);
  Int geom = 0;  // k^(g(s-1)) + ... + 1
  for (Int s = 1; s <= A.u * A.n; ++s) {
    geom = (geom * A.kp(g) + 1) % A.n;
    for (Int t = 0; t < A.m; ++t)
      if (mod(g * s - t * A.u, A.m) == 0 && mod(d * geom + t * A.r, A.n) == 0) return {s, t};
  }
  return {0, 0};
}

std::string to_string(Verdict v) {
  switch (v) {
    case Verdict::valid: return "valid";
    case Verdict::invalid: return "invalid";
    case Verdict::indeterminate: return "indeterminate";
  }
  return "?";
}

std::string to_string(Method m) { return m == Method::literal ? "literal" : "oracle"; }

ValidationReport validate_meta_literal(const MetacyclicDataSet& D, SearchBounds bounds) {
  check_well_formed(D);
  ValidationReport R;
  R.method = Method::literal;
  R.genus = genus_meta(D);
  const Arith A(D.params);
  const Int ell = static_cast<Int>(D.triples.size());
  const Int v_max = bounds.v_max > 0 ? bounds.v_max : A.u * A.n;

  if (!R.genus.is_integer() || R.genus < Rational(2))
    return failed(R, "i", "genus " + R.genus.str() + " is not an integer >= 2");

  for (Int i = 0; i < ell; ++i) {
    const auto& t = D.triples[i];
    const std::string at = "triple " + std::to_string(i + 1);
    if (A.m % t.n1 != 0) return failed(R, "ii.a", at + ": n_i1 does not divide m");
    if (A.n % t.n2 != 0) return failed(R, "ii.a", at + ": n_i2 does not divide n");
    for (auto [c, nn] : {std::pair{t.c1, t.n1}, std::pair{t.c2, t.n2}}) {
      if ((c == 0) != (nn == 1)) return failed(R, "ii.a", at + ": a label is 0 exactly when its modulus is 1");
      if (c != 0 && gcd(c, nn) != 1) return failed(R, "ii.a", at + ": label not coprime to its modulus");
    }
  }
  for (Int i = 0; i < ell; ++i) {
    const auto co = cone_order_literal(D, i);
    R.witness.cone_orders.push_back(co);
    if (co.s != D.triples[i].order)
      return failed(R, "ii.b",
                    "triple " + std::to_string(i + 1) + ": least s is " + std::to_string(co.s) + ", stored order " +
                        std::to_string(D.triples[i].order));
  }

  Int sum_gamma = 0;
  for (Int i = 0; i < ell; ++i) sum_gamma = (sum_gamma + gamma_of(D, i)) % A.m;
  std::optional<Int> w;
  for (Int cand = 0; cand < A.m && !w; ++cand)
    if (mod(sum_gamma - cand * A.u, A.m) == 0) w = cand;
  if (!w) return failed(R, "iii", "sum of G-exponents is not a multiple of u mod m");
  R.witness.w = *w;

  const Int Aval = literal_A(D, A);
  const Int target = mod(-*w * A.r, A.n);
  if (D.g0 == 0) {
    if (Aval != target) return failed(R, "iv", "A = " + std::to_string(Aval) + " but -wr = " + std::to_string(target));
  } else {
    const Int d = gcd(A.n, A.k - 1);
    for (Int th = 0; th < A.n && !R.witness.theta; ++th)
      if (mod(Aval - d * th - target, A.n) == 0) R.witness.theta = th;
    if (!R.witness.theta) return failed(R, "iv", "A + wr is not a multiple of gcd(n,k-1)");
  }

  if (D.g0 >= 2) {
    R.verdict = Verdict::valid;
    return R;
  }

  const Reach reach = reach_states(D, A, v_max);
  auto finish_vectors = [&](Int pstate, Int qstate) {
    const Int v = std::max<Int>({1, passes_used(reach, pstate), passes_used(reach, qstate)});
    R.witness.v = v;
    R.witness.p = word_vector(reach, pstate, ell, v);
    R.witness.q = word_vector(reach, qstate, ell, v);
  };
  auto inconclusive = [&](std::string cond) {
    if (reach.fixpoint) return failed(R, cond, "no word in the cone generators reaches the required element");
    R.verdict = Verdict::indeterminate;
    R.failed_condition = cond;
    R.message = "word search stopped at v = " + std::to_string(v_max) + " before saturating";
    return R;
  };

  if (D.g0 == 0) {
    const auto hp = find_state(reach, A, 1, 0);
    if (!hp) return inconclusive("v.a");
    const auto hq = find_state(reach, A, 0, 1);
    if (!hq) return inconclusive("v.b");
    R.witness.a = hp->coeff;
    R.witness.b = hq->coeff;
    finish_vectors(hp->state, hq->state);
    R.verdict = Verdict::valid;
    return R;
  }

  // g0 == 1
  std::vector<Int> mprimes{0}, nprimes{0};
  for (Int x : divisors(A.m)) mprimes.push_back(x);
  for (Int x : divisors(A.n)) nprimes.push_back(x);
  std::vector<std::optional<Hit>> qhits;
  for (Int np : nprimes) qhits.push_back(find_state(reach, A, 0, np));
  for (Int mp : mprimes) {
    const auto hp = find_state(reach, A, mp, 0);
    if (!hp) continue;
    for (std::size_t ni = 0; ni < nprimes.size(); ++ni) {
      const Int np = nprimes[ni];
      const auto& hq = qhits[ni];
      if (!hq) continue;
      const Int amax = mp == 0 ? 1 : A.m - 1;
      const Int bmax = np == 0 ? 1 : A.n - 1;
      for (Int alpha = mp == 0 ? 1 : 0; alpha <= amax; ++alpha) {
        if (mp != 0 && lcm(A.m / mp, A.m / gcd(A.m, alpha)) != A.m) continue;
        for (Int beta = np == 0 ? 1 : 0; beta <= bmax; ++beta) {
          if (np != 0 && lcm(A.n / np, A.n / gcd(A.n, beta)) != A.n) continue;
          if (mod(Aval + beta * A.kp(alpha) - beta + *w * A.r, A.n) != 0) continue;
          R.witness.m_prime = mp;
          R.witness.n_prime = np;
          R.witness.alpha = alpha;
          R.witness.beta = beta;
          R.witness.a = hp->coeff;
          R.witness.b = hq->coeff;
          finish_vectors(hp->state, hq->state);
          R.verdict = Verdict::valid;
          return R;
        }
      }
    }
  }
  return inconclusive("vi");
}

std::string reverify_literal_witness(const MetacyclicDataSet& D, const WitnessBundle& W) {
  const Arith A(D.params);
  const std::size_t ell = D.triples.size();
  for (std::size_t i = 0; i < W.cone_orders.size() && i < ell; ++i) {
    const auto [s, t] = W.cone_orders[i];
    const Int g = gamma_of(D, i), d = delta_of(D, i);
    if (mod(g * s - t * A.u, A.m) != 0) return "ii.b";
    Int geom = 0;
    for (Int e = s - 1; e >= 0; --e) geom = (geom + A.kp(g * e)) % A.n;
    if (mod(d * geom + t * A.r, A.n) != 0) return "ii.b";
  }
  Int sum_gamma = 0;
  for (std::size_t i = 0; i < ell; ++i) sum_gamma += gamma_of(D, i);
  if (mod(sum_gamma - W.w * A.u, A.m) != 0) return "iii";
  const Int Aval = literal_A(D, A);
  if (D.g0 == 0 && mod(Aval + W.w * A.r, A.n) != 0) return "iv";
  if (D.g0 >= 1) {
    if (!W.theta) return "iv";
    if (mod(Aval - gcd(A.n, A.k - 1) * *W.theta + W.w * A.r, A.n) != 0) return "iv";
  }
  if (D.g0 >= 2) return "";

  // Sums over i' of labels and the k-power products, written out term by term.
  auto word = [&](const std::vector<Int>& p, Int& e_out, Int& s_out) {
    const std::size_t len = p.size();
    e_out = 0;
    s_out = 0;
    for (std::size_t ip = 0; ip < len; ++ip) {
      const std::size_t i = ip % ell;
      const Int g = gamma_of(D, i), d = delta_of(D, i);
      e_out += p[ip] * g;
      Int inner = 0;
      for (Int s = 1; s <= p[ip]; ++s) inner = (inner + A.kp(g * (p[ip] - s))) % A.n;
      Int prod = 1;
      for (std::size_t tp = ip + 1; tp < len; ++tp) prod = prod * A.kp(p[tp] * gamma_of(D, tp % ell)) % A.n;
      s_out = (s_out + d * inner % A.n * prod) % A.n;
    }
  };
  if (W.p.size() != ell * static_cast<std::size_t>(W.v) || W.q.size() != W.p.size()) return "v";
  Int ep, sp, eq, sq;
  word(W.p, ep, sp);
  word(W.q, eq, sq);
  if (D.g0 == 0) {
    if (mod(ep - 1 - W.a * A.u, A.m) != 0 || mod(sp + W.a * A.r, A.n) != 0) return "v.a";
    if (mod(eq - W.b * A.u, A.m) != 0 || mod(sq - 1 + W.b * A.r, A.n) != 0) return "v.b";
    return "";
  }
  if (!W.m_prime || !W.n_prime || !W.alpha || !W.beta) return "vi";
  const Int mp = *W.m_prime, np = *W.n_prime, al = *W.alpha, be = *W.beta;
  if (mod(ep - mp - W.a * A.u, A.m) != 0 || mod(sp + W.a * A.r, A.n) != 0) return "vi.a";
  if (mod(eq - W.b * A.u, A.m) != 0 || mod(sq - np + W.b * A.r, A.n) != 0) return "vi.b";
  if (mp == 0 ? al != 1 : lcm(A.m / mp, A.m / gcd(A.m, al)) != A.m) return "vi.c";
  if (np == 0 ? be != 1 : lcm(A.n / np, A.n / gcd(A.n, be)) != A.n) return "vi.c";
  if (mod(Aval + be * A.kp(al) - be + W.w * A.r, A.n) != 0) return "vi.c";
  return "";
}

// ---------------------------------------------------------------------------------------------
// Oracle: search for an order-preserving epimorphism directly in the group.

namespace {

using Index = MetacyclicGroup::Index;

// commutator sets: sets[j] holds every product of j commutators.
std::vector<std::vector<char>> commutator_products(const MetacyclicGroup& H, Int upto) {
  const Int N = H.order();
  std::vector<std::vector<char>> sets(static_cast<std::size_t>(upto + 1), std::vector<char>(N, 0));
  sets[0][H.identity()] = 1;
  std::vector<char> single(static_cast<std::size_t>(N), 0);
  for (Index y = 0; y < N; ++y)
    for (Index z = 0; z < N; ++z) single[H.commutator(y, z)] = 1;
  for (Int j = 1; j <= upto; ++j)
    for (Index a = 0; a < N; ++a)
      if (sets[j - 1][a])
        for (Index c = 0; c < N; ++c)
          if (single[c]) sets[j][H.mul(a, c)] = 1;
  return sets;
}

}  // namespace

ValidationReport validate_meta_oracle(const MetacyclicDataSet& D) {
  check_well_formed(D);
  const MetacyclicGroup H(D.params);
  return validate_meta_oracle(D, H);
}

ValidationReport validate_meta_oracle(const MetacyclicDataSet& D, const MetacyclicGroup& H) {
  check_well_formed(D);
  ValidationReport R;
  R.method = Method::oracle;
  R.genus = genus_meta(D);
  if (!R.genus.is_integer() || R.genus < Rational(2))
    return failed(R, "i", "genus " + R.genus.str() + " is not an integer >= 2");
  const auto& p = D.params;
  for (const auto& t : D.triples)
    if (D.m() % t.n1 != 0 || p.n % t.n2 != 0) return failed(R, "ii.a", "label modulus does not divide m or n");

  std::vector<Index> xs;
  for (std::size_t i = 0; i < D.triples.size(); ++i) {
    const Index x = H.word(gamma_of(D, i), delta_of(D, i));
    if (H.element_order(x) != D.triples[i].order)
      return failed(R, "order",
                    "image of cone " + std::to_string(i + 1) + " has order " + std::to_string(H.element_order(x)));
    xs.push_back(x);
  }
  Index P = H.identity();
  for (Index x : xs) P = H.mul(P, x);
  const ElementSet X = H.generated_subgroup(xs);
  const auto full = static_cast<std::size_t>(H.order());

  if (D.g0 == 0) {
    if (P != H.identity()) return failed(R, "relation", "product of cone images is not the identity");
    if (X.size() != full) return failed(R, "surjectivity", "cone images generate a proper subgroup");
    R.verdict = Verdict::valid;
    return R;
  }

  const Index Pinv = H.inv(P);
  if (D.g0 == 1) {
    for (Index y = 0; y < H.order(); ++y)
      for (Index z = 0; z < H.order(); ++z) {
        if (H.commutator(y, z) != Pinv) continue;
        const Index extra[] = {y, z};
        if (H.extend_subgroup(X, extra).size() != full) continue;
        R.witness.hyperbolic = {H.element(y), H.element(z)};
        R.verdict = Verdict::valid;
        return R;
      }
    return failed(R, "relation", "no pair (y,z) with [y,z] = P^-1 completes a generating set");
  }

  // g0 >= 2: y1 = G, z1 = F generate; the remaining g0-1 commutators absorb the relation.
  const auto sets = commutator_products(H, D.g0 - 1);
  auto fill = [&](Index target, Int slots, std::vector<Element>& out) {
    // target must be written as a product of `slots` commutators
    for (Int j = slots; j >= 1; --j) {
      bool found = false;
      for (Index y = 0; y < H.order() && !found; ++y)
        for (Index z = 0; z < H.order() && !found; ++z) {
          const Index c = H.commutator(y, z);
          const Index rest = H.mul(H.inv(c), target);
          if (!sets[j - 1][rest]) continue;
          out.push_back(H.element(y));
          out.push_back(H.element(z));
          target = rest;
          found = true;
        }
      if (!found) return false;
    }
    return target == H.identity();
  };
  {
    const Index target = H.mul(H.inv(H.commutator(H.G(), H.F())), Pinv);
    if (sets[D.g0 - 1][target]) {
      std::vector<Element> hyp{H.element(H.G()), H.element(H.F())};
      if (fill(target, D.g0 - 1, hyp)) {
        R.witness.hyperbolic = std::move(hyp);
        R.verdict = Verdict::valid;
        return R;
      }
    }
  }
  // Fallback: any first pair, then check generation with the completed tuple.
  for (Index y = 0; y < H.order(); ++y)
    for (Index z = 0; z < H.order(); ++z) {
      const Index target = H.mul(H.inv(H.commutator(y, z)), Pinv);
      if (!sets[D.g0 - 1][target]) continue;
      std::vector<Element> hyp{H.element(y), H.element(z)};
      if (!fill(target, D.g0 - 1, hyp)) continue;
      std::vector<Index> gens(xs);
      for (const auto& e : hyp) gens.push_back(H.index(e));
      if (H.generated_subgroup(gens).size() != full) continue;
      R.witness.hyperbolic = std::move(hyp);
      R.verdict = Verdict::valid;
      return R;
    }
  if (!sets[D.g0][Pinv]) return failed(R, "relation", "product of cone images is not a product of commutators");
  return failed(R, "surjectivity", "no hyperbolic images complete a generating set");
}

ValidationReport validate_meta(const MetacyclicDataSet& D) {
  auto R = validate_meta_literal(D);
  if (R.verdict != Verdict::indeterminate) return R;
  auto O = validate_meta_oracle(D);
  O.message = "literal search inconclusive (" + R.failed_condition + "); oracle: " +
              (O.message.empty() ? to_string(O.verdict) : O.message);
  return O;
}

// ---------------------------------------------------------------------------------------------
// Notation

namespace {

std::string k_text(const GroupParams& p) {
  return (p.n > 2 && p.k == p.n - 1) ? "-1" : std::to_string(p.k);
}

std::string triple_text(const Triple& t) {
  return "[(" + std::to_string(t.c1) + "," + std::to_string(t.n1) + "),(" + std::to_string(t.c2) + "," +
         std::to_string(t.n2) + ")," + std::to_string(t.order) + "]";
}

}  // namespace

std::string print_meta(const MetacyclicDataSet& D) {
  const auto& p = D.params;
  std::string out = "((" + std::to_string(p.u) + "·" + std::to_string(p.n) + "," + std::to_string(p.r) + "," +
                    k_text(p) + ")," + std::to_string(D.g0) + ";";
  for (std::size_t i = 0; i < D.triples.size();) {
    std::size_t j = i;
    while (j < D.triples.size() && D.triples[j] == D.triples[i]) ++j;
    if (i > 0) out += ",";
    out += triple_text(D.triples[i]);
    if (j - i > 1) out += "_" + std::to_string(j - i);
    i = j;
  }
  return out + ")";
}

MetacyclicDataSet parse_meta(std::string_view text) {
  Cursor cur(text);
  MetacyclicDataSet D;
  cur.expect('(');
  cur.expect('(');
  const std::size_t group_at = cur.pos();
  const Int a = cur.integer();
  if (!(cur.accept("·") || cur.accept("⋅") || cur.accept('x') || cur.accept('X') || cur.accept('*')))
    cur.fail("expected '·' or 'x' between the factors of the degree");
  const Int b = cur.integer();
  cur.expect(',');
  const Int r = cur.integer();
  cur.expect(',');
  const Int k = cur.integer();
  cur.expect(')');
  try {
    D.params = checked_params(a, b, r, k);
  } catch (const ParameterError& first) {
    // The degree is sometimes written n·u; accept it only when u·n is impossible.
    try {
      D.params = checked_params(b, a, r, k);
    } catch (const ParameterError&) {
      throw ParseError(first.what(), group_at, std::to_string(a));
    }
  }
  cur.expect(',');
  D.g0 = cur.integer();
  cur.expect(';');
  bool first = true;
  while (!cur.accept(')')) {
    if (!first) cur.accept(',');
    first = false;
    Triple t;
    cur.expect('[');
    cur.expect('(');
    t.c1 = cur.integer();
    cur.expect(',');
    t.n1 = cur.integer();
    cur.expect(')');
    cur.expect(',');
    cur.expect('(');
    t.c2 = cur.integer();
    cur.expect(',');
    t.n2 = cur.integer();
    cur.expect(')');
    cur.expect(',');
    t.order = cur.integer();
    cur.expect(']');
    if (t.n1 >= 1) t.c1 = mod(t.c1, t.n1);
    if (t.n2 >= 1) t.c2 = mod(t.c2, t.n2);
    Int mult = 1;
    if (cur.accept('_')) {
      const bool brace = cur.accept('{');
      const std::size_t at = cur.pos();
      mult = cur.integer();
      if (mult < 1) throw ParseError("multiplicity must be positive", at, std::to_string(mult));
      if (brace) cur.expect('}');
    }
    for (Int i = 0; i < mult; ++i) D.triples.push_back(t);
  }
  if (!cur.at_end()) cur.fail("trailing input");
  return D;
}

nlohmann::ordered_json meta_to_json(const MetacyclicDataSet& D) {
  nlohmann::ordered_json j;
  j["schema"] = "mcg/1";
  j["kind"] = "metacyclic";
  j["u"] = D.params.u;
  j["n"] = D.params.n;
  j["r"] = D.params.r;
  j["k"] = D.params.k;
  j["g0"] = D.g0;
  j["triples"] = nlohmann::ordered_json::array();
  for (std::size_t i = 0; i < D.triples.size();) {
    std::size_t e = i;
    while (e < D.triples.size() && D.triples[e] == D.triples[i]) ++e;
    const auto& t = D.triples[i];
    j["triples"].push_back({{"c1", t.c1}, {"n1", t.n1}, {"c2", t.c2}, {"n2", t.n2}, {"order", t.order},
                            {"mult", static_cast<Int>(e - i)}});
    i = e;
  }
  return j;
}

MetacyclicDataSet meta_from_json(const nlohmann::json& j) {
  if (j.value("schema", "") != "mcg/1" || j.value("kind", "") != "metacyclic")
    throw MalformedDataSet("expected an mcg/1 metacyclic object");
  MetacyclicDataSet D;
  D.params = checked_params(j.at("u").get<Int>(), j.at("n").get<Int>(), j.at("r").get<Int>(), j.at("k").get<Int>());
  D.g0 = j.at("g0").get<Int>();
  for (const auto& t : j.at("triples")) {
    Triple tr{t.at("c1").get<Int>(), t.at("n1").get<Int>(), t.at("c2").get<Int>(), t.at("n2").get<Int>(),
              t.at("order").get<Int>()};
    for (Int i = 0; i < t.value("mult", Int{1}); ++i) D.triples.push_back(tr);
  }
  return D;
}

nlohmann::ordered_json report_to_json(const ValidationReport& R) {
  nlohmann::ordered_json j;
  j["schema"] = "mcg/1";
  j["kind"] = "validation";
  j["verdict"] = to_string(R.verdict);
  j["method"] = to_string(R.method);
  j["genus"] = R.genus.str();
  if (!R.valid()) {
    j["failed_condition"] = R.failed_condition;
    j["message"] = R.message;
    return j;
  }
  const auto& W = R.witness;
  nlohmann::ordered_json w;
  if (R.method == Method::literal) {
    w["w"] = W.w;
    if (W.theta) w["theta"] = *W.theta;
    auto cones = nlohmann::ordered_json::array();
    for (const auto& c : W.cone_orders) cones.push_back({{"s", c.s}, {"t", c.t}});
    w["cone_orders"] = cones;
    if (W.v > 0) {
      w["v"] = W.v;
      w["p"] = W.p;
      w["q"] = W.q;
      w["a"] = W.a;
      w["b"] = W.b;
    }
    if (W.m_prime) w["m_prime"] = *W.m_prime;
    if (W.n_prime) w["n_prime"] = *W.n_prime;
    if (W.alpha) w["alpha"] = *W.alpha;
    if (W.beta) w["beta"] = *W.beta;
  } else {
    auto hyp = nlohmann::ordered_json::array();
    for (const auto& e : W.hyperbolic) hyp.push_back({e.b, e.a});
    w["hyperbolic"] = hyp;
  }
  j["witness"] = w;
  return j;
}

}  // namespace mcg
