#include "mcg/derive.hpp"

#include <algorithm>

namespace mcg {

using Index = MetacyclicGroup::Index;

Int fixed_point_count(const MetacyclicDataSet& D, const MetacyclicGroup& H, Index x, Int v) {
  const Int t = H.element_order(x);
  Rational sum(0);
  for (std::size_t i = 0; i < D.triples.size(); ++i) {
    const Int ni = D.triples[i].order;
    if (ni % t != 0) continue;
    const Index xi = H.word(gamma_of(D, i), delta_of(D, i));
    if (H.class_id(H.pow(xi, ni / t * v)) == H.class_id(x)) sum += Rational(1, ni);
  }
  const Rational count = Rational(H.centralizer_size(x)) * sum;
  if (!count.is_integer())
    throw DerivationError("fixed point count " + count.str() + " is not an integer; the data set is not valid");
  return count.num();
}

FixedPointTable fixed_point_table(const MetacyclicDataSet& D, const MetacyclicGroup& H, Index gen) {
  FixedPointTable T;
  T.order = H.element_order(gen);
  const auto divs = divisors(T.order);
  for (auto it = divs.rbegin(); it != divs.rend(); ++it) {
    const Int t = *it;
    if (t < 2) continue;
    const Index x = H.pow(gen, T.order / t);
    for (Int v : units(t)) {
      const Int total = fixed_point_count(D, H, x, v);
      Int proper = total;
      // points whose stabilizer in <gen> is strictly larger were counted already
      for (Int t2 : divs) {
        if (t2 == t || t2 % t != 0) continue;
        for (Int v2 : units(t2))
          if (v2 % t == v) proper -= T.proper.at({t2, v2});
      }
      if (proper < 0) throw DerivationError("negative proper fixed point count");
      T.total[{t, v}] = total;
      T.proper[{t, v}] = proper;
    }
  }
  return T;
}

CyclicDataSet derive_cyclic_factor(const MetacyclicDataSet& D, const MetacyclicGroup& H, Index gen) {
  const auto T = fixed_point_table(D, H, gen);
  CyclicDataSet out;
  out.n = T.order;
  for (const auto& [key, proper] : T.proper) {
    const auto [t, v] = key;
    if (proper == 0) continue;
    if ((t * proper) % T.order != 0) throw DerivationError("fractional cone multiplicity");
    const Int mult = t * proper / T.order;
    for (Int i = 0; i < mult; ++i) out.cones.push_back({inverse_mod(v, t), t});
  }
  // 2 - 2g = n (2 - 2 g0 + sum(1/n_j - 1))
  const Rational g = genus_meta(D);
  Rational s(0);
  for (const auto& c : out.cones) s += Rational(1, c.m) - Rational(1);
  const Rational g0 = (Rational(2) - (Rational(2) - Rational(2) * g) / Rational(out.n) + s) / Rational(2);
  if (!g0.is_integer() || g0 < Rational(0)) throw DerivationError("orbit genus " + g0.str() + " is not a valid integer");
  out.g0 = g0.num();
  if (out.cones.empty()) out.d = 1;
  return sorted_cyclic(out);
}

CyclicDataSet derive_DF(const MetacyclicDataSet& D, const MetacyclicGroup& H) {
  return derive_cyclic_factor(D, H, H.F());
}

CyclicDataSet derive_DG(const MetacyclicDataSet& D, const MetacyclicGroup& H) {
  return derive_cyclic_factor(D, H, H.G());
}

CyclicDataSet derive_DF(const MetacyclicDataSet& D) { return derive_DF(D, MetacyclicGroup(D.params)); }
CyclicDataSet derive_DG(const MetacyclicDataSet& D) { return derive_DG(D, MetacyclicGroup(D.params)); }

CyclicDataSet derive_DGbar(const MetacyclicDataSet& D) {
  const Int u = D.params.u;
  CyclicDataSet out{u, D.g0, 0, {}};
  for (std::size_t i = 0; i < D.triples.size(); ++i) {
    const Int gamma = gamma_of(D, i);
    const Int n1 = u / gcd(gamma, u);
    if (n1 == 1) continue;
    out.cones.push_back({mod(gamma, u) / (u / n1), n1});
  }
  if (out.cones.empty()) out.d = 1;
  return sorted_cyclic(out);
}

}  // namespace mcg
