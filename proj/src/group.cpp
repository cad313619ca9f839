#include "mcg/group.hpp"

#include <algorithm>
#include <bit>
#include <functional>

namespace mcg {

std::string to_string(const GroupParams& p) {
  return "M(" + std::to_string(p.u) + "," + std::to_string(p.n) + "," + std::to_string(p.r) + "," +
         std::to_string(p.k) + ")";
}

GroupParams checked_params(Int u, Int n, Int r, Int k) {
  auto fail = [&](const std::string& why) {
    throw ParameterError("invalid metacyclic parameters (u=" + std::to_string(u) + ", n=" + std::to_string(n) +
                         ", r=" + std::to_string(r) + ", k=" + std::to_string(k) + "): " + why);
  };
  if (u < 2) fail("u >= 2 required");
  if (n < 2) fail("n >= 2 required");
  if (r < 1 || n % r != 0) fail("r must divide n");
  if (gcd(mod(k, n), n) != 1) fail("k must be a unit mod n");
  const Int kk = mod(k, n);
  if (pow_mod(kk, u, n) != 1) fail("k^u = " + std::to_string(pow_mod(kk, u, n)) + " is not 1 (mod n)");
  if (mod(r * (kk - 1), n) != 0)
    fail("r*(k-1) = " + std::to_string(r * (kk - 1)) + " is not 0 (mod n)");
  return {u, n, r, kk};
}

std::vector<std::int32_t> ElementSet::members() const {
  std::vector<std::int32_t> out;
  out.reserve(size_);
  for (std::size_t w = 0; w < bits_.size(); ++w) {
    std::uint64_t word = bits_[w];
    while (word) {
      const int bit = std::countr_zero(word);
      out.push_back(static_cast<std::int32_t>(w * 64 + bit));
      word &= word - 1;
    }
  }
  return out;
}

std::size_t ElementSet::hash() const {
  std::size_t h = 1469598103934665603ULL;
  for (auto w : bits_) h = (h ^ std::hash<std::uint64_t>{}(w)) * 1099511628211ULL;
  return h;
}

MetacyclicGroup::MetacyclicGroup(const GroupParams& p) : params_(checked_params(p.u, p.n, p.r, p.k)) {
  const Int u = params_.u, n = params_.n;
  order_ = u * n;
  k_powers_.resize(static_cast<std::size_t>(u));
  for (Int b = 0; b < u; ++b) k_powers_[b] = pow_mod(params_.k, b, n);

  const auto N = static_cast<std::size_t>(order_);
  table_.resize(N * N);
  for (Index x = 0; x < order_; ++x)
    for (Index y = 0; y < order_; ++y) table_[x * N + y] = index(multiply(element(x), element(y)));

  inverse_.assign(N, -1);
  for (Index x = 0; x < order_; ++x)
    for (Index y = 0; y < order_; ++y)
      if (mul(x, y) == identity()) {
        inverse_[x] = y;
        break;
      }

  orders_.assign(N, 0);
  for (Index x = 0; x < order_; ++x) {
    Int s = 1;
    for (Index acc = x; acc != identity(); acc = mul(acc, x)) ++s;
    orders_[x] = s;
  }

  const Index gens[] = {G(), F()};
  if (static_cast<Int>(generated_subgroup(gens).size()) != order_)
    throw ParameterError("closure of {G,F} does not reach u*n elements for " + to_string(params_));

  class_of_.assign(N, -1);
  for (Index x = 0; x < order_; ++x) {
    if (class_of_[x] >= 0) continue;
    std::vector<Index> cls{x};
    class_of_[x] = static_cast<Int>(classes_.size());
    for (std::size_t i = 0; i < cls.size(); ++i)
      for (Index g : gens) {
        Index y = conjugate(cls[i], g);
        if (class_of_[y] < 0) {
          class_of_[y] = class_of_[x];
          cls.push_back(y);
        }
      }
    std::sort(cls.begin(), cls.end());
    classes_.push_back(std::move(cls));
  }
}

Element MetacyclicGroup::multiply(const Element& x, const Element& y) const {
  const Int u = params_.u, n = params_.n;
  const Int total = x.b + y.b;
  const Int q = total / u;
  const Int kb = k_powers_.empty() ? pow_mod(params_.k, y.b, n) : k_powers_[y.b];
  return {total % u, mod(params_.r * q + x.a * kb + y.a, n)};
}

MetacyclicGroup::Index MetacyclicGroup::pow(Index x, Int e) const {
  const Int ord = orders_[x];
  e = mod(e, ord);
  Index result = identity();
  for (Int i = 0; i < e; ++i) result = mul(result, x);
  return result;
}

MetacyclicGroup::Index MetacyclicGroup::word(Int gamma, Int delta) const {
  // G has order m; G^j = G^(j mod u) F^(r * floor(j/u)) for 0 <= j < m.
  const Int j = mod(gamma, params_.m());
  const Index g_part = index({j % params_.u, params_.r * (j / params_.u)});
  return mul(g_part, index({0, delta}));
}

MetacyclicGroup::ConjugacyData MetacyclicGroup::conjugacy_data(Index x) const {
  ConjugacyData out;
  out.conjugacy_class = classes_[class_of_[x]];
  out.centralizer_size = order_ / static_cast<Int>(out.conjugacy_class.size());
  return out;
}

ElementSet MetacyclicGroup::generated_subgroup(std::span<const Index> gens) const {
  ElementSet start(static_cast<std::size_t>(order_));
  start.insert(static_cast<std::size_t>(identity()));
  return extend_subgroup(start, gens);
}

ElementSet MetacyclicGroup::extend_subgroup(const ElementSet& base, std::span<const Index> extra) const {
  ElementSet out = base;
  std::vector<Index> gens = base.size() > 1 ? std::vector<Index>{} : std::vector<Index>{};
  for (Index g : extra)
    if (!base.contains(static_cast<std::size_t>(g))) gens.push_back(g);
  if (gens.empty()) return out;
  // Generators of the base are implied by its elements; closing under right multiplication by
  // the new generators and by the base elements yields the join.
  std::vector<Index> all_gens = gens;
  std::vector<Index> frontier = base.members();
  if (base.size() > 1) {
    for (Index b : frontier)
      if (b != identity()) all_gens.push_back(b);
  }
  for (std::size_t i = 0; i < frontier.size(); ++i) {
    const Index x = frontier[i];
    for (Index g : all_gens) {
      const Index y = mul(x, g);
      if (out.insert(static_cast<std::size_t>(y))) frontier.push_back(y);
    }
  }
  return out;
}

bool MetacyclicGroup::is_split() const {
  std::vector<char> seen(static_cast<std::size_t>(order_), 0);
  for (Index x = 0; x < order_; ++x) {
    if (seen[x]) continue;
    const Int ord_x = orders_[x];
    ElementSet cyc(static_cast<std::size_t>(order_));
    for (Int j = 0; j < ord_x; ++j) {
      const Index xj = pow(x, j);
      cyc.insert(static_cast<std::size_t>(xj));
      if (gcd(j, ord_x) == 1) seen[xj] = 1;
    }
    if (!cyc.contains(static_cast<std::size_t>(conjugate(x, G()))) ||
        !cyc.contains(static_cast<std::size_t>(conjugate(x, F()))))
      continue;
    const Int want = order_ / ord_x;
    for (Index y = 0; y < order_; ++y) {
      if (orders_[y] != want) continue;
      bool trivial = true;
      Index acc = y;
      for (Int j = 1; j < want && trivial; ++j, acc = mul(acc, y))
        if (cyc.contains(static_cast<std::size_t>(acc))) trivial = false;
      if (trivial) return true;
    }
  }
  return false;
}

std::vector<GroupParams> MetacyclicGroup::presentations() const {
  std::vector<GroupParams> out;
  std::vector<char> seen(static_cast<std::size_t>(order_), 0);
  for (Index f = 0; f < order_; ++f) {
    if (seen[f]) continue;
    const Int nn = orders_[f];
    ElementSet cyc(static_cast<std::size_t>(order_));
    std::vector<Index> powers(static_cast<std::size_t>(nn));
    for (Int j = 0; j < nn; ++j) {
      powers[j] = pow(f, j);
      cyc.insert(static_cast<std::size_t>(powers[j]));
      if (gcd(j, nn) == 1) seen[powers[j]] = 1;
    }
    if (nn < 2) continue;
    auto exponent_of = [&](Index y) -> Int {
      for (Int j = 0; j < nn; ++j)
        if (powers[j] == y) return j;
      return -1;
    };
    const Int kf = exponent_of(conjugate(f, G()));
    const Int kg = exponent_of(conjugate(f, F()));
    if (kf < 0 || kg < 0) continue;  // not normal
    const Int uu = order_ / nn;
    if (uu < 2) continue;
    for (Index g = 0; g < order_; ++g) {
      // image of g in the quotient must have order exactly uu
      Index acc = g;
      Int j = 1;
      while (!cyc.contains(static_cast<std::size_t>(acc))) {
        acc = mul(acc, g);
        ++j;
      }
      if (j != uu) continue;
      const Int e = exponent_of(acc);
      const Int rr = e == 0 ? nn : gcd(e, nn);
      const Int kk = exponent_of(conjugate(f, g));
      out.push_back({uu, nn, rr, kk});
    }
  }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

GroupParams MetacyclicGroup::canonical_presentation() const {
  auto all = presentations();
  return *std::min_element(all.begin(), all.end(), [](const GroupParams& a, const GroupParams& b) {
    if (a.n != b.n) return a.n > b.n;
    if (a.r != b.r) return a.r > b.r;
    return a.k > b.k;
  });
}

MetacyclicGroup make_group(const GroupParams& params) { return MetacyclicGroup(params); }

}  // namespace mcg
