#ifndef MCG_GROUP_HPP
#define MCG_GROUP_HPP

#include <cstdint>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "mcg/arith.hpp"

namespace mcg {

/// Parameters of M(u,n,r,k) = < F, G | F^n = 1, G^u = F^r, G^-1 F G = F^k >.
struct GroupParams {
  Int u = 0;
  Int n = 0;
  Int r = 0;
  Int k = 0;

  Int order() const { return u * n; }
  /// Order of G.
  Int m() const { return u * n / r; }

  friend bool operator==(const GroupParams&, const GroupParams&) = default;
  friend auto operator<=>(const GroupParams&, const GroupParams&) = default;
};

std::string to_string(const GroupParams& p);

class ParameterError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Throws ParameterError naming the first violated requirement. Normalizes k into [0, n).
GroupParams checked_params(Int u, Int n, Int r, Int k);

/// Normal form G^b F^a with b in [0,u), a in [0,n).
struct Element {
  Int b = 0;
  Int a = 0;
  friend bool operator==(const Element&, const Element&) = default;
};

/// Fixed-capacity bit set over element indices.
class ElementSet {
 public:
  ElementSet() = default;
  explicit ElementSet(std::size_t capacity) : bits_((capacity + 63) / 64, 0), capacity_(capacity) {}

  bool contains(std::size_t i) const { return (bits_[i >> 6] >> (i & 63)) & 1U; }
  bool insert(std::size_t i) {
    auto& word = bits_[i >> 6];
    const std::uint64_t bit = std::uint64_t{1} << (i & 63);
    if (word & bit) return false;
    word |= bit;
    ++size_;
    return true;
  }
  std::size_t size() const { return size_; }
  std::size_t capacity() const { return capacity_; }
  std::vector<std::int32_t> members() const;

  friend bool operator==(const ElementSet& a, const ElementSet& b) { return a.bits_ == b.bits_; }
  std::size_t hash() const;

 private:
  std::vector<std::uint64_t> bits_;
  std::size_t capacity_ = 0;
  std::size_t size_ = 0;
};

/// The finite group M(u,n,r,k) with full multiplication table. Immutable after construction.
class MetacyclicGroup {
 public:
  using Index = std::int32_t;

  explicit MetacyclicGroup(const GroupParams& params);

  const GroupParams& params() const { return params_; }
  Int order() const { return order_; }

  Index index(const Element& x) const { return static_cast<Index>(mod(x.b, params_.u) * params_.n + mod(x.a, params_.n)); }
  Element element(Index i) const { return {i / params_.n, i % params_.n}; }

  Index identity() const { return 0; }
  Index G() const { return index({1 % params_.u, 0}); }
  Index F() const { return index({0, 1 % params_.n}); }

  /// Multiplication by the normal-form rule; the table is built from this.
  Element multiply(const Element& x, const Element& y) const;

  Index mul(Index x, Index y) const { return table_[static_cast<std::size_t>(x) * order_ + y]; }
  Index inv(Index x) const { return inverse_[x]; }
  Index pow(Index x, Int e) const;
  /// [y,z] = y^-1 z^-1 y z
  Index commutator(Index y, Index z) const { return mul(mul(inv(y), inv(z)), mul(y, z)); }
  Index conjugate(Index x, Index by) const { return mul(mul(inv(by), x), by); }

  /// G^gamma F^delta for arbitrary integer exponents.
  Index word(Int gamma, Int delta) const;

  Int element_order(Index x) const { return orders_[x]; }

  struct ConjugacyData {
    std::vector<Index> conjugacy_class;
    Int centralizer_size = 0;
  };
  ConjugacyData conjugacy_data(Index x) const;
  Int class_id(Index x) const { return class_of_[x]; }
  const std::vector<std::vector<Index>>& classes() const { return classes_; }
  Int centralizer_size(Index x) const { return order_ / static_cast<Int>(classes_[class_of_[x]].size()); }

  ElementSet generated_subgroup(std::span<const Index> gens) const;
  /// Smallest subgroup containing `base` and `extra`; `base` must already be a subgroup.
  ElementSet extend_subgroup(const ElementSet& base, std::span<const Index> extra) const;

  bool is_split() const;

  /// All (u',n',r',k') presentations of this group up to the choice of generators.
  std::vector<GroupParams> presentations() const;
  /// Representative presentation: largest n, then largest r, then largest k (so k = -1 wins when present).
  GroupParams canonical_presentation() const;

 private:
  GroupParams params_;
  Int order_ = 0;
  std::vector<Int> k_powers_;
  std::vector<Index> table_;
  std::vector<Index> inverse_;
  std::vector<Int> orders_;
  std::vector<Int> class_of_;
  std::vector<std::vector<Index>> classes_;
};

MetacyclicGroup make_group(const GroupParams& params);

}  // namespace mcg

#endif  // MCG_GROUP_HPP
