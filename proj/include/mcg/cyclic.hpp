#ifndef MCG_CYCLIC_HPP
#define MCG_CYCLIC_HPP

#include <compare>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "json.hpp"
#include "mcg/arith.hpp"

namespace mcg {

/// A cone point (c, m): orbit with local rotation class c in Z_m^x.
struct Cone {
  Int c = 0;
  Int m = 0;
  friend bool operator==(const Cone&, const Cone&) = default;
};

/// Display order: larger cone orders first, then smaller rotation class.
bool cone_before(const Cone& a, const Cone& b);

/// (n, g0, d; cones) with cones stored as a flat multiset.
struct CyclicDataSet {
  Int n = 0;
  Int g0 = 0;
  Int d = 0;
  std::vector<Cone> cones;

  friend bool operator==(const CyclicDataSet&, const CyclicDataSet&) = default;
};

struct GroupedCone {
  Cone cone;
  Int mult = 1;
  friend bool operator==(const GroupedCone&, const GroupedCone&) = default;
};

/// Sorted, grouped form. Two data sets describe the same class iff these are equal.
struct CanonicalCyclicForm {
  Int n = 0;
  Int g0 = 0;
  Int d = 0;
  std::vector<GroupedCone> cones;

  friend bool operator==(const CanonicalCyclicForm&, const CanonicalCyclicForm&) = default;
  CyclicDataSet expand() const;
};

class MalformedDataSet : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

enum class CyclicCondition {
  ok,
  free_rotation,  // (i): d > 0 iff no cones, gcd(d,n) = 1
  divisibility,   // (ii)
  lcm,            // (iii)
  rotation_sum,   // (iv)
  genus_fraction,
  genus_zero,     // g < 1 (sphere or negative)
};

std::string to_string(CyclicCondition c);

struct CyclicVerdict {
  bool valid = false;
  CyclicCondition failed = CyclicCondition::ok;
  Rational genus;
  std::string message;
};

/// g with (2-2g)/n = 2 - 2 g0 + sum(1/n_j - 1).
Rational genus_cyclic(const CyclicDataSet& D);

/// Throws MalformedDataSet if n < 2, g0 < 0, d outside [0,n), some n_i does not divide n,
/// n_i < 2, or some c_i is not a unit mod n_i.
void check_well_formed(const CyclicDataSet& D);

CyclicVerdict validate_cyclic(const CyclicDataSet& D);

CanonicalCyclicForm canonicalize_cyclic(const CyclicDataSet& D);
/// Same set with cones sorted into display order.
CyclicDataSet sorted_cyclic(const CyclicDataSet& D);

bool is_free(const CyclicDataSet& D);

std::string print_cyclic(const CyclicDataSet& D);
CyclicDataSet parse_cyclic(std::string_view text);

nlohmann::ordered_json cyclic_to_json(const CyclicDataSet& D);
CyclicDataSet cyclic_from_json(const nlohmann::json& j);

}  // namespace mcg

#endif  // MCG_CYCLIC_HPP
