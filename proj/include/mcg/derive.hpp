#ifndef MCG_DERIVE_HPP
#define MCG_DERIVE_HPP

#include <map>
#include <utility>

#include "mcg/cyclic.hpp"
#include "mcg/group.hpp"
#include "mcg/meta.hpp"

namespace mcg {

class DerivationError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// |C_H(x)| * sum over cones i with t | n_i and x ~ x_i^(n_i v / t) of 1/n_i, where t = |x|.
/// Throws DerivationError if the sum is not an integer.
Int fixed_point_count(const MetacyclicDataSet& D, const MetacyclicGroup& H, MetacyclicGroup::Index x, Int v);

/// Totals and proper counts for the powers of one element, keyed by (t, v).
struct FixedPointTable {
  Int order = 0;
  std::map<std::pair<Int, Int>, Int> total;
  std::map<std::pair<Int, Int>, Int> proper;
};

FixedPointTable fixed_point_table(const MetacyclicDataSet& D, const MetacyclicGroup& H, MetacyclicGroup::Index gen);

/// Cyclic data set of <gen> acting on the same surface. A free result carries d = 1, which
/// fixed-point data cannot confirm (see `is_free`).
CyclicDataSet derive_cyclic_factor(const MetacyclicDataSet& D, const MetacyclicGroup& H, MetacyclicGroup::Index gen);

CyclicDataSet derive_DF(const MetacyclicDataSet& D);
CyclicDataSet derive_DG(const MetacyclicDataSet& D);
CyclicDataSet derive_DF(const MetacyclicDataSet& D, const MetacyclicGroup& H);
CyclicDataSet derive_DG(const MetacyclicDataSet& D, const MetacyclicGroup& H);
/// Induced action on the quotient by <F>: degree u, orbit genus g0.
CyclicDataSet derive_DGbar(const MetacyclicDataSet& D);

}  // namespace mcg

#endif  // MCG_DERIVE_HPP
