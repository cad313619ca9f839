#ifndef MCG_APPLICATIONS_HPP
#define MCG_APPLICATIONS_HPP

#include <optional>
#include <string>
#include <vector>

#include "json.hpp"
#include "mcg/classify.hpp"
#include "mcg/cyclic.hpp"
#include "mcg/meta.hpp"

namespace mcg {

// ---------------------------------------------------------------- order bound

struct BoundReport {
  Int genus = 0;
  Int max_nonsplit_order = 0;
  std::vector<GroupParams> attained_by;
  /// Largest order scanned above 4g (84(g-1)) and the non-split data sets found there.
  Int scanned_to = 0;
  std::vector<MetacyclicDataSet> above_bound;
  /// Even genus only: the dicyclic data set as printed with the bound, and the same set with
  /// the F-exponent of the last cone replaced by g-1 (the printed one has cone product F^g).
  std::optional<MetacyclicDataSet> dicyclic;
  bool dicyclic_valid = false;
  std::optional<MetacyclicDataSet> dicyclic_corrected;
  bool dicyclic_corrected_valid = false;

  /// Nothing above 4g, and for even g the order 4g is attained by Dic_g.
  bool holds() const;
};

/// Dic_g data set of order 4g (g even); `last_exponent` is the F-exponent of the order-2g cone,
/// 2g-1 as printed with the bound.
MetacyclicDataSet dicyclic_bound_data_set(Int g, std::optional<Int> last_exponent = std::nullopt);

/// Enumerates non-split classes up to order 4g, then scans (4g, 84(g-1)] for any valid
/// non-split data set (only signature-admissible orders are built).
BoundReport bound_check(Int g, unsigned workers = 1);

std::string bound_to_text(const BoundReport& R);
nlohmann::ordered_json bound_to_json(const BoundReport& R);

// ---------------------------------------------------------------- dicyclic actions

/// The paired shape (2n, g0, d; (c_1,n_1),(-c_1,n_1), ..., (c_s,n_s),(-c_s,n_s)).
struct DicyclicForm {
  Int degree = 0;  // 2n
  Int g0 = 0;
  Int d = 0;
  std::vector<Cone> pairs;  // one representative (c_i, n_i) per pair
};

/// Pairs the cones under c -> -c, or none when no perfect pairing exists.
std::optional<DicyclicForm> dicyclic_form(const CyclicDataSet& DF);

struct DicyclicResult {
  bool exists = false;
  std::optional<DicyclicForm> form;
  std::string clause;  // "i", "ii.a", "ii.c", "ii.d", "ii.b", or empty
  std::optional<MetacyclicDataSet> witness;
  bool witness_valid = false;
  /// derive_DF(witness) equals the input.
  bool witness_matches = false;
  std::string message;
};

/// Decides whether an order-2n class with data set D_F extends to Dic_n. Cones that do not pair
/// give a negative result; otherwise throws std::invalid_argument for odd degree, odd n, or an
/// invalid D_F.
DicyclicResult dicyclic_exists(const CyclicDataSet& DF);

nlohmann::ordered_json dicyclic_to_json(const DicyclicResult& R);

// ---------------------------------------------------------------- lifts

struct LiftResult {
  Int nu = 0;
  MetacyclicDataSet lifted;
  std::vector<Int> shifts;  // a_i per triple
  Int genus = 0;
};

/// Optional constraints on the derived factors of the lift.
struct LiftTarget {
  std::optional<CyclicDataSet> DF;
  std::optional<CyclicDataSet> DG;
};

/// Every split lift M(nu*u, n, n, k), shifts a_i in [0, nu) in lexicographic order.
/// Throws std::invalid_argument when r = n.
std::vector<LiftResult> all_lifts(const MetacyclicDataSet& D);

/// First lift in lexicographic shift order whose derived factors match the target, or none.
std::optional<LiftResult> lift_to_split(const MetacyclicDataSet& D, const LiftTarget& target = {});

nlohmann::ordered_json lift_to_json(const LiftResult& R);

}  // namespace mcg

#endif  // MCG_APPLICATIONS_HPP
