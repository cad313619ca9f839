#ifndef MCG_CLASSIFY_HPP
#define MCG_CLASSIFY_HPP

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "json.hpp"
#include "mcg/cyclic.hpp"
#include "mcg/group.hpp"
#include "mcg/meta.hpp"

namespace mcg {

/// How the shift a in the equivalence congruences is quantified.
/// per_pair: each matched pair picks its own a, which makes equivalence the same as equality
/// of the multisets of conjugacy classes of the cone images. global: one a for all pairs.
enum class EquivalenceMode { per_pair, global };

std::string to_string(EquivalenceMode m);
EquivalenceMode parse_equivalence_mode(const std::string& s);

struct EquivalenceWitness {
  /// match[i] = index of the triple of D matched to triple i of D'.
  std::vector<std::size_t> match;
  /// One entry per triple of D'; all equal in global mode.
  std::vector<Int> a;
  std::vector<Int> a_i;
  std::vector<Int> b_i;
};

/// Throws std::invalid_argument when the parameters, g0 or number of triples differ.
std::optional<EquivalenceWitness> equivalent(const MetacyclicDataSet& D, const MetacyclicDataSet& Dp,
                                             EquivalenceMode mode = EquivalenceMode::per_pair);

/// Re-checks the three congruence families under a witness. Empty string on success.
std::string reverify_equivalence(const MetacyclicDataSet& D, const MetacyclicDataSet& Dp,
                                 const EquivalenceWitness& W);

struct EnumerationFilters {
  bool nonsplit_only = false;
  /// Drop the generalized quaternion groups M(2, 2^j, 2^(j-1), -1).
  bool exclude_quaternion = false;
  /// One representative presentation per isomorphism type.
  bool canonical_presentations = true;
  /// Restrict to one presentation (still subject to the other filters).
  std::optional<GroupParams> only;
  /// Largest u*n considered; 0 selects 4g under nonsplit_only, else 84(g-1).
  Int max_order = 0;
  EquivalenceMode mode = EquivalenceMode::per_pair;
  unsigned workers = 1;
  /// Re-validate every representative with both validators.
  bool validate_rows = true;
  std::function<void(const std::string&)> progress;
};

struct ClassRow {
  GroupParams params;
  MetacyclicDataSet rep;
  CyclicDataSet DG;
  CyclicDataSet DF;
  /// False when no realizing tuple of this class satisfies the literal conditions
  /// (the epimorphism exists but not with the hyperbolic images the literal form allows).
  bool literal_valid = true;
};

struct ClassificationTable {
  Int genus = 0;
  EnumerationFilters filters;
  std::vector<ClassRow> rows;
};

/// Candidate presentations for genus g under the filters, in ascending (u*n, n, r, k) order.
std::vector<GroupParams> candidate_groups(Int g, const EnumerationFilters& filters);

bool is_generalized_quaternion(const GroupParams& p);

/// Signatures (g0; n_1 <= ... <= n_l) compatible with Riemann-Hurwitz for a group of order N
/// acting on genus g, drawing cone orders from `orders`.
struct Signature {
  Int g0 = 0;
  std::vector<Int> orders;
};
std::vector<Signature> signatures(Int g, Int N, const std::vector<Int>& orders);

/// One valid representative per equivalence class of data sets for this group and genus.
std::vector<ClassRow> classes_for_group(const MetacyclicGroup& H, Int g, bool validate_rows = true);

ClassificationTable enumerate_meta(Int g, const EnumerationFilters& filters = {});

/// Deterministic row order: (u*n, n, r, k, triples).
bool row_before(const ClassRow& a, const ClassRow& b);

/// A data set of degree u*n (n = degree of D_F), amalgam r, twist k whose derived factors are
/// D_F and D_G, or none. Throws std::invalid_argument on degree or genus mismatch.
std::optional<MetacyclicDataSet> query_pair(const CyclicDataSet& DF, const CyclicDataSet& DG, Int u, Int r, Int k);

std::string table_to_text(const ClassificationTable& T);
std::string table_to_csv(const ClassificationTable& T);
nlohmann::ordered_json table_to_json(const ClassificationTable& T);

}  // namespace mcg

#endif  // MCG_CLASSIFY_HPP
