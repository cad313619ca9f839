#ifndef MCG_META_HPP
#define MCG_META_HPP

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "json.hpp"
#include "mcg/arith.hpp"
#include "mcg/cyclic.hpp"
#include "mcg/group.hpp"

namespace mcg {

/// [(c1,n1),(c2,n2),order]: the cone generator maps to G^(c1 m/n1) F^(c2 n/n2).
struct Triple {
  Int c1 = 0;
  Int n1 = 1;
  Int c2 = 0;
  Int n2 = 1;
  Int order = 0;
  friend bool operator==(const Triple&, const Triple&) = default;
  friend auto operator<=>(const Triple&, const Triple&) = default;
};

struct MetacyclicDataSet {
  GroupParams params;
  Int g0 = 0;
  std::vector<Triple> triples;  // ordered; the order enters condition (iv)

  Int m() const { return params.m(); }
  friend bool operator==(const MetacyclicDataSet&, const MetacyclicDataSet&) = default;
};

/// Exponent of G in the image of cone i, reduced mod m.
Int gamma_of(const MetacyclicDataSet& D, std::size_t i);
/// Exponent of F in the image of cone i, reduced mod n.
Int delta_of(const MetacyclicDataSet& D, std::size_t i);
/// Triple whose image is G^gamma F^delta, labels in lowest terms.
Triple triple_from_exponents(const GroupParams& p, Int gamma, Int delta, Int order);

Rational genus_meta(const MetacyclicDataSet& D);

/// Throws MalformedDataSet (or ParameterError for the group) on structural problems:
/// cone orders below 2, labels outside [0, n_ij), non-positive n_ij.
void check_well_formed(const MetacyclicDataSet& D);

struct ConeOrder {
  Int s = 0;  // 0 when no s <= u*n exists
  Int t = 0;
};
ConeOrder cone_order_literal(const MetacyclicDataSet& D, std::size_t i);

struct WitnessBundle {
  Int w = 0;
  std::optional<Int> theta;
  Int v = 0;
  std::vector<Int> p, q;
  Int a = 0, b = 0;
  std::optional<Int> m_prime, n_prime, alpha, beta;
  std::vector<ConeOrder> cone_orders;
  /// Oracle only: images (b,a) of the hyperbolic generators y_1, z_1, y_2, ...
  std::vector<Element> hyperbolic;
};

enum class Verdict { valid, invalid, indeterminate };
enum class Method { literal, oracle };

std::string to_string(Verdict v);
std::string to_string(Method m);

struct ValidationReport {
  Verdict verdict = Verdict::invalid;
  Method method = Method::literal;
  std::string failed_condition;  // "i", "ii.a", "ii.b", "iii", "iv", "v.a", "v.b", "vi", "order", "relation", "surjectivity"
  std::string message;
  Rational genus;
  WitnessBundle witness;

  bool valid() const { return verdict == Verdict::valid; }
};

struct SearchBounds {
  Int v_max = 0;  // 0 selects u*n
};

ValidationReport validate_meta_literal(const MetacyclicDataSet& D, SearchBounds bounds = {});
ValidationReport validate_meta_oracle(const MetacyclicDataSet& D);
ValidationReport validate_meta_oracle(const MetacyclicDataSet& D, const MetacyclicGroup& H);
/// Literal verdict, escalated to the oracle when the literal search is inconclusive.
ValidationReport validate_meta(const MetacyclicDataSet& D);

/// Re-checks every congruence recorded in a literal witness, evaluating the sums and
/// products term by term. Returns an empty string on success, else the failing condition.
std::string reverify_literal_witness(const MetacyclicDataSet& D, const WitnessBundle& W);

std::string print_meta(const MetacyclicDataSet& D);
MetacyclicDataSet parse_meta(std::string_view text);

nlohmann::ordered_json meta_to_json(const MetacyclicDataSet& D);
MetacyclicDataSet meta_from_json(const nlohmann::json& j);
nlohmann::ordered_json report_to_json(const ValidationReport& R);

}  // namespace mcg

#endif  // MCG_META_HPP
