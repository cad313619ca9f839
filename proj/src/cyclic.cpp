#include "mcg/cyclic.hpp"

#include <algorithm>

#include "mcg/notation.hpp"

namespace mcg {

bool cone_before(const Cone& a, const Cone& b) {
  if (a.m != b.m) return a.m > b.m;
  return a.c < b.c;
}

CyclicDataSet CanonicalCyclicForm::expand() const {
  CyclicDataSet out{n, g0, d, {}};
  for (const auto& gc : cones)
    for (Int i = 0; i < gc.mult; ++i) out.cones.push_back(gc.cone);
  return out;
}

std::string to_string(CyclicCondition c) {
  switch (c) {
    case CyclicCondition::ok: return "ok";
    case CyclicCondition::free_rotation: return "i";
    case CyclicCondition::divisibility: return "ii";
    case CyclicCondition::lcm: return "iii";
    case CyclicCondition::rotation_sum: return "iv";
    case CyclicCondition::genus_fraction: return "genus-fraction";
    case CyclicCondition::genus_zero: return "genus-zero";
  }
  return "?";
}

Rational genus_cyclic(const CyclicDataSet& D) {
  Rational rhs = Rational(2 - 2 * D.g0);
  for (const auto& c : D.cones) rhs += Rational(1, c.m) - Rational(1);
  // 2 - 2g = n * rhs
  return (Rational(2) - Rational(D.n) * rhs) / Rational(2);
}

void check_well_formed(const CyclicDataSet& D) {
  auto bad = [&](const std::string& why) { throw MalformedDataSet("malformed cyclic data set: " + why); };
  if (D.n < 2) bad("degree must be at least 2");
  if (D.g0 < 0) bad("orbit genus must be non-negative");
  if (D.d < 0 || D.d >= D.n) bad("d must lie in [0,n)");
  for (const auto& c : D.cones) {
    if (c.m < 2) bad("cone order " + std::to_string(c.m) + " must be at least 2");
    if (D.n % c.m != 0) bad("cone order " + std::to_string(c.m) + " does not divide " + std::to_string(D.n));
    if (c.c < 0 || c.c >= c.m || gcd(c.c, c.m) != 1)
      bad("rotation class " + std::to_string(c.c) + " is not a unit mod " + std::to_string(c.m));
  }
}

CyclicVerdict validate_cyclic(const CyclicDataSet& D) {
  check_well_formed(D);
  CyclicVerdict v;
  v.genus = genus_cyclic(D);
  auto fail = [&](CyclicCondition c, std::string msg) {
    v.valid = false;
    v.failed = c;
    v.message = std::move(msg);
    return v;
  };
  const bool has_cones = !D.cones.empty();
  if ((D.d > 0) == has_cones) return fail(CyclicCondition::free_rotation, "d > 0 exactly when there are no cones");
  if (D.d > 0 && gcd(D.d, D.n) != 1) return fail(CyclicCondition::free_rotation, "gcd(d,n) must be 1");

  Int full = 1;
  for (const auto& c : D.cones) full = lcm(full, c.m);
  if (D.g0 == 0 && has_cones && full != D.n)
    return fail(CyclicCondition::lcm, "lcm of cone orders is " + std::to_string(full) + ", not n");
  for (std::size_t i = 0; i < D.cones.size(); ++i) {
    Int partial = 1;
    for (std::size_t j = 0; j < D.cones.size(); ++j)
      if (j != i) partial = lcm(partial, D.cones[j].m);
    if (partial != full)
      return fail(CyclicCondition::lcm, "dropping cone " + std::to_string(i + 1) + " lowers the lcm");
  }

  Int sum = 0;
  for (const auto& c : D.cones) sum = mod(sum + (D.n / c.m) * c.c, D.n);
  if (sum != 0) return fail(CyclicCondition::rotation_sum, "sum of (n/n_j) c_j is " + std::to_string(sum) + " mod n");

  if (!v.genus.is_integer()) return fail(CyclicCondition::genus_fraction, "genus " + v.genus.str() + " is not an integer");
  if (v.genus < Rational(1)) return fail(CyclicCondition::genus_zero, "genus " + v.genus.str() + " is below 1");
  v.valid = true;
  return v;
}

CanonicalCyclicForm canonicalize_cyclic(const CyclicDataSet& D) {
  CyclicDataSet s = sorted_cyclic(D);
  CanonicalCyclicForm out{s.n, s.g0, s.d, {}};
  for (const auto& c : s.cones) {
    if (!out.cones.empty() && out.cones.back().cone == c)
      ++out.cones.back().mult;
    else
      out.cones.push_back({c, 1});
  }
  return out;
}

CyclicDataSet sorted_cyclic(const CyclicDataSet& D) {
  CyclicDataSet s = D;
  std::stable_sort(s.cones.begin(), s.cones.end(), cone_before);
  return s;
}

bool is_free(const CyclicDataSet& D) { return D.cones.empty(); }

std::string print_cyclic(const CyclicDataSet& D) {
  const auto form = canonicalize_cyclic(D);
  std::string out = "(" + std::to_string(form.n) + "," + std::to_string(form.g0);
  if (form.d != 0) out += "," + std::to_string(form.d);
  out += ";";
  bool first = true;
  for (const auto& gc : form.cones) {
    if (!first) out += ",";
    first = false;
    const std::string pair = "(" + std::to_string(gc.cone.c) + "," + std::to_string(gc.cone.m) + ")";
    out += gc.mult == 1 ? pair : "(" + pair + "," + std::to_string(gc.mult) + ")";
  }
  return out + ")";
}

CyclicDataSet parse_cyclic(std::string_view text) {
  Cursor cur(text);
  CyclicDataSet D;
  cur.expect('(');
  D.n = cur.integer();
  cur.expect(',');
  D.g0 = cur.integer();
  if (cur.accept(',')) D.d = cur.integer();
  cur.expect(';');
  bool first = true;
  while (!cur.accept(')')) {
    if (!first) cur.accept(',');  // tolerate a missing separator between cones
    first = false;
    cur.expect('(');
    Int mult = 1;
    Cone c;
    if (cur.accept('(')) {
      c.c = cur.integer();
      cur.expect(',');
      c.m = cur.integer();
      cur.expect(')');
      cur.expect(',');
      const std::size_t at = cur.pos();
      mult = cur.integer();
      if (mult < 1) throw ParseError("multiplicity must be positive", at, std::to_string(mult));
      cur.expect(')');
    } else {
      c.c = cur.integer();
      cur.expect(',');
      c.m = cur.integer();
      cur.expect(')');
    }
    if (c.m >= 1) c.c = mod(c.c, c.m);
    for (Int i = 0; i < mult; ++i) D.cones.push_back(c);
  }
  if (!cur.at_end()) cur.fail("trailing input");
  return D;
}

nlohmann::ordered_json cyclic_to_json(const CyclicDataSet& D) {
  const auto form = canonicalize_cyclic(D);
  nlohmann::ordered_json j;
  j["schema"] = "mcg/1";
  j["kind"] = "cyclic";
  j["n"] = form.n;
  j["g0"] = form.g0;
  j["d"] = form.d;
  j["cones"] = nlohmann::ordered_json::array();
  for (const auto& gc : form.cones) j["cones"].push_back({{"c", gc.cone.c}, {"m", gc.cone.m}, {"mult", gc.mult}});
  return j;
}

CyclicDataSet cyclic_from_json(const nlohmann::json& j) {
  if (j.value("schema", "") != "mcg/1" || j.value("kind", "") != "cyclic")
    throw MalformedDataSet("expected an mcg/1 cyclic object");
  CyclicDataSet D{j.at("n").get<Int>(), j.at("g0").get<Int>(), j.value("d", Int{0}), {}};
  for (const auto& c : j.at("cones")) {
    const Int mult = c.value("mult", Int{1});
    for (Int i = 0; i < mult; ++i) D.cones.push_back({c.at("c").get<Int>(), c.at("m").get<Int>()});
  }
  return D;
}

}  // namespace mcg
