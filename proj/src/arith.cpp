#include "mcg/arith.hpp"

namespace mcg {

Int inverse_mod(Int a, Int m) {
  if (m == 1) return 0;
  Int old_r = mod(a, m), r = m;
  Int old_s = 1, s = 0;
  while (r != 0) {
    Int q = old_r / r;
    Int tmp = old_r - q * r;
    old_r = r;
    r = tmp;
    tmp = old_s - q * s;
    old_s = s;
    s = tmp;
  }
  if (old_r != 1) throw std::domain_error("inverse_mod: " + std::to_string(a) + " is not a unit mod " + std::to_string(m));
  return mod(old_s, m);
}

Int multiplicative_order(Int k, Int n) {
  if (n == 1) return 1;
  if (gcd(k, n) != 1) throw std::domain_error("multiplicative_order: not a unit");
  Int x = mod(k, n), ord = 1;
  while (x != 1) {
    x = x * mod(k, n) % n;
    ++ord;
  }
  return ord;
}

std::vector<Int> divisors(Int n) {
  std::vector<Int> small, large;
  for (Int d = 1; d * d <= n; ++d) {
    if (n % d == 0) {
      small.push_back(d);
      if (d != n / d) large.push_back(n / d);
    }
  }
  small.insert(small.end(), large.rbegin(), large.rend());
  return small;
}

std::vector<Int> units(Int m) {
  if (m == 1) return {0};
  std::vector<Int> out;
  for (Int a = 1; a < m; ++a)
    if (gcd(a, m) == 1) out.push_back(a);
  return out;
}

Rational::Rational(Int num, Int den) {
  if (den == 0) throw std::domain_error("Rational: zero denominator");
  if (den < 0) {
    num = -num;
    den = -den;
  }
  Int g = gcd(num < 0 ? -num : num, den);
  if (g == 0) g = 1;
  num_ = num / g;
  den_ = den / g;
}

Rational operator+(const Rational& a, const Rational& b) {
  return Rational(a.num_ * b.den_ + b.num_ * a.den_, a.den_ * b.den_);
}
Rational operator-(const Rational& a, const Rational& b) {
  return Rational(a.num_ * b.den_ - b.num_ * a.den_, a.den_ * b.den_);
}
Rational operator*(const Rational& a, const Rational& b) {
  return Rational(a.num_ * b.num_, a.den_ * b.den_);
}
Rational operator/(const Rational& a, const Rational& b) {
  return Rational(a.num_ * b.den_, a.den_ * b.num_);
}

std::string Rational::str() const {
  return den_ == 1 ? std::to_string(num_) : std::to_string(num_) + "/" + std::to_string(den_);
}

std::ostream& operator<<(std::ostream& os, const Rational& q) { return os << q.str(); }

}  // namespace mcg
