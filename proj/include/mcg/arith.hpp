#ifndef MCG_ARITH_HPP
#define MCG_ARITH_HPP

#include <cstdint>
#include <numeric>
#include <ostream>
#include <stdexcept>
#include <string>
#include <vector>

namespace mcg {

using Int = std::int64_t;

/// Non-negative residue of a modulo m (m > 0).
constexpr Int mod(Int a, Int m) {
  Int r = a % m;
  return r < 0 ? r + m : r;
}

constexpr Int gcd(Int a, Int b) { return std::gcd(a, b); }

constexpr Int lcm(Int a, Int b) { return (a == 0 || b == 0) ? 0 : std::lcm(a, b); }

constexpr Int pow_mod(Int base, Int exp, Int m) {
  if (m == 1) return 0;
  Int result = 1;
  base = mod(base, m);
  while (exp > 0) {
    if (exp & 1) result = result * base % m;
    base = base * base % m;
    exp >>= 1;
  }
  return result;
}

/// Multiplicative inverse of a modulo m; requires gcd(a, m) == 1.
Int inverse_mod(Int a, Int m);

/// Multiplicative order of k modulo n (k coprime to n).
Int multiplicative_order(Int k, Int n);

/// Positive divisors of n in increasing order.
std::vector<Int> divisors(Int n);

/// Residues in [0, m) coprime to m. For m == 1 this is {0}.
std::vector<Int> units(Int m);

/// Exact rational with normalized sign and lowest terms.
class Rational {
 public:
  constexpr Rational() = default;
  constexpr Rational(Int value) : num_(value) {}  // NOLINT(google-explicit-constructor)
  Rational(Int num, Int den);

  Int num() const { return num_; }
  Int den() const { return den_; }
  bool is_integer() const { return den_ == 1; }

  friend Rational operator+(const Rational& a, const Rational& b);
  friend Rational operator-(const Rational& a, const Rational& b);
  friend Rational operator*(const Rational& a, const Rational& b);
  friend Rational operator/(const Rational& a, const Rational& b);
  Rational operator-() const { return Rational(-num_, den_); }
  Rational& operator+=(const Rational& o) { return *this = *this + o; }
  Rational& operator-=(const Rational& o) { return *this = *this - o; }

  friend bool operator==(const Rational& a, const Rational& b) = default;
  friend bool operator<(const Rational& a, const Rational& b) {
    return static_cast<__int128>(a.num_) * b.den_ < static_cast<__int128>(b.num_) * a.den_;
  }

  std::string str() const;

 private:
  Int num_ = 0;
  Int den_ = 1;
};

std::ostream& operator<<(std::ostream& os, const Rational& q);

}  // namespace mcg

#endif  // MCG_ARITH_HPP
