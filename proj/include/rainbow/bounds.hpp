#pragma once

#include <boost/multiprecision/cpp_dec_float.hpp>
#include <boost/multiprecision/cpp_int.hpp>

#include <cstdint>
#include <string>
#include <utility>

namespace rainbow {

using Integer = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;
using Real = boost::multiprecision::cpp_dec_float_50;

Integer binomial(unsigned n, unsigned k);
Integer ipow(const Integer& base, unsigned exponent);

// Largest y with y^k <= x, for x >= 0 and k >= 1.
Integer floor_root(const Integer& x, unsigned k);

Integer floor_of(const Rational& q);
Integer ceil_of(const Rational& q);

std::string to_string(const Rational& q);
std::string to_string(const Real& x, int digits = 20);

// An evaluated bound formula. `value` is exact whenever `exact` is set;
// otherwise it uses floor integer roots and `real` carries the true value
// to 50 significant digits.
struct BoundValue {
  std::string formula_id;
  Rational value;
  Integer floor;
  Integer ceil;
  bool exact = true;
  Real real;
  bool domain_ok = true;
  std::string domain_note;
};

// (2n - binom(2r,r)) / (r+1); g'(r,n) is at least this.
BoundValue lower_bound_g_prime(int r, std::int64_t n);

// n - n^{(r-1)/r} / (12r) for n > 6^r; g(r,n) is at most this.
BoundValue upper_bound_g(int r, std::int64_t n);

struct HBounds {
  BoundValue lower;
  BoundValue upper;
};

// n + n^{(r-1)/r}/(12r) <= h(r,n) <= h'(r,n) <= (r+1)n/2 + 3r^2 n^{(2r-1)/(2r)}.
HBounds bounds_h(int r, std::int64_t n);

// n - 2^r sqrt(n): rainbow size guaranteed by ceil((r+1)n/2)-sized matchings.
BoundValue weak_asymptotic_bound(int r, std::int64_t n);

// Upper bound on g(r,n) from the doubled-gadget construction.
BoundValue ach_bound(int r, std::int64_t n);

struct GiCheck {
  bool holds = false;
  Rational lhs;
  Rational rhs;
};

// (n-m)(2N-(r+1)m)/(r-1) <= binom(2r,r) m / 2, both sides exact.
GiCheck check_gibounds(int r, std::int64_t n, std::int64_t N, std::int64_t m);

}  // namespace rainbow
