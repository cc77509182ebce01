#include "rainbow/bounds.hpp"

#include "rainbow/core.hpp"

#include <sstream>

namespace rainbow {

namespace mp = boost::multiprecision;

Integer binomial(unsigned n, unsigned k) {
  if (k > n) return 0;
  if (k > n - k) k = n - k;
  Integer result = 1;
  for (unsigned i = 1; i <= k; ++i) {
    result *= n - k + i;
    result /= i;
  }
  return result;
}

Integer ipow(const Integer& base, unsigned exponent) { return mp::pow(base, exponent); }

Integer floor_root(const Integer& x, unsigned k) {
  if (x < 0) throw InvalidParameter("floor_root of a negative number");
  if (k == 0) throw InvalidParameter("floor_root with k = 0");
  if (x < 2 || k == 1) return x;

  // Newton iteration from an overestimate decreases monotonically to the floor.
  const unsigned bits = static_cast<unsigned>(mp::msb(x)) + 1;
  Integer y = Integer(1) << ((bits + k - 1) / k);
  while (true) {
    Integer next = ((k - 1) * y + x / mp::pow(y, k - 1)) / k;
    if (next >= y) break;
    y = next;
  }
  while (mp::pow(y, k) > x) --y;
  while (mp::pow(y + 1, k) <= x) ++y;
  return y;
}

Integer floor_of(const Rational& q) {
  Integer num = mp::numerator(q);
  Integer den = mp::denominator(q);
  Integer quot = num / den;  // truncates toward zero
  if (num % den != 0 && num < 0) --quot;
  return quot;
}

Integer ceil_of(const Rational& q) {
  Integer f = floor_of(q);
  return Rational(f) == q ? f : f + 1;
}

std::string to_string(const Rational& q) { return q.str(); }

std::string to_string(const Real& x, int digits) {
  std::ostringstream out;
  out.precision(digits);
  out << x;
  return out.str();
}

namespace {

// n^{num/den} as an exact integer root when it exists, else its floor.
struct PowerSplit {
  Integer floor_value;
  bool exact;
  Real real;
};

PowerSplit fractional_power(std::int64_t n, unsigned num, unsigned den) {
  Integer raised = ipow(Integer(n), num);
  Integer root = floor_root(raised, den);
  PowerSplit out;
  out.floor_value = root;
  out.exact = ipow(root, den) == raised;
  out.real = mp::pow(Real(n), Real(num) / Real(den));
  return out;
}

void finish(BoundValue& b) {
  b.floor = floor_of(b.value);
  b.ceil = ceil_of(b.value);
  if (b.exact) b.real = Real(mp::numerator(b.value)) / Real(mp::denominator(b.value));
}

bool above_six_pow(int r, std::int64_t n) { return Integer(n) > ipow(Integer(6), static_cast<unsigned>(r)); }

}  // namespace

BoundValue lower_bound_g_prime(int r, std::int64_t n) {
  BoundValue b;
  b.formula_id = "lower_g_prime";
  if (r < 3) {
    b.domain_ok = false;
    b.domain_note = "requires r >= 3";
  }
  const unsigned ru = static_cast<unsigned>(std::max(r, 1));
  b.value = Rational(2 * Integer(n) - binomial(2 * ru, ru), Integer(r + 1));
  finish(b);
  return b;
}

BoundValue upper_bound_g(int r, std::int64_t n) {
  BoundValue b;
  b.formula_id = "upper_g";
  if (r < 3) {
    b.domain_ok = false;
    b.domain_note = "requires r >= 3";
  } else if (!above_six_pow(r, n)) {
    b.domain_ok = false;
    b.domain_note = "requires n > 6^r";
  }
  const unsigned ru = static_cast<unsigned>(std::max(r, 1));
  if (n < 1) {
    b.value = Rational(n);
    finish(b);
    b.domain_ok = false;
    b.domain_note = "requires n >= 1";
    return b;
  }
  PowerSplit p = fractional_power(n, ru - 1, ru);
  b.value = Rational(n) - Rational(p.floor_value, Integer(12 * r));
  b.exact = p.exact;
  if (!p.exact) b.real = Real(n) - p.real / Real(12 * r);
  finish(b);
  return b;
}

HBounds bounds_h(int r, std::int64_t n) {
  HBounds h;
  const unsigned ru = static_cast<unsigned>(std::max(r, 1));

  h.lower.formula_id = "lower_h";
  h.upper.formula_id = "upper_h_prime";
  if (r < 3) {
    h.lower.domain_ok = h.upper.domain_ok = false;
    h.lower.domain_note = h.upper.domain_note = "requires r >= 3";
  } else {
    if (!above_six_pow(r, n)) {
      h.lower.domain_ok = false;
      h.lower.domain_note = "requires n > 6^r";
    }
    h.upper.domain_note = "n sufficiently large: threshold unquantified";
  }
  if (n < 1) {
    h.lower.value = h.upper.value = Rational(n);
    finish(h.lower);
    finish(h.upper);
    h.lower.domain_ok = h.upper.domain_ok = false;
    h.lower.domain_note = h.upper.domain_note = "requires n >= 1";
    return h;
  }

  PowerSplit lo = fractional_power(n, ru - 1, ru);
  h.lower.value = Rational(n) + Rational(lo.floor_value, Integer(12 * r));
  h.lower.exact = lo.exact;
  if (!lo.exact) h.lower.real = Real(n) + lo.real / Real(12 * r);
  finish(h.lower);

  PowerSplit hi = fractional_power(n, 2 * ru - 1, 2 * ru);
  const Integer coeff = 3 * Integer(r) * r;
  h.upper.value = Rational(Integer(r + 1) * n, Integer(2)) + coeff * hi.floor_value;
  h.upper.exact = hi.exact;
  if (!hi.exact) h.upper.real = Real(r + 1) * Real(n) / 2 + Real(coeff) * hi.real;
  finish(h.upper);
  return h;
}

BoundValue weak_asymptotic_bound(int r, std::int64_t n) {
  BoundValue b;
  b.formula_id = "weak_asymptotic";
  if (r < 3) {
    b.domain_ok = false;
    b.domain_note = "requires r >= 3";
  }
  const unsigned ru = static_cast<unsigned>(std::max(r, 1));
  if (n < 0) {
    b.value = Rational(n);
    finish(b);
    b.domain_ok = false;
    b.domain_note = "requires n >= 0";
    return b;
  }
  const Integer root = floor_root(Integer(n), 2);
  const Integer scale = Integer(1) << ru;
  b.value = Rational(Integer(n) - scale * root);
  b.exact = root * root == n;
  if (!b.exact) b.real = Real(n) - Real(scale) * mp::sqrt(Real(n));
  finish(b);
  return b;
}

BoundValue ach_bound(int r, std::int64_t n) {
  BoundValue b;
  b.formula_id = "ach_upper";
  if (r < 3) {
    b.domain_ok = false;
    b.domain_note = "requires r >= 3";
  }
  const unsigned ru = static_cast<unsigned>(std::max(r, 2));
  Integer value = Integer(n) - (Integer(1) << (ru - 2));
  if (n % 2 != 0) value += 1;
  b.value = Rational(value);
  finish(b);
  return b;
}

GiCheck check_gibounds(int r, std::int64_t n, std::int64_t N, std::int64_t m) {
  if (r < 2) throw InvalidParameter("check_gibounds requires r >= 2");
  const unsigned ru = static_cast<unsigned>(r);
  GiCheck c;
  c.lhs = Rational(Integer(n - m) * (2 * Integer(N) - Integer(r + 1) * m), Integer(r - 1));
  c.rhs = Rational(binomial(2 * ru, ru) * m, Integer(2));
  c.holds = c.lhs <= c.rhs;
  return c;
}

}  // namespace rainbow
