#include "subkoba/rational.hpp"

#include <cmath>
#include <cstdlib>
#include <ostream>

namespace subkoba {

namespace {

using Int = Rational::Int;

Int checked_mul(Int a, Int b) {
  Int r;
  if (__builtin_mul_overflow(a, b, &r)) throw RationalOverflow();
  return r;
}

Int checked_add(Int a, Int b) {
  Int r;
  if (__builtin_add_overflow(a, b, &r)) throw RationalOverflow();
  return r;
}

Int gcd128(Int a, Int b) {
  if (a < 0) a = -a;
  if (b < 0) b = -b;
  while (b != 0) {
    Int t = a % b;
    a = b;
    b = t;
  }
  return a;
}

std::string int128_to_string(Int v) {
  if (v == 0) return "0";
  bool neg = v < 0;
  std::string digits;
  // careful with INT128_MIN; inputs here are always reachable from +abs
  while (v != 0) {
    Int d = v % 10;
    if (d < 0) d = -d;
    digits.push_back(static_cast<char>('0' + static_cast<int>(d)));
    v /= 10;
  }
  if (neg) digits.push_back('-');
  return std::string(digits.rbegin(), digits.rend());
}

Int int128_from_string(const std::string& s) {
  Int v = 0;
  bool neg = false;
  size_t i = 0;
  if (i < s.size() && (s[i] == '-' || s[i] == '+')) {
    neg = s[i] == '-';
    ++i;
  }
  if (i >= s.size()) throw std::invalid_argument("bad integer: '" + s + "'");
  for (; i < s.size(); ++i) {
    if (s[i] < '0' || s[i] > '9') throw std::invalid_argument("bad integer: '" + s + "'");
    v = checked_mul(v, 10);
    v = checked_add(v, s[i] - '0');
  }
  return neg ? -v : v;
}

}  // namespace

void Rational::normalize() {
  if (den_ == 0) throw std::invalid_argument("rational with zero denominator");
  if (den_ < 0) {
    num_ = -num_;
    den_ = -den_;
  }
  if (num_ == 0) {
    den_ = 1;
    return;
  }
  Int g = gcd128(num_, den_);
  num_ /= g;
  den_ /= g;
}

Rational Rational::from_string(const std::string& s) {
  auto slash = s.find('/');
  if (slash == std::string::npos) return Rational(int128_from_string(s), 1);
  return Rational(int128_from_string(s.substr(0, slash)),
                  int128_from_string(s.substr(slash + 1)));
}

Rational Rational::from_double_dyadic(double x, int bits) {
  if (!std::isfinite(x)) throw std::invalid_argument("non-finite value");
  double scaled = std::ldexp(x, bits);
  if (std::abs(scaled) > 9e18) throw RationalOverflow();
  Int num = static_cast<Int>(std::llround(scaled));
  Int den = Int(1) << bits;
  return Rational(num, den);
}

Rational& Rational::operator+=(const Rational& o) {
  // cross-reduce before multiplying to keep intermediates small
  Int g = gcd128(den_, o.den_);
  Int da = den_ / g;
  Int db = o.den_ / g;
  Int n = checked_add(checked_mul(num_, db), checked_mul(o.num_, da));
  Int d = checked_mul(den_, db);
  num_ = n;
  den_ = d;
  normalize();
  return *this;
}

Rational& Rational::operator-=(const Rational& o) { return *this += -o; }

Rational& Rational::operator*=(const Rational& o) {
  Int g1 = gcd128(num_, o.den_);
  Int g2 = gcd128(o.num_, den_);
  num_ = checked_mul(num_ / g1, o.num_ / g2);
  den_ = checked_mul(den_ / g2, o.den_ / g1);
  if (den_ < 0) {
    num_ = -num_;
    den_ = -den_;
  }
  if (num_ == 0) den_ = 1;
  return *this;
}

Rational& Rational::operator/=(const Rational& o) {
  if (o.num_ == 0) throw std::domain_error("rational division by zero");
  return *this *= Rational(o.den_, o.num_);
}

bool operator<(const Rational& a, const Rational& b) {
  // a.num/a.den < b.num/b.den with positive denominators
  return checked_mul(a.num_, b.den_) < checked_mul(b.num_, a.den_);
}

double Rational::to_double() const {
  return static_cast<double>(num_) / static_cast<double>(den_);
}

std::string Rational::str() const {
  if (den_ == 1) return int128_to_string(num_);
  return int128_to_string(num_) + "/" + int128_to_string(den_);
}

bool Rational::sqrt_exact(Rational& out) const {
  if (num_ < 0) return false;
  auto isqrt = [](Int v, Int& root) {
    if (v < 0) return false;
    Int r = static_cast<Int>(std::sqrt(static_cast<double>(v)));
    while (r > 0 && r * r > v) --r;
    while ((r + 1) * (r + 1) <= v) ++r;
    root = r;
    return r * r == v;
  };
  Int rn, rd;
  if (!isqrt(num_, rn) || !isqrt(den_, rd)) return false;
  out = Rational(rn, rd);
  return true;
}

std::ostream& operator<<(std::ostream& os, const Rational& r) { return os << r.str(); }

RationalComplex& RationalComplex::operator/=(const RationalComplex& o) {
  Rational n2 = o.re * o.re + o.im * o.im;
  if (n2.is_zero()) throw std::domain_error("complex rational division by zero");
  RationalComplex num = *this * conj(o);
  re = num.re / n2;
  im = num.im / n2;
  return *this;
}

std::string RationalComplex::str() const {
  if (im.is_zero()) return re.str();
  return "(" + re.str() + "," + im.str() + ")";
}

std::ostream& operator<<(std::ostream& os, const RationalComplex& z) { return os << z.str(); }

}  // namespace subkoba
