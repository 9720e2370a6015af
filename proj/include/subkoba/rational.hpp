#ifndef SUBKOBA_RATIONAL_HPP
#define SUBKOBA_RATIONAL_HPP

#include <cstdint>
#include <iosfwd>
#include <stdexcept>
#include <string>

namespace subkoba {

/// Thrown when an exact computation would exceed 128-bit intermediates.
struct RationalOverflow : std::runtime_error {
  RationalOverflow() : std::runtime_error("rational overflow (exact arithmetic out of range)") {}
};

/// Exact rational number with 128-bit numerator/denominator.
///
/// Always stored reduced with positive denominator. All operations are exact;
/// anything that would overflow throws RationalOverflow instead of wrapping.
class Rational {
public:
  using Int = __int128;

  Rational() : num_(0), den_(1) {}
  Rational(long long n) : num_(n), den_(1) {}
  Rational(Int n, Int d) : num_(n), den_(d) { normalize(); }

  static Rational from_string(const std::string& s);  // "p/q" or "p"
  /// Nearest rational with denominator 2^bits (exact dyadic rounding).
  static Rational from_double_dyadic(double x, int bits = 20);

  Int num() const { return num_; }
  Int den() const { return den_; }

  bool is_zero() const { return num_ == 0; }
  int sign() const { return num_ > 0 ? 1 : (num_ < 0 ? -1 : 0); }

  Rational operator-() const { return Rational(unchecked{}, -num_, den_); }
  Rational& operator+=(const Rational& o);
  Rational& operator-=(const Rational& o);
  Rational& operator*=(const Rational& o);
  Rational& operator/=(const Rational& o);

  friend Rational operator+(Rational a, const Rational& b) { return a += b; }
  friend Rational operator-(Rational a, const Rational& b) { return a -= b; }
  friend Rational operator*(Rational a, const Rational& b) { return a *= b; }
  friend Rational operator/(Rational a, const Rational& b) { return a /= b; }

  friend bool operator==(const Rational& a, const Rational& b) {
    return a.num_ == b.num_ && a.den_ == b.den_;
  }
  friend bool operator!=(const Rational& a, const Rational& b) { return !(a == b); }
  friend bool operator<(const Rational& a, const Rational& b);
  friend bool operator>(const Rational& a, const Rational& b) { return b < a; }
  friend bool operator<=(const Rational& a, const Rational& b) { return !(b < a); }
  friend bool operator>=(const Rational& a, const Rational& b) { return !(a < b); }

  double to_double() const;
  std::string str() const;  // "p/q", or "p" when q == 1

  /// Exact square root if this is a perfect square of a rational.
  bool sqrt_exact(Rational& out) const;

private:
  struct unchecked {};
  Rational(unchecked, Int n, Int d) : num_(n), den_(d) {}
  void normalize();

  Int num_;
  Int den_;
};

inline Rational abs(const Rational& r) { return r.sign() < 0 ? -r : r; }

std::ostream& operator<<(std::ostream& os, const Rational& r);

/// Exact complex rational, field Q(i). Coefficient type of the complexified
/// Lie algebra computations.
struct RationalComplex {
  Rational re;
  Rational im;

  RationalComplex() = default;
  RationalComplex(Rational r) : re(r), im(0) {}
  RationalComplex(long long r) : re(r), im(0) {}
  RationalComplex(Rational r, Rational i) : re(r), im(i) {}

  bool is_zero() const { return re.is_zero() && im.is_zero(); }

  RationalComplex operator-() const { return {-re, -im}; }
  RationalComplex& operator+=(const RationalComplex& o) { re += o.re; im += o.im; return *this; }
  RationalComplex& operator-=(const RationalComplex& o) { re -= o.re; im -= o.im; return *this; }
  RationalComplex& operator*=(const RationalComplex& o) {
    Rational r = re * o.re - im * o.im;
    im = re * o.im + im * o.re;
    re = r;
    return *this;
  }
  RationalComplex& operator/=(const RationalComplex& o);

  friend RationalComplex operator+(RationalComplex a, const RationalComplex& b) { return a += b; }
  friend RationalComplex operator-(RationalComplex a, const RationalComplex& b) { return a -= b; }
  friend RationalComplex operator*(RationalComplex a, const RationalComplex& b) { return a *= b; }
  friend RationalComplex operator/(RationalComplex a, const RationalComplex& b) { return a /= b; }
  friend bool operator==(const RationalComplex& a, const RationalComplex& b) {
    return a.re == b.re && a.im == b.im;
  }
  friend bool operator!=(const RationalComplex& a, const RationalComplex& b) { return !(a == b); }

  std::string str() const;
};

inline RationalComplex conj(const RationalComplex& z) { return {z.re, -z.im}; }
inline RationalComplex rc_i() { return {Rational(0), Rational(1)}; }

std::ostream& operator<<(std::ostream& os, const RationalComplex& z);

}  // namespace subkoba

#endif
