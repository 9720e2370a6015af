#ifndef SUBKOBA_POLYNOMIAL_HPP
#define SUBKOBA_POLYNOMIAL_HPP

#include <Eigen/Dense>
#include <complex>
#include <map>
#include <optional>
#include <vector>

#include "subkoba/exact.hpp"

namespace subkoba {

/// Sparse multivariate polynomial over Q(i), exponent-vector keyed.
class MPoly {
public:
  using Exponents = std::vector<int>;
  using Terms = std::map<Exponents, RationalComplex>;

  MPoly() = default;
  explicit MPoly(int nvars) : nvars_(nvars) {}

  static MPoly constant(int nvars, const RationalComplex& c);
  static MPoly variable(int nvars, int index);

  int nvars() const { return nvars_; }
  bool is_zero() const { return terms_.empty(); }
  bool is_constant() const { return terms_.empty() || (terms_.size() == 1 && terms_.begin()->first == Exponents(nvars_, 0)); }
  RationalComplex constant_value() const;
  int degree() const;
  const Terms& terms() const { return terms_; }

  void add_term(const Exponents& e, const RationalComplex& c);

  MPoly operator-() const;
  MPoly& operator+=(const MPoly& o);
  MPoly& operator-=(const MPoly& o);
  friend MPoly operator+(MPoly a, const MPoly& b) { return a += b; }
  friend MPoly operator-(MPoly a, const MPoly& b) { return a -= b; }
  friend MPoly operator*(const MPoly& a, const MPoly& b);
  MPoly scaled(const RationalComplex& c) const;
  friend bool operator==(const MPoly& a, const MPoly& b) {
    return a.nvars_ == b.nvars_ && a.terms_ == b.terms_;
  }

  MPoly derivative(int var) const;
  /// Antiderivative in var with zero constant term.
  MPoly integrate(int var) const;
  /// Substitution: subs[i] replaces variable i; all subs share a variable count.
  MPoly compose(const std::vector<MPoly>& subs) const;

  RationalComplex eval_exact(const CVec& z) const;
  std::complex<double> eval(const Eigen::VectorXcd& z) const;

  std::string str() const;

private:
  int nvars_ = 0;
  Terms terms_;
};

/// Holomorphic polynomial vector field on C^n (components in n variables).
using PolyField = std::vector<MPoly>;

/// Lie bracket of vector fields: [X,Y] = (DY) X - (DX) Y.
PolyField field_bracket(const PolyField& x, const PolyField& y);

MPoly poly_det(const std::vector<std::vector<MPoly>>& m);

/// Inverse of a square polynomial matrix with constant nonzero determinant
/// (adjugate over the constant det); nullopt when det is nonconstant or zero.
std::optional<std::vector<std::vector<MPoly>>> poly_inverse_constant_det(
    const std::vector<std::vector<MPoly>>& m);

/// Double-precision evaluation cache for hot loops (ODE right-hand sides).
struct NumericPoly {
  struct Term {
    std::complex<double> coeff;
    std::vector<int> exps;
  };
  std::vector<Term> terms;
  int nvars = 0;

  NumericPoly() = default;
  explicit NumericPoly(const MPoly& p);
  std::complex<double> eval(const Eigen::VectorXcd& z) const;
};

struct NumericField {
  std::vector<NumericPoly> components;

  NumericField() = default;
  explicit NumericField(const PolyField& f);
  Eigen::VectorXcd eval(const Eigen::VectorXcd& z) const;
};

}  // namespace subkoba

#endif
