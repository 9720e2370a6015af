#ifndef SUBKOBA_EXACT_HPP
#define SUBKOBA_EXACT_HPP

#include <Eigen/Core>
#include <optional>
#include <vector>

#include "subkoba/rational.hpp"

namespace Eigen {

// Rational and RationalComplex plug into Eigen as field scalars. Conjugation
// of RationalComplex is done explicitly by free functions, so Eigen only ever
// sees ring operations (IsComplex stays 0 on purpose).
template <>
struct NumTraits<subkoba::Rational> {
  typedef subkoba::Rational Real;
  typedef subkoba::Rational NonInteger;
  typedef subkoba::Rational Nested;
  typedef subkoba::Rational Literal;
  enum {
    IsComplex = 0,
    IsInteger = 0,
    IsSigned = 1,
    RequireInitialization = 1,
    ReadCost = 2,
    AddCost = 20,
    MulCost = 20
  };
  static inline Real epsilon() { return subkoba::Rational(0); }
  static inline Real dummy_precision() { return subkoba::Rational(0); }
  static inline int digits10() { return 0; }
};

template <>
struct NumTraits<subkoba::RationalComplex> {
  typedef subkoba::RationalComplex Real;
  typedef subkoba::RationalComplex NonInteger;
  typedef subkoba::RationalComplex Nested;
  typedef subkoba::RationalComplex Literal;
  enum {
    IsComplex = 0,
    IsInteger = 0,
    IsSigned = 1,
    RequireInitialization = 1,
    ReadCost = 2,
    AddCost = 40,
    MulCost = 80
  };
  static inline Real epsilon() { return subkoba::RationalComplex(); }
  static inline Real dummy_precision() { return subkoba::RationalComplex(); }
  static inline int digits10() { return 0; }
};

}  // namespace Eigen

namespace subkoba {

using RMat = Eigen::Matrix<Rational, Eigen::Dynamic, Eigen::Dynamic>;
using RVec = Eigen::Matrix<Rational, Eigen::Dynamic, 1>;
using CMat = Eigen::Matrix<RationalComplex, Eigen::Dynamic, Eigen::Dynamic>;
using CVec = Eigen::Matrix<RationalComplex, Eigen::Dynamic, 1>;

inline bool is_zero(const Rational& x) { return x.is_zero(); }
inline bool is_zero(const RationalComplex& x) { return x.is_zero(); }

template <class S>
bool is_zero_vec(const Eigen::Matrix<S, Eigen::Dynamic, 1>& v) {
  for (Eigen::Index i = 0; i < v.size(); ++i)
    if (!is_zero(v[i])) return false;
  return true;
}

CVec complexify(const RVec& v);
CMat complexify(const RMat& m);
RVec real_part(const CVec& v);
RVec imag_part(const CVec& v);
CVec conj_vec(const CVec& v);
/// Q(i)^n viewed as Q^{2n}: (re_0..re_{n-1}, im_0..im_{n-1}).
RVec realify(const CVec& v);

Eigen::VectorXd to_double(const RVec& v);
Eigen::VectorXcd to_double(const CVec& v);
Eigen::MatrixXd to_double(const RMat& m);

/// In-place reduced row echelon form over an exact field.
/// Returns pivot column indices (rank = pivots.size()).
template <class S>
std::vector<int> echelonize(Eigen::Matrix<S, Eigen::Dynamic, Eigen::Dynamic>& m);

template <class S>
int rank_exact(Eigen::Matrix<S, Eigen::Dynamic, Eigen::Dynamic> m) {
  return static_cast<int>(echelonize(m).size());
}

/// Solves A x = b exactly; empty when inconsistent.
template <class S>
std::optional<Eigen::Matrix<S, Eigen::Dynamic, 1>> solve_exact(
    const Eigen::Matrix<S, Eigen::Dynamic, Eigen::Dynamic>& a,
    const Eigen::Matrix<S, Eigen::Dynamic, 1>& b);

/// Is v in the column span of basis?
template <class S>
bool in_col_span(const Eigen::Matrix<S, Eigen::Dynamic, Eigen::Dynamic>& basis,
                 const Eigen::Matrix<S, Eigen::Dynamic, 1>& v);

/// Column-space equality test.
template <class S>
bool same_col_span(const Eigen::Matrix<S, Eigen::Dynamic, Eigen::Dynamic>& a,
                   const Eigen::Matrix<S, Eigen::Dynamic, Eigen::Dynamic>& b);

/// Basis (as columns) of the nullspace of A.
template <class S>
Eigen::Matrix<S, Eigen::Dynamic, Eigen::Dynamic> nullspace_exact(
    const Eigen::Matrix<S, Eigen::Dynamic, Eigen::Dynamic>& a);

/// Reduces the columns of A to an independent spanning subset (echelon pivots).
template <class S>
Eigen::Matrix<S, Eigen::Dynamic, Eigen::Dynamic> col_span_basis(
    const Eigen::Matrix<S, Eigen::Dynamic, Eigen::Dynamic>& a);

/// Intersection of two column spans.
template <class S>
Eigen::Matrix<S, Eigen::Dynamic, Eigen::Dynamic> intersect_col_spans(
    const Eigen::Matrix<S, Eigen::Dynamic, Eigen::Dynamic>& a,
    const Eigen::Matrix<S, Eigen::Dynamic, Eigen::Dynamic>& b);

Rational det_exact(RMat m);

/// Sylvester criterion with exact leading principal minors.
bool is_positive_definite_exact(const RMat& sym);
bool is_negative_definite_exact(const RMat& sym);

/// Streaming exact row reduction: feed rows one at a time, query rank /
/// extract a nullspace later. Used for large structured systems (centroid
/// computations) where materializing the full constraint matrix is wasteful.
class RowReducer {
public:
  explicit RowReducer(int cols) : cols_(cols) {}
  /// Returns true if the row increased the rank.
  bool add_row(RVec row);
  int rank() const { return static_cast<int>(rows_.size()); }
  int cols() const { return cols_; }
  /// Nullspace of the accumulated rows, as columns.
  RMat nullspace() const;

private:
  int cols_;
  std::vector<RVec> rows_;      // echelonized rows
  std::vector<int> pivot_col_;  // pivot column per stored row
};

/// Deterministic small random rationals for property tests and samplers.
class RationalSampler {
public:
  explicit RationalSampler(uint64_t seed) : state_(seed ^ 0x9e3779b97f4a7c15ull) {}
  Rational next(int max_num = 8, int max_den = 4);
  RationalComplex next_complex(int max_num = 8, int max_den = 4);
  CVec next_cvec(int n, int max_num = 8, int max_den = 4);

private:
  uint64_t next_u64();
  uint64_t state_;
};

}  // namespace subkoba

#endif
