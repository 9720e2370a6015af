#ifndef SUBKOBA_LIE_ALGEBRA_HPP
#define SUBKOBA_LIE_ALGEBRA_HPP

#include "subkoba/real_form.hpp"

namespace subkoba {

/// Finite-dimensional real Lie algebra given by exact structure constants,
/// with the Killing form computed from the adjoint representation. Carries
/// the conjugation data (theta) and an isotropy subalgebra when the algebra
/// was built from a real form.
struct LieAlgebraData {
  int dim = 0;
  std::vector<std::vector<SparseVec>> bracket_table;
  RMat killing;
  std::optional<RMat> theta;    // Cartan involution in this basis
  std::optional<RMat> v_basis;  // isotropy subalgebra, columns

  RVec bracket(const RVec& x, const RVec& y) const;
  CVec bracket(const CVec& x, const CVec& y) const;  // complexified
  RMat ad_matrix(const RVec& x) const;
  RMat ad_matrix(int i) const;
  Rational killing_form(const RVec& x, const RVec& y) const {
    return (x.transpose() * killing * y)(0, 0);
  }
  RVec basis_vector(int i) const;

  /// Exact antisymmetry + Jacobi validation; throws std::invalid_argument.
  void validate() const;

  static LieAlgebraData from_structure_constants(
      int dim, const std::vector<std::tuple<int, int, int, Rational>>& entries);
};

/// The real form as a structure-constant algebra over the basis
/// (i h_1..i h_r, then u_alpha, v_alpha per positive root).
LieAlgebraData realify_real_form(const RealFormData& rf);

/// A complex semisimple algebra viewed as a real algebra on the basis
/// (x_1..x_n, i x_1..i x_n).
LieAlgebraData realify_complex_algebra(const BasisData& bd);

/// Span of all brackets [g, g] as columns.
RMat derived_subalgebra(const LieAlgebraData& la);

/// Largest ideal of g contained in the column span of sub.
RMat largest_ideal_inside(const LieAlgebraData& la, const RMat& sub);

/// Centroid: all matrices commuting with every ad_x; basis as matrices.
std::vector<RMat> centroid(const LieAlgebraData& la);

}  // namespace subkoba

#endif
