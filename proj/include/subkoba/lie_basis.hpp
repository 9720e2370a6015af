#ifndef SUBKOBA_LIE_BASIS_HPP
#define SUBKOBA_LIE_BASIS_HPP

#include <iosfwd>
#include <map>
#include <utility>
#include <vector>

#include "subkoba/root_system.hpp"

namespace subkoba {

/// Sparse exact vector in the Lie algebra basis.
using SparseVec = std::vector<std::pair<int, Rational>>;

/// Semisimple complex Lie algebra in a root-space basis.
///
/// Basis order: coroots H_1..H_r of the simple roots, then one root vector
/// e_alpha per root in the RootDatum order. Structure constants are exact;
/// built from an integral matrix realization, then symmetrically rescaled so
/// that b_alpha = B(e_alpha, e_{-alpha}) is the squarefree core of its
/// original value (b_alpha = 1 whenever a rational rescale can achieve it).
/// All downstream curvature/metric formulas are homogeneous in b_alpha.
struct BasisData {
  RootDatum roots;
  int dim = 0;

  /// bracket[i][j] = [x_i, x_j] as a sparse vector; antisymmetric, exact.
  std::vector<std::vector<SparseVec>> bracket_table;
  RMat killing;                   // B(x_i, x_j), exact
  std::vector<RVec> h_dual;       // per root: h_alpha with B(h_alpha, .) = alpha(.), Cartan coords
  std::vector<Rational> b_norm;   // per root: b_alpha = B(e_alpha, e_{-alpha})

  int rank() const { return roots.rank(); }
  int root_vector_index(int root_index) const { return rank() + root_index; }
  int root_of_basis_index(int basis_index) const { return basis_index - rank(); }
  bool is_cartan_index(int basis_index) const { return basis_index < rank(); }

  /// alpha(H_i) for root #root_index and simple coroot H_i.
  int root_on_simple_coroot(int root_index, int i) const {
    return roots.pair_with_simple_coroot(roots.roots[root_index].coords, i);
  }
  /// alpha evaluated on a Cartan vector given in coroot coordinates.
  Rational root_on_cartan(int root_index, const RVec& h) const;

  RVec bracket(const RVec& x, const RVec& y) const;
  CVec bracket(const CVec& x, const CVec& y) const;
  Rational killing_form(const RVec& x, const RVec& y) const { return (x.transpose() * killing * y)(0, 0); }
  RationalComplex killing_form(const CVec& x, const CVec& y) const;

  RVec basis_vector(int i) const;
  RMat ad_matrix(int i) const;
  RMat ad_matrix(const RVec& x) const;

  /// N_{alpha,beta} with [e_alpha, e_beta] = N e_{alpha+beta}; zero when
  /// alpha + beta is not a root or the bracket degenerates to the Cartan.
  Rational n_constant(int root_a, int root_b) const;
};

BasisData build_normalized_basis(const RootDatum& rd);

/// Report on the section-4.1 property-(4) sign relations between the
/// N-constants. The antisymmetry relation N_{-a,-b} = -N_{a,b} is always
/// verified exactly; the cyclic relations as displayed hold only when the
/// b_alpha involved coincide, so both the plain and the b-weighted variants
/// are checked and reported.
struct NRelationReport {
  bool antisymmetry = false;           // N_{-a,-b} = -N_{a,b} for all pairs
  bool cyclic_plain = false;           // N_{-a,-b} = N_{-b,a+b} = N_{a+b,-a}
  bool cyclic_weighted = false;        // N_{a,b} b_{a+b} = N_{b,-a-b} b_a = N_{-a-b,a} b_b
  int plain_failures = 0;
};
NRelationReport check_n_relations(const BasisData& bd);

void save_basis(std::ostream& os, const BasisData& bd);
BasisData load_basis(std::istream& is);

}  // namespace subkoba

#endif
