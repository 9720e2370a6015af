#ifndef SUBKOBA_REAL_FORM_HPP
#define SUBKOBA_REAL_FORM_HPP

#include "subkoba/lie_basis.hpp"

namespace subkoba {

struct InvalidRealForm : std::runtime_error {
  explicit InvalidRealForm(const std::string& what) : std::runtime_error(what) {}
};

/// Real form of a complex semisimple algebra, cut out by an antilinear
/// conjugation sigma with sigma(e_alpha) = eps_alpha e_{-alpha}.
///
/// eps is stored per root with eps_{-alpha} = eps_alpha; compact roots carry
/// -1, noncompact +1. theta = sigma_u . sigma is the Cartan involution.
struct RealFormData {
  BasisData bd;
  std::vector<int> eps;  // per root index, +-1

  /// Real basis of g inside gC: i*h_j for each Cartan generator, then
  /// u_alpha = e_alpha + eps e_{-alpha} and v_alpha = i(e_alpha - eps e_{-alpha})
  /// per positive root. Columns over the gC basis.
  CMat g_basis;
  CMat k_basis;  // theta = +1 block
  CMat q_basis;  // theta = -1 block
  CMat t_basis;  // torus: i*h_j
  CMat v_basis;  // isotropy; the torus unless a fixture enlarges it
  RMat gram_k;   // exact Killing Gram on k_basis (negative definite)
  RMat gram_q;   // exact Killing Gram on q_basis (positive definite)

  int eps_of(int root_index) const { return eps[root_index]; }
  bool is_compact_root(int root_index) const { return eps[root_index] == -1; }

  /// sigma applied to a vector in gC coordinates (antilinear).
  CVec sigma(const CVec& x) const;
  /// theta (complex-linear involution) applied in gC coordinates.
  CVec theta(const CVec& x) const;
  /// theta as an exact matrix over the gC basis (it is diagonal).
  RMat theta_matrix() const;

  /// Hermitian pairing g(x, y) = B(x, sigma(y)).
  RationalComplex metric(const CVec& x, const CVec& y) const;
};

/// eps values listed per positive root, in RootDatum order of the positive
/// indices. Validates that sigma is an involutive antilinear automorphism and
/// that B has the correct sign on k and q; throws InvalidRealForm otherwise.
RealFormData apply_real_form(const BasisData& bd, const std::vector<int>& eps_positive);

/// Parity labeling of the canonical flag fixture: eps_alpha = +1 iff the
/// level of alpha under the grading element of v_simple is odd.
std::vector<int> parity_epsilon(const BasisData& bd, const std::vector<int>& v_simple);
/// Compact form: every root compact.
std::vector<int> compact_epsilon(const BasisData& bd);

void save_real_form(std::ostream& os, const RealFormData& rf);
RealFormData load_real_form(std::istream& is);

}  // namespace subkoba

#endif
