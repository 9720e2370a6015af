#ifndef SUBKOBA_GRADING_HPP
#define SUBKOBA_GRADING_HPP

#include <functional>
#include <map>

#include "subkoba/real_form.hpp"

namespace subkoba {

struct InvalidGradingElement : std::runtime_error {
  explicit InvalidGradingElement(const std::string& what) : std::runtime_error(what) {}
};

/// Eigenspace decomposition of gC under ad of a grading element T.
struct GradedDecomposition {
  BasisData bd;
  RVec grading_element;            // Cartan coordinates over the simple coroots
  std::vector<int> v_simple;       // simple roots inside v (empty = torus)
  int depth = 0;                   // largest level k
  std::vector<int> level_of_root;  // per root index
  std::map<int, std::vector<int>> level_members;  // level -> basis indices

  /// Set when built from a RealFormData: even levels in kC, odd in qC.
  bool parity_consistent = false;
  bool has_real_form = false;

  int dim_level(int l) const;
  CMat level_basis(int l) const;  // columns over the gC basis
  CMat g_minus() const;           // all negative levels
  std::vector<int> roots_at_level(int l) const;
};

/// T dual to the simple roots outside v: alpha_i(T) = 1 for alpha_i not in v,
/// alpha_i(T) = 0 inside v. Returned in simple-coroot coordinates.
RVec grading_element(const RootDatum& rd, const std::vector<int>& v_simple);

GradedDecomposition grade(const BasisData& bd, const RVec& cartan_T);
GradedDecomposition grade(const BasisData& bd, const RVec& cartan_T, const RealFormData& rf);
/// Canonical flag grading for v given by a subset of simple roots.
GradedDecomposition grade_canonical(const RealFormData& rf, const std::vector<int>& v_simple);

/// Level -1 subspace basis.
CMat superhorizontal(const GradedDecomposition& gd);

struct BracketWord {
  std::string text;   // e.g. "[s1,[s0,s1]]"
  int level = 0;      // level of the produced vector (0 when mixed/unknown)
};

struct GenerationReport {
  bool generating = false;
  int depth = 0;  // smallest s with sub + [sub,sub] + ... (s-fold) = g^-
  CMat stabilized;
  std::vector<BracketWord> certificate;  // words whose vectors span the result
};

/// Iterated-bracket span of sub inside g^-; pre: sub contained in g^-.
GenerationReport check_bracket_generating(const CMat& sub, const GradedDecomposition& gd);

/// Generic leveled algebra for the graded-bracket law checks; also fits the
/// section-5.1 filtrations that are not honest gradings.
struct LeveledAlgebra {
  int ambient_dim = 0;
  std::function<CVec(const CVec&, const CVec&)> bracket;
  std::map<int, CMat> level_subspaces;
};

LeveledAlgebra as_leveled_algebra(const GradedDecomposition& gd);

struct GradedLawViolation {
  int i = 0;
  int l = 0;
  std::string law;
};

struct GradedLawReport {
  bool laws_hold = false;       // the three bracket laws
  bool strictly_graded = false; // the stronger law [g_i,g_j] in g_{i+j}
  std::vector<GradedLawViolation> violations;
};

GradedLawReport validate_graded_brackets(const LeveledAlgebra& la);

/// Open-question check: the level(-1) subspace is the unique v-invariant
/// subspace of qC within g^- of its dimension that bracket-generates g^-.
/// Requires a parity-consistent grading.
struct UniquenessReport {
  int candidates_tested = 0;
  int generating_candidates = 0;
  bool unique = false;
};
UniquenessReport check_superhorizontal_uniqueness(const GradedDecomposition& gd,
                                                  const RealFormData& rf);

}  // namespace subkoba

#endif
