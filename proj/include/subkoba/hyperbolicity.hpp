#ifndef SUBKOBA_HYPERBOLICITY_HPP
#define SUBKOBA_HYPERBOLICITY_HPP

#include "subkoba/chart.hpp"
#include "subkoba/grading.hpp"
#include "subkoba/lie_algebra.hpp"
#include "subkoba/optimize.hpp"

namespace subkoba {

struct InvalidIdeal : std::runtime_error {
  explicit InvalidIdeal(const std::string& what) : std::runtime_error(what) {}
};

struct UnboundedEntry : std::runtime_error {
  explicit UnboundedEntry(const std::string& what) : std::runtime_error(what) {}
};

/// Homogeneous complex manifold datum at the Lie algebra level:
/// g = v + m with [v, m] in m, an invariant complex structure j on m
/// (extended by zero on v), and the distribution subspace g1 of m.
struct HomogeneousDatum {
  LieAlgebraData algebra;
  RMat v_basis;  // columns over the algebra basis
  RMat m_basis;
  RMat j;        // dim x dim, j m = complex structure, j v = 0
  RMat g1;       // columns, inside m

  /// Flag provenance, set by the canonical builders; enables the exact
  /// superhorizontal match in classify_homogeneous.
  struct FlagRef {
    BasisData bd;
    RealFormData rf;
    GradedDecomposition gd;
    CMat basis_in_gc;  // column i = image of algebra basis vector i in gC
  };
  std::optional<FlagRef> flag;
};

/// Canonical datum of a flag fixture: v from the level-0 block, j from the
/// holomorphic/antiholomorphic splitting, g1 the level-(+-1) block.
HomogeneousDatum canonical_datum(const RealFormData& rf, const GradedDecomposition& gd);
/// Same algebra and j, with g1 enlarged to all of m (the k1 != 0 fixture).
HomogeneousDatum full_tangent_datum(const RealFormData& rf, const GradedDecomposition& gd);
/// A complex algebra viewed as a real homogeneous datum (v = 0, j = i).
HomogeneousDatum complex_group_datum(const BasisData& bd);

struct JAxiomReport {
  bool decomposition_ok = false;   // g = v + m, [v,v] in v, [v,m] in m
  bool j_squared_ok = false;       // j^2 = -id on m, j v = 0
  bool equivariance_ok = false;    // [w, j x] = j [w, x] for w in v
  bool integrability_ok = false;   // [jx, jy] = [x,y] + j[jx,y] + j[x,jy]
  bool g1_invariant_ok = false;    // [v, g1] in g1
  std::vector<std::string> failures;
  bool all() const {
    return decomposition_ok && j_squared_ok && equivariance_ok && integrability_ok &&
           g1_invariant_ok;
  }
};

JAxiomReport validate_j_axioms(const HomogeneousDatum& hd);

struct NoComplexLineReport {
  bool passed = false;
  bool degenerate = false;  // g1 = 0: vacuous
  double min_norm = 0.0;    // min over the unit sphere of |[x, jx]|
  Eigen::VectorXd witness;  // direction achieving the minimum (coefficients over g1)
  std::string norm_kind;    // "theta-twisted Killing" or "coordinate"
};

/// Minimizes |[x, jx]| over the unit sphere of g1; Kobayashi hyperbolicity
/// forces the minimum to be positive.
NoComplexLineReport check_no_complex_line(const HomogeneousDatum& hd,
                                          const SphereOptConfig& cfg, double tol = 1e-6);

/// The section-5.1 filtration levels built from g1 and j, as a leveled
/// algebra over the complexification (suitable for the graded-law checks).
struct Section51Grading {
  LeveledAlgebra leveled;
  CMat d_space;      // {x - i j x : x in g1}, the holomorphic D-subspace
  CMat g_leq0;       // vC + generated negative filtration
  CMat g_geq0;       // conjugate side
  int depth = 0;
  bool generates = false;  // the chain exhausts a complement of vC + conj side
};

Section51Grading build_section51_grading(const HomogeneousDatum& hd);

struct ClassifyVerdict {
  bool canonical = false;
  std::string reason;  // empty when canonical; otherwise the rejection cause
  RVec witness;        // exact witness coordinates over the algebra basis
  std::vector<std::pair<std::string, bool>> checks;
  std::string effectiveness_note;
};

/// Checkable pipeline for the homogeneous classification: semisimple of
/// noncompact type, not complex, section-5.1 grading conditions, k1 = 0, and
/// the superhorizontal match.
ClassifyVerdict classify_homogeneous(const HomogeneousDatum& hd);

struct AbelianIdealReport {
  bool is_ideal = false;
  bool is_abelian = false;
  std::optional<bool> effective_ok;  // r ∩ v = 0 (when v is available)
  bool bracket_identity_ok = false;  // [g,g] ∩ r = [r,g]
  int lhs_dim = 0;
  int rhs_dim = 0;
};

/// Exact verification of the abelian-ideal lemmas; throws InvalidIdeal when
/// r is not an abelian ideal.
AbelianIdealReport validate_abelian_ideal_lemmas(const LieAlgebraData& la, const RMat& r);

struct ForstnericReport {
  bool satisfied = false;
  bool proven = false;  // constant-determinant minor found (else sampled)
  std::vector<int> minor_cols;
  double min_abs_det = 0.0;  // over the sampling grid, for the reported minor
  std::optional<Eigen::VectorXcd> zero_point;
};

/// Searches the d x d minors of the frame matrix for one invertible on the
/// chart: symbolic constant-determinant shortcut, otherwise grid sampling
/// (reported as sampled, never as proof).
ForstnericReport check_forstneric_assumption(const ChartDistribution& cd,
                                             int samples_per_axis = 5);

struct CNResult {
  double value = 0.0;
  double sup_estimate = 0.0;  // sampled sup of |(pi_4^{-1} pi_3)_{ji}| over 2^N poly-disc
  int level = 0;
};

/// C_N > 2^N + d 2^{2N} sup |(pi_4^{-1} pi_3)_{ji}| with the sup sampled on
/// the distinguished boundary (maximum principle) times a 1.01 safety factor.
CNResult compute_CN(const ChartDistribution& cd, int level, int phase_samples = 24);

}  // namespace subkoba

#endif
