#ifndef SUBKOBA_CURVATURE_HPP
#define SUBKOBA_CURVATURE_HPP

#include "subkoba/grading.hpp"
#include "subkoba/optimize.hpp"

namespace subkoba {

struct DomainError : std::runtime_error {
  explicit DomainError(const std::string& what) : std::runtime_error(what) {}
};

/// Raised when the negative-curvature certification fails: compact fixture,
/// indefinite metric, or a direction with H >= -tol.
struct NotNegative : std::runtime_error {
  explicit NotNegative(const std::string& what, Eigen::VectorXcd w)
      : std::runtime_error(what), witness(std::move(w)) {}
  Eigen::VectorXcd witness;
};

/// g(zeta, xi) = B(zeta, sigma(xi)) on the superhorizontal subspace.
RationalComplex invariant_metric(const RealFormData& rf, const GradedDecomposition& gd,
                                 const CVec& zeta, const CVec& xi);

/// H(zeta) = -B([zeta,sigma zeta],[zeta,sigma zeta]) / g(zeta,zeta)^2, exact.
Rational sectional_curvature(const RealFormData& rf, const GradedDecomposition& gd,
                             const CVec& zeta);

/// Bisec(zeta,xi) = -B([zeta,sigma zeta],[xi,sigma xi]) / (g(zeta,zeta) g(xi,xi)).
Rational bisectional_curvature(const RealFormData& rf, const GradedDecomposition& gd,
                               const CVec& zeta, const CVec& xi);

/// Chern curvature components: one ad-operator per root pair, the minus-sign
/// sum over noncompact positive pairs and the plus-sign sum over compact
/// positive pairs outside v, each projected to vC and restricted to g^-.
struct CurvatureTensor {
  struct Entry {
    int root_a = 0;  // positive root indices
    int root_b = 0;
    int sign = 0;    // -1 first sum, +1 second sum
    CMat op;         // action on the g^- member basis
  };
  std::vector<Entry> entries;
  std::vector<int> g_minus_members;  // basis indices spanned by the op rows/cols
};

CurvatureTensor curvature_tensor(const RealFormData& rf, const GradedDecomposition& gd);

/// Contraction of the tensor against (zeta, conj zeta, xi, conj xi); equals
/// bisectional_curvature on the superhorizontal subspace, exactly.
Rational tensor_bisectional(const CurvatureTensor& tensor, const RealFormData& rf,
                            const GradedDecomposition& gd, const CVec& zeta, const CVec& xi);

/// Fast float evaluation of H and its gradient over the real chart
/// R^{2d} -> g_{-1}, x -> sum (x_j + i x_{d+j}) e_{-a_j}.
class CurvatureEvaluator {
public:
  CurvatureEvaluator(const RealFormData& rf, const GradedDecomposition& gd);

  int complex_dim() const { return d_; }
  const std::vector<int>& level1_roots() const { return roots_; }

  double value(const Eigen::VectorXd& x) const;
  Eigen::VectorXd gradient(const Eigen::VectorXd& x) const;
  Eigen::MatrixXd metric_gram_real() const;  // of g restricted to g_{-1}, 2d x 2d
  Eigen::VectorXcd to_complex(const Eigen::VectorXd& x) const;
  CVec to_exact(const Eigen::VectorXd& x, int dyadic_bits = 12) const;
  CVec embed(const CVec& coeffs) const;  // coefficient vector -> gC coordinates

private:
  int d_ = 0;
  int dim_ = 0;
  std::vector<int> roots_;                 // positive level-1 roots
  std::vector<int> neg_basis_index_;       // basis index of e_{-a_j}
  std::vector<double> eps_b_;              // eps_a * b_a per root
  std::vector<Eigen::VectorXcd> pair_w_;   // [e_{-a_j}, eps_k e_{a_k}], d*d vectors
  Eigen::MatrixXd killing_;
};

struct CurvatureCertificate {
  double c = 0.0;                  // the negative upper bound: H <= -c
  std::string frame = "superhorizontal";  // frame the bound was certified over
  Eigen::VectorXcd argmax;         // unit direction achieving -c
  int restarts = 0;
  double tol = 0.0;
  uint64_t seed = 0;
  double spread = 0.0;             // optimizer value spread across restarts
  std::vector<double> restart_values;
  CVec exact_point;                // rational rounding of the argmax, gC coords
  Rational exact_value;            // H at the rational point, exact
};

/// Maximizes H over the unit sphere of g_{-1} and certifies the bound.
/// Throws NotNegative when the metric is not positive definite on g_{-1}
/// (compact fixtures) or the optimum is >= -tol.
CurvatureCertificate certify_negative_bound(const RealFormData& rf,
                                            const GradedDecomposition& gd,
                                            const SphereOptConfig& cfg);

}  // namespace subkoba

#endif
