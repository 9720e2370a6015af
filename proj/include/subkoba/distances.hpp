#ifndef SUBKOBA_DISTANCES_HPP
#define SUBKOBA_DISTANCES_HPP

#include <variant>

#include "subkoba/curvature.hpp"
#include "subkoba/flows.hpp"

namespace subkoba {

struct DiscEscape : std::runtime_error {
  explicit DiscEscape(const std::string& what) : std::runtime_error(what) {}
};

struct InvalidCertificate : std::runtime_error {
  explicit InvalidCertificate(const std::string& what) : std::runtime_error(what) {}
};

struct MetricDomainError : std::runtime_error {
  explicit MetricDomainError(const std::string& what) : std::runtime_error(what) {}
};

/// Poincare distance of the curvature -1 metric: d(0,r) = 2 artanh r,
/// Moebius-invariant in general.
double poincare_distance(std::complex<double> a, std::complex<double> b);

/// Horizontal disc on a chart: exact polynomial free part (first d
/// components) plus the integrated remaining components. The lift solves
/// f_rest' = M(f) f_free' with M = (Pi_1^{-1} Pi_2)^t, which keeps the pulled
/// back coframe ω_j, j > d, identically zero.
struct HorizontalDisc {
  std::vector<MPoly> components;  // n one-variable polynomials
  int rank = 0;
  double horizontality_residual = 0.0;  // sup over a boundary ring, chart max-norm

  Eigen::VectorXcd eval(std::complex<double> z) const;
  Eigen::VectorXcd derivative_at_zero() const;
};

HorizontalDisc horizontal_disc_from_free_part(const ChartDistribution& cd,
                                              const std::vector<MPoly>& free_polys,
                                              const CVec& z0);

/// One link of a chain of horizontal discs, marked parameter pair (0, b).
struct ChainLink {
  HorizontalDisc disc;
  std::complex<double> b{0.0, 0.0};
  double radius = 1.0;  // informational: time-scale used to build the disc
};

struct DiscChain {
  std::vector<ChainLink> links;
  Eigen::VectorXcd start;
  Eigen::VectorXcd endpoint;
  double value = 0.0;             // sum of d_Delta(0, b_j)
  double endpoint_error = 0.0;    // against the requested target
  double max_residual = 0.0;      // worst horizontality residual in the chain
};

/// Explicit infinite-distance outcome (no tangential connection found).
struct Unreachable {
  std::string reason;
};

struct KobayashiConfig {
  int deg = 4;              // free-part polynomial degree cap
  int max_links = 8;
  int descent_rounds = 60;  // coordinate-descent proposals per link coefficient scale
  double endpoint_tol = 1e-6;
  double max_disc_radius = 1000.0;
  uint64_t seed = 0;
  ChowConfig chow;
};

using KobayashiOutcome = std::variant<DiscChain, Unreachable>;

/// Upper estimator for the Kobayashi pseudo-distance of (chart, D):
/// seeds a chain from a connecting flow word (every frame flow is a
/// horizontal disc family), then coordinate descent over free-part
/// coefficients and parameters.
KobayashiOutcome kobayashi_upper(const ChartDistribution& cd, const Eigen::VectorXcd& x,
                                 const Eigen::VectorXcd& y, const KobayashiConfig& cfg);

struct InfinitesimalEstimate {
  double value = 0.0;   // upper bound for k_{M,D}(v), curvature -1 normalization
  double lambda = 0.0;  // minimal scaling found
  HorizontalDisc disc;
};

using InfinitesimalOutcome = std::variant<InfinitesimalEstimate, Unreachable>;

/// Upper estimator for the Kobayashi-Royden infinitesimal metric at v in D_x.
InfinitesimalOutcome infinitesimal_metric_upper(const ChartDistribution& cd,
                                                const Eigen::VectorXcd& x,
                                                const Eigen::VectorXcd& v,
                                                const KobayashiConfig& cfg);

/// Hermitian metric on D expressed on frame coefficients.
struct MetricOnD {
  enum class Kind { FrameEuclidean, PoincareDisc };
  Kind kind = Kind::FrameEuclidean;
  double curvature = -1.0;  // PoincareDisc only; must be negative

  /// Length density of a control u at the point z.
  double density(const Eigen::VectorXcd& u, const Eigen::VectorXcd& z, int rank) const;
};

struct CCConfig {
  int segments = 64;
  int substeps = 6;
  int polish_iters = 25;
  double endpoint_tol = 1e-6;
  uint64_t seed = 0;
  ChowConfig chow;
};

struct HorizontalPath {
  Eigen::MatrixXcd controls;  // rank x segments, piecewise-constant coefficients
  Eigen::VectorXcd start;
  Eigen::VectorXcd endpoint;
  double endpoint_error = 0.0;
  double length = 0.0;
};

using CCOutcome = std::variant<HorizontalPath, Unreachable>;

/// Upper estimator for the Carnot-Caratheodory distance under the supplied
/// metric on D: flow-word seeded controls polished by projected gradient
/// with an endpoint penalty.
CCOutcome cc_distance_upper(const ChartDistribution& cd, const MetricOnD& metric,
                            const Eigen::VectorXcd& x, const Eigen::VectorXcd& y,
                            const CCConfig& cfg);

/// Replays a control path; returns (endpoint, length).
std::pair<Eigen::VectorXcd, double> replay_controls(const ChartDistribution& cd,
                                                    const MetricOnD& metric,
                                                    const Eigen::MatrixXcd& controls,
                                                    const Eigen::VectorXcd& x, int substeps);

struct SchwarzBound {
  double value = 0.0;
  bool heuristic = false;  // set when rho was only a numerical upper estimate
};

/// sqrt(c) * rho as a lower bound for d_{M,D}; rho must be an exact or
/// derived value of the CC distance for a certified bound, otherwise the
/// result is labeled heuristic.
SchwarzBound schwarz_lower_bound(double certificate_c, double rho, bool rho_exact);
SchwarzBound schwarz_lower_bound(const CurvatureCertificate& cert, double rho, bool rho_exact);

}  // namespace subkoba

#endif
