#ifndef SUBKOBA_FLOWS_HPP
#define SUBKOBA_FLOWS_HPP

#include "subkoba/chart.hpp"

namespace subkoba {

struct FlowEscape : std::runtime_error {
  explicit FlowEscape(const std::string& what, int stage_index = -1)
      : std::runtime_error(what), stage(stage_index) {}
  int stage;
};

struct DegenerateFrame : std::runtime_error {
  explicit DegenerateFrame(const std::string& what) : std::runtime_error(what) {}
};

struct NoConnection : std::runtime_error {
  explicit NoConnection(const std::string& what) : std::runtime_error(what) {}
};

struct StepConfig {
  double tol = 1e-10;          // local error per step
  double escape_radius = 0.0;  // 0: derive from the chart
  double h_init = 0.05;
  double h_min = 1e-13;
};

/// Real-time flow of the field c*X from z0 over [0, duration].
Eigen::VectorXcd integrate_scaled_flow(const NumericField& x, std::complex<double> c,
                                       const Eigen::VectorXcd& z0, double duration,
                                       const StepConfig& cfg, double escape_radius);

/// Complex flow Phi_X(t) = phi_X(Re t) . phi_{iX}(Im t) applied to z0.
Eigen::VectorXcd integrate_complex_flow(const ChartDistribution& cd, const PolyField& x,
                                        const Eigen::VectorXcd& z0, std::complex<double> t,
                                        const StepConfig& cfg);

/// One stage of a flow word: a generator (frame index or bracket word) with a
/// complex time.
struct FlowStage {
  BracketWordExpr generator;
  std::complex<double> time{0.0, 0.0};
};

/// A composition of complex flows. Stages are listed in composition order:
/// stages[0] is the outermost map, so replay applies the last stage first
/// (the map is phi_{w_1}(t_1) . phi_{w_2}(t_2) ... applied to the base).
struct FlowWord {
  std::vector<FlowStage> stages;
  Eigen::VectorXcd base;
  Eigen::VectorXcd endpoint;
  double endpoint_error = 0.0;  // chart max-norm against the requested target

  int primitive_stage_count() const;
};

/// Expansion of a bracket-word stage into frame-only stages (composition
/// order). Nested commutators scale the parameter as |t|^{1/L} with the
/// phase split evenly, L = leaf count of the word.
std::vector<FlowStage> expand_stage(const FlowStage& stage);

/// Replays a stage list (composition order) through frame-only flows.
Eigen::VectorXcd compose_flows(const ChartDistribution& cd, const std::vector<FlowStage>& stages,
                               const Eigen::VectorXcd& base, const StepConfig& cfg);
inline Eigen::VectorXcd compose_flows(const ChartDistribution& cd, const FlowWord& word,
                                      const Eigen::VectorXcd& base, const StepConfig& cfg) {
  return compose_flows(cd, word.stages, base, cfg);
}

/// dF at t = 0 for F(t_1..t_n) = phi_1(t_1) ... phi_n(t_n) base over the
/// completed frame; must be the identity within fd tolerance. Throws
/// DegenerateFrame when the differential is singular.
Eigen::MatrixXcd jacobian_at_zero(const ChartDistribution& cd, const Eigen::VectorXcd& base,
                                  const StepConfig& cfg, double fd_step = 5e-4);

struct ChowConfig {
  double endpoint_tol = 1e-8;
  int max_waypoints = 1024;
  int newton_iters = 30;
  int refine_iters = 80;
  StepConfig step;
};

/// Connects x to y by a horizontal flow word: Newton inversion of the flow
/// composition map on waypoints, then iterative correction of the commutator
/// expansion defect until the replayed endpoint meets the tolerance.
FlowWord chow_connect(const ChartDistribution& cd, const Eigen::VectorXcd& x,
                      const Eigen::VectorXcd& y, const ChowConfig& cfg);

}  // namespace subkoba

#endif
