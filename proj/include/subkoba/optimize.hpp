#ifndef SUBKOBA_OPTIMIZE_HPP
#define SUBKOBA_OPTIMIZE_HPP

#include <Eigen/Dense>
#include <cstdint>
#include <functional>
#include <vector>

namespace subkoba {

/// Thread cap for embarrassingly parallel work; reads SUBKOBA_THREADS.
int thread_cap();

struct SphereOptConfig {
  int restarts = 32;
  int max_iter = 5000;
  double tol = 1e-10;
  uint64_t seed = 0;
};

struct SphereOptResult {
  Eigen::VectorXd argmax;
  double value = 0.0;
  std::vector<double> restart_values;  // best value per restart, in restart order
  double spread = 0.0;                 // max - min over restart values
  int iterations = 0;                  // total across restarts
};

/// Multi-start projected gradient ascent of f over the ellipsoid
/// { x : x^T G x = 1 } with G positive definite. Deterministic given the
/// seed: restarts are seeded independently and reduced by value with a
/// lexicographic tie-break on the argmax, so any parallel schedule yields
/// the same result.
SphereOptResult maximize_on_ellipsoid(
    const Eigen::MatrixXd& gram,
    const std::function<double(const Eigen::VectorXd&)>& f,
    const std::function<Eigen::VectorXd(const Eigen::VectorXd&)>& grad,
    const SphereOptConfig& cfg);

inline SphereOptResult minimize_on_ellipsoid(
    const Eigen::MatrixXd& gram,
    const std::function<double(const Eigen::VectorXd&)>& f,
    const std::function<Eigen::VectorXd(const Eigen::VectorXd&)>& grad,
    const SphereOptConfig& cfg) {
  auto nf = [&f](const Eigen::VectorXd& x) { return -f(x); };
  auto ng = [&grad](const Eigen::VectorXd& x) { return Eigen::VectorXd(-grad(x)); };
  SphereOptResult r = maximize_on_ellipsoid(gram, nf, ng, cfg);
  r.value = -r.value;
  for (double& v : r.restart_values) v = -v;
  return r;
}

}  // namespace subkoba

#endif
