#include "subkoba/optimize.hpp"

#include <algorithm>
#include <cstdlib>
#include <future>
#include <random>
#include <thread>

namespace subkoba {

int thread_cap() {
  if (const char* env = std::getenv("SUBKOBA_THREADS")) {
    int n = std::atoi(env);
    if (n >= 1) return n;
  }
  unsigned hw = std::thread::hardware_concurrency();
  return static_cast<int>(std::min<unsigned>(hw == 0 ? 1 : hw, 8));
}

namespace {

struct RestartOutcome {
  Eigen::VectorXd argmax;
  double value = -1e300;
  int iterations = 0;
};

RestartOutcome run_restart(const Eigen::MatrixXd& gram,
                           const std::function<double(const Eigen::VectorXd&)>& f,
                           const std::function<Eigen::VectorXd(const Eigen::VectorXd&)>& grad,
                           const SphereOptConfig& cfg, int restart) {
  const int n = static_cast<int>(gram.rows());
  std::mt19937_64 rng(cfg.seed * 0x9e3779b97f4a7c15ull + 0x5851f42d4c957f2dull * (restart + 1));
  std::normal_distribution<double> gauss(0.0, 1.0);
  Eigen::VectorXd x(n);
  for (int i = 0; i < n; ++i) x[i] = gauss(rng);
  auto retract = [&](const Eigen::VectorXd& y) {
    double q = y.dot(gram * y);
    return Eigen::VectorXd(y / std::sqrt(q));
  };
  x = retract(x);

  RestartOutcome out;
  double fx = f(x);
  int it = 0;
  for (; it < cfg.max_iter; ++it) {
    Eigen::VectorXd g = grad(x);
    Eigen::VectorXd normal = gram * x;
    Eigen::VectorXd v = g - (g.dot(normal) / normal.squaredNorm()) * normal;
    double vn = v.norm();
    if (vn < 1e-14 * std::max(1.0, std::abs(fx))) break;
    double eta = 1.0;
    bool moved = false;
    for (int bt = 0; bt < 60; ++bt) {
      Eigen::VectorXd cand = retract(x + eta * v);
      double fc = f(cand);
      if (fc > fx + 1e-4 * eta * vn * vn) {
        x = cand;
        fx = fc;
        moved = true;
        break;
      }
      eta *= 0.5;
    }
    if (!moved) break;
  }
  out.argmax = x;
  out.value = fx;
  out.iterations = it;
  return out;
}

bool lex_less(const Eigen::VectorXd& a, const Eigen::VectorXd& b) {
  for (int i = 0; i < a.size(); ++i)
    if (a[i] != b[i]) return a[i] < b[i];
  return false;
}

}  // namespace

SphereOptResult maximize_on_ellipsoid(
    const Eigen::MatrixXd& gram,
    const std::function<double(const Eigen::VectorXd&)>& f,
    const std::function<Eigen::VectorXd(const Eigen::VectorXd&)>& grad,
    const SphereOptConfig& cfg) {
  std::vector<RestartOutcome> outcomes(cfg.restarts);
  int threads = std::min(thread_cap(), cfg.restarts);
  if (threads <= 1) {
    for (int r = 0; r < cfg.restarts; ++r) outcomes[r] = run_restart(gram, f, grad, cfg, r);
  } else {
    std::vector<std::future<void>> futs;
    std::atomic<int> next{0};
    for (int t = 0; t < threads; ++t) {
      futs.push_back(std::async(std::launch::async, [&]() {
        for (;;) {
          int r = next.fetch_add(1);
          if (r >= cfg.restarts) return;
          outcomes[r] = run_restart(gram, f, grad, cfg, r);
        }
      }));
    }
    for (auto& fu : futs) fu.get();
  }

  SphereOptResult res;
  res.restart_values.reserve(cfg.restarts);
  double lo = 1e300, hi = -1e300;
  for (const auto& o : outcomes) {
    res.restart_values.push_back(o.value);
    res.iterations += o.iterations;
    lo = std::min(lo, o.value);
    hi = std::max(hi, o.value);
  }
  res.spread = cfg.restarts > 0 ? hi - lo : 0.0;
  const RestartOutcome* best = nullptr;
  for (const auto& o : outcomes) {
    if (!best || o.value > best->value ||
        (o.value == best->value && lex_less(o.argmax, best->argmax)))
      best = &o;
  }
  if (best) {
    res.argmax = best->argmax;
    res.value = best->value;
  }
  return res;
}

}  // namespace subkoba
