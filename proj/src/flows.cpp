#include "subkoba/flows.hpp"

#include <Eigen/Dense>

namespace subkoba {

namespace {

Eigen::VectorXcd rk4_step(const NumericField& x, std::complex<double> c,
                          const Eigen::VectorXcd& z, double h) {
  Eigen::VectorXcd k1 = c * x.eval(z);
  Eigen::VectorXcd k2 = c * x.eval(z + 0.5 * h * k1);
  Eigen::VectorXcd k3 = c * x.eval(z + 0.5 * h * k2);
  Eigen::VectorXcd k4 = c * x.eval(z + h * k3);
  return z + (h / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
}

double max_norm(const Eigen::VectorXcd& z) {
  double m = 0.0;
  for (int i = 0; i < z.size(); ++i) m = std::max(m, std::abs(z[i]));
  return m;
}

}  // namespace

Eigen::VectorXcd integrate_scaled_flow(const NumericField& x, std::complex<double> c,
                                       const Eigen::VectorXcd& z0, double duration,
                                       const StepConfig& cfg, double escape_radius) {
  if (duration == 0.0 || c == std::complex<double>(0.0, 0.0)) return z0;
  Eigen::VectorXcd z = z0;
  double t = 0.0;
  double h = std::min(cfg.h_init, duration);
  while (t < duration) {
    h = std::min(h, duration - t);
    // step doubling: one full step vs two halves, fifth-order error estimate
    Eigen::VectorXcd full = rk4_step(x, c, z, h);
    Eigen::VectorXcd half = rk4_step(x, c, rk4_step(x, c, z, h / 2.0), h / 2.0);
    double err = max_norm(full - half) / 15.0;
    double scale = std::max(1.0, max_norm(z));
    if (err <= cfg.tol * scale || h <= cfg.h_min) {
      z = half + (half - full) / 15.0;
      t += h;
      if (max_norm(z) > escape_radius)
        throw FlowEscape("flow escaped the chart (radius " + std::to_string(escape_radius) + ")");
      double grow = err > 0 ? 0.9 * std::pow(cfg.tol * scale / err, 0.2) : 2.0;
      h *= std::min(2.0, std::max(0.2, grow));
    } else {
      h *= std::max(0.2, 0.9 * std::pow(cfg.tol * scale / err, 0.2));
      if (h < cfg.h_min) h = cfg.h_min;
    }
  }
  return z;
}

Eigen::VectorXcd integrate_complex_flow(const ChartDistribution& cd, const PolyField& x,
                                        const Eigen::VectorXcd& z0, std::complex<double> t,
                                        const StepConfig& cfg) {
  double escape = cfg.escape_radius > 0 ? cfg.escape_radius : cd.escape_radius();
  NumericField nf(x);
  // phi_X(Re t) . phi_{iX}(Im t): imaginary leg first
  Eigen::VectorXcd z = z0;
  if (t.imag() != 0.0)
    z = integrate_scaled_flow(nf, std::complex<double>(0.0, t.imag() >= 0 ? 1.0 : -1.0), z,
                              std::abs(t.imag()), cfg, escape);
  if (t.real() != 0.0)
    z = integrate_scaled_flow(nf, std::complex<double>(t.real() >= 0 ? 1.0 : -1.0, 0.0), z,
                              std::abs(t.real()), cfg, escape);
  return z;
}

int FlowWord::primitive_stage_count() const {
  int n = 0;
  for (const auto& s : stages) n += s.generator.is_leaf() ? 1 : 0;
  return n;
}

namespace {

// Leading displacement of the nested commutator expansion of word w with
// parameter s is sign(w) * s^L * X_w, where L is the leaf count and the sign
// follows the flow-commutator recursion sign([u,v]) = -sign(u) sign(v).
int expansion_sign(const BracketWordExpr& w) {
  if (w.is_leaf()) return 1;
  return -expansion_sign(w.children[0]) * expansion_sign(w.children[1]);
}

// exact group inverse of a primitive stage list: reverse order, negate times
std::vector<FlowStage> invert_stages(const std::vector<FlowStage>& stages) {
  std::vector<FlowStage> out(stages.rbegin(), stages.rend());
  for (auto& s : out) s.time = -s.time;
  return out;
}

// true group commutator A B A^{-1} B^{-1}; negating the parameter of an
// even-order sub-word would NOT invert it, so inverses are taken exactly
std::vector<FlowStage> expand_word(const BracketWordExpr& w, std::complex<double> s) {
  if (w.is_leaf()) return {{w, s}};
  std::vector<FlowStage> a = expand_word(w.children[0], s);
  std::vector<FlowStage> b = expand_word(w.children[1], s);
  std::vector<FlowStage> out = a;
  out.insert(out.end(), b.begin(), b.end());
  std::vector<FlowStage> ia = invert_stages(a);
  std::vector<FlowStage> ib = invert_stages(b);
  out.insert(out.end(), ia.begin(), ia.end());
  out.insert(out.end(), ib.begin(), ib.end());
  return out;
}

}  // namespace

std::vector<FlowStage> expand_stage(const FlowStage& stage) {
  std::vector<FlowStage> out;
  if (stage.generator.is_leaf()) {
    out.push_back(stage);
    return out;
  }
  if (stage.time == std::complex<double>(0.0, 0.0)) return out;
  int leaves = stage.generator.leaf_count();
  std::complex<double> target =
      stage.time * static_cast<double>(expansion_sign(stage.generator));
  double mag = std::pow(std::abs(target), 1.0 / leaves);
  double phase = std::arg(target) / leaves;
  std::complex<double> s = std::polar(mag, phase);
  return expand_word(stage.generator, s);
}

Eigen::VectorXcd compose_flows(const ChartDistribution& cd, const std::vector<FlowStage>& stages,
                               const Eigen::VectorXcd& base, const StepConfig& cfg) {
  std::vector<FlowStage> primitive;
  for (const auto& s : stages) {
    auto ex = expand_stage(s);
    primitive.insert(primitive.end(), ex.begin(), ex.end());
  }
  Eigen::VectorXcd z = base;
  // composition order: the last stage acts first
  for (int k = static_cast<int>(primitive.size()) - 1; k >= 0; --k) {
    const FlowStage& s = primitive[k];
    try {
      z = integrate_complex_flow(cd, cd.frame.at(s.generator.leaf), z, s.time, cfg);
    } catch (const FlowEscape& e) {
      throw FlowEscape(e.what(), k);
    }
  }
  return z;
}

namespace {

// F(t_1..t_m) = phi_1(t_1) ... phi_m(t_m) base over the completed frame.
Eigen::VectorXcd flow_map(const ChartDistribution& cd, const Eigen::VectorXcd& base,
                          const Eigen::VectorXcd& t, const StepConfig& cfg) {
  Eigen::VectorXcd z = base;
  for (int i = static_cast<int>(t.size()) - 1; i >= 0; --i)
    z = integrate_complex_flow(cd, cd.field(i), z, t[i], cfg);
  return z;
}

Eigen::MatrixXcd flow_map_jacobian(const ChartDistribution& cd, const Eigen::VectorXcd& base,
                                   const Eigen::VectorXcd& t, const StepConfig& cfg,
                                   double fd_step) {
  int m = static_cast<int>(t.size());
  Eigen::MatrixXcd j(cd.ambient, m);
  for (int k = 0; k < m; ++k) {
    Eigen::VectorXcd tp = t, tm = t;
    tp[k] += fd_step;
    tm[k] -= fd_step;
    j.col(k) = (flow_map(cd, base, tp, cfg) - flow_map(cd, base, tm, cfg)) / (2.0 * fd_step);
  }
  return j;
}

}  // namespace

Eigen::MatrixXcd jacobian_at_zero(const ChartDistribution& cd, const Eigen::VectorXcd& base,
                                  const StepConfig& cfg, double fd_step) {
  if (cd.full_size() < cd.ambient)
    throw DegenerateFrame("completed frame smaller than the ambient dimension");
  StepConfig tight = cfg;
  tight.tol = std::min(cfg.tol, 1e-12);
  Eigen::VectorXcd t0 = Eigen::VectorXcd::Zero(cd.ambient);
  Eigen::MatrixXcd j = flow_map_jacobian(cd, base, t0, tight, fd_step);
  Eigen::JacobiSVD<Eigen::MatrixXcd> svd(j);
  double smin = svd.singularValues()[svd.singularValues().size() - 1];
  if (smin < 1e-6)
    throw DegenerateFrame("flow-map differential is singular at the base point");
  return j;
}

FlowWord chow_connect(const ChartDistribution& cd, const Eigen::VectorXcd& x,
                      const Eigen::VectorXcd& y, const ChowConfig& cfg) {
  StepConfig step = cfg.step;
  if (step.escape_radius <= 0) step.escape_radius = cd.escape_radius();

  int m = std::min(cd.full_size(), cd.ambient);
  bool generating = chart_bracket_generation(cd, x).generating && cd.full_size() >= cd.ambient;

  // application-order stage list (first applied first); reversed at the end
  std::vector<FlowStage> applied;
  Eigen::VectorXcd cur = x;

  auto word_of = [&](int field_index) {
    return field_index < cd.rank ? BracketWordExpr::make_leaf(field_index)
                                 : cd.completion_words[field_index - cd.rank];
  };

  auto replay_append = [&](const Eigen::VectorXcd& t) {
    // append stages for the solved times, innermost (largest index) first
    for (int i = m - 1; i >= 0; --i) {
      if (std::abs(t[i]) < 1e-16) continue;
      std::vector<FlowStage> comp{{word_of(i), t[i]}};
      // replay through horizontal expansion only
      cur = compose_flows(cd, comp, cur, step);
      applied.push_back(comp[0]);
    }
  };

  auto newton_to = [&](const Eigen::VectorXcd& from, const Eigen::VectorXcd& target,
                       double tol) -> std::optional<Eigen::VectorXcd> {
    Eigen::VectorXcd t = Eigen::VectorXcd::Zero(m);
    for (int it = 0; it < cfg.newton_iters; ++it) {
      Eigen::VectorXcd fval = flow_map(cd, from, t, step);
      Eigen::VectorXcd resid = target - fval;
      if (max_norm(resid) <= tol) return t;
      Eigen::MatrixXcd j = flow_map_jacobian(cd, from, t, step, 5e-4);
      Eigen::VectorXcd delta = j.colPivHouseholderQr().solve(resid);
      if (!delta.allFinite()) return std::nullopt;
      // damping against leaving the Newton basin
      double dn = max_norm(delta);
      if (dn > 1.0) delta *= 1.0 / dn;
      t += delta;
    }
    Eigen::VectorXcd fval = flow_map(cd, from, t, step);
    if (max_norm(target - fval) <= tol) return t;
    return std::nullopt;
  };

  int waypoints = 1;
  while (waypoints <= cfg.max_waypoints) {
    applied.clear();
    cur = x;
    bool ok = true;
    for (int w = 1; w <= waypoints && ok; ++w) {
      Eigen::VectorXcd target = x + (y - x) * (static_cast<double>(w) / waypoints);
      // solve on the ideal flow map, then fix the horizontal-replay defect
      int refine = 0;
      while (max_norm(cur - target) > cfg.endpoint_tol) {
        auto t = newton_to(cur, target, cfg.endpoint_tol * 0.25);
        if (!t) {
          ok = false;
          break;
        }
        Eigen::VectorXcd before = cur;
        replay_append(*t);
        if (++refine > cfg.refine_iters) {
          ok = false;
          break;
        }
        // guard against a non-contracting correction loop
        if (max_norm(cur - target) >= max_norm(before - target) && refine > 4) {
          ok = false;
          break;
        }
      }
    }
    if (ok && max_norm(cur - y) <= cfg.endpoint_tol) {
      FlowWord word;
      word.base = x;
      word.stages.assign(applied.rbegin(), applied.rend());  // composition order
      word.endpoint = cur;
      word.endpoint_error = max_norm(cur - y);
      return word;
    }
    waypoints *= 2;
  }
  throw NoConnection(generating
                         ? "Newton refinement did not reach the target within the waypoint cap"
                         : "frame is not bracket generating and the target was not reachable");
}

}  // namespace subkoba
