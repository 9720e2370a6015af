#include "subkoba/distances.hpp"

#include <random>


namespace subkoba {

double poincare_distance(std::complex<double> a, std::complex<double> b) {
  if (std::abs(a) >= 1.0 || std::abs(b) >= 1.0)
    throw DomainError("poincare_distance: point outside the open unit disc");
  std::complex<double> m = (a - b) / (1.0 - std::conj(a) * b);
  double r = std::abs(m);
  return std::log((1.0 + r) / (1.0 - r));  // 2 artanh r
}

Eigen::VectorXcd HorizontalDisc::eval(std::complex<double> z) const {
  Eigen::VectorXcd out(components.size());
  Eigen::VectorXcd zv(1);
  zv << z;
  for (size_t i = 0; i < components.size(); ++i) out[i] = components[i].eval(zv);
  return out;
}

Eigen::VectorXcd HorizontalDisc::derivative_at_zero() const {
  Eigen::VectorXcd out(components.size());
  for (size_t i = 0; i < components.size(); ++i) {
    MPoly d = components[i].derivative(0);
    Eigen::VectorXcd zero(1);
    zero << std::complex<double>(0, 0);
    out[i] = d.eval(zero);
  }
  return out;
}

namespace {

// M = (Pi_1^{-1} Pi_2)^t as (n-d) x d polynomial matrix; requires the
// leading frame block to have constant nonzero determinant.
std::vector<std::vector<MPoly>> coframe_matrix(const ChartDistribution& cd) {
  int d = cd.rank, n = cd.ambient;
  std::vector<std::vector<MPoly>> pi1(d, std::vector<MPoly>(d));
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < d; ++j) pi1[i][j] = cd.frame[i][j];
  auto inv = poly_inverse_constant_det(pi1);
  if (!inv)
    throw DiscEscape("chart coframe block Pi_1 has nonconstant determinant; "
                     "horizontal lifts are not polynomial");
  // (Pi_1^{-1} Pi_2)^t entries: M[j][i] = sum_k inv[i][k] Pi_2[k][j]
  std::vector<std::vector<MPoly>> m(n - d, std::vector<MPoly>(d, MPoly(n)));
  for (int j = 0; j < n - d; ++j)
    for (int i = 0; i < d; ++i) {
      MPoly acc(n);
      for (int k = 0; k < d; ++k) acc += (*inv)[i][k] * cd.frame[k][d + j];
      m[j][i] = acc;
    }
  return m;
}

}  // namespace

HorizontalDisc horizontal_disc_from_free_part(const ChartDistribution& cd,
                                              const std::vector<MPoly>& free_polys,
                                              const CVec& z0) {
  int d = cd.rank, n = cd.ambient;
  if (static_cast<int>(free_polys.size()) != d)
    throw std::invalid_argument("free part must have rank-many components");
  for (const auto& p : free_polys)
    if (p.nvars() != 1) throw std::invalid_argument("free part must be one-variable polynomials");
  HorizontalDisc disc;
  disc.rank = d;
  disc.components.resize(n);
  for (int i = 0; i < d; ++i) {
    disc.components[i] = free_polys[i];
    // pin f(0) = z0 on the free components
    MPoly::Exponents zero(1, 0);
    RationalComplex c0 = free_polys[i].eval_exact(CVec::Zero(1));
    if (c0 != z0[i]) {
      disc.components[i].add_term(zero, z0[i] - c0);
    }
  }
  if (n > d) {
    std::vector<std::vector<MPoly>> m = coframe_matrix(cd);
    std::vector<MPoly> dfree(d);
    for (int i = 0; i < d; ++i) dfree[i] = disc.components[i].derivative(0);
    // iterate the lift; terminates exactly for nilpotent-triangular charts
    std::vector<MPoly> rest(n - d);
    for (int j = 0; j < n - d; ++j) rest[j] = MPoly::constant(1, z0[d + j]);
    int max_iter = n - d + 2;
    for (int iter = 0; iter < max_iter; ++iter) {
      std::vector<MPoly> subs;
      for (int i = 0; i < d; ++i) subs.push_back(disc.components[i]);
      for (int j = 0; j < n - d; ++j) subs.push_back(rest[j]);
      std::vector<MPoly> next(n - d);
      bool stable = true;
      for (int j = 0; j < n - d; ++j) {
        MPoly acc(1);
        for (int i = 0; i < d; ++i) acc += m[j][i].compose(subs) * dfree[i];
        next[j] = acc.integrate(0);
        MPoly::Exponents zero(1, 0);
        next[j].add_term(zero, z0[d + j]);
        stable &= next[j] == rest[j];
      }
      rest = std::move(next);
      if (stable) break;
      if (iter == max_iter - 1)
        throw DiscEscape("horizontal lift did not stabilize; chart is not nilpotent-triangular");
    }
    for (int j = 0; j < n - d; ++j) disc.components[d + j] = rest[j];
  }

  // residual sup |f_rest' - M(f) f_free'| on a boundary ring, and escape check
  double residual = 0.0;
  double escape = cd.escape_radius();
  if (n > d) {
    std::vector<std::vector<MPoly>> m = coframe_matrix(cd);
    for (int s = 0; s < 24; ++s) {
      double th = 2.0 * M_PI * s / 24.0;
      std::complex<double> z = std::polar(0.95, th);
      Eigen::VectorXcd f = disc.eval(z);
      if (f.cwiseAbs().maxCoeff() > escape)
        throw DiscEscape("horizontal disc escaped the chart");
      Eigen::VectorXcd zv(1);
      zv << z;
      for (int j = 0; j < n - d; ++j) {
        std::complex<double> lhs = disc.components[d + j].derivative(0).eval(zv);
        std::complex<double> rhs = 0.0;
        for (int i = 0; i < d; ++i)
          rhs += m[j][i].eval(f) * disc.components[i].derivative(0).eval(zv);
        residual = std::max(residual, std::abs(lhs - rhs));
      }
    }
  } else {
    for (int s = 0; s < 8; ++s) {
      std::complex<double> z = std::polar(0.95, 2.0 * M_PI * s / 8.0);
      if (disc.eval(z).cwiseAbs().maxCoeff() > escape)
        throw DiscEscape("horizontal disc escaped the chart");
    }
  }
  disc.horizontality_residual = residual;
  return disc;
}

namespace {

RationalComplex rc_from(std::complex<double> z, int bits = 40) {
  return RationalComplex(Rational::from_double_dyadic(z.real(), bits),
                         Rational::from_double_dyadic(z.imag(), bits));
}

CVec exact_point(const Eigen::VectorXcd& z, int bits = 40) {
  CVec out(z.size());
  for (int i = 0; i < z.size(); ++i) out[i] = rc_from(z[i], bits);
  return out;
}

// checks |disc(Delta)| against the chart domain on boundary samples
bool disc_in_domain(const ChartDistribution& cd, const HorizontalDisc& disc) {
  if (!cd.domain) return true;
  for (int s = 0; s < 32; ++s) {
    std::complex<double> z = std::polar(1.0, 2.0 * M_PI * s / 32.0);
    Eigen::VectorXcd f = disc.eval(z);
    for (int i = 0; i < cd.ambient; ++i)
      if (std::abs(f[i]) > *cd.domain * (1.0 + 1e-9) + 1e-12) return false;
  }
  return true;
}

// largest admissible radius for a straight free-part disc from p along dir:
// geometric shrink to find a feasible radius, then bisection to the boundary
double best_radius(const ChartDistribution& cd, const Eigen::VectorXcd& p,
                   const Eigen::VectorXcd& dir_free, double at_least, double cap,
                   HorizontalDisc& out_disc) {
  auto build = [&](double r) {
    std::vector<MPoly> free_polys;
    for (int i = 0; i < cd.rank; ++i) {
      MPoly f(1);
      MPoly::Exponents lin(1, 1);
      f.add_term(lin, rc_from(r * dir_free[i]));
      free_polys.push_back(f);
    }
    return horizontal_disc_from_free_part(cd, free_polys, exact_point(p));
  };
  auto feasible = [&](double r, HorizontalDisc* out) {
    try {
      HorizontalDisc disc = build(r);
      if (!disc_in_domain(cd, disc)) return false;
      if (out) *out = std::move(disc);
      return true;
    } catch (const DiscEscape&) {
      return false;
    }
  };
  double hi = cap;
  if (feasible(hi, &out_disc)) return hi;
  double lo = hi;
  for (int tries = 0; tries < 200; ++tries) {
    lo *= 0.7;
    if (lo < at_least) {
      lo = at_least;
      break;
    }
    if (feasible(lo, nullptr)) break;
  }
  // invariant: hi infeasible; push lo to the feasibility boundary
  for (int it = 0; it < 60 && hi - lo > 1e-13 * hi; ++it) {
    double mid = 0.5 * (lo + hi);
    if (mid <= at_least) break;
    if (feasible(mid, nullptr))
      lo = mid;
    else
      hi = mid;
  }
  out_disc = build(lo);
  return lo;
}

struct StagePlan {
  int field = 0;
  std::complex<double> time{0, 0};
};

// primitive stages in application order (first applied first); consecutive
// stages of the same field merge exactly by the complex-flow semigroup law
std::vector<StagePlan> primitive_plan(const FlowWord& word) {
  std::vector<StagePlan> plan;
  for (auto it = word.stages.rbegin(); it != word.stages.rend(); ++it) {
    auto expanded = expand_stage(*it);
    for (auto e = expanded.rbegin(); e != expanded.rend(); ++e) {
      if (!plan.empty() && plan.back().field == e->generator.leaf)
        plan.back().time += e->time;
      else
        plan.push_back({e->generator.leaf, e->time});
    }
  }
  plan.erase(std::remove_if(plan.begin(), plan.end(),
                            [](const StagePlan& s) { return std::abs(s.time) < 1e-15; }),
             plan.end());
  return plan;
}

DiscChain chain_from_plan(const ChartDistribution& cd, const std::vector<StagePlan>& plan,
                          const Eigen::VectorXcd& x, const Eigen::VectorXcd& y,
                          const KobayashiConfig& cfg) {
  DiscChain chain;
  chain.start = x;
  Eigen::VectorXcd cur = x;
  for (const auto& st : plan) {
    if (std::abs(st.time) < 1e-15) continue;
    Eigen::VectorXcd dir = Eigen::VectorXcd::Zero(cd.rank);
    dir[st.field] = 1.0;
    // free direction of the frame field: rows of Pi_1 are constant for the
    // charts with polynomial lifts, so the first d components at cur serve
    Eigen::VectorXcd frame_free(cd.rank);
    for (int i = 0; i < cd.rank; ++i) frame_free[i] = cd.frame[st.field][i].eval(cur);
    ChainLink link;
    double cap = cfg.max_disc_radius;
    double at_least = std::abs(st.time) * 1.0000001;
    double r = best_radius(cd, cur, frame_free, at_least, cap, link.disc);
    link.b = st.time / r;
    link.radius = r;
    if (std::abs(link.b) >= 1.0)
      throw DiscEscape("flow stage does not fit inside a unit-disc parameter");
    chain.value += poincare_distance(0.0, link.b);
    chain.max_residual = std::max(chain.max_residual, link.disc.horizontality_residual);
    cur = link.disc.eval(link.b);
    chain.links.push_back(std::move(link));
  }
  chain.endpoint = cur;
  chain.endpoint_error = (cur - y).cwiseAbs().maxCoeff();
  return chain;
}

// single-link shortcut: straight free part toward the target
std::optional<DiscChain> direct_chain(const ChartDistribution& cd, const Eigen::VectorXcd& x,
                                      const Eigen::VectorXcd& y, const KobayashiConfig& cfg) {
  Eigen::VectorXcd dfree = y.head(cd.rank) - x.head(cd.rank);
  double fn = dfree.cwiseAbs().maxCoeff();
  if (fn < 1e-15) return std::nullopt;
  Eigen::VectorXcd dir = dfree / fn;
  HorizontalDisc disc;
  double r = best_radius(cd, x, dir, fn * 1.0000001, cfg.max_disc_radius, disc);
  std::complex<double> b = fn / r;
  if (std::abs(b) >= 1.0) return std::nullopt;
  Eigen::VectorXcd end = disc.eval(b);
  if ((end - y).cwiseAbs().maxCoeff() > cfg.endpoint_tol) return std::nullopt;
  DiscChain chain;
  chain.start = x;
  chain.links.push_back({std::move(disc), b, r});
  chain.value = poincare_distance(0.0, b);
  chain.endpoint = end;
  chain.endpoint_error = (end - y).cwiseAbs().maxCoeff();
  chain.max_residual = chain.links[0].disc.horizontality_residual;
  return chain;
}

// Replays a chain after a link was rebuilt: downstream links keep their
// parameters; the chain is re-based link by link.
void rebase_chain(DiscChain& chain, const ChartDistribution& cd, size_t from_link) {
  Eigen::VectorXcd cur = from_link == 0 ? chain.start : chain.links[from_link - 1].disc.eval(
                                                            chain.links[from_link - 1].b);
  for (size_t j = from_link; j < chain.links.size(); ++j) {
    ChainLink& link = chain.links[j];
    std::vector<MPoly> free_polys(link.disc.components.begin(),
                                  link.disc.components.begin() + cd.rank);
    link.disc = horizontal_disc_from_free_part(cd, free_polys, exact_point(cur));
    cur = link.disc.eval(link.b);
  }
  chain.endpoint = cur;
  chain.value = 0.0;
  chain.max_residual = 0.0;
  for (const auto& link : chain.links) {
    chain.value += poincare_distance(0.0, link.b);
    chain.max_residual = std::max(chain.max_residual, link.disc.horizontality_residual);
  }
}

void descend_chain(DiscChain& chain, const ChartDistribution& cd, const Eigen::VectorXcd& y,
                   const KobayashiConfig& cfg) {
  if (chain.links.empty()) return;
  // the coefficient search space is capped at max_links links; longer seeded
  // chains are kept as valid upper bounds but not descended
  if (static_cast<int>(chain.links.size()) > cfg.max_links) return;
  std::mt19937_64 rng(cfg.seed ^ 0xd1b54a32d192ed03ull);
  double best = chain.value;
  for (int round = 0; round < cfg.descent_rounds; ++round) {
    size_t j = rng() % chain.links.size();
    int comp = static_cast<int>(rng() % cd.rank);
    int deg = 1 + static_cast<int>(rng() % std::max(1, cfg.deg));
    int part = static_cast<int>(rng() % 2);
    int scale_pow = 3 + static_cast<int>(rng() % 8);
    Rational step = Rational(1, Rational::Int(1) << scale_pow);
    if (rng() % 2) step = -step;
    RationalComplex delta = part == 0 ? RationalComplex(step, Rational(0))
                                      : RationalComplex(Rational(0), step);

    DiscChain trial = chain;
    std::vector<MPoly> free_polys(trial.links[j].disc.components.begin(),
                                  trial.links[j].disc.components.begin() + cd.rank);
    MPoly::Exponents e(1, deg);
    free_polys[comp].add_term(e, delta);
    try {
      Eigen::VectorXcd base = j == 0 ? trial.start
                                     : trial.links[j - 1].disc.eval(trial.links[j - 1].b);
      trial.links[j].disc = horizontal_disc_from_free_part(cd, free_polys, exact_point(base));
      if (!disc_in_domain(cd, trial.links[j].disc)) continue;
      // re-solve b_j toward the link's downstream base point by a short
      // Gauss-Newton on |f(b) - target|
      Eigen::VectorXcd target = j + 1 < trial.links.size()
                                    ? chain.links[j].disc.eval(chain.links[j].b)
                                    : y;
      std::complex<double> b = trial.links[j].b;
      for (int it = 0; it < 12; ++it) {
        Eigen::VectorXcd f = trial.links[j].disc.eval(b);
        Eigen::VectorXcd r = target - f;
        if (r.cwiseAbs().maxCoeff() < cfg.endpoint_tol * 0.5) break;
        double h = 1e-6;
        Eigen::VectorXcd fp = trial.links[j].disc.eval(b + h);
        Eigen::VectorXcd fq = trial.links[j].disc.eval(b + std::complex<double>(0, h));
        // least squares over the complex step
        Eigen::MatrixXcd jm(cd.ambient, 1);
        jm.col(0) = (fp - f) / h;
        Eigen::VectorXcd rhs = r;
        std::complex<double> num = (jm.col(0).adjoint() * rhs)(0);
        double den = jm.col(0).squaredNorm();
        (void)fq;
        if (den < 1e-18) break;
        b += num / den;
        if (std::abs(b) >= 0.999999) {
          b = std::numeric_limits<double>::quiet_NaN();
          break;
        }
      }
      if (!(std::abs(b) < 1.0)) continue;
      trial.links[j].b = b;
      rebase_chain(trial, cd, j);
      trial.endpoint_error = (trial.endpoint - y).cwiseAbs().maxCoeff();
      if (trial.endpoint_error <= cfg.endpoint_tol && trial.value < best - 1e-14) {
        chain = std::move(trial);
        best = chain.value;
      }
    } catch (const DiscEscape&) {
      continue;
    }
  }
}

}  // namespace

KobayashiOutcome kobayashi_upper(const ChartDistribution& cd, const Eigen::VectorXcd& x,
                                 const Eigen::VectorXcd& y, const KobayashiConfig& cfg) {
  if ((x - y).cwiseAbs().maxCoeff() <= 1e-15) {
    DiscChain chain;
    chain.start = x;
    chain.endpoint = y;
    return chain;
  }
  FlowWord word;
  try {
    ChowConfig chow_cfg = cfg.chow;
    chow_cfg.endpoint_tol = std::min(cfg.chow.endpoint_tol, cfg.endpoint_tol * 0.1);
    word = chow_connect(cd, x, y, chow_cfg);
  } catch (const NoConnection& e) {
    return Unreachable{e.what()};
  }
  DiscChain chain = chain_from_plan(cd, primitive_plan(word), x, y, cfg);

  if (auto direct = direct_chain(cd, x, y, cfg))
    if (direct->value < chain.value) chain = std::move(*direct);

  descend_chain(chain, cd, y, cfg);
  return chain;
}

InfinitesimalOutcome infinitesimal_metric_upper(const ChartDistribution& cd,
                                                const Eigen::VectorXcd& x,
                                                const Eigen::VectorXcd& v,
                                                const KobayashiConfig& cfg) {
  if (v.cwiseAbs().maxCoeff() < 1e-15)
    throw DomainError("infinitesimal metric of the zero vector");
  // v must lie in the frame span at x
  Eigen::MatrixXcd frame = cd.frame_matrix_at(x, false);
  Eigen::MatrixXcd a = frame.transpose();  // n x d, columns are frame values
  Eigen::VectorXcd coeffs = a.colPivHouseholderQr().solve(v);
  if ((a * coeffs - v).cwiseAbs().maxCoeff() > 1e-8 * std::max(1.0, v.cwiseAbs().maxCoeff()))
    throw DomainError("tangent vector is not in the distribution at x");

  double vn = v.cwiseAbs().maxCoeff();
  Eigen::VectorXcd dir_free = v.head(cd.rank) / vn;
  HorizontalDisc disc;
  double r = best_radius(cd, x, dir_free, 1e-9, cfg.max_disc_radius, disc);
  // f'(0) = r * v / vn, so lambda f'(0) = v gives lambda = vn / r
  double lambda = vn / r;
  InfinitesimalEstimate est;
  est.lambda = lambda;
  est.value = 2.0 * lambda;  // curvature -1 normalization
  est.disc = std::move(disc);
  return est;
}

double MetricOnD::density(const Eigen::VectorXcd& u, const Eigen::VectorXcd& z, int rank) const {
  switch (kind) {
    case Kind::FrameEuclidean:
      return u.norm();
    case Kind::PoincareDisc: {
      if (rank != 1 || z.size() != 1)
        throw MetricDomainError("Poincare metric applies to rank-1 charts of the disc");
      if (curvature >= 0) throw MetricDomainError("Poincare curvature must be negative");
      double r2 = std::norm(z[0]);
      if (r2 >= 1.0) throw MetricDomainError("point outside the unit disc");
      return std::abs(u[0]) * (2.0 / std::sqrt(-curvature)) / (1.0 - r2);
    }
  }
  return 0.0;
}

std::pair<Eigen::VectorXcd, double> replay_controls(const ChartDistribution& cd,
                                                    const MetricOnD& metric,
                                                    const Eigen::MatrixXcd& controls,
                                                    const Eigen::VectorXcd& x, int substeps) {
  Eigen::VectorXcd z = x;
  double length = 0.0;
  int segments = static_cast<int>(controls.cols());
  double dt = 1.0 / segments;
  auto rhs = [&](const Eigen::VectorXcd& p, const Eigen::VectorXcd& u) {
    Eigen::VectorXcd acc = Eigen::VectorXcd::Zero(cd.ambient);
    for (int i = 0; i < cd.rank; ++i)
      if (u[i] != std::complex<double>(0, 0)) acc += u[i] * cd.frame_num[i].eval(p);
    return acc;
  };
  for (int k = 0; k < segments; ++k) {
    Eigen::VectorXcd u = controls.col(k);
    double h = dt / substeps;
    for (int s = 0; s < substeps; ++s) {
      // RK4 substep plus Simpson-style quadrature of the length density
      Eigen::VectorXcd k1 = rhs(z, u);
      Eigen::VectorXcd zmid = z + 0.5 * h * k1;
      Eigen::VectorXcd k2 = rhs(zmid, u);
      Eigen::VectorXcd k3 = rhs(z + 0.5 * h * k2, u);
      Eigen::VectorXcd zend = z + h * k3;
      Eigen::VectorXcd k4 = rhs(zend, u);
      Eigen::VectorXcd znext = z + (h / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
      length += (h / 6.0) * (metric.density(u, z, cd.rank) +
                             4.0 * metric.density(u, 0.5 * (z + znext), cd.rank) +
                             metric.density(u, znext, cd.rank));
      z = znext;
    }
  }
  return {z, length};
}

CCOutcome cc_distance_upper(const ChartDistribution& cd, const MetricOnD& metric,
                            const Eigen::VectorXcd& x, const Eigen::VectorXcd& y,
                            const CCConfig& cfg) {
  if ((x - y).cwiseAbs().maxCoeff() <= 1e-15) {
    HorizontalPath path;
    path.controls = Eigen::MatrixXcd::Zero(cd.rank, cfg.segments);
    path.start = x;
    path.endpoint = y;
    return path;
  }
  FlowWord word;
  try {
    ChowConfig chow_cfg = cfg.chow;
    chow_cfg.endpoint_tol = std::min(cfg.chow.endpoint_tol, cfg.endpoint_tol * 0.01);
    word = chow_connect(cd, x, y, chow_cfg);
  } catch (const NoConnection& e) {
    return Unreachable{e.what()};
  }

  // allot segments to primitive stages proportionally to |t|
  std::vector<StagePlan> plan = primitive_plan(word);
  std::vector<StagePlan> active;
  double total = 0.0;
  for (const auto& st : plan)
    if (std::abs(st.time) > 1e-14) {
      active.push_back(st);
      total += std::abs(st.time);
    }
  int segments = std::max(cfg.segments, static_cast<int>(active.size()));
  Eigen::MatrixXcd controls = Eigen::MatrixXcd::Zero(cd.rank, segments);
  {
    std::vector<int> alloc(active.size(), 1);
    int used = static_cast<int>(active.size());
    for (size_t i = 0; i < active.size(); ++i) {
      int extra = static_cast<int>(std::floor((segments - static_cast<int>(active.size())) *
                                              std::abs(active[i].time) / total));
      alloc[i] += extra;
      used += extra;
    }
    for (size_t i = 0; used < segments; i = (i + 1) % std::max<size_t>(1, active.size())) {
      alloc[i] += 1;
      ++used;
    }
    int col = 0;
    double dt = 1.0 / segments;
    for (size_t i = 0; i < active.size(); ++i)
      for (int k = 0; k < alloc[i]; ++k) {
        controls(active[i].field, col) = active[i].time / (alloc[i] * dt);
        ++col;
      }
  }

  auto eval_path = [&](const Eigen::MatrixXcd& u) {
    return replay_controls(cd, metric, u, x, cfg.substeps);
  };
  auto [end0, len0] = eval_path(controls);
  double err0 = (end0 - y).cwiseAbs().maxCoeff();

  // penalty polish, scale-normalized so dilated problems polish alike
  Eigen::MatrixXcd best_u = controls;
  double best_len = len0;
  double scale = std::max(1e-9, len0);
  double mu = 10.0 * scale;
  Eigen::MatrixXcd u = controls;
  double fd = 1e-5 * std::max(1.0, u.cwiseAbs().maxCoeff());
  double step0 = 0.02 * std::max(1.0, u.cwiseAbs().maxCoeff());
  for (int it = 0; it < cfg.polish_iters; ++it) {
    auto [end, len] = eval_path(u);
    double j0 = len + mu * (end - y).squaredNorm() / scale;
    Eigen::MatrixXcd grad = Eigen::MatrixXcd::Zero(cd.rank, segments);
    for (int i = 0; i < cd.rank; ++i)
      for (int k = 0; k < segments; ++k)
        for (int part = 0; part < 2; ++part) {
          Eigen::MatrixXcd up = u;
          std::complex<double> delta = part == 0 ? std::complex<double>(fd, 0)
                                                 : std::complex<double>(0, fd);
          up(i, k) += delta;
          auto [ep, lp] = eval_path(up);
          double jp = lp + mu * (ep - y).squaredNorm() / scale;
          double g = (jp - j0) / fd;
          grad(i, k) += part == 0 ? std::complex<double>(g, 0) : std::complex<double>(0, g);
        }
    double gn = grad.norm();
    if (gn < 1e-12) break;
    double step = step0;
    bool moved = false;
    for (int bt = 0; bt < 18; ++bt) {
      Eigen::MatrixXcd cand = u - (step / gn) * grad;
      auto [ec, lc] = eval_path(cand);
      double jc = lc + mu * (ec - y).squaredNorm() / scale;
      if (jc < j0 - 1e-14) {
        u = cand;
        moved = true;
        break;
      }
      step *= 0.5;
    }
    if (!moved) {
      mu *= 4.0;
      continue;
    }
    auto [end2, len2] = eval_path(u);
    double err2 = (end2 - y).cwiseAbs().maxCoeff();
    if (err2 <= std::max(cfg.endpoint_tol, err0) && len2 < best_len) {
      best_u = u;
      best_len = len2;
    }
  }

  HorizontalPath path;
  path.controls = best_u;
  path.start = x;
  auto [bend, blen] = eval_path(best_u);
  path.endpoint = bend;
  path.endpoint_error = (bend - y).cwiseAbs().maxCoeff();
  path.length = blen;
  return path;
}

SchwarzBound schwarz_lower_bound(const CurvatureCertificate& cert, double rho, bool rho_exact) {
  if (!(cert.exact_value.sign() < 0))
    throw InvalidCertificate("certificate lacks a negative exact anchor");
  return schwarz_lower_bound(cert.c, rho, rho_exact);
}

SchwarzBound schwarz_lower_bound(double certificate_c, double rho, bool rho_exact) {
  if (certificate_c <= 0) throw InvalidCertificate("certificate bound must be positive");
  if (rho < 0) throw InvalidCertificate("CC value must be nonnegative");
  SchwarzBound out;
  out.value = std::sqrt(certificate_c) * rho;
  out.heuristic = !rho_exact;
  return out;
}

}  // namespace subkoba
