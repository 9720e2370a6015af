#include "subkoba/curvature.hpp"

namespace subkoba {

namespace {

void require_in_level(const GradedDecomposition& gd, const CVec& v, int level,
                      const char* what) {
  const BasisData& bd = gd.bd;
  for (int i = 0; i < bd.dim; ++i) {
    if (v[i].is_zero()) continue;
    if (bd.is_cartan_index(i))
      throw DomainError(std::string(what) + ": vector has a Cartan component");
    if (gd.level_of_root[bd.root_of_basis_index(i)] != level)
      throw DomainError(std::string(what) + ": vector not in the level " +
                        std::to_string(level) + " subspace");
  }
}

Rational real_or_throw(const RationalComplex& z, const char* what) {
  if (!z.im.is_zero()) throw std::logic_error(std::string(what) + ": unexpected imaginary part");
  return z.re;
}

}  // namespace

RationalComplex invariant_metric(const RealFormData& rf, const GradedDecomposition& gd,
                                 const CVec& zeta, const CVec& xi) {
  require_in_level(gd, zeta, -1, "invariant_metric");
  require_in_level(gd, xi, -1, "invariant_metric");
  return rf.metric(zeta, xi);
}

Rational sectional_curvature(const RealFormData& rf, const GradedDecomposition& gd,
                             const CVec& zeta) {
  return bisectional_curvature(rf, gd, zeta, zeta);
}

Rational bisectional_curvature(const RealFormData& rf, const GradedDecomposition& gd,
                               const CVec& zeta, const CVec& xi) {
  require_in_level(gd, zeta, -1, "bisectional_curvature");
  require_in_level(gd, xi, -1, "bisectional_curvature");
  if (is_zero_vec(zeta) || is_zero_vec(xi)) throw DomainError("curvature of the zero vector");
  const BasisData& bd = rf.bd;
  CVec wz = bd.bracket(zeta, rf.sigma(zeta));
  CVec wx = bd.bracket(xi, rf.sigma(xi));
  Rational num = real_or_throw(bd.killing_form(wz, wx), "bisectional numerator");
  Rational gz = real_or_throw(rf.metric(zeta, zeta), "metric");
  Rational gx = real_or_throw(rf.metric(xi, xi), "metric");
  if (gz.is_zero() || gx.is_zero()) throw DomainError("degenerate metric direction");
  return -num / (gz * gx);
}

CurvatureTensor curvature_tensor(const RealFormData& rf, const GradedDecomposition& gd) {
  const BasisData& bd = rf.bd;
  CurvatureTensor tensor;
  for (const auto& [l, members] : gd.level_members)
    if (l < 0) tensor.g_minus_members.insert(tensor.g_minus_members.end(), members.begin(),
                                             members.end());
  std::vector<int> pos = bd.roots.positive_indices();
  int nm = static_cast<int>(tensor.g_minus_members.size());

  auto project_v = [&](const CVec& x) {
    CVec out = CVec::Zero(bd.dim);
    for (int i = 0; i < bd.dim; ++i) {
      if (x[i].is_zero()) continue;
      bool in_v = bd.is_cartan_index(i) ||
                  gd.level_of_root[bd.root_of_basis_index(i)] == 0;
      if (in_v) out[i] = x[i];
    }
    return out;
  };

  for (int a : pos) {
    for (int b : pos) {
      bool a_compact = rf.eps[a] == -1;
      bool b_compact = rf.eps[b] == -1;
      int sign = 0;
      if (!a_compact && !b_compact) sign = -1;  // Phi+ \ Phi+(kC) pairs
      else if (a_compact && b_compact && gd.level_of_root[a] != 0 && gd.level_of_root[b] != 0)
        sign = +1;  // Phi+(kC) \ Phi+(vC) pairs
      else
        continue;
      CVec ea = CVec::Zero(bd.dim);
      ea[bd.root_vector_index(a)] = RationalComplex(Rational(1));
      CVec enb = CVec::Zero(bd.dim);
      enb[bd.root_vector_index(bd.roots.negative_of(b))] = RationalComplex(Rational(1));
      CVec w = project_v(bd.bracket(ea, enb));
      if (is_zero_vec(w)) continue;
      CurvatureTensor::Entry entry;
      entry.root_a = a;
      entry.root_b = b;
      entry.sign = sign;
      entry.op = CMat(nm, nm);
      for (int j = 0; j < nm; ++j) {
        CVec ej = CVec::Zero(bd.dim);
        ej[tensor.g_minus_members[j]] = RationalComplex(Rational(1));
        CVec img = bd.bracket(w, ej);
        for (int i = 0; i < nm; ++i) entry.op(i, j) = img[tensor.g_minus_members[i]];
        // ad of a g_0 element preserves g^-, so nothing escapes the block
        for (int i = 0; i < bd.dim; ++i) {
          if (img[i].is_zero()) continue;
          bool tracked = false;
          for (int m : tensor.g_minus_members) tracked |= (m == i);
          if (!tracked) throw std::logic_error("curvature component leaves g^-");
        }
      }
      tensor.entries.push_back(std::move(entry));
    }
  }
  return tensor;
}

Rational tensor_bisectional(const CurvatureTensor& tensor, const RealFormData& rf,
                            const GradedDecomposition& gd, const CVec& zeta, const CVec& xi) {
  require_in_level(gd, zeta, -1, "tensor_bisectional");
  require_in_level(gd, xi, -1, "tensor_bisectional");
  const BasisData& bd = rf.bd;
  int nm = static_cast<int>(tensor.g_minus_members.size());
  CVec xi_m(nm);
  for (int i = 0; i < nm; ++i) xi_m[i] = xi[tensor.g_minus_members[i]];
  CVec sigma_xi = rf.sigma(xi);

  RationalComplex acc;
  for (const auto& entry : tensor.entries) {
    // omega^a pairs the conjugated slot: coefficient of e_{-a} in zeta, conjugated
    RationalComplex za = conj(zeta[bd.root_vector_index(bd.roots.negative_of(entry.root_a))]);
    RationalComplex zb = zeta[bd.root_vector_index(bd.roots.negative_of(entry.root_b))];
    if (za.is_zero() || zb.is_zero()) continue;
    CVec opxi_m = entry.op * xi_m;
    CVec opxi = CVec::Zero(bd.dim);
    for (int i = 0; i < nm; ++i) opxi[tensor.g_minus_members[i]] = opxi_m[i];
    acc += RationalComplex(Rational(entry.sign)) * za * zb * bd.killing_form(opxi, sigma_xi);
  }
  Rational num = real_or_throw(acc, "tensor contraction");
  Rational gz = real_or_throw(rf.metric(zeta, zeta), "metric");
  Rational gx = real_or_throw(rf.metric(xi, xi), "metric");
  if (gz.is_zero() || gx.is_zero()) throw DomainError("degenerate metric direction");
  // curvature convention: R = -(Theta contraction)
  return -num / (gz * gx);
}

CurvatureEvaluator::CurvatureEvaluator(const RealFormData& rf, const GradedDecomposition& gd) {
  const BasisData& bd = rf.bd;
  dim_ = bd.dim;
  for (int a = 0; a < bd.roots.num_roots(); ++a)
    if (gd.level_of_root[a] == 1 && bd.roots.roots[a].positive) roots_.push_back(a);
  d_ = static_cast<int>(roots_.size());
  for (int a : roots_)
    neg_basis_index_.push_back(bd.root_vector_index(bd.roots.negative_of(a)));
  for (int a : roots_) eps_b_.push_back(rf.eps[a] * bd.b_norm[a].to_double());
  killing_ = to_double(bd.killing);
  pair_w_.resize(d_ * d_);
  for (int j = 0; j < d_; ++j)
    for (int k = 0; k < d_; ++k) {
      CVec zj = CVec::Zero(bd.dim);
      zj[bd.root_vector_index(bd.roots.negative_of(roots_[j]))] = RationalComplex(Rational(1));
      CVec zk = CVec::Zero(bd.dim);
      zk[bd.root_vector_index(roots_[k])] = RationalComplex(Rational(rf.eps[roots_[k]]));
      pair_w_[j * d_ + k] = to_double(CVec(bd.bracket(zj, zk)));
    }
}

Eigen::VectorXcd CurvatureEvaluator::to_complex(const Eigen::VectorXd& x) const {
  Eigen::VectorXcd z(d_);
  for (int j = 0; j < d_; ++j) z[j] = std::complex<double>(x[j], x[d_ + j]);
  return z;
}

double CurvatureEvaluator::value(const Eigen::VectorXd& x) const {
  Eigen::VectorXcd z = to_complex(x);
  Eigen::VectorXcd w = Eigen::VectorXcd::Zero(dim_);
  for (int j = 0; j < d_; ++j)
    for (int k = 0; k < d_; ++k) w += z[j] * std::conj(z[k]) * pair_w_[j * d_ + k];
  std::complex<double> num = w.transpose() * killing_ * w;  // bilinear, no conj
  double g = 0.0;
  for (int j = 0; j < d_; ++j) g += eps_b_[j] * std::norm(z[j]);
  return -num.real() / (g * g);
}

Eigen::VectorXd CurvatureEvaluator::gradient(const Eigen::VectorXd& x) const {
  Eigen::VectorXcd z = to_complex(x);
  Eigen::VectorXcd w = Eigen::VectorXcd::Zero(dim_);
  for (int j = 0; j < d_; ++j)
    for (int k = 0; k < d_; ++k) w += z[j] * std::conj(z[k]) * pair_w_[j * d_ + k];
  std::complex<double> numc = w.transpose() * killing_ * w;
  double num = numc.real();
  double g = 0.0;
  for (int j = 0; j < d_; ++j) g += eps_b_[j] * std::norm(z[j]);
  Eigen::VectorXcd kw = killing_ * w;

  Eigen::VectorXd grad(2 * d_);
  for (int c = 0; c < 2 * d_; ++c) {
    int j0 = c % d_;
    std::complex<double> u = (c < d_) ? std::complex<double>(1, 0) : std::complex<double>(0, 1);
    Eigen::VectorXcd dw = Eigen::VectorXcd::Zero(dim_);
    for (int k = 0; k < d_; ++k) {
      dw += u * std::conj(z[k]) * pair_w_[j0 * d_ + k];
      dw += z[k] * std::conj(u) * pair_w_[k * d_ + j0];
    }
    double dnum = 2.0 * (dw.transpose() * kw).value().real();
    double dg = 2.0 * eps_b_[j0] * x[c];
    grad[c] = -(dnum * g * g - num * 2.0 * g * dg) / (g * g * g * g);
  }
  return grad;
}

Eigen::MatrixXd CurvatureEvaluator::metric_gram_real() const {
  Eigen::VectorXd diag(2 * d_);
  for (int j = 0; j < d_; ++j) diag[j] = diag[d_ + j] = eps_b_[j];
  return diag.asDiagonal();
}

CVec CurvatureEvaluator::to_exact(const Eigen::VectorXd& x, int dyadic_bits) const {
  CVec coeffs(d_);
  for (int j = 0; j < d_; ++j)
    coeffs[j] = RationalComplex(Rational::from_double_dyadic(x[j], dyadic_bits),
                                Rational::from_double_dyadic(x[d_ + j], dyadic_bits));
  return embed(coeffs);
}

CVec CurvatureEvaluator::embed(const CVec& coeffs) const {
  CVec out = CVec::Zero(dim_);
  for (int j = 0; j < d_; ++j) out[neg_basis_index_[j]] = coeffs[j];
  return out;
}

CurvatureCertificate certify_negative_bound(const RealFormData& rf,
                                            const GradedDecomposition& gd,
                                            const SphereOptConfig& cfg) {
  const BasisData& bd = rf.bd;
  CurvatureEvaluator eval(rf, gd);
  if (eval.complex_dim() == 0)
    throw DomainError("certify_negative_bound: empty superhorizontal subspace");

  // exact positivity of the metric on g_{-1}: diagonal Gram eps_a * b_a
  for (int a : eval.level1_roots()) {
    if (rf.eps[a] != 1 || bd.b_norm[a].sign() <= 0) {
      Eigen::VectorXcd witness = Eigen::VectorXcd::Zero(bd.dim);
      witness[bd.root_vector_index(bd.roots.negative_of(a))] = 1.0;
      throw NotNegative("invariant metric is not positive definite on g_{-1}", witness);
    }
  }

  auto f = [&eval](const Eigen::VectorXd& x) { return eval.value(x); };
  auto grad = [&eval](const Eigen::VectorXd& x) { return eval.gradient(x); };
  SphereOptResult opt = maximize_on_ellipsoid(eval.metric_gram_real(), f, grad, cfg);

  if (opt.value >= -cfg.tol) {
    Eigen::VectorXcd z = eval.to_complex(opt.argmax);
    Eigen::VectorXcd witness = Eigen::VectorXcd::Zero(bd.dim);
    for (int j = 0; j < eval.complex_dim(); ++j)
      witness[bd.root_vector_index(bd.roots.negative_of(eval.level1_roots()[j]))] = z[j];
    throw NotNegative("best curvature value is not negative", witness);
  }

  CurvatureCertificate cert;
  cert.c = -opt.value;
  cert.restarts = cfg.restarts;
  cert.tol = cfg.tol;
  cert.seed = cfg.seed;
  cert.spread = opt.spread;
  cert.restart_values = opt.restart_values;
  Eigen::VectorXcd z = eval.to_complex(opt.argmax);
  cert.argmax = z;

  // exact anchor: re-evaluate H at a nearby rational point
  CVec zeta = eval.to_exact(opt.argmax, 12);
  cert.exact_point = zeta;
  cert.exact_value = sectional_curvature(rf, gd, zeta);
  if (cert.exact_value.sign() >= 0)
    throw NotNegative("exact anchor failed to certify negativity", cert.argmax);
  return cert;
}

}  // namespace subkoba
