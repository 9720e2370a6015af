#include "subkoba/hyperbolicity.hpp"

#include <cmath>

namespace subkoba {

namespace {

RMat columns(const std::vector<RVec>& cols, int dim) {
  RMat m(dim, cols.size());
  for (size_t j = 0; j < cols.size(); ++j) m.col(j) = cols[j];
  return m;
}

}  // namespace

HomogeneousDatum canonical_datum(const RealFormData& rf, const GradedDecomposition& gd) {
  HomogeneousDatum hd;
  hd.algebra = realify_real_form(rf);
  const BasisData& bd = rf.bd;
  int dim = bd.dim;
  int r = bd.rank();

  // real basis layout from realify_real_form: i h_1..i h_r, then (u, v) per
  // positive root in RootDatum order
  std::vector<int> positives = bd.roots.positive_indices();
  std::vector<RVec> v_cols, m_cols, g1_cols;
  for (int j = 0; j < r; ++j) v_cols.push_back(hd.algebra.basis_vector(j));
  RMat jmat = RMat::Zero(dim, dim);
  for (size_t p = 0; p < positives.size(); ++p) {
    int a = positives[p];
    int iu = r + 2 * static_cast<int>(p);
    int iv = iu + 1;
    if (gd.level_of_root[a] == 0) {
      v_cols.push_back(hd.algebra.basis_vector(iu));
      v_cols.push_back(hd.algebra.basis_vector(iv));
    } else {
      m_cols.push_back(hd.algebra.basis_vector(iu));
      m_cols.push_back(hd.algebra.basis_vector(iv));
      // complex structure from T^{1,0} = g^-: j u = -v, j v = u
      jmat(iv, iu) = Rational(-1);
      jmat(iu, iv) = Rational(1);
      if (std::abs(gd.level_of_root[a]) == 1) {
        g1_cols.push_back(hd.algebra.basis_vector(iu));
        g1_cols.push_back(hd.algebra.basis_vector(iv));
      }
    }
  }
  hd.v_basis = columns(v_cols, dim);
  hd.m_basis = columns(m_cols, dim);
  hd.g1 = columns(g1_cols, dim);
  hd.j = jmat;
  hd.algebra.v_basis = hd.v_basis;
  hd.flag = HomogeneousDatum::FlagRef{bd, rf, gd, rf.g_basis};
  return hd;
}

HomogeneousDatum full_tangent_datum(const RealFormData& rf, const GradedDecomposition& gd) {
  HomogeneousDatum hd = canonical_datum(rf, gd);
  hd.g1 = hd.m_basis;
  return hd;
}

HomogeneousDatum complex_group_datum(const BasisData& bd) {
  HomogeneousDatum hd;
  hd.algebra = realify_complex_algebra(bd);
  int n = bd.dim;
  int dim = 2 * n;
  hd.v_basis = RMat::Zero(dim, 0);
  hd.m_basis = RMat::Identity(dim, dim);
  RMat jmat = RMat::Zero(dim, dim);
  for (int i = 0; i < n; ++i) {
    jmat(n + i, i) = Rational(1);   // j x_i = i x_i
    jmat(i, n + i) = Rational(-1);  // j (i x_i) = -x_i
  }
  hd.j = jmat;
  hd.g1 = hd.m_basis;  // D = T_M, trivially bracket generating
  return hd;
}

JAxiomReport validate_j_axioms(const HomogeneousDatum& hd) {
  JAxiomReport rep;
  const LieAlgebraData& la = hd.algebra;
  int dim = la.dim;

  // direct sum and invariances
  {
    RMat vm(dim, hd.v_basis.cols() + hd.m_basis.cols());
    vm.leftCols(hd.v_basis.cols()) = hd.v_basis;
    vm.rightCols(hd.m_basis.cols()) = hd.m_basis;
    rep.decomposition_ok = rank_exact(vm) == dim &&
                           hd.v_basis.cols() + hd.m_basis.cols() == dim;
    for (int a = 0; a < hd.v_basis.cols() && rep.decomposition_ok; ++a) {
      for (int b = 0; b < hd.v_basis.cols(); ++b)
        if (!in_col_span(hd.v_basis, la.bracket(RVec(hd.v_basis.col(a)), RVec(hd.v_basis.col(b)))))
          rep.decomposition_ok = false;
      for (int b = 0; b < hd.m_basis.cols(); ++b)
        if (!in_col_span(hd.m_basis, la.bracket(RVec(hd.v_basis.col(a)), RVec(hd.m_basis.col(b)))))
          rep.decomposition_ok = false;
    }
    if (!rep.decomposition_ok) rep.failures.push_back("g = v + m with [v,m] in m fails");
  }

  // j^2 = -1 on m, j v = 0
  rep.j_squared_ok = true;
  for (int b = 0; b < hd.m_basis.cols(); ++b) {
    RVec x = hd.m_basis.col(b);
    if (!is_zero_vec(RVec(hd.j * (hd.j * x) + x))) rep.j_squared_ok = false;
  }
  for (int b = 0; b < hd.v_basis.cols(); ++b)
    if (!is_zero_vec(RVec(hd.j * hd.v_basis.col(b)))) rep.j_squared_ok = false;
  if (!rep.j_squared_ok) rep.failures.push_back("j^2 = -id on m (with j v = 0) fails");

  // equivariance under v (Lie algebra form of the Ad_V condition)
  rep.equivariance_ok = true;
  for (int a = 0; a < hd.v_basis.cols(); ++a)
    for (int b = 0; b < hd.m_basis.cols(); ++b) {
      RVec w = hd.v_basis.col(a);
      RVec x = hd.m_basis.col(b);
      RVec lhs = la.bracket(w, RVec(hd.j * x));
      RVec rhs = hd.j * la.bracket(w, x);
      if (!is_zero_vec(RVec(lhs - rhs))) {
        rep.equivariance_ok = false;
        break;
      }
    }
  if (!rep.equivariance_ok) rep.failures.push_back("ad_v does not commute with j");

  // integrability identity on a spanning set of m
  rep.integrability_ok = true;
  for (int a = 0; a < hd.m_basis.cols() && rep.integrability_ok; ++a)
    for (int b = 0; b < hd.m_basis.cols(); ++b) {
      RVec x = hd.m_basis.col(a), y = hd.m_basis.col(b);
      RVec lhs = la.bracket(RVec(hd.j * x), RVec(hd.j * y));
      RVec rhs = la.bracket(x, y) + hd.j * la.bracket(RVec(hd.j * x), y) +
                 hd.j * la.bracket(x, RVec(hd.j * y));
      if (!is_zero_vec(RVec(lhs - rhs))) {
        rep.integrability_ok = false;
        rep.failures.push_back("integrability identity fails on m");
        break;
      }
    }

  // Ad_v-invariance of g1
  rep.g1_invariant_ok = true;
  for (int a = 0; a < hd.v_basis.cols() && rep.g1_invariant_ok; ++a)
    for (int b = 0; b < hd.g1.cols(); ++b)
      if (!in_col_span(hd.g1, la.bracket(RVec(hd.v_basis.col(a)), RVec(hd.g1.col(b))))) {
        rep.g1_invariant_ok = false;
        rep.failures.push_back("g1 is not ad_v-invariant");
        break;
      }
  return rep;
}

NoComplexLineReport check_no_complex_line(const HomogeneousDatum& hd,
                                          const SphereOptConfig& cfg, double tol) {
  NoComplexLineReport rep;
  if (hd.g1.cols() == 0) {
    rep.degenerate = true;
    rep.passed = true;
    rep.norm_kind = "vacuous";
    return rep;
  }
  const LieAlgebraData& la = hd.algebra;
  int k = static_cast<int>(hd.g1.cols());

  // norm: theta-twisted Killing when available and positive definite
  RMat norm_gram = RMat::Identity(la.dim, la.dim);
  rep.norm_kind = "coordinate";
  if (la.theta) {
    RMat bt = -(la.killing * (*la.theta));
    if (is_positive_definite_exact(RMat((bt + bt.transpose()) * Rational(1, 2)))) {
      norm_gram = (bt + bt.transpose()) * Rational(1, 2);
      rep.norm_kind = "theta-twisted Killing";
    }
  }
  Eigen::MatrixXd gram_d = to_double(norm_gram);
  Eigen::MatrixXd g1d = to_double(RMat(hd.g1));
  Eigen::MatrixXd jd = to_double(hd.j);

  // sphere gram on g1 coefficients
  Eigen::MatrixXd sphere = g1d.transpose() * gram_d * g1d;
  // numeric bracket
  std::vector<Eigen::MatrixXd> adg1(k);
  for (int j = 0; j < k; ++j) adg1[j] = to_double(la.ad_matrix(RVec(hd.g1.col(j))));

  auto f = [&](const Eigen::VectorXd& c) {
    Eigen::VectorXd x = g1d * c;
    Eigen::VectorXd jx = jd * x;
    Eigen::VectorXd w = Eigen::VectorXd::Zero(la.dim);
    for (int j = 0; j < k; ++j) w += c[j] * (adg1[j] * jx);
    return w.dot(gram_d * w);
  };
  auto grad = [&](const Eigen::VectorXd& c) {
    Eigen::VectorXd g(c.size());
    double h = 1e-6;
    for (int i = 0; i < c.size(); ++i) {
      Eigen::VectorXd cp = c, cm = c;
      cp[i] += h;
      cm[i] -= h;
      g[i] = (f(cp) - f(cm)) / (2 * h);
    }
    return g;
  };
  SphereOptResult res = minimize_on_ellipsoid(sphere, f, grad, cfg);
  rep.min_norm = std::sqrt(std::max(0.0, res.value));
  rep.witness = res.argmax;
  rep.passed = rep.min_norm > tol;
  return rep;
}

namespace {

CMat complexify_cols(const RMat& m) {
  CMat out(m.rows(), m.cols());
  for (int j = 0; j < m.cols(); ++j)
    for (int i = 0; i < m.rows(); ++i) out(i, j) = RationalComplex(m(i, j));
  return out;
}

CMat conj_cols(const CMat& m) {
  CMat out(m.rows(), m.cols());
  for (int j = 0; j < m.cols(); ++j) out.col(j) = conj_vec(CVec(m.col(j)));
  return out;
}

CMat hcat(const CMat& a, const CMat& b) {
  CMat out(a.rows(), a.cols() + b.cols());
  out.leftCols(a.cols()) = a;
  out.rightCols(b.cols()) = b;
  return out;
}

}  // namespace

Section51Grading build_section51_grading(const HomogeneousDatum& hd) {
  Section51Grading out;
  const LieAlgebraData& la = hd.algebra;
  int dim = la.dim;

  // D-space {x - i j x} inside the complexification
  CMat d_space(dim, hd.g1.cols());
  for (int j = 0; j < hd.g1.cols(); ++j) {
    CVec x = complexify(RVec(hd.g1.col(j)));
    CVec jx = complexify(RVec(hd.j * hd.g1.col(j)));
    for (int i = 0; i < dim; ++i) d_space(i, j) = x[i] - rc_i() * jx[i];
  }
  out.d_space = col_span_basis(d_space);

  // negative filtration chain
  std::vector<CMat> layers{out.d_space};
  CMat total = out.d_space;
  for (int depth = 1; depth <= dim; ++depth) {
    std::vector<CVec> next;
    const CMat& prev = layers.back();
    for (int a = 0; a < out.d_space.cols(); ++a)
      for (int b = 0; b < prev.cols(); ++b) {
        CVec br = la.bracket(CVec(out.d_space.col(a)), CVec(prev.col(b)));
        if (is_zero_vec(br) || in_col_span(total, br)) continue;
        next.push_back(br);
        CMat grown(dim, total.cols() + 1);
        grown.leftCols(total.cols()) = total;
        grown.col(total.cols()) = br;
        total = grown;
      }
    if (next.empty()) break;
    CMat layer(dim, next.size());
    for (size_t j = 0; j < next.size(); ++j) layer.col(j) = next[j];
    layers.push_back(layer);
  }
  out.depth = static_cast<int>(layers.size());

  CMat vc = complexify_cols(hd.v_basis);
  out.g_leq0 = col_span_basis(hcat(vc, total));
  out.g_geq0 = col_span_basis(hcat(vc, conj_cols(total)));
  // generates iff vC + N + conj(N) is everything
  out.generates = rank_exact(hcat(out.g_leq0, out.g_geq0)) == dim;

  out.leveled.ambient_dim = dim;
  LieAlgebraData la_copy = la;
  out.leveled.bracket = [la_copy](const CVec& x, const CVec& y) { return la_copy.bracket(x, y); };
  out.leveled.level_subspaces[0] = vc;
  for (size_t l = 0; l < layers.size(); ++l) {
    out.leveled.level_subspaces[-(static_cast<int>(l) + 1)] = layers[l];
    out.leveled.level_subspaces[static_cast<int>(l) + 1] = conj_cols(layers[l]);
  }
  return out;
}

ClassifyVerdict classify_homogeneous(const HomogeneousDatum& hd) {
  ClassifyVerdict verdict;
  verdict.effectiveness_note =
      "almost-effective translated as: v contains no nonzero ideal of g, "
      "B negative definite on v";
  const LieAlgebraData& la = hd.algebra;
  auto reject = [&](const std::string& reason, const RVec& witness) {
    verdict.canonical = false;
    verdict.reason = reason;
    verdict.witness = witness;
    return verdict;
  };
  auto pass = [&](const std::string& name) { verdict.checks.emplace_back(name, true); };
  auto fail = [&](const std::string& name) { verdict.checks.emplace_back(name, false); };

  // effectiveness and compact isotropy (algebra-level translations)
  {
    RMat ideal = largest_ideal_inside(la, hd.v_basis);
    if (ideal.cols() > 0) {
      fail("v contains no nonzero ideal");
      return reject("not almost effective: v contains a nonzero ideal", ideal.col(0));
    }
    pass("v contains no nonzero ideal");
    if (hd.v_basis.cols() > 0) {
      RMat gram(hd.v_basis.cols(), hd.v_basis.cols());
      for (int a = 0; a < hd.v_basis.cols(); ++a)
        for (int b = 0; b < hd.v_basis.cols(); ++b)
          gram(a, b) = la.killing_form(RVec(hd.v_basis.col(a)), RVec(hd.v_basis.col(b)));
      if (!is_negative_definite_exact(gram)) {
        fail("v compact (B negative definite)");
        return reject("isotropy subalgebra is not compact", hd.v_basis.col(0));
      }
    }
    pass("v compact (B negative definite)");
  }

  // (i) semisimple of noncompact type, no compact factor meeting g1
  if (det_exact(la.killing) == Rational(0)) {
    fail("Killing form nondegenerate");
    RMat rad = nullspace_exact(la.killing);
    return reject("algebra is not semisimple", rad.cols() > 0 ? RVec(rad.col(0))
                                                              : RVec(RVec::Zero(la.dim)));
  }
  pass("Killing form nondegenerate");

  std::vector<RMat> gamma = centroid(la);

  // split into indecomposable blocks via rational idempotents of the centroid
  std::vector<RMat> blocks;  // column bases of the ideals
  {
    std::vector<RMat> pending{RMat::Identity(la.dim, la.dim)};
    for (int guard = 0; guard < la.dim && !pending.empty(); ++guard) {
      std::vector<RMat> next;
      for (const RMat& blk : pending) {
        // find a centroid element with a rational eigenvalue splitting the block
        bool split = false;
        for (const RMat& phi : gamma) {
          for (int probe = 0; probe < blk.cols() && !split; ++probe) {
            RVec x = blk.col(probe);
            RVec px = phi * x;
            RMat pair(la.dim, 2);
            pair.col(0) = x;
            pair.col(1) = px;
            if (rank_exact(pair) == 1) continue;  // phi scalar along this probe
            RVec ppx = phi * px;
            auto sol = solve_exact(pair, ppx);
            if (!sol) continue;  // minimal polynomial degree > 2 along the probe
            // phi^2 x = a x + b phi x: quadratic t^2 - b t - a
            Rational a = (*sol)[0], b = (*sol)[1];
            Rational disc = b * b + Rational(4) * a;
            Rational root;
            if (disc.sign() < 0 || !disc.sqrt_exact(root)) continue;
            Rational r1 = (b + root) / Rational(2);
            RMat shifted = phi - RMat(RMat::Identity(la.dim, la.dim) * r1);
            RMat ker = nullspace_exact(shifted);
            RMat part1 = intersect_col_spans(ker, blk);
            if (part1.cols() > 0 && part1.cols() < blk.cols()) {
              RMat img(la.dim, blk.cols());
              for (int j = 0; j < blk.cols(); ++j) img.col(j) = shifted * blk.col(j);
              RMat part2 = intersect_col_spans(col_span_basis(img), blk);
              next.push_back(col_span_basis(part1));
              next.push_back(part2);
              split = true;
            }
          }
          if (split) break;
        }
        if (!split) blocks.push_back(col_span_basis(blk));
      }
      pending = std::move(next);
    }
  }

  for (const RMat& blk : blocks) {
    RMat gram(blk.cols(), blk.cols());
    for (int a = 0; a < blk.cols(); ++a)
      for (int b = 0; b < blk.cols(); ++b)
        gram(a, b) = la.killing_form(RVec(blk.col(a)), RVec(blk.col(b)));
    if (is_negative_definite_exact(gram)) {
      RMat meet = intersect_col_spans(blk, hd.g1);
      if (meet.cols() > 0) {
        fail("no compact simple factor meets g1");
        return reject("compact factor", meet.col(0));
      }
    }
  }
  pass("no compact simple factor meets g1");

  // (ii) not a complex Lie algebra. A centroid larger than the block count
  // certifies a complex structure on some block; exhibit a rational
  // phi with phi^2 = -id when the quadratic relation allows it.
  if (gamma.size() > blocks.size()) {
    fail("g is not a complex Lie algebra");
    for (const RMat& phi : gamma) {
      // matrix relation phi^2 = a id + b phi, solved exactly
      RMat vecs(la.dim * la.dim, 2);
      RVec rhs(la.dim * la.dim);
      RMat sq = phi * phi;
      for (int i = 0; i < la.dim; ++i)
        for (int j = 0; j < la.dim; ++j) {
          vecs(i * la.dim + j, 0) = i == j ? Rational(1) : Rational(0);
          vecs(i * la.dim + j, 1) = phi(i, j);
          rhs[i * la.dim + j] = sq(i, j);
        }
      auto sol = solve_exact(vecs, rhs);
      if (!sol) continue;
      Rational a = (*sol)[0], b = (*sol)[1];
      Rational neg_disc = -(b * b + Rational(4) * a);
      Rational s;
      if (neg_disc.sign() > 0 && neg_disc.sqrt_exact(s)) {
        // ((2 phi - b) / s)^2 = -id exactly
        RMat j_str = (phi * Rational(2) - RMat(RMat::Identity(la.dim, la.dim) * b)) *
                     (Rational(1) / s);
        return reject("complex Lie algebra", j_str.col(0));
      }
    }
    return reject("complex Lie algebra (centroid exceeds the block count)",
                  gamma.back().col(0));
  }
  pass("g is not a complex Lie algebra");

  // (iii) section-5.1 grading conditions
  Section51Grading grading = build_section51_grading(hd);
  if (!grading.generates) {
    fail("distribution bracket-generates");
    return reject("distribution is not holomorphically bracket generating",
                  hd.g1.cols() > 0 ? RVec(hd.g1.col(0)) : RVec(RVec::Zero(la.dim)));
  }
  pass("distribution bracket-generates");
  CMat vc = complexify_cols(hd.v_basis);
  {
    CMat meet = intersect_col_spans(grading.g_leq0, grading.g_geq0);
    bool ok = same_col_span(meet, vc);
    verdict.checks.emplace_back("g_{<=0} meets g_{>=0} in vC", ok);
    if (!ok)
      return reject("filtration intersection exceeds vC",
                    real_part(CVec(meet.col(0))));
  }
  if (!la.theta) {
    fail("theta-invariance of g_{<=0} and g_{>=0}");
    return reject("datum carries no Cartan involution", RVec(RVec::Zero(la.dim)));
  }
  {
    CMat theta_c = complexify_cols(*la.theta);
    CMat img(la.dim, grading.g_leq0.cols());
    for (int j = 0; j < grading.g_leq0.cols(); ++j)
      img.col(j) = theta_c * grading.g_leq0.col(j);
    bool ok = same_col_span(img, grading.g_leq0);
    CMat img2(la.dim, grading.g_geq0.cols());
    for (int j = 0; j < grading.g_geq0.cols(); ++j)
      img2.col(j) = theta_c * grading.g_geq0.col(j);
    ok = ok && same_col_span(img2, grading.g_geq0);
    verdict.checks.emplace_back("theta-invariance of g_{<=0} and g_{>=0}", ok);
    if (!ok) return reject("filtration is not theta-invariant", RVec(RVec::Zero(la.dim)));
  }

  // (iv) k1 = k ∩ g1 = 0
  {
    RMat k_space = nullspace_exact(RMat(*la.theta - RMat::Identity(la.dim, la.dim)));
    RMat k1 = intersect_col_spans(k_space, hd.g1);
    bool ok = k1.cols() == 0;
    verdict.checks.emplace_back("k1 = k ∩ g1 = 0", ok);
    if (!ok) return reject("k1 nonzero", k1.col(0));
  }

  // (v) match against the superhorizontal subspace
  if (hd.flag) {
    const auto& flag = *hd.flag;
    CMat d_gc(flag.bd.dim, grading.d_space.cols());
    for (int j = 0; j < grading.d_space.cols(); ++j) {
      CVec v = CVec::Zero(flag.bd.dim);
      for (int i = 0; i < la.dim; ++i) {
        if (grading.d_space(i, j).is_zero()) continue;
        for (int k = 0; k < flag.bd.dim; ++k)
          v[k] += grading.d_space(i, j) * flag.basis_in_gc(k, i);
      }
      d_gc.col(j) = v;
    }
    CMat sh = superhorizontal(flag.gd);
    bool ok = same_col_span(d_gc, sh);
    verdict.checks.emplace_back("g1 induces the superhorizontal distribution", ok);
    if (!ok) return reject("distribution is not the superhorizontal one", hd.g1.col(0));
  } else {
    // structural fallback: vC-invariance of the D-space plus the generated
    // filtration passing the graded-bracket laws
    bool invariant = true;
    for (int a = 0; a < vc.cols() && invariant; ++a)
      for (int j = 0; j < grading.d_space.cols(); ++j) {
        CVec br = la.bracket(CVec(vc.col(a)), CVec(grading.d_space.col(j)));
        if (!is_zero_vec(br) && !in_col_span(grading.d_space, br)) {
          invariant = false;
          break;
        }
      }
    bool laws = validate_graded_brackets(grading.leveled).laws_hold;
    bool ok = invariant && laws;
    verdict.checks.emplace_back("g1 induces the superhorizontal distribution (structural)", ok);
    if (!ok)
      return reject("distribution failed the structural superhorizontal checks", hd.g1.col(0));
  }

  verdict.canonical = true;
  return verdict;
}

AbelianIdealReport validate_abelian_ideal_lemmas(const LieAlgebraData& la, const RMat& r) {
  AbelianIdealReport rep;
  RMat rb = col_span_basis(r);
  rep.is_ideal = true;
  for (int i = 0; i < la.dim && rep.is_ideal; ++i)
    for (int j = 0; j < rb.cols(); ++j)
      if (!in_col_span(rb, la.bracket(la.basis_vector(i), RVec(rb.col(j))))) {
        rep.is_ideal = false;
        break;
      }
  if (!rep.is_ideal) throw InvalidIdeal("subspace is not an ideal");
  rep.is_abelian = true;
  for (int a = 0; a < rb.cols() && rep.is_abelian; ++a)
    for (int b = 0; b < rb.cols(); ++b)
      if (!is_zero_vec(la.bracket(RVec(rb.col(a)), RVec(rb.col(b))))) {
        rep.is_abelian = false;
        break;
      }
  if (!rep.is_abelian) throw InvalidIdeal("ideal is not abelian");

  if (la.v_basis && la.v_basis->cols() > 0) {
    RMat meet = intersect_col_spans(rb, *la.v_basis);
    rep.effective_ok = meet.cols() == 0;
  }

  // [g,g] ∩ r vs [r,g]
  RMat derived = derived_subalgebra(la);
  RMat lhs = intersect_col_spans(derived, rb);
  std::vector<RVec> rg;
  for (int j = 0; j < rb.cols(); ++j)
    for (int i = 0; i < la.dim; ++i) {
      RVec br = la.bracket(RVec(rb.col(j)), la.basis_vector(i));
      if (!is_zero_vec(br)) rg.push_back(br);
    }
  RMat rhs = col_span_basis(columns(rg, la.dim));
  rep.lhs_dim = static_cast<int>(lhs.cols());
  rep.rhs_dim = static_cast<int>(rhs.cols());
  rep.bracket_identity_ok = same_col_span(lhs, rhs);
  return rep;
}

ForstnericReport check_forstneric_assumption(const ChartDistribution& cd,
                                             int samples_per_axis) {
  ForstnericReport rep;
  int n = cd.ambient, d = cd.rank;
  std::vector<std::vector<int>> subsets;
  std::vector<int> cur;
  std::function<void(int)> gen = [&](int start) {
    if (static_cast<int>(cur.size()) == d) {
      subsets.push_back(cur);
      return;
    }
    for (int c = start; c < n; ++c) {
      cur.push_back(c);
      gen(c + 1);
      cur.pop_back();
    }
  };
  gen(0);

  // symbolic shortcut: a minor with constant nonzero determinant
  std::vector<MPoly> dets;
  for (const auto& cols : subsets) {
    std::vector<std::vector<MPoly>> m(d, std::vector<MPoly>(d));
    for (int i = 0; i < d; ++i)
      for (int j = 0; j < d; ++j) m[i][j] = cd.frame[i][cols[j]];
    MPoly det = poly_det(m);
    dets.push_back(det);
    if (det.is_constant() && !det.is_zero()) {
      rep.satisfied = true;
      rep.proven = true;
      rep.minor_cols = cols;
      rep.min_abs_det = std::abs(det.eval(Eigen::VectorXcd::Zero(n)));
      return rep;
    }
  }

  // sampling: cannot prove nonvanishing, and says so
  std::vector<std::complex<double>> axis;
  for (int s = 0; s < samples_per_axis; ++s) {
    double t = samples_per_axis == 1 ? 0.0 : -1.0 + 2.0 * s / (samples_per_axis - 1);
    axis.push_back(std::complex<double>(t * cd.box, 0.29 * t * cd.box));
  }
  double best_min = -1.0;
  for (size_t si = 0; si < subsets.size(); ++si) {
    double min_abs = 1e300;
    Eigen::VectorXcd argmin;
    std::vector<int> idx(n, 0);
    for (;;) {
      Eigen::VectorXcd z(n);
      for (int v = 0; v < n; ++v) z[v] = axis[idx[v]];
      double a = std::abs(dets[si].eval(z));
      if (a < min_abs) {
        min_abs = a;
        argmin = z;
      }
      int v = 0;
      for (; v < n; ++v) {
        if (++idx[v] < samples_per_axis) break;
        idx[v] = 0;
      }
      if (v == n) break;
    }
    if (min_abs > best_min) {
      best_min = min_abs;
      rep.minor_cols = subsets[si];
      rep.min_abs_det = min_abs;
      rep.zero_point = min_abs < 1e-12 ? std::optional<Eigen::VectorXcd>(argmin) : std::nullopt;
    }
  }
  rep.proven = false;
  rep.satisfied = best_min > 1e-12;
  return rep;
}

CNResult compute_CN(const ChartDistribution& cd, int level, int phase_samples) {
  CNResult out;
  out.level = level;
  int n = cd.ambient, d = cd.rank;
  // (pi_4^{-1} pi_3) = -(Pi_1^{-1} Pi_2)^t; polynomial entries require a
  // constant-determinant Pi_1
  std::vector<std::vector<MPoly>> pi1(d, std::vector<MPoly>(d));
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < d; ++j) pi1[i][j] = cd.frame[i][j];
  auto inv = poly_inverse_constant_det(pi1);
  if (!inv)
    throw UnboundedEntry("Pi_1 has nonconstant determinant; coframe entries are not polynomial");
  std::vector<MPoly> entries;
  for (int j = 0; j < n - d; ++j)
    for (int i = 0; i < d; ++i) {
      MPoly acc(n);
      for (int k = 0; k < d; ++k) acc += (*inv)[i][k] * cd.frame[k][d + j];
      entries.push_back(-acc);
    }

  double radius = std::ldexp(1.0, level);  // 2^N
  double sup = 0.0;
  // maximum principle: sample the distinguished boundary |z_k| = 2^N
  std::vector<int> idx(n, 0);
  for (;;) {
    Eigen::VectorXcd z(n);
    for (int v = 0; v < n; ++v)
      z[v] = std::polar(radius, 2.0 * M_PI * idx[v] / phase_samples);
    for (const auto& e : entries) sup = std::max(sup, std::abs(e.eval(z)));
    int v = 0;
    for (; v < n; ++v) {
      if (++idx[v] < phase_samples) break;
      idx[v] = 0;
    }
    if (v == n) break;
  }
  out.sup_estimate = sup;
  out.value = radius + d * radius * radius * sup * 1.01;
  return out;
}

}  // namespace subkoba
