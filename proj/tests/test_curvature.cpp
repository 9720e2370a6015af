#include <doctest.h>
#include <random>

#include "subkoba/curvature.hpp"

using namespace subkoba;

namespace {

struct Fixture {
  BasisData bd;
  RealFormData rf;
  GradedDecomposition gd;
};

Fixture canonical(const char* label) {
  BasisData bd = build_normalized_basis(build_root_system(CartanType::parse(label)));
  RealFormData rf = apply_real_form(bd, parity_epsilon(bd, {}));
  GradedDecomposition gd = grade_canonical(rf, {});
  return {bd, rf, gd};
}

CVec root_vec(const BasisData& bd, const Eigen::VectorXi& coords) {
  int a = bd.roots.index_of(coords);
  REQUIRE(a >= 0);
  CVec v = CVec::Zero(bd.dim);
  v[bd.root_vector_index(a)] = RationalComplex(Rational(1));
  return v;
}

// random vector in g_{-1} with rational coordinates
CVec random_level1(const Fixture& f, RationalSampler& sampler) {
  CVec v = CVec::Zero(f.bd.dim);
  bool nonzero = false;
  for (int a = 0; a < f.bd.roots.num_roots(); ++a) {
    if (f.gd.level_of_root[a] != -1) continue;
    RationalComplex c = sampler.next_complex(4, 3);
    v[f.bd.root_vector_index(a)] = c;
    nonzero |= !c.is_zero();
  }
  if (!nonzero) v[f.bd.root_vector_index(f.gd.roots_at_level(-1)[0])] = RationalComplex(Rational(1));
  return v;
}

}  // namespace

TEST_CASE("invariant metric values") {
  Fixture f = canonical("A1");
  Eigen::VectorXi m(1);
  m << -1;
  CVec e = root_vec(f.bd, m);
  // b_alpha = 1 for A1, eps = +1: g(e_{-a}, e_{-a}) = 1
  CHECK(invariant_metric(f.rf, f.gd, e, e) == RationalComplex(Rational(1)));

  Fixture g = canonical("A2");
  Eigen::VectorXi m1(2), m2(2);
  m1 << -1, 0;
  m2 << 0, -1;
  CVec e1 = root_vec(g.bd, m1), e2 = root_vec(g.bd, m2);
  CHECK(invariant_metric(g.rf, g.gd, e1, e2) == RationalComplex());
  // positive definiteness on random rational vectors
  RationalSampler sampler(11);
  for (int trial = 0; trial < 50; ++trial) {
    CVec z = random_level1(g, sampler);
    RationalComplex gz = invariant_metric(g.rf, g.gd, z, z);
    CHECK(gz.im.is_zero());
    CHECK(gz.re.sign() >= 0);
    if (!is_zero_vec(z)) CHECK(gz.re.sign() > 0);
  }
  // sesquilinearity: g(z, w) = conj(g(w, z))
  CVec z = random_level1(g, sampler), w = random_level1(g, sampler);
  CHECK(invariant_metric(g.rf, g.gd, z, w) == conj(invariant_metric(g.rf, g.gd, w, z)));
  // vectors outside g_{-1} rejected
  Eigen::VectorXi p1(2);
  p1 << 1, 0;
  CHECK_THROWS_AS(invariant_metric(g.rf, g.gd, root_vec(g.bd, p1), e1), DomainError);
}

TEST_CASE("sectional curvature: su(1,1) anchor -1/2 and homogeneity") {
  Fixture f = canonical("A1");
  Eigen::VectorXi m(1);
  m << -1;
  CVec e = root_vec(f.bd, m);
  CHECK(sectional_curvature(f.rf, f.gd, e) == Rational(-1, 2));

  // H(lambda zeta) = H(zeta)
  CVec e2 = e;
  for (int i = 0; i < f.bd.dim; ++i) e2[i] = e[i] * RationalComplex(Rational(2), Rational(3));
  CHECK(sectional_curvature(f.rf, f.gd, e2) == Rational(-1, 2));

  CVec zero = CVec::Zero(f.bd.dim);
  CHECK_THROWS_AS(sectional_curvature(f.rf, f.gd, zero), DomainError);
}

TEST_CASE("sectional curvature: su(2,1) exact rational values") {
  Fixture f = canonical("A2");
  Eigen::VectorXi m1(2);
  m1 << -1, 0;
  CVec e1 = root_vec(f.bd, m1);
  Rational h = sectional_curvature(f.rf, f.gd, e1);
  CHECK(h == Rational(-1, 3));  // -alpha(h_alpha) for A2
  CHECK(h.sign() < 0);

  // scale invariance on random rational vectors
  RationalSampler sampler(3);
  for (int trial = 0; trial < 20; ++trial) {
    CVec z = random_level1(f, sampler);
    CVec z2 = z;
    for (int i = 0; i < f.bd.dim; ++i) z2[i] = z[i] * RationalComplex(Rational(-5), Rational(2));
    CHECK(sectional_curvature(f.rf, f.gd, z) == sectional_curvature(f.rf, f.gd, z2));
  }
}

TEST_CASE("bisectional curvature: symmetry and diagonal") {
  Fixture f = canonical("A2");
  RationalSampler sampler(17);
  for (int trial = 0; trial < 10; ++trial) {
    CVec z = random_level1(f, sampler), w = random_level1(f, sampler);
    CHECK(bisectional_curvature(f.rf, f.gd, z, w) == bisectional_curvature(f.rf, f.gd, w, z));
    CHECK(bisectional_curvature(f.rf, f.gd, z, z) == sectional_curvature(f.rf, f.gd, z));
  }
  // off-diagonal value on the simple-root pair: exact rational +1/6.
  // (B(h_{a1}, h_{a2}) = -1/6 < 0; the bracket lands in sqrt(-1) v, but an
  // off-diagonal Killing pairing of distinct elements can be negative, so the
  // bisectional curvature of distinct directions is positive here.)
  Eigen::VectorXi m1(2), m2(2);
  m1 << -1, 0;
  m2 << 0, -1;
  Rational bis = bisectional_curvature(f.rf, f.gd, root_vec(f.bd, m1), root_vec(f.bd, m2));
  CHECK(bis == Rational(1, 6));

  Fixture f1 = canonical("A1");
  Eigen::VectorXi m(1);
  m << -1;
  CVec e = root_vec(f1.bd, m);
  CHECK(bisectional_curvature(f1.rf, f1.gd, e, e) == Rational(-1, 2));
}

TEST_CASE("curvature invariant: [zeta, sigma(zeta)] lies in sqrt(-1) v") {
  for (const char* label : {"A1", "A2", "A3"}) {
    CAPTURE(label);
    Fixture f = canonical(label);
    // sqrt(-1) v basis over gC: i * v_basis columns
    CMat iv(f.bd.dim, f.rf.v_basis.cols());
    for (int j = 0; j < iv.cols(); ++j)
      for (int i = 0; i < f.bd.dim; ++i) iv(i, j) = f.rf.v_basis(i, j) * rc_i();
    // membership over the rationals: realify
    RMat iv_real(2 * f.bd.dim, iv.cols());
    for (int j = 0; j < iv.cols(); ++j) iv_real.col(j) = realify(CVec(iv.col(j)));
    RationalSampler sampler(23);
    for (int trial = 0; trial < 200; ++trial) {
      CVec z = random_level1(f, sampler);
      CVec w = f.bd.bracket(z, f.rf.sigma(z));
      CHECK(in_col_span(iv_real, realify(w)));
    }
  }
}

TEST_CASE("curvature negativity sampled exactly at 10^4 rational points") {
  Fixture f = canonical("A2");
  RationalSampler sampler(29);
  for (int trial = 0; trial < 10000; ++trial) {
    CVec z = random_level1(f, sampler);
    if (is_zero_vec(z)) continue;
    CHECK(sectional_curvature(f.rf, f.gd, z).sign() < 0);
  }
}

TEST_CASE("tensor route equals bracket route exactly") {
  Fixture f1 = canonical("A1");
  CurvatureTensor t1 = curvature_tensor(f1.rf, f1.gd);
  Eigen::VectorXi m(1);
  m << -1;
  CVec e = root_vec(f1.bd, m);
  CHECK(tensor_bisectional(t1, f1.rf, f1.gd, e, e) == Rational(-1, 2));

  Fixture f = canonical("A2");
  CurvatureTensor t = curvature_tensor(f.rf, f.gd);
  RationalSampler sampler(31);
  for (int trial = 0; trial < 20; ++trial) {
    CVec z = random_level1(f, sampler), w = random_level1(f, sampler);
    CHECK(tensor_bisectional(t, f.rf, f.gd, z, w) == bisectional_curvature(f.rf, f.gd, z, w));
  }
}

TEST_CASE("tensor components: compact pairs enter the plus-sign sum") {
  Fixture f = canonical("A2");
  CurvatureTensor t = curvature_tensor(f.rf, f.gd);
  Eigen::VectorXi gmm(2);
  gmm << 1, 1;  // the compact root a1+a2 at level 2
  int gamma = f.bd.roots.index_of(gmm);
  bool found_compact = false, found_noncompact = false;
  for (const auto& e : t.entries) {
    if (e.root_a == gamma && e.root_b == gamma) {
      CHECK(e.sign == 1);
      found_compact = true;
    }
    if (f.rf.eps[e.root_a] == 1 && f.rf.eps[e.root_b] == 1) {
      CHECK(e.sign == -1);
      found_noncompact = true;
    }
  }
  CHECK(found_compact);
  CHECK(found_noncompact);
}

TEST_CASE("certify_negative_bound: su(1,1) c = 1/2 within 1e-10") {
  Fixture f = canonical("A1");
  SphereOptConfig cfg;
  CurvatureCertificate cert = certify_negative_bound(f.rf, f.gd, cfg);
  CHECK(cert.c == doctest::Approx(0.5).epsilon(1e-10));
  CHECK(cert.spread < 1e-10);
  CHECK(cert.exact_value == Rational(-1, 2));  // H is constant, exact anchor lands on it
}

TEST_CASE("certify_negative_bound: su(2,1) c = 1/12, su(2,2) c = 1/40") {
  // derived oracle: max over the moduli simplex of the dual-Gram quadratic
  // (the phase torus drops out because no difference of two distinct level-1
  // roots is a root in type A)
  Fixture f2 = canonical("A2");
  SphereOptConfig cfg;
  CurvatureCertificate cert2 = certify_negative_bound(f2.rf, f2.gd, cfg);
  CHECK(cert2.c == doctest::Approx(1.0 / 12.0).epsilon(1e-9));
  CHECK(cert2.spread < 1e-8);
  CHECK(cert2.exact_value.sign() < 0);

  Fixture f3 = canonical("A3");
  CurvatureCertificate cert3 = certify_negative_bound(f3.rf, f3.gd, cfg);
  CHECK(cert3.c == doctest::Approx(1.0 / 40.0).epsilon(1e-9));
  CHECK(cert3.spread < 1e-8);
  CHECK(cert3.exact_value.sign() < 0);
}

TEST_CASE("certify_negative_bound: su(2) compact form fails with witness") {
  BasisData bd = build_normalized_basis(build_root_system(CartanType::parse("A1")));
  RealFormData rf = apply_real_form(bd, compact_epsilon(bd));
  GradedDecomposition gd = grade(bd, grading_element(bd.roots, {}), rf);
  CHECK_FALSE(gd.parity_consistent);
  SphereOptConfig cfg;
  CHECK_THROWS_AS(certify_negative_bound(rf, gd, cfg), NotNegative);
  try {
    certify_negative_bound(rf, gd, cfg);
  } catch (const NotNegative& e) {
    CHECK(e.witness.norm() > 0);
  }
}

TEST_CASE("evaluator gradient matches finite differences") {
  Fixture f = canonical("A2");
  CurvatureEvaluator eval(f.rf, f.gd);
  Eigen::VectorXd x(2 * eval.complex_dim());
  x << 0.3, -0.7, 0.45, 0.2;
  Eigen::VectorXd g = eval.gradient(x);
  for (int c = 0; c < x.size(); ++c) {
    Eigen::VectorXd xp = x, xm = x;
    xp[c] += 1e-6;
    xm[c] -= 1e-6;
    double fd = (eval.value(xp) - eval.value(xm)) / 2e-6;
    CHECK(g[c] == doctest::Approx(fd).epsilon(1e-5));
  }
}

TEST_CASE("certificate bound dominates sampled directions: H <= -c + tol") {
  Fixture f = canonical("A3");
  SphereOptConfig cfg;
  CurvatureCertificate cert = certify_negative_bound(f.rf, f.gd, cfg);
  CurvatureEvaluator eval(f.rf, f.gd);
  std::mt19937_64 rng(99);
  std::normal_distribution<double> gauss(0.0, 1.0);
  Eigen::MatrixXd gram = eval.metric_gram_real();
  for (int trial = 0; trial < 2000; ++trial) {
    Eigen::VectorXd x(2 * eval.complex_dim());
    for (int i = 0; i < x.size(); ++i) x[i] = gauss(rng);
    x /= std::sqrt(x.dot(gram * x));
    CHECK(eval.value(x) <= -cert.c + 1e-9);
  }
}
