#include <doctest.h>

#include <sstream>

#include "subkoba/grading.hpp"

using namespace subkoba;

namespace {

BasisData basis(const char* label) {
  return build_normalized_basis(build_root_system(CartanType::parse(label)));
}

CVec root_vec(const BasisData& bd, int root_index) {
  CVec v = CVec::Zero(bd.dim);
  v[bd.root_vector_index(root_index)] = RationalComplex(Rational(1));
  return v;
}

}  // namespace

TEST_CASE("real form su(1,1): q two-dimensional, B positive definite on q") {
  BasisData bd = basis("A1");
  RealFormData rf = apply_real_form(bd, {1});
  CHECK(rf.q_basis.cols() == 2);
  CHECK(rf.k_basis.cols() == 1);
  CHECK(is_positive_definite_exact(rf.gram_q));
  CHECK(is_negative_definite_exact(rf.gram_k));
}

TEST_CASE("real form su(2): compact, q = 0") {
  BasisData bd = basis("A1");
  RealFormData rf = apply_real_form(bd, compact_epsilon(bd));
  CHECK(rf.q_basis.cols() == 0);
  CHECK(rf.k_basis.cols() == 3);
  CHECK(is_negative_definite_exact(rf.gram_k));
}

TEST_CASE("real form su(2,1): sigma is an involutive antilinear automorphism") {
  BasisData bd = basis("A2");
  std::vector<int> eps = parity_epsilon(bd, {});
  CHECK(eps == std::vector<int>{1, 1, -1});  // lex order: a1, a1+a2, a2 -> +1,-1,+1?
  RealFormData rf = apply_real_form(bd, eps);
  CHECK(rf.k_basis.cols() == 4);  // s(u(2)+u(1)): dim 4
  CHECK(rf.q_basis.cols() == 4);
  // spot check sigma on a mixed vector: antilinearity
  RationalSampler sampler(7);
  CVec x = sampler.next_cvec(bd.dim);
  CVec sx = rf.sigma(rf.sigma(x));
  for (int i = 0; i < bd.dim; ++i) CHECK(sx[i] == x[i]);
  CVec ix = x;
  for (int i = 0; i < bd.dim; ++i) ix[i] = x[i] * rc_i();
  CVec lhs = rf.sigma(ix);
  CVec rhs = rf.sigma(x);
  for (int i = 0; i < bd.dim; ++i) CHECK(lhs[i] == rhs[i] * (-rc_i()));
}

TEST_CASE("inconsistent labeling rejected") {
  BasisData bd = basis("A2");
  CHECK_THROWS_AS(apply_real_form(bd, {1, 1, 1}), InvalidRealForm);
  CHECK_THROWS_AS(apply_real_form(bd, {1, 1}), InvalidRealForm);
}

TEST_CASE("real-form suite: su(1,1), su(2,1), su(2,2) exact definiteness") {
  struct Fixture {
    const char* type;
    std::vector<int> v;
  } fixtures[] = {{"A1", {}}, {"A2", {}}, {"A3", {}}};
  for (const auto& f : fixtures) {
    CAPTURE(f.type);
    BasisData bd = basis(f.type);
    RealFormData rf = apply_real_form(bd, parity_epsilon(bd, f.v));
    CHECK(is_negative_definite_exact(rf.gram_k));
    CHECK(is_positive_definite_exact(rf.gram_q));
    // theta fixes k and negates q
    for (int j = 0; j < rf.k_basis.cols(); ++j) {
      CVec t = rf.theta(CVec(rf.k_basis.col(j)));
      for (int i = 0; i < bd.dim; ++i) CHECK(t[i] == rf.k_basis.col(j)[i]);
    }
    for (int j = 0; j < rf.q_basis.cols(); ++j) {
      CVec t = rf.theta(CVec(rf.q_basis.col(j)));
      for (int i = 0; i < bd.dim; ++i) CHECK(t[i] == -rf.q_basis.col(j)[i]);
    }
    // sigma(e_alpha) = eps_alpha e_{-alpha} on every root
    for (int a = 0; a < bd.roots.num_roots(); ++a) {
      CVec s = rf.sigma(root_vec(bd, a));
      CVec expect = root_vec(bd, bd.roots.negative_of(a));
      for (int i = 0; i < bd.dim; ++i)
        CHECK(s[i] == expect[i] * RationalComplex(Rational(rf.eps[a])));
    }
  }
}

TEST_CASE("real form serialization roundtrip") {
  BasisData bd = basis("A2");
  RealFormData rf = apply_real_form(bd, parity_epsilon(bd, {}));
  std::ostringstream os;
  save_real_form(os, rf);
  std::istringstream is(os.str());
  RealFormData back = load_real_form(is);
  CHECK(back.eps == rf.eps);
}

TEST_CASE("grading element and levels") {
  RootDatum a2 = build_root_system(CartanType::parse("A2"));
  RVec t = grading_element(a2, {});
  BasisData bd = basis("A2");
  GradedDecomposition gd = grade(bd, t);
  // levels (a1, a2, a1+a2) = (1, 1, 2)
  Eigen::VectorXi a1(2), al2(2), a12(2);
  a1 << 1, 0;
  al2 << 0, 1;
  a12 << 1, 1;
  CHECK(gd.level_of_root[a2.index_of(a1)] == 1);
  CHECK(gd.level_of_root[a2.index_of(al2)] == 1);
  CHECK(gd.level_of_root[a2.index_of(a12)] == 2);
  CHECK(gd.depth == 2);

  RVec tv = grading_element(a2, {0});
  GradedDecomposition gdv = grade(bd, tv);
  CHECK(gdv.level_of_root[a2.index_of(a1)] == 0);
  CHECK(gdv.level_of_root[a2.index_of(al2)] == 1);
  CHECK(gdv.level_of_root[a2.index_of(a12)] == 1);

  RootDatum a1rd = build_root_system(CartanType::parse("A1"));
  BasisData bd1 = basis("A1");
  GradedDecomposition gd1 = grade(bd1, grading_element(a1rd, {}));
  CHECK(gd1.depth == 1);

  // non-integral grading element rejected
  RVec bad(2);
  bad[0] = Rational(1, 3);
  bad[1] = Rational(0);
  CHECK_THROWS_AS(grade(bd, bad), InvalidGradingElement);
}

TEST_CASE("grading dims: su(2,1)/T is (1,2,2,2,1); direct sum reconstructs") {
  BasisData bd = basis("A2");
  RealFormData rf = apply_real_form(bd, parity_epsilon(bd, {}));
  GradedDecomposition gd = grade_canonical(rf, {});
  CHECK(gd.dim_level(-2) == 1);
  CHECK(gd.dim_level(-1) == 2);
  CHECK(gd.dim_level(0) == 2);
  CHECK(gd.dim_level(1) == 2);
  CHECK(gd.dim_level(2) == 1);
  CHECK(gd.parity_consistent);
  int total = 0;
  for (int l = -gd.depth; l <= gd.depth; ++l) total += gd.dim_level(l);
  CHECK(total == bd.dim);

  BasisData bd1 = basis("A1");
  RealFormData rf1 = apply_real_form(bd1, parity_epsilon(bd1, {}));
  GradedDecomposition gd1 = grade_canonical(rf1, {});
  CHECK(gd1.dim_level(-1) == 1);
  CHECK(gd1.dim_level(0) == 1);
  CHECK(gd1.dim_level(1) == 1);
}

TEST_CASE("superhorizontal subspaces") {
  BasisData bd = basis("A2");
  RealFormData rf = apply_real_form(bd, parity_epsilon(bd, {}));
  GradedDecomposition gd = grade_canonical(rf, {});
  CMat h = superhorizontal(gd);
  CHECK(h.cols() == 2);
  // spans {e_{-a1}, e_{-a2}}
  Eigen::VectorXi m1(2), m2(2);
  m1 << -1, 0;
  m2 << 0, -1;
  CMat expect(bd.dim, 2);
  expect.col(0) = root_vec(bd, bd.roots.index_of(m1));
  expect.col(1) = root_vec(bd, bd.roots.index_of(m2));
  CHECK(same_col_span(h, expect));

  BasisData bd1 = basis("A1");
  RealFormData rf1 = apply_real_form(bd1, parity_epsilon(bd1, {}));
  GradedDecomposition gd1 = grade_canonical(rf1, {});
  CMat h1 = superhorizontal(gd1);
  CHECK(same_col_span(h1, gd1.g_minus()));  // whole g^-

  BasisData bd3 = basis("A3");
  RealFormData rf3 = apply_real_form(bd3, parity_epsilon(bd3, {}));
  GradedDecomposition gd3 = grade_canonical(rf3, {});
  CHECK(superhorizontal(gd3).cols() == 3);
}

TEST_CASE("bracket generation depths") {
  BasisData bd = basis("A2");
  RealFormData rf = apply_real_form(bd, parity_epsilon(bd, {}));
  GradedDecomposition gd = grade_canonical(rf, {});
  GenerationReport rep = check_bracket_generating(superhorizontal(gd), gd);
  CHECK(rep.generating);
  CHECK(rep.depth == 2);
  CHECK(rep.certificate.size() == 3);  // s0, s1, [s_i, s_j]

  // single root space alone does not generate
  Eigen::VectorXi m1(2);
  m1 << -1, 0;
  CMat sub(bd.dim, 1);
  sub.col(0) = root_vec(bd, bd.roots.index_of(m1));
  GenerationReport bad = check_bracket_generating(sub, gd);
  CHECK_FALSE(bad.generating);
  CHECK(bad.stabilized.cols() == 1);

  BasisData bd1 = basis("A1");
  RealFormData rf1 = apply_real_form(bd1, parity_epsilon(bd1, {}));
  GradedDecomposition gd1 = grade_canonical(rf1, {});
  CHECK(check_bracket_generating(superhorizontal(gd1), gd1).depth == 1);

  // su(2,2)/T generates at depth 3 (grading depth equals 3 there)
  BasisData bd3 = basis("A3");
  RealFormData rf3 = apply_real_form(bd3, parity_epsilon(bd3, {}));
  GradedDecomposition gd3 = grade_canonical(rf3, {});
  GenerationReport rep3 = check_bracket_generating(superhorizontal(gd3), gd3);
  CHECK(rep3.generating);
  CHECK(rep3.depth == gd3.depth);
}

TEST_CASE("graded bracket laws hold on flag gradings") {
  for (const char* label : {"A1", "A2", "A3"}) {
    CAPTURE(label);
    BasisData bd = basis(label);
    RealFormData rf = apply_real_form(bd, parity_epsilon(bd, {}));
    GradedDecomposition gd = grade_canonical(rf, {});
    GradedLawReport rep = validate_graded_brackets(as_leveled_algebra(gd));
    CHECK(rep.laws_hold);
    CHECK(rep.strictly_graded);
    CHECK(rep.violations.empty());
  }
}

TEST_CASE("graded bracket law violation is reported") {
  // Heisenberg bracket with a deliberately wrong level assignment:
  // x at level 1, y at level -1, z = [x,y] at level 3.
  LeveledAlgebra la;
  la.ambient_dim = 3;
  la.bracket = [](const CVec& x, const CVec& y) {
    CVec out = CVec::Zero(3);
    out[2] = x[0] * y[1] - x[1] * y[0];
    return out;
  };
  auto unit = [](int i) {
    CMat m(3, 1);
    for (int k = 0; k < 3; ++k) m(k, 0) = RationalComplex();
    m(i, 0) = RationalComplex(Rational(1));
    return m;
  };
  la.level_subspaces[1] = unit(0);
  la.level_subspaces[-1] = unit(1);
  la.level_subspaces[3] = unit(2);
  GradedLawReport rep = validate_graded_brackets(la);
  CHECK_FALSE(rep.laws_hold);
  CHECK_FALSE(rep.strictly_graded);
  CHECK(!rep.violations.empty());
}

TEST_CASE("superhorizontal uniqueness on canonical fixtures") {
  for (const char* label : {"A2", "A3"}) {
    CAPTURE(label);
    BasisData bd = basis(label);
    RealFormData rf = apply_real_form(bd, parity_epsilon(bd, {}));
    GradedDecomposition gd = grade_canonical(rf, {});
    UniquenessReport rep = check_superhorizontal_uniqueness(gd, rf);
    CHECK(rep.unique);
    CHECK(rep.generating_candidates == 1);
  }
}
