#include <doctest.h>

#include <sstream>

#include "subkoba/curvature.hpp"
#include "subkoba/distances.hpp"

using namespace subkoba;

namespace {

ChartDistribution heisenberg() {
  std::istringstream is(R"(
ambient 3
rank 2
box 2
domain unbounded
term 0 0 1 0 0 0 0
term 1 1 1 0 0 0 0
term 1 2 1 0 1 0 0
completion ( 0 1 )
)");
  return parse_chart(is);
}

ChartDistribution disc_chart() {
  std::istringstream is(R"(
ambient 1
rank 1
box 1
domain 1
term 0 0 1 0 0
)");
  return parse_chart(is);
}

ChartDistribution heisenberg_x1_only() {
  std::istringstream is(R"(
ambient 3
rank 1
box 2
domain unbounded
term 0 0 1 0 0 0 0
)");
  return parse_chart(is);
}

Eigen::VectorXcd pt3(std::complex<double> a, std::complex<double> b, std::complex<double> c) {
  Eigen::VectorXcd z(3);
  z << a, b, c;
  return z;
}

Eigen::VectorXcd pt1(std::complex<double> a) {
  Eigen::VectorXcd z(1);
  z << a;
  return z;
}

MPoly mono(const RationalComplex& c, int deg) {
  MPoly p(1);
  MPoly::Exponents e(1, deg);
  p.add_term(e, c);
  return p;
}

double value_of(const KobayashiOutcome& out) {
  REQUIRE(std::holds_alternative<DiscChain>(out));
  return std::get<DiscChain>(out).value;
}

}  // namespace

TEST_CASE("poincare distance") {
  CHECK(poincare_distance(0.0, 0.5) == doctest::Approx(std::log(3.0)).epsilon(1e-12));
  CHECK(poincare_distance({0.3, -0.2}, {0.3, -0.2}) == 0.0);
  // geodesic additivity along a radius
  double lhs = poincare_distance(0.0, 0.7);
  double rhs = poincare_distance(0.0, 0.4) + poincare_distance(0.4, 0.7);
  CHECK(lhs == doctest::Approx(rhs).epsilon(1e-12));
  CHECK_THROWS_AS(poincare_distance(0.0, 1.0), DomainError);
}

TEST_CASE("horizontal discs: Heisenberg closed forms, exact") {
  ChartDistribution cd = heisenberg();
  // f1 = R z, f2 = 0 -> (Rz, 0, 0)
  std::vector<MPoly> free1 = {mono(RationalComplex(Rational(1000)), 1), MPoly(1)};
  HorizontalDisc d1 = horizontal_disc_from_free_part(cd, free1, CVec::Zero(3));
  CHECK(d1.components[2].is_zero());
  CHECK(d1.horizontality_residual == 0.0);

  // f1 = z, f2 = z -> f3 = z^2/2
  std::vector<MPoly> free2 = {mono(RationalComplex(Rational(1)), 1),
                              mono(RationalComplex(Rational(1)), 1)};
  HorizontalDisc d2 = horizontal_disc_from_free_part(cd, free2, CVec::Zero(3));
  CHECK(d2.components[2] == mono(RationalComplex(Rational(1, 2)), 2));
  CHECK(d2.horizontality_residual == 0.0);

  // constant free part -> constant disc
  std::vector<MPoly> free3 = {MPoly(1), MPoly(1)};
  CVec z0(3);
  z0 << RationalComplex(Rational(1, 2)), RationalComplex(Rational(-1, 3)),
      RationalComplex(Rational(2));
  HorizontalDisc d3 = horizontal_disc_from_free_part(cd, free3, z0);
  for (int i = 0; i < 3; ++i) CHECK(d3.components[i].is_constant());
  CHECK(d3.eval(0.7)[2] == std::complex<double>(2.0, 0.0));
}

TEST_CASE("horizontal disc on the Engel-type chart (nested triangular lift)") {
  std::istringstream is(R"(
ambient 4
rank 2
box 1
domain unbounded
term 0 0 1 0 0 0 0 0
term 1 1 1 0 0 0 0 0
term 1 2 1 0 1 0 0 0
term 1 3 1 0 0 0 1 0
)");
  ChartDistribution cd = parse_chart(is);
  // f1 = z, f2 = z: f3 = z^2/2, f4 = int f3 f2' = z^3/6
  std::vector<MPoly> free2 = {mono(RationalComplex(Rational(1)), 1),
                              mono(RationalComplex(Rational(1)), 1)};
  HorizontalDisc d = horizontal_disc_from_free_part(cd, free2, CVec::Zero(4));
  CHECK(d.components[2] == mono(RationalComplex(Rational(1, 2)), 2));
  CHECK(d.components[3] == mono(RationalComplex(Rational(1, 6)), 3));
  CHECK(d.horizontality_residual < 1e-14);
}

TEST_CASE("kobayashi upper: disc fixture calibrates to ln 3") {
  ChartDistribution cd = disc_chart();
  KobayashiConfig cfg;
  KobayashiOutcome out = kobayashi_upper(cd, pt1(0.0), pt1(0.5), cfg);
  REQUIRE(std::holds_alternative<DiscChain>(out));
  const DiscChain& chain = std::get<DiscChain>(out);
  CHECK(chain.value == doctest::Approx(std::log(3.0)).epsilon(1e-3));
  CHECK(chain.endpoint_error < 1e-6);
  CHECK(chain.max_residual <= 1e-8);
  // the identity disc: single link with |linear coefficient| ~ 1
  REQUIRE(chain.links.size() == 1);
  Eigen::VectorXcd dz = chain.links[0].disc.derivative_at_zero();
  CHECK(std::abs(dz[0]) == doctest::Approx(1.0).epsilon(1e-6));
}

TEST_CASE("kobayashi upper: degenerating Heisenberg estimate") {
  ChartDistribution cd = heisenberg();
  KobayashiConfig cfg;
  KobayashiOutcome out = kobayashi_upper(cd, pt3(0, 0, 0), pt3(1, 0, 0), cfg);
  double v = value_of(out);
  CHECK(v < 0.01);  // radius-1000 disc family
  CHECK(v > 0.0);

  // x = y: zero with empty chain
  KobayashiOutcome same = kobayashi_upper(cd, pt3(0.3, 0, 0), pt3(0.3, 0, 0), cfg);
  REQUIRE(std::holds_alternative<DiscChain>(same));
  CHECK(std::get<DiscChain>(same).value == 0.0);
  CHECK(std::get<DiscChain>(same).links.empty());
}

TEST_CASE("kobayashi upper: unreachable pairs reported explicitly") {
  std::istringstream is(R"(
ambient 2
rank 1
box 1
domain unbounded
term 0 0 1 0 0 0
)");
  ChartDistribution cd = parse_chart(is);
  KobayashiConfig cfg;
  cfg.chow.max_waypoints = 8;
  Eigen::VectorXcd x(2), y(2);
  x << 0.0, 0.0;
  y << 0.0, 1.0;
  KobayashiOutcome out = kobayashi_upper(cd, x, y, cfg);
  CHECK(std::holds_alternative<Unreachable>(out));
}

TEST_CASE("kobayashi invariants: monotonicity, distance decreasing, triangle") {
  KobayashiConfig cfg;
  // enlargement: frame {X1} vs {X1, X2} on the same chart and pair
  double small_frame = value_of(kobayashi_upper(heisenberg_x1_only(), pt3(0, 0, 0),
                                                pt3(1, 0, 0), cfg));
  double big_frame = value_of(kobayashi_upper(heisenberg(), pt3(0, 0, 0), pt3(1, 0, 0), cfg));
  CHECK(small_frame >= big_frame - 1e-5);  // estimator noise between two searches

  // distance decreasing under z -> r z on the disc fixture
  ChartDistribution disc = disc_chart();
  double d_pre = value_of(kobayashi_upper(disc, pt1(0.0), pt1(0.5), cfg));
  double d_post = value_of(kobayashi_upper(disc, pt1(0.0), pt1(0.5 * 0.6), cfg));
  CHECK(d_post <= d_pre + 1e-9);

  // triangle inequality through a waypoint
  double direct = value_of(kobayashi_upper(disc, pt1(0.0), pt1(0.5), cfg));
  double leg1 = value_of(kobayashi_upper(disc, pt1(0.0), pt1(0.25), cfg));
  double leg2 = value_of(kobayashi_upper(disc, pt1(0.25), pt1(0.5), cfg));
  CHECK(direct <= leg1 + leg2 + 1e-3);
}

TEST_CASE("infinitesimal metric: disc normalization and homogeneity") {
  ChartDistribution disc = disc_chart();
  KobayashiConfig cfg;
  InfinitesimalOutcome out = infinitesimal_metric_upper(disc, pt1(0.0), pt1(1.0), cfg);
  REQUIRE(std::holds_alternative<InfinitesimalEstimate>(out));
  CHECK(std::get<InfinitesimalEstimate>(out).value == doctest::Approx(2.0).epsilon(1e-3));

  // scaling k(2v) = 2 k(v)
  InfinitesimalOutcome out2 = infinitesimal_metric_upper(disc, pt1(0.0), pt1(2.0), cfg);
  CHECK(std::get<InfinitesimalEstimate>(out2).value ==
        doctest::Approx(2.0 * std::get<InfinitesimalEstimate>(out).value).epsilon(1e-9));

  // Heisenberg dz1 at 0: <= 2/R -> 0
  ChartDistribution h = heisenberg();
  InfinitesimalOutcome out3 = infinitesimal_metric_upper(h, pt3(0, 0, 0), pt3(1, 0, 0), cfg);
  CHECK(std::get<InfinitesimalEstimate>(out3).value <= 2.0 / 1000.0 + 1e-12);

  CHECK_THROWS_AS(infinitesimal_metric_upper(h, pt3(0, 0, 0), pt3(0, 0, 1), cfg), DomainError);
}

TEST_CASE("short-distance consistency of distance and infinitesimal metric") {
  ChartDistribution disc = disc_chart();
  KobayashiConfig cfg;
  InfinitesimalOutcome kf = infinitesimal_metric_upper(disc, pt1(0.0), pt1(1.0), cfg);
  double k = std::get<InfinitesimalEstimate>(kf).value;
  double prev_gap = 1e9;
  for (double eps : {0.2, 0.1, 0.05}) {
    double d = value_of(kobayashi_upper(disc, pt1(0.0), pt1(eps), cfg));
    double ratio = d / (eps * k);
    CHECK(std::abs(ratio - 1.0) < 0.05);
    CHECK(std::abs(ratio - 1.0) < prev_gap + 1e-12);
    prev_gap = std::abs(ratio - 1.0);
  }
}

TEST_CASE("cc distance: disc fixture with the Poincare metric") {
  ChartDistribution disc = disc_chart();
  MetricOnD metric;
  metric.kind = MetricOnD::Kind::PoincareDisc;
  metric.curvature = -1.0;
  CCConfig cfg;
  CCOutcome out = cc_distance_upper(disc, metric, pt1(0.0), pt1(0.5), cfg);
  REQUIRE(std::holds_alternative<HorizontalPath>(out));
  const HorizontalPath& path = std::get<HorizontalPath>(out);
  CHECK(path.length == doctest::Approx(std::log(3.0)).epsilon(1e-2));
  CHECK(path.endpoint_error < 1e-6);

  // trivial pair
  CCOutcome same = cc_distance_upper(disc, metric, pt1(0.2), pt1(0.2), cfg);
  CHECK(std::get<HorizontalPath>(same).length == 0.0);
}

TEST_CASE("cc distance: su(1,1) scaling (curvature -1/2) gives sqrt(2) ln 3") {
  ChartDistribution disc = disc_chart();
  MetricOnD metric;
  metric.kind = MetricOnD::Kind::PoincareDisc;
  metric.curvature = -0.5;
  CCConfig cfg;
  CCOutcome out = cc_distance_upper(disc, metric, pt1(0.0), pt1(0.5), cfg);
  double rho = std::get<HorizontalPath>(out).length;
  CHECK(rho == doctest::Approx(std::sqrt(2.0) * std::log(3.0)).epsilon(1e-2));
}

TEST_CASE("cc distance: Heisenberg dilation law within 5 percent") {
  ChartDistribution h = heisenberg();
  MetricOnD metric;  // frame-euclidean
  CCConfig cfg;
  auto value = [&](std::complex<double> z3) {
    CCOutcome out = cc_distance_upper(h, metric, pt3(0, 0, 0), pt3(0, 0, z3), cfg);
    REQUIRE(std::holds_alternative<HorizontalPath>(out));
    return std::get<HorizontalPath>(out).length;
  };
  double base = value(1.0);
  CHECK(base > 0.0);
  for (double lambda : {0.5, 2.0}) {
    CAPTURE(lambda);
    double dilated = value(lambda * lambda * 1.0);  // delta_lambda scales z3 by lambda^2
    CHECK(dilated / base == doctest::Approx(lambda).epsilon(0.05));
  }
}

TEST_CASE("schwarz lower bound: tight on the su(1,1) disc fixture") {
  // certificate from the curvature module
  BasisData bd = build_normalized_basis(build_root_system(CartanType::parse("A1")));
  RealFormData rf = apply_real_form(bd, parity_epsilon(bd, {}));
  GradedDecomposition gd = grade_canonical(rf, {});
  SphereOptConfig opt;
  CurvatureCertificate cert = certify_negative_bound(rf, gd, opt);

  double rho = std::sqrt(2.0) * std::log(3.0);  // derived CC value at curvature -1/2
  SchwarzBound bound = schwarz_lower_bound(cert.c, rho, true);
  CHECK_FALSE(bound.heuristic);
  CHECK(std::abs(bound.value - std::log(3.0)) < 1e-6);

  CHECK(schwarz_lower_bound(0.25, 2.0, true).value == doctest::Approx(1.0));
  CHECK(schwarz_lower_bound(0.37, 0.0, true).value == 0.0);
  CHECK(schwarz_lower_bound(0.5, 1.0, false).heuristic);
  CHECK_THROWS_AS(schwarz_lower_bound(0.0, 1.0, true), InvalidCertificate);
  CHECK_THROWS_AS(schwarz_lower_bound(-0.5, 1.0, true), InvalidCertificate);
}

TEST_CASE("chain links connect: consecutive endpoints match") {
  ChartDistribution cd = heisenberg();
  KobayashiConfig cfg;
  KobayashiOutcome out = kobayashi_upper(cd, pt3(0, 0, 0), pt3(0, 0, -0.04), cfg);
  REQUIRE(std::holds_alternative<DiscChain>(out));
  const DiscChain& chain = std::get<DiscChain>(out);
  REQUIRE(chain.links.size() >= 2);  // commutator target needs several discs
  Eigen::VectorXcd cur = chain.start;
  for (const auto& link : chain.links) {
    Eigen::VectorXcd at_zero = link.disc.eval(0.0);
    CHECK((at_zero - cur).cwiseAbs().maxCoeff() < 1e-10);
    cur = link.disc.eval(link.b);
  }
  CHECK((cur - chain.endpoint).cwiseAbs().maxCoeff() == 0.0);
}

TEST_CASE("schwarz bound from a certificate object") {
  BasisData bd = build_normalized_basis(build_root_system(CartanType::parse("A1")));
  RealFormData rf = apply_real_form(bd, parity_epsilon(bd, {}));
  GradedDecomposition gd = grade_canonical(rf, {});
  SphereOptConfig opt;
  CurvatureCertificate cert = certify_negative_bound(rf, gd, opt);
  SchwarzBound b = schwarz_lower_bound(cert, std::sqrt(2.0) * std::log(3.0), true);
  CHECK(std::abs(b.value - std::log(3.0)) < 1e-6);
}
