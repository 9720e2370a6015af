#include <doctest.h>

#include <sstream>

#include "subkoba/distances.hpp"
#include "subkoba/report.hpp"

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

}  // namespace

TEST_CASE("alg fixtures parse and build") {
  std::istringstream su21(R"(
# comment line
type A2
v_simple none
epsilon canonical
datum superhorizontal
)");
  AlgFixture fx = parse_alg(su21);
  CHECK(fx.kind == AlgFixture::Kind::Flag);
  CHECK(fx.epsilon == std::vector<int>{1, 1, -1});
  CHECK(fx.gd->depth == 2);
  CHECK_FALSE(fx.full_m);

  std::istringstream k1(R"(
type A2
datum full_m
)");
  AlgFixture fk = parse_alg(k1);
  CHECK(fk.full_m);
  CHECK(fk.datum.g1.cols() == fk.datum.m_basis.cols());

  std::istringstream sl2c("type complex A1\n");
  AlgFixture fc = parse_alg(sl2c);
  CHECK(fc.kind == AlgFixture::Kind::ComplexGroup);
  CHECK(fc.datum.algebra.dim == 6);

  std::istringstream explicit_eps("type A2\nepsilon +1 +1 -1\n");
  CHECK(parse_alg(explicit_eps).epsilon == std::vector<int>{1, 1, -1});

  std::istringstream bad("type A2\nepsilon +1 maybe\n");
  CHECK_THROWS_AS(parse_alg(bad), AlgParseError);
  try {
    std::istringstream bad2("type A2\nepsilon +1 maybe\n");
    parse_alg(bad2);
  } catch (const AlgParseError& e) {
    CHECK(e.line == 2);
    CHECK(e.field == "epsilon");
  }
  std::istringstream nokey("v_simple none\n");
  CHECK_THROWS_AS(parse_alg(nokey), AlgParseError);
}

TEST_CASE("flow word JSON roundtrip replays identically") {
  ChartDistribution cd = heisenberg();
  ChowConfig cfg;
  Eigen::VectorXcd x = Eigen::VectorXcd::Zero(3), y(3);
  y << std::complex<double>(0.3, -0.1), std::complex<double>(-0.4, 0.2),
      std::complex<double>(0.05, 0.02);
  FlowWord word = chow_connect(cd, x, y, cfg);
  Json j = to_json(word);
  FlowWord back = flow_word_from_json(j);
  REQUIRE(back.stages.size() == word.stages.size());
  Eigen::VectorXcd a = compose_flows(cd, word, word.base, cfg.step);
  Eigen::VectorXcd b = compose_flows(cd, back, back.base, cfg.step);
  for (int i = 0; i < 3; ++i) CHECK(a[i] == b[i]);  // bit-identical replay
  CHECK(back.endpoint_error == word.endpoint_error);
}

TEST_CASE("report envelopes embed the resolved config") {
  Json config{{"type", "A2"}, {"seed", 0}};
  Json report = make_report("grade", config, false);
  CHECK(report["command"] == "grade");
  CHECK(report["config"]["type"] == "A2");
  CHECK_FALSE(report.contains("timestamp"));
  Json with_ts = make_report("grade", config, true);
  CHECK(with_ts.contains("timestamp"));
}

TEST_CASE("certificate JSON carries the exact anchor and frame flag") {
  AlgFixture fx = canonical_fixture(CartanType::parse("A1"), {});
  SphereOptConfig cfg;
  CurvatureCertificate cert = certify_negative_bound(*fx.rf, *fx.gd, cfg);
  Json j = to_json(cert);
  CHECK(j["frame"] == "superhorizontal");
  CHECK(j["exact_sample"]["value_as_rational"] == "-1/2");
  CHECK(j["restarts"] == 32);
}
