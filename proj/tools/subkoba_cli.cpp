// Command-line interface: fixture ingestion, module dispatch, JSON/CSV
// reports. Exit codes: 0 success, 1 input error, 2 check-failure verdict.

#include <CLI11.hpp>
#include <iostream>

#include "subkoba/report.hpp"

using namespace subkoba;

namespace {

struct CommonOpts {
  std::string out;
  bool no_timestamp = false;
  std::string format = "json";
};

void add_common(CLI::App* cmd, CommonOpts& opts) {
  cmd->add_option("--out", opts.out, "Write the report to this path (default: stdout)");
  cmd->add_flag("--no-timestamp", opts.no_timestamp,
                "Omit the timestamp so identical runs emit identical bytes");
  cmd->add_option("--format", opts.format, "Report format: json or csv")
      ->check(CLI::IsMember({"json", "csv"}));
}

Eigen::VectorXcd parse_point(const std::string& text, int expect_dim) {
  Json j = Json::parse(text);
  if (!j.is_array()) throw std::runtime_error("point must be a JSON array of [re, im] pairs");
  Eigen::VectorXcd v(j.size());
  for (size_t i = 0; i < j.size(); ++i) {
    if (!j[i].is_array() || j[i].size() != 2)
      throw std::runtime_error("point coordinates must be [re, im] pairs");
    v[i] = std::complex<double>(j[i][0].get<double>(), j[i][1].get<double>());
  }
  if (expect_dim > 0 && v.size() != expect_dim)
    throw std::runtime_error("point has " + std::to_string(v.size()) + " coordinates, chart needs " +
                             std::to_string(expect_dim));
  return v;
}

void emit(const Json& report, const CommonOpts& opts) { write_report(report, opts.out); }

void emit_csv(const std::string& text, const CommonOpts& opts) {
  if (opts.out.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream os(opts.out);
  if (!os) throw std::runtime_error("cannot open output path: " + opts.out);
  os << text;
}

std::vector<int> parse_v_option(const std::string& v) {
  std::vector<int> v_simple;
  if (v == "torus" || v.empty()) return v_simple;
  std::stringstream ss(v);
  std::string tok;
  while (std::getline(ss, tok, ','))
    v_simple.push_back(std::stoi(tok) - 1);  // 1-based on the command line
  return v_simple;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{
      "subkoba: exact flag-domain Lie theory, curvature certification, and "
      "horizontal distance estimation on bracket-generating charts.\n"
      "Set SUBKOBA_THREADS to cap internal parallelism."};
  app.require_subcommand(1);

  // ---- root-system ----
  auto* rs = app.add_subcommand("root-system", "Build a classical root system");
  std::string rs_type;
  CommonOpts rs_opts;
  rs->add_option("--type", rs_type, "Cartan type, e.g. A2, C3")->required();
  add_common(rs, rs_opts);

  // ---- grade ----
  auto* gr = app.add_subcommand("grade", "Grading and superhorizontal data");
  std::string gr_type, gr_v = "torus", gr_fixture;
  CommonOpts gr_opts;
  gr->add_option("--type", gr_type, "Cartan type (canonical parity real form)");
  gr->add_option("--v", gr_v, "Isotropy simple roots: 'torus' or comma list like 1,2");
  gr->add_option("--fixture", gr_fixture, "Algebra fixture path (.alg)");
  add_common(gr, gr_opts);

  // ---- curvature-bound ----
  auto* cb = app.add_subcommand("curvature-bound", "Certify the negative curvature bound");
  std::string cb_fixture;
  SphereOptConfig cb_cfg;
  CommonOpts cb_opts;
  cb->add_option("--fixture", cb_fixture, "Algebra fixture path (.alg)")->required();
  cb->add_option("--restarts", cb_cfg.restarts, "Optimizer restarts");
  cb->add_option("--tol", cb_cfg.tol, "Negativity tolerance")->check(CLI::PositiveNumber);
  cb->add_option("--seed", cb_cfg.seed, "Optimizer seed");
  add_common(cb, cb_opts);

  // ---- chow-connect ----
  auto* cc = app.add_subcommand("chow-connect", "Connect two chart points horizontally");
  std::string cc_fixture, cc_from, cc_to;
  double cc_tol = 1e-8;
  CommonOpts cc_opts;
  cc->add_option("--fixture", cc_fixture, "Chart fixture path (.chart)")->required();
  cc->add_option("--from", cc_from, "Start point as [[re,im],...]")->required();
  cc->add_option("--to", cc_to, "Target point as [[re,im],...]")->required();
  cc->add_option("--tol", cc_tol, "Endpoint tolerance")->check(CLI::PositiveNumber);
  add_common(cc, cc_opts);

  // ---- cc-distance ----
  auto* ccd = app.add_subcommand("cc-distance", "Carnot-Caratheodory distance upper estimate");
  std::string ccd_fixture, ccd_from, ccd_to, ccd_metric = "euclidean";
  double ccd_curvature = -1.0;
  CCConfig ccd_cfg;
  CommonOpts ccd_opts;
  ccd->add_option("--fixture", ccd_fixture, "Chart fixture path (.chart)")->required();
  ccd->add_option("--from", ccd_from, "Start point")->required();
  ccd->add_option("--to", ccd_to, "Target point")->required();
  ccd->add_option("--metric", ccd_metric, "Metric on D: euclidean or poincare")
      ->check(CLI::IsMember({"euclidean", "poincare"}));
  ccd->add_option("--curvature", ccd_curvature, "Poincare metric curvature (negative)");
  ccd->add_option("--segments", ccd_cfg.segments, "Piecewise-constant control segments")->check(CLI::PositiveNumber);
  ccd->add_option("--seed", ccd_cfg.seed, "Polish seed");
  add_common(ccd, ccd_opts);

  // ---- kobayashi-estimate ----
  auto* ko = app.add_subcommand("kobayashi-estimate",
                                "Kobayashi pseudo-distance / infinitesimal metric upper estimate");
  std::string ko_fixture, ko_from, ko_to, ko_vector;
  KobayashiConfig ko_cfg;
  CommonOpts ko_opts;
  ko->add_option("--fixture", ko_fixture, "Chart fixture path (.chart)")->required();
  ko->add_option("--from", ko_from, "Start point")->required();
  ko->add_option("--to", ko_to, "Target point (distance mode)");
  ko->add_option("--vector", ko_vector, "Tangent vector in D (infinitesimal mode)");
  ko->add_option("--deg", ko_cfg.deg, "Free-part polynomial degree cap");
  ko->add_option("--max-radius", ko_cfg.max_disc_radius, "Disc family radius cap");
  ko->add_option("--seed", ko_cfg.seed, "Descent seed");
  add_common(ko, ko_opts);

  // ---- classify ----
  auto* cl = app.add_subcommand("classify", "Homogeneous hyperbolic pair classification checks");
  std::string cl_fixture;
  CommonOpts cl_opts;
  cl->add_option("--fixture", cl_fixture, "Algebra fixture path (.alg)")->required();
  add_common(cl, cl_opts);

  // ---- forstneric-check ----
  auto* fo = app.add_subcommand("forstneric-check",
                                "Invertible-minor assumption and the C_N constants");
  std::string fo_fixture;
  int fo_cn = -1;
  CommonOpts fo_opts;
  fo->add_option("--fixture", fo_fixture, "Chart fixture path (.chart)")->required();
  fo->add_option("--cn-level", fo_cn, "Also compute C_N at this level N");
  add_common(fo, fo_opts);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);  // 0
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 1;  // input errors exit 1
  }

  try {
    if (rs->parsed()) {
      RootDatum rd = build_root_system(CartanType::parse(rs_type));
      if (rs_opts.format == "csv") {
        std::ostringstream os;
        for (int i = 0; i < rd.rank(); ++i) os << "c" << (i + 1) << ",";
        os << "positive,height\n";
        for (const auto& rt : rd.roots) {
          for (int i = 0; i < rt.coords.size(); ++i) os << rt.coords[i] << ",";
          os << (rt.positive ? 1 : 0) << "," << rt.height() << "\n";
        }
        emit_csv(os.str(), rs_opts);
        return 0;
      }
      Json config{{"type", rs_type}, {"format", rs_opts.format}};
      Json report = make_report("root-system", config, !rs_opts.no_timestamp);
      report["result"] = to_json(rd);
      emit(report, rs_opts);
      return 0;
    }

    if (gr->parsed()) {
      AlgFixture fx = !gr_fixture.empty()
                          ? load_alg_file(gr_fixture)
                          : canonical_fixture(CartanType::parse(gr_type), parse_v_option(gr_v));
      if (fx.kind != AlgFixture::Kind::Flag || !fx.gd)
        throw std::runtime_error("grading needs a flag fixture");
      GenerationReport gen = check_bracket_generating(superhorizontal(*fx.gd), *fx.gd);
      if (gr_opts.format == "csv") {
        std::ostringstream os;
        os << "level,dim\n";
        for (const auto& [l, members] : fx.gd->level_members)
          os << l << "," << members.size() << "\n";
        emit_csv(os.str(), gr_opts);
        return 0;
      }
      Json config{{"type", fx.type.label()},
                  {"fixture", gr_fixture},
                  {"v", gr_v},
                  {"format", gr_opts.format}};
      Json report = make_report("grade", config, !gr_opts.no_timestamp);
      report["result"] = to_json(*fx.gd, &gen);
      emit(report, gr_opts);
      return 0;
    }

    if (cb->parsed()) {
      AlgFixture fx = load_alg_file(cb_fixture);
      if (fx.kind != AlgFixture::Kind::Flag || !fx.rf || !fx.gd)
        throw std::runtime_error("curvature-bound needs a flag fixture");
      Json config{{"fixture", cb_fixture},
                  {"restarts", cb_cfg.restarts},
                  {"tol", cb_cfg.tol},
                  {"seed", cb_cfg.seed}};
      Json report = make_report("curvature-bound", config, !cb_opts.no_timestamp);
      try {
        CurvatureCertificate cert = certify_negative_bound(*fx.rf, *fx.gd, cb_cfg);
        report["result"] = to_json(cert);
        emit(report, cb_opts);
        return 0;
      } catch (const NotNegative& e) {
        report["result"] = Json{{"error", "NotNegative"},
                                {"message", e.what()},
                                {"witness", to_json(e.witness)}};
        emit(report, cb_opts);
        return 2;
      }
    }

    if (cc->parsed()) {
      ChartDistribution chart = load_chart_file(cc_fixture);
      Eigen::VectorXcd from = parse_point(cc_from, chart.ambient);
      Eigen::VectorXcd to = parse_point(cc_to, chart.ambient);
      ChowConfig cfg;
      cfg.endpoint_tol = cc_tol;
      Json config{{"fixture", cc_fixture},
                  {"from", Json::parse(cc_from)},
                  {"to", Json::parse(cc_to)},
                  {"tol", cc_tol}};
      Json report = make_report("chow-connect", config, !cc_opts.no_timestamp);
      try {
        FlowWord word = chow_connect(chart, from, to, cfg);
        report["result"] = to_json(word);
        emit(report, cc_opts);
        return 0;
      } catch (const NoConnection& e) {
        report["result"] = Json{{"error", "NoConnection"}, {"message", e.what()}};
        emit(report, cc_opts);
        return 2;
      }
    }

    if (ccd->parsed()) {
      ChartDistribution chart = load_chart_file(ccd_fixture);
      Eigen::VectorXcd from = parse_point(ccd_from, chart.ambient);
      Eigen::VectorXcd to = parse_point(ccd_to, chart.ambient);
      MetricOnD metric;
      metric.kind = ccd_metric == "poincare" ? MetricOnD::Kind::PoincareDisc
                                             : MetricOnD::Kind::FrameEuclidean;
      metric.curvature = ccd_curvature;
      Json config{{"fixture", ccd_fixture}, {"from", Json::parse(ccd_from)},
                  {"to", Json::parse(ccd_to)},  {"metric", ccd_metric},
                  {"curvature", ccd_curvature}, {"segments", ccd_cfg.segments},
                  {"seed", ccd_cfg.seed}};
      Json report = make_report("cc-distance", config, !ccd_opts.no_timestamp);
      CCOutcome out = cc_distance_upper(chart, metric, from, to, ccd_cfg);
      if (std::holds_alternative<Unreachable>(out)) {
        report["result"] = Json{{"error", "Unreachable"},
                                {"message", std::get<Unreachable>(out).reason}};
        emit(report, ccd_opts);
        return 2;
      }
      const HorizontalPath& path = std::get<HorizontalPath>(out);
      Json result;
      result["value"] = path.length;
      result["kind"] = "upper";
      result["witness"] = to_json(path);
      result["residuals"] = Json{{"endpoint_error", path.endpoint_error}};
      report["result"] = result;
      emit(report, ccd_opts);
      return 0;
    }

    if (ko->parsed()) {
      ChartDistribution chart = load_chart_file(ko_fixture);
      Eigen::VectorXcd from = parse_point(ko_from, chart.ambient);
      Json config{{"fixture", ko_fixture},     {"from", Json::parse(ko_from)},
                  {"deg", ko_cfg.deg},         {"max_radius", ko_cfg.max_disc_radius},
                  {"seed", ko_cfg.seed}};
      if (!ko_to.empty()) config["to"] = Json::parse(ko_to);
      if (!ko_vector.empty()) config["vector"] = Json::parse(ko_vector);
      Json report = make_report("kobayashi-estimate", config, !ko_opts.no_timestamp);
      if (!ko_vector.empty()) {
        Eigen::VectorXcd v = parse_point(ko_vector, chart.ambient);
        InfinitesimalOutcome out = infinitesimal_metric_upper(chart, from, v, ko_cfg);
        if (std::holds_alternative<Unreachable>(out)) {
          report["result"] = Json{{"error", "Unreachable"},
                                  {"message", std::get<Unreachable>(out).reason}};
          emit(report, ko_opts);
          return 2;
        }
        const InfinitesimalEstimate& est = std::get<InfinitesimalEstimate>(out);
        Json result;
        result["value"] = est.value;
        result["kind"] = "upper";
        result["lambda"] = est.lambda;
        Json comps = Json::array();
        for (const auto& p : est.disc.components) comps.push_back(p.str());
        result["witness"] = Json{{"disc", comps}};
        result["residuals"] =
            Json{{"horizontality_residual", est.disc.horizontality_residual}};
        report["result"] = result;
        emit(report, ko_opts);
        return 0;
      }
      if (ko_to.empty()) throw std::runtime_error("kobayashi-estimate needs --to or --vector");
      Eigen::VectorXcd to = parse_point(ko_to, chart.ambient);
      KobayashiOutcome out = kobayashi_upper(chart, from, to, ko_cfg);
      if (std::holds_alternative<Unreachable>(out)) {
        report["result"] = Json{{"error", "Unreachable"},
                                {"message", std::get<Unreachable>(out).reason}};
        emit(report, ko_opts);
        return 2;
      }
      const DiscChain& chain = std::get<DiscChain>(out);
      Json result;
      result["value"] = chain.value;
      result["kind"] = "upper";
      result["witness"] = to_json(chain);
      result["residuals"] = Json{{"endpoint_error", chain.endpoint_error},
                                 {"max_horizontality_residual", chain.max_residual}};
      report["result"] = result;
      emit(report, ko_opts);
      return 0;
    }

    if (cl->parsed()) {
      AlgFixture fx = load_alg_file(cl_fixture);
      Json config{{"fixture", cl_fixture}, {"datum", fx.describe()}};
      Json report = make_report("classify", config, !cl_opts.no_timestamp);
      ClassifyVerdict verdict = classify_homogeneous(fx.datum);
      report["result"] = to_json(verdict);
      emit(report, cl_opts);
      return verdict.canonical ? 0 : 2;
    }

    if (fo->parsed()) {
      ChartDistribution chart = load_chart_file(fo_fixture);
      Json config{{"fixture", fo_fixture}, {"cn_level", fo_cn}};
      Json report = make_report("forstneric-check", config, !fo_opts.no_timestamp);
      ForstnericReport rep = check_forstneric_assumption(chart);
      std::optional<CNResult> cn;
      if (fo_cn >= 0 && rep.satisfied) cn = compute_CN(chart, fo_cn);
      report["result"] = to_json(rep, cn ? &*cn : nullptr);
      emit(report, fo_opts);
      return rep.satisfied ? 0 : 2;
    }
  } catch (const UnsupportedType& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  } catch (const AlgParseError& e) {
    std::cerr << "fixture error: " << e.what() << "\n";
    return 1;
  } catch (const ChartParseError& e) {
    std::cerr << "fixture error: " << e.what() << "\n";
    return 1;
  } catch (const Json::exception& e) {
    std::cerr << "input error: " << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 1;
}
