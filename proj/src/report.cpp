#include "subkoba/report.hpp"

#include <chrono>
#include <fstream>
#include <iostream>

namespace subkoba {

Json to_json(std::complex<double> z) { return Json::array({z.real(), z.imag()}); }

Json to_json(const Eigen::VectorXcd& v) {
  Json arr = Json::array();
  for (int i = 0; i < v.size(); ++i) arr.push_back(to_json(v[i]));
  return arr;
}

Json to_json(const RVec& v) {
  Json arr = Json::array();
  for (int i = 0; i < v.size(); ++i) arr.push_back(v[i].str());
  return arr;
}

Json to_json(const CVec& v) {
  Json arr = Json::array();
  for (int i = 0; i < v.size(); ++i)
    arr.push_back(Json::array({v[i].re.str(), v[i].im.str()}));
  return arr;
}

Json to_json(const RootDatum& rd) {
  Json out;
  out["type"] = rd.type.label();
  out["rank"] = rd.rank();
  out["num_roots"] = rd.num_roots();
  out["num_positive"] = rd.num_positive();
  Json roots = Json::array();
  for (const auto& rt : rd.roots) {
    Json r;
    Json coords = Json::array();
    for (int i = 0; i < rt.coords.size(); ++i) coords.push_back(rt.coords[i]);
    r["coords"] = coords;
    r["positive"] = rt.positive;
    r["height"] = rt.height();
    roots.push_back(r);
  }
  out["roots"] = roots;
  Json pairing = Json::array();
  for (int i = 0; i < rd.pairing.rows(); ++i) {
    Json row = Json::array();
    for (int j = 0; j < rd.pairing.cols(); ++j) row.push_back(rd.pairing(i, j).str());
    pairing.push_back(row);
  }
  out["pairing"] = pairing;
  return out;
}

Json to_json(const GradedDecomposition& gd, const GenerationReport* gen) {
  Json out;
  out["grading_element"] = to_json(gd.grading_element);
  out["depth"] = gd.depth;
  Json levels = Json::array();
  for (const auto& [l, members] : gd.level_members) {
    Json entry;
    entry["level"] = l;
    entry["dim"] = static_cast<int>(members.size());
    levels.push_back(entry);
  }
  out["levels"] = levels;
  if (gd.has_real_form) out["parity_consistent"] = gd.parity_consistent;
  if (gen) {
    Json cert;
    cert["generating"] = gen->generating;
    cert["depth"] = gen->depth;
    Json words = Json::array();
    for (const auto& w : gen->certificate) {
      Json entry;
      entry["word"] = w.text;
      entry["level"] = w.level;
      words.push_back(entry);
    }
    cert["words"] = words;
    out["generation"] = cert;
  }
  return out;
}

Json to_json(const CurvatureCertificate& cert) {
  Json out;
  out["c"] = cert.c;
  out["frame"] = cert.frame;
  out["argmax"] = to_json(cert.argmax);
  out["restarts"] = cert.restarts;
  out["tol"] = cert.tol;
  out["seed"] = cert.seed;
  out["spread"] = cert.spread;
  Json anchor;
  anchor["point"] = to_json(cert.exact_point);
  anchor["value_as_rational"] = cert.exact_value.str();
  out["exact_sample"] = anchor;
  return out;
}

namespace {

Json word_to_json(const BracketWordExpr& w) {
  if (w.is_leaf()) return Json(w.leaf);
  return Json::array({word_to_json(w.children[0]), word_to_json(w.children[1])});
}

BracketWordExpr word_from_json(const Json& j) {
  if (j.is_number_integer()) return BracketWordExpr::make_leaf(j.get<int>());
  if (!j.is_array() || j.size() != 2)
    throw std::runtime_error("bad bracket word in flow word JSON");
  return BracketWordExpr::make_pair(word_from_json(j[0]), word_from_json(j[1]));
}

}  // namespace

Json to_json(const FlowWord& word) {
  Json out;
  Json stages = Json::array();
  for (const auto& s : word.stages) {
    Json stage;
    stage["generator"] = word_to_json(s.generator);
    stage["time"] = to_json(s.time);
    stages.push_back(stage);
  }
  out["stages"] = stages;
  out["base"] = to_json(word.base);
  out["endpoint"] = to_json(word.endpoint);
  out["endpoint_error"] = word.endpoint_error;
  return out;
}

FlowWord flow_word_from_json(const Json& j) {
  FlowWord word;
  for (const auto& stage : j.at("stages")) {
    FlowStage s;
    s.generator = word_from_json(stage.at("generator"));
    s.time = std::complex<double>(stage.at("time")[0].get<double>(),
                                  stage.at("time")[1].get<double>());
    word.stages.push_back(s);
  }
  auto read_vec = [&](const Json& arr) {
    Eigen::VectorXcd v(arr.size());
    for (size_t i = 0; i < arr.size(); ++i)
      v[i] = std::complex<double>(arr[i][0].get<double>(), arr[i][1].get<double>());
    return v;
  };
  word.base = read_vec(j.at("base"));
  word.endpoint = read_vec(j.at("endpoint"));
  word.endpoint_error = j.at("endpoint_error").get<double>();
  return word;
}

Json to_json(const DiscChain& chain) {
  Json out;
  out["value"] = chain.value;
  out["links"] = Json::array();
  for (const auto& link : chain.links) {
    Json l;
    Json comps = Json::array();
    for (const auto& p : link.disc.components) comps.push_back(p.str());
    l["disc"] = comps;
    l["parameters"] = Json::array({to_json(std::complex<double>(0, 0)), to_json(link.b)});
    l["radius"] = link.radius;
    l["horizontality_residual"] = link.disc.horizontality_residual;
    out["links"].push_back(l);
  }
  out["endpoint"] = to_json(chain.endpoint);
  out["endpoint_error"] = chain.endpoint_error;
  out["max_residual"] = chain.max_residual;
  return out;
}

Json to_json(const HorizontalPath& path) {
  Json out;
  out["length"] = path.length;
  Json controls = Json::array();
  for (int k = 0; k < path.controls.cols(); ++k) {
    Json seg = Json::array();
    for (int i = 0; i < path.controls.rows(); ++i) seg.push_back(to_json(path.controls(i, k)));
    controls.push_back(seg);
  }
  out["controls"] = controls;
  out["endpoint"] = to_json(path.endpoint);
  out["endpoint_error"] = path.endpoint_error;
  return out;
}

Json to_json(const ClassifyVerdict& verdict) {
  Json out;
  out["verdict"] = verdict.canonical ? "CanonicalSuperhorizontal" : "Rejected";
  if (!verdict.canonical) {
    out["reason"] = verdict.reason;
    out["witness"] = to_json(verdict.witness);
  }
  Json checks = Json::array();
  for (const auto& [name, ok] : verdict.checks) {
    Json c;
    c["check"] = name;
    c["passed"] = ok;
    checks.push_back(c);
  }
  out["checks"] = checks;
  out["almost_effective_translation"] = verdict.effectiveness_note;
  return out;
}

Json to_json(const ForstnericReport& rep, const CNResult* cn) {
  Json out;
  out["satisfied"] = rep.satisfied;
  out["confidence"] = rep.proven ? "proven" : "sampled";
  out["minor_columns"] = rep.minor_cols;
  out["min_abs_det"] = rep.min_abs_det;
  if (rep.zero_point) out["zero_point"] = to_json(*rep.zero_point);
  if (cn) {
    Json c;
    c["N"] = cn->level;
    c["sup_estimate"] = cn->sup_estimate;
    c["value"] = cn->value;
    out["C_N"] = c;
  }
  return out;
}

Json make_report(const std::string& command, const Json& config, bool with_timestamp) {
  Json report;
  report["command"] = command;
  report["config"] = config;
  if (with_timestamp) {
    auto now = std::chrono::system_clock::now();
    report["timestamp"] =
        static_cast<long long>(std::chrono::duration_cast<std::chrono::milliseconds>(
                                   now.time_since_epoch())
                                   .count());
  }
  return report;
}

void write_report(const Json& report, const std::string& out_path) {
  if (out_path.empty()) {
    std::cout << report.dump(2) << "\n";
    return;
  }
  std::ofstream os(out_path);
  if (!os) throw std::runtime_error("cannot open output path: " + out_path);
  os << report.dump(2) << "\n";
}

}  // namespace subkoba
