#ifndef SUBKOBA_REPORT_HPP
#define SUBKOBA_REPORT_HPP

#include <json.hpp>

#include "subkoba/curvature.hpp"
#include "subkoba/distances.hpp"
#include "subkoba/fixtures.hpp"

namespace subkoba {

using Json = nlohmann::ordered_json;

Json to_json(std::complex<double> z);  // [re, im]
Json to_json(const Eigen::VectorXcd& v);
Json to_json(const RVec& v);   // exact "p/q" strings
Json to_json(const CVec& v);   // pairs of "p/q" strings
Json to_json(const RootDatum& rd);
Json to_json(const GradedDecomposition& gd, const GenerationReport* gen);
Json to_json(const CurvatureCertificate& cert);
Json to_json(const FlowWord& word);
FlowWord flow_word_from_json(const Json& j);
Json to_json(const DiscChain& chain);
Json to_json(const HorizontalPath& path);
Json to_json(const ClassifyVerdict& verdict);
Json to_json(const ForstnericReport& rep, const CNResult* cn);

/// Report envelope: command, resolved config, optional timestamp, result.
Json make_report(const std::string& command, const Json& config, bool with_timestamp);

void write_report(const Json& report, const std::string& out_path);  // empty = stdout

}  // namespace subkoba

#endif
