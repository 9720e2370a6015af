#ifndef SUBKOBA_CHART_HPP
#define SUBKOBA_CHART_HPP

#include <iosfwd>
#include <string>

#include "subkoba/polynomial.hpp"

namespace subkoba {

struct ChartParseError : std::runtime_error {
  ChartParseError(int line, const std::string& what)
      : std::runtime_error("line " + std::to_string(line) + ": " + what), line(line) {}
  int line;
};

/// Bracket word over frame indices: a leaf or [left, right].
struct BracketWordExpr {
  int leaf = -1;
  std::vector<BracketWordExpr> children;  // empty (leaf) or exactly two

  bool is_leaf() const { return children.empty(); }
  int leaf_count() const;
  std::string str() const;

  static BracketWordExpr make_leaf(int i) {
    BracketWordExpr w;
    w.leaf = i;
    return w;
  }
  static BracketWordExpr make_pair(BracketWordExpr a, BracketWordExpr b) {
    BracketWordExpr w;
    w.children.push_back(std::move(a));
    w.children.push_back(std::move(b));
    return w;
  }
};

/// Polynomial holomorphic frame on a chart of C^n.
struct ChartDistribution {
  int ambient = 0;                          // n
  int rank = 0;                             // d
  std::vector<PolyField> frame;             // X_1..X_d
  std::vector<BracketWordExpr> completion_words;
  std::vector<PolyField> completion;        // symbolic brackets of the frame
  double box = 1.0;                         // sampling polyradius
  std::optional<double> domain;             // hard polyradius; empty = all of C^n

  std::vector<NumericField> frame_num;
  std::vector<NumericField> completion_num;

  int full_size() const { return rank + static_cast<int>(completion.size()); }
  const PolyField& field(int i) const;
  const NumericField& field_num(int i) const;
  /// Rows = fields, columns = coordinate components.
  Eigen::MatrixXcd frame_matrix_at(const Eigen::VectorXcd& z, bool full) const;
  double escape_radius() const;
  bool in_domain(const Eigen::VectorXcd& z, double slack = 1e-9) const;

  void rebuild_caches();
};

/// Evaluates the completion words symbolically and fills the caches.
void complete_chart(ChartDistribution& cd);

/// Greedy completion: appends bracket words of the frame until the full frame
/// has pointwise rank n at the base point, or no candidate helps.
void auto_complete(ChartDistribution& cd, const Eigen::VectorXcd& base, int max_depth = 6);

/// Pointwise linear independence of the frame (and completed frame when
/// present) on a grid over the sampling box.
struct IndependenceReport {
  bool frame_independent = false;
  bool full_frame_basis = false;
  double min_frame_sv = 0.0;  // smallest singular value seen
  double min_full_sv = 0.0;
};
IndependenceReport check_pointwise_independence(const ChartDistribution& cd,
                                                int samples_per_axis = 3);

/// Chart version of the bracket-generation check: numeric rank of iterated
/// bracket values at a point.
struct ChartGenerationReport {
  bool generating = false;
  int depth = 0;
  int achieved_rank = 0;
};
ChartGenerationReport chart_bracket_generation(const ChartDistribution& cd,
                                               const Eigen::VectorXcd& at, int max_depth = 6,
                                               double rank_tol = 1e-8);

ChartDistribution parse_chart(std::istream& is);
ChartDistribution load_chart_file(const std::string& path);
void save_chart(std::ostream& os, const ChartDistribution& cd);

}  // namespace subkoba

#endif
