#include "subkoba/chart.hpp"

#include <Eigen/SVD>
#include <fstream>
#include <sstream>

namespace subkoba {

int BracketWordExpr::leaf_count() const {
  if (is_leaf()) return 1;
  return children[0].leaf_count() + children[1].leaf_count();
}

std::string BracketWordExpr::str() const {
  if (is_leaf()) return std::to_string(leaf);
  return "(" + children[0].str() + " " + children[1].str() + ")";
}

const PolyField& ChartDistribution::field(int i) const {
  if (i < rank) return frame[i];
  return completion.at(i - rank);
}

const NumericField& ChartDistribution::field_num(int i) const {
  if (i < rank) return frame_num[i];
  return completion_num.at(i - rank);
}

Eigen::MatrixXcd ChartDistribution::frame_matrix_at(const Eigen::VectorXcd& z, bool full) const {
  int rows = full ? full_size() : rank;
  Eigen::MatrixXcd m(rows, ambient);
  for (int i = 0; i < rows; ++i) m.row(i) = field_num(i).eval(z).transpose();
  return m;
}

double ChartDistribution::escape_radius() const {
  double base = domain ? *domain : std::max(box, 1.0) * 1e5;
  return 10.0 * std::max(base, box);
}

bool ChartDistribution::in_domain(const Eigen::VectorXcd& z, double slack) const {
  if (!domain) return true;
  for (int i = 0; i < z.size(); ++i)
    if (std::abs(z[i]) > *domain + slack) return false;
  return true;
}

void ChartDistribution::rebuild_caches() {
  frame_num.clear();
  for (const auto& f : frame) frame_num.emplace_back(f);
  completion_num.clear();
  for (const auto& f : completion) completion_num.emplace_back(f);
}

namespace {

PolyField eval_word(const ChartDistribution& cd, const BracketWordExpr& w) {
  if (w.is_leaf()) {
    if (w.leaf < 0 || w.leaf >= cd.rank)
      throw std::invalid_argument("bracket word leaf outside frame range");
    return cd.frame[w.leaf];
  }
  return field_bracket(eval_word(cd, w.children[0]), eval_word(cd, w.children[1]));
}

}  // namespace

void complete_chart(ChartDistribution& cd) {
  cd.completion.clear();
  for (const auto& w : cd.completion_words) cd.completion.push_back(eval_word(cd, w));
  cd.rebuild_caches();
}

void auto_complete(ChartDistribution& cd, const Eigen::VectorXcd& base, int max_depth) {
  cd.completion_words.clear();
  cd.completion.clear();
  cd.rebuild_caches();
  if (cd.rank >= cd.ambient) return;

  struct Candidate {
    BracketWordExpr word;
    PolyField field;
    int depth;
  };
  std::vector<Candidate> pool;
  for (int i = 0; i < cd.rank; ++i) pool.push_back({BracketWordExpr::make_leaf(i), cd.frame[i], 1});

  auto current_rank = [&]() {
    Eigen::MatrixXcd m(cd.full_size(), cd.ambient);
    for (int i = 0; i < cd.full_size(); ++i) m.row(i) = NumericField(cd.field(i)).eval(base).transpose();
    Eigen::JacobiSVD<Eigen::MatrixXcd> svd(m);
    return (svd.singularValues().array() > 1e-9 * std::max(1.0, svd.singularValues()[0]))
        .count();
  };

  size_t scan = 0;
  while (cd.full_size() < cd.ambient && scan < pool.size()) {
    Candidate& c = pool[scan++];
    for (int i = 0; i < cd.rank && cd.full_size() < cd.ambient; ++i) {
      if (c.depth + 1 > max_depth) continue;
      BracketWordExpr w = BracketWordExpr::make_pair(BracketWordExpr::make_leaf(i), c.word);
      PolyField f = field_bracket(cd.frame[i], c.field);
      bool zero = true;
      for (const auto& p : f) zero &= p.is_zero();
      if (zero) continue;
      long before = current_rank();
      cd.completion_words.push_back(w);
      cd.completion.push_back(f);
      if (current_rank() > before) {
        pool.push_back({w, f, c.depth + 1});
      } else {
        cd.completion_words.pop_back();
        cd.completion.pop_back();
        pool.push_back({w, f, c.depth + 1});  // still useful as a deeper-bracket parent
      }
    }
  }
  cd.rebuild_caches();
}

IndependenceReport check_pointwise_independence(const ChartDistribution& cd,
                                                int samples_per_axis) {
  IndependenceReport rep;
  rep.frame_independent = true;
  rep.full_frame_basis = cd.full_size() == cd.ambient;
  rep.min_frame_sv = 1e300;
  rep.min_full_sv = 1e300;

  // deterministic grid over the sampling box, real and imaginary staggered
  std::vector<std::complex<double>> axis;
  for (int s = 0; s < samples_per_axis; ++s) {
    double t = samples_per_axis == 1 ? 0.0 : -1.0 + 2.0 * s / (samples_per_axis - 1);
    axis.push_back(std::complex<double>(t * cd.box, 0.37 * t * cd.box));
  }
  std::vector<Eigen::VectorXcd> points;
  std::function<void(Eigen::VectorXcd&, int)> rec = [&](Eigen::VectorXcd& z, int k) {
    if (k == cd.ambient) {
      points.push_back(z);
      return;
    }
    for (const auto& a : axis) {
      z[k] = a;
      rec(z, k + 1);
    }
  };
  Eigen::VectorXcd z(cd.ambient);
  rec(z, 0);

  for (const auto& p : points) {
    {
      Eigen::JacobiSVD<Eigen::MatrixXcd> svd(cd.frame_matrix_at(p, false));
      double sv = svd.singularValues()[svd.singularValues().size() - 1];
      rep.min_frame_sv = std::min(rep.min_frame_sv, sv);
      if (sv < 1e-9) rep.frame_independent = false;
    }
    if (cd.full_size() == cd.ambient) {
      Eigen::JacobiSVD<Eigen::MatrixXcd> svd(cd.frame_matrix_at(p, true));
      double sv = svd.singularValues()[svd.singularValues().size() - 1];
      rep.min_full_sv = std::min(rep.min_full_sv, sv);
      if (sv < 1e-9) rep.full_frame_basis = false;
    }
  }
  return rep;
}

ChartGenerationReport chart_bracket_generation(const ChartDistribution& cd,
                                               const Eigen::VectorXcd& at, int max_depth,
                                               double rank_tol) {
  ChartGenerationReport rep;
  std::vector<PolyField> layer = cd.frame;
  std::vector<Eigen::VectorXcd> values;
  for (const auto& f : cd.frame) values.push_back(NumericField(f).eval(at));

  auto rank_of = [&]() {
    Eigen::MatrixXcd m(values.size(), cd.ambient);
    for (size_t i = 0; i < values.size(); ++i) m.row(i) = values[i].transpose();
    Eigen::JacobiSVD<Eigen::MatrixXcd> svd(m);
    double top = svd.singularValues()[0];
    return static_cast<int>(
        (svd.singularValues().array() > rank_tol * std::max(1.0, top)).count());
  };

  int depth = 1;
  int rank = rank_of();
  while (rank < cd.ambient && depth < max_depth) {
    std::vector<PolyField> next;
    for (const auto& f : layer)
      for (const auto& x : cd.frame) {
        PolyField br = field_bracket(x, f);
        bool zero = true;
        for (const auto& p : br) zero &= p.is_zero();
        if (zero) continue;
        next.push_back(br);
        values.push_back(NumericField(br).eval(at));
      }
    ++depth;
    int r = rank_of();
    if (r == rank && next.empty()) break;
    rank = r;
    layer = std::move(next);
    if (layer.empty()) break;
  }
  rep.achieved_rank = rank;
  rep.generating = rank == cd.ambient;
  rep.depth = rep.generating ? depth : 0;
  return rep;
}

namespace {

Rational parse_rational(const std::string& tok, int line) {
  try {
    return Rational::from_string(tok);
  } catch (const std::exception& e) {
    throw ChartParseError(line, std::string("bad rational '") + tok + "': " + e.what());
  }
}

BracketWordExpr parse_word(std::istringstream& ls, int line) {
  std::string tok;
  if (!(ls >> tok)) throw ChartParseError(line, "unterminated bracket word");
  if (tok == "(") {
    BracketWordExpr a = parse_word(ls, line);
    BracketWordExpr b = parse_word(ls, line);
    std::string close;
    if (!(ls >> close) || close != ")") throw ChartParseError(line, "expected ')'");
    return BracketWordExpr::make_pair(std::move(a), std::move(b));
  }
  try {
    return BracketWordExpr::make_leaf(std::stoi(tok));
  } catch (...) {
    throw ChartParseError(line, "bad bracket word token '" + tok + "'");
  }
}

std::string render_word(const BracketWordExpr& w) {
  if (w.is_leaf()) return std::to_string(w.leaf);
  return "( " + render_word(w.children[0]) + " " + render_word(w.children[1]) + " )";
}

}  // namespace

ChartDistribution parse_chart(std::istream& is) {
  ChartDistribution cd;
  std::string line;
  int lineno = 0;
  bool have_ambient = false, have_rank = false;
  while (std::getline(is, line)) {
    ++lineno;
    auto hash = line.find('#');
    if (hash != std::string::npos) line = line.substr(0, hash);
    std::istringstream ls(line);
    std::string key;
    if (!(ls >> key)) continue;
    if (key == "ambient") {
      if (!(ls >> cd.ambient) || cd.ambient < 1) throw ChartParseError(lineno, "bad ambient dimension");
      have_ambient = true;
    } else if (key == "rank") {
      if (!(ls >> cd.rank) || cd.rank < 1) throw ChartParseError(lineno, "bad rank");
      have_rank = true;
    } else if (key == "box") {
      std::string tok;
      if (!(ls >> tok)) throw ChartParseError(lineno, "missing box radius");
      cd.box = parse_rational(tok, lineno).to_double();
      if (cd.box <= 0) throw ChartParseError(lineno, "box radius must be positive");
    } else if (key == "domain") {
      std::string tok;
      if (!(ls >> tok)) throw ChartParseError(lineno, "missing domain radius");
      if (tok == "unbounded") {
        cd.domain.reset();
      } else {
        cd.domain = parse_rational(tok, lineno).to_double();
        if (*cd.domain <= 0) throw ChartParseError(lineno, "domain radius must be positive");
      }
    } else if (key == "term") {
      if (!have_ambient || !have_rank)
        throw ChartParseError(lineno, "term before ambient/rank declaration");
      int fi, comp;
      std::string re, im;
      if (!(ls >> fi >> comp >> re >> im)) throw ChartParseError(lineno, "bad term line");
      if (fi < 0 || fi >= cd.rank) throw ChartParseError(lineno, "field index out of range");
      if (comp < 0 || comp >= cd.ambient) throw ChartParseError(lineno, "component out of range");
      MPoly::Exponents e(cd.ambient, 0);
      for (int v = 0; v < cd.ambient; ++v) {
        if (!(ls >> e[v])) throw ChartParseError(lineno, "missing exponent");
        if (e[v] < 0) throw ChartParseError(lineno, "negative exponent");
      }
      std::string extra;
      if (ls >> extra) throw ChartParseError(lineno, "trailing tokens '" + extra + "'");
      if (cd.frame.empty()) cd.frame.assign(cd.rank, PolyField(cd.ambient, MPoly(cd.ambient)));
      cd.frame[fi][comp].add_term(e, RationalComplex(parse_rational(re, lineno),
                                                     parse_rational(im, lineno)));
    } else if (key == "completion") {
      if (!have_ambient || !have_rank)
        throw ChartParseError(lineno, "completion before ambient/rank declaration");
      cd.completion_words.push_back(parse_word(ls, lineno));
    } else {
      throw ChartParseError(lineno, "unknown key '" + key + "'");
    }
  }
  if (!have_ambient || !have_rank) throw ChartParseError(lineno, "missing ambient/rank");
  if (cd.frame.empty()) throw ChartParseError(lineno, "chart has no frame terms");
  complete_chart(cd);
  return cd;
}

ChartDistribution load_chart_file(const std::string& path) {
  std::ifstream is(path);
  if (!is) throw std::runtime_error("cannot open chart fixture: " + path);
  return parse_chart(is);
}

void save_chart(std::ostream& os, const ChartDistribution& cd) {
  os << "ambient " << cd.ambient << "\n";
  os << "rank " << cd.rank << "\n";
  os << "box " << Rational::from_double_dyadic(cd.box, 20).str() << "\n";
  if (cd.domain)
    os << "domain " << Rational::from_double_dyadic(*cd.domain, 20).str() << "\n";
  else
    os << "domain unbounded\n";
  for (int i = 0; i < cd.rank; ++i)
    for (int c = 0; c < cd.ambient; ++c)
      for (const auto& [e, coeff] : cd.frame[i][c].terms()) {
        os << "term " << i << " " << c << " " << coeff.re.str() << " " << coeff.im.str();
        for (int v = 0; v < cd.ambient; ++v) os << " " << e[v];
        os << "\n";
      }
  for (const auto& w : cd.completion_words) os << "completion " << render_word(w) << "\n";
}

}  // namespace subkoba
