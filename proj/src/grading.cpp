#include "subkoba/grading.hpp"

#include <algorithm>

namespace subkoba {

int GradedDecomposition::dim_level(int l) const {
  auto it = level_members.find(l);
  return it == level_members.end() ? 0 : static_cast<int>(it->second.size());
}

CMat GradedDecomposition::level_basis(int l) const {
  auto it = level_members.find(l);
  int n = it == level_members.end() ? 0 : static_cast<int>(it->second.size());
  CMat m = CMat(bd.dim, n);
  for (int j = 0; j < n; ++j) {
    CVec col = CVec::Zero(bd.dim);
    col[it->second[j]] = RationalComplex(Rational(1));
    m.col(j) = col;
  }
  return m;
}

CMat GradedDecomposition::g_minus() const {
  std::vector<int> idx;
  for (const auto& [l, members] : level_members)
    if (l < 0) idx.insert(idx.end(), members.begin(), members.end());
  CMat m = CMat(bd.dim, idx.size());
  for (size_t j = 0; j < idx.size(); ++j) {
    CVec col = CVec::Zero(bd.dim);
    col[idx[j]] = RationalComplex(Rational(1));
    m.col(j) = col;
  }
  return m;
}

std::vector<int> GradedDecomposition::roots_at_level(int l) const {
  std::vector<int> out;
  auto it = level_members.find(l);
  if (it == level_members.end()) return out;
  for (int b : it->second)
    if (!bd.is_cartan_index(b)) out.push_back(bd.root_of_basis_index(b));
  return out;
}

RVec grading_element(const RootDatum& rd, const std::vector<int>& v_simple) {
  int r = rd.rank();
  std::vector<bool> in_v(r, false);
  for (int i : v_simple) {
    if (i < 0 || i >= r) throw std::invalid_argument("v_simple index out of range");
    in_v[i] = true;
  }
  // T = sum of the duals T^i over simple roots outside v:
  // alpha_j(T) = [alpha_j outside v]. In coroot coordinates T = C^{-T} rhs.
  RMat a(r, r);
  for (int j = 0; j < r; ++j)
    for (int i = 0; i < r; ++i) a(j, i) = Rational(rd.cartan(j, i));
  RVec rhs(r);
  for (int j = 0; j < r; ++j) rhs[j] = Rational(in_v[j] ? 0 : 1);
  // alpha_j(T) = sum_i T_i C(j,i); solve A T = rhs with A(j,i) = C(j,i)
  auto t = solve_exact(a, rhs);
  if (!t) throw std::logic_error("Cartan matrix is singular");
  return *t;
}

namespace {

GradedDecomposition grade_impl(const BasisData& bd, const RVec& cartan_T,
                               const RealFormData* rf) {
  GradedDecomposition gd;
  gd.bd = bd;
  gd.grading_element = cartan_T;
  gd.level_of_root.assign(bd.roots.num_roots(), 0);
  for (int a = 0; a < bd.roots.num_roots(); ++a) {
    Rational lv = bd.root_on_cartan(a, cartan_T);
    if (lv.den() != 1)
      throw InvalidGradingElement("non-integral level " + lv.str() + " on a root");
    int l = static_cast<int>(lv.num());
    gd.level_of_root[a] = l;
    gd.level_members[l].push_back(bd.root_vector_index(a));
    gd.depth = std::max(gd.depth, std::abs(l));
  }
  for (int i = 0; i < bd.rank(); ++i) gd.level_members[0].push_back(i);
  for (auto& [l, members] : gd.level_members) std::sort(members.begin(), members.end());

  if (rf) {
    gd.has_real_form = true;
    gd.parity_consistent = true;
    for (int a = 0; a < bd.roots.num_roots(); ++a) {
      bool odd = gd.level_of_root[a] % 2 != 0;
      if (odd != (rf->eps[a] == 1)) gd.parity_consistent = false;
    }
  }
  return gd;
}

}  // namespace

GradedDecomposition grade(const BasisData& bd, const RVec& cartan_T) {
  return grade_impl(bd, cartan_T, nullptr);
}

GradedDecomposition grade(const BasisData& bd, const RVec& cartan_T, const RealFormData& rf) {
  return grade_impl(bd, cartan_T, &rf);
}

GradedDecomposition grade_canonical(const RealFormData& rf, const std::vector<int>& v_simple) {
  GradedDecomposition gd = grade(rf.bd, grading_element(rf.bd.roots, v_simple), rf);
  gd.v_simple = v_simple;
  return gd;
}

CMat superhorizontal(const GradedDecomposition& gd) { return gd.level_basis(-1); }

GenerationReport check_bracket_generating(const CMat& sub, const GradedDecomposition& gd) {
  GenerationReport rep;
  const BasisData& bd = gd.bd;
  CMat target = gd.g_minus();
  for (int j = 0; j < sub.cols(); ++j)
    if (!in_col_span(target, CVec(sub.col(j))))
      throw std::invalid_argument("subspace is not contained in g^-");

  int target_rank = rank_exact(target);
  std::vector<CVec> vecs;
  std::vector<std::string> words;
  CMat span(bd.dim, 0);
  auto try_add = [&](const CVec& v, const std::string& word) {
    if (is_zero_vec(v)) return false;
    if (span.cols() > 0 && in_col_span(span, v)) return false;
    CMat grown(bd.dim, span.cols() + 1);
    grown.leftCols(span.cols()) = span;
    grown.col(span.cols()) = v;
    span = grown;
    vecs.push_back(v);
    words.push_back(word);
    return true;
  };
  std::vector<std::pair<CVec, std::string>> layer;
  for (int j = 0; j < sub.cols(); ++j) {
    std::string w = "s" + std::to_string(j);
    CVec v = sub.col(j);
    if (try_add(v, w)) {
      int lvl = 0;
      // level of a pure vector, for the certificate
      for (int i = 0; i < bd.dim; ++i)
        if (!v[i].is_zero() && !bd.is_cartan_index(i))
          lvl = gd.level_of_root[bd.root_of_basis_index(i)];
      rep.certificate.push_back({w, lvl});
    }
    layer.emplace_back(v, w);
  }
  int s = 1;
  while (rank_exact(span) < target_rank) {
    std::vector<std::pair<CVec, std::string>> next;
    bool grew = false;
    for (const auto& [v, w] : layer) {
      for (int j = 0; j < sub.cols(); ++j) {
        CVec br = bd.bracket(CVec(sub.col(j)), v);
        std::string word = "[s" + std::to_string(j) + "," + w + "]";
        if (try_add(br, word)) {
          int lvl = 0;
          for (int i = 0; i < bd.dim; ++i)
            if (!br[i].is_zero() && !bd.is_cartan_index(i))
              lvl = gd.level_of_root[bd.root_of_basis_index(i)];
          rep.certificate.push_back({word, lvl});
          next.emplace_back(br, word);
          grew = true;
        }
      }
    }
    if (!grew) break;
    layer = std::move(next);
    ++s;
  }
  rep.stabilized = col_span_basis(span);
  rep.generating = rank_exact(span) == target_rank;
  rep.depth = rep.generating ? s : 0;
  return rep;
}

LeveledAlgebra as_leveled_algebra(const GradedDecomposition& gd) {
  LeveledAlgebra la;
  la.ambient_dim = gd.bd.dim;
  BasisData bd = gd.bd;
  la.bracket = [bd](const CVec& x, const CVec& y) { return bd.bracket(x, y); };
  for (const auto& [l, members] : gd.level_members) la.level_subspaces[l] = gd.level_basis(l);
  return la;
}

GradedLawReport validate_graded_brackets(const LeveledAlgebra& la) {
  GradedLawReport rep;
  rep.laws_hold = true;
  rep.strictly_graded = true;

  auto span_of = [&](int lo, int hi) {
    std::vector<CVec> cols;
    for (const auto& [l, basis] : la.level_subspaces) {
      if (l < lo || l > hi) continue;
      for (int j = 0; j < basis.cols(); ++j) cols.push_back(basis.col(j));
    }
    CMat m(la.ambient_dim, cols.size());
    for (size_t j = 0; j < cols.size(); ++j) m.col(j) = cols[j];
    return m;
  };
  auto contained = [&](const CVec& v, const CMat& space) {
    if (is_zero_vec(v)) return true;
    return in_col_span(space, v);
  };

  int kmax = 0;
  for (const auto& [l, _] : la.level_subspaces) kmax = std::max(kmax, std::abs(l));

  for (const auto& [i, bi] : la.level_subspaces) {
    for (const auto& [j, bj] : la.level_subspaces) {
      CMat strict = span_of(i + j, i + j);
      bool need_strict_check = true;
      for (int a = 0; a < bi.cols(); ++a)
        for (int b = 0; b < bj.cols(); ++b) {
          CVec br = la.bracket(CVec(bi.col(a)), CVec(bj.col(b)));
          if (need_strict_check && !contained(br, strict)) rep.strictly_graded = false;
          if (j < 0) {
            int l = -j;
            if (i >= l && !contained(br, span_of(-kmax, i - l + 1))) {
              rep.laws_hold = false;
              rep.violations.push_back({i, l, "[g_i,g_-l] in g_{<= i-l+1} (i >= l)"});
            }
            if (i <= l && i >= 0 && !contained(br, span_of(i - l - 1, kmax))) {
              rep.laws_hold = false;
              rep.violations.push_back({i, l, "[g_i,g_-l] in g_{>= i-l-1} (i <= l)"});
            }
            if (i == l && !contained(br, span_of(-1, 1))) {
              rep.laws_hold = false;
              rep.violations.push_back({i, l, "[g_i,g_-i] in g_-1 + g_0 + g_1"});
            }
          }
        }
    }
  }
  // deduplicate violations
  std::sort(rep.violations.begin(), rep.violations.end(),
            [](const GradedLawViolation& a, const GradedLawViolation& b) {
              return std::tie(a.i, a.l, a.law) < std::tie(b.i, b.l, b.law);
            });
  rep.violations.erase(std::unique(rep.violations.begin(), rep.violations.end(),
                                   [](const GradedLawViolation& a, const GradedLawViolation& b) {
                                     return a.i == b.i && a.l == b.l && a.law == b.law;
                                   }),
                       rep.violations.end());
  return rep;
}

UniquenessReport check_superhorizontal_uniqueness(const GradedDecomposition& gd,
                                                  const RealFormData& rf) {
  UniquenessReport rep;
  if (!gd.parity_consistent)
    throw std::invalid_argument("uniqueness check needs a parity-consistent grading");
  const BasisData& bd = gd.bd;

  // v-isotypic blocks inside qC ∩ g^-: root spaces of noncompact negative
  // roots, glued when a level-0 root maps one onto the other.
  std::vector<int> candidates_roots;
  for (int a = 0; a < bd.roots.num_roots(); ++a)
    if (gd.level_of_root[a] < 0 && rf.eps[a] == 1) candidates_roots.push_back(a);
  int n = static_cast<int>(candidates_roots.size());
  std::vector<int> block(n);
  for (int i = 0; i < n; ++i) block[i] = i;
  std::function<int(int)> find = [&](int x) { return block[x] == x ? x : block[x] = find(block[x]); };
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      Eigen::VectorXi diff = bd.roots.roots[candidates_roots[i]].coords -
                             bd.roots.roots[candidates_roots[j]].coords;
      int d = bd.roots.index_of(diff);
      if (d >= 0 && gd.level_of_root[d] == 0) block[find(i)] = find(j);
    }
  std::map<int, std::vector<int>> blocks;
  for (int i = 0; i < n; ++i) blocks[find(i)].push_back(candidates_roots[i]);

  int want_dim = gd.dim_level(-1);
  std::vector<std::vector<int>> block_list;
  for (auto& [_, roots] : blocks) block_list.push_back(roots);
  int nb = static_cast<int>(block_list.size());

  for (int mask = 1; mask < (1 << nb); ++mask) {
    std::vector<int> roots;
    for (int b = 0; b < nb; ++b)
      if (mask & (1 << b)) roots.insert(roots.end(), block_list[b].begin(), block_list[b].end());
    if (static_cast<int>(roots.size()) != want_dim) continue;
    ++rep.candidates_tested;
    CMat sub(bd.dim, roots.size());
    for (size_t j = 0; j < roots.size(); ++j) {
      CVec col = CVec::Zero(bd.dim);
      col[bd.root_vector_index(roots[j])] = RationalComplex(Rational(1));
      sub.col(j) = col;
    }
    if (check_bracket_generating(sub, gd).generating) ++rep.generating_candidates;
  }
  rep.unique = rep.generating_candidates == 1;
  return rep;
}

}  // namespace subkoba
