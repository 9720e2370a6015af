#include "subkoba/lie_basis.hpp"

#include <istream>
#include <ostream>
#include <sstream>

namespace subkoba {

namespace {

// ----- integral matrix realizations of the classical algebras -----

struct Realization {
  std::vector<RMat> cartan;                 // coroot matrices H_1..H_r
  std::vector<Eigen::VectorXi> root_evec;   // roots in e-coordinate form (size r, short form)
  std::vector<RMat> root_matrix;            // matching root vectors
};

RMat unit(int n, int i, int j) {
  RMat m = RMat::Zero(n, n);
  m(i, j) = Rational(1);
  return m;
}

// Roots are listed in +/- pairs via transpose; e-coordinates use the standard
// weight basis of the defining representation.
Realization realize(CartanType type) {
  int r = type.rank;
  Realization out;
  auto push = [&](const Eigen::VectorXi& evec, const RMat& m) {
    out.root_evec.push_back(evec);
    out.root_matrix.push_back(m);
    out.root_evec.push_back(-evec);
    out.root_matrix.push_back(m.transpose());
  };
  auto evec = [&](int i, int ci, int j, int cj) {
    Eigen::VectorXi v = Eigen::VectorXi::Zero(r);
    v[i] += ci;
    if (j >= 0) v[j] += cj;
    return v;
  };

  switch (type.series) {
    case Series::A: {
      int n = r + 1;
      for (int i = 0; i < r; ++i) {
        RMat h = RMat::Zero(n, n);
        h(i, i) = Rational(1);
        h(i + 1, i + 1) = Rational(-1);
        out.cartan.push_back(h);
      }
      // e-coordinates for A_r: use eps_i - eps_j expanded over eps_1..eps_r
      // (drop eps_{r+1}; the r first coordinates determine the root).
      for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j) {
          Eigen::VectorXi v = Eigen::VectorXi::Zero(r);
          if (i < r) v[i] += 1;
          if (j < r) v[j] -= 1;
          push(v, unit(n, i, j));
        }
      break;
    }
    case Series::B: {
      // basis u_1..u_r, w_1..w_r, z with <u_i, w_j> = delta, <z,z> = 1
      int n = 2 * r + 1;
      int z = 2 * r;
      auto diag = [&](std::initializer_list<std::pair<int, int>> terms) {
        RMat h = RMat::Zero(n, n);
        for (auto [idx, c] : terms) {
          h(idx, idx) = Rational(c);
          h(r + idx, r + idx) = Rational(-c);
        }
        return h;
      };
      for (int i = 0; i + 1 < r; ++i) out.cartan.push_back(diag({{i, 1}, {i + 1, -1}}));
      out.cartan.push_back(diag({{r - 1, 2}}));  // coroot of the short root e_r
      for (int i = 0; i < r; ++i)
        for (int j = i + 1; j < r; ++j) {
          push(evec(i, 1, j, -1), unit(n, i, j) - unit(n, r + j, r + i));
          push(evec(i, 1, j, 1), unit(n, i, r + j) - unit(n, j, r + i));
        }
      for (int i = 0; i < r; ++i)
        push(evec(i, 1, -1, 0), unit(n, i, z) - unit(n, z, r + i));
      break;
    }
    case Series::C: {
      int n = 2 * r;
      auto diag = [&](std::initializer_list<std::pair<int, int>> terms) {
        RMat h = RMat::Zero(n, n);
        for (auto [idx, c] : terms) {
          h(idx, idx) = Rational(c);
          h(r + idx, r + idx) = Rational(-c);
        }
        return h;
      };
      for (int i = 0; i + 1 < r; ++i) out.cartan.push_back(diag({{i, 1}, {i + 1, -1}}));
      out.cartan.push_back(diag({{r - 1, 1}}));  // coroot of the long root 2e_r
      for (int i = 0; i < r; ++i)
        for (int j = i + 1; j < r; ++j) {
          push(evec(i, 1, j, -1), unit(n, i, j) - unit(n, r + j, r + i));
          push(evec(i, 1, j, 1), unit(n, i, r + j) + unit(n, j, r + i));
        }
      for (int i = 0; i < r; ++i)
        push(evec(i, 2, -1, 0), unit(n, i, r + i));
      break;
    }
    case Series::D: {
      int n = 2 * r;
      auto diag = [&](std::initializer_list<std::pair<int, int>> terms) {
        RMat h = RMat::Zero(n, n);
        for (auto [idx, c] : terms) {
          h(idx, idx) = Rational(c);
          h(r + idx, r + idx) = Rational(-c);
        }
        return h;
      };
      for (int i = 0; i + 1 < r; ++i) out.cartan.push_back(diag({{i, 1}, {i + 1, -1}}));
      out.cartan.push_back(diag({{r - 2, 1}, {r - 1, 1}}));  // coroot of e_{r-1}+e_r
      for (int i = 0; i < r; ++i)
        for (int j = i + 1; j < r; ++j) {
          push(evec(i, 1, j, -1), unit(n, i, j) - unit(n, r + j, r + i));
          push(evec(i, 1, j, 1), unit(n, i, r + j) - unit(n, j, r + i));
        }
      break;
    }
  }
  return out;
}

// Simple roots in the same e-coordinate convention as Realization::root_evec.
std::vector<Eigen::VectorXi> simple_roots_evec(CartanType type) {
  int r = type.rank;
  std::vector<Eigen::VectorXi> out;
  auto ev = [&](int i, int ci, int j, int cj) {
    Eigen::VectorXi v = Eigen::VectorXi::Zero(r);
    if (i >= 0 && i < r) v[i] += ci;
    if (j >= 0 && j < r) v[j] += cj;
    return v;
  };
  for (int i = 0; i + 1 < r; ++i) out.push_back(ev(i, 1, i + 1, -1));
  switch (type.series) {
    case Series::A:
      out.push_back(ev(r - 1, 1, r, -1));  // e_r - e_{r+1}: only e_r survives
      break;
    case Series::B:
      out.push_back(ev(r - 1, 1, -1, 0));
      break;
    case Series::C:
      out.push_back(ev(r - 1, 2, -1, 0));
      break;
    case Series::D:
      out.push_back(ev(r - 2, 1, r - 1, 1));
      break;
  }
  return out;
}

// Expands matrices in a fixed basis exactly. The elimination transform is
// computed once; each expansion is a sparse multiply plus a residual check.
struct MatrixExpander {
  RMat stacked;            // n^2 x dim
  RMat transform;          // echelon transform, n^2 x n^2
  std::vector<int> pivots;  // pivot columns of echelon(stacked)
  int n = 0;

  explicit MatrixExpander(const std::vector<RMat>& basis) {
    n = static_cast<int>(basis[0].rows());
    int dim = static_cast<int>(basis.size());
    stacked = RMat(n * n, dim);
    for (int k = 0; k < dim; ++k)
      for (int j = 0; j < n; ++j)
        for (int i = 0; i < n; ++i) stacked(j * n + i, k) = basis[k](i, j);
    RMat aug(n * n, dim + n * n);
    aug.leftCols(dim) = stacked;
    aug.rightCols(n * n) = RMat::Identity(n * n, n * n);
    std::vector<int> piv = echelonize(aug);
    for (int p : piv)
      if (p < dim) pivots.push_back(p);
    transform = aug.rightCols(n * n);
  }

  RVec expand(const RMat& m) const {
    RVec v(n * n);
    for (int j = 0; j < n; ++j)
      for (int i = 0; i < n; ++i) v[j * n + i] = m(i, j);
    RVec x = RVec::Zero(stacked.cols());
    for (size_t r = 0; r < pivots.size(); ++r) {
      Rational acc(0);
      for (int c = 0; c < v.size(); ++c)
        if (!v[c].is_zero() && !transform(r, c).is_zero()) acc += transform(r, c) * v[c];
      x[pivots[r]] = acc;
    }
    RVec residual = stacked * x - v;
    for (int i = 0; i < residual.size(); ++i)
      if (!residual[i].is_zero()) throw std::logic_error("matrix not in Lie algebra span");
    return x;
  }
};

Rational squarefree_scale(const Rational& k) {
  // largest rational s with s^2 dividing k (k > 0); returns s
  auto core = [](Rational::Int v) {
    Rational::Int s = 1;
    for (Rational::Int p = 2; p * p <= v; ++p) {
      while (v % (p * p) == 0) {
        v /= p * p;
        s *= p;
      }
    }
    return s;
  };
  return Rational(core(k.num()), 1) / Rational(core(k.den()), 1);
}

}  // namespace

Rational BasisData::root_on_cartan(int root_index, const RVec& h) const {
  Rational v(0);
  for (int i = 0; i < rank(); ++i)
    v += h[i] * Rational(root_on_simple_coroot(root_index, i));
  return v;
}

RVec BasisData::bracket(const RVec& x, const RVec& y) const {
  RVec out = RVec::Zero(dim);
  for (int i = 0; i < dim; ++i) {
    if (x[i].is_zero()) continue;
    for (int j = 0; j < dim; ++j) {
      if (y[j].is_zero()) continue;
      Rational c = x[i] * y[j];
      for (const auto& [k, v] : bracket_table[i][j]) out[k] += c * v;
    }
  }
  return out;
}

CVec BasisData::bracket(const CVec& x, const CVec& y) const {
  CVec out = CVec::Zero(dim);
  for (int i = 0; i < dim; ++i) {
    if (x[i].is_zero()) continue;
    for (int j = 0; j < dim; ++j) {
      if (y[j].is_zero()) continue;
      RationalComplex c = x[i] * y[j];
      for (const auto& [k, v] : bracket_table[i][j]) out[k] += c * RationalComplex(v);
    }
  }
  return out;
}

RationalComplex BasisData::killing_form(const CVec& x, const CVec& y) const {
  RationalComplex acc;
  for (int i = 0; i < dim; ++i) {
    if (x[i].is_zero()) continue;
    for (int j = 0; j < dim; ++j) {
      if (y[j].is_zero() || killing(i, j).is_zero()) continue;
      acc += x[i] * y[j] * RationalComplex(killing(i, j));
    }
  }
  return acc;
}

RVec BasisData::basis_vector(int i) const {
  RVec v = RVec::Zero(dim);
  v[i] = Rational(1);
  return v;
}

RMat BasisData::ad_matrix(int i) const {
  RMat m = RMat::Zero(dim, dim);
  for (int j = 0; j < dim; ++j)
    for (const auto& [k, v] : bracket_table[i][j]) m(k, j) = v;
  return m;
}

RMat BasisData::ad_matrix(const RVec& x) const {
  RMat m = RMat::Zero(dim, dim);
  for (int i = 0; i < dim; ++i) {
    if (x[i].is_zero()) continue;
    for (int j = 0; j < dim; ++j)
      for (const auto& [k, v] : bracket_table[i][j]) m(k, j) += x[i] * v;
  }
  return m;
}

Rational BasisData::n_constant(int root_a, int root_b) const {
  Eigen::VectorXi sum = roots.roots[root_a].coords + roots.roots[root_b].coords;
  int target = roots.index_of(sum);
  if (target < 0) return Rational(0);
  const SparseVec& br = bracket_table[root_vector_index(root_a)][root_vector_index(root_b)];
  for (const auto& [k, v] : br)
    if (k == root_vector_index(target)) return v;
  return Rational(0);
}

BasisData build_normalized_basis(const RootDatum& rd) {
  BasisData bd;
  bd.roots = rd;
  int r = rd.rank();
  bd.dim = r + rd.num_roots();

  Realization real = realize(rd.type);
  std::vector<Eigen::VectorXi> simples = simple_roots_evec(rd.type);

  // Match realized roots (e-coordinates) to RootDatum roots (simple-root
  // coordinates): expand each realized e-vector over the simple e-vectors.
  RMat simple_mat(simples[0].size(), r);
  for (int j = 0; j < r; ++j)
    for (int i = 0; i < simples[j].size(); ++i) simple_mat(i, j) = Rational(simples[j][i]);
  std::vector<RMat> basis_matrices(bd.dim);
  for (int i = 0; i < r; ++i) basis_matrices[i] = real.cartan[i];
  std::vector<bool> seen(rd.num_roots(), false);
  for (size_t k = 0; k < real.root_evec.size(); ++k) {
    RVec ev(real.root_evec[k].size());
    for (int i = 0; i < ev.size(); ++i) ev[i] = Rational(real.root_evec[k][i]);
    auto coords = solve_exact(simple_mat, ev);
    if (!coords) throw std::logic_error("realized root outside simple-root lattice");
    Eigen::VectorXi ic(r);
    for (int i = 0; i < r; ++i) {
      if ((*coords)[i].den() != 1) throw std::logic_error("non-integral root coordinates");
      ic[i] = static_cast<int>((*coords)[i].num());
    }
    int idx = rd.index_of(ic);
    if (idx < 0) throw std::logic_error("realized root missing from root datum");
    if (seen[idx]) throw std::logic_error("duplicate realized root");
    seen[idx] = true;
    basis_matrices[bd.root_vector_index(idx)] = real.root_matrix[k];
  }
  for (bool s : seen)
    if (!s) throw std::logic_error("root datum root not realized");

  // Structure constants of the integral basis.
  MatrixExpander expander(basis_matrices);
  auto to_sparse = [&](const RVec& v) {
    SparseVec s;
    for (int k = 0; k < v.size(); ++k)
      if (!v[k].is_zero()) s.emplace_back(k, v[k]);
    return s;
  };
  bd.bracket_table.assign(bd.dim, std::vector<SparseVec>(bd.dim));
  for (int i = 0; i < bd.dim; ++i)
    for (int j = 0; j < bd.dim; ++j) {
      RMat br = basis_matrices[i] * basis_matrices[j] - basis_matrices[j] * basis_matrices[i];
      bd.bracket_table[i][j] = to_sparse(expander.expand(br));
    }

  // Killing form of the integral basis via the adjoint trace form.
  RMat killing0(bd.dim, bd.dim);
  {
    std::vector<RMat> ads(bd.dim);
    for (int i = 0; i < bd.dim; ++i) ads[i] = bd.ad_matrix(i);
    for (int i = 0; i < bd.dim; ++i)
      for (int j = i; j < bd.dim; ++j) {
        Rational tr(0);
        for (int a = 0; a < bd.dim; ++a)
          for (int b = 0; b < bd.dim; ++b) tr += ads[i](a, b) * ads[j](b, a);
        killing0(i, j) = tr;
        killing0(j, i) = tr;
      }
  }

  // Symmetric rescale e_alpha -> e_alpha / s_alpha with s_{-alpha} = s_alpha,
  // maximizing the square factor removed from b_alpha.
  RVec scale(bd.dim);
  for (int i = 0; i < r; ++i) scale[i] = Rational(1);
  for (int a = 0; a < rd.num_roots(); ++a) {
    int ia = bd.root_vector_index(a);
    int ina = bd.root_vector_index(rd.negative_of(a));
    Rational k = killing0(ia, ina);
    if (k.sign() <= 0) throw std::logic_error("B(e_a, e_{-a}) not positive in integral basis");
    scale[ia] = squarefree_scale(k);
    (void)ina;
  }
  for (int i = 0; i < bd.dim; ++i)
    for (int j = 0; j < bd.dim; ++j)
      for (auto& [k, v] : bd.bracket_table[i][j]) v = v * scale[k] / (scale[i] * scale[j]);
  bd.killing = RMat(bd.dim, bd.dim);
  for (int i = 0; i < bd.dim; ++i)
    for (int j = 0; j < bd.dim; ++j) bd.killing(i, j) = killing0(i, j) / (scale[i] * scale[j]);

  // h_alpha: B(h_alpha, .) = alpha(.) on the Cartan.
  RMat cartan_gram = bd.killing.topLeftCorner(r, r);
  for (int a = 0; a < rd.num_roots(); ++a) {
    RVec alpha_vals(r);
    for (int i = 0; i < r; ++i) alpha_vals[i] = Rational(bd.root_on_simple_coroot(a, i));
    auto h = solve_exact(cartan_gram, alpha_vals);
    if (!h) throw std::logic_error("degenerate Cartan Killing block");
    bd.h_dual.push_back(*h);
  }
  for (int a = 0; a < rd.num_roots(); ++a) {
    int ia = bd.root_vector_index(a);
    bd.b_norm.push_back(bd.killing(ia, bd.root_vector_index(rd.negative_of(a))));
  }

  return bd;
}

NRelationReport check_n_relations(const BasisData& bd) {
  NRelationReport rep;
  rep.antisymmetry = true;
  rep.cyclic_plain = true;
  rep.cyclic_weighted = true;
  const RootDatum& rd = bd.roots;
  for (int a = 0; a < rd.num_roots(); ++a) {
    for (int b = 0; b < rd.num_roots(); ++b) {
      Eigen::VectorXi sum = rd.roots[a].coords + rd.roots[b].coords;
      int ab = rd.index_of(sum);
      if (ab < 0) continue;
      int na = rd.negative_of(a), nb = rd.negative_of(b), nab = rd.negative_of(ab);
      Rational n_ab = bd.n_constant(a, b);
      if (n_ab.is_zero()) throw std::logic_error("vanishing N on a root pair");
      if (bd.n_constant(na, nb) != -n_ab) rep.antisymmetry = false;
      // displayed relations on the triple (-a, -b, a+b)
      Rational lhs = bd.n_constant(na, nb);
      Rational mid = bd.n_constant(nb, ab);
      Rational rhs = bd.n_constant(ab, na);
      if (!(lhs == mid && mid == rhs)) {
        rep.cyclic_plain = false;
        ++rep.plain_failures;
      }
      // invariant form: N_{a,b} b_{a+b} = N_{b,-a-b} b_a = N_{-a-b,a} b_b
      Rational w1 = n_ab * bd.b_norm[ab];
      Rational w2 = bd.n_constant(b, nab) * bd.b_norm[a];
      Rational w3 = bd.n_constant(nab, a) * bd.b_norm[b];
      if (!(w1 == w2 && w2 == w3)) rep.cyclic_weighted = false;
    }
  }
  return rep;
}

void save_basis(std::ostream& os, const BasisData& bd) {
  os << "lie_basis v1\n";
  os << "type " << bd.roots.type.label() << "\n";
  os << "dim " << bd.dim << "\n";
  for (int i = 0; i < bd.dim; ++i)
    for (int j = 0; j < bd.dim; ++j)
      for (const auto& [k, v] : bd.bracket_table[i][j])
        os << "bracket " << i << " " << j << " " << k << " " << v.str() << "\n";
  for (int i = 0; i < bd.dim; ++i)
    for (int j = 0; j < bd.dim; ++j)
      if (!bd.killing(i, j).is_zero())
        os << "killing " << i << " " << j << " " << bd.killing(i, j).str() << "\n";
  for (size_t a = 0; a < bd.h_dual.size(); ++a) {
    os << "h_dual " << a;
    for (int i = 0; i < bd.rank(); ++i) os << " " << bd.h_dual[a][i].str();
    os << "\n";
  }
  os << "end\n";
}

BasisData load_basis(std::istream& is) {
  std::string header;
  std::getline(is, header);
  if (header != "lie_basis v1") throw std::runtime_error("bad basis fixture header");
  std::string key;
  is >> key;
  std::string label;
  is >> label;
  BasisData bd = build_normalized_basis(build_root_system(CartanType::parse(label)));
  // verify stored tables against the rebuilt basis
  BasisData check = bd;
  std::string line;
  std::getline(is, line);
  while (std::getline(is, line)) {
    if (line == "end" || line.empty()) continue;
    std::istringstream ls(line);
    std::string tag;
    ls >> tag;
    if (tag == "dim") {
      int d;
      ls >> d;
      if (d != bd.dim) throw std::runtime_error("basis fixture dimension mismatch");
    } else if (tag == "bracket") {
      int i, j, k;
      std::string val;
      ls >> i >> j >> k >> val;
      Rational v = Rational::from_string(val);
      bool found = false;
      for (const auto& [kk, vv] : check.bracket_table[i][j])
        if (kk == k && vv == v) found = true;
      if (!found) throw std::runtime_error("basis fixture bracket mismatch");
    } else if (tag == "killing") {
      int i, j;
      std::string val;
      ls >> i >> j >> val;
      if (check.killing(i, j) != Rational::from_string(val))
        throw std::runtime_error("basis fixture killing mismatch");
    }
  }
  return bd;
}

}  // namespace subkoba
