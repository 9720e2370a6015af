#include "subkoba/lie_algebra.hpp"

namespace subkoba {

RVec LieAlgebraData::bracket(const RVec& x, const RVec& y) const {
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

CVec LieAlgebraData::bracket(const CVec& x, const CVec& y) const {
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

RMat LieAlgebraData::ad_matrix(const RVec& x) const {
  RMat m = RMat::Zero(dim, dim);
  for (int i = 0; i < dim; ++i) {
    if (x[i].is_zero()) continue;
    for (int j = 0; j < dim; ++j)
      for (const auto& [k, v] : bracket_table[i][j]) m(k, j) += x[i] * v;
  }
  return m;
}

RMat LieAlgebraData::ad_matrix(int i) const {
  RMat m = RMat::Zero(dim, dim);
  for (int j = 0; j < dim; ++j)
    for (const auto& [k, v] : bracket_table[i][j]) m(k, j) = v;
  return m;
}

RVec LieAlgebraData::basis_vector(int i) const {
  RVec v = RVec::Zero(dim);
  v[i] = Rational(1);
  return v;
}

void LieAlgebraData::validate() const {
  for (int i = 0; i < dim; ++i)
    for (int j = 0; j < dim; ++j) {
      RVec bij = bracket(basis_vector(i), basis_vector(j));
      RVec bji = bracket(basis_vector(j), basis_vector(i));
      if (!is_zero_vec(RVec(bij + bji)))
        throw std::invalid_argument("structure constants are not antisymmetric");
    }
  for (int i = 0; i < dim; ++i)
    for (int j = i + 1; j < dim; ++j)
      for (int k = j + 1; k < dim; ++k) {
        RVec jac = bracket(bracket(basis_vector(i), basis_vector(j)), basis_vector(k)) +
                   bracket(bracket(basis_vector(j), basis_vector(k)), basis_vector(i)) +
                   bracket(bracket(basis_vector(k), basis_vector(i)), basis_vector(j));
        if (!is_zero_vec(jac)) throw std::invalid_argument("Jacobi identity fails");
      }
}

LieAlgebraData LieAlgebraData::from_structure_constants(
    int dim, const std::vector<std::tuple<int, int, int, Rational>>& entries) {
  LieAlgebraData la;
  la.dim = dim;
  la.bracket_table.assign(dim, std::vector<SparseVec>(dim));
  for (const auto& [i, j, k, c] : entries) {
    la.bracket_table[i][j].emplace_back(k, c);
    la.bracket_table[j][i].emplace_back(k, -c);
  }
  la.killing = RMat(dim, dim);
  std::vector<RMat> ads(dim);
  for (int i = 0; i < dim; ++i) ads[i] = la.ad_matrix(i);
  for (int i = 0; i < dim; ++i)
    for (int j = i; j < dim; ++j) {
      Rational tr(0);
      for (int a = 0; a < dim; ++a)
        for (int b = 0; b < dim; ++b) tr += ads[i](a, b) * ads[j](b, a);
      la.killing(i, j) = tr;
      la.killing(j, i) = tr;
    }
  la.validate();
  return la;
}

namespace {

LieAlgebraData assemble(int dim, const std::vector<std::vector<RVec>>& table) {
  std::vector<std::tuple<int, int, int, Rational>> entries;
  for (int i = 0; i < dim; ++i)
    for (int j = i + 1; j < dim; ++j)
      for (int k = 0; k < dim; ++k)
        if (!table[i][j][k].is_zero()) entries.emplace_back(i, j, k, table[i][j][k]);
  return LieAlgebraData::from_structure_constants(dim, entries);
}

}  // namespace

LieAlgebraData realify_real_form(const RealFormData& rf) {
  const BasisData& bd = rf.bd;
  int dim = bd.dim;
  // expansion of gC vectors over the real basis columns
  CMat basis = rf.g_basis;
  std::vector<std::vector<RVec>> table(dim, std::vector<RVec>(dim, RVec::Zero(dim)));
  for (int i = 0; i < dim; ++i)
    for (int j = i + 1; j < dim; ++j) {
      CVec br = bd.bracket(CVec(basis.col(i)), CVec(basis.col(j)));
      auto coeffs = solve_exact(basis, br);
      if (!coeffs) throw std::logic_error("real form bracket left the real span");
      for (int k = 0; k < dim; ++k) {
        if (!(*coeffs)[k].im.is_zero())
          throw std::logic_error("real form structure constants are not real");
        table[i][j][k] = (*coeffs)[k].re;
      }
    }
  LieAlgebraData la = assemble(dim, table);

  // theta in the real basis: theta(basis_j) expanded over the basis
  RMat theta(dim, dim);
  for (int j = 0; j < dim; ++j) {
    CVec img = rf.theta(CVec(basis.col(j)));
    auto coeffs = solve_exact(basis, img);
    if (!coeffs) throw std::logic_error("theta left the real span");
    for (int k = 0; k < dim; ++k) {
      if (!(*coeffs)[k].im.is_zero()) throw std::logic_error("theta not real on the real form");
      theta(k, j) = (*coeffs)[k].re;
    }
  }
  la.theta = theta;
  // isotropy default: the torus columns i h_1..i h_r
  RMat v = RMat::Zero(dim, bd.rank());
  for (int j = 0; j < bd.rank(); ++j) v(j, j) = Rational(1);
  la.v_basis = v;
  return la;
}

LieAlgebraData realify_complex_algebra(const BasisData& bd) {
  int n = bd.dim;
  int dim = 2 * n;
  // basis: x_1..x_n, i x_1..i x_n
  std::vector<std::vector<RVec>> upper(dim, std::vector<RVec>(dim, RVec::Zero(dim)));
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      RVec br = bd.bracket(bd.basis_vector(i), bd.basis_vector(j));
      for (int k = 0; k < n; ++k) {
        if (br[k].is_zero()) continue;
        if (i < j) {
          upper[i][j][k] += br[k];            // [x_i, x_j]
          upper[n + i][n + j][k] -= br[k];    // [i x_i, i x_j] = -[x_i, x_j]
        }
        upper[i][n + j][n + k] += br[k];      // [x_i, i x_j] = i [x_i, x_j]
      }
    }
  return assemble(dim, upper);
}

RMat derived_subalgebra(const LieAlgebraData& la) {
  std::vector<RVec> cols;
  for (int i = 0; i < la.dim; ++i)
    for (int j = i + 1; j < la.dim; ++j) {
      RVec br = la.bracket(la.basis_vector(i), la.basis_vector(j));
      if (!is_zero_vec(br)) cols.push_back(br);
    }
  RMat m(la.dim, cols.size());
  for (size_t j = 0; j < cols.size(); ++j) m.col(j) = cols[j];
  return col_span_basis(m);
}

namespace {

// Linear map sending v to its coefficients off span(w) in the decomposition
// v = w a + comp b, where comp extends w to a basis by standard vectors at
// the non-pivot rows of echelon(w).
RMat off_span_projector(const RMat& w) {
  int n = static_cast<int>(w.rows());
  RMat full = col_span_basis(w);
  std::vector<int> comp_rows;
  RMat grow = full;
  for (int r = 0; r < n && grow.cols() < n; ++r) {
    RVec e = RVec::Zero(n);
    e[r] = Rational(1);
    RMat cand(n, grow.cols() + 1);
    cand.leftCols(grow.cols()) = grow;
    cand.col(grow.cols()) = e;
    if (rank_exact(cand) > rank_exact(grow)) {
      grow = cand;
      comp_rows.push_back(r);
    }
  }
  // invert [full | comp] and take the bottom block
  int k = static_cast<int>(full.cols());
  RMat aug(n, 2 * n);
  aug.leftCols(k) = full;
  for (size_t j = 0; j < comp_rows.size(); ++j) {
    RVec e = RVec::Zero(n);
    e[comp_rows[j]] = Rational(1);
    aug.col(k + static_cast<int>(j)) = e;
  }
  aug.rightCols(n) = RMat::Identity(n, n);
  echelonize(aug);
  RMat inv = aug.rightCols(n);
  return inv.bottomRows(n - k);  // rows selecting the off-span coefficients
}

}  // namespace

RMat largest_ideal_inside(const LieAlgebraData& la, const RMat& sub) {
  RMat w = col_span_basis(sub);
  for (int guard = 0; guard <= la.dim + 1; ++guard) {
    if (w.cols() == 0) return w;
    RMat proj = off_span_projector(w);  // (n - k) x n
    std::vector<RVec> constraint_rows;
    for (int i = 0; i < la.dim; ++i) {
      RMat images(la.dim, w.cols());
      for (int j = 0; j < w.cols(); ++j)
        images.col(j) = la.bracket(la.basis_vector(i), RVec(w.col(j)));
      RMat cons = proj * images;  // conditions on the coefficient vector c
      for (int r = 0; r < cons.rows(); ++r)
        if (!is_zero_vec(RVec(cons.row(r).transpose())))
          constraint_rows.push_back(cons.row(r).transpose());
    }
    if (constraint_rows.empty()) return w;
    RMat cons(constraint_rows.size(), w.cols());
    for (size_t r = 0; r < constraint_rows.size(); ++r)
      cons.row(r) = constraint_rows[r].transpose();
    RMat ns = nullspace_exact(cons);
    if (ns.cols() == 0) return RMat::Zero(la.dim, 0);
    RMat reduced(la.dim, ns.cols());
    for (int j = 0; j < ns.cols(); ++j) reduced.col(j) = w * ns.col(j);
    w = col_span_basis(reduced);
  }
  return w;
}

std::vector<RMat> centroid(const LieAlgebraData& la) {
  int n = la.dim;
  // impose commutation with ad of a growing generating set, verifying against
  // every basis ad at the end; each failed check enlarges the set
  std::vector<int> gens = {0};
  for (int round = 0; round < n + 1; ++round) {
    RowReducer rr(n * n);
    for (int g : gens) {
      RMat ad = la.ad_matrix(g);
      for (int p = 0; p < n; ++p)
        for (int q = 0; q < n; ++q) {
          RVec row = RVec::Zero(n * n);
          // (phi ad - ad phi)_{pq} = sum_k phi_{pk} ad_{kq} - ad_{pk} phi_{kq}
          for (int k = 0; k < n; ++k) {
            if (!ad(k, q).is_zero()) row[p * n + k] += ad(k, q);
            if (!ad(p, k).is_zero()) row[k * n + q] -= ad(p, k);
          }
          if (!is_zero_vec(row)) rr.add_row(row);
        }
    }
    RMat ns = rr.nullspace();
    std::vector<RMat> out;
    for (int j = 0; j < ns.cols(); ++j) {
      RMat phi(n, n);
      for (int p = 0; p < n; ++p)
        for (int k = 0; k < n; ++k) phi(p, k) = ns(p * n + k, j);
      out.push_back(phi);
    }
    // verify against all ads
    int failing = -1;
    for (int i = 0; i < n && failing < 0; ++i) {
      RMat ad = la.ad_matrix(i);
      for (const auto& phi : out) {
        RMat comm = phi * ad - ad * phi;
        bool zero = true;
        for (int p = 0; p < n && zero; ++p)
          for (int q = 0; q < n; ++q)
            if (!comm(p, q).is_zero()) {
              zero = false;
              break;
            }
        if (!zero) {
          failing = i;
          break;
        }
      }
    }
    if (failing < 0) return out;
    gens.push_back(failing);
  }
  throw std::logic_error("centroid computation did not stabilize");
}

}  // namespace subkoba
