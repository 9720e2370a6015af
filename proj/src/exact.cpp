#include "subkoba/exact.hpp"

namespace subkoba {

CVec complexify(const RVec& v) {
  CVec out(v.size());
  for (Eigen::Index i = 0; i < v.size(); ++i) out[i] = RationalComplex(v[i]);
  return out;
}

CMat complexify(const RMat& m) {
  CMat out(m.rows(), m.cols());
  for (Eigen::Index j = 0; j < m.cols(); ++j)
    for (Eigen::Index i = 0; i < m.rows(); ++i) out(i, j) = RationalComplex(m(i, j));
  return out;
}

RVec real_part(const CVec& v) {
  RVec out(v.size());
  for (Eigen::Index i = 0; i < v.size(); ++i) out[i] = v[i].re;
  return out;
}

RVec imag_part(const CVec& v) {
  RVec out(v.size());
  for (Eigen::Index i = 0; i < v.size(); ++i) out[i] = v[i].im;
  return out;
}

CVec conj_vec(const CVec& v) {
  CVec out(v.size());
  for (Eigen::Index i = 0; i < v.size(); ++i) out[i] = conj(v[i]);
  return out;
}

RVec realify(const CVec& v) {
  RVec out(2 * v.size());
  for (Eigen::Index i = 0; i < v.size(); ++i) {
    out[i] = v[i].re;
    out[v.size() + i] = v[i].im;
  }
  return out;
}

Eigen::VectorXd to_double(const RVec& v) {
  Eigen::VectorXd out(v.size());
  for (Eigen::Index i = 0; i < v.size(); ++i) out[i] = v[i].to_double();
  return out;
}

Eigen::VectorXcd to_double(const CVec& v) {
  Eigen::VectorXcd out(v.size());
  for (Eigen::Index i = 0; i < v.size(); ++i)
    out[i] = std::complex<double>(v[i].re.to_double(), v[i].im.to_double());
  return out;
}

Eigen::MatrixXd to_double(const RMat& m) {
  Eigen::MatrixXd out(m.rows(), m.cols());
  for (Eigen::Index j = 0; j < m.cols(); ++j)
    for (Eigen::Index i = 0; i < m.rows(); ++i) out(i, j) = m(i, j).to_double();
  return out;
}

template <class S>
std::vector<int> echelonize(Eigen::Matrix<S, Eigen::Dynamic, Eigen::Dynamic>& m) {
  std::vector<int> pivots;
  Eigen::Index row = 0;
  for (Eigen::Index col = 0; col < m.cols() && row < m.rows(); ++col) {
    Eigen::Index p = -1;
    for (Eigen::Index r = row; r < m.rows(); ++r) {
      if (!is_zero(m(r, col))) {
        p = r;
        break;
      }
    }
    if (p < 0) continue;
    if (p != row) m.row(p).swap(m.row(row));
    S inv_pivot = S(1) / m(row, col);
    for (Eigen::Index c = col; c < m.cols(); ++c) m(row, c) = m(row, c) * inv_pivot;
    for (Eigen::Index r = 0; r < m.rows(); ++r) {
      if (r == row || is_zero(m(r, col))) continue;
      S factor = m(r, col);
      for (Eigen::Index c = col; c < m.cols(); ++c) m(r, c) -= factor * m(row, c);
    }
    pivots.push_back(static_cast<int>(col));
    ++row;
  }
  return pivots;
}

template std::vector<int> echelonize<Rational>(RMat&);
template std::vector<int> echelonize<RationalComplex>(CMat&);

template <class S>
std::optional<Eigen::Matrix<S, Eigen::Dynamic, 1>> solve_exact(
    const Eigen::Matrix<S, Eigen::Dynamic, Eigen::Dynamic>& a,
    const Eigen::Matrix<S, Eigen::Dynamic, 1>& b) {
  Eigen::Matrix<S, Eigen::Dynamic, Eigen::Dynamic> aug(a.rows(), a.cols() + 1);
  aug.leftCols(a.cols()) = a;
  aug.col(a.cols()) = b;
  std::vector<int> pivots = echelonize(aug);
  if (!pivots.empty() && pivots.back() == static_cast<int>(a.cols()))
    return std::nullopt;  // inconsistent
  Eigen::Matrix<S, Eigen::Dynamic, 1> x(a.cols());
  for (Eigen::Index i = 0; i < x.size(); ++i) x[i] = S(0);
  for (size_t r = 0; r < pivots.size(); ++r) x[pivots[r]] = aug(r, a.cols());
  return x;
}

template std::optional<RVec> solve_exact<Rational>(const RMat&, const RVec&);
template std::optional<CVec> solve_exact<RationalComplex>(const CMat&, const CVec&);

template <class S>
bool in_col_span(const Eigen::Matrix<S, Eigen::Dynamic, Eigen::Dynamic>& basis,
                 const Eigen::Matrix<S, Eigen::Dynamic, 1>& v) {
  return solve_exact(basis, v).has_value();
}

template bool in_col_span<Rational>(const RMat&, const RVec&);
template bool in_col_span<RationalComplex>(const CMat&, const CVec&);

template <class S>
bool same_col_span(const Eigen::Matrix<S, Eigen::Dynamic, Eigen::Dynamic>& a,
                   const Eigen::Matrix<S, Eigen::Dynamic, Eigen::Dynamic>& b) {
  if (a.rows() != b.rows()) return false;
  Eigen::Matrix<S, Eigen::Dynamic, Eigen::Dynamic> ab(a.rows(), a.cols() + b.cols());
  ab.leftCols(a.cols()) = a;
  ab.rightCols(b.cols()) = b;
  int ra = rank_exact(a);
  int rb = rank_exact(b);
  int rab = rank_exact(ab);
  return ra == rb && ra == rab;
}

template bool same_col_span<Rational>(const RMat&, const RMat&);
template bool same_col_span<RationalComplex>(const CMat&, const CMat&);

template <class S>
Eigen::Matrix<S, Eigen::Dynamic, Eigen::Dynamic> nullspace_exact(
    const Eigen::Matrix<S, Eigen::Dynamic, Eigen::Dynamic>& a) {
  Eigen::Matrix<S, Eigen::Dynamic, Eigen::Dynamic> m = a;
  std::vector<int> pivots = echelonize(m);
  std::vector<int> free_cols;
  {
    size_t pi = 0;
    for (int c = 0; c < static_cast<int>(a.cols()); ++c) {
      if (pi < pivots.size() && pivots[pi] == c)
        ++pi;
      else
        free_cols.push_back(c);
    }
  }
  Eigen::Matrix<S, Eigen::Dynamic, Eigen::Dynamic> ns(a.cols(), free_cols.size());
  for (Eigen::Index j = 0; j < ns.cols(); ++j)
    for (Eigen::Index i = 0; i < ns.rows(); ++i) ns(i, j) = S(0);
  for (size_t k = 0; k < free_cols.size(); ++k) {
    int fc = free_cols[k];
    ns(fc, k) = S(1);
    for (size_t r = 0; r < pivots.size(); ++r) ns(pivots[r], k) = -m(r, fc);
  }
  return ns;
}

template RMat nullspace_exact<Rational>(const RMat&);
template CMat nullspace_exact<RationalComplex>(const CMat&);

template <class S>
Eigen::Matrix<S, Eigen::Dynamic, Eigen::Dynamic> col_span_basis(
    const Eigen::Matrix<S, Eigen::Dynamic, Eigen::Dynamic>& a) {
  Eigen::Matrix<S, Eigen::Dynamic, Eigen::Dynamic> m = a;
  std::vector<int> pivots = echelonize(m);
  Eigen::Matrix<S, Eigen::Dynamic, Eigen::Dynamic> out(a.rows(), pivots.size());
  for (size_t k = 0; k < pivots.size(); ++k) out.col(k) = a.col(pivots[k]);
  return out;
}

template RMat col_span_basis<Rational>(const RMat&);
template CMat col_span_basis<RationalComplex>(const CMat&);

template <class S>
Eigen::Matrix<S, Eigen::Dynamic, Eigen::Dynamic> intersect_col_spans(
    const Eigen::Matrix<S, Eigen::Dynamic, Eigen::Dynamic>& a,
    const Eigen::Matrix<S, Eigen::Dynamic, Eigen::Dynamic>& b) {
  // nullspace of [A | -B] gives coefficients (u, v) with A u = B v
  Eigen::Matrix<S, Eigen::Dynamic, Eigen::Dynamic> ab(a.rows(), a.cols() + b.cols());
  ab.leftCols(a.cols()) = a;
  for (Eigen::Index j = 0; j < b.cols(); ++j) ab.col(a.cols() + j) = -b.col(j);
  auto ns = nullspace_exact(ab);
  Eigen::Matrix<S, Eigen::Dynamic, Eigen::Dynamic> vecs(a.rows(), ns.cols());
  for (Eigen::Index j = 0; j < ns.cols(); ++j)
    vecs.col(j) = a * ns.col(j).head(a.cols());
  return col_span_basis(vecs);
}

template RMat intersect_col_spans<Rational>(const RMat&, const RMat&);
template CMat intersect_col_spans<RationalComplex>(const CMat&, const CMat&);

Rational det_exact(RMat m) {
  if (m.rows() != m.cols()) throw std::invalid_argument("det of non-square matrix");
  Rational det(1);
  Eigen::Index n = m.rows();
  for (Eigen::Index col = 0; col < n; ++col) {
    Eigen::Index p = -1;
    for (Eigen::Index r = col; r < n; ++r)
      if (!m(r, col).is_zero()) {
        p = r;
        break;
      }
    if (p < 0) return Rational(0);
    if (p != col) {
      m.row(p).swap(m.row(col));
      det = -det;
    }
    det *= m(col, col);
    Rational inv = Rational(1) / m(col, col);
    for (Eigen::Index r = col + 1; r < n; ++r) {
      if (m(r, col).is_zero()) continue;
      Rational f = m(r, col) * inv;
      for (Eigen::Index c = col; c < n; ++c) m(r, c) -= f * m(col, c);
    }
  }
  return det;
}

bool is_positive_definite_exact(const RMat& sym) {
  for (Eigen::Index k = 1; k <= sym.rows(); ++k) {
    if (det_exact(sym.topLeftCorner(k, k)).sign() <= 0) return false;
  }
  return true;
}

bool is_negative_definite_exact(const RMat& sym) {
  RMat neg = -sym;
  return is_positive_definite_exact(neg);
}

bool RowReducer::add_row(RVec row) {
  if (row.size() != cols_) throw std::invalid_argument("row size mismatch");
  for (size_t r = 0; r < rows_.size(); ++r) {
    const Rational& c = row[pivot_col_[r]];
    if (!c.is_zero()) {
      Rational f = c;  // stored rows have unit pivots
      for (int j = 0; j < cols_; ++j) row[j] -= f * rows_[r][j];
    }
  }
  int pc = -1;
  for (int j = 0; j < cols_; ++j)
    if (!row[j].is_zero()) {
      pc = j;
      break;
    }
  if (pc < 0) return false;
  Rational inv = Rational(1) / row[pc];
  for (int j = pc; j < cols_; ++j) row[j] *= inv;
  // back-substitute into existing rows to keep reduced form
  for (size_t r = 0; r < rows_.size(); ++r) {
    Rational f = rows_[r][pc];
    if (!f.is_zero())
      for (int j = 0; j < cols_; ++j) rows_[r][j] -= f * row[j];
  }
  rows_.push_back(std::move(row));
  pivot_col_.push_back(pc);
  return true;
}

RMat RowReducer::nullspace() const {
  RMat m(rows_.size(), cols_);
  for (size_t r = 0; r < rows_.size(); ++r) m.row(r) = rows_[r].transpose();
  if (rows_.empty()) m = RMat::Zero(0, cols_);
  return nullspace_exact(m);
}

uint64_t RationalSampler::next_u64() {
  // splitmix64
  state_ += 0x9e3779b97f4a7c15ull;
  uint64_t z = state_;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
  return z ^ (z >> 31);
}

Rational RationalSampler::next(int max_num, int max_den) {
  int64_t n = static_cast<int64_t>(next_u64() % (2 * max_num + 1)) - max_num;
  int64_t d = static_cast<int64_t>(next_u64() % max_den) + 1;
  return Rational(n, d);
}

RationalComplex RationalSampler::next_complex(int max_num, int max_den) {
  Rational re = next(max_num, max_den);
  Rational im = next(max_num, max_den);
  return {re, im};
}

CVec RationalSampler::next_cvec(int n, int max_num, int max_den) {
  CVec v(n);
  for (int i = 0; i < n; ++i) v[i] = next_complex(max_num, max_den);
  return v;
}

}  // namespace subkoba
