#include "subkoba/real_form.hpp"

#include <istream>
#include <ostream>
#include <sstream>

namespace subkoba {

namespace {

// sigma on a single basis vector; antilinearity is applied by callers.
CVec sigma_basis(const BasisData& bd, const std::vector<int>& eps, int i) {
  CVec out = CVec::Zero(bd.dim);
  if (bd.is_cartan_index(i)) {
    out[i] = RationalComplex(Rational(-1));
  } else {
    int a = bd.root_of_basis_index(i);
    out[bd.root_vector_index(bd.roots.negative_of(a))] = RationalComplex(Rational(eps[a]));
  }
  return out;
}

}  // namespace

CVec RealFormData::sigma(const CVec& x) const {
  CVec out = CVec::Zero(bd.dim);
  for (int i = 0; i < bd.dim; ++i) {
    if (x[i].is_zero()) continue;
    RationalComplex c = conj(x[i]);
    CVec sb = sigma_basis(bd, eps, i);
    for (int k = 0; k < bd.dim; ++k)
      if (!sb[k].is_zero()) out[k] += c * sb[k];
  }
  return out;
}

CVec RealFormData::theta(const CVec& x) const {
  CVec out = x;
  for (int i = bd.rank(); i < bd.dim; ++i) {
    int a = bd.root_of_basis_index(i);
    out[i] = x[i] * RationalComplex(Rational(-eps[a]));
  }
  return out;
}

RMat RealFormData::theta_matrix() const {
  RMat m = RMat::Identity(bd.dim, bd.dim);
  for (int i = bd.rank(); i < bd.dim; ++i)
    m(i, i) = Rational(-eps[bd.root_of_basis_index(i)]);
  return m;
}

RationalComplex RealFormData::metric(const CVec& x, const CVec& y) const {
  return bd.killing_form(x, sigma(y));
}

RealFormData apply_real_form(const BasisData& bd, const std::vector<int>& eps_positive) {
  const RootDatum& rd = bd.roots;
  std::vector<int> positives = rd.positive_indices();
  if (eps_positive.size() != positives.size())
    throw InvalidRealForm("epsilon labeling must cover every positive root");
  RealFormData rf;
  rf.bd = bd;
  rf.eps.assign(rd.num_roots(), 0);
  for (size_t p = 0; p < positives.size(); ++p) {
    if (eps_positive[p] != 1 && eps_positive[p] != -1)
      throw InvalidRealForm("epsilon values must be +1 or -1");
    rf.eps[positives[p]] = eps_positive[p];
    rf.eps[rd.negative_of(positives[p])] = eps_positive[p];
  }

  // sigma must be an involutive antilinear automorphism; on basis vectors the
  // coefficients are real, so the bracket compatibility check is exact.
  for (int i = 0; i < bd.dim; ++i) {
    CVec si = sigma_basis(bd, rf.eps, i);
    CVec back = rf.sigma(si);
    for (int k = 0; k < bd.dim; ++k) {
      RationalComplex expect = (k == i) ? RationalComplex(Rational(1)) : RationalComplex();
      if (back[k] != expect) throw InvalidRealForm("sigma is not an involution");
    }
  }
  for (int i = 0; i < bd.dim; ++i)
    for (int j = 0; j < bd.dim; ++j) {
      CVec lhs = rf.sigma(bd.bracket(complexify(bd.basis_vector(i)), complexify(bd.basis_vector(j))));
      CVec rhs = bd.bracket(sigma_basis(bd, rf.eps, i), sigma_basis(bd, rf.eps, j));
      for (int k = 0; k < bd.dim; ++k)
        if (lhs[k] != rhs[k]) throw InvalidRealForm("sigma is not an automorphism");
    }
  // theta involutive and commuting with sigma
  for (int i = 0; i < bd.dim; ++i) {
    CVec e = CVec::Zero(bd.dim);
    e[i] = RationalComplex(Rational(1));
    CVec tt = rf.theta(rf.theta(e));
    CVec st = rf.sigma(rf.theta(e));
    CVec ts = rf.theta(rf.sigma(e));
    for (int k = 0; k < bd.dim; ++k) {
      if (tt[k] != e[k]) throw InvalidRealForm("theta is not an involution");
      if (st[k] != ts[k]) throw InvalidRealForm("sigma and theta do not commute");
    }
  }

  // real basis: i h_j, then u_alpha, v_alpha per positive root (k first, then q)
  int r = bd.rank();
  int n_pos = static_cast<int>(positives.size());
  rf.g_basis = CMat(bd.dim, r + 2 * n_pos);
  for (int i = 0; i < bd.dim; ++i)
    for (int j = 0; j < rf.g_basis.cols(); ++j) rf.g_basis(i, j) = RationalComplex();
  rf.t_basis = CMat(bd.dim, r);
  for (int i = 0; i < bd.dim; ++i)
    for (int j = 0; j < r; ++j) rf.t_basis(i, j) = RationalComplex();
  for (int j = 0; j < r; ++j) {
    rf.g_basis(j, j) = rc_i();
    rf.t_basis(j, j) = rc_i();
  }
  std::vector<CVec> k_cols, q_cols;
  for (int j = 0; j < r; ++j) k_cols.push_back(rf.t_basis.col(j));
  for (int p = 0; p < n_pos; ++p) {
    int a = positives[p];
    int ia = bd.root_vector_index(a);
    int ina = bd.root_vector_index(rd.negative_of(a));
    CVec u = CVec::Zero(bd.dim), v = CVec::Zero(bd.dim);
    u[ia] = RationalComplex(Rational(1));
    u[ina] = RationalComplex(Rational(rf.eps[a]));
    v[ia] = rc_i();
    v[ina] = RationalComplex(Rational(0), Rational(-rf.eps[a]));
    rf.g_basis.col(r + 2 * p) = u;
    rf.g_basis.col(r + 2 * p + 1) = v;
    if (rf.eps[a] == -1) {
      k_cols.push_back(u);
      k_cols.push_back(v);
    } else {
      q_cols.push_back(u);
      q_cols.push_back(v);
    }
  }
  rf.k_basis = CMat(bd.dim, k_cols.size());
  for (size_t j = 0; j < k_cols.size(); ++j) rf.k_basis.col(j) = k_cols[j];
  rf.q_basis = CMat(bd.dim, q_cols.size());
  for (size_t j = 0; j < q_cols.size(); ++j) rf.q_basis.col(j) = q_cols[j];
  rf.v_basis = rf.t_basis;

  auto gram = [&](const CMat& basis) {
    RMat g(basis.cols(), basis.cols());
    for (int i = 0; i < basis.cols(); ++i)
      for (int j = 0; j < basis.cols(); ++j) {
        RationalComplex val = bd.killing_form(CVec(basis.col(i)), CVec(basis.col(j)));
        if (!val.im.is_zero()) throw InvalidRealForm("Killing form not real on real basis");
        g(i, j) = val.re;
      }
    return g;
  };
  rf.gram_k = gram(rf.k_basis);
  if (!is_negative_definite_exact(rf.gram_k))
    throw InvalidRealForm("Killing form is not negative definite on k");
  if (rf.q_basis.cols() > 0) {
    rf.gram_q = gram(rf.q_basis);
    if (!is_positive_definite_exact(rf.gram_q))
      throw InvalidRealForm("Killing form is not positive definite on q");
  } else {
    rf.gram_q = RMat::Zero(0, 0);
  }
  return rf;
}

std::vector<int> parity_epsilon(const BasisData& bd, const std::vector<int>& v_simple) {
  std::vector<bool> in_v(bd.rank(), false);
  for (int i : v_simple) in_v.at(i) = true;
  std::vector<int> eps;
  for (int a : bd.roots.positive_indices()) {
    int level = 0;
    for (int i = 0; i < bd.rank(); ++i)
      if (!in_v[i]) level += bd.roots.roots[a].coords[i];
    eps.push_back(level % 2 != 0 ? 1 : -1);
  }
  return eps;
}

std::vector<int> compact_epsilon(const BasisData& bd) {
  return std::vector<int>(bd.roots.positive_indices().size(), -1);
}

void save_real_form(std::ostream& os, const RealFormData& rf) {
  os << "real_form v1\n";
  os << "type " << rf.bd.roots.type.label() << "\n";
  os << "epsilon";
  for (int a : rf.bd.roots.positive_indices()) os << " " << rf.eps[a];
  os << "\n";
  save_basis(os, rf.bd);
}

RealFormData load_real_form(std::istream& is) {
  std::string header;
  std::getline(is, header);
  if (header != "real_form v1") throw std::runtime_error("bad real form fixture header");
  std::string key, label;
  is >> key >> label;
  is >> key;
  if (key != "epsilon") throw std::runtime_error("missing epsilon line");
  BasisData bd = build_normalized_basis(build_root_system(CartanType::parse(label)));
  std::vector<int> eps;
  for (size_t p = 0; p < bd.roots.positive_indices().size(); ++p) {
    int e;
    is >> e;
    eps.push_back(e);
  }
  std::string rest;
  std::getline(is, rest);
  BasisData stored = load_basis(is);
  (void)stored;
  return apply_real_form(bd, eps);
}

}  // namespace subkoba
