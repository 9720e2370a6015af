#include "subkoba/polynomial.hpp"

#include <sstream>

namespace subkoba {

MPoly MPoly::constant(int nvars, const RationalComplex& c) {
  MPoly p(nvars);
  p.add_term(Exponents(nvars, 0), c);
  return p;
}

MPoly MPoly::variable(int nvars, int index) {
  MPoly p(nvars);
  Exponents e(nvars, 0);
  e.at(index) = 1;
  p.add_term(e, RationalComplex(Rational(1)));
  return p;
}

RationalComplex MPoly::constant_value() const {
  if (terms_.empty()) return RationalComplex();
  return terms_.begin()->second;
}

int MPoly::degree() const {
  int d = 0;
  for (const auto& [e, c] : terms_) {
    int t = 0;
    for (int k : e) t += k;
    d = std::max(d, t);
  }
  return d;
}

void MPoly::add_term(const Exponents& e, const RationalComplex& c) {
  if (c.is_zero()) return;
  auto it = terms_.find(e);
  if (it == terms_.end()) {
    terms_.emplace(e, c);
  } else {
    it->second += c;
    if (it->second.is_zero()) terms_.erase(it);
  }
}

MPoly MPoly::operator-() const {
  MPoly p(nvars_);
  for (const auto& [e, c] : terms_) p.terms_.emplace(e, -c);
  return p;
}

MPoly& MPoly::operator+=(const MPoly& o) {
  if (terms_.empty()) nvars_ = std::max(nvars_, o.nvars_);
  for (const auto& [e, c] : o.terms_) add_term(e, c);
  return *this;
}

MPoly& MPoly::operator-=(const MPoly& o) {
  if (terms_.empty()) nvars_ = std::max(nvars_, o.nvars_);
  for (const auto& [e, c] : o.terms_) add_term(e, -c);
  return *this;
}

MPoly operator*(const MPoly& a, const MPoly& b) {
  MPoly p(std::max(a.nvars_, b.nvars_));
  for (const auto& [ea, ca] : a.terms_)
    for (const auto& [eb, cb] : b.terms_) {
      MPoly::Exponents e(p.nvars_, 0);
      for (size_t i = 0; i < ea.size(); ++i) e[i] += ea[i];
      for (size_t i = 0; i < eb.size(); ++i) e[i] += eb[i];
      p.add_term(e, ca * cb);
    }
  return p;
}

MPoly MPoly::scaled(const RationalComplex& c) const {
  MPoly p(nvars_);
  if (c.is_zero()) return p;
  for (const auto& [e, v] : terms_) p.terms_.emplace(e, v * c);
  return p;
}

MPoly MPoly::derivative(int var) const {
  MPoly p(nvars_);
  for (const auto& [e, c] : terms_) {
    if (e[var] == 0) continue;
    Exponents d = e;
    d[var] -= 1;
    p.add_term(d, c * RationalComplex(Rational(e[var])));
  }
  return p;
}

MPoly MPoly::integrate(int var) const {
  MPoly p(nvars_);
  for (const auto& [e, c] : terms_) {
    Exponents d = e;
    d[var] += 1;
    p.add_term(d, c / RationalComplex(Rational(d[var])));
  }
  return p;
}

MPoly MPoly::compose(const std::vector<MPoly>& subs) const {
  if (static_cast<int>(subs.size()) != nvars_)
    throw std::invalid_argument("compose: substitution arity mismatch");
  int target_vars = subs.empty() ? 0 : subs[0].nvars();
  MPoly out(target_vars);
  for (const auto& [e, c] : terms_) {
    MPoly term = MPoly::constant(target_vars, c);
    for (int v = 0; v < nvars_; ++v)
      for (int k = 0; k < e[v]; ++k) term = term * subs[v];
    out += term;
  }
  return out;
}

RationalComplex MPoly::eval_exact(const CVec& z) const {
  RationalComplex acc;
  for (const auto& [e, c] : terms_) {
    RationalComplex t = c;
    for (int v = 0; v < nvars_; ++v)
      for (int k = 0; k < e[v]; ++k) t *= z[v];
    acc += t;
  }
  return acc;
}

std::complex<double> MPoly::eval(const Eigen::VectorXcd& z) const {
  std::complex<double> acc = 0.0;
  for (const auto& [e, c] : terms_) {
    std::complex<double> t(c.re.to_double(), c.im.to_double());
    for (int v = 0; v < nvars_; ++v)
      for (int k = 0; k < e[v]; ++k) t *= z[v];
    acc += t;
  }
  return acc;
}

std::string MPoly::str() const {
  if (terms_.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  for (const auto& [e, c] : terms_) {
    if (!first) os << " + ";
    first = false;
    os << c.str();
    for (int v = 0; v < nvars_; ++v) {
      if (e[v] == 0) continue;
      os << "*z" << (v + 1);
      if (e[v] > 1) os << "^" << e[v];
    }
  }
  return os.str();
}

PolyField field_bracket(const PolyField& x, const PolyField& y) {
  size_t n = x.size();
  if (y.size() != n) throw std::invalid_argument("field_bracket: dimension mismatch");
  PolyField out(n);
  for (size_t mu = 0; mu < n; ++mu) {
    MPoly acc(static_cast<int>(n));
    for (size_t nu = 0; nu < n; ++nu) {
      acc += x[nu] * y[mu].derivative(static_cast<int>(nu));
      acc -= y[nu] * x[mu].derivative(static_cast<int>(nu));
    }
    out[mu] = acc;
  }
  return out;
}

MPoly poly_det(const std::vector<std::vector<MPoly>>& m) {
  size_t n = m.size();
  if (n == 0) return MPoly();
  if (n == 1) return m[0][0];
  MPoly acc(m[0][0].nvars());
  for (size_t j = 0; j < n; ++j) {
    std::vector<std::vector<MPoly>> minor;
    for (size_t r = 1; r < n; ++r) {
      std::vector<MPoly> row;
      for (size_t c = 0; c < n; ++c)
        if (c != j) row.push_back(m[r][c]);
      minor.push_back(row);
    }
    MPoly cof = m[0][j] * poly_det(minor);
    if (j % 2 == 0)
      acc += cof;
    else
      acc -= cof;
  }
  return acc;
}

std::optional<std::vector<std::vector<MPoly>>> poly_inverse_constant_det(
    const std::vector<std::vector<MPoly>>& m) {
  size_t n = m.size();
  MPoly det = poly_det(m);
  if (!det.is_constant() || det.is_zero()) return std::nullopt;
  RationalComplex inv_det = RationalComplex(Rational(1)) / det.constant_value();
  std::vector<std::vector<MPoly>> adj(n, std::vector<MPoly>(n));
  for (size_t i = 0; i < n; ++i)
    for (size_t j = 0; j < n; ++j) {
      std::vector<std::vector<MPoly>> minor;
      for (size_t r = 0; r < n; ++r) {
        if (r == i) continue;
        std::vector<MPoly> row;
        for (size_t c = 0; c < n; ++c)
          if (c != j) row.push_back(m[r][c]);
        minor.push_back(row);
      }
      MPoly cof = n == 1 ? MPoly::constant(m[0][0].nvars(), RationalComplex(Rational(1)))
                         : poly_det(minor);
      if ((i + j) % 2 == 1) cof = -cof;
      adj[j][i] = cof.scaled(inv_det);  // adjugate transpose
    }
  return adj;
}

NumericPoly::NumericPoly(const MPoly& p) : nvars(p.nvars()) {
  for (const auto& [e, c] : p.terms())
    terms.push_back({std::complex<double>(c.re.to_double(), c.im.to_double()), e});
}

std::complex<double> NumericPoly::eval(const Eigen::VectorXcd& z) const {
  std::complex<double> acc = 0.0;
  for (const auto& t : terms) {
    std::complex<double> v = t.coeff;
    for (int var = 0; var < nvars; ++var) {
      switch (t.exps[var]) {
        case 0: break;
        case 1: v *= z[var]; break;
        case 2: v *= z[var] * z[var]; break;
        default: {
          std::complex<double> p = z[var];
          for (int k = 1; k < t.exps[var]; ++k) p *= z[var];
          v *= p;
        }
      }
    }
    acc += v;
  }
  return acc;
}

NumericField::NumericField(const PolyField& f) {
  for (const auto& p : f) components.emplace_back(p);
}

Eigen::VectorXcd NumericField::eval(const Eigen::VectorXcd& z) const {
  Eigen::VectorXcd out(components.size());
  for (size_t i = 0; i < components.size(); ++i) out[i] = components[i].eval(z);
  return out;
}

}  // namespace subkoba
