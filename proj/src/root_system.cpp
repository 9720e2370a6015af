#include "subkoba/root_system.hpp"

#include <algorithm>
#include <map>

namespace subkoba {

CartanType CartanType::parse(const std::string& label) {
  if (label.size() < 2) throw UnsupportedType("bad Cartan type label: '" + label + "'");
  Series s;
  switch (label[0]) {
    case 'A': case 'a': s = Series::A; break;
    case 'B': case 'b': s = Series::B; break;
    case 'C': case 'c': s = Series::C; break;
    case 'D': case 'd': s = Series::D; break;
    default: throw UnsupportedType("unsupported series: '" + label + "'");
  }
  int rank = 0;
  try {
    rank = std::stoi(label.substr(1));
  } catch (...) {
    throw UnsupportedType("bad Cartan type label: '" + label + "'");
  }
  return CartanType{s, rank};
}

std::string CartanType::label() const {
  const char* names = "ABCD";
  return std::string(1, names[static_cast<int>(series)]) + std::to_string(rank);
}

Eigen::MatrixXi cartan_matrix(CartanType type) {
  int r = type.rank;
  bool ok = r >= 1 && r <= 4;
  if (type.series == Series::D) ok = r >= 2 && r <= 4;
  if (!ok)
    throw UnsupportedType("unsupported type/rank: " + type.label());

  Eigen::MatrixXi c = Eigen::MatrixXi::Zero(r, r);
  for (int i = 0; i < r; ++i) c(i, i) = 2;
  auto chain = [&](int upto) {
    for (int i = 0; i + 1 < upto; ++i) {
      c(i, i + 1) = -1;
      c(i + 1, i) = -1;
    }
  };
  switch (type.series) {
    case Series::A:
      chain(r);
      break;
    case Series::B:
      chain(r);
      if (r >= 2) {
        c(r - 2, r - 1) = -2;  // <alpha_{r-1}, alpha_r^vee>, alpha_r short
        c(r - 1, r - 2) = -1;
      }
      break;
    case Series::C:
      chain(r);
      if (r >= 2) {
        c(r - 2, r - 1) = -1;
        c(r - 1, r - 2) = -2;  // alpha_r long
      }
      break;
    case Series::D:
      chain(r - 1);
      if (r >= 3) {
        c(r - 3, r - 1) = -1;
        c(r - 1, r - 3) = -1;
      }
      break;
  }
  return c;
}

int RootDatum::num_positive() const {
  int n = 0;
  for (const auto& rt : roots)
    if (rt.positive) ++n;
  return n;
}

int RootDatum::index_of(const Eigen::VectorXi& coords) const {
  for (int i = 0; i < num_roots(); ++i)
    if (roots[i].coords == coords) return i;
  return -1;
}

int RootDatum::negative_of(int root_index) const {
  Eigen::VectorXi neg = -roots[root_index].coords;
  int idx = index_of(neg);
  if (idx < 0) throw std::logic_error("root system not symmetric");
  return idx;
}

std::vector<int> RootDatum::positive_indices() const {
  std::vector<int> out;
  for (int i = 0; i < num_roots(); ++i)
    if (roots[i].positive) out.push_back(i);
  return out;
}

int RootDatum::pair_with_simple_coroot(const Eigen::VectorXi& beta, int i) const {
  int s = 0;
  for (int j = 0; j < rank(); ++j) s += beta[j] * cartan(j, i);
  return s;
}

namespace {

bool lex_less(const Eigen::VectorXi& a, const Eigen::VectorXi& b) {
  for (int i = 0; i < a.size(); ++i) {
    if (a[i] != b[i]) return a[i] < b[i];
  }
  return false;
}

}  // namespace

RootDatum build_root_system(CartanType type) {
  RootDatum rd;
  rd.type = type;
  rd.cartan = cartan_matrix(type);  // validates type/rank
  int r = type.rank;

  // Positive roots by height, via root strings through simple roots.
  std::vector<Eigen::VectorXi> positive;
  for (int i = 0; i < r; ++i) {
    Eigen::VectorXi e = Eigen::VectorXi::Zero(r);
    e[i] = 1;
    positive.push_back(e);
  }
  auto contains = [&](const Eigen::VectorXi& v) {
    return std::any_of(positive.begin(), positive.end(),
                       [&](const Eigen::VectorXi& p) { return p == v; });
  };
  size_t head = 0;
  while (head < positive.size()) {
    Eigen::VectorXi beta = positive[head++];
    for (int i = 0; i < r; ++i) {
      // p = largest k with beta - k*alpha_i still a root
      int p = 0;
      Eigen::VectorXi down = beta;
      for (;;) {
        down[i] -= 1;
        if (!contains(down)) break;
        ++p;
      }
      int pairing = 0;
      for (int j = 0; j < r; ++j) pairing += beta[j] * rd.cartan(j, i);
      if (p - pairing > 0) {
        Eigen::VectorXi up = beta;
        up[i] += 1;
        if (!contains(up)) positive.push_back(up);
      }
    }
  }

  for (const auto& v : positive) {
    rd.roots.push_back(Root{v, true});
    rd.roots.push_back(Root{-v, false});
  }
  std::sort(rd.roots.begin(), rd.roots.end(),
            [](const Root& a, const Root& b) { return lex_less(a.coords, b.coords); });

  // Symmetrized pairing: (alpha_i, alpha_j) = C(i,j) * d_j, with d_j = half the
  // length^2 of alpha_j, short roots normalized to length^2 = 2.
  RVec d(r);
  for (int j = 0; j < r; ++j) d[j] = Rational(1);
  if (type.series == Series::B && r >= 2) {
    for (int j = 0; j + 1 < r; ++j) d[j] = Rational(2);  // alpha_r short
  } else if (type.series == Series::C && r >= 2) {
    d[r - 1] = Rational(2);  // alpha_r long
  }
  rd.pairing = RMat(r, r);
  for (int i = 0; i < r; ++i)
    for (int j = 0; j < r; ++j) rd.pairing(i, j) = Rational(rd.cartan(i, j)) * d[j];

  return rd;
}

}  // namespace subkoba
