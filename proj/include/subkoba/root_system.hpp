#ifndef SUBKOBA_ROOT_SYSTEM_HPP
#define SUBKOBA_ROOT_SYSTEM_HPP

#include <Eigen/Core>
#include <stdexcept>
#include <string>
#include <vector>

#include "subkoba/exact.hpp"

namespace subkoba {

struct UnsupportedType : std::runtime_error {
  explicit UnsupportedType(const std::string& what) : std::runtime_error(what) {}
};

enum class Series { A, B, C, D };

struct CartanType {
  Series series = Series::A;
  int rank = 1;

  static CartanType parse(const std::string& label);  // "A2", "C3", ...
  std::string label() const;
};

/// Cartan matrix C(i,j) = <alpha_i, alpha_j^vee>.
Eigen::MatrixXi cartan_matrix(CartanType type);

/// One root in integer coordinates over the simple roots.
struct Root {
  Eigen::VectorXi coords;
  bool positive = false;

  int height() const { return coords.sum(); }
};

/// Root system data for a classical type of rank <= 4.
///
/// Roots are sorted lexicographically by simple-root coordinates, which fixes
/// every downstream sign convention.
struct RootDatum {
  CartanType type;
  Eigen::MatrixXi cartan;
  std::vector<Root> roots;
  RMat pairing;  // (alpha_i, alpha_j), short roots normalized to length^2 = 2

  int rank() const { return type.rank; }
  int num_roots() const { return static_cast<int>(roots.size()); }
  int num_positive() const;

  /// Index of a root by coordinates; -1 if absent.
  int index_of(const Eigen::VectorXi& coords) const;
  int negative_of(int root_index) const;
  bool is_root(const Eigen::VectorXi& coords) const { return index_of(coords) >= 0; }
  std::vector<int> positive_indices() const;

  /// <beta, alpha_i^vee> for beta in simple-root coordinates.
  int pair_with_simple_coroot(const Eigen::VectorXi& beta, int i) const;
};

RootDatum build_root_system(CartanType type);

}  // namespace subkoba

#endif
