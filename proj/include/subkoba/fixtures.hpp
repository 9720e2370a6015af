#ifndef SUBKOBA_FIXTURES_HPP
#define SUBKOBA_FIXTURES_HPP

#include "subkoba/hyperbolicity.hpp"

namespace subkoba {

struct AlgParseError : std::runtime_error {
  AlgParseError(int line, const std::string& field, const std::string& what)
      : std::runtime_error("line " + std::to_string(line) + ", field '" + field +
                           "': " + what),
        line(line),
        field(field) {}
  int line;
  std::string field;
};

/// Algebra fixture: a canonical flag datum, a compact form, or a complex
/// group viewed as a real homogeneous space.
struct AlgFixture {
  enum class Kind { Flag, ComplexGroup };
  Kind kind = Kind::Flag;
  CartanType type;
  std::vector<int> v_simple;    // 0-based indices of simple roots inside v
  std::vector<int> epsilon;     // per positive root, RootDatum order
  bool full_m = false;          // datum full_m: enlarge g1 to all of m

  BasisData bd;
  std::optional<RealFormData> rf;
  std::optional<GradedDecomposition> gd;
  HomogeneousDatum datum;

  std::string describe() const;
};

AlgFixture parse_alg(std::istream& is);
AlgFixture load_alg_file(const std::string& path);

/// Canonical flag fixture for a type with v spanned by the listed simple
/// roots (plus the torus); epsilon from the level parity.
AlgFixture canonical_fixture(CartanType type, const std::vector<int>& v_simple);
AlgFixture compact_fixture(CartanType type);
AlgFixture complex_group_fixture(CartanType type);

}  // namespace subkoba

#endif
