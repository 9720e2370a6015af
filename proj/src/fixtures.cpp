#include "subkoba/fixtures.hpp"

#include <fstream>
#include <sstream>

namespace subkoba {

namespace {

AlgFixture finish_flag_fixture(CartanType type, const std::vector<int>& v_simple,
                               std::vector<int> epsilon, bool full_m) {
  AlgFixture fx;
  fx.kind = AlgFixture::Kind::Flag;
  fx.type = type;
  fx.v_simple = v_simple;
  fx.bd = build_normalized_basis(build_root_system(type));
  if (epsilon.empty()) epsilon = parity_epsilon(fx.bd, v_simple);
  fx.epsilon = epsilon;
  fx.rf = apply_real_form(fx.bd, epsilon);
  fx.gd = grade(fx.bd, grading_element(fx.bd.roots, v_simple), *fx.rf);
  fx.gd->v_simple = v_simple;
  fx.full_m = full_m;
  fx.datum = full_m ? full_tangent_datum(*fx.rf, *fx.gd) : canonical_datum(*fx.rf, *fx.gd);
  return fx;
}

}  // namespace

std::string AlgFixture::describe() const {
  std::ostringstream os;
  if (kind == Kind::ComplexGroup) {
    os << type.label() << " complexified, viewed as a real algebra";
    return os.str();
  }
  os << type.label() << " real form, v = torus";
  for (int i : v_simple) os << " + alpha_" << (i + 1);
  if (full_m) os << ", datum g1 = m";
  return os.str();
}

AlgFixture parse_alg(std::istream& is) {
  std::string line;
  int lineno = 0;
  std::optional<CartanType> type;
  bool complex_group = false;
  std::vector<int> v_simple;
  std::vector<int> epsilon_explicit;
  enum class Eps { Canonical, Compact, Explicit } eps_mode = Eps::Canonical;
  bool full_m = false;

  while (std::getline(is, line)) {
    ++lineno;
    auto hash = line.find('#');
    if (hash != std::string::npos) line = line.substr(0, hash);
    std::istringstream ls(line);
    std::string key;
    if (!(ls >> key)) continue;
    if (key == "type") {
      std::string tok;
      if (!(ls >> tok)) throw AlgParseError(lineno, "type", "missing value");
      if (tok == "complex") {
        complex_group = true;
        if (!(ls >> tok)) throw AlgParseError(lineno, "type", "missing Cartan label");
      }
      try {
        type = CartanType::parse(tok);
      } catch (const UnsupportedType& e) {
        throw AlgParseError(lineno, "type", e.what());
      }
    } else if (key == "v_simple") {
      std::string tok;
      while (ls >> tok) {
        if (tok == "none") break;
        try {
          int idx = std::stoi(tok);
          v_simple.push_back(idx - 1);  // fixtures use 1-based simple roots
        } catch (...) {
          throw AlgParseError(lineno, "v_simple", "bad index '" + tok + "'");
        }
      }
    } else if (key == "epsilon") {
      std::string tok;
      if (!(ls >> tok)) throw AlgParseError(lineno, "epsilon", "missing value");
      if (tok == "canonical") {
        eps_mode = Eps::Canonical;
      } else if (tok == "compact") {
        eps_mode = Eps::Compact;
      } else {
        eps_mode = Eps::Explicit;
        do {
          if (tok == "+1" || tok == "1")
            epsilon_explicit.push_back(1);
          else if (tok == "-1")
            epsilon_explicit.push_back(-1);
          else
            throw AlgParseError(lineno, "epsilon", "bad label '" + tok + "'");
        } while (ls >> tok);
      }
    } else if (key == "datum") {
      std::string tok;
      if (!(ls >> tok)) throw AlgParseError(lineno, "datum", "missing value");
      if (tok == "superhorizontal")
        full_m = false;
      else if (tok == "full_m")
        full_m = true;
      else
        throw AlgParseError(lineno, "datum", "unknown datum '" + tok + "'");
    } else {
      throw AlgParseError(lineno, key, "unknown key");
    }
  }
  if (!type) throw AlgParseError(lineno, "type", "fixture does not declare a type");

  if (complex_group) return complex_group_fixture(*type);
  switch (eps_mode) {
    case Eps::Canonical:
      return finish_flag_fixture(*type, v_simple, {}, full_m);
    case Eps::Compact: {
      BasisData bd = build_normalized_basis(build_root_system(*type));
      return finish_flag_fixture(*type, v_simple, compact_epsilon(bd), full_m);
    }
    case Eps::Explicit:
      return finish_flag_fixture(*type, v_simple, epsilon_explicit, full_m);
  }
  throw AlgParseError(lineno, "epsilon", "unreachable");
}

AlgFixture load_alg_file(const std::string& path) {
  std::ifstream is(path);
  if (!is) throw std::runtime_error("cannot open algebra fixture: " + path);
  try {
    return parse_alg(is);
  } catch (const AlgParseError& e) {
    throw std::runtime_error(path + ": " + e.what());
  }
}

AlgFixture canonical_fixture(CartanType type, const std::vector<int>& v_simple) {
  return finish_flag_fixture(type, v_simple, {}, false);
}

AlgFixture compact_fixture(CartanType type) {
  BasisData bd = build_normalized_basis(build_root_system(type));
  return finish_flag_fixture(type, {}, compact_epsilon(bd), false);
}

AlgFixture complex_group_fixture(CartanType type) {
  AlgFixture fx;
  fx.kind = AlgFixture::Kind::ComplexGroup;
  fx.type = type;
  fx.bd = build_normalized_basis(build_root_system(type));
  fx.datum = complex_group_datum(fx.bd);
  return fx;
}

}  // namespace subkoba
