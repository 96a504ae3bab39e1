#pragma once

// File formats and text parsing: JSON complex/filtration files (ring-tagged,
// weights as exact strings), plain-text graph files, polynomial and
// coefficient-system syntax, and small printing helpers. Structural problems
// (malformed JSON, bad numbers, unknown fields' types, out-of-range vertex
// indices) raise ParseError; mathematical violations (face closure,
// divisibility, birth monotonicity) are left to validate()/check() and raise
// SemanticError. Serialization is canonical, so parse(print(x)) == x.

#include <cctype>
#include <cstddef>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include <json.hpp>

#include "wph/builders.hpp"
#include "wph/complex.hpp"
#include "wph/homology.hpp"
#include "wph/monomial.hpp"
#include "wph/poly.hpp"
#include "wph/ring.hpp"

namespace wph {

using Json = nlohmann::ordered_json;

using AnyComplex = std::variant<WeightedComplex<Int>, WeightedComplex<MPoly>>;
using AnyFiltered = std::variant<FilteredComplex<Int>, FilteredComplex<MPoly>>;

// ---------------------------------------------------------------------------
// Exact number and polynomial text.

inline Int parse_int_string(const std::string& s, const std::string& what) {
  std::size_t i = s.size() && (s[0] == '-' || s[0] == '+') ? 1 : 0;
  if (i == s.size()) throw ParseError(what + ": empty integer literal");
  for (std::size_t j = i; j < s.size(); ++j)
    if (!std::isdigit(static_cast<unsigned char>(s[j])))
      throw ParseError(what + ": bad integer literal '" + s + "' at position " +
                       std::to_string(j));
  return Int(s);
}

namespace detail {

// Recursive-descent parser for polynomials in expanded form:
//   poly   := ['+'|'-'] term (('+'|'-') term)*
//   term   := factor ('*' factor)*
//   factor := rational | variable ['^' uint]
//   rational := digits ['/' digits | '.' digits]
// matching the canonical printer's output.
class PolyTextParser {
 public:
  PolyTextParser(const std::string& text, const std::vector<std::string>& vars)
      : text_(text), vars_(vars) {}

  MPoly parse() {
    MPoly acc(vars_.size());
    skip_space();
    bool neg = accept_sign();
    acc = acc + parse_term(neg);
    skip_space();
    while (pos_ < text_.size()) {
      char c = text_[pos_];
      if (c != '+' && c != '-') fail("expected '+' or '-'");
      ++pos_;
      acc = acc + parse_term(c == '-');
      skip_space();
    }
    acc.normalize();
    return acc;
  }

 private:
  [[noreturn]] void fail(const std::string& msg) const {
    throw ParseError("polynomial '" + text_ + "': " + msg + " at position " +
                     std::to_string(pos_));
  }
  void skip_space() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }
  bool accept_sign() {
    if (pos_ < text_.size() && (text_[pos_] == '+' || text_[pos_] == '-'))
      return text_[pos_++] == '-';
    return false;
  }

  MPoly parse_term(bool negate) {
    MPoly t = parse_factor();
    skip_space();
    while (pos_ < text_.size() && text_[pos_] == '*') {
      ++pos_;
      t = t * parse_factor();
      skip_space();
    }
    return negate ? MPoly(vars_.size()) - t : t;
  }

  MPoly parse_factor() {
    skip_space();
    if (pos_ >= text_.size()) fail("expected a factor");
    char c = text_[pos_];
    if (std::isdigit(static_cast<unsigned char>(c))) return MPoly::constant(parse_rational(), vars_.size());
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') return parse_variable_power();
    fail("unexpected character");
  }

  Rat parse_rational() {
    std::size_t start = pos_;
    while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) ++pos_;
    if (pos_ < text_.size() && (text_[pos_] == '/' || text_[pos_] == '.')) {
      ++pos_;
      std::size_t frac = pos_;
      while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) ++pos_;
      if (pos_ == frac) fail("digits expected after '/' or '.'");
    }
    return rat_from_decimal(text_.substr(start, pos_ - start));
  }

  MPoly parse_variable_power() {
    std::size_t start = pos_;
    while (pos_ < text_.size() && (std::isalnum(static_cast<unsigned char>(text_[pos_])) ||
                                   text_[pos_] == '_'))
      ++pos_;
    std::string name = text_.substr(start, pos_ - start);
    std::size_t var = vars_.size();
    for (std::size_t v = 0; v < vars_.size(); ++v)
      if (vars_[v] == name) var = v;
    if (var == vars_.size()) fail("unknown variable '" + name + "'");
    unsigned e = 1;
    if (pos_ < text_.size() && text_[pos_] == '^') {
      ++pos_;
      std::size_t d = pos_;
      while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) ++pos_;
      if (pos_ == d) fail("exponent digits expected after '^'");
      e = static_cast<unsigned>(std::stoul(text_.substr(d, pos_ - d)));
    }
    Monomial m(vars_.size());
    m.e[var] = e;
    return MPoly::monomial(m, Rat(1));
  }

  const std::string& text_;
  std::vector<std::string> vars_;
  std::size_t pos_ = 0;
};

}  // namespace detail

inline MPoly parse_mpoly(const std::string& text, const std::vector<std::string>& vars) {
  return detail::PolyTextParser(text, vars).parse();
}

// Univariate convenience: parse in the single declared variable.
inline Poly parse_poly(const std::string& text, const std::string& var = "x") {
  return mpoly_to_poly(parse_mpoly(text, {var}), 0);
}

// ---------------------------------------------------------------------------
// JSON complex and filtration files.
//
//   {"ring": "int", "vertices": ["a", "b"],
//    "simplices": [{"vertices": [0], "weight": "1"}, ...]}
//
// Polynomial-weighted files use "ring": "poly" plus a "variables" array of
// identifiers; weights are polynomial strings in those variables. Filtration
// files add a top-level "steps" count and a per-simplex "birth" index.

namespace detail {

inline const Json& field(const Json& j, const char* key, const char* where) {
  if (!j.is_object() || !j.contains(key))
    throw ParseError(std::string(where) + ": missing field '" + key + "'");
  return j.at(key);
}

inline std::vector<std::string> string_array(const Json& j, const char* where) {
  if (!j.is_array()) throw ParseError(std::string(where) + ": expected an array of strings");
  std::vector<std::string> out;
  for (const Json& x : j) {
    if (!x.is_string()) throw ParseError(std::string(where) + ": expected an array of strings");
    out.push_back(x.get<std::string>());
  }
  return out;
}

inline void check_identifier(const std::string& name) {
  if (name.empty() || !(std::isalpha(static_cast<unsigned char>(name[0])) || name[0] == '_'))
    throw ParseError("variable name '" + name + "' is not an identifier");
  for (char c : name)
    if (!(std::isalnum(static_cast<unsigned char>(c)) || c == '_'))
      throw ParseError("variable name '" + name + "' is not an identifier");
}

inline Json parse_json_text(const std::string& text) {
  try {
    return Json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw ParseError(std::string("JSON: ") + e.what());
  }
}

template <class W, class ParseWeight>
void load_simplices(const Json& j, WeightedComplex<W>& K, ParseWeight parse_weight) {
  const Json& simp = field(j, "simplices", "complex");
  if (!simp.is_array()) throw ParseError("complex: 'simplices' must be an array");
  for (std::size_t idx = 0; idx < simp.size(); ++idx) {
    const Json& rec = simp[idx];
    std::string where = "simplex #" + std::to_string(idx);
    const Json& vs = field(rec, "vertices", where.c_str());
    if (!vs.is_array() || vs.empty())
      throw ParseError(where + ": 'vertices' must be a nonempty array");
    VertexList v;
    for (const Json& x : vs) {
      if (!x.is_number_integer()) throw ParseError(where + ": vertex indices must be integers");
      long n = x.get<long>();
      if (n < 0 || n >= static_cast<long>(K.vertex_labels.size()))
        throw ParseError(where + ": vertex index " + std::to_string(n) + " out of range");
      v.push_back(static_cast<int>(n));
    }
    const Json& w = field(rec, "weight", where.c_str());
    if (!w.is_string()) throw ParseError(where + ": 'weight' must be a string");
    VertexList s;
    try {
      s = sorted_simplex(v);
    } catch (const SemanticError& e) {
      throw ParseError(where + ": " + e.what());
    }
    if (K.contains(s)) throw ParseError(where + ": duplicate simplex");
    K.simplices[s] = parse_weight(w.get<std::string>(), where);
  }
}

}  // namespace detail

inline AnyComplex complex_from_json(const Json& j) {
  const Json& ring_tag = detail::field(j, "ring", "complex");
  if (!ring_tag.is_string()) throw ParseError("complex: 'ring' must be a string");
  std::string ring = ring_tag.get<std::string>();
  std::vector<std::string> vertices =
      detail::string_array(detail::field(j, "vertices", "complex"), "complex 'vertices'");
  if (ring == "int") {
    WeightedComplex<Int> K;
    K.vertex_labels = vertices;
    detail::load_simplices(j, K, [](const std::string& w, const std::string& where) {
      return parse_int_string(w, where);
    });
    return K;
  }
  if (ring == "poly") {
    std::vector<std::string> vars =
        detail::string_array(detail::field(j, "variables", "complex"), "complex 'variables'");
    if (vars.empty()) throw ParseError("complex: 'variables' must be nonempty for ring 'poly'");
    std::set<std::string> seen;
    for (const std::string& v : vars) {
      detail::check_identifier(v);
      if (!seen.insert(v).second) throw ParseError("complex: duplicate variable '" + v + "'");
    }
    WeightedComplex<MPoly> K;
    K.vertex_labels = vertices;
    K.variables = vars;
    detail::load_simplices(j, K, [&vars](const std::string& w, const std::string&) {
      return parse_mpoly(w, vars);
    });
    return K;
  }
  throw ParseError("complex: unknown ring '" + ring + "' (expected 'int' or 'poly')");
}

inline AnyComplex parse_complex_text(const std::string& text) {
  return complex_from_json(detail::parse_json_text(text));
}

inline Json complex_to_json(const WeightedComplex<Int>& K) {
  Json j;
  j["ring"] = "int";
  j["vertices"] = K.vertex_labels;
  Json simp = Json::array();
  for (const auto& [s, w] : K.simplices) {
    Json rec;
    rec["vertices"] = s;
    rec["weight"] = ring_traits<Int>::to_string(w);
    simp.push_back(rec);
  }
  j["simplices"] = simp;
  return j;
}

inline Json complex_to_json(const WeightedComplex<MPoly>& K) {
  Json j;
  j["ring"] = "poly";
  j["variables"] = K.variables;
  j["vertices"] = K.vertex_labels;
  Json simp = Json::array();
  for (const auto& [s, w] : K.simplices) {
    Json rec;
    rec["vertices"] = s;
    rec["weight"] = mpoly_to_string(w, K.variables);
    simp.push_back(rec);
  }
  j["simplices"] = simp;
  return j;
}

template <class W>
Json filtration_to_json(const FilteredComplex<W>& F) {
  Json j = complex_to_json(F.complex);
  j["steps"] = F.steps;
  for (Json& rec : j["simplices"]) {
    VertexList s;
    for (const Json& x : rec["vertices"]) s.push_back(x.get<int>());
    rec["birth"] = F.birth.at(s);
  }
  return j;
}

inline AnyFiltered filtration_from_json(const Json& j) {
  AnyComplex K = complex_from_json(j);
  const Json& steps = detail::field(j, "steps", "filtration");
  if (!steps.is_number_integer() || steps.get<long>() < 1)
    throw ParseError("filtration: 'steps' must be a positive integer");
  const Json& simp = j.at("simplices");
  auto load = [&](auto complex) -> AnyFiltered {
    FilteredComplex<typename decltype(complex)::weight_type> F;
    F.complex = std::move(complex);
    F.steps = static_cast<int>(steps.get<long>());
    for (std::size_t idx = 0; idx < simp.size(); ++idx) {
      const Json& rec = simp[idx];
      std::string where = "simplex #" + std::to_string(idx);
      const Json& b = detail::field(rec, "birth", where.c_str());
      if (!b.is_number_integer()) throw ParseError(where + ": 'birth' must be an integer");
      VertexList s;
      for (const Json& x : rec.at("vertices")) s.push_back(x.get<int>());
      F.birth[sorted_simplex(s)] = static_cast<int>(b.get<long>());
    }
    return F;
  };
  if (std::holds_alternative<WeightedComplex<Int>>(K))
    return load(std::get<WeightedComplex<Int>>(std::move(K)));
  return load(std::get<WeightedComplex<MPoly>>(std::move(K)));
}

inline AnyFiltered parse_filtration_text(const std::string& text) {
  return filtration_from_json(detail::parse_json_text(text));
}

// ---------------------------------------------------------------------------
// Graph files: one edge per line, "u v weight", where u and v are vertex
// names (any whitespace-free tokens) and weight is a decimal or rational
// literal. Blank lines and lines starting with '#' are ignored. Vertices are
// indexed in order of first appearance.

inline WeightedGraph parse_graph_text(const std::string& text) {
  WeightedGraph G;
  std::map<std::string, int> index;
  std::size_t line_no = 0, pos = 0;
  while (pos <= text.size()) {
    std::size_t end = text.find('\n', pos);
    if (end == std::string::npos) end = text.size();
    std::string line = text.substr(pos, end - pos);
    ++line_no;
    pos = end + 1;
    std::vector<std::string> tok;
    std::size_t i = 0;
    while (i < line.size()) {
      while (i < line.size() && std::isspace(static_cast<unsigned char>(line[i]))) ++i;
      std::size_t start = i;
      while (i < line.size() && !std::isspace(static_cast<unsigned char>(line[i]))) ++i;
      if (i > start) tok.push_back(line.substr(start, i - start));
    }
    if (tok.empty() || tok[0][0] == '#') continue;
    if (tok.size() != 3)
      throw ParseError("graph line " + std::to_string(line_no) +
                       ": expected 'u v weight', got " + std::to_string(tok.size()) + " tokens");
    auto vertex = [&](const std::string& name) {
      auto it = index.find(name);
      if (it != index.end()) return it->second;
      int id = static_cast<int>(G.labels.size());
      index[name] = id;
      G.labels.push_back(name);
      return id;
    };
    int u = vertex(tok[0]);
    int v = vertex(tok[1]);
    Rat w;
    try {
      w = rat_from_decimal(tok[2]);
    } catch (const ParseError& e) {
      throw ParseError("graph line " + std::to_string(line_no) + ": " + e.what());
    } catch (const SemanticError& e) {
      throw ParseError("graph line " + std::to_string(line_no) + ": " + e.what());
    }
    G.edges.push_back({u, v, w});
  }
  return G;
}

inline std::string graph_to_text(const WeightedGraph& G) {
  std::string out;
  for (const auto& e : G.edges)
    out += G.labels.at(static_cast<std::size_t>(e.u)) + " " +
           G.labels.at(static_cast<std::size_t>(e.v)) + " " + rat_to_string(e.weight) + "\n";
  return out;
}

// ---------------------------------------------------------------------------
// Coefficient-system syntax:
//   z                integers              (int-weighted complexes)
//   q                fraction field        (either ring)
//   fp:<p>           prime field Z/p       (int)
//   zmod:<m>         quotient ring Z/m     (int)
//   poly             the ring Q[x] itself  (poly)
//   polymod:<pi>^<r> quotient by pi^r      (poly)
// For polymod the text after the last '^' followed by an integer is the
// exponent; everything before it is the polynomial pi (so "polymod:x^2"
// means pi = x, r = 2, and pi = x^2 itself is written "polymod:x^2^1").

struct CoeffSpec {
  enum class Kind { Z, Q, Fp, Zmod, PolyZ, PolyMod };
  Kind kind = Kind::Z;
  Int modulus = 0;   // Fp / Zmod
  std::string pi;    // PolyMod: polynomial text, parsed against the file's variable
  unsigned power = 1;
  std::string text;  // original spelling, for reports
};

inline CoeffSpec parse_coeff_spec(const std::string& s) {
  CoeffSpec spec;
  spec.text = s;
  if (s == "z") {
    spec.kind = CoeffSpec::Kind::Z;
  } else if (s == "q") {
    spec.kind = CoeffSpec::Kind::Q;
  } else if (s == "poly") {
    spec.kind = CoeffSpec::Kind::PolyZ;
  } else if (s.rfind("fp:", 0) == 0) {
    spec.kind = CoeffSpec::Kind::Fp;
    spec.modulus = parse_int_string(s.substr(3), "coefficient spec '" + s + "'");
  } else if (s.rfind("zmod:", 0) == 0) {
    spec.kind = CoeffSpec::Kind::Zmod;
    spec.modulus = parse_int_string(s.substr(5), "coefficient spec '" + s + "'");
  } else if (s.rfind("polymod:", 0) == 0) {
    spec.kind = CoeffSpec::Kind::PolyMod;
    std::string body = s.substr(8);
    if (body.empty()) throw ParseError("coefficient spec '" + s + "': empty modulus");
    std::size_t caret = body.rfind('^');
    spec.pi = body;
    spec.power = 1;
    if (caret != std::string::npos && caret + 1 < body.size()) {
      bool digits = true;
      for (std::size_t i = caret + 1; i < body.size(); ++i)
        if (!std::isdigit(static_cast<unsigned char>(body[i]))) digits = false;
      if (digits) {
        spec.pi = body.substr(0, caret);
        spec.power = static_cast<unsigned>(std::stoul(body.substr(caret + 1)));
      }
    }
    if (spec.pi.empty()) throw ParseError("coefficient spec '" + s + "': empty polynomial");
    if (spec.power < 1) throw ParseError("coefficient spec '" + s + "': power must be positive");
  } else {
    throw ParseError("unknown coefficient spec '" + s +
                     "' (expected z, q, fp:<p>, zmod:<m>, poly, or polymod:<pi>^<r>)");
  }
  return spec;
}

// Resolve a spec against an integer-weighted complex.
inline Coeff<Int> coeff_for_int(const CoeffSpec& spec) {
  switch (spec.kind) {
    case CoeffSpec::Kind::Z:
      return Coeff<Int>::integral();
    case CoeffSpec::Kind::Q:
      return Coeff<Int>::fraction_field();
    case CoeffSpec::Kind::Fp:
      return Coeff<Int>::prime_field(spec.modulus);
    case CoeffSpec::Kind::Zmod:
      return Coeff<Int>::quotient(spec.modulus);
    default:
      throw SemanticError("coefficient spec '" + spec.text +
                          "' does not apply to integer weights");
  }
}

// Resolve a spec against a polynomial-weighted complex computing over Q[x]
// in the named variable.
inline Coeff<Poly> coeff_for_poly(const CoeffSpec& spec, const std::string& var) {
  switch (spec.kind) {
    case CoeffSpec::Kind::PolyZ:
      return Coeff<Poly>::integral();
    case CoeffSpec::Kind::Q:
      return Coeff<Poly>::fraction_field();
    case CoeffSpec::Kind::PolyMod: {
      Poly pi = parse_poly(spec.pi, var);
      Poly m = ring_traits<Poly>::one();
      for (unsigned i = 0; i < spec.power; ++i) m = m * pi;
      return Coeff<Poly>::quotient(m);
    }
    default:
      throw SemanticError("coefficient spec '" + spec.text +
                          "' does not apply to polynomial weights");
  }
}

// ---------------------------------------------------------------------------
// Chain printing: "2*[a,b] - [b,c]" over the given basis.

template <class R>
std::string chain_to_string(const std::vector<R>& coeffs, const std::vector<VertexList>& basis,
                            const std::vector<std::string>& labels) {
  using T = ring_traits<R>;
  if (coeffs.size() != basis.size()) throw SemanticError("chain_to_string: length mismatch");
  std::string out;
  for (std::size_t i = 0; i < coeffs.size(); ++i) {
    if (T::is_zero(coeffs[i])) continue;
    std::string c = T::to_string(coeffs[i]);
    bool neg = c.size() && c[0] == '-';
    std::string mag = neg ? c.substr(1) : c;
    if (out.empty()) {
      if (neg) out += "-";
    } else {
      out += neg ? " - " : " + ";
    }
    bool unit = mag == "1";
    if (!unit) {
      bool simple = mag.find_first_of("+- ") == std::string::npos;
      out += (simple ? mag : "(" + mag + ")") + "*";
    }
    out += simplex_to_string(basis[i], labels);
  }
  return out.empty() ? "0" : out;
}

}  // namespace wph
