#include "equiloc/document.hpp"

#include <algorithm>
#include <cctype>
#include <set>

#include "json.hpp"

namespace equiloc {

using json = nlohmann::json;

namespace {

struct ExprError {
  std::string message;
  int column;
};

class ExprParser {
 public:
  ExprParser(std::string_view text, const RingSpec& ring) : s_(text), ring_(ring) {}

  // Returns (coefficient, monomial) terms; degree checks happen in the caller.
  std::vector<std::pair<Rational, Monomial>> parse() {
    std::vector<std::pair<Rational, Monomial>> terms;
    skip();
    if (pos_ >= s_.size()) fail("empty expression");
    bool negative = false;
    if (peek() == '+' || peek() == '-') {
      negative = peek() == '-';
      ++pos_;
    }
    while (true) {
      auto [c, mono] = term();
      terms.emplace_back(negative ? Rational(-c) : c, mono);
      skip();
      if (pos_ >= s_.size()) break;
      if (peek() != '+' && peek() != '-') fail("expected '+' or '-'");
      negative = peek() == '-';
      ++pos_;
    }
    return terms;
  }

 private:
  char peek() const { return s_[pos_]; }
  void skip() {
    while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
  }
  [[noreturn]] void fail(const std::string& msg) const {
    throw ExprError{msg, static_cast<int>(pos_) + 1};
  }
  Integer number() {
    skip();
    std::size_t start = pos_;
    while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
    if (start == pos_) fail("expected a number");
    return Integer(std::string(s_.substr(start, pos_ - start)));
  }
  std::pair<Rational, Monomial> term() {
    Rational coeff = 1;
    Monomial mono = ring_.unit();
    while (true) {
      skip();
      if (pos_ >= s_.size()) fail("expected a factor");
      char c = peek();
      if (std::isdigit(static_cast<unsigned char>(c))) {
        Integer num = number();
        Integer den = 1;
        skip();
        if (pos_ < s_.size() && peek() == '/') {
          ++pos_;
          den = number();
          if (den == 0) fail("zero denominator");
        }
        coeff *= Rational(num, den);
        coeff.canonicalize();
      } else if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
        std::size_t start = pos_;
        while (pos_ < s_.size() &&
               (std::isalnum(static_cast<unsigned char>(s_[pos_])) || s_[pos_] == '_' || s_[pos_] == '\''))
          ++pos_;
        std::string name(s_.substr(start, pos_ - start));
        int idx = ring_.index_of(name);
        if (idx < 0) {
          pos_ = start;
          fail("unknown generator '" + name + "'");
        }
        int e = 1;
        skip();
        if (pos_ < s_.size() && peek() == '^') {
          ++pos_;
          e = static_cast<int>(number().get_si());
        }
        mono[idx] += e;
      } else {
        fail(std::string("unexpected character '") + c + "'");
      }
      skip();
      if (pos_ < s_.size() && peek() == '*') {
        ++pos_;
        continue;
      }
      return {coeff, mono};
    }
  }

  std::string_view s_;
  const RingSpec& ring_;
  std::size_t pos_ = 0;
};

bool graded_lex_less(const RingSpec& ring, const Monomial& a, const Monomial& b) {
  int da = ring.degree(a), db = ring.degree(b);
  if (da != db) return da < db;
  return a > b;
}

std::string rational_text(const Rational& q) { return to_string(q); }

[[noreturn]] void schema_error(const std::string& path, const std::string& msg) {
  throw ParseError(path + ": " + msg, 0, 0);
}

const json& field(const json& obj, const std::string& key, const std::string& path) {
  auto it = obj.find(key);
  if (it == obj.end()) schema_error(path, "missing key '" + key + "'");
  return *it;
}

void only_keys(const json& obj, std::initializer_list<const char*> keys, const std::string& path) {
  if (!obj.is_object()) schema_error(path, "expected an object");
  std::set<std::string> allowed(keys.begin(), keys.end());
  for (auto it = obj.begin(); it != obj.end(); ++it)
    if (!allowed.count(it.key())) schema_error(path, "unknown key '" + it.key() + "'");
}

long get_int(const json& v, const std::string& path) {
  if (!v.is_number_integer()) schema_error(path, "expected an integer");
  return v.get<long>();
}

std::string get_string(const json& v, const std::string& path) {
  if (!v.is_string()) schema_error(path, "expected a string");
  return v.get<std::string>();
}

Monomial parse_monomial(const std::string& text, const RingSpec& ring, const std::string& path) {
  if (text == "1") return ring.unit();
  try {
    auto terms = ExprParser(text, ring).parse();
    if (terms.size() != 1 || terms[0].first != 1) schema_error(path, "expected a monomial");
    return terms[0].second;
  } catch (const ExprError& e) {
    schema_error(path, "column " + std::to_string(e.column) + ": " + e.message);
  }
}

RingPtr parse_ring(const json& j, const std::string& path) {
  only_keys(j, {"generators", "truncation", "integrals"}, path);
  auto spec = std::make_shared<RingSpec>();
  const json& gens = field(j, "generators", path);
  if (!gens.is_array()) schema_error(path + ".generators", "expected an array");
  for (std::size_t i = 0; i < gens.size(); ++i) {
    std::string gp = path + ".generators[" + std::to_string(i) + "]";
    only_keys(gens[i], {"name", "degree"}, gp);
    spec->generators.push_back({get_string(field(gens[i], "name", gp), gp + ".name"),
                                static_cast<int>(get_int(field(gens[i], "degree", gp), gp + ".degree"))});
  }
  spec->truncation = static_cast<int>(get_int(field(j, "truncation", path), path + ".truncation"));
  if (j.contains("integrals")) {
    const json& ints = j.at("integrals");
    if (!ints.is_object()) schema_error(path + ".integrals", "expected an object");
    for (auto it = ints.begin(); it != ints.end(); ++it) {
      std::string ip = path + ".integrals['" + it.key() + "']";
      Monomial m = parse_monomial(it.key(), *spec, ip);
      try {
        spec->integrals[m] = parse_rational(get_string(it.value(), ip));
      } catch (const ParseError&) {
        throw;
      } catch (const InputError& e) {
        schema_error(ip, e.what());
      }
    }
  } else if (spec->generators.empty() && spec->truncation == 0) {
    spec->integrals[Monomial{}] = 1;
  } else {
    schema_error(path, "missing key 'integrals'");
  }
  try {
    spec->check();
  } catch (const InputError& e) {
    schema_error(path, e.what());
  }
  return spec;
}

GradedElement parse_class(const json& v, const RingPtr& ring, const std::string& path) {
  std::string text = get_string(v, path);
  try {
    return parse_expression(text, ring);
  } catch (const ParseError& e) {
    schema_error(path, e.what());
  }
}

json ring_json(const RingSpec& r) {
  json gens = json::array();
  for (const auto& g : r.generators) gens.push_back({{"name", g.name}, {"degree", g.degree}});
  json ints = json::object();
  for (const auto& [m, v] : r.integrals) ints[format_monomial(m, r)] = rational_text(v);
  return {{"generators", gens}, {"truncation", r.truncation}, {"integrals", ints}};
}

}  // namespace

GradedElement parse_expression(std::string_view text, const RingPtr& ring) {
  try {
    GradedElement out(ring);
    for (const auto& [c, mono] : ExprParser(text, *ring).parse()) {
      if (ring->degree(mono) > ring->truncation)
        throw ExprError{"term exceeds the truncation degree", 1};
      out.add_term(mono, c);
    }
    return out;
  } catch (const ExprError& e) {
    throw ParseError("expression '" + std::string(text) + "', column " + std::to_string(e.column) +
                         ": " + e.message,
                     1, e.column);
  }
}

std::string format_monomial(const Monomial& mono, const RingSpec& ring) {
  std::string out;
  for (std::size_t i = 0; i < mono.size(); ++i) {
    if (mono[i] == 0) continue;
    if (!out.empty()) out += "*";
    out += ring.generators[i].name;
    if (mono[i] > 1) out += "^" + std::to_string(mono[i]);
  }
  return out.empty() ? "1" : out;
}

std::string format_expression(const GradedElement& a) {
  if (a.is_zero()) return "0";
  const RingSpec& ring = *a.ring();
  std::vector<std::pair<Monomial, Rational>> terms(a.terms().begin(), a.terms().end());
  std::sort(terms.begin(), terms.end(),
            [&](const auto& x, const auto& y) { return graded_lex_less(ring, x.first, y.first); });
  std::string out;
  for (std::size_t i = 0; i < terms.size(); ++i) {
    const auto& [mono, c] = terms[i];
    bool neg = sgn(c) < 0;
    Rational mag = neg ? Rational(-c) : c;
    if (i == 0) {
      if (neg) out += "-";
    } else {
      out += neg ? " - " : " + ";
    }
    bool unit = ring.degree(mono) == 0;
    if (unit) {
      out += rational_text(mag);
    } else if (mag == 1) {
      out += format_monomial(mono, ring);
    } else {
      out += rational_text(mag) + "*" + format_monomial(mono, ring);
    }
  }
  return out;
}

ManifoldPresentation parse_document(std::string_view text) {
  json doc;
  try {
    doc = json::parse(text.begin(), text.end());
  } catch (const json::parse_error& e) {
    int line = 1, col = 1;
    std::size_t limit = std::min<std::size_t>(e.byte > 0 ? e.byte - 1 : 0, text.size());
    for (std::size_t i = 0; i < limit; ++i) {
      if (text[i] == '\n') {
        ++line;
        col = 1;
      } else {
        ++col;
      }
    }
    throw ParseError("syntax error at line " + std::to_string(line) + ", column " + std::to_string(col),
                     line, col);
  }
  only_keys(doc, {"name", "dim_M", "free_on_regular", "moment_shift", "components", "quotient"}, "$");
  ManifoldPresentation p;
  p.name = get_string(field(doc, "name", "$"), "$.name");
  p.dim = static_cast<int>(get_int(field(doc, "dim_M", "$"), "$.dim_M"));
  const json& fr = field(doc, "free_on_regular", "$");
  if (!fr.is_boolean()) schema_error("$.free_on_regular", "expected a boolean");
  p.free_on_regular = fr.get<bool>();
  if (doc.contains("moment_shift")) p.moment_shift = get_int(doc.at("moment_shift"), "$.moment_shift");
  const json& comps = field(doc, "components", "$");
  if (!comps.is_array()) schema_error("$.components", "expected an array");
  for (std::size_t i = 0; i < comps.size(); ++i) {
    std::string cp = "$.components[" + std::to_string(i) + "]";
    const json& c = comps[i];
    only_keys(c, {"name", "dim_F", "moment", "ring", "todd", "omega", "blocks", "link_quotient"}, cp);
    if (c.contains("link_quotient") && !c.at("link_quotient").is_null())
      schema_error(cp + ".link_quotient", "reserved for per-component link data; must be null");
    FixedComponent F;
    F.name = get_string(field(c, "name", cp), cp + ".name");
    F.dim = static_cast<int>(get_int(field(c, "dim_F", cp), cp + ".dim_F"));
    F.moment = get_int(field(c, "moment", cp), cp + ".moment");
    F.ring = parse_ring(field(c, "ring", cp), cp + ".ring");
    F.todd = parse_class(field(c, "todd", cp), F.ring, cp + ".todd");
    F.omega = parse_class(field(c, "omega", cp), F.ring, cp + ".omega");
    const json& blocks = field(c, "blocks", cp);
    if (!blocks.is_array()) schema_error(cp + ".blocks", "expected an array");
    for (std::size_t b = 0; b < blocks.size(); ++b) {
      std::string bp = cp + ".blocks[" + std::to_string(b) + "]";
      only_keys(blocks[b], {"weight", "chern_roots"}, bp);
      NormalBlock blk;
      blk.weight = static_cast<int>(get_int(field(blocks[b], "weight", bp), bp + ".weight"));
      const json& roots = field(blocks[b], "chern_roots", bp);
      if (!roots.is_array()) schema_error(bp + ".chern_roots", "expected an array");
      for (std::size_t r = 0; r < roots.size(); ++r)
        blk.roots.push_back(parse_class(roots[r], F.ring, bp + ".chern_roots[" + std::to_string(r) + "]"));
      F.blocks.push_back(std::move(blk));
    }
    p.components.push_back(std::move(F));
  }
  if (doc.contains("quotient") && !doc.at("quotient").is_null()) {
    const json& q = doc.at("quotient");
    only_keys(q, {"ring", "omega0", "kappa_todd"}, "$.quotient");
    QuotientData qd;
    qd.ring = parse_ring(field(q, "ring", "$.quotient"), "$.quotient.ring");
    qd.omega0 = parse_class(field(q, "omega0", "$.quotient"), qd.ring, "$.quotient.omega0");
    qd.kappa_todd = parse_class(field(q, "kappa_todd", "$.quotient"), qd.ring, "$.quotient.kappa_todd");
    p.quotient = std::move(qd);
  }
  require_valid(p);
  return p;
}

std::string serialize_document(const ManifoldPresentation& p) {
  json doc;
  doc["name"] = p.name;
  doc["dim_M"] = p.dim;
  doc["free_on_regular"] = p.free_on_regular;
  doc["moment_shift"] = p.moment_shift;
  json comps = json::array();
  for (const auto& F : p.components) {
    json blocks = json::array();
    for (const auto& b : F.blocks) {
      json roots = json::array();
      for (const auto& r : b.roots) roots.push_back(format_expression(r));
      blocks.push_back({{"weight", b.weight}, {"chern_roots", roots}});
    }
    comps.push_back({{"name", F.name},
                     {"dim_F", F.dim},
                     {"moment", F.moment},
                     {"ring", ring_json(*F.ring)},
                     {"todd", format_expression(F.todd)},
                     {"omega", format_expression(F.omega)},
                     {"blocks", blocks}});
  }
  doc["components"] = comps;
  if (p.quotient) {
    doc["quotient"] = {{"ring", ring_json(*p.quotient->ring)},
                       {"omega0", format_expression(p.quotient->omega0)},
                       {"kappa_todd", format_expression(p.quotient->kappa_todd)}};
  }
  return doc.dump(2) + "\n";
}

}  // namespace equiloc
