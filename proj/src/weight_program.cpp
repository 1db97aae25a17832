#include "fockweight/weight_program.hpp"

#include <cctype>
#include <sstream>

namespace fockweight {

namespace {

struct Token {
  enum class Kind { Ident, Number, Symbol, Newline, End };
  Kind kind;
  std::string text;
  SourceLocation where;
};

class Lexer {
 public:
  Lexer(std::string_view text, SourceLocation origin) : text_(text), loc_(origin) {}

  std::vector<Token> run() {
    std::vector<Token> out;
    while (pos_ < text_.size()) {
      char c = text_[pos_];
      if (c == '\n') {
        out.push_back({Token::Kind::Newline, "\n", loc_});
        advance();
      } else if (std::isspace(static_cast<unsigned char>(c))) {
        advance();
      } else if (c == '#') {
        while (pos_ < text_.size() && text_[pos_] != '\n') advance();
      } else if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
        SourceLocation at = loc_;
        std::string s;
        while (pos_ < text_.size() && (std::isalnum(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == '_'))
          s += advance();
        out.push_back({Token::Kind::Ident, s, at});
      } else if (std::isdigit(static_cast<unsigned char>(c)) ||
                 ((c == '-' || c == '+') && pos_ + 1 < text_.size() &&
                  std::isdigit(static_cast<unsigned char>(text_[pos_ + 1])))) {
        SourceLocation at = loc_;
        std::string s(1, advance());
        while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) s += advance();
        if (pos_ + 1 < text_.size() && text_[pos_] == '/' &&
            std::isdigit(static_cast<unsigned char>(text_[pos_ + 1]))) {
          s += advance();
          while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) s += advance();
        }
        out.push_back({Token::Kind::Number, s, at});
      } else {
        SourceLocation at = loc_;
        std::string s(1, advance());
        if ((s == "=" && peek() == '>') || (s == "&" && peek() == '&')) s += advance();
        static const std::string symbols = "=<%()[],;";
        if (s.size() == 1 && symbols.find(s[0]) == std::string::npos)
          throw ConfigError(at, "unexpected character '" + s + "'");
        out.push_back({Token::Kind::Symbol, s, at});
      }
    }
    out.push_back({Token::Kind::End, "", loc_});
    return out;
  }

 private:
  char peek() const { return pos_ < text_.size() ? text_[pos_] : '\0'; }
  char advance() {
    char c = text_[pos_++];
    if (c == '\n') {
      ++loc_.line;
      loc_.column = 1;
    } else {
      ++loc_.column;
    }
    return c;
  }

  std::string_view text_;
  std::size_t pos_ = 0;
  SourceLocation loc_;
};

class Parser {
 public:
  explicit Parser(std::vector<Token> tokens) : toks_(std::move(tokens)) {}

  WeightProgram run() {
    WeightProgram prog;
    bool seen_default = false;
    skip_separators();
    while (!at_end()) {
      const Token& head = cur();
      if (head.kind != Token::Kind::Ident) throw ConfigError(head.where, "expected 'table', 'rule' or 'default'");
      if (head.text == "table") {
        next();
        auto name = expect_ident("table name");
        if (prog.tables.count(name.text)) throw ConfigError(name.where, "table '" + name.text + "' defined twice");
        expect_symbol("=");
        expect_symbol("[");
        std::vector<long> values;
        while (true) {
          const Token& t = cur();
          if (t.kind != Token::Kind::Number || t.text.find('/') != std::string::npos)
            throw ConfigError(t.where, "expected integer table entry");
          values.push_back(std::stol(t.text));
          next();
          if (is_symbol("]")) break;
          expect_symbol(",");
        }
        next();
        prog.tables.emplace(name.text, std::move(values));
      } else if (head.text == "rule" || head.text == "default") {
        if (seen_default) throw ConfigError(head.where, "rule after the default rule is unreachable");
        Rule rule;
        rule.where = head.where;
        next();
        if (head.text == "default") {
          rule.is_default = true;
          seen_default = true;
        } else {
          rule.guard = parse_guard();
        }
        expect_symbol("=>");
        rule.factor = parse_factor();
        prog.rules.push_back(std::move(rule));
      } else {
        throw ConfigError(head.where, "expected 'table', 'rule' or 'default', found '" + head.text + "'");
      }
      if (!at_end() && !is_separator()) throw ConfigError(cur().where, "expected ';' or end of line");
      skip_separators();
    }
    if (!seen_default) throw ConfigError(cur().where, "weight program has no default rule");
    for (const auto& r : prog.rules) {
      if (r.factor.table && !prog.tables.count(*r.factor.table))
        throw ConfigError(r.factor.where, "unknown table '" + *r.factor.table + "'");
    }
    return prog;
  }

 private:
  const Token& cur() const { return toks_[pos_]; }
  void next() {
    if (pos_ + 1 < toks_.size()) ++pos_;
  }
  bool at_end() const { return cur().kind == Token::Kind::End; }
  bool is_symbol(std::string_view s) const { return cur().kind == Token::Kind::Symbol && cur().text == s; }
  bool is_ident(std::string_view s) const { return cur().kind == Token::Kind::Ident && cur().text == s; }
  bool is_separator() const { return cur().kind == Token::Kind::Newline || is_symbol(";"); }
  void skip_separators() {
    while (is_separator()) next();
  }

  void expect_symbol(std::string_view s) {
    if (!is_symbol(s)) throw ConfigError(cur().where, "expected '" + std::string(s) + "', found " + describe(cur()));
    next();
  }
  Token expect_ident(std::string_view what) {
    if (cur().kind != Token::Kind::Ident)
      throw ConfigError(cur().where, "expected " + std::string(what) + ", found " + describe(cur()));
    Token t = cur();
    next();
    return t;
  }
  long expect_integer() {
    const Token& t = cur();
    if (t.kind != Token::Kind::Number || t.text.find('/') != std::string::npos)
      throw ConfigError(t.where, "expected integer, found " + describe(t));
    long v = std::stol(t.text);
    next();
    return v;
  }
  static std::string describe(const Token& t) {
    switch (t.kind) {
      case Token::Kind::End:
        return "end of input";
      case Token::Kind::Newline:
        return "end of line";
      default:
        return "'" + t.text + "'";
    }
  }

  std::vector<GuardAtom> parse_guard() {
    std::vector<GuardAtom> atoms;
    atoms.push_back(parse_atom());
    while (is_ident("and") || is_symbol("&&") || is_symbol(",")) {
      next();
      atoms.push_back(parse_atom());
    }
    return atoms;
  }

  GuardAtom parse_atom() {
    Token head = expect_ident("guard atom");
    GuardAtom a{};
    a.where = head.where;
    const std::string& k = head.text;
    if (k == "new_eq_trailing") {
      a.kind = GuardAtom::Kind::NewEqualsTrailing;
    } else if (k == "new_edge" && is_ident("equals")) {
      next();
      auto rhs = expect_ident("'trailing_edge'");
      if (rhs.text != "trailing_edge" && rhs.text != "trailing")
        throw ConfigError(rhs.where, "expected 'trailing_edge' after 'equals'");
      a.kind = GuardAtom::Kind::NewEqualsTrailing;
    } else if (k == "new" || k == "new_edge") {
      expect_symbol("=");
      a.kind = GuardAtom::Kind::NewEdge;
      a.name = expect_ident("edge identifier").text;
    } else if (k == "trailing" || k == "trailing_edge") {
      expect_symbol("=");
      auto id = expect_ident("edge identifier or 'none'");
      if (id.text == "none") {
        a.kind = GuardAtom::Kind::TrailingNone;
      } else {
        a.kind = GuardAtom::Kind::TrailingEdge;
        a.name = id.text;
      }
    } else if (k == "src" || k == "source_vertex") {
      expect_symbol("=");
      a.kind = GuardAtom::Kind::SourceVertex;
      a.name = expect_ident("vertex identifier").text;
    } else if (k == "len") {
      if (is_symbol("<")) {
        next();
        a.kind = GuardAtom::Kind::LengthBelow;
        a.modulus = expect_integer();
      } else if (is_symbol("%")) {
        next();
        a.kind = GuardAtom::Kind::LengthMod;
        a.modulus = expect_integer();
        if (a.modulus <= 0) throw ConfigError(a.where, "modulus must be positive");
        expect_symbol("=");
        a.residue = expect_integer();
        if (a.residue < 0 || a.residue >= a.modulus) throw ConfigError(a.where, "residue out of range");
      } else {
        throw ConfigError(cur().where, "expected '<' or '%' after 'len'");
      }
    } else {
      throw ConfigError(head.where, "unknown guard atom '" + k + "'");
    }
    return a;
  }

  Rational parse_positive_rational() {
    const Token& t = cur();
    if (t.kind != Token::Kind::Number) throw ConfigError(t.where, "expected rational factor, found " + describe(t));
    Rational q;
    try {
      q = parse_rational(t.text);
    } catch (const std::exception& ex) {
      throw ConfigError(t.where, ex.what());
    }
    if (sgn(q) <= 0) throw ConfigError(t.where, "non-positive factor " + t.text);
    next();
    return q;
  }

  Factor parse_factor() {
    Factor f;
    f.where = cur().where;
    if (is_ident("pow")) {
      next();
      expect_symbol("(");
      f.base = parse_positive_rational();
      expect_symbol(",");
      auto fn = expect_ident("'dtable'");
      if (fn.text != "dtable") throw ConfigError(fn.where, "expected 'dtable'");
      expect_symbol("(");
      f.table = expect_ident("table name").text;
      expect_symbol(")");
      expect_symbol(")");
    } else {
      f.base = parse_positive_rational();
    }
    return f;
  }

  std::vector<Token> toks_;
  std::size_t pos_ = 0;
};

}  // namespace

WeightProgram parse_weight_program(std::string_view text, const Graph* g, SourceLocation origin) {
  WeightProgram prog = Parser(Lexer(text, origin).run()).run();
  if (g) check_identifiers(prog, *g);
  return prog;
}

void check_identifiers(const WeightProgram& program, const Graph& g) {
  for (const auto& rule : program.rules) {
    for (const auto& a : rule.guard) {
      switch (a.kind) {
        case GuardAtom::Kind::NewEdge:
        case GuardAtom::Kind::TrailingEdge:
          if (!g.find_edge(a.name)) throw ConfigError(a.where, "unknown edge '" + a.name + "'");
          break;
        case GuardAtom::Kind::SourceVertex:
          if (!g.find_vertex(a.name)) throw ConfigError(a.where, "unknown vertex '" + a.name + "'");
          break;
        default:
          break;
      }
    }
  }
}

std::string WeightProgram::to_text() const {
  std::ostringstream out;
  for (const auto& [name, values] : tables) {
    out << "table " << name << " = [";
    for (std::size_t i = 0; i < values.size(); ++i) out << (i ? ", " : "") << values[i];
    out << "]\n";
  }
  for (const auto& r : rules) {
    if (r.is_default) {
      out << "default";
    } else {
      out << "rule ";
      for (std::size_t i = 0; i < r.guard.size(); ++i) {
        const auto& a = r.guard[i];
        if (i) out << " and ";
        switch (a.kind) {
          case GuardAtom::Kind::NewEdge: out << "new=" << a.name; break;
          case GuardAtom::Kind::TrailingEdge: out << "trailing=" << a.name; break;
          case GuardAtom::Kind::TrailingNone: out << "trailing=none"; break;
          case GuardAtom::Kind::SourceVertex: out << "src=" << a.name; break;
          case GuardAtom::Kind::NewEqualsTrailing: out << "new_eq_trailing"; break;
          case GuardAtom::Kind::LengthBelow: out << "len<" << a.modulus; break;
          case GuardAtom::Kind::LengthMod: out << "len%" << a.modulus << "=" << a.residue; break;
        }
      }
    }
    out << " => ";
    if (r.factor.table)
      out << "pow(" << to_string(r.factor.base) << ", dtable(" << *r.factor.table << "))";
    else
      out << to_string(r.factor.base);
    out << "\n";
  }
  return out.str();
}

PathWeight::PathWeight(Graph g, WeightProgram program) : graph_(std::move(g)), program_(std::move(program)) {
  check_identifiers(program_, graph_);
  if (program_.rules.empty() || !program_.rules.back().is_default)
    throw ConfigError("weight program must end with a default rule");
  for (const auto& r : program_.rules) {
    BoundRule b;
    b.base = r.factor.base;
    if (r.factor.table) {
      auto it = program_.tables.find(*r.factor.table);
      if (it == program_.tables.end()) throw ConfigError(r.factor.where, "unknown table '" + *r.factor.table + "'");
      b.table = &it->second;
      b.table_name = it->first;
    }
    for (const auto& a : r.guard) {
      BoundAtom ba{a.kind, 0, a.modulus, a.residue};
      if (a.kind == GuardAtom::Kind::NewEdge || a.kind == GuardAtom::Kind::TrailingEdge)
        ba.id = graph_.find_edge(a.name)->value;
      else if (a.kind == GuardAtom::Kind::SourceVertex)
        ba.id = graph_.find_vertex(a.name)->value;
      b.guard.push_back(ba);
    }
    rules_.push_back(std::move(b));
  }
}

Rational PathWeight::factor(EdgeId e, std::size_t v_length, std::optional<EdgeId> v_trailing,
                            VertexId source) const {
  const EdgeId trailing = v_trailing.value_or(e);
  for (const auto& rule : rules_) {
    bool match = true;
    for (const auto& a : rule.guard) {
      switch (a.kind) {
        case GuardAtom::Kind::NewEdge: match = e.value == a.id; break;
        case GuardAtom::Kind::TrailingEdge: match = trailing.value == a.id; break;
        case GuardAtom::Kind::TrailingNone: match = !v_trailing.has_value(); break;
        case GuardAtom::Kind::SourceVertex: match = source.value == a.id; break;
        case GuardAtom::Kind::NewEqualsTrailing: match = v_trailing.has_value() && *v_trailing == e; break;
        case GuardAtom::Kind::LengthBelow: match = static_cast<long>(v_length) < a.modulus; break;
        case GuardAtom::Kind::LengthMod: match = static_cast<long>(v_length) % a.modulus == a.residue; break;
      }
      if (!match) break;
    }
    if (!match) continue;
    if (!rule.table) return rule.base;
    const auto& t = *rule.table;
    if (v_length + 1 >= t.size())
      throw TableUnderflow("table '" + rule.table_name + "' has " + std::to_string(t.size()) +
                           " entries; index " + std::to_string(v_length + 1) + " required");
    return pow(rule.base, t[v_length + 1] - t[v_length]);
  }
  return Rational(1);  // unreachable: the last rule is a default
}

Rational PathWeight::extension_factor(EdgeId e, const Path& v) const {
  std::optional<EdgeId> trailing;
  if (!v.is_vertex()) trailing = v.trailing_edge();
  return factor(e, v.length(), trailing, v.source());
}

Rational PathWeight::compute_alpha(const Path& v) const {
  Rational a(1);
  auto edges = v.edges();
  const std::size_t k = edges.size();
  if (k == 0) return a;
  const EdgeId trailing = edges[k - 1];
  for (std::size_t i = k; i-- > 0;) {
    std::size_t suffix_len = k - 1 - i;
    std::optional<EdgeId> t;
    if (suffix_len > 0) t = trailing;
    a *= factor(edges[i], suffix_len, t, v.source());
  }
  return a;
}

Rational PathWeight::alpha(const Path& v) const {
  if (v.is_vertex()) return Rational(1);
  {
    std::lock_guard lock(memo_mutex_);
    if (auto it = memo_.find(v); it != memo_.end()) return it->second;
  }
  Rational a = compute_alpha(v);
  std::lock_guard lock(memo_mutex_);
  memo_.emplace(v, a);
  return a;
}

std::vector<Rational> PathWeight::alpha_table(const PathTable& table) const {
  std::vector<Rational> out;
  out.reserve(table.size());
  for (const Path& p : table) out.push_back(alpha(p));
  return out;
}

bool PathWeight::factors_at_most_one() const {
  for (const auto& rule : rules_) {
    if (!rule.table) {
      if (rule.base > 1) return false;
      continue;
    }
    const auto& t = *rule.table;
    for (std::size_t i = 0; i + 1 < t.size(); ++i)
      if (pow(rule.base, t[i + 1] - t[i]) > 1) return false;
  }
  return true;
}

bool PathWeight::edge_determined() const {
  for (const auto& rule : rules_) {
    if (rule.table) return false;
    for (const auto& a : rule.guard)
      if (a.kind != GuardAtom::Kind::NewEdge) return false;
  }
  return true;
}

}  // namespace fockweight
