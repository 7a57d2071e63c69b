#include "gcdh/parser.hpp"

#include <algorithm>
#include <cctype>
#include <fstream>
#include <set>
#include <sstream>

#include "gcdh/error.hpp"

namespace gcdh {

const Form* ModelFile::form(const std::string& key) const {
  for (const auto& [n, f] : forms)
    if (n == key) return &f;
  return nullptr;
}

const GCMap* ModelFile::structure(const std::string& key) const {
  for (const auto& [n, j] : structures)
    if (n == key) return &j;
  return nullptr;
}

int ModelFile::option(const std::string& key, int fallback) const {
  auto it = options.find(key);
  return it == options.end() ? fallback : it->second;
}

namespace {

enum class Tok { Ident, Number, Op, End };

struct Token {
  Tok kind;
  std::string text;
  int column;
};

std::vector<Token> lex(std::string_view line, int line_no) {
  std::vector<Token> out;
  std::size_t i = 0;
  while (i < line.size()) {
    char c = line[i];
    int col = static_cast<int>(i) + 1;
    if (c == '#') break;
    if (std::isspace(static_cast<unsigned char>(c))) {
      ++i;
    } else if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      std::size_t j = i;
      while (j < line.size() && (std::isalnum(static_cast<unsigned char>(line[j])) || line[j] == '_')) ++j;
      out.push_back({Tok::Ident, std::string(line.substr(i, j - i)), col});
      i = j;
    } else if (std::isdigit(static_cast<unsigned char>(c))) {
      std::size_t j = i;
      while (j < line.size() && std::isdigit(static_cast<unsigned char>(line[j]))) ++j;
      out.push_back({Tok::Number, std::string(line.substr(i, j - i)), col});
      i = j;
    } else if (std::string_view("+-*/^()=,").find(c) != std::string_view::npos) {
      out.push_back({Tok::Op, std::string(1, c), col});
      ++i;
    } else {
      throw ParseError(std::string("unexpected character '") + c + "'", line_no, col);
    }
  }
  out.push_back({Tok::End, "", static_cast<int>(line.size()) + 1});
  return out;
}

bool reserved(const std::string& s) {
  static const std::set<std::string> words{"i", "pi", "exp", "conj", "end"};
  return words.count(s) > 0;
}

/// Cursor over the tokens of one line.
class Cursor {
 public:
  Cursor(std::vector<Token> toks, int line) : toks_(std::move(toks)), line_(line) {}

  const Token& peek() const { return toks_[pos_]; }
  Token next() { return toks_[pos_ == toks_.size() - 1 ? pos_ : pos_++]; }
  bool at_end() const { return peek().kind == Tok::End; }
  bool accept(const std::string& op) {
    if (peek().kind == Tok::Op && peek().text == op) {
      ++pos_;
      return true;
    }
    return false;
  }
  void expect(const std::string& op) {
    if (!accept(op)) fail("expected '" + op + "'");
  }
  std::string ident(const std::string& what) {
    if (peek().kind != Tok::Ident) fail("expected " + what);
    return next().text;
  }
  void finish() {
    if (!at_end()) fail("unexpected '" + peek().text + "'");
  }
  [[noreturn]] void fail(const std::string& msg) const {
    throw ParseError(msg + (at_end() ? " at end of line" : ""), line_, peek().column);
  }
  [[noreturn]] void fail_at(const std::string& msg, int column) const { throw ParseError(msg, line_, column); }
  int line() const { return line_; }

 private:
  std::vector<Token> toks_;
  std::size_t pos_ = 0;
  int line_;
};

struct Scope {
  std::vector<std::string> generators;
  std::set<std::string> parameters;
  std::map<std::string, Form> named;

  int n() const { return static_cast<int>(generators.size()); }
  int generator(const std::string& s) const {
    auto it = std::find(generators.begin(), generators.end(), s);
    return it == generators.end() ? -1 : static_cast<int>(it - generators.begin());
  }
};

/// expr := ['+'|'-'] term (('+'|'-') term)*
/// term := wedge (('*'|'/') wedge)*
/// wedge := factor ('^' factor)*
/// factor := primary ['^' INT]
class ExprParser {
 public:
  ExprParser(Cursor& c, const Scope& s) : c_(c), s_(s) {}

  Form expr() {
    Form r(s_.n());
    bool neg = false;
    if (c_.accept("-")) neg = true;
    else c_.accept("+");
    r = term();
    if (neg) r = -r;
    while (true) {
      if (c_.accept("+")) r += term();
      else if (c_.accept("-")) r -= term();
      else return r;
    }
  }

 private:
  Form term() {
    Form r = unary();
    while (true) {
      if (c_.accept("*")) {
        r = wedge(r, unary());
      } else if (c_.peek().kind == Tok::Op && c_.peek().text == "/") {
        int col = c_.next().column;
        Form den = unary();
        Gaussian g;
        if (!constant_of(den, g) || g == Gaussian(0)) c_.fail_at("division by a non-constant or zero value", col);
        r = r * Scalar(g.inverse());
      } else {
        return r;
      }
    }
  }

  Form unary() {
    if (c_.accept("-")) return -unary();
    if (c_.accept("+")) return unary();
    return wedge_chain();
  }

  Form wedge_chain() {
    Form r = factor();
    while (c_.peek().kind == Tok::Op && c_.peek().text == "^") {
      c_.next();
      r = wedge(r, factor());
    }
    return r;
  }

  Form factor() {
    Form base = primary();
    if (c_.peek().kind == Tok::Op && c_.peek().text == "^") {
      Cursor save = c_;
      c_.next();
      if (c_.peek().kind == Tok::Number) {
        int k = std::stoi(c_.next().text);
        return wedge_power(base, k);
      }
      c_ = save;
    }
    return base;
  }

  Form primary() {
    const Token t = c_.peek();
    if (t.kind == Tok::Number) {
      c_.next();
      return Form(s_.n(), Scalar(Gaussian(Rational(t.text))));
    }
    if (t.kind == Tok::Op && t.text == "(") {
      c_.next();
      Form r = expr();
      c_.expect(")");
      return r;
    }
    if (t.kind != Tok::Ident) c_.fail(t.kind == Tok::End ? "expected an expression" : "unexpected '" + t.text + "'");
    c_.next();
    if (t.text == "i") return Form(s_.n(), Scalar::i());
    if (t.text == "pi") return Form(s_.n(), Scalar::pi());
    if (t.text == "exp" || t.text == "conj") {
      c_.expect("(");
      Form arg = expr();
      c_.expect(")");
      if (t.text == "conj") return arg.conj();
      if (!arg.coefficient(0).is_zero()) c_.fail_at("exp of a form with nonzero constant part", t.column);
      for (const auto& [mask, coeff] : arg.terms())
        if (mask_degree(mask) % 2 != 0) c_.fail_at("exp of a form with odd-degree part", t.column);
      return exp_nilpotent(arg);
    }
    if (int g = s_.generator(t.text); g >= 0) return Form::generator(s_.n(), g);
    if (s_.parameters.count(t.text)) return Form(s_.n(), Scalar::parameter(t.text));
    if (auto it = s_.named.find(t.text); it != s_.named.end()) return it->second;
    c_.fail_at("undeclared symbol '" + t.text + "'", t.column);
  }

  static bool constant_of(const Form& f, Gaussian& g) {
    if (!f.is_zero() && !(f.terms().size() == 1 && f.terms().begin()->first == 0)) return false;
    Scalar s = f.coefficient(0);
    if (!s.is_constant()) return false;
    g = s.constant_value();
    return true;
  }

  Cursor& c_;
  const Scope& s_;
};

Rational rational_literal(Cursor& c) {
  bool neg = c.accept("-");
  if (!neg) c.accept("+");
  if (c.peek().kind != Tok::Number) c.fail("expected a rational number");
  Rational r(c.next().text);
  if (c.accept("/")) {
    if (c.peek().kind != Tok::Number) c.fail("expected a denominator");
    int col = c.peek().column;
    Rational den(c.next().text);
    if (den == 0) c.fail_at("zero denominator", col);
    r /= den;
  }
  r.canonicalize();
  return neg ? Rational(-r) : r;
}

int integer_literal(Cursor& c) {
  bool neg = c.accept("-");
  if (!neg) c.accept("+");
  if (c.peek().kind != Tok::Number) c.fail("expected an integer");
  int v = std::stoi(c.next().text);
  return neg ? -v : v;
}

/// Index J in `xi J`, `theta J`; one-based in the file.
int index_literal(Cursor& c, int limit) {
  if (c.peek().kind != Tok::Number) c.fail("expected an index");
  int col = c.peek().column;
  int v = std::stoi(c.next().text);
  if (v < 1 || (limit > 0 && v > limit)) c.fail_at("index out of range", col);
  return v - 1;
}

struct Lines {
  std::vector<std::string> text;
  std::size_t pos = 0;
};

class FileParser {
 public:
  explicit FileParser(std::string_view src) {
    std::string s(src);
    std::istringstream in(s);
    std::string line;
    while (std::getline(in, line)) {
      if (!line.empty() && line.back() == '\r') line.pop_back();
      lines_.push_back(line);
    }
  }

  ModelFile run() {
    while (pos_ < lines_.size()) {
      int line_no = static_cast<int>(pos_) + 1;
      Cursor c(lex(lines_[pos_++], line_no), line_no);
      if (c.at_end()) continue;
      statement(c);
    }
    return finish();
  }

 private:
  struct Pending {
    int line;
    std::vector<std::pair<Exponent, Form>> terms;
  };

  void require_generators(Cursor& c) {
    if (!have_generators_) c.fail_at("generators must be declared first", head_column_);
  }

  void declare(Cursor& c, const std::string& name, int column) {
    if (reserved(name)) c.fail_at("'" + name + "' is reserved", column);
    if (scope_.generator(name) >= 0 || scope_.parameters.count(name) || scope_.named.count(name))
      c.fail_at("'" + name + "' is already declared", column);
  }

  Form expression(Cursor& c) {
    ExprParser p(c, scope_);
    Form f = p.expr();
    return f;
  }

  void statement(Cursor& c) {
    Token head = c.next();
    if (head.kind != Tok::Ident) c.fail_at("expected a statement keyword", head.column);
    head_column_ = head.column;
    const std::string& kw = head.text;
    if (kw == "model") {
      file_.name = c.ident("a model name");
      c.finish();
    } else if (kw == "generators") {
      if (have_generators_) c.fail_at("generators declared twice", head.column);
      while (!c.at_end()) {
        Token t = c.peek();
        std::string g = c.ident("a generator name");
        declare(c, g, t.column);
        scope_.generators.push_back(g);
      }
      if (scope_.generators.empty()) c.fail("expected at least one generator");
      if (scope_.generators.size() > 32) c.fail_at("at most 32 generators", head.column);
      have_generators_ = true;
      generators_line_ = c.line();
      d_table_.assign(scope_.generators.size(), Form(scope_.n()));
      d_lines_.assign(scope_.generators.size(), 0);
      h_ = Form(scope_.n());
    } else if (kw == "parameters") {
      while (!c.at_end()) {
        Token t = c.peek();
        std::string p = c.ident("a parameter name");
        declare(c, p, t.column);
        scope_.parameters.insert(p);
        file_.parameters.push_back(p);
      }
    } else if (kw == "d") {
      require_generators(c);
      Token t = c.peek();
      std::string g = c.ident("a generator name");
      int idx = scope_.generator(g);
      if (idx < 0) c.fail_at("undeclared generator '" + g + "'", t.column);
      if (d_lines_[static_cast<std::size_t>(idx)] != 0) c.fail_at("d " + g + " assigned twice", t.column);
      c.expect("=");
      d_table_[static_cast<std::size_t>(idx)] = expression(c);
      d_lines_[static_cast<std::size_t>(idx)] = c.line();
      c.finish();
    } else if (kw == "H") {
      require_generators(c);
      c.expect("=");
      h_ = expression(c);
      h_line_ = c.line();
      c.finish();
    } else if (kw == "volume") {
      require_generators(c);
      c.expect("=");
      int col = c.peek().column;
      Form v = expression(c);
      c.finish();
      if (!(v.is_zero() || v.is_homogeneous(0))) c.fail_at("volume must be a scalar", col);
      volume_ = v.coefficient(0);
    } else if (kw == "orientation") {
      c.expect("=");
      int col = c.peek().column;
      orientation_ = integer_literal(c);
      c.finish();
      if (orientation_ != 1 && orientation_ != -1) c.fail_at("orientation must be +1 or -1", col);
    } else if (kw == "let" || kw == "spinor") {
      require_generators(c);
      Token t = c.peek();
      std::string name = c.ident("a name");
      declare(c, name, t.column);
      c.expect("=");
      Form f = expression(c);
      c.finish();
      scope_.named.emplace(name, f);
      file_.forms.emplace_back(name, f);
      if (kw == "spinor") file_.spinors.push_back(name);
    } else if (kw == "gcmap") {
      require_generators(c);
      gcmap(c);
    } else if (kw == "action") {
      require_generators(c);
      c.finish();
      if (action_line_) c.fail_at("action declared twice", head.column);
      action_line_ = c.line();
      action_block();
    } else if (kw == "connection") {
      require_generators(c);
      c.finish();
      if (connection_line_) c.fail_at("connection declared twice", head.column);
      connection_line_ = c.line();
      connection_block();
    } else if (kw == "family") {
      family(c);
    } else if (kw == "sample") {
      Sample s;
      do {
        Token t = c.peek();
        std::string p = c.ident("a parameter name");
        if (!scope_.parameters.count(p)) c.fail_at("undeclared parameter '" + p + "'", t.column);
        c.expect("=");
        s[p] = rational_literal(c);
      } while (c.accept(","));
      c.finish();
      file_.samples.push_back(std::move(s));
    } else if (kw == "option") {
      Token t = c.peek();
      std::string key = c.ident("an option name");
      if (key != "n" && key != "k" && key != "trunc" && key != "type")
        c.fail_at("unknown option '" + key + "'", t.column);
      c.expect("=");
      file_.options[key] = integer_literal(c);
      c.finish();
    } else if (kw == "eqform") {
      require_generators(c);
      Token t = c.peek();
      std::string name = c.ident("a name");
      declare(c, name, t.column);
      c.finish();
      eqform_block(name, c.line());
    } else {
      c.fail_at("unknown statement '" + kw + "'", head.column);
    }
  }

  /// Lines of a block up to `end`; returns false when the file ends first.
  template <class F>
  void block(const std::string& what, int start, F&& each) {
    while (pos_ < lines_.size()) {
      int line_no = static_cast<int>(pos_) + 1;
      Cursor c(lex(lines_[pos_++], line_no), line_no);
      if (c.at_end()) continue;
      if (c.peek().kind == Tok::Ident && c.peek().text == "end") {
        c.next();
        c.finish();
        return;
      }
      each(c);
    }
    throw ParseError(what + " block opened here has no 'end'", start, 1);
  }

  GCMap::Matrix matrix_block(int rows, int start) {
    GCMap::Matrix m;
    block("matrix", start, [&](Cursor& c) {
      Token head = c.next();
      if (head.kind != Tok::Ident || head.text != "row") c.fail_at("expected 'row'", head.column);
      std::vector<Rational> row;
      while (!c.at_end()) row.push_back(rational_literal(c));
      if (static_cast<int>(row.size()) != rows)
        c.fail_at("row has " + std::to_string(row.size()) + " entries, expected " + std::to_string(rows), head.column);
      m.push_back(std::move(row));
    });
    if (static_cast<int>(m.size()) != rows)
      throw ParseError("matrix has " + std::to_string(m.size()) + " rows, expected " + std::to_string(rows), start, 1);
    return m;
  }

  void gcmap(Cursor& c) {
    Token t = c.peek();
    std::string name = c.ident("a structure name");
    declare(c, name, t.column);
    if (file_.structure(name)) c.fail_at("structure '" + name + "' already declared", t.column);
    c.expect("=");
    Token kind = c.peek();
    std::string k = c.ident("symplectic, complex_standard, complex, matrix or btransform");
    int line = c.line();
    auto wrap = [&](auto&& make) {
      try {
        return make();
      } catch (const DomainError& e) {
        throw ModelValidationError(e, line);
      }
    };
    std::optional<GCMap> j;
    int n = scope_.n();
    if (k == "symplectic") {
      Form omega = expression(c);
      c.finish();
      j = wrap([&] { return GCMap::symplectic(omega); });
    } else if (k == "complex_standard") {
      c.finish();
      j = wrap([&] { return GCMap::standard_complex(n); });
    } else if (k == "complex") {
      c.finish();
      GCMap::Matrix m = matrix_block(n, line);
      j = wrap([&] { return GCMap::complex(m); });
    } else if (k == "matrix") {
      c.finish();
      GCMap::Matrix m = matrix_block(2 * n, line);
      j = wrap([&] { return GCMap(n, m); });
    } else if (k == "btransform") {
      Token o = c.peek();
      std::string other = c.ident("a structure name");
      const GCMap* base = file_.structure(other);
      if (!base) c.fail_at("undeclared structure '" + other + "'", o.column);
      Form b = expression(c);
      c.finish();
      j = wrap([&] { return b_transform(*base, b); });
    } else {
      c.fail_at("unknown structure kind '" + k + "'", kind.column);
    }
    Diagnostics diag = validate(*j);
    if (!diag.ok) throw ModelValidationError(DomainError(diag.failures.front(), diag.residual), line);
    file_.structures.emplace_back(name, *j);
  }

  void action_block() {
    block("action", action_line_, [&](Cursor& c) {
      Token head = c.next();
      if (head.kind != Tok::Ident || (head.text != "xi" && head.text != "mu_diff" && head.text != "alpha"))
        c.fail_at("expected xi, mu_diff or alpha", head.column);
      int j = index_literal(c, 0);
      c.expect("=");
      auto slot = static_cast<std::size_t>(j);
      if (head.text == "xi") {
        std::vector<Rational> v;
        while (!c.at_end()) v.push_back(rational_literal(c));
        if (static_cast<int>(v.size()) != scope_.n())
          c.fail_at("xi needs " + std::to_string(scope_.n()) + " components", head.column);
        if (xi_.size() <= slot) xi_.resize(slot + 1);
        xi_[slot] = std::move(v);
      } else {
        Form f = expression(c);
        c.finish();
        auto& target = head.text == "mu_diff" ? mu_diff_ : alpha_;
        if (target.size() <= slot) target.resize(slot + 1, Form(scope_.n()));
        target[slot] = f;
      }
    });
  }

  void connection_block() {
    block("connection", connection_line_, [&](Cursor& c) {
      Token head = c.next();
      if (head.kind != Tok::Ident || head.text != "theta") c.fail_at("expected theta", head.column);
      auto slot = static_cast<std::size_t>(index_literal(c, 0));
      c.expect("=");
      Form f = expression(c);
      c.finish();
      if (theta_.size() <= slot) theta_.resize(slot + 1, Form(scope_.n()));
      theta_[slot] = f;
    });
  }

  void eqform_block(const std::string& name, int start) {
    Pending p{start, {}};
    block("eqform", start, [&](Cursor& c) {
      Exponent e;
      if (c.peek().kind == Tok::Number && c.peek().text == "1") {
        c.next();
      } else {
        do {
          Token t = c.peek();
          std::string x = c.ident("a monomial in x1, x2, ...");
          if (x.size() < 2 || x[0] != 'x' || !std::all_of(x.begin() + 1, x.end(), ::isdigit) || x[1] == '0')
            c.fail_at("expected x1, x2, ...", t.column);
          auto j = static_cast<std::size_t>(std::stoi(x.substr(1)) - 1);
          int power = 1;
          if (c.accept("^")) power = integer_literal(c);
          if (power < 0) c.fail_at("negative power", t.column);
          if (e.size() <= j) e.resize(j + 1, 0);
          e[j] += power;
        } while (c.accept("*"));
      }
      c.expect("=");
      Form f = expression(c);
      c.finish();
      p.terms.emplace_back(std::move(e), f);
    });
    pending_.emplace_back(name, std::move(p));
  }

  void family(Cursor& c) {
    Token t = c.peek();
    std::string name = c.ident("a family name");
    declare(c, name, t.column);
    c.expect("=");
    Token kind = c.peek();
    if (c.ident("'quotient'") != "quotient") c.fail_at("expected 'quotient'", kind.column);
    FamilySpec f;
    Token s = c.peek();
    f.spinor = c.ident("a spinor name");
    if (!scope_.named.count(f.spinor)) c.fail_at("undeclared form '" + f.spinor + "'", s.column);
    Token cc = c.peek();
    f.c_name = c.ident("a 2-form name");
    if (!scope_.named.count(f.c_name)) c.fail_at("undeclared form '" + f.c_name + "'", cc.column);
    Token p = c.peek();
    f.parameter = c.ident("a parameter name");
    if (!scope_.parameters.count(f.parameter)) c.fail_at("undeclared parameter '" + f.parameter + "'", p.column);
    c.finish();
    family_lines_.push_back(c.line());
    file_.families.emplace_back(name, f);
  }

  int line_of_model_error(const std::string& what) const {
    if (what.rfind("H", 0) == 0) return h_line_ ? h_line_ : generators_line_;
    auto pos = what.rfind(" on ");
    if (pos != std::string::npos) {
      int g = scope_.generator(what.substr(pos + 4));
      if (g >= 0 && d_lines_[static_cast<std::size_t>(g)]) return d_lines_[static_cast<std::size_t>(g)];
    }
    return generators_line_;
  }

  ModelFile finish() {
    if (!have_generators_) throw ParseError("no generators declared", static_cast<int>(lines_.size()) + 1, 1);
    try {
      file_.model = Model(scope_.generators, d_table_, h_, volume_, orientation_);
    } catch (const DomainError& e) {
      throw ModelValidationError(e, line_of_model_error(e.what()));
    }
    if (action_line_) {
      try {
        if (xi_.empty()) throw DomainError("action declares no xi");
        for (std::size_t j = 0; j < xi_.size(); ++j)
          if (xi_[j].empty()) throw DomainError("xi" + std::to_string(j + 1) + " missing");
        if (mu_diff_.size() > xi_.size() || alpha_.size() > xi_.size())
          throw DomainError("more moment data than circle factors");
        mu_diff_.resize(xi_.size(), Form(scope_.n()));
        alpha_.resize(xi_.size(), Form(scope_.n()));
        file_.action = TorusAction(file_.model, xi_, mu_diff_, alpha_);
      } catch (const DomainError& e) {
        throw ModelValidationError(e, action_line_);
      }
    }
    if (connection_line_) {
      try {
        if (!file_.action) throw DomainError("connection without an action");
        file_.connection = Connection(file_.model, *file_.action, theta_);
      } catch (const DomainError& e) {
        throw ModelValidationError(e, connection_line_);
      }
    }
    for (std::size_t f = 0; f < file_.families.size(); ++f) {
      const FamilySpec& spec = file_.families[f].second;
      try {
        quotient_family(file_.model, scope_.named.at(spec.spinor), scope_.named.at(spec.c_name), spec.parameter,
                        file_.samples);
      } catch (const DomainError& e) {
        throw ModelValidationError(e, family_lines_[f]);
      }
    }
    int rank = file_.action ? file_.action->rank() : 0;
    for (auto& [name, p] : pending_) {
      int trunc = file_.option("trunc", 2);
      for (const auto& [e, f] : p.terms) {
        if (static_cast<int>(e.size()) > rank)
          throw ModelValidationError(DomainError("x" + std::to_string(e.size()) + " exceeds the torus rank"), p.line);
        trunc = std::max(trunc, total_degree(e));
      }
      EqForm eq(rank, scope_.n(), trunc);
      for (auto [e, f] : p.terms) {
        e.resize(static_cast<std::size_t>(rank), 0);
        eq.add(e, f);
      }
      file_.eqforms.emplace_back(name, eq);
    }
    return std::move(file_);
  }

  std::vector<std::string> lines_;
  std::size_t pos_ = 0;
  ModelFile file_;
  Scope scope_;
  bool have_generators_ = false;
  int head_column_ = 1;
  int generators_line_ = 0;
  std::vector<Form> d_table_;
  std::vector<int> d_lines_;
  Form h_;
  int h_line_ = 0;
  Scalar volume_ = 1;
  int orientation_ = 1;
  int action_line_ = 0;
  std::vector<std::vector<Rational>> xi_;
  std::vector<Form> mu_diff_, alpha_;
  int connection_line_ = 0;
  std::vector<Form> theta_;
  std::vector<int> family_lines_;
  std::vector<std::pair<std::string, Pending>> pending_;
};

std::string rational_row(const std::vector<Rational>& row) {
  std::string out;
  for (const auto& r : row) out += " " + r.get_str();
  return out;
}

std::string exponent_text(const Exponent& e) {
  std::string out;
  for (std::size_t j = 0; j < e.size(); ++j) {
    if (e[j] == 0) continue;
    if (!out.empty()) out += "*";
    out += "x" + std::to_string(j + 1);
    if (e[j] > 1) out += "^" + std::to_string(e[j]);
  }
  return out.empty() ? "1" : out;
}

}  // namespace

ModelFile parse_model(std::string_view text) { return FileParser(text).run(); }

ModelFile load_model(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw DomainError("cannot open " + path);
  std::stringstream buf;
  buf << in.rdbuf();
  return parse_model(buf.str());
}

std::string print_model(const ModelFile& f) {
  const Model& m = f.model;
  const auto& names = m.names();
  std::ostringstream out;
  if (!f.name.empty()) out << "model " << f.name << "\n";
  out << "generators";
  for (const auto& n : names) out << " " << n;
  out << "\n";
  if (!f.parameters.empty()) {
    out << "parameters";
    for (const auto& p : f.parameters) out << " " << p;
    out << "\n";
  }
  for (std::size_t g = 0; g < names.size(); ++g)
    if (!m.d_table()[g].is_zero()) out << "d " << names[g] << " = " << m.print(m.d_table()[g]) << "\n";
  if (!m.h().is_zero()) out << "H = " << m.print(m.h()) << "\n";
  if (!(m.volume() == Scalar(1))) out << "volume = " << m.volume().to_string() << "\n";
  if (m.orientation() != 1) out << "orientation = -1\n";
  for (const auto& [name, form] : f.forms) {
    bool spinor = std::find(f.spinors.begin(), f.spinors.end(), name) != f.spinors.end();
    out << (spinor ? "spinor " : "let ") << name << " = " << m.print(form) << "\n";
  }
  for (const auto& [name, j] : f.structures) {
    out << "gcmap " << name << " = matrix\n";
    for (const auto& row : j.matrix()) out << "  row" << rational_row(row) << "\n";
    out << "end\n";
  }
  if (f.action) {
    out << "action\n";
    for (int j = 0; j < f.action->rank(); ++j) {
      out << "  xi " << j + 1 << " =";
      for (const auto& g : f.action->xi(j)) out << " " << g.re().get_str();
      out << "\n";
      if (!f.action->mu_diff(j).is_zero()) out << "  mu_diff " << j + 1 << " = " << m.print(f.action->mu_diff(j)) << "\n";
      if (!f.action->alpha(j).is_zero()) out << "  alpha " << j + 1 << " = " << m.print(f.action->alpha(j)) << "\n";
    }
    out << "end\n";
  }
  if (f.connection) {
    out << "connection\n";
    for (int j = 0; j < f.connection->rank(); ++j)
      out << "  theta " << j + 1 << " = " << m.print(f.connection->theta(j)) << "\n";
    out << "end\n";
  }
  for (const auto& [name, spec] : f.families)
    out << "family " << name << " = quotient " << spec.spinor << " " << spec.c_name << " " << spec.parameter << "\n";
  for (const auto& s : f.samples) {
    out << "sample";
    bool first = true;
    for (const auto& [p, v] : s) {
      out << (first ? " " : ", ") << p << " = " << v.get_str();
      first = false;
    }
    out << "\n";
  }
  for (const auto& [k, v] : f.options) out << "option " << k << " = " << v << "\n";
  for (const auto& [name, eq] : f.eqforms) {
    out << "eqform " << name << "\n";
    for (const auto& [e, c] : eq.terms()) out << "  " << exponent_text(e) << " = " << m.print(c) << "\n";
    out << "end\n";
  }
  return out.str();
}

Form parse_form(std::string_view expr, const std::vector<std::string>& generators,
                const std::vector<std::string>& parameters, const std::map<std::string, Form>& named) {
  Scope s;
  s.generators = generators;
  s.parameters.insert(parameters.begin(), parameters.end());
  s.named = named;
  Cursor c(lex(expr, 1), 1);
  ExprParser p(c, s);
  Form f = p.expr();
  c.finish();
  return f;
}

}  // namespace gcdh
