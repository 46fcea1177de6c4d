#include <algorithm>
#include <cctype>
#include <fstream>
#include <set>
#include <sstream>

#include "qcongr/dsl.hpp"

namespace qcongr::dsl {

ParseError::ParseError(const std::string& origin, Position pos, const std::string& message,
                       std::vector<std::string> expected)
    : std::runtime_error([&] {
        std::string s = origin + ":" + std::to_string(pos.line) + ":" + std::to_string(pos.column) + ": " + message;
        if (!expected.empty()) {
          s += " (expected ";
          for (std::size_t i = 0; i < expected.size(); ++i) s += (i ? ", " : "") + expected[i];
          s += ")";
        }
        return s;
      }()),
      pos_(pos),
      message_(message),
      expected_(std::move(expected)) {}

namespace {

const std::set<std::string> kKeywords = {"claim", "params", "sum",  "of",   "mod",     "where",  "note",
                                         "if",    "then",   "else", "poch", "qint",    "rising", "gamma_p",
                                         "abs",   "prime",  "Phi",  "exact", "grid",   "q"};

constexpr int kMaxDepth = 200;

struct Token {
  enum class Kind { End, Int, Ident, Str, Sym };
  Kind kind = Kind::End;
  std::string text;
  long long value = 0;
  Position pos;
  bool adjacent = false;  // no whitespace before it
};

std::string describe(const Token& t) {
  switch (t.kind) {
    case Token::Kind::End:
      return "end of input";
    case Token::Kind::Int:
      return "integer " + t.text;
    case Token::Kind::Ident:
      return "'" + t.text + "'";
    case Token::Kind::Str:
      return "string";
    case Token::Kind::Sym:
      return "'" + t.text + "'";
  }
  return "?";
}

class Parser {
 public:
  explicit Parser(const ClaimSource& src) : src_(src), text_(src.text) {}

  std::vector<ClaimAst> file() {
    std::vector<ClaimAst> out;
    while (peek().kind != Token::Kind::End) out.push_back(claim());
    return out;
  }

 private:
  // ---- lexer ----

  [[noreturn]] void fail(Position pos, const std::string& msg, std::vector<std::string> expected = {}) const {
    throw ParseError(src_.origin, pos, msg, std::move(expected));
  }

  void bump() {
    if (text_[i_] == '\n') {
      ++line_;
      col_ = 1;
    } else if ((static_cast<unsigned char>(text_[i_]) & 0xC0) != 0x80) {
      ++col_;
    }
    ++i_;
  }

  // Skips blanks and comments; true if anything was skipped.
  bool skip_space() {
    bool skipped = false;
    while (i_ < text_.size()) {
      char c = text_[i_];
      if (c == ' ' || c == '\t' || c == '\r' || c == '\n') {
        bump();
        skipped = true;
      } else if (c == '#') {
        while (i_ < text_.size() && text_[i_] != '\n') bump();
        skipped = true;
      } else {
        break;
      }
    }
    return skipped;
  }

  Position here() const { return {line_, col_}; }

  bool starts(const char* s) const { return text_.compare(i_, std::char_traits<char>::length(s), s) == 0; }

  Token lex() {
    bool spaced = skip_space();
    Token t;
    t.pos = here();
    t.adjacent = !spaced && i_ > 0;
    if (i_ >= text_.size()) return t;
    unsigned char c = static_cast<unsigned char>(text_[i_]);
    if (std::isdigit(c)) {
      t.kind = Token::Kind::Int;
      while (i_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[i_]))) {
        t.text += text_[i_];
        bump();
      }
      if (t.text.size() > 18) fail(t.pos, "integer literal too large");
      t.value = std::stoll(t.text);
      return t;
    }
    if (std::isalpha(c)) {
      t.kind = Token::Kind::Ident;
      while (i_ < text_.size() &&
             (std::isalnum(static_cast<unsigned char>(text_[i_])) || text_[i_] == '_')) {
        t.text += text_[i_];
        bump();
      }
      return t;
    }
    if (c == '"') {
      t.kind = Token::Kind::Str;
      bump();
      for (;;) {
        if (i_ >= text_.size() || text_[i_] == '\n') fail(t.pos, "unterminated string");
        char ch = text_[i_];
        bump();
        if (ch == '"') break;
        if (ch == '\\') {
          if (i_ >= text_.size()) fail(t.pos, "unterminated string");
          ch = text_[i_];
          bump();
        }
        t.text += ch;
      }
      return t;
    }
    t.kind = Token::Kind::Sym;
    static const char* const multi[] = {"..", "==", "!=", "<=", ">=", "~="};
    for (const char* m : multi) {
      if (starts(m)) {
        t.text = m;
        bump();
        bump();
        return t;
      }
    }
    if (starts("\xE2\x89\xA1")) {  // U+2261
      t.text = "~=";
      for (int k = 0; k < 3; ++k) bump();
      return t;
    }
    if (starts("\xCE\xA6")) {  // U+03A6
      t.kind = Token::Kind::Ident;
      t.text = "Phi";
      bump();
      bump();
      return t;
    }
    if (std::string("();,:*/%+-^_<>=").find(static_cast<char>(c)) != std::string::npos) {
      t.text = std::string(1, static_cast<char>(c));
      bump();
      return t;
    }
    fail(t.pos, "unexpected character '" + std::string(1, static_cast<char>(c)) + "'");
  }

  const Token& peek() {
    if (!cached_) {
      tok_ = lex();
      cached_ = true;
    }
    return tok_;
  }

  Token take() {
    Token t = peek();
    cached_ = false;
    return t;
  }

  bool is_sym(const char* s) { return peek().kind == Token::Kind::Sym && peek().text == s; }
  bool is_word(const char* s) { return peek().kind == Token::Kind::Ident && peek().text == s; }

  Token expect_sym(const char* s, const std::string& what = "") {
    if (!is_sym(s)) fail(peek().pos, "unexpected " + describe(peek()), {what.empty() ? "'" + std::string(s) + "'" : what});
    return take();
  }
  Token expect_word(const char* s, const std::string& what = "") {
    if (!is_word(s)) fail(peek().pos, "unexpected " + describe(peek()), {what.empty() ? "'" + std::string(s) + "'" : what});
    return take();
  }

  // Claim names may contain '-' and '.', so they are read raw.
  std::string claim_name() {
    skip_space();
    Position pos = here();
    std::string name;
    while (i_ < text_.size()) {
      char c = text_[i_];
      if (std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '-' || c == '.') {
        name += c;
        bump();
      } else {
        break;
      }
    }
    if (name.empty()) fail(pos, "missing claim name", {"claim name"});
    return name;
  }

  struct DepthGuard {
    Parser& p;
    explicit DepthGuard(Parser& parser, Position pos) : p(parser) {
      if (++p.depth_ > kMaxDepth) p.fail(pos, "expression nested too deeply");
    }
    ~DepthGuard() { --p.depth_; }
  };

  // ---- claims ----

  ClaimAst claim() {
    ClaimAst c;
    c.pos = peek().pos;
    expect_word("claim");
    c.name = claim_name();
    params_.clear();
    if (is_word("params")) {
      take();
      for (;;) {
        Token t = take();
        if (t.kind != Token::Kind::Ident) fail(t.pos, "unexpected " + describe(t), {"parameter name"});
        if (kKeywords.count(t.text) || var_from_name(t.text)) fail(t.pos, "'" + t.text + "' cannot name a parameter");
        if (std::find(c.params.begin(), c.params.end(), t.text) != c.params.end()) {
          fail(t.pos, "duplicate parameter '" + t.text + "'");
        }
        c.params.push_back(t.text);
        if (!is_sym(",")) break;
        take();
      }
    }
    params_ = std::set<std::string>(c.params.begin(), c.params.end());
    expect_sym(":", "':' or 'params'");
    c.sides.push_back(side());
    while (is_sym("~=")) {
      take();
      c.sides.push_back(side());
    }
    if (c.sides.size() < 2) fail(peek().pos, "unexpected " + describe(peek()), {"'≡'", "'~='"});
    expect_word("mod", "'mod' or '≡'");
    c.modulus = modulus();
    if (is_word("where")) {
      take();
      c.where.push_back(condition());
      while (is_sym(",")) {
        take();
        c.where.push_back(condition());
      }
    }
    while (is_word("note")) {
      take();
      Token t = take();
      if (t.kind != Token::Kind::Str) fail(t.pos, "unexpected " + describe(t), {"string"});
      c.notes.push_back(t.text);
    }
    if (peek().kind != Token::Kind::End && !is_word("claim")) {
      fail(peek().pos, "unexpected " + describe(peek()), {"'where'", "'note'", "'claim'", "end of input"});
    }
    return c;
  }

  SideAst side() {
    DepthGuard guard(*this, peek().pos);
    SideAst s;
    s.pos = peek().pos;
    if (is_word("sum")) {
      take();
      s.kind = SideAst::Kind::Sum;
      Token idx = take();
      if (idx.kind != Token::Kind::Ident || kKeywords.count(idx.text) || var_from_name(idx.text)) {
        fail(idx.pos, "unexpected " + describe(idx), {"summation range"});
      }
      if (params_.count(idx.text)) fail(idx.pos, "summation index '" + idx.text + "' shadows a parameter");
      s.index = idx.text;
      expect_sym("=", "'=' in summation range");
      s.lower = expr();
      expect_sym("..", "'..' in summation range");
      s.upper = expr();
      expect_word("of");
      index_ = s.index;
      s.term = term();
      index_.clear();
    } else if (is_word("if")) {
      take();
      s.kind = SideAst::Kind::Choice;
      s.condition = condition();
      expect_word("then");
      s.then_side = std::make_shared<SideAst>(side());
      expect_word("else");
      s.else_side = std::make_shared<SideAst>(side());
    } else {
      s.term = term();
    }
    return s;
  }

  ModulusAst modulus() {
    ModulusAst m;
    m.pos = peek().pos;
    if (is_word("Phi")) {
      take();
      m.kind = ModulusAst::Kind::Phi;
      expect_sym("(");
      m.n = expr();
      expect_sym(")");
      expect_sym("^");
      m.power = positive_int("modulus power");
    } else if (is_word("exact")) {
      take();
      m.kind = ModulusAst::Kind::Exact;
    } else if (is_word("grid")) {
      take();
      m.kind = ModulusAst::Kind::Grid;
      if (is_sym("(")) {
        take();
        m.points = positive_int("number of points");
        expect_sym(")");
      }
    } else if (is_sym("(")) {
      // (1-a*q^n)(a-q^n) or (1-a*q^n)
      take();
      m.kind = ModulusAst::Kind::Parametric;
      Token one = take();
      if (one.kind != Token::Kind::Int || one.value != 1) fail(one.pos, "unexpected " + describe(one), {"'1'"});
      expect_sym("-");
      expect_var_a();
      expect_sym("*");
      expect_word("q");
      expect_sym("^");
      m.n = int_atom();
      expect_sym(")");
      if (is_sym("(")) {
        take();
        expect_var_a();
        expect_sym("-");
        expect_word("q");
        expect_sym("^");
        m.second = int_atom();
        expect_sym(")");
      }
    } else if (peek().kind == Token::Kind::Int || peek().kind == Token::Kind::Ident) {
      m.kind = ModulusAst::Kind::PrimePower;
      if (peek().kind == Token::Kind::Ident && !params_.count(peek().text)) {
        fail(peek().pos, "unexpected " + describe(peek()), {"'Phi'", "'('", "'exact'", "'grid'", "prime power"});
      }
      m.n = int_atom();
      expect_sym("^");
      m.power = positive_int("prime power exponent");
    } else {
      fail(peek().pos, "unexpected " + describe(peek()), {"'Phi'", "'('", "'exact'", "'grid'", "prime power"});
    }
    return m;
  }

  void expect_var_a() {
    if (!is_word("a")) fail(peek().pos, "unexpected " + describe(peek()), {"'a'"});
    take();
  }

  long long positive_int(const std::string& what) {
    Token t = take();
    if (t.kind != Token::Kind::Int || t.value < 1) fail(t.pos, "unexpected " + describe(t), {what});
    return t.value;
  }

  Condition condition() {
    Condition c;
    c.pos = peek().pos;
    if (is_word("prime")) {
      take();
      c.kind = Condition::Kind::Prime;
      expect_sym("(");
      c.lhs = expr();
      expect_sym(")");
      return c;
    }
    c.lhs = expr();
    static const std::set<std::string> ops = {"==", "!=", "<", "<=", ">", ">="};
    if (peek().kind != Token::Kind::Sym || !ops.count(peek().text)) {
      fail(peek().pos, "unexpected " + describe(peek()), {"comparison operator"});
    }
    c.op = take().text;
    c.rhs = expr();
    return c;
  }

  // ---- integer expressions ----

  static ExprPtr node(Expr::Kind k, ExprPtr l, ExprPtr r, Position pos, bool checked = true) {
    auto e = std::make_shared<Expr>();
    e->kind = k;
    e->lhs = std::move(l);
    e->rhs = std::move(r);
    e->pos = pos;
    e->checked = checked;
    return e;
  }

  ExprPtr expr() {
    DepthGuard guard(*this, peek().pos);
    ExprPtr e = mul_expr();
    while (is_sym("+") || is_sym("-")) {
      Token op = take();
      e = node(op.text == "+" ? Expr::Kind::Add : Expr::Kind::Sub, e, mul_expr(), op.pos);
    }
    return e;
  }

  ExprPtr mul_expr() {
    ExprPtr e = unary_expr();
    for (;;) {
      if (is_sym("*") || is_sym("/") || is_sym("%")) {
        Token op = take();
        Expr::Kind k = op.text == "*" ? Expr::Kind::Mul : op.text == "/" ? Expr::Kind::Div : Expr::Kind::Mod;
        e = node(k, e, unary_expr(), op.pos, checked_);
      } else if (e->kind == Expr::Kind::Int && peek().adjacent &&
                 ((peek().kind == Token::Kind::Ident && !kKeywords.count(peek().text)) || is_sym("("))) {
        // 2d reads as 2*d
        Position pos = peek().pos;
        e = node(Expr::Kind::Mul, e, pow_expr(), pos);
      } else {
        return e;
      }
    }
  }

  ExprPtr unary_expr() {
    DepthGuard guard(*this, peek().pos);
    if (is_sym("-")) {
      Token op = take();
      return node(Expr::Kind::Neg, unary_expr(), nullptr, op.pos);
    }
    return pow_expr();
  }

  ExprPtr pow_expr() {
    ExprPtr base = atom_expr();
    if (is_sym("^")) {
      Token op = take();
      return node(Expr::Kind::Pow, base, atom_expr(), op.pos);
    }
    return base;
  }

  ExprPtr atom_expr() {
    Token t = peek();
    if (t.kind == Token::Kind::Int) {
      take();
      auto e = std::make_shared<Expr>();
      e->kind = Expr::Kind::Int;
      e->value = t.value;
      e->pos = t.pos;
      return e;
    }
    if (is_sym("(")) {
      take();
      ExprPtr e = expr();
      expect_sym(")");
      return e;
    }
    if (is_word("abs")) {
      take();
      expect_sym("(");
      ExprPtr e = expr();
      expect_sym(")");
      return node(Expr::Kind::Abs, e, nullptr, t.pos);
    }
    if (t.kind == Token::Kind::Ident && !kKeywords.count(t.text)) {
      take();
      if (!params_.count(t.text) && t.text != index_) fail(t.pos, "unbound parameter '" + t.text + "'");
      auto e = std::make_shared<Expr>();
      e->kind = Expr::Kind::Name;
      e->name = t.text;
      e->pos = t.pos;
      return e;
    }
    fail(t.pos, "unexpected " + describe(t), {"integer", "parameter", "'('"});
  }

  // INT | name | "(" expr ")"
  ExprPtr int_atom() {
    Token t = peek();
    if (t.kind == Token::Kind::Int || is_sym("(") || (t.kind == Token::Kind::Ident && !kKeywords.count(t.text))) {
      return atom_expr();
    }
    fail(t.pos, "unexpected " + describe(t), {"integer", "parameter", "'('"});
  }

  ExprPtr rational_expr() {
    bool saved = checked_;
    checked_ = false;
    ExprPtr e = expr();
    checked_ = saved;
    return e;
  }

  // ---- terms ----

  static TermPtr tnode(Term::Kind k, TermPtr l, TermPtr r, Position pos) {
    auto t = std::make_shared<Term>();
    t->kind = k;
    t->lhs = std::move(l);
    t->rhs = std::move(r);
    t->pos = pos;
    return t;
  }

  TermPtr term() {
    DepthGuard guard(*this, peek().pos);
    TermPtr t = factor();
    while (is_sym("*") || is_sym("/")) {
      Token op = take();
      t = tnode(op.text == "*" ? Term::Kind::Mul : Term::Kind::Div, t, factor(), op.pos);
    }
    return t;
  }

  TermPtr factor() {
    DepthGuard guard(*this, peek().pos);
    if (is_sym("-")) {
      Token op = take();
      return tnode(Term::Kind::Neg, factor(), nullptr, op.pos);
    }
    TermPtr base = primary();
    if (is_sym("^")) {
      Token op = take();
      auto p = std::make_shared<Term>();
      p->kind = Term::Kind::Pow;
      p->lhs = base;
      p->expr = int_atom();
      p->pos = op.pos;
      return p;
    }
    return base;
  }

  TermPtr primary() {
    Token t = peek();
    auto out = std::make_shared<Term>();
    out->pos = t.pos;
    if (t.kind == Token::Kind::Int) {
      out->kind = Term::Kind::Number;
      out->expr = atom_expr();
      return out;
    }
    if (is_sym("(")) {
      take();
      TermPtr inner = term();
      expect_sym(")");
      return inner;
    }
    if (t.kind != Token::Kind::Ident) {
      fail(t.pos, "unexpected " + describe(t), {"factor"});
    }
    if (t.text == "q") {
      take();
      out->kind = Term::Kind::Q;
      return out;
    }
    if (auto v = var_from_name(t.text)) {
      take();
      out->kind = Term::Kind::Var;
      out->var = *v;
      return out;
    }
    if (t.text == "poch") {
      take();
      out->kind = Term::Kind::Poch;
      expect_sym("(");
      out->lhs = term();
      expect_sym(";");
      out->rhs = term();
      expect_sym(")");
      expect_sym("_", "'_' before the length");
      out->length = int_atom();
      return out;
    }
    if (t.text == "qint") {
      take();
      out->kind = Term::Kind::QInt;
      expect_sym("(");
      out->expr = expr();
      expect_sym(")");
      return out;
    }
    if (t.text == "rising") {
      take();
      out->kind = Term::Kind::Rising;
      expect_sym("(");
      out->expr = rational_expr();
      expect_sym(")");
      expect_sym("_", "'_' before the length");
      out->length = int_atom();
      return out;
    }
    if (t.text == "gamma_p") {
      take();
      out->kind = Term::Kind::Gamma;
      expect_sym("(");
      out->expr = rational_expr();
      expect_sym(")");
      return out;
    }
    if (t.text == index_) fail(t.pos, "the summation index cannot stand alone as a factor");
    if (params_.count(t.text)) {
      out->kind = Term::Kind::Number;
      out->expr = atom_expr();
      return out;
    }
    if (kKeywords.count(t.text)) fail(t.pos, "unexpected " + describe(t), {"factor"});
    fail(t.pos, "unbound parameter '" + t.text + "'");
  }

  const ClaimSource& src_;
  const std::string& text_;
  std::size_t i_ = 0;
  int line_ = 1, col_ = 1;
  Token tok_;
  bool cached_ = false;
  int depth_ = 0;
  bool checked_ = true;
  std::set<std::string> params_;
  std::string index_;
};

// ---- pretty printing ----

int prec(const ExprPtr& e) {
  switch (e->kind) {
    case Expr::Kind::Add:
    case Expr::Kind::Sub:
      return 1;
    case Expr::Kind::Mul:
    case Expr::Kind::Div:
    case Expr::Kind::Mod:
      return 2;
    case Expr::Kind::Neg:
      return 3;
    case Expr::Kind::Pow:
      return 4;
    default:
      return 5;
  }
}

std::string wrap(const std::string& s, bool paren) { return paren ? "(" + s + ")" : s; }

std::string int_atom_str(const ExprPtr& e) { return wrap(pretty(e), prec(e) < 5); }

int tprec(const TermPtr& t) {
  switch (t->kind) {
    case Term::Kind::Mul:
    case Term::Kind::Div:
      return 1;
    case Term::Kind::Neg:
      return 2;
    case Term::Kind::Pow:
      return 3;
    default:
      return 4;
  }
}

bool same(const ExprPtr& a, const ExprPtr& b) {
  if (!a || !b) return !a && !b;
  if (a->kind != b->kind) return false;
  switch (a->kind) {
    case Expr::Kind::Int:
      return a->value == b->value;
    case Expr::Kind::Name:
      return a->name == b->name;
    default:
      return a->checked == b->checked && same(a->lhs, b->lhs) && same(a->rhs, b->rhs);
  }
}

bool same(const Condition& a, const Condition& b) {
  return a.kind == b.kind && a.op == b.op && same(a.lhs, b.lhs) && same(a.rhs, b.rhs);
}

bool same(const TermPtr& a, const TermPtr& b) {
  if (!a || !b) return !a && !b;
  return a->kind == b->kind && (a->kind != Term::Kind::Var || a->var == b->var) && same(a->expr, b->expr) &&
         same(a->length, b->length) && same(a->lhs, b->lhs) && same(a->rhs, b->rhs);
}

bool same(const SideAst& a, const SideAst& b);
bool same(const std::shared_ptr<const SideAst>& a, const std::shared_ptr<const SideAst>& b) {
  if (!a || !b) return !a && !b;
  return same(*a, *b);
}
bool same(const SideAst& a, const SideAst& b) {
  if (a.kind != b.kind) return false;
  switch (a.kind) {
    case SideAst::Kind::Sum:
      return a.index == b.index && same(a.lower, b.lower) && same(a.upper, b.upper) && same(a.term, b.term);
    case SideAst::Kind::Plain:
      return same(a.term, b.term);
    case SideAst::Kind::Choice:
      return same(a.condition, b.condition) && same(a.then_side, b.then_side) && same(a.else_side, b.else_side);
  }
  return false;
}

}  // namespace

std::string pretty(const ExprPtr& e) {
  switch (e->kind) {
    case Expr::Kind::Int:
      return std::to_string(e->value);
    case Expr::Kind::Name:
      return e->name;
    case Expr::Kind::Neg:
      return "-" + wrap(pretty(e->lhs), prec(e->lhs) < 3);
    case Expr::Kind::Abs:
      return "abs(" + pretty(e->lhs) + ")";
    case Expr::Kind::Pow:
      return int_atom_str(e->lhs) + "^" + int_atom_str(e->rhs);
    default:
      break;
  }
  const char* op = e->kind == Expr::Kind::Add   ? " + "
                   : e->kind == Expr::Kind::Sub ? " - "
                   : e->kind == Expr::Kind::Mul ? "*"
                   : e->kind == Expr::Kind::Div ? " / "
                                                : " % ";
  int p = prec(e);
  return wrap(pretty(e->lhs), prec(e->lhs) < p) + op + wrap(pretty(e->rhs), prec(e->rhs) <= p);
}

std::string pretty(const Condition& c) {
  if (c.kind == Condition::Kind::Prime) return "prime(" + pretty(c.lhs) + ")";
  return pretty(c.lhs) + " " + c.op + " " + pretty(c.rhs);
}

std::string pretty(const TermPtr& t) {
  switch (t->kind) {
    case Term::Kind::Number:
      return int_atom_str(t->expr);
    case Term::Kind::Q:
      return "q";
    case Term::Kind::Var:
      return var_name(t->var);
    case Term::Kind::Poch:
      return "poch(" + pretty(t->lhs) + "; " + pretty(t->rhs) + ")_" + int_atom_str(t->length);
    case Term::Kind::QInt:
      return "qint(" + pretty(t->expr) + ")";
    case Term::Kind::Rising:
      return "rising(" + pretty(t->expr) + ")_" + int_atom_str(t->length);
    case Term::Kind::Gamma:
      return "gamma_p(" + pretty(t->expr) + ")";
    case Term::Kind::Mul:
    case Term::Kind::Div:
      return pretty(t->lhs) + (t->kind == Term::Kind::Mul ? "*" : " / ") + wrap(pretty(t->rhs), tprec(t->rhs) <= 1);
    case Term::Kind::Neg:
      return "-" + wrap(pretty(t->lhs), tprec(t->lhs) < 2);
    case Term::Kind::Pow:
      return wrap(pretty(t->lhs), tprec(t->lhs) < 4) + "^" + int_atom_str(t->expr);
  }
  return "?";
}

std::string pretty(const SideAst& s) {
  switch (s.kind) {
    case SideAst::Kind::Sum:
      return "sum " + s.index + "=" + pretty(s.lower) + ".." + pretty(s.upper) + " of " + pretty(s.term);
    case SideAst::Kind::Plain:
      return pretty(s.term);
    case SideAst::Kind::Choice:
      return "if " + pretty(s.condition) + " then " + pretty(*s.then_side) + " else " + pretty(*s.else_side);
  }
  return "?";
}

std::string pretty(const ModulusAst& m) {
  switch (m.kind) {
    case ModulusAst::Kind::Phi:
      return "Phi(" + pretty(m.n) + ")^" + std::to_string(m.power);
    case ModulusAst::Kind::Parametric:
      return "(1-a*q^" + int_atom_str(m.n) + ")" + (m.second ? "(a-q^" + int_atom_str(m.second) + ")" : "");
    case ModulusAst::Kind::PrimePower:
      return int_atom_str(m.n) + "^" + std::to_string(m.power);
    case ModulusAst::Kind::Exact:
      return "exact";
    case ModulusAst::Kind::Grid:
      return "grid(" + std::to_string(m.points) + ")";
  }
  return "?";
}

std::string pretty(const ClaimAst& c) {
  std::string out = "claim " + c.name;
  if (!c.params.empty()) {
    out += " params ";
    for (std::size_t i = 0; i < c.params.size(); ++i) out += (i ? ", " : "") + c.params[i];
  }
  out += ":\n";
  for (std::size_t i = 0; i < c.sides.size(); ++i) out += std::string(i ? "  \xE2\x89\xA1 " : "  ") + pretty(c.sides[i]) + "\n";
  out += "  mod " + pretty(c.modulus) + "\n";
  if (!c.where.empty()) {
    out += "  where ";
    for (std::size_t i = 0; i < c.where.size(); ++i) out += (i ? ", " : "") + pretty(c.where[i]);
    out += "\n";
  }
  for (const auto& n : c.notes) {
    std::string escaped;
    for (char ch : n) {
      if (ch == '"' || ch == '\\') escaped += '\\';
      escaped += ch;
    }
    out += "  note \"" + escaped + "\"\n";
  }
  return out;
}

bool operator==(const ClaimAst& a, const ClaimAst& b) {
  if (a.name != b.name || a.params != b.params || a.notes != b.notes) return false;
  if (a.sides.size() != b.sides.size() || a.where.size() != b.where.size()) return false;
  for (std::size_t i = 0; i < a.sides.size(); ++i) {
    if (!same(a.sides[i], b.sides[i])) return false;
  }
  for (std::size_t i = 0; i < a.where.size(); ++i) {
    if (!same(a.where[i], b.where[i])) return false;
  }
  const auto& m = a.modulus;
  const auto& n = b.modulus;
  return m.kind == n.kind && same(m.n, n.n) && same(m.second, n.second) && m.power == n.power &&
         m.points == n.points;
}

std::vector<ClaimAst> parse(const ClaimSource& source) { return Parser(source).file(); }

ClaimAst parse_claim(const ClaimSource& source) {
  auto claims = parse(source);
  if (claims.size() != 1) {
    throw ParseError(source.origin, {1, 1}, "expected exactly one claim, found " + std::to_string(claims.size()));
  }
  return claims.front();
}

std::vector<ClaimAst> load_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot read " + path);
  std::ostringstream os;
  os << in.rdbuf();
  return parse({os.str(), path});
}

const ClaimAst* find_claim(const std::vector<ClaimAst>& claims, const std::string& name) {
  for (const auto& c : claims) {
    if (c.name == name) return &c;
  }
  return nullptr;
}

}  // namespace qcongr::dsl
