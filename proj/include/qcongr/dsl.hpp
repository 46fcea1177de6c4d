#pragma once

#include <map>
#include <memory>
#include <stdexcept>
#include <string>
#include <vector>

#include "qcongr/claims.hpp"

namespace qcongr::dsl {

struct Position {
  int line = 1;
  int column = 1;
};

struct ClaimSource {
  std::string text;
  std::string origin = "<inline>";
};

// Lexical and syntax errors, and identifiers that are neither parameters,
// the summation index nor symbolic variables.
class ParseError : public std::runtime_error {
 public:
  ParseError(const std::string& origin, Position pos, const std::string& message, std::vector<std::string> expected = {});
  Position position() const { return pos_; }
  const std::string& message() const { return message_; }
  const std::vector<std::string>& expected() const { return expected_; }

 private:
  Position pos_;
  std::string message_;
  std::vector<std::string> expected_;
};

// A checked division whose value is not an integer, e.g.
// "(n - 1) / (2*d) with d=2, n=4".
class IntegralityViolation : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// Unbound parameters and formulas the engine cannot represent.
class LowerError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// Integer expressions over the parameters and the summation index.
struct Expr {
  enum class Kind { Int, Name, Add, Sub, Mul, Div, Mod, Pow, Neg, Abs };
  Kind kind = Kind::Int;
  long long value = 0;
  std::string name;
  bool checked = true;  // a division that must come out integral
  std::shared_ptr<const Expr> lhs, rhs;
  Position pos;
};
using ExprPtr = std::shared_ptr<const Expr>;

struct Condition {
  enum class Kind { Compare, Prime };
  Kind kind = Kind::Compare;
  std::string op;  // ==, !=, <, <=, >, >=
  ExprPtr lhs, rhs;
  Position pos;
};

// Products and quotients of q-powers, variables, Pochhammer symbols and constants.
struct Term {
  enum class Kind { Number, Q, Var, Poch, QInt, Rising, Gamma, Mul, Div, Neg, Pow };
  Kind kind = Kind::Number;
  ExprPtr expr;    // Number value, QInt and Rising/Gamma argument, Pow exponent
  ExprPtr length;  // Poch and Rising
  Var var = Var::X;
  std::shared_ptr<const Term> lhs, rhs;  // operands; Poch: lhs = argument, rhs = base
  Position pos;
};
using TermPtr = std::shared_ptr<const Term>;

struct SideAst {
  enum class Kind { Sum, Plain, Choice };
  Kind kind = Kind::Plain;
  std::string index;
  ExprPtr lower, upper;
  TermPtr term;
  Condition condition;
  std::shared_ptr<const SideAst> then_side, else_side;
  Position pos;
};

struct ModulusAst {
  enum class Kind { Phi, Parametric, PrimePower, Exact, Grid };
  Kind kind = Kind::Exact;
  ExprPtr n;       // Phi index, parametric n, prime base
  ExprPtr second;  // the n of (a-q^n); null for the single factor
  long long power = 1;
  long long points = 20;
  Position pos;
};

struct ClaimAst {
  std::string name;
  std::vector<std::string> params;
  std::vector<SideAst> sides;
  ModulusAst modulus;
  std::vector<Condition> where;
  std::vector<std::string> notes;
  Position pos;
};

// Structural equality, positions ignored.
bool operator==(const ClaimAst& a, const ClaimAst& b);

std::vector<ClaimAst> parse(const ClaimSource& source);
ClaimAst parse_claim(const ClaimSource& source);  // exactly one claim
std::vector<ClaimAst> load_file(const std::string& path);
const ClaimAst* find_claim(const std::vector<ClaimAst>& claims, const std::string& name);

std::string pretty(const ExprPtr& e);
std::string pretty(const Condition& c);
std::string pretty(const TermPtr& t);
std::string pretty(const SideAst& s);
std::string pretty(const ModulusAst& m);
std::string pretty(const ClaimAst& c);

CongruenceClaim lower(const ClaimAst& ast, const std::map<std::string, long long>& params);

}  // namespace qcongr::dsl
