#pragma once

#include <memory>
#include <string>
#include <vector>

#include "ratfunc.hpp"

namespace kipp {

// Expression AST for the metric input language.
//
//   expr   := term (('+'|'-') term)*
//   term   := factor (('*'|'/') factor)*
//   factor := '-' factor | base ('^' int)?
//   base   := rational | var | '(' expr ')'
//   rational := int ('/' int)?
//
// '^' binds tighter than unary minus and is right-associative; exponents are
// integer literals, possibly negative, possibly parenthesized.
struct ExprNode;
using ExprPtr = std::unique_ptr<ExprNode>;

struct ExprNode {
    enum class Kind { Literal, Variable, Negate, Add, Sub, Mul, Div, Pow };
    Kind kind;
    Rational literal;       // Literal
    std::string name;       // Variable
    ExprPtr lhs, rhs;       // Negate uses lhs only
    long exponent = 0;      // Pow
};

struct ExprAst {
    ExprPtr root;
    std::vector<std::string> variables;  // the declared set, in order
};

// Parses text over the declared variable set. Throws ParseError with a byte
// offset on syntax errors, unknown variables, and non-integer exponents.
ExprAst parse_expression(const std::string& text, const std::vector<std::string>& variables);

// Precedence-aware rendering; parse(print(ast)) evaluates identically.
std::string print_expression(const ExprAst& ast);

// Folds the AST into a canonical rational function over ast.variables.
// Negative exponents become denominator factors. Throws Error when a
// denominator is identically zero.
RationalFunction to_rational_function(const ExprAst& ast);

}  // namespace kipp
