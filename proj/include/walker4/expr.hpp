#pragma once

#include <memory>
#include <stdexcept>
#include <string>
#include <string_view>

#include "walker4/jet.hpp"
#include "walker4/point.hpp"

namespace walker4 {

struct ParseError : std::runtime_error {
    size_t offset;
    ParseError(size_t off, const std::string& msg)
        : std::runtime_error(msg + " at offset " + std::to_string(off)), offset(off) {}
};

struct EvalError : std::runtime_error {
    size_t offset;
    EvalError(size_t off, const std::string& msg)
        : std::runtime_error(msg + " (subexpression at offset " + std::to_string(off) + ")"),
          offset(off) {}
};

enum class Fn { sin, cos, exp, log, sqrt, sinh, cosh };

const char* fn_name(Fn f);

struct ExprNode;

/// Immutable, shareable expression tree in the coordinates u,v,x,y.
using Expr = std::shared_ptr<const ExprNode>;

struct ExprNode {
    enum class Kind { constant, variable, add, sub, mul, div, neg, ipow, apply };

    Kind kind;
    size_t offset = 0;  // byte offset of this construct in the source text
    double cval = 0.0;  // constant
    int var = 0;        // variable slot 0..3
    int exponent = 0;   // ipow
    Fn fn = Fn::sin;    // apply
    Expr a, b;
};

/// Parse the scalar-field grammar:
///   expr   := term (("+"|"-") term)* ;
///   term   := factor (("*"|"/") factor)* ;
///   factor := unary ("^" integer)? ;
///   unary  := "-" unary | atom ;
///   atom   := number | var | fn "(" expr ")" | "(" expr ")" ;
///   var    := "u"|"v"|"x"|"y" ; fn := sin|cos|exp|log|sqrt|sinh|cosh ;
/// Whitespace is insignificant; binary +,-,*,/ associate to the left.
Expr parse(std::string_view text);

/// Minimal-parenthesis printer; parse(print(e)) reproduces e structurally.
std::string print(const Expr& e);

/// Evaluate as a jet of the given degree at p.
Jet eval_jet(const Expr& e, const Point4& p, int degree);

/// Degree-0 shortcut of eval_jet.
double eval_value(const Expr& e, const Point4& p);

/// Rewrite variables through a slot permutation: variable i becomes perm[i].
/// Used for the Walker-symmetry interchange (u,v,x,y) -> (v,u,y,x).
Expr substitute_vars(const Expr& e, const std::array<int, 4>& perm);

/// Expression constructors for programmatic use.
Expr expr_constant(double c);
Expr expr_variable(int slot);

} // namespace walker4
