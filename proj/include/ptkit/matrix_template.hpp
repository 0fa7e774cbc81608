// matrix_template.hpp — expression language for parameterized matrix families
//
// Grammar (left-associative, unary minus binds tighter than * and /):
//   expr    := term (('+' | '-') term)*
//   term    := factor (('*' | '/') factor)*
//   factor  := '-' factor | primary
//   primary := NUMBER | 'i' | IDENT | 'sqrt' '(' expr ')' | '(' expr ')'
// 'i' is the imaginary unit and 'sqrt' the principal complex root; both are
// reserved and cannot name parameters. Tree depth is capped at 64.
//
// Template file format (.ham, UTF-8, line-oriented):
//   name: <string>
//   params: <comma-separated identifiers>
//   dim: <N>                       (2 <= N <= 8)
//   <N rows of N '|'-separated expressions>
// '#' begins a comment; blank lines are ignored.
#pragma once

#include <map>
#include <memory>
#include <string>
#include <vector>

#include "ptkit/numerics.hpp"

namespace ptkit {

class Expression {
  public:
    enum class Kind { Literal, ImagUnit, Param, Negate, Add, Sub, Mul, Div, Sqrt };

    struct Node;
    using NodePtr = std::shared_ptr<const Node>;

    struct Node {
        Kind kind;
        double literal = 0.0;  // Kind::Literal
        std::string param;     // Kind::Param
        NodePtr lhs, rhs;      // children; rhs null for unary nodes
    };

    Expression() = default;
    explicit Expression(NodePtr root) : root_(std::move(root)) {}

    const Node& root() const { return *root_; }
    bool empty() const noexcept { return root_ == nullptr; }

    static Expression literal(double v);
    static Expression imag_unit();
    static Expression param(std::string name);
    static Expression negate(Expression e);
    static Expression add(Expression l, Expression r);
    static Expression sub(Expression l, Expression r);
    static Expression mul(Expression l, Expression r);
    static Expression div(Expression l, Expression r);
    static Expression sqrt(Expression e);

  private:
    NodePtr root_;
};

inline constexpr std::size_t kMaxExpressionDepth = 64;

// Throws ParseError with the byte offset of the failure. Undeclared
// identifiers are accepted here and checked at template validation time.
Expression parse_expression(const std::string& src);

// Throws EvalError on division by zero or a missing parameter.
Complex evaluate(const Expression& e, const std::map<std::string, double>& assignment);

// Minimal-parentheses rendering; reparsing yields a structurally identical tree.
std::string to_string(const Expression& e);

bool structurally_equal(const Expression& a, const Expression& b);

std::size_t expression_depth(const Expression& e);

// Unique parameter names in first-appearance order.
std::vector<std::string> collect_parameters(const Expression& e);

struct HamiltonianTemplate {
    std::string name;
    std::vector<std::string> params;  // declaration order
    std::size_t dim = 0;
    std::vector<Expression> entries;  // row-major, dim * dim
};

// Throws TemplateFormatError (with 1-based line number) on malformed input.
HamiltonianTemplate parse_template(const std::string& text);
HamiltonianTemplate load_template_file(const std::string& path);

// Entrywise evaluation; errors are rethrown with (row, col) location.
DenseMatrix instantiate(const HamiltonianTemplate& t,
                        const std::map<std::string, double>& assignment);

}  // namespace ptkit
