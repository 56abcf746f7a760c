#pragma once

#include <cstdint>
#include <memory>
#include <string>
#include <string_view>
#include <vector>

namespace splayer {

/// Scalar arithmetic expression in the single variable `x`.
///
/// Grammar, loosest binding first:
///
///     expr    := term   (('+' | '-') term)*
///     term    := unary  (('*' | '/') unary)*
///     unary   := '-' unary | power
///     power   := primary ('^' unary)?          right-associative
///     primary := number | 'x' | 'pi' | 'e' | func '(' expr ')' | '(' expr ')'
///     func    := sin | cos | tan | exp | log | sqrt | abs
///
/// `log` is the natural logarithm. Implicit multiplication is not accepted.
/// Instances are immutable and cheap to copy; evaluation is reentrant.
class Expression {
public:
    enum class Kind : std::uint8_t { Number, Variable, Negate, Add, Sub, Mul, Div, Pow, Call };
    enum class Function : std::uint8_t { Sin, Cos, Tan, Exp, Log, Sqrt, Abs };

    struct Node {
        Kind kind;
        Function func = Function::Sin;  // Call only
        double value = 0.0;             // Number only
        std::int32_t lhs = -1;          // operand of unary nodes, left operand of binary nodes
        std::int32_t rhs = -1;

        bool operator==(const Node&) const = default;
    };

    /// Throws ParseError on malformed input or unknown identifiers.
    static Expression parse(std::string_view source);

    /// Throws EvalError when the result is NaN or infinite.
    double eval(double x) const;

    /// Fully parenthesised text that reparses to an identical tree.
    std::string unparse() const;

    /// Text the expression was parsed from, or unparse() for built trees.
    const std::string& source() const noexcept { return source_; }

    /// Structural equality of the trees; source text is ignored.
    bool same_tree(const Expression& other) const;

    static std::string_view function_name(Function f);

private:
    Expression(std::shared_ptr<const std::vector<Node>> nodes, std::int32_t root, std::string source)
        : nodes_(std::move(nodes)), root_(root), source_(std::move(source)) {}

    double eval_node(std::int32_t index, double x) const;
    void unparse_node(std::int32_t index, std::string& out) const;
    bool same_subtree(std::int32_t a, const Expression& other, std::int32_t b) const;

    std::shared_ptr<const std::vector<Node>> nodes_;
    std::int32_t root_;
    std::string source_;

    friend class ExpressionParser;
};

}  // namespace splayer
