#include "splayer/expr.hpp"

#include "splayer/error.hpp"

#include <array>
#include <cctype>
#include <charconv>
#include <cmath>
#include <numbers>
#include <utility>

#include <fmt/format.h>

namespace splayer {

namespace {

constexpr std::array<std::pair<std::string_view, Expression::Function>, 7> kFunctions{{
    {"sin", Expression::Function::Sin},
    {"cos", Expression::Function::Cos},
    {"tan", Expression::Function::Tan},
    {"exp", Expression::Function::Exp},
    {"log", Expression::Function::Log},
    {"sqrt", Expression::Function::Sqrt},
    {"abs", Expression::Function::Abs},
}};

bool is_ident_start(char c) { return std::isalpha(static_cast<unsigned char>(c)) || c == '_'; }
bool is_ident_char(char c) { return std::isalnum(static_cast<unsigned char>(c)) || c == '_'; }

}  // namespace

class ExpressionParser {
public:
    explicit ExpressionParser(std::string_view src) : src_(src) {}

    Expression run() {
        auto root = parse_expr();
        skip_ws();
        if (pos_ != src_.size()) {
            fail(fmt::format("unexpected '{}'", src_[pos_]));
        }
        return Expression(std::make_shared<const std::vector<Expression::Node>>(std::move(nodes_)),
                          root, std::string(src_));
    }

private:
    using Kind = Expression::Kind;

    [[noreturn]] void fail(const std::string& msg) const { throw ParseError(pos_, msg); }

    void skip_ws() {
        while (pos_ < src_.size() && std::isspace(static_cast<unsigned char>(src_[pos_]))) {
            ++pos_;
        }
    }

    bool accept(char c) {
        skip_ws();
        if (pos_ < src_.size() && src_[pos_] == c) {
            ++pos_;
            return true;
        }
        return false;
    }

    std::int32_t push(Expression::Node n) {
        nodes_.push_back(n);
        return static_cast<std::int32_t>(nodes_.size() - 1);
    }

    std::int32_t binary(Kind k, std::int32_t l, std::int32_t r) {
        return push({.kind = k, .lhs = l, .rhs = r});
    }

    std::int32_t parse_expr() {
        auto lhs = parse_term();
        for (;;) {
            if (accept('+')) {
                lhs = binary(Kind::Add, lhs, parse_term());
            } else if (accept('-')) {
                lhs = binary(Kind::Sub, lhs, parse_term());
            } else {
                return lhs;
            }
        }
    }

    std::int32_t parse_term() {
        auto lhs = parse_unary();
        for (;;) {
            if (accept('*')) {
                lhs = binary(Kind::Mul, lhs, parse_unary());
            } else if (accept('/')) {
                lhs = binary(Kind::Div, lhs, parse_unary());
            } else {
                return lhs;
            }
        }
    }

    std::int32_t parse_unary() {
        if (accept('-')) {
            auto operand = parse_unary();
            return push({.kind = Kind::Negate, .lhs = operand});
        }
        return parse_power();
    }

    std::int32_t parse_power() {
        auto base = parse_primary();
        if (accept('^')) {
            // The exponent binds as a unary so that 2^-1 and 2^3^2 both parse.
            return binary(Kind::Pow, base, parse_unary());
        }
        return base;
    }

    std::int32_t parse_primary() {
        skip_ws();
        if (pos_ >= src_.size()) {
            fail("unexpected end of expression");
        }
        const char c = src_[pos_];
        if (c == '(') {
            ++pos_;
            auto inner = parse_expr();
            if (!accept(')')) {
                fail("expected ')'");
            }
            return inner;
        }
        if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') {
            return parse_number();
        }
        if (is_ident_start(c)) {
            return parse_identifier();
        }
        fail(fmt::format("unexpected '{}'", c));
    }

    std::int32_t parse_number() {
        const std::size_t start = pos_;
        while (pos_ < src_.size() && (std::isdigit(static_cast<unsigned char>(src_[pos_])) || src_[pos_] == '.')) {
            ++pos_;
        }
        if (pos_ < src_.size() && (src_[pos_] == 'e' || src_[pos_] == 'E')) {
            std::size_t look = pos_ + 1;
            if (look < src_.size() && (src_[look] == '+' || src_[look] == '-')) {
                ++look;
            }
            if (look < src_.size() && std::isdigit(static_cast<unsigned char>(src_[look]))) {
                pos_ = look;
                while (pos_ < src_.size() && std::isdigit(static_cast<unsigned char>(src_[pos_]))) {
                    ++pos_;
                }
            }
        }
        double value = 0.0;
        const char* first = src_.data() + start;
        const char* last = src_.data() + pos_;
        auto [ptr, ec] = std::from_chars(first, last, value);
        if (ec != std::errc{} || ptr != last) {
            pos_ = start;
            fail(fmt::format("malformed number '{}'", std::string_view(first, last - first)));
        }
        return push({.kind = Kind::Number, .value = value});
    }

    std::int32_t parse_identifier() {
        const std::size_t start = pos_;
        while (pos_ < src_.size() && is_ident_char(src_[pos_])) {
            ++pos_;
        }
        const std::string_view name = src_.substr(start, pos_ - start);
        if (name == "x") {
            return push({.kind = Kind::Variable});
        }
        if (name == "pi") {
            return push({.kind = Kind::Number, .value = std::numbers::pi});
        }
        if (name == "e") {
            return push({.kind = Kind::Number, .value = std::numbers::e});
        }
        for (const auto& [fname, f] : kFunctions) {
            if (name == fname) {
                if (!accept('(')) {
                    fail(fmt::format("expected '(' after '{}'", name));
                }
                auto arg = parse_expr();
                if (!accept(')')) {
                    fail("expected ')'");
                }
                return push({.kind = Kind::Call, .func = f, .lhs = arg});
            }
        }
        pos_ = start;
        fail(fmt::format("unknown identifier '{}'", name));
    }

    std::string_view src_;
    std::size_t pos_ = 0;
    std::vector<Expression::Node> nodes_;
};

Expression Expression::parse(std::string_view source) {
    return ExpressionParser(source).run();
}

std::string_view Expression::function_name(Function f) {
    for (const auto& [name, fn] : kFunctions) {
        if (fn == f) {
            return name;
        }
    }
    return "?";
}

double Expression::eval(double x) const {
    const double v = eval_node(root_, x);
    if (!std::isfinite(v)) {
        throw EvalError(x, fmt::format("'{}' is not finite at x = {}", source_, x));
    }
    return v;
}

double Expression::eval_node(std::int32_t index, double x) const {
    const Node& n = (*nodes_)[static_cast<std::size_t>(index)];
    switch (n.kind) {
    case Kind::Number: return n.value;
    case Kind::Variable: return x;
    case Kind::Negate: return -eval_node(n.lhs, x);
    case Kind::Add: return eval_node(n.lhs, x) + eval_node(n.rhs, x);
    case Kind::Sub: return eval_node(n.lhs, x) - eval_node(n.rhs, x);
    case Kind::Mul: return eval_node(n.lhs, x) * eval_node(n.rhs, x);
    case Kind::Div: return eval_node(n.lhs, x) / eval_node(n.rhs, x);
    case Kind::Pow: return std::pow(eval_node(n.lhs, x), eval_node(n.rhs, x));
    case Kind::Call: {
        const double a = eval_node(n.lhs, x);
        switch (n.func) {
        case Function::Sin: return std::sin(a);
        case Function::Cos: return std::cos(a);
        case Function::Tan: return std::tan(a);
        case Function::Exp: return std::exp(a);
        case Function::Log: return std::log(a);
        case Function::Sqrt: return std::sqrt(a);
        case Function::Abs: return std::abs(a);
        }
    }
    }
    return std::nan("");
}

std::string Expression::unparse() const {
    std::string out;
    unparse_node(root_, out);
    return out;
}

void Expression::unparse_node(std::int32_t index, std::string& out) const {
    const Node& n = (*nodes_)[static_cast<std::size_t>(index)];
    auto infix = [&](char op) {
        out += '(';
        unparse_node(n.lhs, out);
        out += op;
        unparse_node(n.rhs, out);
        out += ')';
    };
    switch (n.kind) {
    case Kind::Number:
        // Shortest round-trip form; negative literals never arise from the parser.
        out += fmt::format("{}", n.value);
        break;
    case Kind::Variable: out += 'x'; break;
    case Kind::Negate:
        out += "(-";
        unparse_node(n.lhs, out);
        out += ')';
        break;
    case Kind::Add: infix('+'); break;
    case Kind::Sub: infix('-'); break;
    case Kind::Mul: infix('*'); break;
    case Kind::Div: infix('/'); break;
    case Kind::Pow: infix('^'); break;
    case Kind::Call:
        out += function_name(n.func);
        out += '(';
        unparse_node(n.lhs, out);
        out += ')';
        break;
    }
}

bool Expression::same_tree(const Expression& other) const {
    return same_subtree(root_, other, other.root_);
}

bool Expression::same_subtree(std::int32_t a, const Expression& other, std::int32_t b) const {
    if ((a < 0) != (b < 0)) {
        return false;
    }
    if (a < 0) {
        return true;
    }
    const Node& na = (*nodes_)[static_cast<std::size_t>(a)];
    const Node& nb = (*other.nodes_)[static_cast<std::size_t>(b)];
    if (na.kind != nb.kind) {
        return false;
    }
    if (na.kind == Kind::Number && na.value != nb.value) {
        return false;
    }
    if (na.kind == Kind::Call && na.func != nb.func) {
        return false;
    }
    return same_subtree(na.lhs, other, nb.lhs) && same_subtree(na.rhs, other, nb.rhs);
}

}  // namespace splayer
