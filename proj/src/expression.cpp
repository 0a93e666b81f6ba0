#include "nhsym/expression.hpp"

#include <cctype>
#include <cmath>
#include <cstdlib>
#include <functional>
#include <map>

namespace nhsym::expr {

namespace {

enum class Op { Add, Sub, Mul, Div, Pow, Neg };

enum class Fn { Sin, Cos, Tan, Exp, Log, Sqrt, Abs, Atan, Min, Max, Pow };

const std::map<std::string, Fn>& function_table() {
    static const std::map<std::string, Fn> table = {
        {"sin", Fn::Sin},   {"cos", Fn::Cos}, {"tan", Fn::Tan}, {"exp", Fn::Exp},
        {"log", Fn::Log},   {"sqrt", Fn::Sqrt}, {"abs", Fn::Abs}, {"atan", Fn::Atan},
        {"min", Fn::Min},   {"max", Fn::Max}, {"pow", Fn::Pow},
    };
    return table;
}

}  // namespace

struct Node {
    enum class Kind { Number, VarS, VarX, VarNormX, Binary, Unary, Call } kind;
    double number = 0.0;
    int coord = 0;  // VarX
    Op op = Op::Add;
    Fn fn = Fn::Sin;
    NodePtr lhs, rhs;
    std::vector<NodePtr> args;
};

namespace {

double eval_node(const Node& n, double s, const Vector& x) {
    using K = Node::Kind;
    switch (n.kind) {
        case K::Number: return n.number;
        case K::VarS: return s;
        case K::VarX: return x[n.coord];
        case K::VarNormX: return x.norm();
        case K::Unary: return -eval_node(*n.lhs, s, x);
        case K::Binary: {
            const double a = eval_node(*n.lhs, s, x);
            const double b = eval_node(*n.rhs, s, x);
            switch (n.op) {
                case Op::Add: return a + b;
                case Op::Sub: return a - b;
                case Op::Mul: return a * b;
                case Op::Div: return a / b;
                case Op::Pow: return std::pow(a, b);
                default: break;
            }
            break;
        }
        case K::Call: {
            const double a = eval_node(*n.args[0], s, x);
            switch (n.fn) {
                case Fn::Sin: return std::sin(a);
                case Fn::Cos: return std::cos(a);
                case Fn::Tan: return std::tan(a);
                case Fn::Exp: return std::exp(a);
                case Fn::Log: return std::log(a);
                case Fn::Sqrt: return std::sqrt(a);
                case Fn::Abs: return std::abs(a);
                case Fn::Atan: return std::atan(a);
                case Fn::Min: return std::min(a, eval_node(*n.args[1], s, x));
                case Fn::Max: return std::max(a, eval_node(*n.args[1], s, x));
                case Fn::Pow: return std::pow(a, eval_node(*n.args[1], s, x));
            }
            break;
        }
    }
    return 0.0;
}

class Parser {
  public:
    Parser(const std::string& text, int dim) : text_(text), dim_(dim) {}

    NodePtr parse(bool* uses_state, bool* uses_time) {
        NodePtr root = parse_sum();
        skip_ws();
        if (pos_ != text_.size()) fail("unexpected trailing input");
        *uses_state = uses_state_;
        *uses_time = uses_time_;
        return root;
    }

  private:
    [[noreturn]] void fail(const std::string& what) const {
        throw ParseError("expression error at position " + std::to_string(pos_) + " in \"" +
                         text_ + "\": " + what);
    }

    void skip_ws() {
        while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
    }

    bool consume(char c) {
        skip_ws();
        if (pos_ < text_.size() && text_[pos_] == c) {
            ++pos_;
            return true;
        }
        return false;
    }

    char peek() {
        skip_ws();
        return pos_ < text_.size() ? text_[pos_] : '\0';
    }

    NodePtr parse_sum() {
        NodePtr lhs = parse_product();
        for (;;) {
            if (consume('+')) lhs = binary(Op::Add, lhs, parse_product());
            else if (consume('-')) lhs = binary(Op::Sub, lhs, parse_product());
            else return lhs;
        }
    }

    NodePtr parse_product() {
        NodePtr lhs = parse_unary();
        for (;;) {
            if (consume('*')) lhs = binary(Op::Mul, lhs, parse_unary());
            else if (consume('/')) lhs = binary(Op::Div, lhs, parse_unary());
            else return lhs;
        }
    }

    NodePtr parse_unary() {
        if (consume('-')) {
            auto n = std::make_shared<Node>();
            n->kind = Node::Kind::Unary;
            n->lhs = parse_unary();
            return n;
        }
        return parse_power();
    }

    NodePtr parse_power() {
        NodePtr base = parse_atom();
        if (consume('^')) return binary(Op::Pow, base, parse_unary());  // right-assoc
        return base;
    }

    NodePtr parse_atom() {
        skip_ws();
        if (pos_ >= text_.size()) fail("expected operand");
        const char c = text_[pos_];
        if (c == '(') {
            ++pos_;
            NodePtr inner = parse_sum();
            if (!consume(')')) fail("expected ')'");
            return inner;
        }
        if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') return parse_number();
        if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') return parse_identifier();
        fail(std::string("unexpected character '") + c + "'");
    }

    NodePtr parse_number() {
        const char* begin = text_.c_str() + pos_;
        char* end = nullptr;
        const double v = std::strtod(begin, &end);
        if (end == begin) fail("malformed number");
        pos_ += static_cast<size_t>(end - begin);
        auto n = std::make_shared<Node>();
        n->kind = Node::Kind::Number;
        n->number = v;
        return n;
    }

    NodePtr parse_identifier() {
        size_t start = pos_;
        while (pos_ < text_.size() &&
               (std::isalnum(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == '_'))
            ++pos_;
        const std::string name = text_.substr(start, pos_ - start);

        if (auto it = function_table().find(name); it != function_table().end()) {
            if (!consume('(')) fail("expected '(' after function " + name);
            auto n = std::make_shared<Node>();
            n->kind = Node::Kind::Call;
            n->fn = it->second;
            n->args.push_back(parse_sum());
            const bool binary_fn = (n->fn == Fn::Min || n->fn == Fn::Max || n->fn == Fn::Pow);
            if (binary_fn) {
                if (!consume(',')) fail("function " + name + " takes two arguments");
                n->args.push_back(parse_sum());
            }
            if (!consume(')')) fail("expected ')' after arguments of " + name);
            return n;
        }

        auto n = std::make_shared<Node>();
        if (name == "s") {
            n->kind = Node::Kind::VarS;
            uses_time_ = true;
            return n;
        }
        if (name == "normx") {
            n->kind = Node::Kind::VarNormX;
            uses_state_ = true;
            return n;
        }
        if (name == "x") {  // shorthand for x0 in one dimension
            if (dim_ != 1) fail("'x' is only valid in dimension 1; use x0..x" + std::to_string(dim_ - 1));
            n->kind = Node::Kind::VarX;
            n->coord = 0;
            uses_state_ = true;
            return n;
        }
        if (name.size() >= 2 && name[0] == 'x') {
            char* end = nullptr;
            const long idx = std::strtol(name.c_str() + 1, &end, 10);
            if (*end == '\0') {
                if (idx < 0 || idx >= dim_)
                    fail("coordinate " + name + " out of range for dimension " + std::to_string(dim_));
                n->kind = Node::Kind::VarX;
                n->coord = static_cast<int>(idx);
                uses_state_ = true;
                return n;
            }
        }
        fail("unknown identifier '" + name + "'");
    }

    NodePtr binary(Op op, NodePtr lhs, NodePtr rhs) {
        auto n = std::make_shared<Node>();
        n->kind = Node::Kind::Binary;
        n->op = op;
        n->lhs = std::move(lhs);
        n->rhs = std::move(rhs);
        return n;
    }

    const std::string& text_;
    int dim_;
    size_t pos_ = 0;
    bool uses_state_ = false;
    bool uses_time_ = false;
};

}  // namespace

Expression Expression::parse(const std::string& text, int dim) {
    Expression e;
    e.source_ = text;
    Parser p(text, dim);
    e.root_ = p.parse(&e.uses_state_, &e.uses_time_);
    return e;
}

double Expression::eval(double s, const Vector& x) const {
    if (!root_) throw NumericalError("evaluating empty expression");
    return eval_node(*root_, s, x);
}

}  // namespace nhsym::expr
