#include "walker4/expr.hpp"

#include <cctype>
#include <cstdio>
#include <cstdlib>
#include <map>

namespace walker4 {

const char* fn_name(Fn f) {
    switch (f) {
        case Fn::sin: return "sin";
        case Fn::cos: return "cos";
        case Fn::exp: return "exp";
        case Fn::log: return "log";
        case Fn::sqrt: return "sqrt";
        case Fn::sinh: return "sinh";
        case Fn::cosh: return "cosh";
    }
    return "?";
}

namespace {

Expr make(ExprNode n) { return std::make_shared<const ExprNode>(std::move(n)); }

Expr node2(ExprNode::Kind k, size_t off, Expr a, Expr b) {
    ExprNode n;
    n.kind = k;
    n.offset = off;
    n.a = std::move(a);
    n.b = std::move(b);
    return make(std::move(n));
}

class Parser {
public:
    explicit Parser(std::string_view s) : s_(s) {}

    Expr run() {
        Expr e = expr();
        skip_ws();
        if (pos_ != s_.size()) throw ParseError(pos_, "unexpected token");
        return e;
    }

private:
    std::string_view s_;
    size_t pos_ = 0;

    void skip_ws() {
        while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
    }

    char peek() {
        skip_ws();
        return pos_ < s_.size() ? s_[pos_] : '\0';
    }

    bool accept(char c) {
        if (peek() == c) {
            ++pos_;
            return true;
        }
        return false;
    }

    Expr expr() {
        Expr lhs = term();
        for (;;) {
            skip_ws();
            const size_t off = pos_;
            if (accept('+'))
                lhs = node2(ExprNode::Kind::add, off, lhs, term());
            else if (accept('-'))
                lhs = node2(ExprNode::Kind::sub, off, lhs, term());
            else
                return lhs;
        }
    }

    Expr term() {
        Expr lhs = factor();
        for (;;) {
            skip_ws();
            const size_t off = pos_;
            if (accept('*'))
                lhs = node2(ExprNode::Kind::mul, off, lhs, factor());
            else if (accept('/'))
                lhs = node2(ExprNode::Kind::div, off, lhs, factor());
            else
                return lhs;
        }
    }

    Expr factor() {
        Expr base = unary();
        skip_ws();
        const size_t off = pos_;
        if (accept('^')) {
            ExprNode n;
            n.kind = ExprNode::Kind::ipow;
            n.offset = off;
            n.exponent = integer();
            n.a = base;
            return make(std::move(n));
        }
        return base;
    }

    Expr unary() {
        skip_ws();
        const size_t off = pos_;
        if (accept('-')) {
            ExprNode n;
            n.kind = ExprNode::Kind::neg;
            n.offset = off;
            n.a = unary();
            return make(std::move(n));
        }
        return atom();
    }

    int integer() {
        skip_ws();
        const size_t start = pos_;
        size_t p = pos_;
        if (p < s_.size() && (s_[p] == '-' || s_[p] == '+')) ++p;
        size_t digits = p;
        while (p < s_.size() && std::isdigit(static_cast<unsigned char>(s_[p]))) ++p;
        if (p == digits) throw ParseError(start, "expected integer exponent");
        if (p < s_.size() && (s_[p] == '.' || s_[p] == 'e' || s_[p] == 'E'))
            throw ParseError(start, "non-integer exponent");
        const std::string text(s_.substr(start, p - start));
        pos_ = p;
        return std::atoi(text.c_str());
    }

    Expr atom() {
        skip_ws();
        const size_t off = pos_;
        if (pos_ >= s_.size()) throw ParseError(off, "unexpected end of input");
        const char c = s_[pos_];

        if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') return number();

        if (std::isalpha(static_cast<unsigned char>(c))) {
            size_t p = pos_;
            while (p < s_.size() && std::isalpha(static_cast<unsigned char>(s_[p]))) ++p;
            const std::string name(s_.substr(pos_, p - pos_));
            if (name.size() == 1 && (name == "u" || name == "v" || name == "x" || name == "y")) {
                pos_ = p;
                ExprNode n;
                n.kind = ExprNode::Kind::variable;
                n.offset = off;
                n.var = name == "u" ? 0 : name == "v" ? 1 : name == "x" ? 2 : 3;
                return make(std::move(n));
            }
            static const std::map<std::string, Fn> fns = {
                {"sin", Fn::sin},   {"cos", Fn::cos},   {"exp", Fn::exp}, {"log", Fn::log},
                {"sqrt", Fn::sqrt}, {"sinh", Fn::sinh}, {"cosh", Fn::cosh}};
            auto it = fns.find(name);
            if (it == fns.end()) throw ParseError(off, "unknown identifier '" + name + "'");
            pos_ = p;
            skip_ws();
            if (!accept('(')) throw ParseError(pos_, "expected '(' after function name");
            Expr arg = expr();
            if (!accept(')')) throw ParseError(pos_, "expected ')'");
            ExprNode n;
            n.kind = ExprNode::Kind::apply;
            n.offset = off;
            n.fn = it->second;
            n.a = arg;
            return make(std::move(n));
        }

        if (accept('(')) {
            Expr e = expr();
            if (!accept(')')) throw ParseError(pos_, "expected ')'");
            return e;
        }

        throw ParseError(off, "unexpected token");
    }

    Expr number() {
        const size_t start = pos_;
        size_t p = pos_;
        bool digits = false;
        while (p < s_.size() && std::isdigit(static_cast<unsigned char>(s_[p]))) ++p, digits = true;
        if (p < s_.size() && s_[p] == '.') {
            ++p;
            while (p < s_.size() && std::isdigit(static_cast<unsigned char>(s_[p]))) ++p, digits = true;
        }
        if (!digits) throw ParseError(start, "malformed number");
        if (p < s_.size() && (s_[p] == 'e' || s_[p] == 'E')) {
            size_t q = p + 1;
            if (q < s_.size() && (s_[q] == '+' || s_[q] == '-')) ++q;
            size_t ed = q;
            while (ed < s_.size() && std::isdigit(static_cast<unsigned char>(s_[ed]))) ++ed;
            if (ed == q) throw ParseError(p, "malformed exponent");
            p = ed;
        }
        const std::string text(s_.substr(start, p - start));
        pos_ = p;
        ExprNode n;
        n.kind = ExprNode::Kind::constant;
        n.offset = start;
        n.cval = std::strtod(text.c_str(), nullptr);
        return make(std::move(n));
    }
};

// Precedence levels for the printer: expr=0, term=1, factor=2, unary=3, atom=4.
int level(const ExprNode& n) {
    switch (n.kind) {
        case ExprNode::Kind::add:
        case ExprNode::Kind::sub: return 0;
        case ExprNode::Kind::mul:
        case ExprNode::Kind::div: return 1;
        case ExprNode::Kind::ipow: return 2;
        case ExprNode::Kind::neg: return 3;
        default: return 4;
    }
}

void print_rec(const Expr& e, int min_level, std::string& out) {
    const bool parens = level(*e) < min_level;
    if (parens) out += '(';
    switch (e->kind) {
        case ExprNode::Kind::constant: {
            char buf[40];
            std::snprintf(buf, sizeof buf, "%.17g", e->cval);
            out += buf;
            break;
        }
        case ExprNode::Kind::variable:
            out += "uvxy"[e->var];
            break;
        case ExprNode::Kind::add:
            print_rec(e->a, 0, out);
            out += " + ";
            print_rec(e->b, 1, out);
            break;
        case ExprNode::Kind::sub:
            print_rec(e->a, 0, out);
            out += " - ";
            print_rec(e->b, 1, out);
            break;
        case ExprNode::Kind::mul:
            print_rec(e->a, 1, out);
            out += "*";
            print_rec(e->b, 2, out);
            break;
        case ExprNode::Kind::div:
            print_rec(e->a, 1, out);
            out += "/";
            print_rec(e->b, 2, out);
            break;
        case ExprNode::Kind::neg:
            out += "-";
            print_rec(e->a, 3, out);
            break;
        case ExprNode::Kind::ipow:
            print_rec(e->a, 3, out);
            out += "^";
            out += std::to_string(e->exponent);
            break;
        case ExprNode::Kind::apply:
            out += fn_name(e->fn);
            out += "(";
            print_rec(e->a, 0, out);
            out += ")";
            break;
    }
    if (parens) out += ')';
}

Jet eval_rec(const Expr& e, const Point4& p, int degree) {
    switch (e->kind) {
        case ExprNode::Kind::constant: return Jet::constant(e->cval, degree);
        case ExprNode::Kind::variable: return Jet::variable(e->var + 1, p[e->var], degree);
        case ExprNode::Kind::add: return eval_rec(e->a, p, degree) + eval_rec(e->b, p, degree);
        case ExprNode::Kind::sub: return eval_rec(e->a, p, degree) - eval_rec(e->b, p, degree);
        case ExprNode::Kind::mul: return eval_rec(e->a, p, degree) * eval_rec(e->b, p, degree);
        case ExprNode::Kind::div: {
            Jet num = eval_rec(e->a, p, degree);
            Jet den = eval_rec(e->b, p, degree);
            try {
                return num / den;
            } catch (const JetError& err) {
                throw EvalError(e->offset, err.what());
            }
        }
        case ExprNode::Kind::neg: return -eval_rec(e->a, p, degree);
        case ExprNode::Kind::ipow: {
            Jet base = eval_rec(e->a, p, degree);
            try {
                return powi(base, e->exponent);
            } catch (const JetError& err) {
                throw EvalError(e->offset, err.what());
            }
        }
        case ExprNode::Kind::apply: {
            Jet arg = eval_rec(e->a, p, degree);
            try {
                switch (e->fn) {
                    case Fn::sin: return sin(arg);
                    case Fn::cos: return cos(arg);
                    case Fn::exp: return exp(arg);
                    case Fn::log: return log(arg);
                    case Fn::sqrt: return sqrt(arg);
                    case Fn::sinh: return sinh(arg);
                    case Fn::cosh: return cosh(arg);
                }
            } catch (const JetError& err) {
                throw EvalError(e->offset, err.what());
            }
            throw EvalError(e->offset, "unknown function");
        }
    }
    throw EvalError(e->offset, "malformed expression node");
}

} // namespace

Expr parse(std::string_view text) { return Parser(text).run(); }

std::string print(const Expr& e) {
    std::string out;
    print_rec(e, 0, out);
    return out;
}

Jet eval_jet(const Expr& e, const Point4& p, int degree) { return eval_rec(e, p, degree); }

double eval_value(const Expr& e, const Point4& p) {
    return eval_jet(e, p, 0).value();
}

Expr substitute_vars(const Expr& e, const std::array<int, 4>& perm) {
    ExprNode n = *e;
    if (n.kind == ExprNode::Kind::variable) {
        n.var = perm[n.var];
    } else {
        if (n.a) n.a = substitute_vars(n.a, perm);
        if (n.b) n.b = substitute_vars(n.b, perm);
    }
    return std::make_shared<const ExprNode>(std::move(n));
}

Expr expr_constant(double c) {
    ExprNode n;
    n.kind = ExprNode::Kind::constant;
    n.cval = c;
    return std::make_shared<const ExprNode>(std::move(n));
}

Expr expr_variable(int slot) {
    ExprNode n;
    n.kind = ExprNode::Kind::variable;
    n.var = slot;
    return std::make_shared<const ExprNode>(std::move(n));
}

} // namespace walker4
