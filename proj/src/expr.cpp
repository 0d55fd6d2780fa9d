#include "lhyp/expr.hpp"

#include <cctype>
#include <cmath>
#include <cstdlib>
#include <vector>

#include "lhyp/errors.hpp"

namespace lhyp {

struct Expr::Node {
    enum Kind { number, variable, negate, call, add, sub, mul, div, power } kind;
    cplx value{};
    std::string fn;
    std::shared_ptr<const Node> a, b;

    bool constant() const
    {
        if (kind == variable) return false;
        return (!a || a->constant()) && (!b || b->constant());
    }
};

namespace {

using NodeP = std::shared_ptr<const Expr::Node>;

const std::vector<std::string> kFunctions = {"conj", "re",  "im",  "abs2", "abs",  "exp",  "log",
                                             "sqrt", "sin", "cos", "sinh", "cosh", "tanh"};

class Parser {
public:
    explicit Parser(const std::string& s) : s_(s) {}

    NodeP parse()
    {
        NodeP n = sum();
        skip();
        if (pos_ != s_.size()) fail("unexpected '" + std::string(1, s_[pos_]) + "'");
        return n;
    }

private:
    const std::string& s_;
    std::size_t pos_ = 0;

    [[noreturn]] void fail(const std::string& what) const
    {
        throw InputError("expression \"" + s_ + "\": " + what + " at position " + std::to_string(pos_));
    }

    void skip()
    {
        while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
    }

    bool accept(char c)
    {
        skip();
        if (pos_ < s_.size() && s_[pos_] == c) {
            ++pos_;
            return true;
        }
        return false;
    }

    static NodeP make(Expr::Node::Kind k, NodeP a = nullptr, NodeP b = nullptr)
    {
        auto n = std::make_shared<Expr::Node>();
        n->kind = k;
        n->a = std::move(a);
        n->b = std::move(b);
        return n;
    }

    NodeP sum()
    {
        NodeP n = product();
        for (;;) {
            if (accept('+'))
                n = make(Expr::Node::add, n, product());
            else if (accept('-'))
                n = make(Expr::Node::sub, n, product());
            else
                return n;
        }
    }

    NodeP product()
    {
        NodeP n = unary();
        for (;;) {
            if (accept('*'))
                n = make(Expr::Node::mul, n, unary());
            else if (accept('/'))
                n = make(Expr::Node::div, n, unary());
            else
                return n;
        }
    }

    NodeP unary()
    {
        if (accept('-')) return make(Expr::Node::negate, unary());
        if (accept('+')) return unary();
        return power();
    }

    NodeP power()
    {
        NodeP base = atom();
        if (accept('^')) return make(Expr::Node::power, base, unary());
        return base;
    }

    NodeP atom()
    {
        skip();
        if (pos_ >= s_.size()) fail("unexpected end");
        const char c = s_[pos_];
        if (c == '(') {
            ++pos_;
            NodeP n = sum();
            if (!accept(')')) fail("expected ')'");
            return n;
        }
        if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') {
            const char* begin = s_.c_str() + pos_;
            char* end = nullptr;
            const double v = std::strtod(begin, &end);
            if (end == begin) fail("bad number");
            pos_ += static_cast<std::size_t>(end - begin);
            auto n = std::make_shared<Expr::Node>();
            n->kind = Expr::Node::number;
            n->value = v;
            return n;
        }
        if (std::isalpha(static_cast<unsigned char>(c))) {
            const std::size_t start = pos_;
            while (pos_ < s_.size() && (std::isalnum(static_cast<unsigned char>(s_[pos_])) || s_[pos_] == '_')) ++pos_;
            const std::string id = s_.substr(start, pos_ - start);
            auto n = std::make_shared<Expr::Node>();
            if (id == "nu" || id == "mu1" || id == "z") {
                n->kind = Expr::Node::variable;
                return n;
            }
            if (id == "i" || id == "pi" || id == "e") {
                n->kind = Expr::Node::number;
                n->value = id == "i" ? kI : cplx(id == "pi" ? M_PI : M_E);
                return n;
            }
            for (const std::string& f : kFunctions)
                if (id == f) {
                    if (!accept('(')) fail("expected '(' after " + id);
                    n->kind = Expr::Node::call;
                    n->fn = id;
                    n->a = sum();
                    if (!accept(')')) fail("expected ')'");
                    return n;
                }
            pos_ = start;
            fail("unknown identifier '" + id + "'");
        }
        fail("unexpected '" + std::string(1, c) + "'");
    }
};

Jet2 call_function(const std::string& fn, const Jet2& x)
{
    if (fn == "conj") return conj(x);
    if (fn == "re") return re(x);
    if (fn == "im") return im(x);
    if (fn == "abs2") return abs2(x);
    if (fn == "abs") return sqrt(abs2(x));
    if (fn == "exp") return exp(x);
    if (fn == "log") return log(x);
    if (fn == "sqrt") return sqrt(x);
    if (fn == "sin") return sin(x);
    if (fn == "cos") return cos(x);
    if (fn == "sinh") return sinh(x);
    if (fn == "cosh") return cosh(x);
    return tanh(x);
}

Jet2 eval(const Expr::Node& n, const Jet2& x)
{
    switch (n.kind) {
    case Expr::Node::number: return Jet2(n.value);
    case Expr::Node::variable: return x;
    case Expr::Node::negate: return -1.0 * eval(*n.a, x);
    case Expr::Node::call: return call_function(n.fn, eval(*n.a, x));
    case Expr::Node::add: return eval(*n.a, x) + eval(*n.b, x);
    case Expr::Node::sub: return eval(*n.a, x) - eval(*n.b, x);
    case Expr::Node::mul: return eval(*n.a, x) * eval(*n.b, x);
    case Expr::Node::div: return eval(*n.a, x) / eval(*n.b, x);
    case Expr::Node::power: {
        const Jet2 base = eval(*n.a, x);
        if (n.b->constant()) {
            const cplx p = eval(*n.b, x).v;
            if (p.imag() == 0.0 && p.real() == std::round(p.real()) && std::abs(p.real()) <= 64.0)
                return pow(base, static_cast<int>(p.real()));
        }
        return exp(eval(*n.b, x) * log(base));
    }
    }
    return Jet2(0.0);
}

}  // namespace

Expr Expr::parse(const std::string& src)
{
    Expr e;
    e.src_ = src;
    e.root_ = Parser(src).parse();
    return e;
}

Jet2 Expr::operator()(const Jet2& x) const { return eval(*root_, x); }

}  // namespace lhyp
