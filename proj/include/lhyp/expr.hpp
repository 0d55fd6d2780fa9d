#pragma once

// Complex expressions in one variable, evaluated on second-order jets so that
// user-supplied congruences get exact Wirtinger derivatives.
//
// Grammar: sums, products, quotients, unary minus, '^' (right associative),
// numbers, the constants i, pi, e, the variable (nu, mu1 or z) and the
// functions conj re im abs2 abs exp log sqrt sin cos sinh cosh tanh.

#include <memory>
#include <string>

#include "lhyp/jet.hpp"

namespace lhyp {

class Expr {
public:
    struct Node;

    // Throws InputError with the offending position.
    static Expr parse(const std::string& src);

    Jet2 operator()(const Jet2& x) const;
    cplx operator()(cplx x) const { return (*this)(Jet2(x)).v; }
    const std::string& source() const { return src_; }

private:
    std::shared_ptr<const Node> root_;
    std::string src_;
};

}  // namespace lhyp
