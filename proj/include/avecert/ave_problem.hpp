#ifndef AVECERT_AVE_PROBLEM_HPP
#define AVECERT_AVE_PROBLEM_HPP

#include <stdexcept>

#include "avecert/matrix.hpp"

namespace avecert {

/// One instance of Ax - |x| = b.
struct AveProblem {
    DenseMatrix A;
    Vector b;

    AveProblem(DenseMatrix a, Vector rhs)
        : A(std::move(a)), b(std::move(rhs))
    {
        if (b.size() != A.order())
            throw std::invalid_argument("AveProblem: dimension mismatch");
        for (double v : b)
            if (!std::isfinite(v))
                throw std::invalid_argument("AveProblem: non-finite entry in b");
    }
};

/// Infinity norm of Ax - |x| - b.
inline double residual(const AveProblem& p, const Vector& x)
{
    const std::size_t n = p.A.order();
    Vector r = mat_vec(p.A, x);
    for (std::size_t i = 0; i < n; ++i) r[i] -= std::abs(x[i]) + p.b[i];
    return inf_norm(r);
}

} // namespace avecert

#endif // AVECERT_AVE_PROBLEM_HPP
