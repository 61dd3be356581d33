#ifndef AVECERT_SOLVERS_HPP
#define AVECERT_SOLVERS_HPP

#include <cstdint>
#include <optional>
#include <set>
#include <vector>

#include "avecert/ave_problem.hpp"
#include "avecert/matrix.hpp"
#include "avecert/oracle.hpp"
#include "avecert/svd.hpp"

namespace avecert {

enum class SolveMethod { PICARD_PLUS, PICARD_MINUS, NEWTON };

inline constexpr double kDefaultSolveTol = 1e-10;
inline constexpr int kDefaultMaxIter = 1000;

struct SolveResult {
    Vector x;
    double residual = 0.0;
    int iterations = 0;
    bool converged = false;
    SolveMethod method = SolveMethod::NEWTON;
    // 2 ||(A +/- I)^-1||_2 for the Picard schemes; a value below 1 is the
    // guaranteed contraction factor
    std::optional<double> contraction_estimate;
    // set by the Newton scheme when an iteration matrix was singular
    std::optional<SignPattern> singular_pattern;
};

namespace detail {

/// Common body of both Picard schemes: x <- M^-1 (b + |x| - sign_flip * x)
/// where M = A + shift I. With shift = +1 the update is
/// x <- (A+I)^-1 (b + x + |x|); with shift = -1 it is
/// x <- (A-I)^-1 (b - x + |x|). Either fixed point satisfies Ax - |x| = b.
inline SolveResult picard(const AveProblem& p, double shift, SolveMethod method,
                          const Vector& x0, double tol, int max_iter)
{
    const std::size_t n = p.A.order();
    const DenseMatrix m = shifted(p.A, shift);
    LuFactorization lu(m);
    if (lu.singular)
        throw singular_matrix_error("picard: shifted matrix is singular");

    SolveResult res;
    res.method = method;
    res.contraction_estimate = 2.0 / singular_stats(m).sigma_min;
    res.x = x0;
    res.residual = residual(p, res.x);

    while (res.residual > tol && res.iterations < max_iter) {
        Vector rhs(n);
        for (std::size_t i = 0; i < n; ++i)
            rhs[i] = p.b[i] + std::abs(res.x[i]) + shift * res.x[i];
        res.x = lu.solve(rhs);
        ++res.iterations;
        res.residual = residual(p, res.x);
    }
    res.converged = res.residual <= tol;
    return res;
}

} // namespace detail

inline SolveResult picard_plus(const AveProblem& p, const Vector& x0,
                               double tol = kDefaultSolveTol,
                               int max_iter = kDefaultMaxIter)
{
    return detail::picard(p, +1.0, SolveMethod::PICARD_PLUS, x0, tol, max_iter);
}

inline SolveResult picard_minus(const AveProblem& p, const Vector& x0,
                                double tol = kDefaultSolveTol,
                                int max_iter = kDefaultMaxIter)
{
    return detail::picard(p, -1.0, SolveMethod::PICARD_MINUS, x0, tol, max_iter);
}

/// Semismooth Newton step: solve (A - diag(sign(x))) x_new = b with
/// sign(0) := +1. Stops on a small residual, a repeated sign pattern,
/// or the iteration budget.
inline SolveResult generalized_newton(const AveProblem& p, const Vector& x0,
                                      double tol = kDefaultSolveTol,
                                      int max_iter = kDefaultMaxIter)
{
    const std::size_t n = p.A.order();
    SolveResult res;
    res.method = SolveMethod::NEWTON;
    res.x = x0;
    res.residual = residual(p, res.x);

    // always attempt at least one step so a singular starting pattern
    // is reported even when the initial residual is already small
    std::set<SignPattern> visited;
    while (res.iterations < max_iter) {
        SignPattern s(n);
        for (std::size_t i = 0; i < n; ++i) s[i] = res.x[i] >= 0.0 ? +1 : -1;
        if (!visited.insert(s).second) break;  // cycle

        DenseMatrix m = p.A;
        for (std::size_t i = 0; i < n; ++i) m(i, i) -= s[i];
        detail::LuFactorization lu(m);
        if (lu.singular) {
            res.singular_pattern = s;
            res.converged = false;
            return res;
        }
        res.x = lu.solve(p.b);
        ++res.iterations;
        res.residual = residual(p, res.x);
        if (res.residual <= tol) break;
    }
    res.converged = res.residual <= tol;
    return res;
}

inline SolveResult solve(const AveProblem& p, SolveMethod method,
                         const Vector& x0, double tol = kDefaultSolveTol,
                         int max_iter = kDefaultMaxIter)
{
    switch (method) {
        case SolveMethod::PICARD_PLUS: return picard_plus(p, x0, tol, max_iter);
        case SolveMethod::PICARD_MINUS: return picard_minus(p, x0, tol, max_iter);
        case SolveMethod::NEWTON: return generalized_newton(p, x0, tol, max_iter);
    }
    throw std::logic_error("unknown solve method");
}

} // namespace avecert

#endif // AVECERT_SOLVERS_HPP
