#ifndef AVECERT_SVD_HPP
#define AVECERT_SVD_HPP

#include <algorithm>
#include <cmath>
#include <vector>

#include "avecert/matrix.hpp"

namespace avecert {

struct SingularStats {
    double sigma_min = 0.0;
    double sigma_max = 0.0;
};

namespace detail {

/// One-sided Jacobi: orthogonalizes the columns of a working copy of M by
/// plane rotations. Column norms at convergence are the singular values.
/// Optionally accumulates the right singular vectors in V.
class OneSidedJacobi {
public:
    OneSidedJacobi(const DenseMatrix& m, bool want_v)
        : n_(m.order()), b_(m.data()), v_()
    {
        if (want_v) {
            v_.assign(n_ * n_, 0.0);
            for (std::size_t i = 0; i < n_; ++i) v_[i * n_ + i] = 1.0;
        }
        run();
    }

    std::vector<double> singular_values() const
    {
        std::vector<double> s(n_);
        for (std::size_t j = 0; j < n_; ++j) s[j] = col_norm(j);
        return s;
    }

    // column j of the orthogonalized working matrix equals sigma_j * u_j
    double work(std::size_t i, std::size_t j) const { return b_[i * n_ + j]; }
    double right_vec(std::size_t i, std::size_t j) const { return v_[i * n_ + j]; }
    std::size_t order() const { return n_; }

private:
    std::size_t n_;
    std::vector<double> b_;
    std::vector<double> v_;

    double col_norm(std::size_t j) const
    {
        double s = 0.0;
        for (std::size_t i = 0; i < n_; ++i) s += b_[i * n_ + j] * b_[i * n_ + j];
        return std::sqrt(s);
    }

    void run()
    {
        constexpr int max_sweeps = 60;
        constexpr double eps = 1e-15;
        if (n_ == 1) return;

        for (int sweep = 0; sweep < max_sweeps; ++sweep) {
            bool rotated = false;
            for (std::size_t p = 0; p + 1 < n_; ++p) {
                for (std::size_t q = p + 1; q < n_; ++q) {
                    double app = 0.0, aqq = 0.0, apq = 0.0;
                    for (std::size_t i = 0; i < n_; ++i) {
                        const double bp = b_[i * n_ + p];
                        const double bq = b_[i * n_ + q];
                        app += bp * bp;
                        aqq += bq * bq;
                        apq += bp * bq;
                    }
                    if (std::abs(apq) <= eps * std::sqrt(app * aqq)) continue;
                    rotated = true;

                    const double tau = (aqq - app) / (2.0 * apq);
                    const double t = (tau >= 0.0 ? 1.0 : -1.0)
                        / (std::abs(tau) + std::sqrt(1.0 + tau * tau));
                    const double c = 1.0 / std::sqrt(1.0 + t * t);
                    const double s = c * t;

                    for (std::size_t i = 0; i < n_; ++i) {
                        const double bp = b_[i * n_ + p];
                        const double bq = b_[i * n_ + q];
                        b_[i * n_ + p] = c * bp - s * bq;
                        b_[i * n_ + q] = s * bp + c * bq;
                    }
                    if (!v_.empty()) {
                        for (std::size_t i = 0; i < n_; ++i) {
                            const double vp = v_[i * n_ + p];
                            const double vq = v_[i * n_ + q];
                            v_[i * n_ + p] = c * vp - s * vq;
                            v_[i * n_ + q] = s * vp + c * vq;
                        }
                    }
                }
            }
            if (!rotated) return;
        }
        throw numerical_error("singular value iteration did not converge");
    }
};

} // namespace detail

inline SingularStats singular_stats(const DenseMatrix& m)
{
    detail::OneSidedJacobi jac(m, /*want_v=*/false);
    auto s = jac.singular_values();
    auto [lo, hi] = std::minmax_element(s.begin(), s.end());
    return {*lo, *hi};
}

/// Minimum-norm least-squares solve via the full SVD; singular values at or
/// below sigma_max * n * 1e-12 are truncated. Works for singular matrices.
inline Vector least_squares(const DenseMatrix& m, const Vector& rhs)
{
    const std::size_t n = m.order();
    detail::OneSidedJacobi jac(m, /*want_v=*/true);
    const auto sigma = jac.singular_values();
    const double smax = *std::max_element(sigma.begin(), sigma.end());
    const double cutoff = smax * static_cast<double>(n) * 1e-12;

    Vector x(n, 0.0);
    for (std::size_t j = 0; j < n; ++j) {
        if (sigma[j] <= cutoff) continue;
        // u_j^T rhs = (column j of the work matrix)^T rhs / sigma_j
        double uj_dot = 0.0;
        for (std::size_t i = 0; i < n; ++i) uj_dot += jac.work(i, j) * rhs[i];
        const double coef = uj_dot / (sigma[j] * sigma[j]);
        for (std::size_t i = 0; i < n; ++i) x[i] += coef * jac.right_vec(i, j);
    }
    return x;
}

} // namespace avecert

#endif // AVECERT_SVD_HPP
