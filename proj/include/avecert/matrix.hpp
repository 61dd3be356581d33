#ifndef AVECERT_MATRIX_HPP
#define AVECERT_MATRIX_HPP

#include <cmath>
#include <cstddef>
#include <limits>
#include <stdexcept>
#include <utility>
#include <vector>

namespace avecert {

using Vector = std::vector<double>;

class numerical_error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class singular_matrix_error : public numerical_error {
public:
    using numerical_error::numerical_error;
};

/// Dense square matrix with row-major storage. Entries must be finite.
class DenseMatrix {
public:
    explicit DenseMatrix(std::size_t n)
        : n_(n), data_(n * n, 0.0)
    {
        if (n < 1) throw std::invalid_argument("DenseMatrix: order must be >= 1");
    }

    DenseMatrix(std::size_t n, std::vector<double> entries)
        : n_(n), data_(std::move(entries))
    {
        if (n < 1) throw std::invalid_argument("DenseMatrix: order must be >= 1");
        if (data_.size() != n * n)
            throw std::invalid_argument("DenseMatrix: entry count does not match order");
        for (double v : data_)
            if (!std::isfinite(v))
                throw std::invalid_argument("DenseMatrix: non-finite entry");
    }

    std::size_t order() const { return n_; }

    double operator()(std::size_t i, std::size_t j) const { return data_[i * n_ + j]; }
    double& operator()(std::size_t i, std::size_t j) { return data_[i * n_ + j]; }

    const std::vector<double>& data() const { return data_; }

    double max_abs_entry() const
    {
        double m = 0.0;
        for (double v : data_) m = std::max(m, std::abs(v));
        return m;
    }

private:
    std::size_t n_;
    std::vector<double> data_;
};

inline DenseMatrix identity(std::size_t n)
{
    DenseMatrix m(n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = 1.0;
    return m;
}

/// M + shift * I
inline DenseMatrix shifted(const DenseMatrix& m, double shift)
{
    DenseMatrix r = m;
    for (std::size_t i = 0; i < r.order(); ++i) r(i, i) += shift;
    return r;
}

/// Pivot p counts as singular when |p| <= 1e-12 * n * max|entry|.
inline double singularity_threshold(std::size_t n, double max_abs)
{
    return 1e-12 * static_cast<double>(n) * max_abs;
}

/// Sign and log|det|; sign == 0 marks a numerically singular matrix
/// (log_abs_det is then -infinity).
struct DetSign {
    int sign = 0;
    double log_abs_det = -std::numeric_limits<double>::infinity();
};

namespace detail {

/// LU with partial pivoting, factored in place. Tracks permutation parity.
/// Stops at the first pivot below the singularity threshold.
struct LuFactorization {
    std::size_t n;
    std::vector<double> lu;   // row-major, L below diagonal (unit), U on and above
    std::vector<std::size_t> perm;
    int parity = 1;           // sign of the row permutation
    bool singular = false;

    explicit LuFactorization(const DenseMatrix& m)
        : n(m.order()), lu(m.data()), perm(m.order())
    {
        const double thresh = singularity_threshold(n, m.max_abs_entry());
        for (std::size_t i = 0; i < n; ++i) perm[i] = i;

        for (std::size_t k = 0; k < n; ++k) {
            std::size_t p = k;
            double best = std::abs(lu[k * n + k]);
            for (std::size_t i = k + 1; i < n; ++i) {
                double v = std::abs(lu[i * n + k]);
                if (v > best) { best = v; p = i; }
            }
            if (best <= thresh) { singular = true; return; }
            if (p != k) {
                for (std::size_t j = 0; j < n; ++j)
                    std::swap(lu[k * n + j], lu[p * n + j]);
                std::swap(perm[k], perm[p]);
                parity = -parity;
            }
            const double pivot = lu[k * n + k];
            for (std::size_t i = k + 1; i < n; ++i) {
                const double f = lu[i * n + k] / pivot;
                lu[i * n + k] = f;
                for (std::size_t j = k + 1; j < n; ++j)
                    lu[i * n + j] -= f * lu[k * n + j];
            }
        }
    }

    Vector solve(const Vector& rhs) const
    {
        Vector x(n);
        for (std::size_t i = 0; i < n; ++i) x[i] = rhs[perm[i]];
        for (std::size_t i = 1; i < n; ++i)
            for (std::size_t j = 0; j < i; ++j)
                x[i] -= lu[i * n + j] * x[j];
        for (std::size_t ii = n; ii-- > 0;) {
            for (std::size_t j = ii + 1; j < n; ++j)
                x[ii] -= lu[ii * n + j] * x[j];
            x[ii] /= lu[ii * n + ii];
        }
        return x;
    }

    DetSign det_sign() const
    {
        if (singular) return {};
        DetSign d;
        d.sign = parity;
        d.log_abs_det = 0.0;
        for (std::size_t k = 0; k < n; ++k) {
            const double pivot = lu[k * n + k];
            if (pivot < 0.0) d.sign = -d.sign;
            d.log_abs_det += std::log(std::abs(pivot));
        }
        return d;
    }
};

} // namespace detail

inline Vector solve_linear(const DenseMatrix& m, const Vector& rhs)
{
    if (rhs.size() != m.order())
        throw std::invalid_argument("solve_linear: dimension mismatch");
    detail::LuFactorization lu(m);
    if (lu.singular)
        throw singular_matrix_error("solve_linear: matrix is numerically singular");
    return lu.solve(rhs);
}

/// det sign from pivot signs and permutation parity; log|det| accumulated
/// in log space so it stays finite for products of many shifted matrices.
inline DetSign det_sign(const DenseMatrix& m)
{
    return detail::LuFactorization(m).det_sign();
}

inline double inf_norm(const Vector& v)
{
    double m = 0.0;
    for (double x : v) m = std::max(m, std::abs(x));
    return m;
}

inline double two_norm(const Vector& v)
{
    double s = 0.0;
    for (double x : v) s += x * x;
    return std::sqrt(s);
}

inline Vector mat_vec(const DenseMatrix& m, const Vector& v)
{
    const std::size_t n = m.order();
    Vector r(n, 0.0);
    for (std::size_t i = 0; i < n; ++i) {
        double s = 0.0;
        for (std::size_t j = 0; j < n; ++j) s += m(i, j) * v[j];
        r[i] = s;
    }
    return r;
}

} // namespace avecert

#endif // AVECERT_MATRIX_HPP
