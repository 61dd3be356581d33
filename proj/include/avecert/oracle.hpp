#ifndef AVECERT_ORACLE_HPP
#define AVECERT_ORACLE_HPP

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <vector>

#include "avecert/ave_problem.hpp"
#include "avecert/matrix.hpp"
#include "avecert/svd.hpp"

namespace avecert {

class cap_exceeded_error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Entries are exactly +1 or -1.
using SignPattern = std::vector<int>;

inline constexpr std::size_t kDefaultOracleCap = 16;
inline constexpr std::size_t kHardOracleCap = 24;

enum class CertStatus { UNIQUE_FOR_ALL_B, NOT_UNIQUE, CAP_EXCEEDED };

/// Outcome of enumerating det sign over all vertex matrices A + diag(t),
/// t in {-1,+1}^n. Witnesses are re-checkable with det_sign.
struct UniquenessCertificate {
    CertStatus status = CertStatus::CAP_EXCEEDED;

    // UNIQUE_FOR_ALL_B: the shared determinant sign and the vertex
    // where |det| is smallest (the tightest vertex).
    int common_sign = 0;
    SignPattern min_logdet_vertex;
    double min_log_abs_det = 0.0;

    // NOT_UNIQUE: either a singular vertex, or a pair of vertices with
    // opposite determinant signs. Lexicographically smallest (-1 < +1).
    std::optional<SignPattern> singular_vertex;
    std::optional<std::pair<SignPattern, SignPattern>> opposite_sign_pair;
};

namespace detail {

inline SignPattern pattern_from_index(std::uint64_t k, std::size_t n)
{
    SignPattern t(n);
    for (std::size_t i = 0; i < n; ++i)
        t[i] = ((k >> (n - 1 - i)) & 1u) ? +1 : -1;
    return t;
}

inline DenseMatrix vertex_matrix(const DenseMatrix& a, const SignPattern& t)
{
    DenseMatrix m = a;
    for (std::size_t i = 0; i < m.order(); ++i) m(i, i) += t[i];
    return m;
}

} // namespace detail

/// Checks whether every member of the interval family A + diag(t),
/// t in [-1,1]^n, is invertible. det(A + diag(t)) is affine in each t_i,
/// so it suffices that all 2^n vertex determinants share one nonzero sign.
inline UniquenessCertificate certify_uniqueness(const DenseMatrix& a,
                                                std::size_t cap = kDefaultOracleCap)
{
    const std::size_t n = a.order();
    if (cap > kHardOracleCap) cap = kHardOracleCap;

    UniquenessCertificate cert;
    if (n > cap) {
        cert.status = CertStatus::CAP_EXCEEDED;
        return cert;
    }

    SignPattern lexmin_plus, lexmin_minus;
    const std::uint64_t total = std::uint64_t{1} << n;
    for (std::uint64_t k = 0; k < total; ++k) {
        const SignPattern t = detail::pattern_from_index(k, n);
        const DetSign d = det_sign(detail::vertex_matrix(a, t));
        if (d.sign == 0) {
            if (!cert.singular_vertex) cert.singular_vertex = t;
        } else if (d.sign > 0) {
            if (lexmin_plus.empty()) lexmin_plus = t;
        } else {
            if (lexmin_minus.empty()) lexmin_minus = t;
        }
        if (d.sign != 0 &&
            (cert.min_logdet_vertex.empty() || d.log_abs_det < cert.min_log_abs_det)) {
            cert.min_logdet_vertex = t;
            cert.min_log_abs_det = d.log_abs_det;
        }
    }

    if (!cert.singular_vertex && (lexmin_plus.empty() || lexmin_minus.empty())) {
        cert.status = CertStatus::UNIQUE_FOR_ALL_B;
        cert.common_sign = lexmin_plus.empty() ? -1 : +1;
    } else {
        cert.status = CertStatus::NOT_UNIQUE;
        if (!cert.singular_vertex)
            cert.opposite_sign_pair = std::make_pair(lexmin_plus, lexmin_minus);
    }
    return cert;
}

/// All solutions of one AVE instance found by sign-pattern enumeration.
struct SolutionSet {
    std::vector<std::pair<Vector, SignPattern>> solutions;
    bool degenerate = false;  // some singular pattern admitted a whole family
    std::size_t count = 0;    // isolated solutions
};

/// For each s in {-1,+1}^n solve (A - diag(s)) x = b; accept x when
/// s_i x_i >= -1e-12 (1 + |x|_inf) for all i. Solutions on orthant
/// boundaries match several patterns, so duplicates within
/// 1e-8 (1 + |x|_inf) in the infinity norm are merged.
inline SolutionSet enumerate_solutions(const AveProblem& p,
                                       std::size_t cap = kDefaultOracleCap)
{
    const std::size_t n = p.A.order();
    if (cap > kHardOracleCap) cap = kHardOracleCap;
    if (n > cap)
        throw cap_exceeded_error("enumerate_solutions: order exceeds the cap");

    SolutionSet set;
    const double b_scale = 1.0 + inf_norm(p.b);
    const std::uint64_t total = std::uint64_t{1} << n;
    for (std::uint64_t k = 0; k < total; ++k) {
        SignPattern s = detail::pattern_from_index(k, n);
        DenseMatrix m = p.A;
        for (std::size_t i = 0; i < n; ++i) m(i, i) -= s[i];

        detail::LuFactorization lu(m);
        if (lu.singular) {
            // singular branch: b in range(m) means an infinite family
            const Vector ls = least_squares(m, p.b);
            Vector r = mat_vec(m, ls);
            for (std::size_t i = 0; i < n; ++i) r[i] -= p.b[i];
            if (inf_norm(r) <= 1e-8 * b_scale) set.degenerate = true;
            continue;
        }

        const Vector x = lu.solve(p.b);
        const double x_scale = 1.0 + inf_norm(x);
        bool consistent = true;
        for (std::size_t i = 0; i < n; ++i)
            if (s[i] * x[i] < -1e-12 * x_scale) { consistent = false; break; }
        if (!consistent) continue;
        if (residual(p, x) > 1e-8 * b_scale) continue;

        bool duplicate = false;
        for (const auto& [y, sy] : set.solutions) {
            double dist = 0.0;
            for (std::size_t i = 0; i < n; ++i)
                dist = std::max(dist, std::abs(x[i] - y[i]));
            if (dist <= 1e-8 * x_scale) { duplicate = true; break; }
        }
        if (!duplicate) set.solutions.emplace_back(x, s);
    }
    set.count = set.solutions.size();
    return set;
}

} // namespace avecert

#endif // AVECERT_ORACLE_HPP
