#include <catch2/catch_amalgamated.hpp>

#include <algorithm>
#include <cmath>
#include <random>

#include "avecert/oracle.hpp"

using namespace avecert;

namespace {

DenseMatrix random_matrix(std::mt19937_64& rng, std::size_t n, double diag_shift = 0.0)
{
    std::normal_distribution<double> dist;
    DenseMatrix m(n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
            m(i, j) = dist(rng);
    for (std::size_t i = 0; i < n; ++i) m(i, i) += diag_shift;
    return m;
}

DenseMatrix plus_diag(const DenseMatrix& a, const std::vector<double>& t)
{
    DenseMatrix m = a;
    for (std::size_t i = 0; i < m.order(); ++i) m(i, i) += t[i];
    return m;
}

} // namespace

TEST_CASE("certify 3I is unique with common sign +1")
{
    const auto cert = certify_uniqueness(DenseMatrix(2, {3, 0, 0, 3}));
    REQUIRE(cert.status == CertStatus::UNIQUE_FOR_ALL_B);
    CHECK(cert.common_sign == +1);
    // vertex dets are 16, 8, 8, 4; the tightest vertex is (-1,-1) with det 4
    CHECK(cert.min_logdet_vertex == SignPattern{-1, -1});
    CHECK_THAT(cert.min_log_abs_det, Catch::Matchers::WithinAbs(std::log(4.0), 1e-12));
}

TEST_CASE("certify diag(3,-3) is unique with common sign -1")
{
    const auto cert = certify_uniqueness(DenseMatrix(2, {3, 0, 0, -3}));
    REQUIRE(cert.status == CertStatus::UNIQUE_FOR_ALL_B);
    CHECK(cert.common_sign == -1);
    // vertex dets are -8, -4, -16, -8; |det| is smallest at (-1,+1)
    CHECK(cert.min_logdet_vertex == SignPattern{-1, +1});
    CHECK_THAT(cert.min_log_abs_det, Catch::Matchers::WithinAbs(std::log(4.0), 1e-12));
}

TEST_CASE("certify the exchange matrix finds a singular vertex")
{
    const auto cert = certify_uniqueness(DenseMatrix(2, {0, 1, 1, 0}));
    REQUIRE(cert.status == CertStatus::NOT_UNIQUE);
    REQUIRE(cert.singular_vertex.has_value());
    // both (+1,+1) and (-1,-1) are singular; the lexicographically
    // smallest witness is reported
    CHECK(*cert.singular_vertex == SignPattern{-1, -1});
    CHECK(det_sign(plus_diag(DenseMatrix(2, {0, 1, 1, 0}),
                             {-1.0, -1.0})).sign == 0);
}

TEST_CASE("certify the zero scalar finds opposite determinant signs")
{
    const auto cert = certify_uniqueness(DenseMatrix(1));
    REQUIRE(cert.status == CertStatus::NOT_UNIQUE);
    CHECK_FALSE(cert.singular_vertex.has_value());
    REQUIRE(cert.opposite_sign_pair.has_value());
    const auto& [p, q] = *cert.opposite_sign_pair;
    CHECK(p == SignPattern{+1});
    CHECK(q == SignPattern{-1});
}

TEST_CASE("cap handling")
{
    const DenseMatrix big(17);
    CHECK(certify_uniqueness(big, 16).status == CertStatus::CAP_EXCEEDED);
    CHECK(certify_uniqueness(big, 17).status != CertStatus::CAP_EXCEEDED);
    CHECK_THROWS_AS(enumerate_solutions(AveProblem(big, Vector(17, 0.0)), 16),
                    cap_exceeded_error);
}

TEST_CASE("not-unique witnesses re-verify through det_sign")
{
    std::mt19937_64 rng(101);
    int refuted = 0;
    for (int trial = 0; trial < 300 && refuted < 60; ++trial) {
        const std::size_t n = 1 + rng() % 5;
        const DenseMatrix a = random_matrix(rng, n);
        const auto cert = certify_uniqueness(a);
        if (cert.status != CertStatus::NOT_UNIQUE) continue;
        ++refuted;
        if (cert.singular_vertex) {
            std::vector<double> t(cert.singular_vertex->begin(),
                                  cert.singular_vertex->end());
            CHECK(det_sign(plus_diag(a, t)).sign == 0);
        } else {
            REQUIRE(cert.opposite_sign_pair.has_value());
            std::vector<double> tp(cert.opposite_sign_pair->first.begin(),
                                   cert.opposite_sign_pair->first.end());
            std::vector<double> tq(cert.opposite_sign_pair->second.begin(),
                                   cert.opposite_sign_pair->second.end());
            const int sp = det_sign(plus_diag(a, tp)).sign;
            const int sq = det_sign(plus_diag(a, tq)).sign;
            CHECK(sp * sq == -1);
        }
    }
    CHECK(refuted > 0);
}

TEST_CASE("enumerate_solutions on hand instances")
{
    const DenseMatrix zero(1);

    auto set = enumerate_solutions(AveProblem(zero, {-1.0}));
    REQUIRE(set.count == 2);
    CHECK_FALSE(set.degenerate);

    set = enumerate_solutions(AveProblem(zero, {+1.0}));
    CHECK(set.count == 0);

    set = enumerate_solutions(AveProblem(DenseMatrix(2, {3, 0, 0, -3}), {2.0, 2.0}));
    REQUIRE(set.count == 1);
    CHECK_THAT(set.solutions[0].first[0], Catch::Matchers::WithinAbs(1.0, 1e-12));
    CHECK_THAT(set.solutions[0].first[1], Catch::Matchers::WithinAbs(-1.0, 1e-12));

    set = enumerate_solutions(AveProblem(DenseMatrix(2, {0, 1, 1, 0}), {0.0, 0.0}));
    CHECK(set.degenerate);
}

TEST_CASE("listed solutions satisfy residual and sign consistency")
{
    std::mt19937_64 rng(113);
    std::normal_distribution<double> dist;
    for (int trial = 0; trial < 100; ++trial) {
        const std::size_t n = 1 + rng() % 4;
        const DenseMatrix a = random_matrix(rng, n);
        Vector b(n);
        for (auto& v : b) v = dist(rng);
        const AveProblem p(a, b);
        const auto set = enumerate_solutions(p);
        for (const auto& [x, s] : set.solutions) {
            CHECK(residual(p, x) <= 1e-8 * (1.0 + inf_norm(b)));
            for (std::size_t i = 0; i < n; ++i)
                CHECK(s[i] * x[i] >= -1e-12 * (1.0 + inf_norm(x)));
        }
        // no two listed solutions coincide
        for (std::size_t i = 0; i < set.solutions.size(); ++i)
            for (std::size_t j = i + 1; j < set.solutions.size(); ++j) {
                double dist_ij = 0.0;
                for (std::size_t k = 0; k < n; ++k)
                    dist_ij = std::max(dist_ij,
                                       std::abs(set.solutions[i].first[k] -
                                                set.solutions[j].first[k]));
                CHECK(dist_ij > 1e-8);
            }
    }
}

TEST_CASE("oracle UNIQUE implies one solution for every right-hand side")
{
    std::mt19937_64 rng(131);
    std::normal_distribution<double> dist;
    int certified = 0;
    for (int trial = 0; trial < 200 && certified < 30; ++trial) {
        const std::size_t n = 1 + rng() % 6;
        const DenseMatrix a = random_matrix(rng, n, 3.0);
        if (certify_uniqueness(a).status != CertStatus::UNIQUE_FOR_ALL_B) continue;
        ++certified;
        for (int k = 0; k < 20; ++k) {
            Vector b(n);
            for (auto& v : b) v = dist(rng);
            const auto set = enumerate_solutions(AveProblem(a, b));
            REQUIRE(set.count == 1);
            REQUIRE_FALSE(set.degenerate);
        }
    }
    CHECK(certified == 30);
}

TEST_CASE("dense grid over the box never contradicts the vertex certificate")
{
    std::mt19937_64 rng(151);
    int certified = 0;
    for (int trial = 0; trial < 60 && certified < 10; ++trial) {
        const std::size_t n = 1 + rng() % 3;
        const DenseMatrix a = random_matrix(rng, n, 2.5);
        const auto cert = certify_uniqueness(a);
        if (cert.status != CertStatus::UNIQUE_FOR_ALL_B) continue;
        ++certified;

        std::vector<std::size_t> idx(n, 0);
        const std::size_t points = 21;
        bool done = false;
        while (!done) {
            std::vector<double> t(n);
            for (std::size_t i = 0; i < n; ++i)
                t[i] = -1.0 + 2.0 * static_cast<double>(idx[i]) / (points - 1);
            const int s = det_sign(plus_diag(a, t)).sign;
            REQUIRE(s == cert.common_sign);

            std::size_t d = 0;
            while (d < n && ++idx[d] == points) idx[d++] = 0;
            done = d == n;
        }
    }
    CHECK(certified == 10);
}

TEST_CASE("certificate is deterministic and order-independent")
{
    // reference: visit vertices in a shuffled order and combine through the
    // commutative merge the certificate is defined by
    std::mt19937_64 rng(163);
    for (int trial = 0; trial < 40; ++trial) {
        const std::size_t n = 1 + rng() % 5;
        const DenseMatrix a = random_matrix(rng, n);
        const auto cert = certify_uniqueness(a);

        std::vector<std::uint64_t> order(std::size_t{1} << n);
        for (std::uint64_t k = 0; k < order.size(); ++k) order[k] = k;
        std::shuffle(order.begin(), order.end(), rng);

        SignPattern lexmin_singular, lexmin_plus, lexmin_minus, min_vertex;
        double min_logdet = 0.0;
        auto lex_less = [](const SignPattern& x, const SignPattern& y) {
            return std::lexicographical_compare(x.begin(), x.end(),
                                                y.begin(), y.end());
        };
        for (std::uint64_t k : order) {
            SignPattern t(n);
            for (std::size_t i = 0; i < n; ++i)
                t[i] = ((k >> (n - 1 - i)) & 1u) ? +1 : -1;
            std::vector<double> shift(t.begin(), t.end());
            const DetSign d = det_sign(plus_diag(a, shift));
            auto merge_lexmin = [&](SignPattern& slot) {
                if (slot.empty() || lex_less(t, slot)) slot = t;
            };
            if (d.sign == 0) merge_lexmin(lexmin_singular);
            else if (d.sign > 0) merge_lexmin(lexmin_plus);
            else merge_lexmin(lexmin_minus);
            if (d.sign != 0 && (min_vertex.empty() || d.log_abs_det < min_logdet)) {
                min_vertex = t;
                min_logdet = d.log_abs_det;
            }
        }

        if (cert.status == CertStatus::UNIQUE_FOR_ALL_B) {
            CHECK(lexmin_singular.empty());
            CHECK((lexmin_plus.empty() || lexmin_minus.empty()));
            CHECK(cert.min_logdet_vertex == min_vertex);
        } else if (cert.singular_vertex) {
            CHECK(*cert.singular_vertex == lexmin_singular);
        } else {
            CHECK(cert.opposite_sign_pair->first == lexmin_plus);
            CHECK(cert.opposite_sign_pair->second == lexmin_minus);
        }
    }
}
