#ifndef AVECERT_CONDITIONS_HPP
#define AVECERT_CONDITIONS_HPP

#include <array>
#include <limits>
#include <string_view>

#include "avecert/matrix.hpp"
#include "avecert/oracle.hpp"
#include "avecert/svd.hpp"

namespace avecert {

/// The six unique-solvability checks: four valid ones (sigma and norm forms
/// of the +I and -I shifts) and the two original Wu et al. conditions,
/// which are known to be incorrect and are flagged as such permanently.
enum class ConditionId {
    SIGMA_PLUS,
    NORM_PLUS,
    SIGMA_MINUS,
    NORM_MINUS,
    WU_PLUS_INCORRECT,
    WU_MINUS_INCORRECT,
};

inline constexpr std::array<ConditionId, 6> kAllConditions = {
    ConditionId::SIGMA_PLUS,     ConditionId::NORM_PLUS,
    ConditionId::SIGMA_MINUS,    ConditionId::NORM_MINUS,
    ConditionId::WU_PLUS_INCORRECT, ConditionId::WU_MINUS_INCORRECT,
};

enum class Outcome { HOLDS, FAILS, MARGINAL };
enum class Soundness { VALID, KNOWN_INCORRECT };

/// Statistic within the marginal band of the threshold is reported MARGINAL
/// and never counts as HOLDS downstream.
inline constexpr double kMarginalBand = 1e-9;

struct ConditionVerdict {
    ConditionId id;
    double statistic;   // +infinity marks a non-invertible shift
    double threshold;
    Outcome outcome;
    Soundness soundness;
};

inline std::string_view condition_name(ConditionId id)
{
    switch (id) {
        case ConditionId::SIGMA_PLUS: return "sigma_plus";
        case ConditionId::NORM_PLUS: return "norm_plus";
        case ConditionId::SIGMA_MINUS: return "sigma_minus";
        case ConditionId::NORM_MINUS: return "norm_minus";
        case ConditionId::WU_PLUS_INCORRECT: return "wu_plus";
        case ConditionId::WU_MINUS_INCORRECT: return "wu_minus";
    }
    return "?";
}

namespace detail {

struct ConditionShape {
    double shift;        // +1 or -1 applied to the diagonal
    double coefficient;  // 0 for the sigma form, 2 or 0.5 for norm forms
    double threshold;
    bool greater_than;   // sigma form holds above threshold, norm below
    Soundness soundness;
};

inline ConditionShape shape_of(ConditionId id)
{
    switch (id) {
        case ConditionId::SIGMA_PLUS:
            return {+1.0, 0.0, 2.0, true, Soundness::VALID};
        case ConditionId::NORM_PLUS:
            return {+1.0, 2.0, 1.0, false, Soundness::VALID};
        case ConditionId::SIGMA_MINUS:
            return {-1.0, 0.0, 2.0, true, Soundness::VALID};
        case ConditionId::NORM_MINUS:
            return {-1.0, 2.0, 1.0, false, Soundness::VALID};
        case ConditionId::WU_PLUS_INCORRECT:
            return {+1.0, 0.5, 1.0, false, Soundness::KNOWN_INCORRECT};
        case ConditionId::WU_MINUS_INCORRECT:
            return {-1.0, 0.5, 1.0, false, Soundness::KNOWN_INCORRECT};
    }
    throw std::logic_error("unknown condition id");
}

} // namespace detail

/// Evaluates one condition on A. Sigma forms report sigma_min(A +/- I)
/// against threshold 2; norm forms report c * ||(A +/- I)^-1||_2 against 1,
/// computed as c / sigma_min(A +/- I) via the identity
/// sigma_min(X) * sigma_max(X^-1) = 1. A non-invertible shift makes the
/// norm statistic infinite and the condition FAILS.
inline ConditionVerdict check_condition(ConditionId id, const DenseMatrix& a)
{
    const auto shape = detail::shape_of(id);
    const DenseMatrix shifted_a = shifted(a, shape.shift);
    const SingularStats stats = singular_stats(shifted_a);

    double statistic;
    if (shape.coefficient == 0.0) {
        statistic = stats.sigma_min;
    } else if (stats.sigma_min <=
               singularity_threshold(a.order(), shifted_a.max_abs_entry())) {
        statistic = std::numeric_limits<double>::infinity();
    } else {
        statistic = shape.coefficient / stats.sigma_min;
    }

    Outcome outcome;
    if (std::isfinite(statistic) &&
        std::abs(statistic - shape.threshold) <= kMarginalBand) {
        outcome = Outcome::MARGINAL;
    } else if (shape.greater_than ? statistic > shape.threshold
                                  : statistic < shape.threshold) {
        outcome = Outcome::HOLDS;
    } else {
        outcome = Outcome::FAILS;
    }
    return {id, statistic, shape.threshold, outcome, shape.soundness};
}

inline std::array<ConditionVerdict, 6> check_all(const DenseMatrix& a)
{
    std::array<ConditionVerdict, 6> verdicts{};
    for (std::size_t i = 0; i < kAllConditions.size(); ++i)
        verdicts[i] = check_condition(kAllConditions[i], a);
    return verdicts;
}

/// The analytic 1x1 counterexample A = 0: both Wu conditions hold with
/// statistic 0.5, yet -|x| = b has two solutions for b = -1 and none for
/// b = +1, so the equation is not uniquely solvable for all b.
struct CounterexampleReport {
    ConditionVerdict wu_plus;
    ConditionVerdict wu_minus;
    UniquenessCertificate certificate;
    SolutionSet solutions_b_minus_one;
    SolutionSet solutions_b_plus_one;
};

inline CounterexampleReport demonstrate_counterexample()
{
    const DenseMatrix zero(1);
    CounterexampleReport r{
        check_condition(ConditionId::WU_PLUS_INCORRECT, zero),
        check_condition(ConditionId::WU_MINUS_INCORRECT, zero),
        certify_uniqueness(zero),
        enumerate_solutions(AveProblem(zero, {-1.0})),
        enumerate_solutions(AveProblem(zero, {+1.0})),
    };
    return r;
}

} // namespace avecert

#endif // AVECERT_CONDITIONS_HPP
