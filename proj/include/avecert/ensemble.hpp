#ifndef AVECERT_ENSEMBLE_HPP
#define AVECERT_ENSEMBLE_HPP

#include <array>
#include <cmath>
#include <cstdint>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "avecert/conditions.hpp"
#include "avecert/matrix.hpp"
#include "avecert/oracle.hpp"

namespace avecert {

enum class EnsembleKind { GAUSSIAN, SHIFTED_GAUSSIAN, DIAGONAL_DOMINANT, FIXTURE };

struct EnsembleSpec {
    EnsembleKind kind = EnsembleKind::GAUSSIAN;
    double shift = 0.0;          // c of SHIFTED_GAUSSIAN
    std::size_t n = 2;
    std::size_t samples = 1;
    std::uint64_t seed = 0;
    std::size_t oracle_cap = kDefaultOracleCap;
};

namespace detail {

/// splitmix64 (Vigna's reference stepping); each sample owns an
/// independent stream keyed seed XOR index.
class SplitMix64 {
public:
    explicit SplitMix64(std::uint64_t state) : state_(state) {}

    std::uint64_t next()
    {
        std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ULL);
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
        return z ^ (z >> 31);
    }

    // uniform in [0, 1), 53 mantissa bits
    double uniform() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

    // uniform in [-1, 1)
    double uniform_symmetric() { return 2.0 * uniform() - 1.0; }

    // Box-Muller pair, consumed one value at a time
    double gaussian()
    {
        if (have_spare_) {
            have_spare_ = false;
            return spare_;
        }
        double u1 = uniform();
        if (u1 <= 0.0) u1 = 0x1.0p-53;
        const double u2 = uniform();
        const double r = std::sqrt(-2.0 * std::log(u1));
        const double theta = 6.283185307179586476925286766559 * u2;
        spare_ = r * std::sin(theta);
        have_spare_ = true;
        return r * std::cos(theta);
    }

private:
    std::uint64_t state_;
    double spare_ = 0.0;
    bool have_spare_ = false;
};

} // namespace detail

/// Hand-picked matrices that pin the analytic edge cases: the 1x1 zero
/// matrix (the false positive of the original Wu conditions), the exactly
/// at-threshold diag(3,-3), a comfortably certified 3I, and a matrix with
/// a singular vertex.
inline std::vector<DenseMatrix> fixture_matrices()
{
    return {
        DenseMatrix(1, {0.0}),
        DenseMatrix(2, {3.0, 0.0, 0.0, -3.0}),
        DenseMatrix(2, {3.0, 0.0, 0.0, 3.0}),
        DenseMatrix(2, {0.0, 1.0, 1.0, 0.0}),
    };
}

/// Deterministic function of (seed, index).
inline DenseMatrix generate(const EnsembleSpec& spec, std::size_t index)
{
    if (spec.kind == EnsembleKind::FIXTURE) {
        const auto fixtures = fixture_matrices();
        return fixtures[index % fixtures.size()];
    }

    detail::SplitMix64 rng(spec.seed ^ static_cast<std::uint64_t>(index));
    const std::size_t n = spec.n;
    DenseMatrix a(n);
    switch (spec.kind) {
        case EnsembleKind::GAUSSIAN:
            for (std::size_t i = 0; i < n; ++i)
                for (std::size_t j = 0; j < n; ++j)
                    a(i, j) = rng.gaussian();
            break;
        case EnsembleKind::SHIFTED_GAUSSIAN:
            for (std::size_t i = 0; i < n; ++i)
                for (std::size_t j = 0; j < n; ++j)
                    a(i, j) = rng.gaussian();
            for (std::size_t i = 0; i < n; ++i) a(i, i) += spec.shift;
            break;
        case EnsembleKind::DIAGONAL_DOMINANT:
            for (std::size_t i = 0; i < n; ++i)
                for (std::size_t j = 0; j < n; ++j)
                    a(i, j) = rng.uniform_symmetric();
            for (std::size_t i = 0; i < n; ++i) {
                double row_sum = 0.0;
                for (std::size_t j = 0; j < n; ++j)
                    if (j != i) row_sum += std::abs(a(i, j));
                a(i, i) = row_sum + 3.0;
            }
            break;
        case EnsembleKind::FIXTURE:
            break;  // handled above
    }
    return a;
}

struct CampaignRow {
    std::size_t sample_id = 0;
    std::size_t n = 0;
    std::array<ConditionVerdict, 6> verdicts{};
    CertStatus oracle_status = CertStatus::CAP_EXCEEDED;
    bool all_valid_sound = true;
};

struct CampaignSummary {
    std::array<std::size_t, 6> fire_count{};        // HOLDS per condition
    std::array<std::size_t, 6> sound_fire_count{};  // HOLDS and oracle UNIQUE
    // rows where a KNOWN_INCORRECT condition HOLDS while the oracle refutes
    std::size_t wu_false_positives = 0;
    std::size_t rows = 0;
};

/// Thrown when a VALID condition fires on an oracle-refuted matrix; carries
/// the offending matrix so callers can dump a reproducer.
class soundness_violation : public std::runtime_error {
public:
    soundness_violation(std::size_t sample_id, ConditionId id, DenseMatrix matrix)
        : std::runtime_error("soundness violation: condition " +
                             std::string(condition_name(id)) + " fired on sample " +
                             std::to_string(sample_id) +
                             " that the oracle refutes"),
          sample_id(sample_id), condition(id), matrix(std::move(matrix))
    {}

    std::size_t sample_id;
    ConditionId condition;
    DenseMatrix matrix;
};

struct CampaignResult {
    std::vector<CampaignRow> rows;
    CampaignSummary summary;
};

inline CampaignResult run_campaign(const EnsembleSpec& spec)
{
    CampaignResult result;
    result.rows.reserve(spec.samples);

    for (std::size_t i = 0; i < spec.samples; ++i) {
        const DenseMatrix a = generate(spec, i);
        CampaignRow row;
        row.sample_id = i;
        row.n = a.order();
        row.verdicts = check_all(a);
        const auto cert = certify_uniqueness(a, spec.oracle_cap);
        row.oracle_status = cert.status;

        bool wu_false_positive = false;
        for (std::size_t c = 0; c < 6; ++c) {
            const auto& v = row.verdicts[c];
            const bool fired = v.outcome == Outcome::HOLDS;
            if (fired) ++result.summary.fire_count[c];
            const bool unique = cert.status == CertStatus::UNIQUE_FOR_ALL_B;
            if (fired && unique) ++result.summary.sound_fire_count[c];
            if (fired && cert.status == CertStatus::NOT_UNIQUE) {
                if (v.soundness == Soundness::VALID) {
                    row.all_valid_sound = false;
                    throw soundness_violation(i, v.id, a);
                }
                wu_false_positive = true;
            }
        }
        if (wu_false_positive) ++result.summary.wu_false_positives;
        result.rows.push_back(std::move(row));
        ++result.summary.rows;
    }
    return result;
}

inline std::string outcome_name(Outcome o)
{
    switch (o) {
        case Outcome::HOLDS: return "HOLDS";
        case Outcome::FAILS: return "FAILS";
        case Outcome::MARGINAL: return "MARGINAL";
    }
    return "?";
}

inline std::string cert_status_name(CertStatus s)
{
    switch (s) {
        case CertStatus::UNIQUE_FOR_ALL_B: return "UNIQUE";
        case CertStatus::NOT_UNIQUE: return "NOT_UNIQUE";
        case CertStatus::CAP_EXCEEDED: return "CAP";
    }
    return "?";
}

inline constexpr const char* kCsvHeader =
    "sample_id,n,sigma_plus,norm_plus,sigma_minus,norm_minus,wu_plus,wu_minus,"
    "oracle,all_valid_sound";

inline std::string render_report(const std::vector<CampaignRow>& rows)
{
    std::ostringstream out;
    out << kCsvHeader << '\n';
    for (const auto& row : rows) {
        out << row.sample_id << ',' << row.n;
        for (const auto& v : row.verdicts) out << ',' << outcome_name(v.outcome);
        out << ',' << cert_status_name(row.oracle_status)
            << ',' << (row.all_valid_sound ? "true" : "false") << '\n';
    }
    return out.str();
}

inline void write_report(const std::vector<CampaignRow>& rows, const std::string& path)
{
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot open report file: " + path);
    out << render_report(rows);
    if (!out) throw std::runtime_error("failed writing report file: " + path);
}

} // namespace avecert

#endif // AVECERT_ENSEMBLE_HPP
