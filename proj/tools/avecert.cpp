// avecert: certify and solve absolute value equations Ax - |x| = b.
//
// Exit codes:
//   0  success (check ran, oracle UNIQUE, solver converged, unique solution)
//   1  usage error
//   2  parse or I/O error
//   3  numerical failure
//   10 oracle NOT_UNIQUE
//   11 oracle cap exceeded
//   12 solver did not converge
//   13 enumeration found count != 1 or a degenerate family
//   14 soundness violation during bench (reproducer written)

#include <cstdlib>
#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "avecert/avecert.hpp"

namespace {

using namespace avecert;

constexpr int kExitUsage = 1;
constexpr int kExitParse = 2;
constexpr int kExitNumerical = 3;
constexpr int kExitNotUnique = 10;
constexpr int kExitCapExceeded = 11;
constexpr int kExitNotConverged = 12;
constexpr int kExitNotSingleSolution = 13;
constexpr int kExitSoundnessViolation = 14;

std::size_t env_oracle_cap()
{
    std::size_t cap = kDefaultOracleCap;
    if (const char* v = std::getenv("AVECERT_ORACLE_CAP")) {
        char* end = nullptr;
        const unsigned long parsed = std::strtoul(v, &end, 10);
        if (end && *end == '\0' && parsed >= 1)
            cap = static_cast<std::size_t>(parsed);
    }
    return std::min(cap, kHardOracleCap);
}

std::string soundness_tag(Soundness s)
{
    return s == Soundness::VALID ? "VALID" : "KNOWN-INCORRECT";
}

void print_verdict(const ConditionVerdict& v)
{
    std::cout << condition_name(v.id) << " statistic=" << format_number(v.statistic)
              << " threshold=" << format_number(v.threshold)
              << " " << outcome_name(v.outcome)
              << " " << soundness_tag(v.soundness) << '\n';
}

void print_vector(const Vector& x)
{
    for (std::size_t i = 0; i < x.size(); ++i)
        std::cout << (i ? " " : "") << format_number(x[i]);
}

std::string pattern_text(const SignPattern& t)
{
    std::string s = "(";
    for (std::size_t i = 0; i < t.size(); ++i)
        s += std::string(i ? "," : "") + (t[i] > 0 ? "+1" : "-1");
    return s + ")";
}

int cmd_check(const std::string& path, bool emit)
{
    const ProblemFile pf = load_problem(path);
    if (emit) {
        std::cout << emit_problem(pf);
        return 0;
    }
    for (const auto& v : check_all(pf.A)) print_verdict(v);
    return 0;
}

int print_certificate(const UniquenessCertificate& cert)
{
    switch (cert.status) {
        case CertStatus::UNIQUE_FOR_ALL_B:
            std::cout << "UNIQUE_FOR_ALL_B common_sign="
                      << (cert.common_sign > 0 ? "+1" : "-1")
                      << " tightest_vertex=" << pattern_text(cert.min_logdet_vertex)
                      << " min_log_abs_det=" << format_number(cert.min_log_abs_det)
                      << '\n';
            return 0;
        case CertStatus::NOT_UNIQUE:
            std::cout << "NOT_UNIQUE ";
            if (cert.singular_vertex) {
                std::cout << "singular_vertex=" << pattern_text(*cert.singular_vertex);
            } else {
                std::cout << "opposite_signs_at="
                          << pattern_text(cert.opposite_sign_pair->first) << " and "
                          << pattern_text(cert.opposite_sign_pair->second);
            }
            std::cout << '\n';
            return kExitNotUnique;
        case CertStatus::CAP_EXCEEDED:
            std::cout << "CAP_EXCEEDED\n";
            return kExitCapExceeded;
    }
    return kExitNumerical;
}

int cmd_oracle(const std::string& path, std::size_t cap)
{
    const ProblemFile pf = load_problem(path);
    if (cap > kHardOracleCap) {
        std::cerr << "warning: cap clamped to hard maximum " << kHardOracleCap << '\n';
        cap = kHardOracleCap;
    }
    return print_certificate(certify_uniqueness(pf.A, cap));
}

void print_solution_set(const SolutionSet& set)
{
    std::cout << "solutions=" << set.count
              << " degenerate=" << (set.degenerate ? "true" : "false") << '\n';
    for (const auto& [x, s] : set.solutions) {
        std::cout << "x= ";
        print_vector(x);
        std::cout << " pattern=" << pattern_text(s) << '\n';
    }
}

int cmd_solve(const std::string& path, const std::string& method,
              double tol, int max_iter, std::size_t cap)
{
    const ProblemFile pf = load_problem(path);
    if (!pf.b) throw parse_error("solve requires a right-hand side line");
    const AveProblem problem(pf.A, *pf.b);

    if (method == "enumerate") {
        const SolutionSet set = enumerate_solutions(problem, cap);
        print_solution_set(set);
        return (set.count == 1 && !set.degenerate) ? 0 : kExitNotSingleSolution;
    }

    SolveMethod m;
    if (method == "newton") m = SolveMethod::NEWTON;
    else if (method == "picard-plus") m = SolveMethod::PICARD_PLUS;
    else if (method == "picard-minus") m = SolveMethod::PICARD_MINUS;
    else throw CLI::ValidationError("--method", "unknown method: " + method);

    const Vector x0(problem.A.order(), 0.0);
    const SolveResult res = solve(problem, m, x0, tol, max_iter);
    std::cout << "x= ";
    print_vector(res.x);
    std::cout << "\nresidual=" << format_number(res.residual)
              << " iterations=" << res.iterations
              << " converged=" << (res.converged ? "true" : "false");
    if (res.contraction_estimate)
        std::cout << " contraction_estimate=" << format_number(*res.contraction_estimate);
    if (res.singular_pattern)
        std::cout << " singular_pattern=" << pattern_text(*res.singular_pattern);
    std::cout << '\n';
    return res.converged ? 0 : kExitNotConverged;
}

int cmd_counterexample()
{
    const CounterexampleReport r = demonstrate_counterexample();
    std::cout << "counterexample A = [0] (n=1): the original conditions hold, "
                 "yet -|x| = b is not uniquely solvable\n";
    print_verdict(r.wu_plus);
    print_verdict(r.wu_minus);
    std::cout << "oracle: ";
    print_certificate(r.certificate);
    std::cout << "b = -1: ";
    print_solution_set(r.solutions_b_minus_one);
    std::cout << "b = +1: ";
    print_solution_set(r.solutions_b_plus_one);
    return 0;
}

int cmd_bench(const std::string& kind, std::size_t n, std::size_t samples,
              std::uint64_t seed, double shift, const std::string& out_path,
              std::size_t cap)
{
    EnsembleSpec spec;
    if (kind == "gaussian") spec.kind = EnsembleKind::GAUSSIAN;
    else if (kind == "shifted-gaussian") spec.kind = EnsembleKind::SHIFTED_GAUSSIAN;
    else if (kind == "diagonal-dominant") spec.kind = EnsembleKind::DIAGONAL_DOMINANT;
    else if (kind == "fixture") spec.kind = EnsembleKind::FIXTURE;
    else throw CLI::ValidationError("--kind", "unknown ensemble kind: " + kind);

    if (n > cap) {
        std::cerr << "error: n=" << n << " exceeds the oracle cap " << cap << '\n';
        return kExitUsage;
    }
    spec.n = n;
    spec.samples = spec.kind == EnsembleKind::FIXTURE
        ? std::min(samples, fixture_matrices().size()) : samples;
    spec.seed = seed;
    spec.shift = shift;
    spec.oracle_cap = cap;

    CampaignResult result;
    try {
        result = run_campaign(spec);
    } catch (const soundness_violation& e) {
        const std::string repro = out_path + ".reproducer";
        std::ofstream dump(repro, std::ios::binary);
        dump << emit_problem(ProblemFile{e.matrix, std::nullopt});
        std::cerr << e.what() << "\nreproducer written to " << repro << '\n';
        return kExitSoundnessViolation;
    }

    write_report(result.rows, out_path);

    std::cout << "rows=" << result.summary.rows << '\n';
    for (std::size_t c = 0; c < kAllConditions.size(); ++c)
        std::cout << condition_name(kAllConditions[c])
                  << " fired=" << result.summary.fire_count[c]
                  << " sound_fired=" << result.summary.sound_fire_count[c] << '\n';
    std::cout << "wu_false_positives=" << result.summary.wu_false_positives << '\n';
    return 0;
}

} // namespace

int main(int argc, char** argv)
{
    CLI::App app{"certify and solve absolute value equations Ax - |x| = b"};
    app.require_subcommand(1);
    const std::size_t default_cap = env_oracle_cap();

    std::string path, method = "newton", kind = "gaussian", out_path = "campaign.csv";
    bool emit = false;
    double tol = kDefaultSolveTol, shift = 0.0;
    int max_iter = kDefaultMaxIter;
    std::size_t cap = default_cap, n = 2, samples = 100;
    std::uint64_t seed = 0;

    auto* check = app.add_subcommand("check", "evaluate all six conditions");
    check->add_option("path", path)->required();
    check->add_flag("--emit", emit, "re-print the parsed problem file");

    auto* oracle = app.add_subcommand("oracle", "exact vertex-enumeration certificate");
    oracle->add_option("path", path)->required();
    oracle->add_option("--cap", cap, "largest n to enumerate");

    auto* solve = app.add_subcommand("solve", "solve one AVE instance");
    solve->add_option("path", path)->required();
    solve->add_option("--method", method,
                      "newton | picard-plus | picard-minus | enumerate");
    solve->add_option("--tol", tol);
    solve->add_option("--max-iter", max_iter);
    solve->add_option("--cap", cap, "enumeration cap for --method enumerate");

    auto* counter = app.add_subcommand(
        "counterexample", "reproduce the A = 0 failure of the original conditions");

    auto* bench = app.add_subcommand("bench", "random-matrix soundness campaign");
    bench->add_option("--kind", kind,
                      "gaussian | shifted-gaussian | diagonal-dominant | fixture");
    bench->add_option("--n", n);
    bench->add_option("--samples", samples);
    bench->add_option("--seed", seed);
    bench->add_option("--shift", shift, "c of shifted-gaussian");
    bench->add_option("--out", out_path)->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int rc = app.exit(e);
        return rc == 0 ? 0 : kExitUsage;
    }

    try {
        if (check->parsed()) return cmd_check(path, emit);
        if (oracle->parsed()) return cmd_oracle(path, cap);
        if (solve->parsed()) return cmd_solve(path, method, tol, max_iter, cap);
        if (counter->parsed()) return cmd_counterexample();
        if (bench->parsed())
            return cmd_bench(kind, n, samples, seed, shift, out_path, cap);
    } catch (const CLI::ValidationError& e) {
        std::cerr << e.what() << '\n';
        return kExitUsage;
    } catch (const parse_error& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitParse;
    } catch (const cap_exceeded_error& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitCapExceeded;
    } catch (const numerical_error& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitNumerical;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitParse;
    }
    return kExitUsage;
}
