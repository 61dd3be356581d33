#ifndef AVECERT_PROBLEM_IO_HPP
#define AVECERT_PROBLEM_IO_HPP

#include <cmath>
#include <fstream>
#include <istream>
#include <optional>
#include <sstream>
#include <string>

#include "avecert/matrix.hpp"

namespace avecert {

class parse_error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Plain-text problem file: line 1 holds n, lines 2..n+1 the rows of A,
/// and an optional final line the right-hand side b.
struct ProblemFile {
    DenseMatrix A;
    std::optional<Vector> b;
};

inline ProblemFile parse_problem(std::istream& in)
{
    std::string first;
    if (!std::getline(in, first)) throw parse_error("empty problem file");
    std::istringstream head(first);
    long long n_signed;
    if (!(head >> n_signed)) throw parse_error("first line must hold the order n");
    std::string extra;
    if (head >> extra) throw parse_error("unexpected token after n: " + extra);
    if (n_signed < 1) throw parse_error("order n must be >= 1");
    const auto n = static_cast<std::size_t>(n_signed);

    Vector values;
    std::string token;
    while (in >> token) {
        std::istringstream ts(token);
        double v;
        if (!(ts >> v) || ts.rdbuf()->in_avail() != 0)
            throw parse_error("non-numeric token: " + token);
        if (!std::isfinite(v))
            throw parse_error("non-finite value in problem file");
        values.push_back(v);
    }

    if (values.size() != n * n && values.size() != n * n + n)
        throw parse_error("problem file holds the wrong number of values");

    Vector entries(values.begin(), values.begin() + static_cast<long>(n * n));
    ProblemFile pf{DenseMatrix(n, std::move(entries)), std::nullopt};
    if (values.size() == n * n + n)
        pf.b = Vector(values.begin() + static_cast<long>(n * n), values.end());
    return pf;
}

inline ProblemFile load_problem(const std::string& path)
{
    std::ifstream in(path);
    if (!in) throw parse_error("cannot open problem file: " + path);
    try {
        return parse_problem(in);
    } catch (const std::invalid_argument& e) {
        throw parse_error(std::string(e.what()) + " (" + path + ")");
    }
}

/// 17 significant digits: doubles round-trip losslessly through the text form.
inline std::string format_number(double v)
{
    std::ostringstream out;
    out.precision(17);
    out << v;
    return out.str();
}

inline std::string emit_problem(const ProblemFile& pf)
{
    std::ostringstream out;
    const std::size_t n = pf.A.order();
    out << n << '\n';
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j)
            out << (j ? " " : "") << format_number(pf.A(i, j));
        out << '\n';
    }
    if (pf.b) {
        for (std::size_t j = 0; j < n; ++j)
            out << (j ? " " : "") << format_number((*pf.b)[j]);
        out << '\n';
    }
    return out.str();
}

} // namespace avecert

#endif // AVECERT_PROBLEM_IO_HPP
