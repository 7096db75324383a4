#include "hdq/stats.hpp"

#include <algorithm>

#include "hdq/errors.hpp"

namespace hdq {
namespace {

void require_margins(const ContingencyTable& t) {
    if (t.n() == 0)
        throw Error(ErrorCode::ZeroMargin, "contingency table is empty");
    if (t.margin_a() == 0 || t.margin_a() == t.n() || t.margin_b() == 0 ||
        t.margin_b() == t.n())
        throw Error(ErrorCode::ZeroMargin,
                    "a row or column margin of the 2x2 table is zero");
}

}  // namespace

ContingencyTable contingency(const AssignmentMatrix& m, DimensionId a,
                             DimensionId b) {
    if (a == b)
        throw Error(ErrorCode::SamePair,
                    "contingency of a dimension with itself");
    std::size_t col_a = m.column_of(a);
    std::size_t col_b = m.column_of(b);
    ContingencyTable t;
    for (std::size_t row = 0; row < m.problem_count(); ++row) {
        bool in_a = m.assigned(row, col_a);
        bool in_b = m.assigned(row, col_b);
        if (in_a && in_b) ++t.both;
        else if (in_a) ++t.a_only;
        else if (in_b) ++t.b_only;
        else ++t.neither;
    }
    return t;
}

std::array<double, 4> expected(const ContingencyTable& t) {
    require_margins(t);
    double n = static_cast<double>(t.n());
    double row_a = static_cast<double>(t.margin_a());
    double row_not_a = n - row_a;
    double col_b = static_cast<double>(t.margin_b());
    double col_not_b = n - col_b;
    return {row_a * col_b / n, row_a * col_not_b / n, row_not_a * col_b / n,
            row_not_a * col_not_b / n};
}

double chi_square(const ContingencyTable& t) {
    auto e = expected(t);
    const double observed[4] = {
        static_cast<double>(t.both), static_cast<double>(t.a_only),
        static_cast<double>(t.b_only), static_cast<double>(t.neither)};
    double term[4];
    for (int i = 0; i < 4; ++i) {
        double diff = observed[i] - e[i];
        term[i] = diff * diff / e[i];
    }
    // Grouped so that exchanging the two dimensions (which swaps the
    // a_only/b_only terms) produces a bit-identical sum.
    return (term[0] + term[3]) + (term[1] + term[2]);
}

OrthogonalityMatrix::OrthogonalityMatrix(
    std::vector<DimensionId> retained, std::vector<ChiSquareResult> results,
    std::vector<ExcludedDimension> excluded, std::size_t problem_count)
    : retained_(std::move(retained)),
      results_(std::move(results)),
      excluded_(std::move(excluded)),
      problem_count_(problem_count) {}

const ChiSquareResult& OrthogonalityMatrix::at(DimensionId a,
                                               DimensionId b) const {
    if (a == b) throw Error(ErrorCode::SamePair, "no self-pair results");
    if (static_cast<int>(a) > static_cast<int>(b)) std::swap(a, b);
    for (const auto& r : results_)
        if (r.first == a && r.second == b) return r;
    throw Error(ErrorCode::UnknownDimension,
                "pair (" + std::string(dimension_key(a)) + ", " +
                    std::string(dimension_key(b)) +
                    ") is not part of this analysis");
}

OrthogonalityMatrix pairwise_independence(const AssignmentMatrix& m,
                                          double alpha, double critical) {
    (void)alpha;  // recorded in reports; the cut-off itself is `critical`
    if (m.problem_count() == 0)
        throw Error(ErrorCode::EmptyMatrix, "matrix has no problem rows");

    std::vector<DimensionId> retained;
    std::vector<ExcludedDimension> excluded;
    for (std::size_t col = 0; col < m.dimensions().size(); ++col) {
        if (m.column_sum(col) == 0)
            excluded.push_back(
                {m.dimensions()[col],
                 "zero marginal frequency: assigned to no problem"});
        else
            retained.push_back(m.dimensions()[col]);
    }

    // Canonical pair order: registry order of the retained columns.
    std::vector<DimensionId> ordered = retained;
    std::sort(ordered.begin(), ordered.end());

    std::vector<ChiSquareResult> results;
    results.reserve(ordered.size() * (ordered.size() - 1) / 2);
    for (std::size_t i = 0; i + 1 < ordered.size(); ++i) {
        for (std::size_t j = i + 1; j < ordered.size(); ++j) {
            ChiSquareResult r;
            r.first = ordered[i];
            r.second = ordered[j];
            r.critical_value = critical;
            ContingencyTable t = contingency(m, r.first, r.second);
            // A column assigned to every problem carries no information;
            // the statistic is 0 rather than undefined.
            if (t.margin_a() == t.n() || t.margin_b() == t.n())
                r.statistic = 0.0;
            else
                r.statistic = chi_square(t);
            r.significant = r.statistic > critical;
            results.push_back(r);
        }
    }
    return OrthogonalityMatrix(std::move(ordered), std::move(results),
                               std::move(excluded), m.problem_count());
}

std::set<std::size_t> solve_overlap(std::size_t margin_a, std::size_t margin_b,
                                    std::size_t n, double target_chi2,
                                    double tol) {
    std::set<std::size_t> solutions;
    std::size_t low = margin_a + margin_b > n ? margin_a + margin_b - n : 0;
    std::size_t high = std::min(margin_a, margin_b);
    for (std::size_t both = low; both <= high; ++both) {
        ContingencyTable t;
        t.both = both;
        t.a_only = margin_a - both;
        t.b_only = margin_b - both;
        t.neither = n - margin_a - margin_b + both;
        if (std::abs(chi_square(t) - target_chi2) <= tol)
            solutions.insert(both);
    }
    return solutions;
}

std::vector<ChiSquareResult> top_pairs(const OrthogonalityMatrix& om,
                                       std::size_t k) {
    std::vector<ChiSquareResult> sorted = om.results();
    std::stable_sort(sorted.begin(), sorted.end(),
                     [](const ChiSquareResult& a, const ChiSquareResult& b) {
                         if (a.statistic != b.statistic)
                             return a.statistic > b.statistic;
                         if (a.first != b.first) return a.first < b.first;
                         return a.second < b.second;
                     });
    if (k < sorted.size()) sorted.resize(k);
    return sorted;
}

}  // namespace hdq
