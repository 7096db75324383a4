#pragma once

#include <array>
#include <cstddef>
#include <set>
#include <string>
#include <vector>

#include "hdq/matrix.hpp"

namespace hdq {

/// 2x2 joint counts for a dimension pair over the problem rows of an
/// assignment matrix: assigned to both, to exactly one, or to neither.
struct ContingencyTable {
    std::size_t both = 0;
    std::size_t a_only = 0;
    std::size_t b_only = 0;
    std::size_t neither = 0;

    std::size_t n() const { return both + a_only + b_only + neither; }
    std::size_t margin_a() const { return both + a_only; }
    std::size_t margin_b() const { return both + b_only; }

    friend bool operator==(const ContingencyTable&,
                           const ContingencyTable&) = default;
};

/// Joint counts of two dimension columns. Throws Error(SamePair) when
/// a == b and Error(UnknownDimension) for columns the matrix lacks.
ContingencyTable contingency(const AssignmentMatrix& m, DimensionId a,
                             DimensionId b);

/// Expected cell frequencies under independence, margin products over n:
/// {both, a_only, b_only, neither}. Their sum equals n.
/// Throws Error(ZeroMargin) when any row or column margin is zero.
std::array<double, 4> expected(const ContingencyTable& t);

/// Pearson chi-square statistic, sum of (observed-expected)^2/expected over
/// the four cells. Ranges over [0, n] for a 2x2 table.
/// Throws Error(ZeroMargin) when any margin is zero.
double chi_square(const ContingencyTable& t);

/// 1% significance cut-off for one degree of freedom.
inline constexpr double kDefaultCriticalValue = 6.63;

struct ChiSquareResult {
    DimensionId first;   // canonical order: registry order, first < second
    DimensionId second;
    double statistic = 0.0;
    double critical_value = kDefaultCriticalValue;
    bool significant = false;  // statistic > critical_value

    friend bool operator==(const ChiSquareResult&,
                           const ChiSquareResult&) = default;
};

struct ExcludedDimension {
    DimensionId dimension;
    std::string reason;
};

/// All pairwise chi-square results over the retained dimensions of one
/// matrix. Dimensions whose column sum is zero are excluded up front; the
/// lower triangle holds k(k-1)/2 results for k retained dimensions.
class OrthogonalityMatrix {
public:
    OrthogonalityMatrix(std::vector<DimensionId> retained,
                        std::vector<ChiSquareResult> results,
                        std::vector<ExcludedDimension> excluded,
                        std::size_t problem_count);

    const std::vector<DimensionId>& dimensions() const { return retained_; }
    const std::vector<ChiSquareResult>& results() const { return results_; }
    const std::vector<ExcludedDimension>& excluded() const { return excluded_; }
    std::size_t problem_count() const { return problem_count_; }

    /// Symmetric lookup; (a, b) and (b, a) return the same result.
    const ChiSquareResult& at(DimensionId a, DimensionId b) const;

private:
    std::vector<DimensionId> retained_;
    std::vector<ChiSquareResult> results_;
    std::vector<ExcludedDimension> excluded_;
    std::size_t problem_count_;
};

/// Runs the pairwise independence analysis: excludes zero-marginal
/// dimensions with a recorded reason, computes the chi-square statistic for
/// every retained pair and flags values exceeding `critical` as significant
/// at level `alpha`. Throws Error(EmptyMatrix) when the matrix has no rows.
OrthogonalityMatrix pairwise_independence(
    const AssignmentMatrix& m, double alpha = 0.01,
    double critical = kDefaultCriticalValue);

/// All integer overlap counts `both` within the feasible range for the
/// given margins whose chi-square lies within `tol` of `target_chi2`.
/// A test utility for reconstructing contingency tables from marginal
/// counts; an empty result is a valid answer.
std::set<std::size_t> solve_overlap(std::size_t margin_a, std::size_t margin_b,
                                    std::size_t n, double target_chi2,
                                    double tol);

/// The k largest results, statistic descending, ties in canonical pair
/// order. k beyond the result count returns everything.
std::vector<ChiSquareResult> top_pairs(const OrthogonalityMatrix& om,
                                       std::size_t k);

}  // namespace hdq
