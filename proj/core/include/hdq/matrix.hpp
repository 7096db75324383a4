#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "hdq/taxonomy.hpp"

namespace hdq {

enum class Cell : std::uint8_t { None = 0, Secondary = 1, Primary = 2 };

/// Binary problems-by-dimensions membership matrix with a primary flag on
/// exactly one cell per problem row.
class AssignmentMatrix {
public:
    AssignmentMatrix(std::vector<std::string> problem_ids,
                     std::vector<DimensionId> dimensions);

    /// Builds the primary-only matrix of a catalog over all 23 dimensions.
    static AssignmentMatrix from_catalog(const Catalog& catalog);

    const std::vector<std::string>& problem_ids() const { return problems_; }
    const std::vector<DimensionId>& dimensions() const { return dimensions_; }
    std::size_t problem_count() const { return problems_.size(); }

    Cell cell(std::size_t row, std::size_t col) const;
    void set(std::size_t row, std::size_t col, Cell value);
    bool assigned(std::size_t row, std::size_t col) const {
        return cell(row, col) != Cell::None;
    }

    std::size_t row_of(std::string_view problem_id) const;
    std::size_t column_of(DimensionId id) const;  // throws UnknownDimension

    std::size_t column_sum(std::size_t col) const;

    /// Exactly one primary per row, unique labels. Throws on violation.
    void check_invariants() const;

    friend bool operator==(const AssignmentMatrix&,
                           const AssignmentMatrix&) = default;

private:
    std::vector<std::string> problems_;
    std::vector<DimensionId> dimensions_;
    std::vector<Cell> cells_;  // row-major
};

/// Matrix CSV: first column `problem_id`, one column per dimension key,
/// cells `0`, `1` (secondary) or `P` (primary).
AssignmentMatrix parse_matrix_csv(std::string_view bytes);
std::string serialize_matrix_csv(const AssignmentMatrix& m);

struct DimensionCount {
    DimensionId dimension;
    std::size_t count;

    friend bool operator==(const DimensionCount&,
                           const DimensionCount&) = default;
};

/// Assigned-cell count per dimension (primary and secondary alike),
/// in the matrix's dimension order.
std::vector<DimensionCount> marginals(const AssignmentMatrix& m);

struct DimensionShare {
    DimensionId dimension;
    std::size_t count;
    double percent;  // count / total assignments * 100

    friend bool operator==(const DimensionShare&,
                           const DimensionShare&) = default;
};

/// Relative assignment frequency per dimension.
/// Throws Error(EmptyMatrix) when the matrix holds no assignments.
std::vector<DimensionShare> distribution(const AssignmentMatrix& m);

}  // namespace hdq
