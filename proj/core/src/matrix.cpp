#include "hdq/matrix.hpp"

#include <set>

#include "hdq/errors.hpp"
#include "util/csv.hpp"

namespace hdq {

AssignmentMatrix::AssignmentMatrix(std::vector<std::string> problem_ids,
                                   std::vector<DimensionId> dimensions)
    : problems_(std::move(problem_ids)),
      dimensions_(std::move(dimensions)),
      cells_(problems_.size() * dimensions_.size(), Cell::None) {
    std::set<std::string> seen_problems(problems_.begin(), problems_.end());
    if (seen_problems.size() != problems_.size())
        throw Error(ErrorCode::DuplicateLabel, "duplicate problem row label");
    std::set<DimensionId> seen_dims(dimensions_.begin(), dimensions_.end());
    if (seen_dims.size() != dimensions_.size())
        throw Error(ErrorCode::DuplicateLabel, "duplicate dimension column");
}

AssignmentMatrix AssignmentMatrix::from_catalog(const Catalog& catalog) {
    std::vector<std::string> ids;
    ids.reserve(catalog.size());
    for (const auto& p : catalog.problems()) ids.push_back(p.id);
    std::vector<DimensionId> dims;
    dims.reserve(kDimensionCount);
    for (const auto& d : registry()) dims.push_back(d.id);

    AssignmentMatrix m(std::move(ids), std::move(dims));
    for (std::size_t row = 0; row < catalog.size(); ++row) {
        const auto& p = catalog.problems()[row];
        m.set(row, m.column_of(p.primary_dimension), Cell::Primary);
        for (auto other : p.other_dimensions)
            m.set(row, m.column_of(other), Cell::Secondary);
    }
    return m;
}

Cell AssignmentMatrix::cell(std::size_t row, std::size_t col) const {
    return cells_[row * dimensions_.size() + col];
}

void AssignmentMatrix::set(std::size_t row, std::size_t col, Cell value) {
    cells_[row * dimensions_.size() + col] = value;
}

std::size_t AssignmentMatrix::row_of(std::string_view problem_id) const {
    for (std::size_t i = 0; i < problems_.size(); ++i)
        if (problems_[i] == problem_id) return i;
    throw Error(ErrorCode::UnknownProblemId,
                "no matrix row '" + std::string(problem_id) + "'");
}

std::size_t AssignmentMatrix::column_of(DimensionId id) const {
    for (std::size_t i = 0; i < dimensions_.size(); ++i)
        if (dimensions_[i] == id) return i;
    throw Error(ErrorCode::UnknownDimension,
                "dimension '" + std::string(dimension_key(id)) +
                    "' is not a column of this matrix");
}

std::size_t AssignmentMatrix::column_sum(std::size_t col) const {
    std::size_t n = 0;
    for (std::size_t row = 0; row < problems_.size(); ++row)
        if (assigned(row, col)) ++n;
    return n;
}

void AssignmentMatrix::check_invariants() const {
    for (std::size_t row = 0; row < problems_.size(); ++row) {
        std::size_t primaries = 0;
        for (std::size_t col = 0; col < dimensions_.size(); ++col)
            if (cell(row, col) == Cell::Primary) ++primaries;
        if (primaries != 1)
            throw Error(ErrorCode::MultiplePrimary,
                        "problem '" + problems_[row] + "' has " +
                            std::to_string(primaries) + " primary flags");
    }
}

AssignmentMatrix parse_matrix_csv(std::string_view bytes) {
    auto rows = csv::parse(bytes);
    if (rows.empty() || rows[0].size() < 2 || rows[0][0] != "problem_id")
        throw Error(ErrorCode::MalformedInput,
                    "matrix CSV must start with a problem_id header column");

    std::vector<DimensionId> dims;
    for (std::size_t col = 1; col < rows[0].size(); ++col) {
        auto id = dimension_from_key(rows[0][col]);
        if (!id)
            throw Error(ErrorCode::UnknownDimension,
                        "unknown dimension column '" + rows[0][col] + "'");
        dims.push_back(*id);
    }
    std::vector<std::string> problems;
    for (std::size_t i = 1; i < rows.size(); ++i) {
        if (rows[i].size() != dims.size() + 1)
            throw Error(ErrorCode::MalformedInput,
                        "matrix CSV row " + std::to_string(i + 1) +
                            " has the wrong number of fields");
        problems.push_back(rows[i][0]);
    }

    AssignmentMatrix m(std::move(problems), std::move(dims));
    for (std::size_t i = 1; i < rows.size(); ++i) {
        for (std::size_t col = 1; col < rows[i].size(); ++col) {
            const std::string& value = rows[i][col];
            Cell cell;
            if (value == "0")
                cell = Cell::None;
            else if (value == "1")
                cell = Cell::Secondary;
            else if (value == "P")
                cell = Cell::Primary;
            else
                throw Error(ErrorCode::MalformedInput,
                            "matrix cell must be 0, 1 or P, got '" + value +
                                "'");
            m.set(i - 1, col - 1, cell);
        }
    }
    m.check_invariants();
    return m;
}

std::string serialize_matrix_csv(const AssignmentMatrix& m) {
    std::vector<std::string> header = {"problem_id"};
    for (auto d : m.dimensions()) header.emplace_back(dimension_key(d));
    std::string out = csv::join_row(header);
    for (std::size_t row = 0; row < m.problem_count(); ++row) {
        std::vector<std::string> fields = {m.problem_ids()[row]};
        for (std::size_t col = 0; col < m.dimensions().size(); ++col) {
            switch (m.cell(row, col)) {
            case Cell::None: fields.emplace_back("0"); break;
            case Cell::Secondary: fields.emplace_back("1"); break;
            case Cell::Primary: fields.emplace_back("P"); break;
            }
        }
        out += csv::join_row(fields);
    }
    return out;
}

std::vector<DimensionCount> marginals(const AssignmentMatrix& m) {
    std::vector<DimensionCount> out;
    out.reserve(m.dimensions().size());
    for (std::size_t col = 0; col < m.dimensions().size(); ++col)
        out.push_back({m.dimensions()[col], m.column_sum(col)});
    return out;
}

std::vector<DimensionShare> distribution(const AssignmentMatrix& m) {
    auto counts = marginals(m);
    std::size_t total = 0;
    for (const auto& c : counts) total += c.count;
    if (total == 0)
        throw Error(ErrorCode::EmptyMatrix,
                    "matrix has no assignments to distribute");
    std::vector<DimensionShare> out;
    out.reserve(counts.size());
    for (const auto& c : counts)
        out.push_back({c.dimension, c.count,
                       100.0 * static_cast<double>(c.count) /
                           static_cast<double>(total)});
    return out;
}

}  // namespace hdq
