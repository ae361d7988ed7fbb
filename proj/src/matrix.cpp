#include "polarlens/matrix.hpp"

#include <algorithm>
#include <unordered_set>

namespace polarlens {

namespace {

void check_unique(const std::vector<std::string>& ids, const char* what) {
    std::unordered_set<std::string> seen;
    for (const auto& id : ids)
        if (!seen.insert(id).second)
            throw DataError(std::string("duplicate ") + what + " id '" + id + "' in matrix");
}

} // namespace

InteractionMatrix::InteractionMatrix(int year, std::vector<std::string> row_ids,
                                     std::vector<std::string> col_ids,
                                     std::vector<Triplet> triplets)
    : year_(year), row_ids_(std::move(row_ids)), col_ids_(std::move(col_ids)),
      counts_(std::move(triplets)) {
    check_unique(row_ids_, "row");
    check_unique(col_ids_, "column");

    std::sort(counts_.begin(), counts_.end(), [](const Triplet& a, const Triplet& b) {
        return a.row != b.row ? a.row < b.row : a.col < b.col;
    });

    rows_.resize(row_ids_.size());
    cols_.resize(col_ids_.size());
    row_sums_.assign(row_ids_.size(), 0);
    col_sums_.assign(col_ids_.size(), 0);

    for (std::size_t k = 0; k < counts_.size(); ++k) {
        const Triplet& t = counts_[k];
        if (t.row >= row_ids_.size() || t.col >= col_ids_.size())
            throw DataError("matrix entry addresses invalid (row, col) pair");
        if (t.count < 1) throw DataError("matrix entry with count < 1");
        if (k > 0 && counts_[k - 1].row == t.row && counts_[k - 1].col == t.col)
            throw DataError("duplicate matrix entry at (row, col)");
        rows_[t.row].push_back({t.col, t.count});
        cols_[t.col].push_back({t.row, t.count});
        row_sums_[t.row] += t.count;
        col_sums_[t.col] += t.count;
        total_ += t.count;
    }

    for (std::uint32_t i = 0; i < row_ids_.size(); ++i) row_index_.emplace(row_ids_[i], i);
    for (std::uint32_t j = 0; j < col_ids_.size(); ++j) col_index_.emplace(col_ids_[j], j);
}

std::vector<std::int64_t> InteractionMatrix::column_vector(std::size_t j) const {
    if (j >= col_ids_.size())
        throw std::out_of_range("column index " + std::to_string(j) + " out of range (cols=" +
                                std::to_string(col_ids_.size()) + ")");
    std::vector<std::int64_t> v(row_ids_.size(), 0);
    for (const ColEntry& e : cols_[j]) v[e.row] = e.count;
    return v;
}

std::int64_t InteractionMatrix::count_at(std::size_t i, std::size_t j) const {
    const auto& row = rows_.at(i);
    auto it = std::lower_bound(row.begin(), row.end(), j,
                               [](const RowEntry& e, std::size_t col) { return e.col < col; });
    if (it == row.end() || it->col != j) return 0;
    return it->count;
}

int InteractionMatrix::row_index(const std::string& user_id) const {
    auto it = row_index_.find(user_id);
    return it == row_index_.end() ? -1 : static_cast<int>(it->second);
}

int InteractionMatrix::col_index(const std::string& influencer_id) const {
    auto it = col_index_.find(influencer_id);
    return it == col_index_.end() ? -1 : static_cast<int>(it->second);
}

} // namespace polarlens
