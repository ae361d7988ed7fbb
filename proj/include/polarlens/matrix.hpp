#pragma once

#include <cstdint>
#include <string>
#include <unordered_map>
#include <vector>

#include "polarlens/errors.hpp"

namespace polarlens {

// Sparse nonnegative user x influencer count matrix for one yearly slice.
// Rows are retweeters, columns influencers; entry (i,j) counts how often user
// i retweeted influencer j. Immutable after construction; row/column order is
// the first-seen order frozen at ingestion. Zero entries are never stored.
class InteractionMatrix {
public:
    struct Triplet {
        std::uint32_t row;
        std::uint32_t col;
        std::int64_t count;
    };

    InteractionMatrix() = default;

    // Triplets may be in any order but must address valid (row, col) pairs,
    // carry counts >= 1, and contain no duplicate coordinates.
    InteractionMatrix(int year, std::vector<std::string> row_ids, std::vector<std::string> col_ids,
                      std::vector<Triplet> triplets);

    int year() const { return year_; }
    const std::vector<std::string>& row_ids() const { return row_ids_; }
    const std::vector<std::string>& col_ids() const { return col_ids_; }
    std::size_t n_rows() const { return row_ids_.size(); }
    std::size_t n_cols() const { return col_ids_.size(); }
    std::size_t n_entries() const { return counts_.size(); }
    bool empty() const { return counts_.empty(); }

    std::int64_t total_count() const { return total_; }

    // Dense materialization of column j (absent entries become 0).
    std::vector<std::int64_t> column_vector(std::size_t j) const;

    std::int64_t col_sum(std::size_t j) const { return col_sums_.at(j); }
    std::int64_t row_sum(std::size_t i) const { return row_sums_.at(i); }
    bool col_is_zero(std::size_t j) const { return col_sums_.at(j) == 0; }

    // Row-major sparse access: entries of row i as (col, count), cols ascending.
    struct RowEntry {
        std::uint32_t col;
        std::int64_t count;
    };
    const std::vector<RowEntry>& row_entries(std::size_t i) const { return rows_.at(i); }

    // Column-major sparse access: entries of column j as (row, count), rows ascending.
    struct ColEntry {
        std::uint32_t row;
        std::int64_t count;
    };
    const std::vector<ColEntry>& col_entries(std::size_t j) const { return cols_.at(j); }

    std::int64_t count_at(std::size_t i, std::size_t j) const;

    int row_index(const std::string& user_id) const; // -1 if absent
    int col_index(const std::string& influencer_id) const;

private:
    int year_ = 0;
    std::vector<std::string> row_ids_;
    std::vector<std::string> col_ids_;
    std::vector<Triplet> counts_; // sorted by (row, col)
    std::vector<std::vector<RowEntry>> rows_;
    std::vector<std::vector<ColEntry>> cols_;
    std::vector<std::int64_t> row_sums_;
    std::vector<std::int64_t> col_sums_;
    std::int64_t total_ = 0;
    std::unordered_map<std::string, std::uint32_t> row_index_;
    std::unordered_map<std::string, std::uint32_t> col_index_;
};

} // namespace polarlens
