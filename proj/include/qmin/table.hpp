#pragma once

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <span>
#include <variant>
#include <vector>

#include "qmin/random.hpp"

namespace qmin {

using Value = std::int64_t;

/// 1-based rank; ties share the rank of the first tied position.
struct Rank {
    std::size_t r = 1;
    auto operator<=>(const Rank&) const = default;
};

/// Immutable input table. Keeps a value-sorted index order so that the marked
/// prefix {j : T[j] < v} can be counted and sampled without a scan.
class Table {
public:
    /// Throws std::invalid_argument if `values` is empty, or if `distinct` is
    /// claimed but violated.
    explicit Table(std::vector<Value> values, bool distinct = false);

    std::size_t size() const noexcept { return values_.size(); }
    Value operator[](std::size_t i) const { return values_[i]; }
    std::span<const Value> values() const noexcept { return values_; }
    bool distinct() const noexcept { return distinct_; }

    Value min_value() const noexcept { return sorted_values_.front(); }
    bool is_minimum(std::size_t i) const { return values_.at(i) == min_value(); }

    /// Number of entries strictly below v.
    std::size_t count_less(Value v) const noexcept;
    /// Number of entries equal to v.
    std::size_t count_equal(Value v) const noexcept;

    /// Index at position `pos` of the stable value-sorted order.
    std::size_t sorted_index(std::size_t pos) const { return order_[pos]; }

private:
    std::vector<Value> values_;
    std::vector<Value> sorted_values_;
    std::vector<std::size_t> order_;
    bool distinct_;
};

/// Marks every j with T[j] < T[y].
class ThresholdOracle {
public:
    /// Throws std::out_of_range if y is not an index of the table.
    ThresholdOracle(const Table& table, std::size_t threshold_index);

    std::size_t size() const noexcept { return table_->size(); }
    std::size_t threshold_index() const noexcept { return y_; }
    bool is_marked(std::size_t j) const { return (*table_)[j] < threshold_; }
    std::size_t marked_count() const noexcept { return t_; }

    /// Uniform draws within the marked / unmarked classes. Class must be non-empty.
    std::size_t sample_marked(Rng& rng) const;
    std::size_t sample_unmarked(Rng& rng) const;

private:
    const Table* table_;
    std::size_t y_;
    Value threshold_;
    std::size_t t_;
};

std::size_t marked_count(const ThresholdOracle& oracle);

/// 1 + |{j : T[j] < T[i]}|. Throws std::out_of_range.
Rank rank_of(const Table& table, std::size_t i);

struct DistinctPermutation {};
struct Duplicates {
    std::size_t distinct_values = 1;
};
using TableMode = std::variant<DistinctPermutation, Duplicates>;

/// Distinct mode: uniform permutation of 0..n-1. Duplicates(k): each entry
/// uniform over k values. Throws std::invalid_argument for n == 0 or bad k.
Table generate_table(std::size_t n, const TableMode& mode, Rng& rng);

/// Newline-delimited decimal integers; blank lines ignored.
/// Throws std::runtime_error on malformed input.
Table read_table(std::istream& in);
void write_table(std::ostream& out, const Table& table);

}  // namespace qmin
