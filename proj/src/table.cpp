#include "qmin/table.hpp"

#include <algorithm>
#include <charconv>
#include <istream>
#include <numeric>
#include <ostream>
#include <stdexcept>
#include <string>

namespace qmin {

Table::Table(std::vector<Value> values, bool distinct)
    : values_(std::move(values)), distinct_(distinct) {
    if (values_.empty()) throw std::invalid_argument("table must hold at least one value");
    order_.resize(values_.size());
    std::iota(order_.begin(), order_.end(), std::size_t{0});
    std::stable_sort(order_.begin(), order_.end(),
                     [&](std::size_t a, std::size_t b) { return values_[a] < values_[b]; });
    sorted_values_.reserve(values_.size());
    for (auto i : order_) sorted_values_.push_back(values_[i]);
    if (distinct_ && std::adjacent_find(sorted_values_.begin(), sorted_values_.end()) != sorted_values_.end())
        throw std::invalid_argument("table flagged distinct contains duplicate values");
}

std::size_t Table::count_less(Value v) const noexcept {
    return static_cast<std::size_t>(std::lower_bound(sorted_values_.begin(), sorted_values_.end(), v) -
                                    sorted_values_.begin());
}

std::size_t Table::count_equal(Value v) const noexcept {
    auto [lo, hi] = std::equal_range(sorted_values_.begin(), sorted_values_.end(), v);
    return static_cast<std::size_t>(hi - lo);
}

ThresholdOracle::ThresholdOracle(const Table& table, std::size_t threshold_index)
    : table_(&table), y_(threshold_index) {
    if (y_ >= table.size()) throw std::out_of_range("threshold index out of range");
    threshold_ = table[y_];
    t_ = table.count_less(threshold_);
}

// Marked entries are exactly the first t positions of the sorted order.
std::size_t ThresholdOracle::sample_marked(Rng& rng) const {
    if (t_ == 0) throw std::logic_error("no marked index to sample");
    return table_->sorted_index(uniform_index(rng, 0, t_ - 1));
}

std::size_t ThresholdOracle::sample_unmarked(Rng& rng) const {
    if (t_ == size()) throw std::logic_error("no unmarked index to sample");
    return table_->sorted_index(uniform_index(rng, t_, size() - 1));
}

std::size_t marked_count(const ThresholdOracle& oracle) { return oracle.marked_count(); }

Rank rank_of(const Table& table, std::size_t i) {
    if (i >= table.size()) throw std::out_of_range("rank_of: index out of range");
    return Rank{1 + table.count_less(table[i])};
}

Table generate_table(std::size_t n, const TableMode& mode, Rng& rng) {
    if (n == 0) throw std::invalid_argument("generate_table: n must be positive");
    std::vector<Value> values(n);
    if (std::holds_alternative<DistinctPermutation>(mode)) {
        std::iota(values.begin(), values.end(), Value{0});
        std::shuffle(values.begin(), values.end(), rng);
        return Table{std::move(values), true};
    }
    const auto k = std::get<Duplicates>(mode).distinct_values;
    if (k < 1 || k > n) throw std::invalid_argument("generate_table: need 1 <= k <= n distinct values");
    for (auto& v : values) v = static_cast<Value>(uniform_index(rng, 0, k - 1));
    return Table{std::move(values), false};
}

Table read_table(std::istream& in) {
    std::vector<Value> values;
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        auto first = line.find_first_not_of(" \t\r");
        if (first == std::string::npos) continue;
        auto last = line.find_last_not_of(" \t\r");
        const char* b = line.data() + first;
        const char* e = line.data() + last + 1;
        Value v{};
        auto [ptr, ec] = std::from_chars(b, e, v);
        if (ec != std::errc{} || ptr != e)
            throw std::runtime_error("table line " + std::to_string(line_no) + ": not a 64-bit integer");
        values.push_back(v);
    }
    if (values.empty()) throw std::runtime_error("table file holds no values");
    return Table{std::move(values)};
}

void write_table(std::ostream& out, const Table& table) {
    for (auto v : table.values()) out << v << '\n';
}

}  // namespace qmin
