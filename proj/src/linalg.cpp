#include "linalg.hpp"

#include <algorithm>
#include <stdexcept>

namespace piq::detail {

EchelonBasis::EchelonBasis(std::size_t columns, Field field) : columns_(columns), field_(field) {}

bool EchelonBasis::add(std::vector<Rational> row)
{
    if (row.size() != columns_)
        throw std::invalid_argument("row has the wrong number of columns");
    for (auto& x : row)
        x = field_.reduce(x);
    for (std::size_t r = 0; r < rows_.size(); ++r) {
        Rational c = row[pivots_[r]];
        if (c == 0)
            continue;
        for (std::size_t j = 0; j < columns_; ++j)
            if (rows_[r][j] != 0)
                row[j] = field_.reduce(row[j] - c * rows_[r][j]);
    }
    auto lead = std::find_if(row.begin(), row.end(), [](const Rational& x) { return x != 0; });
    if (lead == row.end())
        return false;
    std::size_t p = static_cast<std::size_t>(lead - row.begin());
    Rational inv = field_.reduce(1 / row[p]);
    for (auto& x : row)
        x = field_.reduce(x * inv);
    // keep the existing rows reduced in the new pivot column
    for (auto& other : rows_) {
        Rational c = other[p];
        if (c == 0)
            continue;
        for (std::size_t j = 0; j < columns_; ++j)
            if (row[j] != 0)
                other[j] = field_.reduce(other[j] - c * row[j]);
    }
    rows_.push_back(std::move(row));
    pivots_.push_back(p);
    return true;
}

std::vector<std::size_t> EchelonBasis::free_columns() const
{
    std::vector<char> is_pivot(columns_, 0);
    for (auto p : pivots_)
        is_pivot[p] = 1;
    std::vector<std::size_t> out;
    for (std::size_t j = 0; j < columns_; ++j)
        if (!is_pivot[j])
            out.push_back(j);
    return out;
}

std::vector<std::vector<Rational>> EchelonBasis::kernel() const
{
    std::vector<std::vector<Rational>> out;
    for (std::size_t f : free_columns()) {
        std::vector<Rational> v(columns_, 0);
        v[f] = 1;
        for (std::size_t r = 0; r < rows_.size(); ++r)
            v[pivots_[r]] = field_.reduce(-rows_[r][f]);
        out.push_back(std::move(v));
    }
    return out;
}

}  // namespace piq::detail
