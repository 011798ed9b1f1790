#pragma once

#include <vector>

#include "piq/path_algebra.hpp"

namespace piq::detail {

/**
 * Row space kept in reduced row echelon form over Q or F_p. Rows arrive one
 * at a time; the kernel of the accumulated matrix is read off at the end.
 */
class EchelonBasis {
public:
    EchelonBasis(std::size_t columns, Field field);

    /// Adds a row; returns whether the rank grew.
    bool add(std::vector<Rational> row);

    std::size_t rank() const { return rows_.size(); }
    std::size_t columns() const { return columns_; }
    bool full() const { return rows_.size() == columns_; }

    /// Columns without a pivot, ascending.
    std::vector<std::size_t> free_columns() const;
    /// One kernel vector per free column: 1 there, 0 at the other free columns.
    std::vector<std::vector<Rational>> kernel() const;

private:
    std::size_t columns_;
    Field field_;
    std::vector<std::vector<Rational>> rows_;
    std::vector<std::size_t> pivots_;  // pivots_[r] is the pivot column of rows_[r]
};

}  // namespace piq::detail
