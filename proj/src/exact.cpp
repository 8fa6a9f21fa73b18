#include "perslap/exact.hpp"

#include <cstddef>
#include <utility>

namespace perslap::exact {

namespace {

// Gauss-Jordan over the rationals. Returns the pivot column of every pivot
// row, in order; the matrix is left in reduced row-echelon form.
std::vector<std::size_t> reduce(Mat& m) {
    std::vector<std::size_t> pivots;
    if (m.empty()) return pivots;
    const std::size_t rows = m.size();
    const std::size_t cols = m[0].size();

    std::size_t row = 0;
    for (std::size_t col = 0; col < cols && row < rows; ++col) {
        std::size_t pivot = row;
        while (pivot < rows && m[pivot][col] == 0) ++pivot;
        if (pivot == rows) continue;
        std::swap(m[row], m[pivot]);

        const Rational inv = m[row][col];
        for (std::size_t c = col; c < cols; ++c) m[row][c] /= inv;
        for (std::size_t r = 0; r < rows; ++r) {
            if (r == row || m[r][col] == 0) continue;
            const Rational f = m[r][col];
            for (std::size_t c = col; c < cols; ++c) m[r][c] -= f * m[row][c];
        }
        pivots.push_back(col);
        ++row;
    }
    return pivots;
}

} // namespace

int rank(Mat m) { return static_cast<int>(reduce(m).size()); }

std::vector<std::vector<Rational>> kernel_basis(const Mat& m) {
    if (m.empty()) return {};
    const std::size_t cols = m[0].size();
    Mat work = m;
    const std::vector<std::size_t> pivots = reduce(work);

    std::vector<bool> is_pivot(cols, false);
    for (std::size_t c : pivots) is_pivot[c] = true;

    std::vector<std::vector<Rational>> basis;
    for (std::size_t free_col = 0; free_col < cols; ++free_col) {
        if (is_pivot[free_col]) continue;
        std::vector<Rational> v(cols, Rational(0));
        v[free_col] = 1;
        // each pivot row reads x_pivot + sum(coeff * x_free) = 0
        for (std::size_t r = 0; r < pivots.size(); ++r)
            v[pivots[r]] = -work[r][free_col];
        basis.push_back(std::move(v));
    }
    return basis;
}

namespace {

std::vector<std::size_t> reduce_z2(std::vector<std::vector<std::uint8_t>>& m) {
    std::vector<std::size_t> pivots;
    if (m.empty()) return pivots;
    const std::size_t rows = m.size();
    const std::size_t cols = m[0].size();

    std::size_t row = 0;
    for (std::size_t col = 0; col < cols && row < rows; ++col) {
        std::size_t pivot = row;
        while (pivot < rows && (m[pivot][col] & 1u) == 0) ++pivot;
        if (pivot == rows) continue;
        std::swap(m[row], m[pivot]);
        for (std::size_t r = 0; r < rows; ++r) {
            if (r == row || (m[r][col] & 1u) == 0) continue;
            for (std::size_t c = col; c < cols; ++c)
                m[r][c] = static_cast<std::uint8_t>((m[r][c] ^ m[row][c]) & 1u);
        }
        pivots.push_back(col);
        ++row;
    }
    return pivots;
}

} // namespace

int rank_z2(std::vector<std::vector<std::uint8_t>> m) {
    for (auto& row : m)
        for (auto& x : row) x &= 1u;
    return static_cast<int>(reduce_z2(m).size());
}

std::vector<std::vector<std::uint8_t>>
kernel_basis_z2(const std::vector<std::vector<std::uint8_t>>& m) {
    if (m.empty()) return {};
    const std::size_t cols = m[0].size();
    auto work = m;
    for (auto& row : work)
        for (auto& x : row) x &= 1u;
    const std::vector<std::size_t> pivots = reduce_z2(work);

    std::vector<bool> is_pivot(cols, false);
    for (std::size_t c : pivots) is_pivot[c] = true;

    std::vector<std::vector<std::uint8_t>> basis;
    for (std::size_t free_col = 0; free_col < cols; ++free_col) {
        if (is_pivot[free_col]) continue;
        std::vector<std::uint8_t> v(cols, 0);
        v[free_col] = 1;
        for (std::size_t r = 0; r < pivots.size(); ++r)
            v[pivots[r]] = work[r][free_col]; // -x == x over GF(2)
        basis.push_back(std::move(v));
    }
    return basis;
}

} // namespace perslap::exact
