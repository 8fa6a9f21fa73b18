#pragma once

#include <boost/multiprecision/cpp_int.hpp>
#include <cstdint>
#include <vector>

namespace perslap::exact {

// Exact rational matrices for rank/kernel computations. Row-major; a matrix
// may have zero rows or zero columns (rank 0, kernel = everything).
using Rational = boost::multiprecision::cpp_rational;
using Mat = std::vector<std::vector<Rational>>;

int rank(Mat m); // destructive fraction-free elimination (argument by value)

// Basis of the null space {x : m x = 0}; each entry is one basis vector of
// length = column count. Columns without a pivot yield one vector each, so
// the basis size is cols - rank(m). Entries are integers whenever m is
// integer-valued up to the common denominators introduced by elimination.
std::vector<std::vector<Rational>> kernel_basis(const Mat& m);

// Rank over GF(2); entries taken mod 2.
int rank_z2(std::vector<std::vector<std::uint8_t>> m);

// Null-space basis over GF(2).
std::vector<std::vector<std::uint8_t>>
kernel_basis_z2(const std::vector<std::vector<std::uint8_t>>& m);

} // namespace perslap::exact
