#pragma once

#include <optional>
#include <vector>

#include "kstab/rat.hpp"

namespace kstab::linalg {

using Mat = std::vector<Vec>;  // row-major

Rat det(Mat m);
/// Rank of the row space.
int rank(const Mat& rows);
/// Unique solution of the square system m x = rhs, or nullopt if singular.
std::optional<Vec> solve(Mat m, Vec rhs);
/// Basis of {x : row . x = 0 for every row}, in `cols` unknowns.
std::vector<Vec> kernel(const Mat& rows, std::size_t cols);
/// Normal to the hyperplane through d affinely independent points in R^d
/// (generalized cross product of the edge vectors). Zero if degenerate.
Vec hyperplane_normal(const std::vector<const Vec*>& pts);

}  // namespace kstab::linalg
