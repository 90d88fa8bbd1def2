#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "quaddt/transform.hpp"

namespace quaddt {
namespace oracle {

/// Exhaustive O(N^2) reference for the 1D transform. Evaluates the unary
/// cost plus displacement objective directly for every (x, p) pair; no code
/// shared with the envelope kernels. alpha may be any finite value,
/// including 0. Ties resolve to the smallest p.
struct BruteLaneResult {
    std::vector<double> values;
    std::vector<std::int32_t> argopt;
};
BruteLaneResult brute_1d(std::span<const double> lane, AxisParams params, Sense sense);

/// Exhaustive reference for the N-D transform: optimum over all candidate
/// coordinate tuples, summing per-axis quadratic costs. Ties resolve to the
/// lexicographically smallest tuple. Work is quadratic in the number of grid
/// points; refuses grids above max_points (desk-scale validation only).
struct BruteGridResult {
    Grid values;
    /// argopt[d][i]: axis-d coordinate of the optimizing tuple for output i.
    std::vector<std::vector<std::int32_t>> argopt;
};
BruteGridResult brute_nd(const Grid& grid, const TransformSpec& spec,
                         std::size_t max_points = 10000);

/// The full objective of spec at output point x and candidate point p:
/// I(p) + sum_d alpha_d*(p_d-x_d)^2 + beta_d*(p_d-x_d). Used to check a
/// transform's argmax output against its value output.
double objective(const Grid& grid, const TransformSpec& spec,
                 std::span<const std::int32_t> p, std::span<const std::int32_t> x);

}  // namespace oracle
}  // namespace quaddt
