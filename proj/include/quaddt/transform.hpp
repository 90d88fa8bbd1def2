#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "quaddt/envelope.hpp"
#include "quaddt/errors.hpp"

namespace quaddt {

/// Optimization sense. One sense applies to every axis of a transform;
/// mixing min and max across axes is not a separable problem and is not
/// supported.
enum class Sense { Min, Max };

/// Row-major N-dimensional array of finite reals.
struct Grid {
    std::vector<std::int64_t> extents;
    std::vector<double> data;

    std::size_t rank() const { return extents.size(); }
    std::size_t size() const { return data.size(); }

    /// Checks rank >= 1, extents >= 1, data length, finiteness. Throws
    /// InputError on violation.
    void validate() const;

    static Grid full(std::vector<std::int64_t> extents, double fill);
};

/// What to compute: sense, per-axis quadratic costs, optional pass order,
/// optional per-axis optimizer grids.
struct TransformSpec {
    Sense sense = Sense::Min;
    std::vector<AxisParams> axes;
    std::optional<std::vector<int>> axis_order;
    bool want_argmax = false;
};

/// Aggregate instrumentation over all 1D envelope builds of a transform.
struct TransformStats {
    std::uint64_t inner_iterations = 0;
    /// Total outer-loop steps, i.e. sum of (lane length - 1) over builds.
    std::uint64_t outer_iterations = 0;
    std::uint64_t lane_builds = 0;
};

struct TransformResult {
    Grid values;
    /// One grid per axis (original axis index, same extents as values):
    /// argmax[d] holds the axis-d coordinate of the optimizing input point.
    /// Empty unless TransformSpec.want_argmax.
    std::vector<std::vector<std::int32_t>> argmax;
    TransformStats stats;
};

struct LaneResult {
    std::vector<double> values;
    std::vector<std::int32_t> argopt;
    EnvelopeStats stats;
};

/// 1D min/max distance transform of a lane. Dispatches on (sense, sign of
/// alpha) onto the two envelope kernels using the duality
///     max I + a(p-x)^2 + b(p-x) = -min (-I) + (-a)(p-x)^2 + (-b)(p-x):
///
///     MAX, alpha > 0  -> upper envelope directly
///     MIN, alpha > 0  -> lower envelope directly
///     MAX, alpha < 0  -> negate I, alpha, beta; lower envelope; negate values
///     MIN, alpha < 0  -> negate I, alpha, beta; upper envelope; negate values
///
/// argopt passes through negation unchanged. Throws ParamError for
/// alpha = 0, InputError for non-finite lanes.
LaneResult dt_1d(std::span<const double> lane, AxisParams params, Sense sense);

/// Separable N-D transform: applies dt_1d along each axis (in
/// spec.axis_order, default 0..rank-1), each pass consuming the previous
/// pass's output. Lanes within one pass are independent; passes are
/// sequential. threads > 1 splits the lanes of each pass across that many
/// worker threads (results and stats are identical regardless).
///
/// With want_argmax, each pass records its own 1D optimizer indices and
/// re-indexes the grids of earlier axes through them, so argmax[d] ends up
/// holding the axis-d coordinate of the input point attaining values at
/// each output point.
TransformResult dt_nd(const Grid& grid, const TransformSpec& spec, int threads = 1);

}  // namespace quaddt
