#include "quaddt/oracle.hpp"

#include <cassert>
#include <cmath>
#include <string>

namespace quaddt {
namespace oracle {

namespace {

void check_finite_lane(std::span<const double> lane) {
    if (lane.empty()) throw InputError("lane must contain at least one point");
    for (double v : lane) {
        if (!std::isfinite(v)) throw InputError("lane contains a non-finite value");
    }
}

// Row-major odometer over the grid's coordinate tuples.
bool advance(std::vector<std::int32_t>& idx, const std::vector<std::int64_t>& extents) {
    for (std::size_t d = extents.size(); d-- > 0;) {
        if (++idx[d] < extents[d]) return true;
        idx[d] = 0;
    }
    return false;
}

}  // namespace

BruteLaneResult brute_1d(std::span<const double> lane, AxisParams params, Sense sense) {
    check_finite_lane(lane);
    if (!std::isfinite(params.alpha) || !std::isfinite(params.beta)) {
        throw ParamError("oracle: axis parameters must be finite");
    }
    const int n = static_cast<int>(lane.size());
    BruteLaneResult out;
    out.values.resize(lane.size());
    out.argopt.resize(lane.size());
    const double sign = sense == Sense::Max ? 1.0 : -1.0;
    for (int x = 0; x < n; ++x) {
        double best = -std::numeric_limits<double>::infinity();
        int best_p = 0;
        for (int p = 0; p < n; ++p) {
            const double d = static_cast<double>(p - x);
            const double cost =
                lane[static_cast<std::size_t>(p)] + params.alpha * d * d + params.beta * d;
            if (sign * cost > best) {
                best = sign * cost;
                best_p = p;
            }
        }
        out.values[static_cast<std::size_t>(x)] = sign * best;
        out.argopt[static_cast<std::size_t>(x)] = best_p;
    }
    return out;
}

BruteGridResult brute_nd(const Grid& grid, const TransformSpec& spec,
                         std::size_t max_points) {
    grid.validate();
    const std::size_t m = grid.rank();
    if (spec.axes.size() != m) {
        throw ParamError("oracle: spec rank does not match grid rank");
    }
    if (grid.size() > max_points) {
        throw ParamError("oracle: grid has " + std::to_string(grid.size()) +
                         " points, above the cap of " + std::to_string(max_points) +
                         " (brute force is for desk-scale validation)");
    }

    BruteGridResult out;
    out.values.extents = grid.extents;
    out.values.data.resize(grid.size());
    out.argopt.assign(m, std::vector<std::int32_t>(grid.size()));

    const double sign = spec.sense == Sense::Max ? 1.0 : -1.0;
    std::vector<std::int32_t> x(m, 0);
    std::size_t xi = 0;
    do {
        double best = -std::numeric_limits<double>::infinity();
        std::vector<std::int32_t> best_p;
        std::vector<std::int32_t> p(m, 0);
        std::size_t pi = 0;
        do {
            double cost = grid.data[pi];
            for (std::size_t d = 0; d < m; ++d) {
                const double dd = static_cast<double>(p[d] - x[d]);
                cost += spec.axes[d].alpha * dd * dd;
                cost += spec.axes[d].beta * dd;
            }
            // strict > keeps the lexicographically first tuple on ties
            if (sign * cost > best) {
                best = sign * cost;
                best_p = p;
            }
            ++pi;
        } while (advance(p, grid.extents));
        out.values.data[xi] = sign * best;
        for (std::size_t d = 0; d < m; ++d) out.argopt[d][xi] = best_p[d];
        ++xi;
    } while (advance(x, grid.extents));
    return out;
}

double objective(const Grid& grid, const TransformSpec& spec,
                 std::span<const std::int32_t> p, std::span<const std::int32_t> x) {
    const std::size_t m = grid.rank();
    assert(p.size() == m && x.size() == m);
    std::size_t offset = 0;
    for (std::size_t d = 0; d < m; ++d) {
        offset = offset * static_cast<std::size_t>(grid.extents[d]) +
                 static_cast<std::size_t>(p[d]);
    }
    double cost = grid.data[offset];
    for (std::size_t d = 0; d < m; ++d) {
        const double dd = static_cast<double>(p[d] - x[d]);
        cost += spec.axes[d].alpha * dd * dd;
        cost += spec.axes[d].beta * dd;
    }
    return cost;
}

}  // namespace oracle
}  // namespace quaddt
