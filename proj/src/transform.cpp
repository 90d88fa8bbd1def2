#include "quaddt/transform.hpp"

#include <algorithm>
#include <cmath>
#include <exception>
#include <numeric>
#include <string>
#include <thread>
#include <utility>

namespace quaddt {

namespace {

void validate_axis_params(AxisParams params, const std::string& which) {
    if (!std::isfinite(params.alpha) || !std::isfinite(params.beta)) {
        throw ParamError(which + ": alpha and beta must be finite");
    }
    if (params.alpha == 0.0) {
        throw ParamError(which + ": alpha must be nonzero (parabolas degenerate "
                                 "to lines at alpha = 0)");
    }
}

// Per-worker scratch; reused across lanes so the hot loop never reallocates.
struct LaneWork {
    std::vector<double> negated;
    std::vector<double> values;
    std::vector<std::int32_t> argopt;
    std::vector<std::int32_t> index_tmp;
    Envelope env;
    EnvelopeStats stats;
};

// Runs the dispatch table on one lane. lane holds the original (unnegated)
// values. Results land in work.values / work.argopt / work.stats.
void dt_lane(std::span<const double> lane, AxisParams params, Sense sense,
             LaneWork& work) {
    const bool upward = params.alpha > 0.0;
    const bool use_upper = (sense == Sense::Max) == upward;
    const bool negate = !upward;

    std::span<const double> input = lane;
    AxisParams kernel_params = params;
    if (negate) {
        work.negated.resize(lane.size());
        for (std::size_t i = 0; i < lane.size(); ++i) work.negated[i] = -lane[i];
        input = work.negated;
        kernel_params = AxisParams{-params.alpha, -params.beta};
    }

    work.values.resize(lane.size());
    work.argopt.resize(lane.size());
    if (use_upper) {
        build_upper_envelope(input, kernel_params, work.env, work.stats);
        sample_envelope(work.env, input, kernel_params, work.values, work.argopt);
    } else {
        build_lower_envelope(input, kernel_params, work.env, work.stats);
        sample_lower_envelope(work.env, input, kernel_params, work.values, work.argopt);
    }
    if (negate) {
        for (double& v : work.values) v = -v;
    }
}

std::string lane_context(const std::vector<std::int64_t>& extents, int axis,
                         std::size_t base) {
    std::string coords = "(";
    std::size_t stride = 1;
    std::vector<std::size_t> strides(extents.size());
    for (std::size_t d = extents.size(); d-- > 0;) {
        strides[d] = stride;
        stride *= static_cast<std::size_t>(extents[d]);
    }
    for (std::size_t d = 0; d < extents.size(); ++d) {
        if (d) coords += ",";
        if (static_cast<int>(d) == axis) {
            coords += "*";
        } else {
            coords += std::to_string((base / strides[d]) %
                                     static_cast<std::size_t>(extents[d]));
        }
    }
    coords += ")";
    return "axis " + std::to_string(axis) + ", lane " + coords;
}

struct AxisPassLayout {
    std::size_t lane_len;     // extent of the active axis
    std::size_t axis_stride;  // memory step along the active axis
    std::size_t block;        // lane_len * axis_stride
    std::size_t lane_count;
    std::size_t base_offset(std::size_t lane_id) const {
        return (lane_id / axis_stride) * block + (lane_id % axis_stride);
    }
};

AxisPassLayout make_layout(const std::vector<std::int64_t>& extents, int axis) {
    AxisPassLayout lay{};
    std::size_t stride = 1;
    for (std::size_t d = extents.size(); d-- > 0;) {
        if (static_cast<int>(d) == axis) lay.axis_stride = stride;
        stride *= static_cast<std::size_t>(extents[d]);
    }
    lay.lane_len = static_cast<std::size_t>(extents[static_cast<std::size_t>(axis)]);
    lay.block = lay.lane_len * lay.axis_stride;
    lay.lane_count = stride / lay.lane_len;
    return lay;
}

// One separable pass: transform every lane along `axis` in place, recording
// per-axis optimizer indices and re-indexing the argmax grids of earlier
// passes through this pass's own argopt.
void run_axis_pass(Grid& values, int axis, AxisParams params, Sense sense,
                   std::vector<std::int32_t>* new_argmax,
                   std::vector<std::vector<std::int32_t>*>& prior_argmax,
                   TransformStats& stats, int threads) {
    const AxisPassLayout lay = make_layout(values.extents, axis);
    double* data = values.data.data();

    auto run_range = [&](std::size_t first, std::size_t last, LaneWork& work,
                         TransformStats& local) {
        std::vector<double> lane_buf(lay.lane_len);
        for (std::size_t lane_id = first; lane_id < last; ++lane_id) {
            const std::size_t base = lay.base_offset(lane_id);
            for (std::size_t j = 0; j < lay.lane_len; ++j) {
                lane_buf[j] = data[base + j * lay.axis_stride];
            }
            try {
                dt_lane(lane_buf, params, sense, work);
            } catch (const InternalError& e) {
                throw InternalError(std::string(e.what()) + " (" +
                                    lane_context(values.extents, axis, base) + ")");
            } catch (const InputError& e) {
                throw InputError(std::string(e.what()) + " (" +
                                 lane_context(values.extents, axis, base) + ")");
            }
            for (std::size_t j = 0; j < lay.lane_len; ++j) {
                data[base + j * lay.axis_stride] = work.values[j];
            }
            if (new_argmax) {
                // Earlier axes first: their lanes must be re-indexed through
                // this pass's argopt before it is written anywhere.
                for (auto* grid : prior_argmax) {
                    work.index_tmp.resize(lay.lane_len);
                    std::int32_t* g = grid->data();
                    for (std::size_t j = 0; j < lay.lane_len; ++j) {
                        work.index_tmp[j] = g[base + j * lay.axis_stride];
                    }
                    for (std::size_t j = 0; j < lay.lane_len; ++j) {
                        g[base + j * lay.axis_stride] =
                            work.index_tmp[static_cast<std::size_t>(work.argopt[j])];
                    }
                }
                std::int32_t* out = new_argmax->data();
                for (std::size_t j = 0; j < lay.lane_len; ++j) {
                    out[base + j * lay.axis_stride] = work.argopt[j];
                }
            }
            local.inner_iterations += work.stats.inner_iterations;
            local.outer_iterations += lay.lane_len - 1;
            local.lane_builds += 1;
        }
    };

    const std::size_t want =
        std::min<std::size_t>(static_cast<std::size_t>(std::max(threads, 1)),
                              lay.lane_count);
    if (want <= 1) {
        LaneWork work;
        run_range(0, lay.lane_count, work, stats);
        return;
    }

    std::vector<TransformStats> partial(want);
    std::vector<std::exception_ptr> errors(want);
    std::vector<std::thread> pool;
    pool.reserve(want);
    const std::size_t chunk = (lay.lane_count + want - 1) / want;
    for (std::size_t t = 0; t < want; ++t) {
        const std::size_t first = t * chunk;
        const std::size_t last = std::min(lay.lane_count, first + chunk);
        pool.emplace_back([&, t, first, last] {
            try {
                LaneWork work;
                run_range(first, last, work, partial[t]);
            } catch (...) {
                errors[t] = std::current_exception();
            }
        });
    }
    for (auto& th : pool) th.join();
    for (std::size_t t = 0; t < want; ++t) {
        if (errors[t]) std::rethrow_exception(errors[t]);
    }
    for (const auto& p : partial) {
        stats.inner_iterations += p.inner_iterations;
        stats.outer_iterations += p.outer_iterations;
        stats.lane_builds += p.lane_builds;
    }
}

}  // namespace

void Grid::validate() const {
    if (extents.empty()) throw InputError("grid rank must be >= 1");
    std::size_t total = 1;
    for (std::size_t d = 0; d < extents.size(); ++d) {
        if (extents[d] < 1) {
            throw InputError("grid extent " + std::to_string(d) +
                             " must be >= 1 (got " + std::to_string(extents[d]) + ")");
        }
        const auto e = static_cast<std::size_t>(extents[d]);
        if (e > (std::size_t{1} << 31) || total > (std::size_t{1} << 62) / e) {
            throw InputError("grid too large");
        }
        total *= e;
    }
    if (total != data.size()) {
        throw InputError("grid data length " + std::to_string(data.size()) +
                         " does not match extents product " + std::to_string(total));
    }
    for (std::size_t i = 0; i < data.size(); ++i) {
        if (!std::isfinite(data[i])) {
            throw InputError("grid value at flat index " + std::to_string(i) +
                             " is not finite");
        }
    }
}

Grid Grid::full(std::vector<std::int64_t> extents, double fill) {
    Grid g;
    g.extents = std::move(extents);
    std::size_t total = 1;
    for (auto e : g.extents) total *= static_cast<std::size_t>(e);
    g.data.assign(total, fill);
    return g;
}

LaneResult dt_1d(std::span<const double> lane, AxisParams params, Sense sense) {
    validate_axis_params(params, "dt_1d");
    LaneWork work;
    dt_lane(lane, params, sense, work);
    return LaneResult{std::move(work.values), std::move(work.argopt),
                      std::move(work.stats)};
}

TransformResult dt_nd(const Grid& grid, const TransformSpec& spec, int threads) {
    grid.validate();
    const std::size_t m = grid.rank();
    if (spec.axes.size() != m) {
        throw ParamError("spec has " + std::to_string(spec.axes.size()) +
                         " axis parameter(s) for a rank-" + std::to_string(m) +
                         " grid");
    }
    for (std::size_t d = 0; d < m; ++d) {
        validate_axis_params(spec.axes[d], "axis " + std::to_string(d));
    }
    std::vector<int> order;
    if (spec.axis_order) {
        order = *spec.axis_order;
        if (order.size() != m) {
            throw ParamError("axis_order length does not match grid rank");
        }
        std::vector<bool> seen(m, false);
        for (int a : order) {
            if (a < 0 || static_cast<std::size_t>(a) >= m ||
                seen[static_cast<std::size_t>(a)]) {
                throw ParamError("axis_order is not a permutation of 0.." +
                                 std::to_string(m - 1));
            }
            seen[static_cast<std::size_t>(a)] = true;
        }
    } else {
        order.resize(m);
        std::iota(order.begin(), order.end(), 0);
    }
    if (threads < 1) throw ParamError("threads must be >= 1");

    TransformResult result;
    result.values = grid;
    if (spec.want_argmax) {
        result.argmax.assign(m, std::vector<std::int32_t>(grid.size()));
    }

    std::vector<std::vector<std::int32_t>*> prior;
    for (int axis : order) {
        std::vector<std::int32_t>* own =
            spec.want_argmax ? &result.argmax[static_cast<std::size_t>(axis)]
                             : nullptr;
        run_axis_pass(result.values, axis, spec.axes[static_cast<std::size_t>(axis)],
                      spec.sense, own, prior, result.stats, threads);
        if (spec.want_argmax) prior.push_back(own);
    }
    return result;
}

}  // namespace quaddt
