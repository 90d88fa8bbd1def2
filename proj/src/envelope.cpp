#include "quaddt/envelope.hpp"

#include <cassert>
#include <cmath>
#include <limits>
#include <string>

namespace quaddt {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

void validate_lane(std::span<const double> lane) {
    if (lane.empty()) throw InputError("lane must contain at least one point");
    for (std::size_t i = 0; i < lane.size(); ++i) {
        if (!std::isfinite(lane[i])) {
            throw InputError("lane value at index " + std::to_string(i) +
                             " is not finite");
        }
    }
}

void require_upward(AxisParams params) {
    if (!std::isfinite(params.alpha) || !std::isfinite(params.beta)) {
        throw ParamError("axis parameters must be finite");
    }
    if (!(params.alpha > 0.0)) {
        throw ParamError("envelope kernels require alpha > 0 (got " +
                         std::to_string(params.alpha) + ")");
    }
}

// I(t) + alpha*t^2 + beta*t, the parabola height over its own grid point's
// axis intercept. Crossings are differences of this.
inline double vertex_offset(std::span<const double> lane, AxisParams params, int t) {
    const double td = static_cast<double>(t);
    return lane[static_cast<std::size_t>(t)] + params.alpha * td * td + params.beta * td;
}

}  // namespace

double parabola_value(int p, int x, std::span<const double> lane, AxisParams params) {
    assert(p >= 0 && static_cast<std::size_t>(p) < lane.size());
    const double dx = static_cast<double>(p - x);
    return lane[static_cast<std::size_t>(p)] + params.alpha * dx * dx + params.beta * dx;
}

double intersect(int p, int q, std::span<const double> lane, AxisParams params) {
    assert(p != q);
    const double num = vertex_offset(lane, params, p) - vertex_offset(lane, params, q);
    const double den = 2.0 * params.alpha * static_cast<double>(p - q);
    const double s = num / den;
    if (!std::isfinite(s)) {
        throw InternalError("degenerate parabola intersection between grid points " +
                            std::to_string(p) + " and " + std::to_string(q));
    }
    return s;
}

void build_upper_envelope(std::span<const double> lane, AxisParams params,
                          Envelope& env, EnvelopeStats& stats) {
    validate_lane(lane);
    require_upward(params);

    const int n = static_cast<int>(lane.size());
    env.v.resize(static_cast<std::size_t>(n));
    env.z.resize(static_cast<std::size_t>(n) + 1);
    stats.inner_iterations = 0;
    stats.per_step_envelope_size.clear();
    stats.per_step_envelope_size.reserve(static_cast<std::size_t>(n - 1));

    auto* v = env.v.data();
    auto* z = env.z.data();

    int k = 0;
    v[0] = 0;
    z[0] = kInf;
    z[1] = -kInf;

    for (int q = 1; q < n; ++q) {
        bool placed = false;
        for (int p = 0; p <= k; ++p) {
            ++stats.inner_iterations;
            const double s = intersect(v[p], q, lane, params);
            // s inside (z[p+1], z[p]]: the new parabola takes everything
            // left of s, truncating v[p] and evicting v[p+1..k].
            if (s > z[p + 1] && s <= z[p]) {
                k = p + 1;
                v[k] = q;
                z[k + 1] = -kInf;
                z[k] = s;
                placed = true;
                break;
            }
        }
        if (!placed) {
            // The ranges tile (-inf, +inf], so in exact arithmetic every
            // parabola lands somewhere.
            throw InternalError("upper envelope scan failed to place grid point " +
                                std::to_string(q));
        }
        stats.per_step_envelope_size.push_back(k + 1);
    }

    env.v.resize(static_cast<std::size_t>(k) + 1);
    env.z.resize(static_cast<std::size_t>(k) + 2);
}

std::pair<Envelope, EnvelopeStats> build_upper_envelope(std::span<const double> lane,
                                                        AxisParams params) {
    Envelope env;
    EnvelopeStats stats;
    build_upper_envelope(lane, params, env, stats);
    return {std::move(env), std::move(stats)};
}

void sample_envelope(const Envelope& env, std::span<const double> lane,
                     AxisParams params, std::span<double> values,
                     std::span<std::int32_t> argmax) {
    const int n = static_cast<int>(lane.size());
    assert(values.size() == lane.size() && argmax.size() == lane.size());
    assert(env.z.size() == env.v.size() + 1);

    // z decreases while q increases, so walk k downward; z[0] = +inf stops
    // the scan.
    int k = env.k();
    for (int q = 0; q < n; ++q) {
        while (env.z[static_cast<std::size_t>(k)] < static_cast<double>(q)) --k;
        values[static_cast<std::size_t>(q)] =
            parabola_value(env.v[static_cast<std::size_t>(k)], q, lane, params);
        argmax[static_cast<std::size_t>(q)] = env.v[static_cast<std::size_t>(k)];
    }
}

std::pair<std::vector<double>, std::vector<std::int32_t>> sample_envelope(
    const Envelope& env, std::span<const double> lane, AxisParams params) {
    std::vector<double> values(lane.size());
    std::vector<std::int32_t> argmax(lane.size());
    sample_envelope(env, lane, params, values, argmax);
    return {std::move(values), std::move(argmax)};
}

void build_lower_envelope(std::span<const double> lane, AxisParams params,
                          Envelope& env, EnvelopeStats& stats) {
    validate_lane(lane);
    require_upward(params);

    const int n = static_cast<int>(lane.size());
    env.v.resize(static_cast<std::size_t>(n));
    env.z.resize(static_cast<std::size_t>(n) + 1);
    stats.inner_iterations = 0;
    stats.per_step_envelope_size.clear();
    stats.per_step_envelope_size.reserve(static_cast<std::size_t>(n - 1));

    auto* v = env.v.data();
    auto* z = env.z.data();

    int k = 0;
    v[0] = 0;
    z[0] = -kInf;
    z[1] = kInf;

    for (int q = 1; q < n; ++q) {
        ++stats.inner_iterations;
        double s = intersect(v[k], q, lane, params);
        // Crossing at or left of the back breakpoint means v[k] is dominated
        // by q over its whole range; pop and retry. z[0] = -inf stops the
        // walk at the front.
        while (s <= z[k]) {
            --k;
            ++stats.inner_iterations;
            s = intersect(v[k], q, lane, params);
        }
        ++k;
        v[k] = q;
        z[k] = s;
        z[k + 1] = kInf;
        stats.per_step_envelope_size.push_back(k + 1);
    }

    env.v.resize(static_cast<std::size_t>(k) + 1);
    env.z.resize(static_cast<std::size_t>(k) + 2);
}

std::pair<Envelope, EnvelopeStats> build_lower_envelope(std::span<const double> lane,
                                                        AxisParams params) {
    Envelope env;
    EnvelopeStats stats;
    build_lower_envelope(lane, params, env, stats);
    return {std::move(env), std::move(stats)};
}

void sample_lower_envelope(const Envelope& env, std::span<const double> lane,
                           AxisParams params, std::span<double> values,
                           std::span<std::int32_t> argmin) {
    const int n = static_cast<int>(lane.size());
    assert(values.size() == lane.size() && argmin.size() == lane.size());
    assert(env.z.size() == env.v.size() + 1);

    // Increasing z, increasing q: walk k upward. Strict < keeps a point
    // exactly on a breakpoint with the lower-index parabola.
    int k = 0;
    for (int q = 0; q < n; ++q) {
        while (env.z[static_cast<std::size_t>(k) + 1] < static_cast<double>(q)) ++k;
        values[static_cast<std::size_t>(q)] =
            parabola_value(env.v[static_cast<std::size_t>(k)], q, lane, params);
        argmin[static_cast<std::size_t>(q)] = env.v[static_cast<std::size_t>(k)];
    }
}

std::pair<std::vector<double>, std::vector<std::int32_t>> sample_lower_envelope(
    const Envelope& env, std::span<const double> lane, AxisParams params) {
    std::vector<double> values(lane.size());
    std::vector<std::int32_t> argmin(lane.size());
    sample_lower_envelope(env, lane, params, values, argmin);
    return {std::move(values), std::move(argmin)};
}

}  // namespace quaddt
