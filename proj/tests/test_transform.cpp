#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <limits>
#include <vector>

#include "quaddt/oracle.hpp"
#include "quaddt/rng.hpp"
#include "quaddt/transform.hpp"

using namespace quaddt;

namespace {

bool close(double a, double b, double tol = 1e-9) {
    return std::abs(a - b) <= tol * std::max({1.0, std::abs(a), std::abs(b)});
}

AxisParams random_params(Rng& rng) {
    const double magnitude = rng.uniform(0.1, 5.0);
    return AxisParams{rng.coin() ? magnitude : -magnitude, rng.uniform(-5.0, 5.0)};
}

Grid random_grid(Rng& rng, std::size_t max_rank, std::int64_t max_extent) {
    Grid g;
    const auto rank = static_cast<std::size_t>(
        rng.uniform_int(1, static_cast<std::int64_t>(max_rank)));
    std::size_t total = 1;
    for (std::size_t d = 0; d < rank; ++d) {
        g.extents.push_back(rng.uniform_int(1, max_extent));
        total *= static_cast<std::size_t>(g.extents.back());
    }
    g.data.resize(total);
    for (auto& v : g.data) v = rng.uniform(-10.0, 10.0);
    return g;
}

TransformSpec random_spec(Rng& rng, std::size_t rank) {
    TransformSpec spec;
    spec.sense = rng.coin() ? Sense::Max : Sense::Min;
    for (std::size_t d = 0; d < rank; ++d) spec.axes.push_back(random_params(rng));
    return spec;
}

void check_against_oracle(const Grid& g, const TransformSpec& spec) {
    TransformSpec with_argmax = spec;
    with_argmax.want_argmax = true;
    const TransformResult kernel = dt_nd(g, with_argmax);
    const auto brute = oracle::brute_nd(g, spec);

    REQUIRE(kernel.values.extents == g.extents);
    REQUIRE(kernel.argmax.size() == g.rank());
    std::vector<std::int32_t> p(g.rank()), x(g.rank());
    for (std::size_t i = 0; i < g.size(); ++i) {
        CHECK(close(kernel.values.data[i], brute.values.data[i]));
        // argmax coordinates may differ from the oracle's under ties; the
        // objective they achieve may not
        std::size_t rem = i;
        for (std::size_t d = g.rank(); d-- > 0;) {
            x[d] = static_cast<std::int32_t>(rem % static_cast<std::size_t>(g.extents[d]));
            rem /= static_cast<std::size_t>(g.extents[d]);
        }
        for (std::size_t d = 0; d < g.rank(); ++d) {
            p[d] = kernel.argmax[d][i];
            CHECK(p[d] >= 0);
            CHECK(p[d] < g.extents[d]);
        }
        CHECK(close(oracle::objective(g, spec, p, x), kernel.values.data[i]));
    }
}

}  // namespace

TEST_CASE("dt_1d dispatch examples") {
    auto r = dt_1d(std::vector<double>{0.0, 0.0}, AxisParams{1.0, 0.0}, Sense::Max);
    CHECK(r.values == std::vector<double>{1.0, 1.0});

    r = dt_1d(std::vector<double>{0.0, 0.0}, AxisParams{-1.0, 0.0}, Sense::Min);
    CHECK(r.values == std::vector<double>{-1.0, -1.0});

    r = dt_1d(std::vector<double>{3.0, 3.0, 3.0}, AxisParams{1.0, 0.0}, Sense::Min);
    CHECK(r.values == std::vector<double>{3.0, 3.0, 3.0});
    CHECK(r.argopt == std::vector<std::int32_t>{0, 1, 2});
}

TEST_CASE("dt_1d covers all four dispatch cells") {
    Rng rng(211);
    for (int it = 0; it < 400; ++it) {
        const auto n = static_cast<std::size_t>(rng.uniform_int(1, 48));
        std::vector<double> lane(n);
        for (auto& v : lane) v = rng.uniform(-10.0, 10.0);
        const AxisParams params = random_params(rng);
        const Sense sense = rng.coin() ? Sense::Max : Sense::Min;

        const auto kernel = dt_1d(lane, params, sense);
        const auto brute = oracle::brute_1d(lane, params, sense);
        for (std::size_t i = 0; i < n; ++i) {
            CHECK(close(kernel.values[i], brute.values[i]));
            // argopt must achieve the reported value
            const double d = static_cast<double>(kernel.argopt[i]) - static_cast<double>(i);
            const double obj = lane[static_cast<std::size_t>(kernel.argopt[i])] +
                               params.alpha * d * d + params.beta * d;
            CHECK(close(obj, kernel.values[i]));
        }
    }
}

TEST_CASE("duality: max equals negated min of the negated problem") {
    Rng rng(223);
    for (int it = 0; it < 500; ++it) {
        const auto n = static_cast<std::size_t>(rng.uniform_int(1, 48));
        std::vector<double> lane(n), negated(n);
        for (std::size_t i = 0; i < n; ++i) {
            lane[i] = rng.uniform(-10.0, 10.0);
            negated[i] = -lane[i];
        }
        const AxisParams params = random_params(rng);
        const auto max_side = dt_1d(lane, params, Sense::Max);
        const auto min_side =
            dt_1d(negated, AxisParams{-params.alpha, -params.beta}, Sense::Min);
        for (std::size_t i = 0; i < n; ++i) {
            CHECK(close(max_side.values[i], -min_side.values[i]));
        }
    }
}

TEST_CASE("dt_1d rejects alpha = 0 and non-finite input") {
    CHECK_THROWS_AS(dt_1d(std::vector<double>{1.0}, AxisParams{0.0, 0.0}, Sense::Min),
                    ParamError);
    CHECK_THROWS_AS(
        dt_1d(std::vector<double>{1.0, std::numeric_limits<double>::infinity()},
              AxisParams{1.0, 0.0}, Sense::Min),
        InputError);
}

TEST_CASE("dt_nd examples") {
    TransformSpec spec;
    spec.sense = Sense::Max;
    spec.axes = {AxisParams{1.0, 0.0}, AxisParams{1.0, 0.0}};

    Grid point;
    point.extents = {1, 1};
    point.data = {7.0};
    CHECK(dt_nd(point, spec).values.data == std::vector<double>{7.0});

    Grid zeros = Grid::full({2, 2}, 0.0);
    CHECK(dt_nd(zeros, spec).values.data == std::vector<double>{2.0, 2.0, 2.0, 2.0});
}

TEST_CASE("dt_nd matches the oracle on random grids") {
    Rng rng(227);
    for (int it = 0; it < 60; ++it) {
        const Grid g = random_grid(rng, 3, 8);
        check_against_oracle(g, random_spec(rng, g.rank()));
    }
    // the spec'd 3x4x5 shape explicitly
    Rng rng2(229);
    Grid g;
    g.extents = {3, 4, 5};
    g.data.resize(60);
    for (auto& v : g.data) v = rng2.uniform(-10.0, 10.0);
    check_against_oracle(g, random_spec(rng2, 3));
}

TEST_CASE("axis order does not change the values") {
    Rng rng(233);
    for (int it = 0; it < 25; ++it) {
        Grid g;
        g.extents = {static_cast<std::int64_t>(rng.uniform_int(1, 5)),
                     static_cast<std::int64_t>(rng.uniform_int(1, 5)),
                     static_cast<std::int64_t>(rng.uniform_int(1, 5))};
        g.data.resize(static_cast<std::size_t>(g.extents[0] * g.extents[1] * g.extents[2]));
        for (auto& v : g.data) v = rng.uniform(-10.0, 10.0);
        TransformSpec spec = random_spec(rng, 3);

        std::vector<int> order{0, 1, 2};
        const auto reference = dt_nd(g, spec);
        do {
            TransformSpec permuted = spec;
            permuted.axis_order = order;
            const auto result = dt_nd(g, permuted);
            for (std::size_t i = 0; i < g.size(); ++i) {
                CHECK(close(result.values.data[i], reference.values.data[i]));
            }
        } while (std::next_permutation(order.begin(), order.end()));
    }
}

TEST_CASE("euclidean special case: indicator input gives squared distances") {
    Rng rng(239);
    for (int it = 0; it < 50; ++it) {
        const auto n = static_cast<std::size_t>(rng.uniform_int(1, 32));
        const double m = 4.0 * static_cast<double>(n) * static_cast<double>(n);
        std::vector<double> lane(n, m);
        std::vector<std::size_t> seeds;
        const auto seed_count = static_cast<std::size_t>(
            rng.uniform_int(1, static_cast<std::int64_t>(n)));
        for (std::size_t s = 0; s < seed_count; ++s) {
            const auto at = static_cast<std::size_t>(
                rng.uniform_int(0, static_cast<std::int64_t>(n) - 1));
            lane[at] = 0.0;
            seeds.push_back(at);
        }
        const auto r = dt_1d(lane, AxisParams{1.0, 0.0}, Sense::Min);
        for (std::size_t x = 0; x < n; ++x) {
            double expect = std::numeric_limits<double>::infinity();
            for (std::size_t i = 0; i < n; ++i) {
                if (lane[i] != 0.0) continue;
                const double d = static_cast<double>(i) - static_cast<double>(x);
                expect = std::min(expect, d * d);
            }
            CHECK(r.values[x] == expect);
        }
    }
}

TEST_CASE("adding a constant shifts every output by that constant") {
    Rng rng(241);
    for (int it = 0; it < 100; ++it) {
        const auto n = static_cast<std::size_t>(rng.uniform_int(1, 32));
        std::vector<double> lane(n), shifted(n);
        const double c = rng.uniform(-100.0, 100.0);
        for (std::size_t i = 0; i < n; ++i) {
            lane[i] = rng.uniform(-10.0, 10.0);
            shifted[i] = lane[i] + c;
        }
        const AxisParams params = random_params(rng);
        const Sense sense = rng.coin() ? Sense::Max : Sense::Min;
        const auto base = dt_1d(lane, params, sense);
        const auto moved = dt_1d(shifted, params, sense);
        for (std::size_t i = 0; i < n; ++i) {
            CHECK(close(moved.values[i], base.values[i] + c, 1e-12));
        }
    }
}

TEST_CASE("lane parallelism changes nothing") {
    Rng rng(251);
    Grid g = random_grid(rng, 3, 7);
    while (g.rank() < 2) g = random_grid(rng, 3, 7);
    TransformSpec spec = random_spec(rng, g.rank());
    spec.want_argmax = true;
    const auto serial = dt_nd(g, spec, 1);
    const auto parallel = dt_nd(g, spec, 4);
    CHECK(serial.values.data == parallel.values.data);
    CHECK(serial.argmax == parallel.argmax);
    CHECK(serial.stats.inner_iterations == parallel.stats.inner_iterations);
    CHECK(serial.stats.lane_builds == parallel.stats.lane_builds);
}

TEST_CASE("aggregated stats count every lane build") {
    Grid g = Grid::full({2, 3}, 0.0);
    TransformSpec spec;
    spec.sense = Sense::Min;
    spec.axes = {AxisParams{1.0, 0.0}, AxisParams{1.0, 0.0}};
    const auto r = dt_nd(g, spec);
    // axis 0: 3 lanes of length 2; axis 1: 2 lanes of length 3
    CHECK(r.stats.lane_builds == 5);
    CHECK(r.stats.outer_iterations == 3 * 1 + 2 * 2);
    CHECK(r.stats.inner_iterations >= r.stats.outer_iterations);
}

TEST_CASE("dt_nd parameter validation") {
    Grid g = Grid::full({2, 2}, 0.0);
    TransformSpec spec;
    spec.sense = Sense::Min;
    spec.axes = {AxisParams{1.0, 0.0}};  // rank mismatch
    CHECK_THROWS_AS(dt_nd(g, spec), ParamError);

    spec.axes = {AxisParams{1.0, 0.0}, AxisParams{0.0, 0.0}};
    CHECK_THROWS_AS(dt_nd(g, spec), ParamError);

    spec.axes = {AxisParams{1.0, 0.0}, AxisParams{1.0, 0.0}};
    spec.axis_order = std::vector<int>{0, 0};
    CHECK_THROWS_AS(dt_nd(g, spec), ParamError);
    spec.axis_order = std::vector<int>{0, 2};
    CHECK_THROWS_AS(dt_nd(g, spec), ParamError);
    spec.axis_order.reset();
    CHECK_THROWS_AS(dt_nd(g, spec, 0), ParamError);

    Grid bad = Grid::full({2, 2}, 0.0);
    bad.data[3] = std::nan("");
    CHECK_THROWS_AS(dt_nd(bad, spec), InputError);

    Grid mismatch;
    mismatch.extents = {2, 2};
    mismatch.data = {0.0, 0.0, 0.0};
    CHECK_THROWS_AS(dt_nd(mismatch, spec), InputError);
}
