#include <doctest.h>

#include <algorithm>
#include <sstream>

#include "quaddt/bench.hpp"

using namespace quaddt;

TEST_CASE("generator families have the documented shapes") {
    const auto uniform = make_bench_lane(InputDist::Uniform, 512, 9);
    CHECK(uniform.size() == 512);
    for (double v : uniform) {
        CHECK(v >= -10.0);
        CHECK(v < 10.0);
    }

    const auto increasing = make_bench_lane(InputDist::Increasing, 512, 9);
    CHECK(std::is_sorted(increasing.begin(), increasing.end()));

    const auto adversarial = make_bench_lane(InputDist::Adversarial, 8, 9);
    for (std::size_t p = 0; p < adversarial.size(); ++p) {
        CHECK(adversarial[p] == -2.0 * static_cast<double>(p) * static_cast<double>(p));
    }

    // deterministic given the seed
    CHECK(make_bench_lane(InputDist::Gaussian, 64, 5) ==
          make_bench_lane(InputDist::Gaussian, 64, 5));
    CHECK(make_bench_lane(InputDist::Uniform, 64, 5) !=
          make_bench_lane(InputDist::Uniform, 64, 6));
}

TEST_CASE("adversarial input forces the exact worst case") {
    for (std::size_t n : {64u, 256u}) {
        const auto rec = run_bench_case(InputDist::Adversarial, n, 1, 0);
        CHECK(rec.inner_iterations == static_cast<std::uint64_t>(n) * (n - 1) / 2);
        CHECK(rec.avg_inner == static_cast<double>(n) / 2.0);
    }
}

TEST_CASE("bench records are self-consistent") {
    const auto rec = run_bench_case(InputDist::Uniform, 1024, 42, 1);
    CHECK(rec.n == 1024);
    CHECK(rec.dist == "uniform");
    CHECK(rec.seed == 42);
    CHECK(rec.rep == 1);
    CHECK(rec.inner_iterations >= 1023);
    CHECK(rec.avg_inner ==
          static_cast<double>(rec.inner_iterations) / 1023.0);
    CHECK(rec.wall_time_s >= 0.0);

    // same case, same counters
    const auto again = run_bench_case(InputDist::Uniform, 1024, 42, 1);
    CHECK(again.inner_iterations == rec.inner_iterations);
}

TEST_CASE("bench refuses single-point lanes") {
    CHECK_THROWS_AS(run_bench_case(InputDist::Uniform, 1, 1, 0), ParamError);
}

TEST_CASE("csv layout") {
    std::ostringstream out;
    write_bench_csv_header(out);
    CHECK(out.str() == "n,dist,seed,rep,wall_time_s,inner_iterations,avg_inner\n");

    BenchRecord rec;
    rec.n = 16;
    rec.dist = "uniform";
    rec.seed = 7;
    rec.rep = 2;
    rec.wall_time_s = 0.5;
    rec.inner_iterations = 30;
    rec.avg_inner = 2.0;
    std::ostringstream row;
    write_bench_csv_row(rec, row);
    CHECK(row.str() == "16,uniform,7,2,0.5,30,2\n");
}

TEST_CASE("dist names parse both ways") {
    for (auto d : {InputDist::Uniform, InputDist::Gaussian, InputDist::Increasing,
                   InputDist::Adversarial}) {
        CHECK(parse_dist(dist_name(d)) == d);
    }
    CHECK_THROWS_AS(parse_dist("exponential"), ParamError);
}
