#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "quaddt/envelope.hpp"

namespace quaddt {

/// Input families for the average-case profiler.
enum class InputDist {
    Uniform,     ///< i.i.d. uniform on [-10, 10]
    Gaussian,    ///< i.i.d. normal, mean 0, sd 5
    Increasing,  ///< sorted uniform on [-10, 10]
    Adversarial  ///< worst case for the upper-envelope scan, see make_bench_lane
};

const char* dist_name(InputDist dist);
/// Parses the names accepted by the CLI; throws ParamError on anything else.
InputDist parse_dist(const std::string& name);

/// Deterministic lane for a bench case. The adversarial family is
/// I(p) = -2*p^2 (for the profiled alpha = 1): the unary cost plus alpha*p^2
/// is then strictly concave, every parabola stays on the upper envelope, and
/// each insertion scans the whole envelope, forcing the full
/// N*(N-1)/2-iteration worst case.
std::vector<double> make_bench_lane(InputDist dist, std::size_t n, std::uint64_t seed);

/// One timed run of the upper-envelope kernel (construction + sampling,
/// alpha = 1, beta = 0), excluding input generation and I/O.
struct BenchRecord {
    std::size_t n = 0;
    std::string dist;
    std::uint64_t seed = 0;
    int rep = 0;
    double wall_time_s = 0.0;
    std::uint64_t inner_iterations = 0;
    double avg_inner = 0.0;  ///< inner_iterations / (n - 1)
};

/// Runs one case. Requires n >= 2 (avg_inner is undefined otherwise). The
/// lane is derived deterministically from (seed, n, rep).
BenchRecord run_bench_case(InputDist dist, std::size_t n, std::uint64_t seed, int rep);

/// CSV header "n,dist,seed,rep,wall_time_s,inner_iterations,avg_inner" and
/// matching rows. All columns except wall_time_s are bit-stable given the
/// seed.
void write_bench_csv_header(std::ostream& out);
void write_bench_csv_row(const BenchRecord& record, std::ostream& out);

}  // namespace quaddt
