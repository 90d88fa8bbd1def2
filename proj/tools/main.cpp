#include <algorithm>
#include <cmath>
#include <cstdint>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "quaddt/bench.hpp"
#include "quaddt/oracle.hpp"
#include "quaddt/rng.hpp"
#include "quaddt/tensor_io.hpp"
#include "quaddt/transform.hpp"

namespace {

using namespace quaddt;

// exit codes: 0 ok, 1 I/O or parse error, 2 invalid parameters, 3 verify mismatch
constexpr int kExitOk = 0;
constexpr int kExitIo = 1;
constexpr int kExitParams = 2;
constexpr int kExitVerifyFail = 3;

std::vector<std::string> split(const std::string& text, char sep) {
    std::vector<std::string> parts;
    std::size_t start = 0;
    while (true) {
        const std::size_t pos = text.find(sep, start);
        parts.push_back(text.substr(start, pos - start));
        if (pos == std::string::npos) return parts;
        start = pos + 1;
    }
}

std::vector<double> parse_real_list(const std::string& text, const std::string& flag) {
    std::vector<double> out;
    for (const auto& part : split(text, ',')) {
        try {
            std::size_t used = 0;
            out.push_back(std::stod(part, &used));
            if (used != part.size()) throw std::invalid_argument(part);
        } catch (const std::exception&) {
            throw ParamError(flag + ": cannot parse '" + part + "' as a real");
        }
    }
    return out;
}

std::vector<std::int64_t> parse_int_list(const std::string& text, const std::string& flag) {
    std::vector<std::int64_t> out;
    for (const auto& part : split(text, ',')) {
        try {
            std::size_t used = 0;
            out.push_back(std::stoll(part, &used));
            if (used != part.size()) throw std::invalid_argument(part);
        } catch (const std::exception&) {
            throw ParamError(flag + ": cannot parse '" + part + "' as an integer");
        }
    }
    return out;
}

bool has_suffix(const std::string& path, const std::string& suffix) {
    return path.size() >= suffix.size() &&
           path.compare(path.size() - suffix.size(), suffix.size(), suffix) == 0;
}

Grid read_grid_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw InputError("cannot open '" + path + "' for reading");
    return has_suffix(path, ".csv") ? read_csv_2d(in) : read_tensor(in);
}

void write_grid_file(const Grid& grid, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw InputError("cannot open '" + path + "' for writing");
    if (has_suffix(path, ".csv")) {
        write_csv_2d(grid, out);
    } else {
        write_tensor(grid, out);
    }
    if (!out) throw InputError("write to '" + path + "' failed");
}

Sense parse_mode(const std::string& mode) {
    if (mode == "min") return Sense::Min;
    if (mode == "max") return Sense::Max;
    throw ParamError("--mode: expected 'min' or 'max', got '" + mode + "'");
}

TransformSpec make_spec(const Grid& grid, const std::string& mode,
                        const std::string& alpha, const std::string& beta,
                        const std::string& axis_order, bool want_argmax) {
    TransformSpec spec;
    spec.sense = parse_mode(mode);
    spec.want_argmax = want_argmax;

    const auto alphas = parse_real_list(alpha, "--alpha");
    std::vector<double> betas(alphas.size(), 0.0);
    if (!beta.empty()) betas = parse_real_list(beta, "--beta");
    if (alphas.size() != grid.rank()) {
        throw ParamError("--alpha: got " + std::to_string(alphas.size()) +
                         " value(s) for a rank-" + std::to_string(grid.rank()) +
                         " grid");
    }
    if (betas.size() != alphas.size()) {
        throw ParamError("--beta: got " + std::to_string(betas.size()) +
                         " value(s), expected " + std::to_string(alphas.size()));
    }
    for (std::size_t d = 0; d < alphas.size(); ++d) {
        if (alphas[d] == 0.0) {
            throw ParamError("--alpha: axis " + std::to_string(d) +
                             " is 0; alpha must be nonzero");
        }
        spec.axes.push_back(AxisParams{alphas[d], betas[d]});
    }
    if (!axis_order.empty()) {
        std::vector<int> order;
        for (auto v : parse_int_list(axis_order, "--axis-order")) {
            order.push_back(static_cast<int>(v));
        }
        spec.axis_order = std::move(order);
    }
    return spec;
}

struct TransformArgs {
    std::string input, output, mode, alpha, beta, axis_order, argmax_path;
    int threads = 1;
};

int run_transform(const TransformArgs& args) {
    const Grid grid = read_grid_file(args.input);
    const TransformSpec spec = make_spec(grid, args.mode, args.alpha, args.beta,
                                         args.axis_order, !args.argmax_path.empty());
    const TransformResult result = dt_nd(grid, spec, args.threads);
    write_grid_file(result.values, args.output);
    for (std::size_t d = 0; d < result.argmax.size(); ++d) {
        Grid indices;
        indices.extents = grid.extents;
        indices.data.assign(result.argmax[d].begin(), result.argmax[d].end());
        std::ofstream out(args.argmax_path + ".axis" + std::to_string(d));
        if (!out) {
            throw InputError("cannot open '" + args.argmax_path + ".axis" +
                             std::to_string(d) + "' for writing");
        }
        write_tensor(indices, out);
    }
    return kExitOk;
}

struct VerifyArgs {
    std::string input, mode = "max", alpha, beta, axis_order, random;
    double tolerance = 1e-9;
    double perturb = 0.0;
};

bool close_rel(double a, double b, double tol) {
    return std::abs(a - b) <= tol * std::max({1.0, std::abs(a), std::abs(b)});
}

std::string coord_string(const std::vector<std::int64_t>& extents, std::size_t flat) {
    std::vector<std::size_t> strides(extents.size());
    std::size_t s = 1;
    for (std::size_t d = extents.size(); d-- > 0;) {
        strides[d] = s;
        s *= static_cast<std::size_t>(extents[d]);
    }
    std::string out = "(";
    for (std::size_t d = 0; d < extents.size(); ++d) {
        if (d) out += ",";
        out += std::to_string((flat / strides[d]) % static_cast<std::size_t>(extents[d]));
    }
    return out + ")";
}

struct VerifyTotals {
    std::size_t cases = 0;
    std::size_t failures = 0;
    double max_abs_err = 0.0;
};

// Runs kernel and oracle on one case; prints one PASS/FAIL line.
void verify_case(const Grid& grid, const TransformSpec& spec, double tolerance,
                 double perturb, VerifyTotals& totals) {
    TransformSpec with_argmax = spec;
    with_argmax.want_argmax = true;

    TransformResult kernel = dt_nd(grid, with_argmax);
    if (perturb != 0.0) {
        for (double& v : kernel.values.data) v += perturb;
    }
    const oracle::BruteGridResult brute = oracle::brute_nd(grid, spec);

    const std::size_t id = ++totals.cases;
    std::string failure;
    const std::size_t m = grid.rank();
    std::vector<std::int32_t> p(m), x(m);
    for (std::size_t i = 0; i < grid.size(); ++i) {
        const double kv = kernel.values.data[i];
        const double ov = brute.values.data[i];
        totals.max_abs_err = std::max(totals.max_abs_err, std::abs(kv - ov));
        if (!close_rel(kv, ov, tolerance) && failure.empty()) {
            failure = "value mismatch at " + coord_string(grid.extents, i) +
                      ": kernel " + format_real(kv) + ", oracle " + format_real(ov);
            break;
        }
        // objective evaluated at the kernel's argmax must reproduce its value
        std::size_t rem = i;
        for (std::size_t d = m; d-- > 0;) {
            x[d] = static_cast<std::int32_t>(rem % static_cast<std::size_t>(grid.extents[d]));
            rem /= static_cast<std::size_t>(grid.extents[d]);
        }
        for (std::size_t d = 0; d < m; ++d) p[d] = kernel.argmax[d][i];
        const double obj = oracle::objective(grid, spec, p, x);
        if (!close_rel(obj, kv, tolerance) && failure.empty()) {
            failure = "argmax objective mismatch at " + coord_string(grid.extents, i) +
                      ": kernel " + format_real(kv) + ", oracle objective " +
                      format_real(obj);
            break;
        }
    }

    if (failure.empty()) {
        std::cout << "case " << id << ": PASS\n";
    } else {
        ++totals.failures;
        std::cout << "case " << id << ": FAIL " << failure << "\n";
    }
}

int run_verify(const VerifyArgs& args) {
    if (args.input.empty() == args.random.empty()) {
        throw ParamError("verify needs exactly one of --input or --random");
    }
    VerifyTotals totals;
    if (!args.input.empty()) {
        const Grid grid = read_grid_file(args.input);
        if (args.alpha.empty()) throw ParamError("--alpha is required with --input");
        const TransformSpec spec =
            make_spec(grid, args.mode, args.alpha, args.beta, args.axis_order, false);
        verify_case(grid, spec, args.tolerance, args.perturb, totals);
    } else {
        const auto parts = parse_int_list(args.random, "--random");
        if (parts.size() != 4 || parts[0] < 1 || parts[1] < 1 || parts[2] < 1) {
            throw ParamError("--random: expected 'count,maxrank,maxextent,seed'");
        }
        const auto count = static_cast<std::size_t>(parts[0]);
        const auto max_rank = static_cast<std::size_t>(parts[1]);
        const auto max_extent = parts[2];
        Rng rng(static_cast<std::uint64_t>(parts[3]));
        for (std::size_t c = 0; c < count; ++c) {
            Grid grid;
            const auto rank = static_cast<std::size_t>(
                rng.uniform_int(1, static_cast<std::int64_t>(max_rank)));
            std::size_t total;
            do {
                grid.extents.clear();
                total = 1;
                for (std::size_t d = 0; d < rank; ++d) {
                    grid.extents.push_back(rng.uniform_int(1, max_extent));
                    total *= static_cast<std::size_t>(grid.extents.back());
                }
            } while (total > 10000);  // keep the oracle tractable
            grid.data.resize(total);
            for (double& v : grid.data) v = rng.uniform(-10.0, 10.0);

            TransformSpec spec;
            spec.sense = rng.coin() ? Sense::Max : Sense::Min;
            for (std::size_t d = 0; d < rank; ++d) {
                const double magnitude = rng.uniform(0.1, 5.0);
                spec.axes.push_back(AxisParams{rng.coin() ? magnitude : -magnitude,
                                               rng.uniform(-5.0, 5.0)});
            }
            verify_case(grid, spec, args.tolerance, args.perturb, totals);
        }
    }
    std::cout << "verified " << totals.cases << " cases, max-abs-err "
              << format_real(totals.max_abs_err) << "\n";
    return totals.failures == 0 ? kExitOk : kExitVerifyFail;
}

struct BenchArgs {
    std::string sizes, dist = "uniform", output;
    std::uint64_t seed = 1;
    int reps = 3;
    int threads = 1;
};

int run_bench(const BenchArgs& args) {
    const InputDist dist = parse_dist(args.dist);
    if (args.reps < 1) throw ParamError("--reps must be >= 1");
    if (args.threads != 1) {
        throw ParamError("--threads: bench times one lane at a time; only 1 is supported");
    }
    std::vector<std::size_t> sizes;
    for (auto v : parse_int_list(args.sizes, "--sizes")) {
        if (v < 2) {
            throw ParamError("--sizes: lane length " + std::to_string(v) +
                             " refused; avg_inner needs n >= 2");
        }
        sizes.push_back(static_cast<std::size_t>(v));
    }

    std::ostringstream csv;
    write_bench_csv_header(csv);
    for (std::size_t n : sizes) {
        for (int rep = 0; rep < args.reps; ++rep) {
            write_bench_csv_row(run_bench_case(dist, n, args.seed, rep), csv);
        }
    }

    if (args.output.empty()) {
        std::cout << csv.str();
    } else {
        std::ofstream out(args.output);
        if (!out) throw InputError("cannot open '" + args.output + "' for writing");
        out << csv.str();
        if (!out) throw InputError("write to '" + args.output + "' failed");
    }
    return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"min/max distance transforms of quadratic costs on N-D grids"};
    app.require_subcommand(1);

    TransformArgs targs;
    auto* transform = app.add_subcommand(
        "transform", "apply a min or max transform to a grid file");
    transform->add_option("--input", targs.input, "input grid (.csv or dt-tensor)")
        ->required();
    transform->add_option("--output", targs.output, "output grid path")->required();
    transform->add_option("--mode", targs.mode, "min or max")->required();
    transform->add_option("--alpha", targs.alpha, "quadratic coefficients, one per axis")
        ->required();
    transform->add_option("--beta", targs.beta, "linear coefficients (default zeros)");
    transform->add_option("--axis-order", targs.axis_order,
                          "pass order as an axis permutation");
    transform->add_option("--argmax", targs.argmax_path,
                          "also write per-axis optimizer grids to PATH.axis<k>");
    transform->add_option("--threads", targs.threads, "worker threads per pass");

    VerifyArgs vargs;
    auto* verify = app.add_subcommand(
        "verify", "compare the kernels against the brute-force reference");
    verify->add_option("--input", vargs.input, "grid file to verify on");
    verify->add_option("--mode", vargs.mode, "min or max (with --input)");
    verify->add_option("--alpha", vargs.alpha, "quadratic coefficients (with --input)");
    verify->add_option("--beta", vargs.beta, "linear coefficients (with --input)");
    verify->add_option("--axis-order", vargs.axis_order, "pass order (with --input)");
    verify->add_option("--random", vargs.random,
                       "generated cases: 'count,maxrank,maxextent,seed'");
    verify->add_option("--tolerance", vargs.tolerance, "relative tolerance");
    verify->add_option("--perturb", vargs.perturb,
                       "add EPS to kernel outputs before comparing (negative control)");

    BenchArgs bargs;
    auto* bench = app.add_subcommand(
        "bench", "profile the upper-envelope kernel, CSV output");
    bench->add_option("--sizes", bargs.sizes, "lane lengths, e.g. 1024,4096")->required();
    bench->add_option("--dist", bargs.dist,
                      "input family: uniform|gaussian|increasing|adversarial");
    bench->add_option("--seed", bargs.seed, "base seed");
    bench->add_option("--reps", bargs.reps, "repetitions per size");
    bench->add_option("--output", bargs.output, "CSV path (default stdout)");
    bench->add_option("--threads", bargs.threads, "must be 1 (single-threaded timing)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? kExitOk : kExitParams;
    }

    try {
        if (transform->parsed()) return run_transform(targs);
        if (verify->parsed()) return run_verify(vargs);
        if (bench->parsed()) return run_bench(bargs);
    } catch (const quaddt::ParamError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitParams;
    } catch (const quaddt::Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitIo;
    }
    return kExitOk;
}
