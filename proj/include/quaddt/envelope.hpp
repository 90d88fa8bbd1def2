#pragma once

#include <cstdint>
#include <span>
#include <utility>
#include <vector>

#include "quaddt/errors.hpp"

namespace quaddt {

/// Quadratic displacement cost along one axis: alpha*(p-x)^2 + beta*(p-x)
/// added to the unary cost at p. alpha must be finite and nonzero; the
/// envelope kernels below additionally require alpha > 0 (sign handling is
/// the dispatcher's job, see transform.hpp).
struct AxisParams {
    double alpha = 1.0;
    double beta = 0.0;
};

/// A parabola envelope over one lane of N grid points.
///
/// v holds the grid indices of the parabolas on the envelope (k+1 of them,
/// strictly increasing). z holds the k+2 range breakpoints. Two conventions
/// are used, distinguished by the direction of z:
///
///   upper envelope (max):  z strictly decreasing, z[0] = +inf,
///       z[k+1] = -inf; parabola v[p] covers the half-open range
///       (z[p+1], z[p]]. Larger grid indices own ranges further left.
///   lower envelope (min):  z strictly increasing, z[0] = -inf,
///       z[k+1] = +inf; parabola v[p] covers (z[p], z[p+1]].
///       Larger grid indices own ranges further right.
///
/// In both conventions a point exactly on a breakpoint belongs to the range
/// whose upper endpoint it is.
struct Envelope {
    std::vector<std::int32_t> v;
    std::vector<double> z;

    /// Envelope size minus one (v.size() == k()+1, z.size() == k()+2).
    int k() const { return static_cast<int>(v.size()) - 1; }
};

/// Instrumentation for one envelope build.
struct EnvelopeStats {
    /// Total number of intersection evaluations in the construction loop.
    std::uint64_t inner_iterations = 0;
    /// Envelope size (k+1) after each outer step, N-1 entries.
    std::vector<std::int32_t> per_step_envelope_size;
};

/// Unary cost at grid point p plus displacement cost at query point x:
/// I(p) + alpha*(p-x)^2 + beta*(p-x). Preconditions (0 <= p < N, valid
/// params) are the caller's responsibility.
double parabola_value(int p, int x, std::span<const double> lane, AxisParams params);

/// The unique crossing point of the parabolas at grid points p and q.
/// With A(t) = I(t) + alpha*t^2 + beta*t the crossing is
///     x = (A(p) - A(q)) / (2*alpha*(p - q)),
/// symmetric under swapping p and q (bit-exact). Requires p != q and
/// alpha != 0. Throws InternalError if the result is not finite (possible
/// only when A overflows).
double intersect(int p, int q, std::span<const double> lane, AxisParams params);

/// Builds the upper envelope of the parabolas of a lane (alpha > 0).
///
/// For every x the parabola owning the range containing x attains the
/// maximum over all parabolas at x. The scan considers grid points left to
/// right; each new parabola takes over the leftmost range, truncating the
/// range of the first already-placed parabola whose range contains the
/// crossing and evicting everything left of it.
///
/// Worst case O(N^2) intersection evaluations; the inner scan restarts at
/// the rightmost range on every step, which is what EnvelopeStats measures.
///
/// Throws InputError for an empty or non-finite lane, ParamError unless
/// alpha > 0, InternalError on numerical degeneracy (the ranges tile the
/// whole line, so failing to place a parabola implies corrupted data).
void build_upper_envelope(std::span<const double> lane, AxisParams params,
                          Envelope& env, EnvelopeStats& stats);
std::pair<Envelope, EnvelopeStats> build_upper_envelope(std::span<const double> lane,
                                                        AxisParams params);

/// Evaluates the max transform from a built upper envelope:
/// values[q] = parabola_value(v[j], q) for the unique j with
/// z[j+1] < q <= z[j]; argmax[q] = v[j]. values and argmax must have the
/// lane's length. env must come from build_upper_envelope on the same
/// lane/params.
void sample_envelope(const Envelope& env, std::span<const double> lane,
                     AxisParams params, std::span<double> values,
                     std::span<std::int32_t> argmax);
std::pair<std::vector<double>, std::vector<std::int32_t>> sample_envelope(
    const Envelope& env, std::span<const double> lane, AxisParams params);

/// Builds the lower envelope of the parabolas of a lane (alpha > 0):
/// the classic Felzenszwalb-Huttenlocher scan. New parabolas pop dominated
/// entries off the back while the crossing falls at or left of the back
/// breakpoint, then append. O(N) total work (amortized pops).
/// Errors as build_upper_envelope.
void build_lower_envelope(std::span<const double> lane, AxisParams params,
                          Envelope& env, EnvelopeStats& stats);
std::pair<Envelope, EnvelopeStats> build_lower_envelope(std::span<const double> lane,
                                                        AxisParams params);

/// Evaluates the min transform from a built lower envelope. Mirror of
/// sample_envelope for the increasing-z convention: values[q] uses the
/// unique j with z[j] < q <= z[j+1] (a point exactly on a breakpoint stays
/// with the lower-index parabola).
void sample_lower_envelope(const Envelope& env, std::span<const double> lane,
                           AxisParams params, std::span<double> values,
                           std::span<std::int32_t> argmin);
std::pair<std::vector<double>, std::vector<std::int32_t>> sample_lower_envelope(
    const Envelope& env, std::span<const double> lane, AxisParams params);

}  // namespace quaddt
