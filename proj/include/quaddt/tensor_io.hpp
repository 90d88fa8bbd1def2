#pragma once

#include <iosfwd>
#include <string>

#include "quaddt/transform.hpp"

namespace quaddt {

/// Text tensor format:
///
///     dt-tensor <rank> <d0> <d1> ... <d_{rank-1}>
///     <value> <value> ...
///
/// Body values are whitespace-separated decimal reals in row-major order,
/// exactly extents-product many. Writing emits one innermost row per line
/// and serializes each value with its shortest round-trip decimal
/// representation, so write -> read reproduces the grid bit for bit.
///
/// Parse errors throw ParseError with 1-based line/column.
Grid read_tensor(std::istream& in);
void write_tensor(const Grid& grid, std::ostream& out);

/// Rank-2 convenience format: comma-separated rows, no header, same value
/// rules. Ragged rows are an error (reported with the row index).
Grid read_csv_2d(std::istream& in);
void write_csv_2d(const Grid& grid, std::ostream& out);

/// Shortest round-trip decimal representation of a finite double.
std::string format_real(double value);

}  // namespace quaddt
