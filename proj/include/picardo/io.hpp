#pragma once

// Matrix file formats: delimited text (rows = channels) and the "PICO"
// binary container (magic "PICO", u32 version = 1, u64 N, u64 T, then N*T
// little-endian doubles row-major).

#include <iosfwd>
#include <string>

#include "picardo/types.hpp"

namespace picardo {

Matrix read_matrix_csv(std::istream& in, const std::string& name = "<stream>");
Matrix read_matrix_csv(const std::string& path);
void write_matrix_csv(const Matrix& m, std::ostream& out);
void write_matrix_csv(const Matrix& m, const std::string& path);

Matrix read_matrix_bin(std::istream& in, const std::string& name = "<stream>");
Matrix read_matrix_bin(const std::string& path);
void write_matrix_bin(const Matrix& m, std::ostream& out);
void write_matrix_bin(const Matrix& m, const std::string& path);

/// Reads by extension: ".bin" as PICO binary, anything else as CSV.
Matrix read_matrix_auto(const std::string& path);

/// Shortest decimal form that parses back to exactly the same double.
std::string format_double(double v);

}  // namespace picardo
