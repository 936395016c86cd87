#include "picardo/io.hpp"

#include <bit>
#include <cstdio>
#include <cstring>
#include <fstream>
#include <sstream>
#include <vector>

static_assert(std::endian::native == std::endian::little,
              "PICO binary i/o assumes a little-endian host");

namespace picardo {

std::string format_double(double v) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

Matrix read_matrix_csv(std::istream& in, const std::string& name) {
  std::vector<std::vector<double>> rows;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty()) continue;
    std::vector<double> row;
    std::stringstream fields(line);
    std::string field;
    while (std::getline(fields, field, ',')) {
      try {
        std::size_t used = 0;
        row.push_back(std::stod(field, &used));
        while (used < field.size() && std::isspace((unsigned char)field[used]))
          ++used;
        if (used != field.size()) throw std::invalid_argument("trailing junk");
      } catch (const std::exception&) {
        throw DataError(name + ": line " + std::to_string(line_no) +
                        ": not a number: '" + field + "'");
      }
    }
    if (!rows.empty() && row.size() != rows.front().size())
      throw DataError(name + ": line " + std::to_string(line_no) + ": expected " +
                      std::to_string(rows.front().size()) + " fields, got " +
                      std::to_string(row.size()));
    if (row.empty())
      throw DataError(name + ": line " + std::to_string(line_no) + ": no fields");
    rows.push_back(std::move(row));
  }
  if (rows.empty()) throw DataError(name + ": empty matrix");
  Matrix m(Index(rows.size()), Index(rows.front().size()));
  for (Index i = 0; i < m.rows(); ++i)
    for (Index j = 0; j < m.cols(); ++j) m(i, j) = rows[size_t(i)][size_t(j)];
  return m;
}

Matrix read_matrix_csv(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw DataError("cannot open '" + path + "' for reading");
  return read_matrix_csv(in, path);
}

void write_matrix_csv(const Matrix& m, std::ostream& out) {
  for (Index i = 0; i < m.rows(); ++i) {
    for (Index j = 0; j < m.cols(); ++j) {
      if (j) out << ',';
      out << format_double(m(i, j));
    }
    out << '\n';
  }
}

void write_matrix_csv(const Matrix& m, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw DataError("cannot open '" + path + "' for writing");
  write_matrix_csv(m, out);
  if (!out) throw DataError("write failed for '" + path + "'");
}

namespace {

constexpr char kMagic[4] = {'P', 'I', 'C', 'O'};
constexpr std::uint32_t kVersion = 1;

template <typename T>
void write_raw(std::ostream& out, const T& v) {
  out.write(reinterpret_cast<const char*>(&v), sizeof(v));
}

template <typename T>
void read_raw(std::istream& in, T& v, const std::string& name, const char* what) {
  in.read(reinterpret_cast<char*>(&v), sizeof(v));
  if (in.gcount() != std::streamsize(sizeof(v)))
    throw DataError(name + ": truncated while reading " + what);
}

}  // namespace

Matrix read_matrix_bin(std::istream& in, const std::string& name) {
  char magic[4];
  in.read(magic, 4);
  if (in.gcount() != 4 || std::memcmp(magic, kMagic, 4) != 0)
    throw DataError(name + ": bad magic, not a PICO matrix file");
  std::uint32_t version = 0;
  read_raw(in, version, name, "version");
  if (version != kVersion)
    throw DataError(name + ": unsupported PICO version " + std::to_string(version));
  std::uint64_t n = 0, t = 0;
  read_raw(in, n, name, "channel count");
  read_raw(in, t, name, "sample count");
  if (n == 0 || t == 0 || n > (1u << 20) || t > (1ull << 40))
    throw DataError(name + ": implausible dimensions " + std::to_string(n) + "x" +
                    std::to_string(t));
  Matrix m(static_cast<Index>(n), static_cast<Index>(t));
  for (std::uint64_t i = 0; i < n; ++i) {
    std::vector<double> row(t);
    in.read(reinterpret_cast<char*>(row.data()),
            std::streamsize(t * sizeof(double)));
    if (in.gcount() != std::streamsize(t * sizeof(double)))
      throw DataError(name + ": truncated payload at row " + std::to_string(i) +
                      " (offset " + std::to_string(16 + i * t * sizeof(double)) +
                      ")");
    for (std::uint64_t j = 0; j < t; ++j) m(Index(i), Index(j)) = row[j];
  }
  return m;
}

Matrix read_matrix_bin(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw DataError("cannot open '" + path + "' for reading");
  return read_matrix_bin(in, path);
}

void write_matrix_bin(const Matrix& m, std::ostream& out) {
  out.write(kMagic, 4);
  write_raw(out, kVersion);
  write_raw(out, std::uint64_t(m.rows()));
  write_raw(out, std::uint64_t(m.cols()));
  std::vector<double> row(size_t(m.cols()));
  for (Index i = 0; i < m.rows(); ++i) {
    for (Index j = 0; j < m.cols(); ++j) row[size_t(j)] = m(i, j);
    out.write(reinterpret_cast<const char*>(row.data()),
              std::streamsize(row.size() * sizeof(double)));
  }
}

void write_matrix_bin(const Matrix& m, const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw DataError("cannot open '" + path + "' for writing");
  write_matrix_bin(m, out);
  if (!out) throw DataError("write failed for '" + path + "'");
}

Matrix read_matrix_auto(const std::string& path) {
  if (path.size() >= 4 && path.compare(path.size() - 4, 4, ".bin") == 0)
    return read_matrix_bin(path);
  return read_matrix_csv(path);
}

}  // namespace picardo
