#include "fracwave/array_io.hpp"

#include <bit>
#include <cstdint>
#include <fstream>
#include <sstream>
#include <vector>

#include "fracwave/errors.hpp"
#include "fracwave/format.hpp"

static_assert(std::endian::native == std::endian::little,
              "array files are little-endian; big-endian hosts need a swap");
static_assert(sizeof(double) == 8, "array files assume 64-bit doubles");

namespace fracwave {

void write_array(const std::string& path, const Mat& values,
                 const ArrayMeta& meta) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw PreconditionError("write_array: cannot open " + path);
  out << values.rows() << ' ' << values.cols() << ' ' << g17(meta.dt) << ' '
      << g17(meta.h) << ' ' << g17(meta.alpha) << " little\n";
  std::vector<double> row(static_cast<std::size_t>(values.cols()));
  for (Eigen::Index i = 0; i < values.rows(); ++i) {
    for (Eigen::Index j = 0; j < values.cols(); ++j)
      row[static_cast<std::size_t>(j)] = values(i, j);
    out.write(reinterpret_cast<const char*>(row.data()),
              static_cast<std::streamsize>(row.size() * sizeof(double)));
  }
  if (!out) throw PreconditionError("write_array: write failed for " + path);
}

ArrayFile read_array(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw PreconditionError("read_array: cannot open " + path);
  std::string header;
  if (!std::getline(in, header))
    throw PreconditionError("read_array: missing header in " + path);
  std::istringstream hs(header);
  std::int64_t rows = 0;
  std::int64_t cols = 0;
  ArrayFile file;
  std::string endian;
  if (!(hs >> rows >> cols >> file.meta.dt >> file.meta.h >> file.meta.alpha >>
        endian))
    throw PreconditionError("read_array: malformed header in " + path);
  if (endian != "little")
    throw PreconditionError("read_array: unsupported byte order in " + path);
  if (rows < 0 || cols < 0)
    throw PreconditionError("read_array: negative dimensions in " + path);
  file.values.resize(rows, cols);
  std::vector<double> row(static_cast<std::size_t>(cols));
  for (std::int64_t i = 0; i < rows; ++i) {
    in.read(reinterpret_cast<char*>(row.data()),
            static_cast<std::streamsize>(row.size() * sizeof(double)));
    if (!in) throw PreconditionError("read_array: truncated payload in " + path);
    for (std::int64_t j = 0; j < cols; ++j)
      file.values(i, j) = row[static_cast<std::size_t>(j)];
  }
  return file;
}

}  // namespace fracwave
