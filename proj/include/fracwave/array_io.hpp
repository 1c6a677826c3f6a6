#pragma once

#include <string>

#include "fracwave/types.hpp"

namespace fracwave {

// Grid metadata carried in the array header so a plot script can label axes
// without the config that produced the file.
struct ArrayMeta {
  double dt = 0.0;
  double h = 0.0;
  double alpha = 0.0;
};

// File layout: one ASCII header line
//   <rows> <cols> <dt> <h> <alpha> little\n
// followed by rows*cols raw little-endian float64 values in row-major order
// (numpy: fromfile(...)[...].reshape(rows, cols)).
void write_array(const std::string& path, const Mat& values,
                 const ArrayMeta& meta);

struct ArrayFile {
  Mat values;
  ArrayMeta meta;
};

ArrayFile read_array(const std::string& path);

}  // namespace fracwave
