// Uniform-grid sampling of scalar fields on the unit square and CSV export.
#pragma once

#include <ostream>
#include <string>
#include <vector>

#include "casym/numerics.hpp"

namespace casym {

// n x n samples at (i/(n-1), j/(n-1)), row-major in x.
struct GridField {
  int n = 0;
  std::vector<double> values;

  double at(int i, int j) const {
    return values[static_cast<std::size_t>(i) * n + j];
  }
};

GridField sample_grid(const Field2D& f, int n);

// Decimal with up to 12 significant digits, trailing zeros stripped.
std::string format_number(double v);

// Header `x,y,value`, one row per sample, row-major.
void write_csv(const GridField& gf, std::ostream& os);
void write_csv_file(const GridField& gf, const std::string& path);

}  // namespace casym
