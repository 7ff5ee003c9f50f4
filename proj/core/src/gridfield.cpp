#include "casym/gridfield.hpp"

#include <cstdio>
#include <fstream>
#include <stdexcept>

namespace casym {

GridField sample_grid(const Field2D& f, int n) {
  if (n < 2) throw std::invalid_argument("sample_grid: n >= 2");
  GridField gf;
  gf.n = n;
  gf.values.resize(static_cast<std::size_t>(n) * n);
  for (int i = 0; i < n; ++i) {
    const double x = static_cast<double>(i) / (n - 1);
    for (int j = 0; j < n; ++j)
      gf.values[static_cast<std::size_t>(i) * n + j] =
          f(x, static_cast<double>(j) / (n - 1));
  }
  return gf;
}

std::string format_number(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.12g", v);
  return buf;
}

void write_csv(const GridField& gf, std::ostream& os) {
  os << "x,y,value\n";
  for (int i = 0; i < gf.n; ++i) {
    const double x = static_cast<double>(i) / (gf.n - 1);
    for (int j = 0; j < gf.n; ++j) {
      const double y = static_cast<double>(j) / (gf.n - 1);
      os << format_number(x) << ',' << format_number(y) << ','
         << format_number(gf.at(i, j)) << '\n';
    }
  }
}

void write_csv_file(const GridField& gf, const std::string& path) {
  std::ofstream os(path);
  if (!os) throw std::runtime_error("cannot open " + path);
  write_csv(gf, os);
}

}  // namespace casym
