// Shared numerical kernels: adaptive 2-D quadrature, supremum search on the
// unit square, incomplete beta, and a reproducible uniform-variate stream.
#pragma once

#include <cstdint>
#include <functional>
#include <stdexcept>
#include <string>

namespace casym {

using Field2D = std::function<double(double, double)>;

struct Tolerance {
  double abs_tol = 1e-9;
  double rel_tol = 0.0;
  int max_refinements = 500000;  // cap on cell subdivisions
};

// Argmax-carrying result of a supremum search.
struct SupResult {
  double value = 0.0;
  double x = 0.0;
  double y = 0.0;
  double cell_size = 1.0;  // spatial resolution reached around the argmax
};

enum class Region {
  UnitSquare,       // [0,1] x [0,1]
  TriangleXLeY,     // {(x,y) : 0 <= x <= y <= 1}
  TriangleXPlusYLe1 // {(x,y) : x,y >= 0, x + y <= 1}
};

class QuadratureError : public std::runtime_error {
 public:
  QuadratureError(double estimate, double residual)
      : std::runtime_error("quadrature did not converge (estimate " +
                           std::to_string(estimate) + ", residual " +
                           std::to_string(residual) + ")"),
        estimate_(estimate),
        residual_(residual) {}
  double estimate() const { return estimate_; }
  double residual() const { return residual_; }

 private:
  double estimate_;
  double residual_;
};

// Integral of f(x,y)^p over the region, p >= 1.  Adaptive subdivision with an
// embedded Gauss pair; deterministic for a fixed tolerance.  Throws
// QuadratureError when the refinement budget is exhausted.
double integrate2d(const Field2D& f, Region region, double p,
                   const Tolerance& tol = {});

// Maximum of f over [0,1]^2 for fields that are continuous off finitely many
// piecewise-smooth curves.  Coarse scan followed by local refinement around
// the best cells; tol.abs_tol is interpreted as spatial resolution.
SupResult sup_on_square(const Field2D& f, const Tolerance& tol = {1e-7, 0.0, 64},
                        int coarse_n = 257, int top_k = 16);

// B(z; alpha, beta) = int_0^z t^(alpha-1) (1-t)^(beta-1) dt (not regularized).
double incomplete_beta(double z, double alpha, double beta);

// B(alpha, beta) from the log-gamma identity.
double complete_beta(double alpha, double beta);

// Counter-based uniform stream (SplitMix64 of seed-mixed counter).  The i-th
// variate depends only on (seed, i), so jump-ahead and chunked parallel
// sampling are exact by construction.
class UniformStream {
 public:
  explicit UniformStream(std::uint64_t seed) : seed_(seed) {}

  double next() { return at(index_++); }

  // Variate number i of this stream, without advancing it.
  double at(std::uint64_t i) const;

  void skip(std::uint64_t n) { index_ += n; }
  std::uint64_t index() const { return index_; }

 private:
  std::uint64_t seed_;
  std::uint64_t index_ = 0;
};

}  // namespace casym
