#include "casym/numerics.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <cstddef>
#include <limits>
#include <queue>
#include <vector>

namespace casym {
namespace {

// Gauss-Legendre nodes/weights on [-1,1].
constexpr std::array<double, 5> kGl5X = {-0.9061798459386640,
                                         -0.5384693101056831, 0.0,
                                         0.5384693101056831,
                                         0.9061798459386640};
constexpr std::array<double, 5> kGl5W = {0.2369268850561891, 0.4786286704993665,
                                         0.5688888888888889, 0.4786286704993665,
                                         0.2369268850561891};
// Gauss-Lobatto: includes the interval endpoints, so the tensor rule samples
// the cell corners and edges that the Gauss-Legendre nodes leave unvisited.
constexpr std::array<double, 5> kLob5X = {-1.0, -0.6546536707079771, 0.0,
                                          0.6546536707079771, 1.0};
constexpr std::array<double, 5> kLob5W = {0.1, 49.0 / 90.0, 32.0 / 45.0,
                                          49.0 / 90.0, 0.1};

struct Cell {
  double x0, x1, y0, y1;
  double value, error;
  double sx, sy;  // interior split fractions used by the fine estimate
  std::uint64_t id;
};

struct CellWorse {
  bool operator()(const Cell& a, const Cell& b) const {
    if (a.error != b.error) return a.error < b.error;
    return a.id < b.id;  // deterministic tie break
  }
};

template <std::size_t N>
double tensor_rule(const Field2D& g, const Cell& c,
                   const std::array<double, N>& xs,
                   const std::array<double, N>& ws) {
  const double hx = 0.5 * (c.x1 - c.x0), cx = 0.5 * (c.x1 + c.x0);
  const double hy = 0.5 * (c.y1 - c.y0), cy = 0.5 * (c.y1 + c.y0);
  double sum = 0.0;
  for (std::size_t i = 0; i < N; ++i) {
    double row = 0.0;
    for (std::size_t j = 0; j < N; ++j)
      row += ws[j] * g(cx + hx * xs[i], cy + hy * xs[j]);
    sum += ws[i] * row;
  }
  return sum * hx * hy;
}

double hash_fraction(std::uint64_t z) {
  z = (z + 0x9E3779B97F4A7C15ULL);
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  z ^= z >> 31;
  return static_cast<double>(z >> 11) * 0x1.0p-53;
}

// Two-level estimate: the fine value sums GL5 over a 2x2 subdivision, the
// error is its disagreement with the single-panel GL5. The split point is
// jittered per cell so an integrand kink cannot sit at the same relative
// offset in every cell of a refinement level -- with a fixed midpoint split
// such alignment lets the coarse and fine rules agree by coincidence along a
// whole kink line, parking cells whose true error is far above the estimate.
void evaluate(const Field2D& g, Cell& c) {
  c.sx = 0.4 + 0.2 * hash_fraction(2 * c.id);
  c.sy = 0.4 + 0.2 * hash_fraction(2 * c.id + 1);
  const double lobatto = tensor_rule(g, c, kLob5X, kLob5W);
  const double coarse = tensor_rule(g, c, kGl5X, kGl5W);
  const double xm = c.x0 + c.sx * (c.x1 - c.x0);
  const double ym = c.y0 + c.sy * (c.y1 - c.y0);
  double fine = 0.0;
  const std::array<std::array<double, 4>, 4> quads = {{
      {c.x0, xm, c.y0, ym},
      {xm, c.x1, c.y0, ym},
      {c.x0, xm, ym, c.y1},
      {xm, c.x1, ym, c.y1}}};
  for (const auto& q : quads) {
    Cell sub{q[0], q[1], q[2], q[3], 0, 0, 0, 0, 0};
    fine += tensor_rule(g, sub, kGl5X, kGl5W);
  }
  c.value = fine;
  // Take the worse of the two disagreements; a cell only parks when the
  // Lobatto, GL5, and subdivided-GL5 values all agree.
  c.error = std::max(std::abs(fine - coarse), std::abs(coarse - lobatto));
  if (c.error == 0.0) {
    // All rules agree exactly, which happens either on a genuinely constant
    // patch or when the integrand is constant at every interior Gauss node
    // but not on the whole cell (e.g. a cell whose nodes all land in a zero
    // region that ends just inside the cell). Probe the boundary and park
    // only when those samples agree too; otherwise charge the spread.
    const double probes[9][2] = {
        {c.x0, c.y0}, {xm, c.y0}, {c.x1, c.y0},
        {c.x0, ym},   {xm, ym},   {c.x1, ym},
        {c.x0, c.y1}, {xm, c.y1}, {c.x1, c.y1}};
    double pmin = std::numeric_limits<double>::infinity(), pmax = -pmin;
    for (const auto& pt : probes) {
      const double v = g(pt[0], pt[1]);
      pmin = std::min(pmin, v);
      pmax = std::max(pmax, v);
    }
    c.error = (pmax - pmin) * (c.x1 - c.x0) * (c.y1 - c.y0);
  }
}

}  // namespace

double integrate2d(const Field2D& f, Region region, double p,
                   const Tolerance& tol) {
  if (p < 1.0) throw std::domain_error("integrate2d: p must be >= 1");
  if (tol.abs_tol <= 0.0 && tol.rel_tol <= 0.0)
    throw std::domain_error("integrate2d: tolerance must be positive");

  // Map the region onto the unit square (Duffy-style collapse for the
  // triangles) and fold the power and the Jacobian into the integrand.
  Field2D g;
  switch (region) {
    case Region::UnitSquare:
      g = [&f, p](double u, double v) { return std::pow(f(u, v), p); };
      break;
    case Region::TriangleXLeY:
      g = [&f, p](double u, double v) {
        return std::pow(f(u * v, v), p) * v;
      };
      break;
    case Region::TriangleXPlusYLe1:
      g = [&f, p](double u, double v) {
        return std::pow(f(u, v * (1.0 - u)), p) * (1.0 - u);
      };
      break;
  }
  if (p == 1.0) {
    switch (region) {
      case Region::UnitSquare:
        g = f;
        break;
      case Region::TriangleXLeY:
        g = [&f](double u, double v) { return f(u * v, v) * v; };
        break;
      case Region::TriangleXPlusYLe1:
        g = [&f](double u, double v) { return f(u, v * (1.0 - u)) * (1.0 - u); };
        break;
    }
  }

  std::priority_queue<Cell, std::vector<Cell>, CellWorse> heap;
  std::uint64_t next_id = 0;
  long double total = 0.0L, total_err = 0.0L;

  const int n0 = 8;  // initial decomposition; guards against symmetric
                     // cancellation in the single-cell error estimate
  for (int i = 0; i < n0; ++i)
    for (int j = 0; j < n0; ++j) {
      Cell c{i / double(n0), (i + 1) / double(n0),
             j / double(n0), (j + 1) / double(n0), 0.0, 0.0, 0.0, 0.0,
             next_id++};
      evaluate(g, c);
      total += c.value;
      total_err += c.error;
      heap.push(c);
    }

  int splits = 0;
  auto target = [&]() {
    return std::max<long double>(0.5L * tol.abs_tol,
                                 0.5L * tol.rel_tol * std::abs((double)total));
  };
  while (total_err > target()) {
    if (splits >= tol.max_refinements)
      throw QuadratureError(static_cast<double>(total),
                            static_cast<double>(total_err));
    Cell worst = heap.top();
    heap.pop();
    total -= worst.value;
    total_err -= worst.error;
    // Split where the fine estimate split, so the children cover exactly the
    // panels whose disagreement flagged this cell.
    const double xm = worst.x0 + worst.sx * (worst.x1 - worst.x0);
    const double ym = worst.y0 + worst.sy * (worst.y1 - worst.y0);
    const std::array<Cell, 4> kids = {
        Cell{worst.x0, xm, worst.y0, ym, 0, 0, 0, 0, next_id++},
        Cell{xm, worst.x1, worst.y0, ym, 0, 0, 0, 0, next_id++},
        Cell{worst.x0, xm, ym, worst.y1, 0, 0, 0, 0, next_id++},
        Cell{xm, worst.x1, ym, worst.y1, 0, 0, 0, 0, next_id++}};
    for (Cell kid : kids) {
      evaluate(g, kid);
      total += kid.value;
      total_err += kid.error;
      heap.push(kid);
    }
    ++splits;
  }
  return static_cast<double>(total);
}

SupResult sup_on_square(const Field2D& f, const Tolerance& tol, int coarse_n,
                        int top_k) {
  if (coarse_n < 2) throw std::domain_error("sup_on_square: coarse_n >= 2");
  const int n = coarse_n;
  const double h = 1.0 / (n - 1);

  struct Sample {
    double v, x, y;
  };
  std::vector<Sample> samples;
  samples.reserve(static_cast<std::size_t>(n) * n);
  SupResult best;
  best.value = -std::numeric_limits<double>::infinity();
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      const double x = i * h, y = j * h;
      const double v = f(x, y);
      samples.push_back({v, x, y});
      if (v > best.value) {
        best.value = v;
        best.x = x;
        best.y = y;
      }
    }

  // Pick top-k well separated seed points.
  std::sort(samples.begin(), samples.end(), [](const Sample& a, const Sample& b) {
    if (a.v != b.v) return a.v > b.v;
    if (a.x != b.x) return a.x < b.x;
    return a.y < b.y;
  });
  std::vector<Sample> seeds;
  const double min_sep = 2.5 * h;
  for (const Sample& s : samples) {
    if (static_cast<int>(seeds.size()) >= top_k) break;
    bool close = false;
    for (const Sample& t : seeds)
      if (std::max(std::abs(s.x - t.x), std::abs(s.y - t.y)) < min_sep) {
        close = true;
        break;
      }
    if (!close) seeds.push_back(s);
  }

  double resolution = h;
  const int m = 17;  // local refinement grid
  for (const Sample& seed : seeds) {
    double cx = seed.x, cy = seed.y, w = 3.0 * h;
    double spacing = h;
    int rounds = 0;
    while (spacing > tol.abs_tol && rounds < 200) {
      const double x0 = std::max(0.0, cx - w), x1 = std::min(1.0, cx + w);
      const double y0 = std::max(0.0, cy - w), y1 = std::min(1.0, cy + w);
      spacing = std::max(x1 - x0, y1 - y0) / (m - 1);
      double lbest = -std::numeric_limits<double>::infinity();
      double lx = cx, ly = cy;
      for (int i = 0; i < m; ++i)
        for (int j = 0; j < m; ++j) {
          const double x = x0 + (x1 - x0) * i / (m - 1);
          const double y = y0 + (y1 - y0) * j / (m - 1);
          const double v = f(x, y);
          if (v > lbest) {
            lbest = v;
            lx = x;
            ly = y;
          }
        }
      if (lbest > best.value) {
        best.value = lbest;
        best.x = lx;
        best.y = ly;
      }
      cx = lx;
      cy = ly;
      // Halve the window rather than tying it to the new spacing: on kinked
      // ridges the best grid point can sit several spacings off the true
      // peak, and a faster shrink would strand the search around it.
      w *= 0.5;
      ++rounds;
    }
    resolution = std::min(resolution, spacing);
  }
  best.cell_size = resolution;
  return best;
}

namespace {

// Continued fraction for the regularized incomplete beta (Lentz).
double betacf(double a, double b, double x) {
  constexpr int kMaxIter = 300;
  constexpr double kEps = 1e-16, kFpMin = 1e-300;
  const double qab = a + b, qap = a + 1.0, qam = a - 1.0;
  double c = 1.0, d = 1.0 - qab * x / qap;
  if (std::abs(d) < kFpMin) d = kFpMin;
  d = 1.0 / d;
  double h = d;
  for (int m = 1; m <= kMaxIter; ++m) {
    const int m2 = 2 * m;
    double aa = m * (b - m) * x / ((qam + m2) * (a + m2));
    d = 1.0 + aa * d;
    if (std::abs(d) < kFpMin) d = kFpMin;
    c = 1.0 + aa / c;
    if (std::abs(c) < kFpMin) c = kFpMin;
    d = 1.0 / d;
    h *= d * c;
    aa = -(a + m) * (qab + m) * x / ((a + m2) * (qap + m2));
    d = 1.0 + aa * d;
    if (std::abs(d) < kFpMin) d = kFpMin;
    c = 1.0 + aa / c;
    if (std::abs(c) < kFpMin) c = kFpMin;
    d = 1.0 / d;
    const double del = d * c;
    h *= del;
    if (std::abs(del - 1.0) < kEps) break;
  }
  return h;
}

double regularized_beta(double x, double a, double b) {
  if (x <= 0.0) return 0.0;
  if (x >= 1.0) return 1.0;
  const double lbeta =
      std::lgamma(a) + std::lgamma(b) - std::lgamma(a + b);
  const double front = std::exp(a * std::log(x) + b * std::log1p(-x) - lbeta);
  if (x < (a + 1.0) / (a + b + 2.0)) return front * betacf(a, b, x) / a;
  return 1.0 - front * betacf(b, a, 1.0 - x) / b;
}

}  // namespace

double complete_beta(double alpha, double beta) {
  if (alpha <= 0.0 || beta <= 0.0)
    throw std::domain_error("complete_beta: parameters must be positive");
  return std::exp(std::lgamma(alpha) + std::lgamma(beta) -
                  std::lgamma(alpha + beta));
}

double incomplete_beta(double z, double alpha, double beta) {
  if (!(z >= 0.0 && z <= 1.0))
    throw std::domain_error("incomplete_beta: z must lie in [0,1]");
  if (alpha <= 0.0 || beta <= 0.0)
    throw std::domain_error("incomplete_beta: parameters must be positive");
  if (z == 0.0) return 0.0;
  if (z == 1.0) return complete_beta(alpha, beta);
  return regularized_beta(z, alpha, beta) * complete_beta(alpha, beta);
}

double UniformStream::at(std::uint64_t i) const {
  std::uint64_t z = seed_ + (i + 1) * 0x9E3779B97F4A7C15ULL;
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  z ^= z >> 31;
  return static_cast<double>(z >> 11) * 0x1.0p-53;
}

}  // namespace casym
