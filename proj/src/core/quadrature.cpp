#include "quadrature.hpp"

#include <atomic>
#include <cmath>
#include <cstdlib>
#include <map>
#include <mutex>
#include <numbers>
#include <stdexcept>
#include <thread>

namespace vf4 {

namespace {

std::vector<std::pair<double, double>> compute_gl(int n) {
  // Newton iteration on Legendre polynomials, nodes symmetric about 0.
  std::vector<std::pair<double, double>> nw(n);
  for (int i = 0; i < (n + 1) / 2; ++i) {
    double x = std::cos(std::numbers::pi * (i + 0.75) / (n + 0.5));
    double pp = 0.0;
    for (int iter = 0; iter < 100; ++iter) {
      double p0 = 1.0, p1 = x;
      for (int k = 2; k <= n; ++k) {
        const double p2 = ((2 * k - 1) * x * p1 - (k - 1) * p0) / k;
        p0 = p1;
        p1 = p2;
      }
      pp = n * (x * p1 - p0) / (x * x - 1.0);
      const double dx = p1 / pp;
      x -= dx;
      if (std::abs(dx) < 1e-15) break;
    }
    const double w = 2.0 / ((1.0 - x * x) * pp * pp);
    nw[i] = {-x, w};
    nw[n - 1 - i] = {x, w};
  }
  return nw;
}

std::map<int, std::vector<std::pair<double, double>>> gl_cache;
std::mutex gl_mutex;

double gl_sum_1d(const std::function<double(double)>& f, double a, double b,
                 int order) {
  const auto& nw = gauss_legendre(order);
  const double mid = 0.5 * (a + b), half = 0.5 * (b - a);
  double acc = 0.0;
  for (const auto& [x, w] : nw) acc += w * f(mid + half * x);
  return acc * half;
}

double gl_sum_2d(const std::function<double(double, double)>& f, double a1,
                 double b1, double a2, double b2, int order_x, int order_y) {
  const auto& nwx = gauss_legendre(order_x);
  const auto& nwy = gauss_legendre(order_y);
  const double m1 = 0.5 * (a1 + b1), h1 = 0.5 * (b1 - a1);
  const double m2 = 0.5 * (a2 + b2), h2 = 0.5 * (b2 - a2);
  double acc = 0.0;
  for (const auto& [x, wx] : nwx) {
    double row = 0.0;
    for (const auto& [y, wy] : nwy) row += wy * f(m1 + h1 * x, m2 + h2 * y);
    acc += wx * row;
  }
  return acc * h1 * h2;
}

IntegralResult cell_1d(const std::function<double(double)>& f, double a,
                       double b, const QuadratureSpec& spec, double tol_abs,
                       int depth) {
  const double full = gl_sum_1d(f, a, b, spec.order);
  const double half = gl_sum_1d(f, a, b, std::max(2, spec.order / 2));
  const double err = std::abs(full - half);
  if (!spec.adaptive || err <= tol_abs || depth >= spec.max_depth)
    return {full, err};
  const double mid = 0.5 * (a + b);
  IntegralResult acc = cell_1d(f, a, mid, spec, tol_abs / 2, depth + 1);
  acc += cell_1d(f, mid, b, spec, tol_abs / 2, depth + 1);
  return acc;
}

IntegralResult cell_2d(const std::function<double(double, double)>& f,
                       double a1, double b1, double a2, double b2,
                       const QuadratureSpec& spec, int ox, int oy,
                       double tol_abs, int depth) {
  const double full = gl_sum_2d(f, a1, b1, a2, b2, ox, oy);
  const double half =
      gl_sum_2d(f, a1, b1, a2, b2, std::max(2, ox / 2), std::max(2, oy / 2));
  const double err = std::abs(full - half);
  if (!spec.adaptive || err <= tol_abs || depth >= spec.max_depth)
    return {full, err};
  const double m1 = 0.5 * (a1 + b1), m2 = 0.5 * (a2 + b2);
  IntegralResult acc =
      cell_2d(f, a1, m1, a2, m2, spec, ox, oy, tol_abs / 4, depth + 1);
  acc += cell_2d(f, m1, b1, a2, m2, spec, ox, oy, tol_abs / 4, depth + 1);
  acc += cell_2d(f, a1, m1, m2, b2, spec, ox, oy, tol_abs / 4, depth + 1);
  acc += cell_2d(f, m1, b1, m2, b2, spec, ox, oy, tol_abs / 4, depth + 1);
  return acc;
}

}  // namespace

const std::vector<std::pair<double, double>>& gauss_legendre(int n) {
  if (n < 1) throw std::invalid_argument("gauss_legendre: order must be >= 1");
  std::lock_guard<std::mutex> lock(gl_mutex);
  auto it = gl_cache.find(n);
  if (it == gl_cache.end()) it = gl_cache.emplace(n, compute_gl(n)).first;
  return it->second;
}

IntegralResult integrate_1d(const std::function<double(double)>& f, double a,
                            double b, const QuadratureSpec& spec) {
  if (!(b > a)) return {0.0, 0.0};
  const int cells = std::max(1, spec.subdivisions);
  // first pass sets the absolute refinement budget from |I| and the L1 mass
  double rough = 0.0, rough_abs = 0.0;
  for (int i = 0; i < cells; ++i) {
    const double ca = a + (b - a) * i / cells, cb = a + (b - a) * (i + 1) / cells;
    rough += gl_sum_1d(f, ca, cb, spec.order);
    rough_abs += gl_sum_1d([&](double x) { return std::abs(f(x)); }, ca, cb,
                           spec.order);
  }
  const double tol_abs =
      spec.target_rel_error * std::max(std::abs(rough), rough_abs);
  IntegralResult acc;
  for (int i = 0; i < cells; ++i) {
    const double ca = a + (b - a) * i / cells, cb = a + (b - a) * (i + 1) / cells;
    acc += cell_1d(f, ca, cb, spec, tol_abs / cells, 0);
  }
  return acc;
}

IntegralResult integrate_2d(const std::function<double(double, double)>& f,
                            double a1, double b1, double a2, double b2,
                            const QuadratureSpec& spec, int subdiv_x,
                            int subdiv_y, int order_x, int order_y,
                            double abs_floor) {
  if (!(b1 > a1) || !(b2 > a2)) return {0.0, 0.0};
  const int nx = subdiv_x > 0 ? subdiv_x : std::max(1, spec.subdivisions);
  const int ny = subdiv_y > 0 ? subdiv_y : std::max(1, spec.subdivisions);
  const int ox = order_x > 0 ? order_x : spec.order;
  const int oy = order_y > 0 ? order_y : spec.order;
  double rough = 0.0, rough_abs = 0.0;
  for (int i = 0; i < nx; ++i)
    for (int j = 0; j < ny; ++j) {
      const double ca = a1 + (b1 - a1) * i / nx, cb = a1 + (b1 - a1) * (i + 1) / nx;
      const double cc = a2 + (b2 - a2) * j / ny, cd = a2 + (b2 - a2) * (j + 1) / ny;
      const double v = gl_sum_2d(f, ca, cb, cc, cd, std::max(2, ox / 2),
                                 std::max(2, oy / 2));
      rough += v;
      rough_abs += std::abs(v);
    }
  const double tol_abs = std::max(
      spec.target_rel_error * std::max(std::abs(rough), rough_abs), abs_floor);
  IntegralResult acc;
  for (int i = 0; i < nx; ++i)
    for (int j = 0; j < ny; ++j) {
      const double ca = a1 + (b1 - a1) * i / nx, cb = a1 + (b1 - a1) * (i + 1) / nx;
      const double cc = a2 + (b2 - a2) * j / ny, cd = a2 + (b2 - a2) * (j + 1) / ny;
      acc += cell_2d(f, ca, cb, cc, cd, spec, ox, oy, tol_abs / (nx * ny), 0);
    }
  return acc;
}

IntegralResult integrate_periodic(const std::function<double(double)>& f,
                                  double period, int nodes) {
  if (nodes < 2) nodes = 2;
  if (nodes % 2 != 0) ++nodes;
  double full = 0.0, half = 0.0;
  for (int i = 0; i < nodes; ++i) {
    const double v = f(period * i / nodes);
    full += v;
    if (i % 2 == 0) half += v;
  }
  full *= period / nodes;
  half *= period / (nodes / 2);
  return {full, std::abs(full - half)};
}

IntegralResult periodic_mean_adaptive(const std::function<double(double)>& f,
                                      double period, int min_nodes,
                                      int max_nodes, double target_rel_error,
                                      double abs_tol) {
  int n = std::max(2, min_nodes);
  double prev = 0.0;
  for (int i = 0; i < n; ++i) prev += f(period * i / n);
  prev /= n;
  double last_err = std::abs(prev);
  while (n < max_nodes) {
    // nodes of the doubled rule reuse the coarse sum
    double odd = 0.0;
    for (int i = 0; i < n; ++i) odd += f(period * (2 * i + 1) / (2 * n));
    const double next = 0.5 * (prev + odd / n);
    last_err = std::abs(next - prev);
    n *= 2;
    prev = next;
    if (last_err <= target_rel_error * std::max(1e-300, std::abs(next)) ||
        last_err <= abs_tol || last_err <= 1e-17)
      break;
  }
  return {prev, last_err};
}

void parallel_for_indexed(int n, const std::function<void(int)>& fn) {
  int threads = 0;
  if (const char* env = std::getenv("VF4_THREADS")) threads = std::atoi(env);
  if (threads <= 0) threads = static_cast<int>(std::thread::hardware_concurrency());
  if (threads <= 1 || n <= 1) {
    for (int i = 0; i < n; ++i) fn(i);
    return;
  }
  std::atomic<int> next{0};
  auto worker = [&]() {
    for (;;) {
      const int i = next.fetch_add(1);
      if (i >= n) return;
      fn(i);
    }
  };
  std::vector<std::thread> pool;
  const int use = std::min(threads, n);
  pool.reserve(use);
  for (int t = 0; t < use; ++t) pool.emplace_back(worker);
  for (auto& th : pool) th.join();
}

}  // namespace vf4
