#pragma once

#include <functional>
#include <vector>

// Tensor Gauss-Legendre quadrature with an embedded error estimate
// (half-order vs full-order difference) and dyadic cell refinement, plus
// trapezoid sums for smooth periodic integrands.  Cell traversal and the
// final reduction follow a fixed order, so results are reproducible for a
// given spec and thread count.

namespace vf4 {

struct QuadratureSpec {
  int order = 16;               // GL points per axis and cell
  int subdivisions = 1;         // initial cells per (non-periodic) axis
  bool adaptive = true;
  double target_rel_error = 1e-9;
  int max_depth = 9;            // dyadic refinement limit per cell
  int circle_nodes = 256;       // trapezoid nodes on periodic circles
  int orbit_exact_limit = 512;  // orbits up to this count are summed exactly
  int orbit_min_nodes = 16;     // adaptive trapezoid start for large orbits
};

struct IntegralResult {
  double value = 0.0;
  double error = 0.0;  // estimate, not a rigorous bound

  IntegralResult& operator+=(const IntegralResult& o) {
    value += o.value;
    error += o.error;
    return *this;
  }
};

/// Nodes/weights of the n-point Gauss-Legendre rule on [-1, 1].
const std::vector<std::pair<double, double>>& gauss_legendre(int n);

IntegralResult integrate_1d(const std::function<double(double)>& f, double a,
                            double b, const QuadratureSpec& spec);

/// order_x/order_y override spec.order per axis (0 keeps it); a low order
/// across a thin axis with near-constant integrand saves most of the work.
/// abs_floor is an absolute refinement target: without it an integrand that
/// cancels to ~0 would drive every cell to max_depth chasing noise.
IntegralResult integrate_2d(const std::function<double(double, double)>& f,
                            double a1, double b1, double a2, double b2,
                            const QuadratureSpec& spec, int subdiv_x = 0,
                            int subdiv_y = 0, int order_x = 0, int order_y = 0,
                            double abs_floor = 0.0);

/// Trapezoid rule for a period-`period` smooth integrand; the error estimate
/// compares against the half-node sum.  Returns the integral, not the mean.
IntegralResult integrate_periodic(const std::function<double(double)>& f,
                                  double period, int nodes);

/// Mean of f over a full period by trapezoid sums, doubling the node count
/// from `min_nodes` until successive sums agree to target_rel_error (or the
/// absolute floor abs_tol) or max_nodes is reached.
IntegralResult periodic_mean_adaptive(const std::function<double(double)>& f,
                                      double period, int min_nodes,
                                      int max_nodes, double target_rel_error,
                                      double abs_tol = 0.0);

/// Deterministic parallel map: results[i] = fn(i), threads taken from the
/// VF4_THREADS environment variable (default: hardware concurrency); the
/// caller reduces in index order.
void parallel_for_indexed(int n, const std::function<void(int)>& fn);

}  // namespace vf4
