#include "mesh.hpp"

#include <cmath>
#include <numbers>
#include <sstream>
#include <stdexcept>

#include "report.hpp"

namespace vf4 {

namespace {

constexpr double kPi = std::numbers::pi;

std::string project(const Vec4& x, MeshProjection proj, int drop_axis) {
  std::ostringstream out;
  if (proj == MeshProjection::None) {
    out << "v4 " << format_double(x[0]) << ' ' << format_double(x[1]) << ' '
        << format_double(x[2]) << ' ' << format_double(x[3]);
    return out.str();
  }
  if (proj == MeshProjection::DropAxis) {
    out << 'v';
    for (int i = 0; i < 4; ++i)
      if (i != drop_axis) out << ' ' << format_double(x[i]);
    return out.str();
  }
  // stereographic from the unit-sphere pole (0,0,0,1), radius preserved
  const double n = x.norm();
  const Vec4 p = x / n;
  const double denom = 1.0 - p[3];
  if (denom < 1e-12)
    throw std::domain_error("export_mesh: stereographic pole hit");
  out << "v " << format_double(n * p[0] / denom) << ' '
      << format_double(n * p[1] / denom) << ' '
      << format_double(n * p[2] / denom);
  return out.str();
}

}  // namespace

std::string export_mesh(const MeshSpec& spec) {
  const SurfaceParams surf(spec.d, spec.alpha0);
  if (!(spec.t1 < spec.t2) || !in_profile_domain(surf, spec.t1) ||
      !in_profile_domain(surf, spec.t2))
    throw std::domain_error("export_mesh: ring spec outside profile domain");
  if (spec.res_alpha < 1 || spec.res_beta < 1)
    throw std::domain_error("export_mesh: resolution must be >= 1");
  if (spec.projection == MeshProjection::DropAxis &&
      (spec.drop_axis < 0 || spec.drop_axis > 3))
    throw std::domain_error("export_mesh: drop axis must be 0..3");

  std::ostringstream out;
  out << "# ring d=" << format_double(spec.d)
      << " alpha0=" << format_double(spec.alpha0)
      << " t=[" << format_double(spec.t1) << ',' << format_double(spec.t2)
      << "]\n";
  const int na = spec.res_alpha, nb = spec.res_beta;
  for (int i = 0; i <= na; ++i) {
    const double alpha = spec.t1 + (spec.t2 - spec.t1) * i / na;
    for (int j = 0; j <= nb; ++j) {
      const double beta = 2 * kPi * j / nb;  // the seam column repeats j=0
      const Vec4 x = evaluate(surf, alpha, j == nb ? 0.0 : beta).position;
      out << project(x, spec.projection, spec.drop_axis) << "\n";
    }
  }
  const int stride = nb + 1;
  for (int i = 0; i < na; ++i)
    for (int j = 0; j < nb; ++j) {
      const int a = i * stride + j + 1;  // OBJ indices are 1-based
      out << "f " << a << ' ' << a + 1 << ' ' << a + stride + 1 << ' '
          << a + stride << "\n";
    }
  return out.str();
}

}  // namespace vf4
