#pragma once

#include <string>

#include "surface.hpp"

namespace vf4 {

enum class MeshProjection { DropAxis, Stereographic, None };

struct MeshSpec {
  double d = 1.0;
  double alpha0 = 0.0;
  double t1 = -0.3;
  double t2 = 0.3;
  int res_alpha = 64;
  int res_beta = 64;
  MeshProjection projection = MeshProjection::DropAxis;
  int drop_axis = 3;  // 0-based coordinate removed by DropAxis
};

/// OBJ text for the ring grid: (res_alpha+1) x (res_beta+1) vertices (the
/// beta seam is duplicated) and quad faces.  DropAxis and Stereographic emit
/// `v x y z`; None emits 4-coordinate `v4 x1 x2 x3 x4` lines.
std::string export_mesh(const MeshSpec& spec);

}  // namespace vf4
