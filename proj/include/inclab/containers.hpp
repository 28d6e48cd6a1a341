#pragma once

#include <cstddef>
#include <optional>
#include <vector>

#include "inclab/geometry.hpp"
#include "inclab/incidence.hpp"

namespace inclab {

struct ContainerReport {
  std::size_t q_plane = 0;
  std::size_t q_sphere = 0;
  std::size_t q = 0;
  std::optional<Plane> plane_witness;
  std::vector<std::size_t> plane_members;
  std::optional<Sphere> sphere_witness;
  std::vector<std::size_t> sphere_members;
};

/// The sphere containing two distinct circles, if there is one. Coplanar
/// pairs give nullopt; the plane container covers them.
std::optional<Sphere> common_sphere(const Circle3& a, const Circle3& b);

/// The plane spanned by two distinct coplanar lines, if any.
std::optional<Plane> common_plane(const Line3& a, const Line3& b);

/// Largest number of curves on one plane or one sphere.
ContainerReport compute_q(const CurveSet& curves);

}  // namespace inclab
