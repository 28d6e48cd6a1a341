#include "inclab/containers.hpp"

#include <map>
#include <set>

namespace inclab {

std::optional<Sphere> common_sphere(const Circle3& a, const Circle3& b) {
  if (a == b || a.plane == b.plane) return std::nullopt;
  const Vec3 na = to_vec(a.plane.normal);
  const Vec3 nb = to_vec(b.plane.normal);
  const Vec3 w = b.center - a.center;
  const Vec3 nn = cross(na, nb);
  Point3 o;
  if (is_zero(nn)) {
    // Parallel planes: the axes must coincide.
    if (!is_zero(cross(w, na))) return std::nullopt;
    // o = a.center + t na with |o - ca|^2 + rho_a = |o - cb|^2 + rho_b.
    const Rat t = (b.rho2 - a.rho2 + norm2(w)) / (Rat(2) * dot(w, na));
    o = a.center + t * na;
  } else {
    if (!dot(w, nn).is_zero()) return std::nullopt;  // skew axes
    const Rat s = dot(cross(w, nb), nn) / norm2(nn);
    o = a.center + s * na;
    if (norm2(o - a.center) + a.rho2 != norm2(o - b.center) + b.rho2) return std::nullopt;
  }
  return Sphere::make(o, norm2(o - a.center) + a.rho2);
}

std::optional<Plane> common_plane(const Line3& a, const Line3& b) {
  if (a == b) return std::nullopt;
  const Vec3 da = to_vec(a.direction);
  const Vec3 db = to_vec(b.direction);
  const Vec3 w = b.anchor - a.anchor;
  Vec3 n = cross(da, db);
  if (is_zero(n)) {
    n = cross(da, w);  // parallel lines span the plane containing both
  } else if (!dot(w, n).is_zero()) {
    return std::nullopt;  // skew
  }
  return Plane::through(n, a.anchor);
}

namespace {

template <class Key>
void take_max(const std::map<Key, std::set<std::size_t>>& groups, std::size_t& best,
              std::optional<Key>& witness, std::vector<std::size_t>& members) {
  for (const auto& [key, idx] : groups) {
    if (idx.size() > best) {
      best = idx.size();
      witness = key;
      members.assign(idx.begin(), idx.end());
    }
  }
}

Plane plane_containing(const Line3& l) {
  const Vec3 d = to_vec(l.direction);
  Vec3 n = cross(d, Vec3{Rat(1), Rat(0), Rat(0)});
  if (is_zero(n)) n = cross(d, Vec3{Rat(0), Rat(1), Rat(0)});
  return Plane::through(n, l.anchor);
}

}  // namespace

ContainerReport compute_q(const CurveSet& curves) {
  ContainerReport rep;
  const std::size_t n = curves.size();
  if (n == 0) return rep;

  if (curves.is_lines()) {
    std::map<Plane, std::set<std::size_t>> planes;
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = i + 1; j < n; ++j) {
        if (auto p = common_plane(curves[i].line(), curves[j].line())) {
          auto& s = planes[*p];
          s.insert(i);
          s.insert(j);
        }
      }
    }
    take_max(planes, rep.q_plane, rep.plane_witness, rep.plane_members);
    if (rep.q_plane == 0) {
      rep.q_plane = 1;
      rep.plane_witness = plane_containing(curves[0].line());
      rep.plane_members = {0};
    }
    rep.q = rep.q_plane;
    return rep;
  }

  std::map<Plane, std::set<std::size_t>> planes;
  for (std::size_t i = 0; i < n; ++i) planes[curves[i].circle().plane].insert(i);
  take_max(planes, rep.q_plane, rep.plane_witness, rep.plane_members);

  std::map<Sphere, std::set<std::size_t>> spheres;
  for (std::size_t i = 0; i < n; ++i) {
    const Circle3& a = curves[i].circle();
    for (std::size_t j = i + 1; j < n; ++j) {
      if (auto s = common_sphere(a, curves[j].circle())) {
        auto& members = spheres[*s];
        members.insert(i);
        members.insert(j);
      }
    }
  }
  take_max(spheres, rep.q_sphere, rep.sphere_witness, rep.sphere_members);
  rep.q = std::max(rep.q_plane, rep.q_sphere);
  return rep;
}

}  // namespace inclab
