#pragma once

#include <cstdint>
#include <vector>

#include "inclab/generators.hpp"
#include "inclab/geometry.hpp"

namespace inclab::testing {

inline Point3 P(long x, long y, long z) { return {Rat(x), Rat(y), Rat(z)}; }

inline Rat R(long num, long den = 1) { return Rat(Int(num), Int(den)); }

/// Random point with coordinates in [-range, range] / den.
inline Point3 random_point(Rng& rng, long range, long den = 1) {
  auto c = [&] { return R(static_cast<long>(rng.uniform(-range, range)), den); };
  Point3 p;
  p.x = c();
  p.y = c();
  p.z = c();
  return p;
}

/// Circumcenter by the cross-product closed form
/// a + (|u|^2 (v x w) + |v|^2 (w x u)) / (2 |w|^2), w = u x v.
inline Point3 circumcenter(const Point3& a, const Point3& b, const Point3& c) {
  const Vec3 u = b - a, v = c - a, w = cross(u, v);
  const Vec3 num = norm2(u) * cross(v, w) + norm2(v) * cross(w, u);
  return a + (Rat(1) / (Rat(2) * norm2(w))) * num;
}

}  // namespace inclab::testing
