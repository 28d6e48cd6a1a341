#include "inclab/geometry.hpp"

#include <utility>

namespace inclab {

std::string_view to_string(Errc code) {
  switch (code) {
    case Errc::CollinearPoints: return "CollinearPoints";
    case Errc::Degenerate: return "Degenerate";
    case Errc::CoincidentPoints: return "CoincidentPoints";
    case Errc::DegenerateShape: return "DegenerateShape";
    case Errc::PoleOnObject: return "PoleOnObject";
    case Errc::NotCoplanar: return "NotCoplanar";
    case Errc::ProbeTooLarge: return "ProbeTooLarge";
    case Errc::MissingParam: return "MissingParam";
    case Errc::InvalidParam: return "InvalidParam";
    case Errc::BelowBase: return "BelowBase";
    case Errc::EmptySuite: return "EmptySuite";
    case Errc::DegenerateSeries: return "DegenerateSeries";
    case Errc::CurveOnZeroSet: return "CurveOnZeroSet";
    case Errc::ExhaustedRetries: return "ExhaustedRetries";
    case Errc::InvalidInstance: return "InvalidInstance";
  }
  return "Unknown";
}

std::strong_ordering operator<=>(const Point3& a, const Point3& b) {
  if (auto c = a.x <=> b.x; c != 0) return c;
  if (auto c = a.y <=> b.y; c != 0) return c;
  return a.z <=> b.z;
}

Vec3 operator+(const Vec3& a, const Vec3& b) { return {a.x + b.x, a.y + b.y, a.z + b.z}; }
Vec3 operator-(const Vec3& a, const Vec3& b) { return {a.x - b.x, a.y - b.y, a.z - b.z}; }
Vec3 operator*(const Rat& s, const Vec3& v) { return {s * v.x, s * v.y, s * v.z}; }
Rat dot(const Vec3& a, const Vec3& b) { return a.x * b.x + a.y * b.y + a.z * b.z; }
Vec3 cross(const Vec3& a, const Vec3& b) {
  return {a.y * b.z - a.z * b.y, a.z * b.x - a.x * b.z, a.x * b.y - a.y * b.x};
}
Rat norm2(const Vec3& v) { return dot(v, v); }
bool is_zero(const Vec3& v) { return v.x.is_zero() && v.y.is_zero() && v.z.is_zero(); }

std::string to_string(const Point3& p) {
  return "(" + p.x.str() + ", " + p.y.str() + ", " + p.z.str() + ")";
}

Vec3 to_vec(const IVec3& v) { return {Rat(v[0]), Rat(v[1]), Rat(v[2])}; }

std::strong_ordering compare(const IVec3& a, const IVec3& b) {
  for (int i = 0; i < 3; ++i) {
    const int c = cmp(a[i], b[i]);
    if (c < 0) return std::strong_ordering::less;
    if (c > 0) return std::strong_ordering::greater;
  }
  return std::strong_ordering::equal;
}

IVec3 primitive_direction(const Vec3& v) {
  if (is_zero(v)) throw Error(Errc::Degenerate, "zero direction vector");
  const std::array<const Rat*, 3> c{&v.x, &v.y, &v.z};
  Int l = 1;
  for (const Rat* r : c) l = lcm(l, r->den());
  IVec3 out;
  Int g = 0;
  for (int i = 0; i < 3; ++i) {
    out[i] = c[i]->num() * (l / c[i]->den());
    g = gcd(g, out[i]);
  }
  int lead = 0;
  for (int i = 0; i < 3 && lead == 0; ++i) lead = sgn(out[i]);
  if (lead < 0) g = -g;
  for (auto& x : out) x /= g;
  return out;
}

// -- Plane -------------------------------------------------------------------

Plane Plane::make(const Vec3& normal, const Rat& offset) {
  Plane p;
  p.normal = primitive_direction(normal);
  // normal = lambda * p.normal; find lambda from the first nonzero entry.
  const std::array<const Rat*, 3> c{&normal.x, &normal.y, &normal.z};
  for (int i = 0; i < 3; ++i) {
    if (p.normal[i] != 0) {
      const Rat lambda = *c[i] / Rat(p.normal[i]);
      p.offset = offset / lambda;
      break;
    }
  }
  return p;
}

Plane Plane::through(const Vec3& normal, const Point3& pt) {
  return make(normal, dot(normal, pt));
}

Rat Plane::eval(const Point3& p) const {
  return Rat(normal[0]) * p.x + Rat(normal[1]) * p.y + Rat(normal[2]) * p.z - offset;
}

std::strong_ordering operator<=>(const Plane& a, const Plane& b) {
  if (auto c = compare(a.normal, b.normal); c != 0) return c;
  return a.offset <=> b.offset;
}

// -- Sphere ------------------------------------------------------------------

Sphere Sphere::make(const Point3& center, const Rat& r2) {
  if (r2.sign() <= 0) throw Error(Errc::Degenerate, "sphere with r2 <= 0");
  return Sphere{center, r2};
}

std::strong_ordering operator<=>(const Sphere& a, const Sphere& b) {
  if (auto c = a.center <=> b.center; c != 0) return c;
  return a.r2 <=> b.r2;
}

// -- Line3 -------------------------------------------------------------------

Line3 Line3::make(const Point3& through, const Vec3& direction) {
  Line3 l;
  l.direction = primitive_direction(direction);
  const Vec3 d = to_vec(l.direction);
  l.anchor = through - (dot(through, d) / norm2(d)) * d;
  return l;
}

Line3 Line3::through(const Point3& p, const Point3& q) {
  if (p == q) throw Error(Errc::CoincidentPoints, "line through a single point");
  return make(p, q - p);
}

std::strong_ordering operator<=>(const Line3& a, const Line3& b) {
  if (auto c = compare(a.direction, b.direction); c != 0) return c;
  return a.anchor <=> b.anchor;
}

// -- Circle3 -----------------------------------------------------------------

Circle3 Circle3::make(const Plane& plane, const Point3& center, const Rat& rho2) {
  if (rho2.sign() <= 0) throw Error(Errc::Degenerate, "circle with rho2 <= 0");
  Plane cp = canonical(plane);
  if (!cp.eval(center).is_zero()) {
    throw Error(Errc::Degenerate, "circle center " + to_string(center) + " is off its plane");
  }
  return Circle3{std::move(cp), center, rho2};
}

std::strong_ordering operator<=>(const Circle3& a, const Circle3& b) {
  if (auto c = a.plane <=> b.plane; c != 0) return c;
  if (auto c = a.center <=> b.center; c != 0) return c;
  return a.rho2 <=> b.rho2;
}

std::strong_ordering operator<=>(const Curve& a, const Curve& b) {
  if (a.v_.index() != b.v_.index()) return a.v_.index() <=> b.v_.index();
  if (a.is_line()) return a.line() <=> b.line();
  return a.circle() <=> b.circle();
}

// -- canonical forms ---------------------------------------------------------

Plane canonical(const Plane& p) { return Plane::make(to_vec(p.normal), p.offset); }
Sphere canonical(const Sphere& s) { return Sphere::make(s.center, s.r2); }
Line3 canonical(const Line3& l) { return Line3::make(l.anchor, to_vec(l.direction)); }
Circle3 canonical(const Circle3& c) { return Circle3::make(c.plane, c.center, c.rho2); }
Curve canonical(const Curve& c) {
  if (c.is_line()) return Curve(canonical(c.line()));
  return Curve(canonical(c.circle()));
}

// -- predicates --------------------------------------------------------------

bool incident(const Point3& p, const Line3& l) {
  return is_zero(cross(p - l.anchor, to_vec(l.direction)));
}

bool incident(const Point3& p, const Circle3& c) {
  return c.plane.eval(p).is_zero() && norm2(p - c.center) == c.rho2;
}

bool incident(const Point3& p, const Curve& c) {
  return c.is_line() ? incident(p, c.line()) : incident(p, c.circle());
}

bool on_surface(const Point3& p, const Plane& s) { return s.eval(p).is_zero(); }
bool on_surface(const Point3& p, const Sphere& s) { return norm2(p - s.center) == s.r2; }

std::optional<Vec3> solve3(const std::array<Vec3, 3>& rows, const Vec3& rhs) {
  std::array<std::array<Rat, 4>, 3> m;
  for (int i = 0; i < 3; ++i) {
    m[i] = {rows[i].x, rows[i].y, rows[i].z, i == 0 ? rhs.x : (i == 1 ? rhs.y : rhs.z)};
  }
  for (int col = 0; col < 3; ++col) {
    int piv = -1;
    for (int r = col; r < 3; ++r) {
      if (!m[r][col].is_zero()) { piv = r; break; }
    }
    if (piv < 0) return std::nullopt;
    std::swap(m[col], m[piv]);
    for (int r = 0; r < 3; ++r) {
      if (r == col || m[r][col].is_zero()) continue;
      const Rat f = m[r][col] / m[col][col];
      for (int k = col; k < 4; ++k) m[r][k] -= f * m[col][k];
    }
  }
  return Vec3{m[0][3] / m[0][0], m[1][3] / m[1][1], m[2][3] / m[2][2]};
}

Circle3 circle_through(const Point3& p1, const Point3& p2, const Point3& p3) {
  const Vec3 u = p2 - p1;
  const Vec3 v = p3 - p1;
  const Vec3 n = cross(u, v);
  if (is_zero(n)) {
    throw Error(Errc::CollinearPoints,
                to_string(p1) + ", " + to_string(p2) + ", " + to_string(p3));
  }
  // Relative center x: in the plane, equidistant from p1/p2 and p1/p3.
  const Rat half(Int(1), Int(2));
  const auto x = solve3({n, u, v}, Vec3{Rat(0), half * norm2(u), half * norm2(v)});
  // n, u, v are independent whenever n != 0.
  return Circle3::make(Plane::through(n, p1), p1 + *x, norm2(*x));
}

Line3 axis(const Circle3& c) { return Line3::make(c.center, to_vec(c.plane.normal)); }

bool contains(const Sphere& s, const Circle3& c) {
  const Vec3 oc = s.center - c.center;
  return is_zero(cross(oc, to_vec(c.plane.normal))) && norm2(oc) + c.rho2 == s.r2;
}

bool contains(const Plane& s, const Curve& c) {
  if (c.is_circle()) return c.circle().plane == s;
  const Line3& l = c.line();
  return dot(to_vec(s.normal), to_vec(l.direction)).is_zero() && s.eval(l.anchor).is_zero();
}

// -- intersection counts -----------------------------------------------------

namespace {

Crossing from_sign(int s) {
  return s > 0 ? Crossing::Two : (s == 0 ? Crossing::One : Crossing::Zero);
}

Crossing line_line(const Line3& a, const Line3& b) {
  if (a == b) return Crossing::Coincident;
  const Vec3 da = to_vec(a.direction);
  const Vec3 db = to_vec(b.direction);
  const Vec3 n = cross(da, db);
  if (is_zero(n)) return Crossing::Zero;  // parallel, distinct
  return dot(b.anchor - a.anchor, n).is_zero() ? Crossing::One : Crossing::Zero;
}

Crossing line_circle(const Line3& l, const Circle3& c) {
  const Vec3 d = to_vec(l.direction);
  const Vec3 nrm = to_vec(c.plane.normal);
  const Rat nd = dot(nrm, d);
  if (nd.is_zero()) {
    if (!c.plane.eval(l.anchor).is_zero()) return Crossing::Zero;
    // In-plane: compare squared distance from center to line with rho2.
    const Rat dist2 = norm2(cross(c.center - l.anchor, d)) / norm2(d);
    return from_sign((c.rho2 <=> dist2) < 0 ? -1 : (c.rho2 == dist2 ? 0 : 1));
  }
  const Rat t = -c.plane.eval(l.anchor) / nd;
  const Point3 x = l.anchor + t * d;
  return norm2(x - c.center) == c.rho2 ? Crossing::One : Crossing::Zero;
}

Crossing circle_circle(const Circle3& a, const Circle3& b) {
  if (a == b) return Crossing::Coincident;
  const Vec3 na = to_vec(a.plane.normal);
  const Vec3 nb = to_vec(b.plane.normal);
  if (a.plane.normal == b.plane.normal) {
    if (a.plane.offset != b.plane.offset) return Crossing::Zero;
    const Rat d2 = norm2(a.center - b.center);
    if (d2.is_zero()) return Crossing::Zero;  // concentric, distinct radii
    const Rat s = d2 - a.rho2 - b.rho2;
    const Rat disc = Rat(4) * a.rho2 * b.rho2 - s * s;
    return from_sign(disc.sign());
  }
  // Common points lie on the line where the two planes meet.
  const Vec3 d = cross(na, nb);
  const auto base = solve3({na, nb, d}, Vec3{a.plane.offset, b.plane.offset, Rat(0)});
  const Point3& p0 = *base;
  // |p0 + t d - c|^2 = rho2 for both circles; same leading coefficient |d|^2.
  const Vec3 ua = p0 - a.center;
  const Vec3 ub = p0 - b.center;
  const Rat lin = Rat(2) * (dot(d, ua) - dot(d, ub));
  const Rat cst = (norm2(ua) - a.rho2) - (norm2(ub) - b.rho2);
  const Rat dd = norm2(d);
  const Rat qa_b = Rat(2) * dot(d, ua);
  const Rat qa_c = norm2(ua) - a.rho2;
  if (lin.is_zero()) {
    if (!cst.is_zero()) return Crossing::Zero;
    const Rat disc = qa_b * qa_b - Rat(4) * dd * qa_c;
    return from_sign(disc.sign());
  }
  const Rat t = -cst / lin;
  return (dd * t * t + qa_b * t + qa_c).is_zero() ? Crossing::One : Crossing::Zero;
}

}  // namespace

Crossing intersection_count(const Curve& a, const Curve& b) {
  if (a.is_line() && b.is_line()) return line_line(a.line(), b.line());
  if (a.is_line()) return line_circle(a.line(), b.circle());
  if (b.is_line()) return line_circle(b.line(), a.circle());
  return circle_circle(a.circle(), b.circle());
}

}  // namespace inclab
