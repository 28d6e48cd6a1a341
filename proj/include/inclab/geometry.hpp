#pragma once

#include <array>
#include <compare>
#include <optional>
#include <string>
#include <variant>

#include "inclab/error.hpp"
#include "inclab/rational.hpp"

namespace inclab {

/// Exact point (or free vector) in R^3. Planar inputs use z = 0.
struct Point3 {
  Rat x, y, z;

  friend bool operator==(const Point3&, const Point3&) = default;
  friend std::strong_ordering operator<=>(const Point3& a, const Point3& b);
};

using Vec3 = Point3;

Vec3 operator+(const Vec3& a, const Vec3& b);
Vec3 operator-(const Vec3& a, const Vec3& b);
Vec3 operator*(const Rat& s, const Vec3& v);
Rat dot(const Vec3& a, const Vec3& b);
Vec3 cross(const Vec3& a, const Vec3& b);
Rat norm2(const Vec3& v);
bool is_zero(const Vec3& v);
std::string to_string(const Point3& p);

/// Integer 3-vector; used for primitive normals and line directions.
using IVec3 = std::array<Int, 3>;

Vec3 to_vec(const IVec3& v);
std::strong_ordering compare(const IVec3& a, const IVec3& b);

/// Scales a nonzero rational vector to the primitive integer vector with
/// first nonzero entry positive. Throws Degenerate on the zero vector.
IVec3 primitive_direction(const Vec3& v);

/// normal . x = offset, with a primitive sign-canonical normal.
struct Plane {
  IVec3 normal;
  Rat offset;

  /// Canonical plane from any nonzero rational normal; Degenerate if zero.
  static Plane make(const Vec3& normal, const Rat& offset);
  static Plane through(const Vec3& normal, const Point3& p);

  /// Signed value normal . p - offset.
  Rat eval(const Point3& p) const;

  friend bool operator==(const Plane& a, const Plane& b) {
    return a.normal == b.normal && a.offset == b.offset;
  }
  friend std::strong_ordering operator<=>(const Plane& a, const Plane& b);
};

struct Sphere {
  Point3 center;
  Rat r2;

  /// Degenerate when r2 <= 0.
  static Sphere make(const Point3& center, const Rat& r2);

  friend bool operator==(const Sphere&, const Sphere&) = default;
  friend std::strong_ordering operator<=>(const Sphere& a, const Sphere& b);
};

/// Line with primitive lexicographically-positive direction, anchored at
/// the foot of the perpendicular from the origin.
struct Line3 {
  IVec3 direction;
  Point3 anchor;

  static Line3 make(const Point3& through, const Vec3& direction);
  static Line3 through(const Point3& p, const Point3& q);

  friend bool operator==(const Line3& a, const Line3& b) {
    return a.direction == b.direction && a.anchor == b.anchor;
  }
  friend std::strong_ordering operator<=>(const Line3& a, const Line3& b);
};

struct Circle3 {
  Plane plane;
  Point3 center;
  Rat rho2;

  /// Degenerate when rho2 <= 0 or the center is off the plane.
  static Circle3 make(const Plane& plane, const Point3& center, const Rat& rho2);

  friend bool operator==(const Circle3& a, const Circle3& b) {
    return a.plane == b.plane && a.center == b.center && a.rho2 == b.rho2;
  }
  friend std::strong_ordering operator<=>(const Circle3& a, const Circle3& b);
};

/// A line (degree 1) or a circle (degree 2).
class Curve {
 public:
  Curve(Line3 line) : v_(std::move(line)) {}      // NOLINT(implicit)
  Curve(Circle3 circle) : v_(std::move(circle)) {}  // NOLINT(implicit)

  bool is_line() const { return std::holds_alternative<Line3>(v_); }
  bool is_circle() const { return std::holds_alternative<Circle3>(v_); }
  const Line3& line() const { return std::get<Line3>(v_); }
  const Circle3& circle() const { return std::get<Circle3>(v_); }
  int degree() const { return is_line() ? 1 : 2; }
  const std::variant<Line3, Circle3>& variant() const { return v_; }

  friend bool operator==(const Curve& a, const Curve& b) { return a.v_ == b.v_; }
  friend std::strong_ordering operator<=>(const Curve& a, const Curve& b);

 private:
  std::variant<Line3, Circle3> v_;
};

Plane canonical(const Plane& p);
Sphere canonical(const Sphere& s);
Line3 canonical(const Line3& l);
Circle3 canonical(const Circle3& c);
Curve canonical(const Curve& c);

bool incident(const Point3& p, const Curve& c);
bool incident(const Point3& p, const Line3& l);
bool incident(const Point3& p, const Circle3& c);
bool on_surface(const Point3& p, const Plane& s);
bool on_surface(const Point3& p, const Sphere& s);

/// Unique circle through three points; CollinearPoints when they are
/// collinear or not distinct.
Circle3 circle_through(const Point3& p1, const Point3& p2, const Point3& p3);

/// Solves the 3x3 rational system m * x = rhs; nullopt when singular.
std::optional<Vec3> solve3(const std::array<Vec3, 3>& rows, const Vec3& rhs);

/// Number of common points of two curves, or Coincident.
enum class Crossing { Zero = 0, One = 1, Two = 2, Coincident = 3 };

Crossing intersection_count(const Curve& a, const Curve& b);

/// Axis of a circle: the line through its center along the plane normal.
Line3 axis(const Circle3& c);

/// True when the circle lies on the sphere.
bool contains(const Sphere& s, const Circle3& c);
bool contains(const Plane& s, const Curve& c);

}  // namespace inclab
