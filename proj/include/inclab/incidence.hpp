#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

#include "inclab/geometry.hpp"

namespace inclab {

/// Ordered list of distinct points.
class PointSet {
 public:
  PointSet() = default;
  /// Throws InvalidInstance on duplicate points.
  explicit PointSet(std::vector<Point3> points);
  /// Keeps the first occurrence of each point.
  static PointSet deduplicated(const std::vector<Point3>& points);

  std::size_t size() const { return pts_.size(); }
  bool empty() const { return pts_.empty(); }
  const Point3& operator[](std::size_t i) const { return pts_[i]; }
  const std::vector<Point3>& points() const { return pts_; }
  auto begin() const { return pts_.begin(); }
  auto end() const { return pts_.end(); }

  friend bool operator==(const PointSet&, const PointSet&) = default;

 private:
  std::vector<Point3> pts_;
};

/// Ordered list of distinct canonical curves of a single kind.
class CurveSet {
 public:
  CurveSet() = default;
  /// Canonicalizes each curve; throws InvalidInstance on duplicates or on
  /// a mix of lines and circles.
  explicit CurveSet(std::vector<Curve> curves);
  static CurveSet deduplicated(const std::vector<Curve>& curves);

  std::size_t size() const { return curves_.size(); }
  bool empty() const { return curves_.empty(); }
  const Curve& operator[](std::size_t i) const { return curves_[i]; }
  const std::vector<Curve>& curves() const { return curves_; }
  auto begin() const { return curves_.begin(); }
  auto end() const { return curves_.end(); }
  bool is_lines() const { return !curves_.empty() && curves_.front().is_line(); }
  bool is_circles() const { return !curves_.empty() && curves_.front().is_circle(); }
  /// Common degree E; 0 for the empty set.
  int degree() const { return curves_.empty() ? 0 : curves_.front().degree(); }

  friend bool operator==(const CurveSet&, const CurveSet&) = default;

 private:
  std::vector<Curve> curves_;
};

struct IncidenceReport {
  std::uint64_t total = 0;
  std::vector<std::uint32_t> point_degrees;
  std::vector<std::uint32_t> curve_degrees;
};

struct DofReport {
  int k = 0;
  std::uint64_t max_curves_through_k_points = 0;
  int max_pairwise_intersections = 0;
  std::uint64_t coincident_pairs = 0;
  std::uint64_t subsets_examined = 0;
};

/// Exact point-on-curve tests over fixed point and curve lists.
///
/// Coordinates and curve equations are cleared of denominators once; a
/// pair whose integer forms stay below 2^40 is decided in 128-bit integer
/// arithmetic, where no overflow is possible. Anything larger falls back
/// to the rational predicate.
class IncidenceKernel {
 public:
  IncidenceKernel(const std::vector<Point3>& points, const std::vector<Curve>& curves);

  bool test(std::size_t point, std::size_t curve) const;
  std::size_t num_points() const { return points_->size(); }
  std::size_t num_curves() const { return curves_->size(); }

 private:
  struct HomPoint {
    bool ok = false;
    std::int64_t x = 0, y = 0, z = 0, w = 1;
  };
  struct LinearForm {
    std::int64_t a = 0, b = 0, c = 0, e = 0;  // a X + b Y + c Z + e W = 0
  };
  struct CurveForm {
    bool ok = false;
    int num_linear = 0;
    LinearForm lin[2];
    bool quadratic = false;
    // s |X|^2 + (g . X) W + h W^2 = 0
    std::int64_t s = 0, gx = 0, gy = 0, gz = 0, h = 0;
  };

  static HomPoint make_point(const Point3& p);
  static CurveForm make_curve(const Curve& c);

  const std::vector<Point3>* points_;
  const std::vector<Curve>* curves_;
  std::vector<HomPoint> hp_;
  std::vector<CurveForm> cf_;
};

/// Brute-force incidence count over the full point-curve grid. `jobs`
/// chunks the curves across threads; the result does not depend on it.
IncidenceReport count_incidences(const PointSet& points, const CurveSet& curves,
                                 unsigned jobs = 1);

/// Points of P incident to at least t curves of C (t >= 1).
PointSet rich_points(const PointSet& points, const CurveSet& curves, std::uint64_t t);

/// Exhaustive degrees-of-freedom probe over all k-subsets of `probes`.
/// Throws ProbeTooLarge when the subset count exceeds `budget`.
DofReport verify_dof(const CurveSet& curves, const PointSet& probes, int k,
                     std::uint64_t budget = 20'000'000);

/// mu^(1/k) m n^(1-1/k) + k n: the explicit form used for the naive
/// Kovari-Sos-Turan bound on K_{k,mu+1}-free incidence graphs.
long double kst_bound(std::uint64_t m, std::uint64_t n, int k, int mu);

/// Binomial coefficient, saturating at UINT64_MAX.
std::uint64_t binomial(std::uint64_t n, std::uint64_t k);

}  // namespace inclab
