#pragma once

#include <cstddef>
#include <cstdint>
#include <utility>
#include <vector>

#include "inclab/geometry.hpp"
#include "inclab/incidence.hpp"

namespace inclab {

/// Reference triangle abc up to similarity, as squared side ratios
/// k1sq = |ac|^2 / |ab|^2 and k2sq = |bc|^2 / |ab|^2.
struct TriangleShape {
  Rat k1sq;
  Rat k2sq;

  /// InvalidParam unless both ratios are positive; DegenerateShape when
  /// the three sides violate the strict triangle inequality.
  static TriangleShape make(const Rat& k1sq, const Rat& k2sq);

  /// True if squared side lengths (ab, ac, bc) fit this labeling exactly.
  bool fits(const Rat& l_ab, const Rat& l_ac, const Rat& l_bc) const;
};

/// Circle of apexes r with pqr similar to abc under p->a, q->b.
Circle3 locus_circle(const Point3& p, const Point3& q, const TriangleShape& shape);

/// Similarity test over all six vertex labelings (mirror images included).
bool similar(const Point3& a, const Point3& b, const Point3& c, const TriangleShape& shape);

/// Distinct locus circles with their generating ordered pairs.
struct LocusSet {
  std::vector<Circle3> circles;
  std::vector<std::vector<std::pair<std::uint32_t, std::uint32_t>>> pairs;
  std::size_t max_multiplicity = 0;

  CurveSet as_curves() const;
};

LocusSet triangle_circles(const PointSet& points, const TriangleShape& shape);

/// Unordered triples of P similar to the shape, found through incidences
/// with the locus circles. `jobs` splits the circles across threads.
std::uint64_t count_similar(const PointSet& points, const TriangleShape& shape,
                            unsigned jobs = 1);

/// Cubic reference count over all triples.
std::uint64_t count_similar_bruteforce(const PointSet& points, const TriangleShape& shape);

struct QLinearReport {
  std::size_t q = 0;
  std::size_t bound = 0;
  bool pass = false;
};

/// Container parameter of the locus circles against the bound 3n - 1.
QLinearReport verify_q_linear(const PointSet& points, const TriangleShape& shape);

}  // namespace inclab
