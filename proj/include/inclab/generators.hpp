#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>

#include "inclab/geometry.hpp"
#include "inclab/incidence.hpp"

namespace inclab {

/// A point set together with a curve set.
struct Configuration {
  PointSet points;
  CurveSet curves;
};

/// SplitMix64. Platform-independent, unlike the std distributions.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : state_(seed) {}
  std::uint64_t next();
  /// Uniform integer in [lo, hi], by rejection.
  std::int64_t uniform(std::int64_t lo, std::int64_t hi);

 private:
  std::uint64_t state_;
};

/// Seed for item `index` of a stream rooted at `seed`.
std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t index);

enum class GenKind {
  StGrid,
  InversionCircles,
  Packing,
  RandomCircles,
  RandomPoints,
  RandomLines,
  RandomLattice,
};

std::string_view to_string(GenKind kind);
std::optional<GenKind> parse_gen_kind(std::string_view text);

struct GenSpec {
  GenKind kind = GenKind::RandomPoints;
  std::uint64_t a = 1;
  std::uint64_t b = 1;
  std::uint64_t copies = 1;
  std::uint64_t n = 0;        // curves
  std::uint64_t m = 0;        // points
  std::int64_t range = 10;    // coordinates are integers in [-range, range] / den
  std::int64_t den = 1;
  bool circle_payload = true;  // packing: inversion circles (true) or lines
  std::uint64_t seed = 0;
};

/// Points (i, j, 0), 0 <= i < a, 0 <= j < 2ab, and lines y = s x + t,
/// 0 <= s < b, 0 <= t < ab, in the plane z = 0. Every line meets exactly
/// a points, so I = a^2 b^2.
Configuration gen_st_grid(std::uint64_t a, std::uint64_t b);

/// Inverts a coplanar point/line configuration about `pole` within their
/// common plane. Lines become circles through the pole; incidences are
/// preserved one-to-one.
Configuration gen_inversion_circles(const PointSet& points, const CurveSet& lines,
                                    const Point3& pole);

/// Default pole for inverting gen_st_grid output: lies on no grid line.
Point3 default_grid_pole();

/// Stacks `copies` translates of a z = 0 configuration on the planes
/// z = 0, 1, ..., copies - 1.
Configuration gen_packing(std::uint64_t copies, const Configuration& planar);

/// Random and structured instances described by `spec`. RandomLattice
/// draws m distinct integer points from a near-cubic box of about 2m cells.
Configuration gen_random(const GenSpec& spec);

/// Dispatches on spec.kind (StGrid, InversionCircles and Packing use a, b,
/// copies and circle_payload).
Configuration generate(const GenSpec& spec);

}  // namespace inclab
