#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <vector>

#include "inclab/bounds.hpp"
#include "inclab/geometry.hpp"
#include "inclab/incidence.hpp"

namespace inclab {

/// Product of distinct planes standing in for a partitioning polynomial of
/// degree D = planes.size().
struct HyperplaneProduct {
  std::vector<Plane> planes;
  int rounds = 0;

  std::size_t degree() const { return planes.size(); }
};

/// One sign in {-1, 0, +1} per plane. Any zero marks the zero set.
struct CellKey {
  std::vector<std::int8_t> signs;

  bool on_zero_set() const;
  friend bool operator==(const CellKey&, const CellKey&) = default;
  friend auto operator<=>(const CellKey&, const CellKey&) = default;
};

struct CellTally {
  CellKey key;
  std::uint64_t points = 0;  // m_i
  std::uint64_t curves = 0;  // n_i: curves visiting the cell
};

struct PartitionTrace {
  std::size_t degree = 0;           // D of the hyperplane product
  int rounds = 0;
  std::uint64_t target_degree = 0;  // from partition_degree; 0 below the base case
  bool below_base = false;
  std::vector<CellTally> cells;     // nonempty open cells only
  std::uint64_t zero_set_points = 0;  // m*
  std::uint64_t zero_set_curves = 0;  // n*: curves inside a cut plane
  std::vector<std::uint64_t> curve_visits;  // open cells per curve (0 for zero-set curves)
  std::uint64_t max_cell_points = 0;
  std::uint64_t cell_point_bound = 0;  // ceil(m / 2^rounds)
  std::uint64_t tests = 0;             // point-curve tests performed
  int depth = 1;
  double seconds = 0.0;
};

struct PartitionOptions {
  std::optional<int> rounds;  // overrides the degree-derived round count
  int max_rounds = 16;
};

/// Median cuts cycling through x, y, z; axes along which a node's points
/// do not spread are skipped. Points on a cut belong to no open cell.
HyperplaneProduct build_partition(const PointSet& points, int rounds);

CellKey classify(const Point3& p, const HyperplaneProduct& h);

/// Distinct open cells visited by the curve. Throws CurveOnZeroSet when
/// the curve lies inside one of the planes.
std::size_t curve_cells(const Curve& c, const HyperplaneProduct& h);

/// The visited cells themselves, in the order first met along the curve.
std::vector<CellKey> curve_cell_keys(const Curve& c, const HyperplaneProduct& h);

/// Incidences counted cell by cell, then on the zero set. Always equal to
/// the brute-force count.
std::pair<IncidenceReport, PartitionTrace> partitioned_count(
    const PointSet& points, const CurveSet& curves, const BoundParams& params,
    const PartitionOptions& options = {});

/// Rounds used by partitioned_count for a target degree D: 2^rounds ~ D^3,
/// capped by log2(m) and `max_rounds`.
int rounds_for_degree(std::uint64_t degree, std::uint64_t m, int max_rounds);

}  // namespace inclab
