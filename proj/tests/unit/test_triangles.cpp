#include <gtest/gtest.h>

#include "inclab/generators.hpp"
#include "inclab/triangles.hpp"
#include "support.hpp"

namespace inclab {
namespace {

using testing::P;
using testing::R;
using testing::random_point;

const TriangleShape kEquilateral = TriangleShape::make(Rat(1), Rat(1));
const TriangleShape kRightIsosceles = TriangleShape::make(Rat(1), Rat(2));

PointSet unit_square() { return PointSet({P(0, 0, 0), P(1, 0, 0), P(1, 1, 0), P(0, 1, 0)}); }
PointSet unit_vectors() { return PointSet({P(1, 0, 0), P(0, 1, 0), P(0, 0, 1)}); }

PointSet random_points(std::uint64_t seed, std::uint64_t n, std::int64_t range) {
  GenSpec spec;
  spec.kind = GenKind::RandomPoints;
  spec.m = n;
  spec.range = range;
  spec.seed = seed;
  return gen_random(spec).points;
}

TEST(Shape, Validation) {
  EXPECT_THROW(TriangleShape::make(Rat(0), Rat(1)), Error);
  try {
    TriangleShape::make(Rat(4), Rat(1));
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), Errc::DegenerateShape);
  }
}

TEST(Locus, Examples) {
  const Circle3 c = locus_circle(P(0, 0, 0), P(1, 0, 0), kEquilateral);
  EXPECT_EQ(c.plane, Plane::make({Rat(1), Rat(0), Rat(0)}, R(1, 2)));
  EXPECT_EQ(c.center, (Point3{R(1, 2), Rat(0), Rat(0)}));
  EXPECT_EQ(c.rho2, R(3, 4));
  try {
    locus_circle(P(1, 2, 3), P(1, 2, 3), kEquilateral);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), Errc::CoincidentPoints);
  }
  // Bypassing validation: the degenerate shape has a zero-radius locus.
  const TriangleShape flat{Rat(4), Rat(1)};
  try {
    locus_circle(P(0, 0, 0), P(1, 0, 0), flat);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), Errc::DegenerateShape);
  }
}

// Property: for every r off {p, q}, r lies on the locus iff the labeled
// equations hold; symmetric shapes give symmetric loci.
TEST(Locus, SoundAndSymmetric) {
  const std::vector<TriangleShape> shapes{kEquilateral, kRightIsosceles,
                                          TriangleShape::make(Rat(2), Rat(1)),
                                          TriangleShape::make(R(1, 2), R(1, 2))};
  for (std::uint64_t seed = 1; seed <= 3; ++seed) {
    const PointSet pts = random_points(seed, 14, 2);
    for (const auto& shape : shapes) {
      for (const auto& p : pts) {
        for (const auto& q : pts) {
          if (p == q) continue;
          const Circle3 c = locus_circle(p, q, shape);
          const Rat L = norm2(q - p);
          for (const auto& r : pts) {
            if (r == p || r == q) continue;
            const bool want = norm2(r - p) == shape.k1sq * L && norm2(r - q) == shape.k2sq * L;
            EXPECT_EQ(incident(r, c), want);
          }
          if (shape.k1sq == shape.k2sq) EXPECT_EQ(c, locus_circle(q, p, shape));
        }
      }
    }
  }
}

TEST(LocusSet, Examples) {
  const LocusSet two = triangle_circles(PointSet({P(0, 0, 0), P(1, 0, 0)}), kEquilateral);
  EXPECT_EQ(two.circles.size(), 1u);
  EXPECT_EQ(two.max_multiplicity, 2u);
  EXPECT_EQ(two.pairs[0].size(), 2u);

  const PointSet pts = random_points(4, 12, 3);
  const LocusSet s = triangle_circles(pts, TriangleShape::make(R(3, 2), R(2, 3)));
  EXPECT_LE(s.circles.size(), 12u * 11u);
  for (std::size_t i = 0; i < s.circles.size(); ++i) {
    for (const auto& [p, q] : s.pairs[i]) {
      EXPECT_EQ(locus_circle(pts[p], pts[q], TriangleShape::make(R(3, 2), R(2, 3))), s.circles[i]);
    }
  }
}

TEST(CountSimilar, Examples) {
  EXPECT_EQ(count_similar(unit_vectors(), kEquilateral), 1u);
  EXPECT_EQ(count_similar_bruteforce(unit_vectors(), kEquilateral), 1u);
  EXPECT_EQ(count_similar(unit_square(), kRightIsosceles), 4u);
  EXPECT_EQ(count_similar_bruteforce(unit_square(), kRightIsosceles), 4u);
  EXPECT_EQ(count_similar(PointSet({P(0, 0, 0), P(1, 0, 0)}), kEquilateral), 0u);
  EXPECT_EQ(count_similar(PointSet(), kEquilateral), 0u);
  // Collinear points never form a triangle.
  const PointSet line({P(0, 0, 0), P(1, 0, 0), P(2, 0, 0), P(3, 0, 0)});
  EXPECT_EQ(count_similar_bruteforce(line, TriangleShape::make(R(9, 4), R(1, 4) + R(1, 100))), 0u);
}

// Oracle equivalence on random sets and several shapes, with worker counts.
TEST(CountSimilar, MatchesBruteForce) {
  const std::vector<TriangleShape> shapes{kEquilateral, kRightIsosceles,
                                          TriangleShape::make(Rat(2), Rat(1)),
                                          TriangleShape::make(Rat(5), Rat(2))};
  for (std::uint64_t seed = 1; seed <= 6; ++seed) {
    const PointSet pts = random_points(seed, 20, 2);
    for (const auto& shape : shapes) {
      const auto want = count_similar_bruteforce(pts, shape);
      EXPECT_EQ(count_similar(pts, shape), want);
      EXPECT_EQ(count_similar(pts, shape, 3), want);
    }
  }
}

// Property: adding a point never decreases the count.
TEST(CountSimilar, MonotoneUnderInsertion) {
  const PointSet all = random_points(9, 16, 2);
  std::uint64_t prev = 0;
  for (std::size_t k = 1; k <= all.size(); ++k) {
    const PointSet prefix(std::vector<Point3>(all.begin(), all.begin() + static_cast<long>(k)));
    const auto cur = count_similar(prefix, kRightIsosceles);
    EXPECT_GE(cur, prev);
    prev = cur;
  }
  EXPECT_GT(prev, 0u);
}

TEST(QLinear, Examples) {
  const QLinearReport sq = verify_q_linear(unit_square(), kRightIsosceles);
  EXPECT_EQ(sq.bound, 11u);
  EXPECT_TRUE(sq.pass);
  const QLinearReport two = verify_q_linear(PointSet({P(0, 0, 0), P(1, 0, 0)}), kEquilateral);
  EXPECT_EQ(two.q, 1u);
  EXPECT_EQ(two.bound, 5u);
  EXPECT_TRUE(two.pass);
  EXPECT_THROW(verify_q_linear(PointSet({P(0, 0, 0)}), kEquilateral), Error);
}

TEST(QLinear, RandomSuites) {
  for (std::uint64_t seed = 1; seed <= 4; ++seed) {
    const PointSet pts = random_points(seed, 15, 3);
    EXPECT_TRUE(verify_q_linear(pts, TriangleShape::make(R(3, 2), R(2, 3))).pass);
  }
}

}  // namespace
}  // namespace inclab
