#include "inclab/triangles.hpp"

#include <algorithm>
#include <array>
#include <map>
#include <set>
#include <thread>

#include "inclab/containers.hpp"

namespace inclab {

TriangleShape TriangleShape::make(const Rat& k1sq, const Rat& k2sq) {
  if (k1sq.sign() <= 0 || k2sq.sign() <= 0) {
    throw Error(Errc::InvalidParam, "shape ratios must be positive");
  }
  const Rat s = k1sq - k2sq + Rat(1);
  if ((Rat(4) * k1sq - s * s).sign() <= 0) {
    throw Error(Errc::DegenerateShape, "shape " + k1sq.str() + ", " + k2sq.str() +
                                           " violates the triangle inequality");
  }
  return {k1sq, k2sq};
}

bool TriangleShape::fits(const Rat& l_ab, const Rat& l_ac, const Rat& l_bc) const {
  return l_ac == k1sq * l_ab && l_bc == k2sq * l_ab;
}

Circle3 locus_circle(const Point3& p, const Point3& q, const TriangleShape& shape) {
  if (p == q) throw Error(Errc::CoincidentPoints, "locus needs p != q");
  const Vec3 d = q - p;
  const Rat L = norm2(d);
  const Rat t = (shape.k1sq - shape.k2sq + Rat(1)) / Rat(2);
  const Rat rho2 = (shape.k1sq - t * t) * L;
  if (rho2.sign() <= 0) throw Error(Errc::DegenerateShape, "locus radius is not positive");
  const Point3 center = p + t * d;
  return Circle3::make(Plane::through(d, center), center, rho2);
}

bool similar(const Point3& a, const Point3& b, const Point3& c, const TriangleShape& shape) {
  const Rat ab = norm2(b - a), ac = norm2(c - a), bc = norm2(c - b);
  // (ab, ac, bc) under each relabeling of the vertices.
  return shape.fits(ab, ac, bc) || shape.fits(ab, bc, ac) || shape.fits(ac, ab, bc) ||
         shape.fits(ac, bc, ab) || shape.fits(bc, ab, ac) || shape.fits(bc, ac, ab);
}

CurveSet LocusSet::as_curves() const {
  std::vector<Curve> cs(circles.begin(), circles.end());
  return CurveSet(std::move(cs));
}

LocusSet triangle_circles(const PointSet& points, const TriangleShape& shape) {
  std::map<Circle3, std::vector<std::pair<std::uint32_t, std::uint32_t>>> found;
  for (std::size_t i = 0; i < points.size(); ++i) {
    for (std::size_t j = 0; j < points.size(); ++j) {
      if (i == j) continue;
      found[locus_circle(points[i], points[j], shape)].emplace_back(i, j);
    }
  }
  LocusSet out;
  for (auto& [circle, pairs] : found) {
    out.max_multiplicity = std::max(out.max_multiplicity, pairs.size());
    out.circles.push_back(circle);
    out.pairs.push_back(std::move(pairs));
  }
  return out;
}

namespace {

using Triple = std::array<std::uint32_t, 3>;

Triple sorted(std::uint32_t a, std::uint32_t b, std::uint32_t c) {
  Triple t{a, b, c};
  std::sort(t.begin(), t.end());
  return t;
}

}  // namespace

std::uint64_t count_similar(const PointSet& points, const TriangleShape& shape, unsigned jobs) {
  if (points.size() < 3) return 0;
  const LocusSet loci = triangle_circles(points, shape);
  std::vector<Curve> curves(loci.circles.begin(), loci.circles.end());
  const IncidenceKernel kernel(points.points(), curves);

  jobs = std::max(1u, std::min<unsigned>(jobs, static_cast<unsigned>(curves.size())));
  std::vector<std::set<Triple>> partial(jobs);
  auto work = [&](unsigned part) {
    for (std::size_t c = part; c < curves.size(); c += jobs) {
      for (std::uint32_t r = 0; r < points.size(); ++r) {
        if (!kernel.test(r, c)) continue;
        for (const auto& [p, q] : loci.pairs[c]) {
          if (r != p && r != q) partial[part].insert(sorted(p, q, r));
        }
      }
    }
  };
  std::vector<std::thread> pool;
  for (unsigned part = 1; part < jobs; ++part) pool.emplace_back(work, part);
  work(0);
  for (auto& t : pool) t.join();

  std::set<Triple> all;
  for (auto& s : partial) all.merge(s);
  std::uint64_t count = 0;
  for (const auto& t : all) {
    if (similar(points[t[0]], points[t[1]], points[t[2]], shape)) ++count;
  }
  return count;
}

std::uint64_t count_similar_bruteforce(const PointSet& points, const TriangleShape& shape) {
  std::uint64_t count = 0;
  const std::size_t n = points.size();
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      for (std::size_t k = j + 1; k < n; ++k) {
        if (similar(points[i], points[j], points[k], shape)) ++count;
      }
    }
  }
  return count;
}

QLinearReport verify_q_linear(const PointSet& points, const TriangleShape& shape) {
  if (points.size() < 2) throw Error(Errc::InvalidParam, "q check needs at least two points");
  QLinearReport r;
  r.q = compute_q(triangle_circles(points, shape).as_curves()).q;
  r.bound = 3 * points.size() - 1;
  r.pass = r.q <= r.bound;
  return r;
}

}  // namespace inclab
