#include "inclab/generators.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <set>
#include <vector>

namespace inclab {

std::uint64_t Rng::next() {
  std::uint64_t z = (state_ += 0x9E3779B97F4A7C15ULL);
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

std::int64_t Rng::uniform(std::int64_t lo, std::int64_t hi) {
  const std::uint64_t span = static_cast<std::uint64_t>(hi - lo) + 1;
  if (span == 0) return static_cast<std::int64_t>(next());
  const std::uint64_t limit = UINT64_MAX - UINT64_MAX % span;
  std::uint64_t v;
  do {
    v = next();
  } while (v >= limit);
  return lo + static_cast<std::int64_t>(v % span);
}

std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t index) {
  Rng r(seed ^ (index * 0xD1B54A32D192ED03ULL));
  r.next();
  return r.next();
}

std::string_view to_string(GenKind kind) {
  switch (kind) {
    case GenKind::StGrid: return "st-grid";
    case GenKind::InversionCircles: return "inversion-circles";
    case GenKind::Packing: return "packing";
    case GenKind::RandomCircles: return "random-circles";
    case GenKind::RandomPoints: return "random-points";
    case GenKind::RandomLines: return "random-lines";
    case GenKind::RandomLattice: return "random-lattice";
  }
  return "unknown";
}

std::optional<GenKind> parse_gen_kind(std::string_view text) {
  for (GenKind k : {GenKind::StGrid, GenKind::InversionCircles, GenKind::Packing,
                    GenKind::RandomCircles, GenKind::RandomPoints, GenKind::RandomLines,
                    GenKind::RandomLattice}) {
    if (to_string(k) == text) return k;
  }
  return std::nullopt;
}

Configuration gen_st_grid(std::uint64_t a, std::uint64_t b) {
  if (a < 1 || b < 1) throw Error(Errc::InvalidParam, "st-grid needs a, b >= 1");
  std::vector<Point3> pts;
  pts.reserve(2 * a * a * b);
  for (std::uint64_t i = 0; i < a; ++i) {
    for (std::uint64_t j = 0; j < 2 * a * b; ++j) {
      pts.push_back({Rat(static_cast<long>(i)), Rat(static_cast<long>(j)), Rat(0)});
    }
  }
  std::vector<Curve> lines;
  lines.reserve(a * b * b);
  for (std::uint64_t s = 0; s < b; ++s) {
    for (std::uint64_t t = 0; t < a * b; ++t) {
      lines.emplace_back(Line3::make({Rat(0), Rat(static_cast<long>(t)), Rat(0)},
                                     {Rat(1), Rat(static_cast<long>(s)), Rat(0)}));
    }
  }
  return {PointSet(std::move(pts)), CurveSet(std::move(lines))};
}

Point3 default_grid_pole() { return {Rat(-1, 2), Rat(-1, 3), Rat(0)}; }

namespace {

Point3 invert(const Point3& x, const Point3& pole) {
  const Vec3 d = x - pole;
  return pole + (Rat(1) / norm2(d)) * d;
}

// Throws NotCoplanar unless every given point lies on one plane.
void require_coplanar(const std::vector<Point3>& pts) {
  if (pts.size() < 4) return;
  const Point3& o = pts[0];
  std::optional<Vec3> u;
  std::optional<Vec3> normal;
  for (std::size_t i = 1; i < pts.size() && !normal; ++i) {
    const Vec3 d = pts[i] - o;
    if (is_zero(d)) continue;
    if (!u) {
      u = d;
    } else if (const Vec3 n = cross(*u, d); !is_zero(n)) {
      normal = n;
    }
  }
  if (!normal) return;  // all collinear
  for (const auto& p : pts) {
    if (!dot(*normal, p - o).is_zero()) {
      throw Error(Errc::NotCoplanar, "inversion input is not coplanar with the pole");
    }
  }
}

}  // namespace

Configuration gen_inversion_circles(const PointSet& points, const CurveSet& lines,
                                    const Point3& pole) {
  if (!lines.empty() && !lines.is_lines()) {
    throw Error(Errc::InvalidParam, "inversion expects a set of lines");
  }
  std::vector<Point3> all{pole};
  for (const auto& p : points) {
    if (p == pole) throw Error(Errc::PoleOnObject, "pole coincides with an input point");
    all.push_back(p);
  }
  for (const auto& c : lines) {
    if (incident(pole, c)) throw Error(Errc::PoleOnObject, "pole lies on an input line");
    all.push_back(c.line().anchor);
    all.push_back(c.line().anchor + to_vec(c.line().direction));
  }
  require_coplanar(all);

  std::vector<Point3> pts;
  pts.reserve(points.size());
  for (const auto& p : points) pts.push_back(invert(p, pole));
  std::vector<Curve> circles;
  circles.reserve(lines.size());
  for (const auto& c : lines) {
    const Line3& l = c.line();
    circles.emplace_back(circle_through(pole, invert(l.anchor, pole),
                                        invert(l.anchor + to_vec(l.direction), pole)));
  }
  return {PointSet(std::move(pts)), CurveSet(std::move(circles))};
}

Configuration gen_packing(std::uint64_t copies, const Configuration& planar) {
  if (copies < 1) throw Error(Errc::InvalidParam, "packing needs copies >= 1");
  const Plane ground = Plane::make({Rat(0), Rat(0), Rat(1)}, Rat(0));
  for (const auto& p : planar.points) {
    if (!p.z.is_zero()) throw Error(Errc::NotCoplanar, "packing payload must lie in z = 0");
  }
  for (const auto& c : planar.curves) {
    if (!contains(ground, c)) {
      throw Error(Errc::NotCoplanar, "packing payload curve is not in z = 0");
    }
  }
  std::vector<Point3> pts;
  std::vector<Curve> curves;
  pts.reserve(copies * planar.points.size());
  curves.reserve(copies * planar.curves.size());
  for (std::uint64_t k = 0; k < copies; ++k) {
    const Rat z(static_cast<long>(k));
    const Vec3 shift{Rat(0), Rat(0), z};
    for (const auto& p : planar.points) pts.push_back(p + shift);
    for (const auto& c : planar.curves) {
      if (c.is_line()) {
        curves.emplace_back(Line3::make(c.line().anchor + shift, to_vec(c.line().direction)));
      } else {
        const Circle3& ci = c.circle();
        curves.emplace_back(Circle3::make(Plane::make({Rat(0), Rat(0), Rat(1)}, z),
                                          ci.center + shift, ci.rho2));
      }
    }
  }
  return {PointSet(std::move(pts)), CurveSet(std::move(curves))};
}

namespace {

Point3 random_point(Rng& rng, std::int64_t range, std::int64_t den) {
  auto coord = [&] {
    return Rat(Int(static_cast<long>(rng.uniform(-range, range))), Int(static_cast<long>(den)));
  };
  Point3 p;
  p.x = coord();
  p.y = coord();
  p.z = coord();
  return p;
}

std::uint64_t retry_budget(std::uint64_t wanted) { return 100 * wanted + 1000; }

std::vector<Point3> random_points(Rng& rng, std::uint64_t m, std::int64_t range,
                                  std::int64_t den) {
  std::set<Point3> seen;
  std::vector<Point3> out;
  std::uint64_t tries = 0;
  while (out.size() < m) {
    if (++tries > retry_budget(m)) {
      throw Error(Errc::ExhaustedRetries, "could not draw " + std::to_string(m) +
                                              " distinct lattice points");
    }
    Point3 p = random_point(rng, range, den);
    if (seen.insert(p).second) out.push_back(std::move(p));
  }
  return out;
}

// Box dimensions grown one unit at a time along the shortest side until the
// box holds 2m cells, so the sampled density stays near 1/2 at every m.
std::array<std::uint64_t, 3> lattice_box(std::uint64_t m) {
  std::array<std::uint64_t, 3> d{1, 1, 1};
  while (d[0] * d[1] * d[2] < 2 * m) {
    ++*std::min_element(d.begin(), d.end());
  }
  return d;
}

std::vector<Point3> random_lattice(Rng& rng, std::uint64_t m) {
  const auto d = lattice_box(m);
  const std::uint64_t cells = d[0] * d[1] * d[2];
  std::vector<std::uint64_t> idx(cells);
  for (std::uint64_t i = 0; i < cells; ++i) idx[i] = i;
  for (std::uint64_t i = 0; i < m; ++i) {
    const auto j = static_cast<std::uint64_t>(
        rng.uniform(static_cast<std::int64_t>(i), static_cast<std::int64_t>(cells - 1)));
    std::swap(idx[i], idx[j]);
  }
  std::vector<Point3> out;
  out.reserve(m);
  for (std::uint64_t i = 0; i < m; ++i) {
    const auto v = idx[i];
    out.push_back({Rat(static_cast<long>(v % d[0])), Rat(static_cast<long>((v / d[0]) % d[1])),
                   Rat(static_cast<long>(v / (d[0] * d[1])))});
  }
  return out;
}

}  // namespace

Configuration gen_random(const GenSpec& spec) {
  if (spec.den < 1 || spec.range < 0) {
    throw Error(Errc::InvalidParam, "random generators need den >= 1 and range >= 0");
  }
  Rng rng(spec.seed);
  if (spec.kind == GenKind::RandomLattice) {
    return {PointSet(random_lattice(rng, spec.m)), CurveSet()};
  }
  std::vector<Point3> pts = random_points(rng, spec.m, spec.range, spec.den);
  if (spec.kind == GenKind::RandomPoints) return {PointSet(std::move(pts)), CurveSet()};

  const bool circles = spec.kind == GenKind::RandomCircles;
  if (!circles && spec.kind != GenKind::RandomLines) {
    throw Error(Errc::InvalidParam, "gen_random does not handle " +
                                        std::string(to_string(spec.kind)));
  }
  const std::size_t arity = circles ? 3 : 2;
  std::set<Curve> seen;
  std::vector<Curve> curves;
  std::uint64_t tries = 0;
  while (curves.size() < spec.n) {
    if (++tries > retry_budget(spec.n)) {
      throw Error(Errc::ExhaustedRetries, "degenerate resampling exceeded the retry bound");
    }
    std::vector<Point3> pick;
    for (std::size_t i = 0; i < arity; ++i) {
      if (pts.size() >= arity) {
        pick.push_back(pts[static_cast<std::size_t>(
            rng.uniform(0, static_cast<std::int64_t>(pts.size()) - 1))]);
      } else {
        pick.push_back(random_point(rng, spec.range, spec.den));
      }
    }
    try {
      Curve c = circles ? Curve(circle_through(pick[0], pick[1], pick[2]))
                        : Curve(Line3::through(pick[0], pick[1]));
      if (seen.insert(c).second) curves.push_back(std::move(c));
    } catch (const Error&) {
      // collinear or repeated sample; draw again
    }
  }
  return {PointSet(std::move(pts)), CurveSet(std::move(curves))};
}

Configuration generate(const GenSpec& spec) {
  switch (spec.kind) {
    case GenKind::StGrid: return gen_st_grid(spec.a, spec.b);
    case GenKind::InversionCircles: {
      const auto g = gen_st_grid(spec.a, spec.b);
      return gen_inversion_circles(g.points, g.curves, default_grid_pole());
    }
    case GenKind::Packing: {
      auto payload = gen_st_grid(spec.a, spec.b);
      if (spec.circle_payload) {
        payload = gen_inversion_circles(payload.points, payload.curves, default_grid_pole());
      }
      return gen_packing(spec.copies, payload);
    }
    default: return gen_random(spec);
  }
}

}  // namespace inclab
