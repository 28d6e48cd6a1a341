#include "inclab/incidence.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <limits>
#include <set>
#include <thread>

namespace inclab {

// -- sets --------------------------------------------------------------------

PointSet::PointSet(std::vector<Point3> points) : pts_(std::move(points)) {
  std::set<Point3> seen;
  for (const auto& p : pts_) {
    if (!seen.insert(p).second) {
      throw Error(Errc::InvalidInstance, "duplicate point " + to_string(p));
    }
  }
}

PointSet PointSet::deduplicated(const std::vector<Point3>& points) {
  std::set<Point3> seen;
  std::vector<Point3> out;
  for (const auto& p : points) {
    if (seen.insert(p).second) out.push_back(p);
  }
  return PointSet(std::move(out));
}

CurveSet::CurveSet(std::vector<Curve> curves) {
  curves_.reserve(curves.size());
  std::set<Curve> seen;
  for (auto& c : curves) {
    Curve cc = canonical(c);
    if (!curves_.empty() && cc.is_line() != curves_.front().is_line()) {
      throw Error(Errc::InvalidInstance, "curve set mixes lines and circles");
    }
    if (!seen.insert(cc).second) throw Error(Errc::InvalidInstance, "duplicate curve");
    curves_.push_back(std::move(cc));
  }
}

CurveSet CurveSet::deduplicated(const std::vector<Curve>& curves) {
  std::set<Curve> seen;
  std::vector<Curve> out;
  for (const auto& c : curves) {
    Curve cc = canonical(c);
    if (seen.insert(cc).second) out.push_back(std::move(cc));
  }
  return CurveSet(std::move(out));
}

// -- kernel ------------------------------------------------------------------

namespace {

const Int kLimit = Int(1) << 40;

bool small(const Int& v) { return abs(v) < kLimit; }

std::int64_t to_i64(const Int& v) { return v.get_si(); }

Int lcm_den(const Point3& p) { return lcm(lcm(p.x.den(), p.y.den()), p.z.den()); }

Int scaled(const Rat& r, const Int& l) { return r.num() * (l / r.den()); }

}  // namespace

IncidenceKernel::HomPoint IncidenceKernel::make_point(const Point3& p) {
  HomPoint h;
  const Int w = lcm_den(p);
  const Int x = scaled(p.x, w), y = scaled(p.y, w), z = scaled(p.z, w);
  if (small(w) && small(x) && small(y) && small(z)) {
    h = HomPoint{true, to_i64(x), to_i64(y), to_i64(z), to_i64(w)};
  }
  return h;
}

IncidenceKernel::CurveForm IncidenceKernel::make_curve(const Curve& c) {
  CurveForm f;
  auto linear = [](const IVec3& n, const Rat& offset, LinearForm& out) {
    // n . x = offset  ->  den*n . X - num*W = 0
    const Int d = offset.den();
    const Int a = n[0] * d, b = n[1] * d, cc = n[2] * d, e = -offset.num();
    if (!(small(a) && small(b) && small(cc) && small(e))) return false;
    out = LinearForm{to_i64(a), to_i64(b), to_i64(cc), to_i64(e)};
    return true;
  };
  if (c.is_line()) {
    const Line3& l = c.line();
    const IVec3& d = l.direction;
    int i = 0;
    while (d[i] == 0) ++i;
    f.ok = true;
    f.num_linear = 2;
    int slot = 0;
    for (int j = 0; j < 3; ++j) {
      if (j == i) continue;
      // d x e_j
      IVec3 e{0, 0, 0};
      e[j] = 1;
      const IVec3 n{d[1] * e[2] - d[2] * e[1], d[2] * e[0] - d[0] * e[2],
                    d[0] * e[1] - d[1] * e[0]};
      const Rat off = dot(to_vec(n), l.anchor);
      f.ok = f.ok && linear(n, off, f.lin[slot++]);
    }
    return f;
  }
  const Circle3& ci = c.circle();
  f.num_linear = 1;
  f.ok = linear(ci.plane.normal, ci.plane.offset, f.lin[0]);
  f.quadratic = true;
  const Int v = lcm_den(ci.center);
  const Rat k = norm2(ci.center) - ci.rho2;
  const Int kd = k.den();
  const Int s = v * kd;
  const Int gx = -2 * kd * scaled(ci.center.x, v);
  const Int gy = -2 * kd * scaled(ci.center.y, v);
  const Int gz = -2 * kd * scaled(ci.center.z, v);
  const Int h = v * k.num();
  if (!(small(s) && small(gx) && small(gy) && small(gz) && small(h))) {
    f.ok = false;
    return f;
  }
  f.s = to_i64(s);
  f.gx = to_i64(gx);
  f.gy = to_i64(gy);
  f.gz = to_i64(gz);
  f.h = to_i64(h);
  return f;
}

IncidenceKernel::IncidenceKernel(const std::vector<Point3>& points,
                                 const std::vector<Curve>& curves)
    : points_(&points), curves_(&curves) {
  hp_.reserve(points.size());
  for (const auto& p : points) hp_.push_back(make_point(p));
  cf_.reserve(curves.size());
  for (const auto& c : curves) cf_.push_back(make_curve(c));
}

bool IncidenceKernel::test(std::size_t pi, std::size_t ci) const {
  const HomPoint& p = hp_[pi];
  const CurveForm& f = cf_[ci];
  if (!p.ok || !f.ok) return incident((*points_)[pi], (*curves_)[ci]);
  using i128 = __int128;
  for (int i = 0; i < f.num_linear; ++i) {
    const LinearForm& l = f.lin[i];
    const i128 v = i128(l.a) * p.x + i128(l.b) * p.y + i128(l.c) * p.z + i128(l.e) * p.w;
    if (v != 0) return false;
  }
  if (!f.quadratic) return true;
  const i128 sq = i128(p.x) * p.x + i128(p.y) * p.y + i128(p.z) * p.z;
  const i128 g = i128(f.gx) * p.x + i128(f.gy) * p.y + i128(f.gz) * p.z;
  const i128 v = f.s * sq + g * p.w + i128(f.h) * p.w * p.w;
  return v == 0;
}

// -- counting ----------------------------------------------------------------

IncidenceReport count_incidences(const PointSet& points, const CurveSet& curves,
                                 unsigned jobs) {
  IncidenceReport r;
  const std::size_t m = points.size();
  const std::size_t n = curves.size();
  r.point_degrees.assign(m, 0);
  r.curve_degrees.assign(n, 0);
  if (m == 0 || n == 0) return r;
  const IncidenceKernel kernel(points.points(), curves.curves());

  jobs = std::max(1u, std::min<unsigned>(jobs, static_cast<unsigned>(n)));
  std::vector<std::vector<std::uint32_t>> local(jobs, std::vector<std::uint32_t>(m, 0));
  auto work = [&](unsigned j) {
    const std::size_t lo = n * j / jobs;
    const std::size_t hi = n * (j + 1) / jobs;
    for (std::size_t c = lo; c < hi; ++c) {
      std::uint32_t deg = 0;
      for (std::size_t p = 0; p < m; ++p) {
        if (kernel.test(p, c)) {
          ++deg;
          ++local[j][p];
        }
      }
      r.curve_degrees[c] = deg;
    }
  };
  if (jobs == 1) {
    work(0);
  } else {
    std::vector<std::thread> threads;
    for (unsigned j = 0; j < jobs; ++j) threads.emplace_back(work, j);
    for (auto& t : threads) t.join();
  }
  for (const auto& l : local) {
    for (std::size_t p = 0; p < m; ++p) r.point_degrees[p] += l[p];
  }
  for (auto d : r.curve_degrees) r.total += d;
  return r;
}

PointSet rich_points(const PointSet& points, const CurveSet& curves, std::uint64_t t) {
  if (t < 1) throw Error(Errc::InvalidParam, "richness threshold t must be >= 1");
  const IncidenceReport r = count_incidences(points, curves);
  std::vector<Point3> out;
  for (std::size_t i = 0; i < points.size(); ++i) {
    if (r.point_degrees[i] >= t) out.push_back(points[i]);
  }
  return PointSet(std::move(out));
}

std::uint64_t binomial(std::uint64_t n, std::uint64_t k) {
  if (k > n) return 0;
  k = std::min(k, n - k);
  unsigned __int128 r = 1;
  for (std::uint64_t i = 1; i <= k; ++i) {
    r = r * (n - k + i) / i;
    if (r > std::numeric_limits<std::uint64_t>::max()) {
      return std::numeric_limits<std::uint64_t>::max();
    }
  }
  return static_cast<std::uint64_t>(r);
}

namespace {

using Bits = std::vector<std::uint64_t>;

void dof_search(const std::vector<Bits>& rows, std::size_t start, int remaining,
                const Bits& acc, DofReport& rep) {
  if (remaining == 0) {
    ++rep.subsets_examined;
    std::uint64_t c = 0;
    for (auto w : acc) c += static_cast<std::uint64_t>(std::popcount(w));
    rep.max_curves_through_k_points = std::max(rep.max_curves_through_k_points, c);
    return;
  }
  Bits next(acc.size());
  for (std::size_t i = start; i + static_cast<std::size_t>(remaining) <= rows.size(); ++i) {
    bool any = false;
    for (std::size_t w = 0; w < acc.size(); ++w) {
      next[w] = acc[w] & rows[i][w];
      any = any || next[w] != 0;
    }
    // An empty intersection stays empty for every extension of the subset.
    if (!any) {
      rep.subsets_examined += binomial(rows.size() - i - 1, remaining - 1);
      continue;
    }
    dof_search(rows, i + 1, remaining - 1, next, rep);
  }
}

}  // namespace

DofReport verify_dof(const CurveSet& curves, const PointSet& probes, int k,
                     std::uint64_t budget) {
  if (k < 2) throw Error(Errc::InvalidParam, "degrees of freedom k must be >= 2");
  const std::uint64_t subsets = binomial(probes.size(), static_cast<std::uint64_t>(k));
  if (subsets > budget) {
    throw Error(Errc::ProbeTooLarge, std::to_string(subsets) + " subsets exceed budget " +
                                         std::to_string(budget));
  }
  DofReport rep;
  rep.k = k;
  const std::size_t n = curves.size();
  const std::size_t words = (n + 63) / 64;
  const IncidenceKernel kernel(probes.points(), curves.curves());
  std::vector<Bits> rows(probes.size(), Bits(words, 0));
  for (std::size_t p = 0; p < probes.size(); ++p) {
    for (std::size_t c = 0; c < n; ++c) {
      if (kernel.test(p, c)) rows[p][c / 64] |= std::uint64_t{1} << (c % 64);
    }
  }
  if (n > 0) dof_search(rows, 0, k, Bits(words, ~std::uint64_t{0}), rep);
  // Bits past n in the seed mask never survive an AND with a real row.

  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      const Crossing x = intersection_count(curves[i], curves[j]);
      if (x == Crossing::Coincident) {
        ++rep.coincident_pairs;
      } else {
        rep.max_pairwise_intersections =
            std::max(rep.max_pairwise_intersections, static_cast<int>(x));
      }
    }
  }
  return rep;
}

long double kst_bound(std::uint64_t m, std::uint64_t n, int k, int mu) {
  if (k < 2 || mu < 1) throw Error(Errc::InvalidParam, "kst_bound needs k >= 2, mu >= 1");
  const long double kk = k;
  const long double nn = static_cast<long double>(n);
  const long double mm = static_cast<long double>(m);
  const long double lead =
      n == 0 ? 0.0L : std::pow(static_cast<long double>(mu), 1.0L / kk) * mm *
                          std::pow(nn, 1.0L - 1.0L / kk);
  return lead + kk * nn;
}

}  // namespace inclab
