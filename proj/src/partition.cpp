#include "inclab/partition.hpp"

#include <algorithm>
#include <array>
#include <chrono>
#include <cmath>
#include <cstring>
#include <map>
#include <set>
#include <stdexcept>
#include <unordered_map>

#include "inclab/generators.hpp"

namespace inclab {

bool CellKey::on_zero_set() const {
  return std::find(signs.begin(), signs.end(), std::int8_t{0}) != signs.end();
}

// -- construction ------------------------------------------------------------

namespace {

const Rat& coord(const Point3& p, int axis) {
  return axis == 0 ? p.x : (axis == 1 ? p.y : p.z);
}

Vec3 unit(int axis) {
  Vec3 v{Rat(0), Rat(0), Rat(0)};
  (axis == 0 ? v.x : (axis == 1 ? v.y : v.z)) = Rat(1);
  return v;
}

struct Splitter {
  const PointSet& pts;
  int rounds;
  std::array<std::vector<Rat>, 3> values;  // sorted distinct coordinates of P per axis
  std::vector<Plane> planes;
  std::set<Plane> seen;

  Splitter(const PointSet& p, int r) : pts(p), rounds(r) {
    for (int axis = 0; axis < 3; ++axis) {
      auto& v = values[axis];
      for (const auto& q : pts) v.push_back(coord(q, axis));
      std::sort(v.begin(), v.end());
      v.erase(std::unique(v.begin(), v.end()), v.end());
    }
  }

  // A cut strictly above `lo` and below the next coordinate of P on this
  // axis, so the plane holds no point of P at all.
  Rat gap_above(int axis, const Rat& lo) const {
    const auto& v = values[axis];
    const auto it = std::upper_bound(v.begin(), v.end(), lo);
    return it == v.end() ? lo + Rat(1) : (lo + *it) / Rat(2);
  }

  void split(std::vector<std::size_t> idx, int depth) {
    if (depth >= rounds || idx.size() < 2) return;
    int axis = depth % 3;
    for (int step = 0; step < 3; ++step) {
      const int cand = (depth + step) % 3;
      const auto [lo, hi] = std::minmax_element(idx.begin(), idx.end(), [&](auto a, auto b) {
        return coord(pts[a], cand) < coord(pts[b], cand);
      });
      if (coord(pts[*lo], cand) != coord(pts[*hi], cand)) {
        axis = cand;
        break;
      }
    }
    std::sort(idx.begin(), idx.end(),
              [&](auto a, auto b) { return coord(pts[a], axis) < coord(pts[b], axis); });
    const std::size_t cnt = idx.size();
    auto at = [&](std::size_t i) -> const Rat& { return coord(pts[idx[i]], axis); };
    // Either split sizes (ceil, floor) or (floor, ceil) keeps both halves
    // within ceil(cnt / 2); prefer one that falls between distinct values.
    Rat cut;
    if (const std::size_t h = (cnt + 1) / 2; at(h - 1) != at(h)) {
      cut = gap_above(axis, at(h - 1));
    } else if (const std::size_t l = cnt / 2; at(l - 1) != at(l)) {
      cut = gap_above(axis, at(l - 1));
    } else {
      cut = at(h);  // tied median: those points go to the zero set
    }
    Plane plane = Plane::make(unit(axis), cut);
    if (seen.insert(plane).second) planes.push_back(std::move(plane));
    std::vector<std::size_t> below, above;
    for (auto i : idx) {
      const Rat& v = coord(pts[i], axis);
      if (v < cut) {
        below.push_back(i);
      } else if (v > cut) {
        above.push_back(i);
      }
    }
    split(std::move(below), depth + 1);
    split(std::move(above), depth + 1);
  }
};

}  // namespace

HyperplaneProduct build_partition(const PointSet& points, int rounds) {
  if (rounds < 1) throw Error(Errc::InvalidParam, "rounds must be >= 1");
  HyperplaneProduct h;
  h.rounds = rounds;
  Splitter sp(points, rounds);
  std::vector<std::size_t> idx(points.size());
  for (std::size_t i = 0; i < idx.size(); ++i) idx[i] = i;
  sp.split(std::move(idx), 0);
  h.planes = std::move(sp.planes);
  // A lone point is a fully degenerate cluster: cut through it.
  if (points.size() == 1) h.planes.push_back(Plane::make(unit(0), points[0].x));
  if (h.planes.empty()) h.planes.push_back(Plane::make(unit(0), Rat(0)));
  return h;
}

// -- walking a curve through the cells --------------------------------------

namespace {

struct PlaneCache {
  std::vector<Vec3> normals;
  std::vector<int> axis;  // coordinate axis for axis-aligned planes, else -1
  std::vector<long double> offset_ld;
  const HyperplaneProduct* h;

  explicit PlaneCache(const HyperplaneProduct& hp) : h(&hp) {
    for (const auto& p : hp.planes) {
      normals.push_back(to_vec(p.normal));
      int ax = -1;
      for (int i = 0; i < 3; ++i) {
        if (p.normal[i] == 1 && p.normal[(i + 1) % 3] == 0 && p.normal[(i + 2) % 3] == 0) ax = i;
      }
      axis.push_back(ax);
      offset_ld.push_back(p.offset.to_long_double());
    }
  }
  std::size_t size() const { return normals.size(); }

  int side(std::size_t j, const Point3& p) const {
    if (axis[j] >= 0) return cmp(coord(p, axis[j]).raw(), h->planes[j].offset.raw());
    return h->planes[j].eval(p).sign();
  }

  bool holds(std::size_t j, const Curve& c) const {
    if (axis[j] >= 0 && c.is_line()) {
      const Line3& l = c.line();
      return sgn(l.direction[axis[j]]) == 0 && side(j, l.anchor) == 0;
    }
    return contains(h->planes[j], c);
  }

  CellKey classify(const Point3& p) const {
    CellKey k;
    k.signs.resize(size());
    for (std::size_t j = 0; j < size(); ++j) {
      const int s = side(j, p);
      k.signs[j] = static_cast<std::int8_t>(s > 0 ? 1 : (s < 0 ? -1 : 0));
    }
    return k;
  }
};

/// Sign vectors met along a curve: `initial`, then each flip group applied
/// in order. An open curve has groups.size() + 1 arcs; a closed one has
/// max(1, groups.size()) arcs, the last group restoring `initial`.
struct Walk {
  bool closed = false;
  std::vector<std::int8_t> initial;
  std::vector<std::vector<std::uint32_t>> groups;

  std::size_t arcs() const {
    return closed ? std::max<std::size_t>(1, groups.size()) : groups.size() + 1;
  }
};

[[noreturn]] void on_zero_set(std::size_t j) {
  throw Error(Errc::CurveOnZeroSet, "curve lies in cut plane " + std::to_string(j));
}

Walk walk_line(const Line3& l, const PlaneCache& pc) {
  Walk w;
  w.initial.resize(pc.size());
  const Vec3 d = to_vec(l.direction);
  const std::array<long double, 3> anchor_ld{l.anchor.x.to_long_double(),
                                             l.anchor.y.to_long_double(),
                                             l.anchor.z.to_long_double()};
  struct Event {
    long double approx;
    long double err;  // bound on |approx - t|
    std::uint32_t plane;
  };
  constexpr long double kRel = 1e-14L;
  // Crossing parameter t with anchor + t d on plane j.
  auto exact_t = [&](std::size_t j) {
    const Plane& pl = pc.h->planes[j];
    if (pc.axis[j] >= 0) return (pl.offset - coord(l.anchor, pc.axis[j])) / coord(d, pc.axis[j]);
    return -pl.eval(l.anchor) / dot(pc.normals[j], d);
  };
  std::vector<Event> events;
  events.reserve(pc.size());
  for (std::size_t j = 0; j < pc.size(); ++j) {
    const Plane& pl = pc.h->planes[j];
    if (const int ax = pc.axis[j]; ax >= 0) {
      const int s = sgn(l.direction[ax]);
      if (s == 0) {
        const int v0 = cmp(coord(l.anchor, ax).raw(), pl.offset.raw());
        if (v0 == 0) on_zero_set(j);
        w.initial[j] = static_cast<std::int8_t>(v0);
      } else {
        w.initial[j] = static_cast<std::int8_t>(-s);
        const long double dd = l.direction[ax].get_d();
        const long double t = (pc.offset_ld[j] - anchor_ld[ax]) / dd;
        const long double err =
            kRel * ((std::fabs(pc.offset_ld[j]) + std::fabs(anchor_ld[ax])) / std::fabs(dd) +
                    std::fabs(t));
        events.push_back({t, err, static_cast<std::uint32_t>(j)});
      }
      continue;
    }
    const Rat s = dot(pc.normals[j], d);
    const Rat v0 = pl.eval(l.anchor);
    if (s.is_zero()) {
      if (v0.is_zero()) on_zero_set(j);
      w.initial[j] = static_cast<std::int8_t>(v0.sign());
    } else {
      w.initial[j] = static_cast<std::int8_t>(-s.sign());
      const long double t = (-v0 / s).to_long_double();
      events.push_back({t, kRel * std::fabs(t), static_cast<std::uint32_t>(j)});
    }
  }
  // Order by the floating value when it is unambiguous, exactly otherwise.
  auto cmp = [&](const Event& a, const Event& b) {
    if (std::fabs(a.approx - b.approx) > 2 * (a.err + b.err) + 1e-300L) {
      return a.approx < b.approx ? -1 : 1;
    }
    const Rat ta = exact_t(a.plane), tb = exact_t(b.plane);
    return ta < tb ? -1 : (tb < ta ? 1 : 0);
  };
  std::sort(events.begin(), events.end(),
            [&](const Event& a, const Event& b) { return cmp(a, b) < 0; });
  for (std::size_t i = 0; i < events.size(); ++i) {
    if (i == 0 || cmp(events[i - 1], events[i]) != 0) w.groups.emplace_back();
    w.groups.back().push_back(events[i].plane);
  }
  return w;
}

// A point center + X e1 + Y e2 on a circle, with X = xa + xb sqrt(S) and
// Y = ya + yb sqrt(S).
struct CircleEvent {
  Rat xa, xb, ya, yb, S;
  std::uint32_t plane;
  int sigma;  // +1: sign goes + to - with increasing angle
};

int half(const CircleEvent& e) {
  const int sy = sign_sqrt_expr(e.ya, e.yb, e.S);
  if (sy > 0) return 0;
  if (sy == 0 && sign_sqrt_expr(e.xa, e.xb, e.S) > 0) return 0;
  return 1;
}

// Sign of X_a Y_b - Y_a X_b.
int cross_sign(const CircleEvent& a, const CircleEvent& b) {
  return sign_sqrt_expr(a.xa * b.ya - a.ya * b.xa, a.xb * b.ya - a.yb * b.xa, a.S,
                        a.xa * b.yb - a.ya * b.xb, b.S, a.xb * b.yb - a.yb * b.xb);
}

Walk walk_circle(const Circle3& c, const PlaneCache& pc) {
  Walk w;
  w.closed = true;
  w.initial.resize(pc.size());
  const Vec3 N = to_vec(c.plane.normal);
  const Rat NN = norm2(N);
  Vec3 e1 = cross(N, unit(0));
  if (is_zero(e1)) e1 = cross(N, unit(1));
  const Vec3 e2 = cross(N, e1);

  std::vector<CircleEvent> events;
  std::vector<bool> crossing(pc.size(), false);
  for (std::size_t j = 0; j < pc.size(); ++j) {
    const Vec3& nj = pc.normals[j];
    const Vec3 wv = nj - (dot(nj, N) / NN) * N;
    const Rat v0 = pc.h->planes[j].eval(c.center);
    if (is_zero(wv)) {
      if (v0.is_zero()) on_zero_set(j);
      w.initial[j] = static_cast<std::int8_t>(v0.sign());
      continue;
    }
    const Rat ww = norm2(wv);
    if (v0 * v0 >= ww * c.rho2) {  // misses or touches: no sign change
      w.initial[j] = static_cast<std::int8_t>(v0.sign());
      continue;
    }
    crossing[j] = true;
    const Vec3 f = (-v0 / ww) * wv;  // foot, relative to the center
    const Vec3 e = cross(N, wv);
    const Rat S = (c.rho2 - v0 * v0 / ww) / norm2(e);
    for (int sigma : {+1, -1}) {
      const Rat sg(sigma);
      events.push_back(CircleEvent{dot(f, e1), sg * dot(e, e1), dot(f, e2), sg * dot(e, e2), S,
                                   static_cast<std::uint32_t>(j), sigma});
    }
  }
  auto less = [](const CircleEvent& a, const CircleEvent& b) {
    const int ha = half(a), hb = half(b);
    if (ha != hb) return ha < hb;
    return cross_sign(a, b) > 0;
  };
  std::sort(events.begin(), events.end(), less);
  std::vector<bool> decided(pc.size(), false);
  for (const auto& e : events) {
    if (!decided[e.plane]) {
      decided[e.plane] = true;
      w.initial[e.plane] = static_cast<std::int8_t>(e.sigma);  // sign just before first event
    }
  }
  for (std::size_t i = 0; i < events.size(); ++i) {
    if (i == 0 || less(events[i - 1], events[i])) w.groups.emplace_back();
    w.groups.back().push_back(events[i].plane);
  }
  return w;
}

Walk walk(const Curve& c, const PlaneCache& pc) {
  return c.is_line() ? walk_line(c.line(), pc) : walk_circle(c.circle(), pc);
}

/// Calls visit(signs) for every arc of the walk, in order.
template <class Visit>
void for_each_arc(const Walk& w, Visit&& visit) {
  std::vector<std::int8_t> signs = w.initial;
  visit(signs);
  const std::size_t steps = w.closed ? (w.groups.empty() ? 0 : w.groups.size() - 1) : w.groups.size();
  for (std::size_t g = 0; g < steps; ++g) {
    for (auto j : w.groups[g]) signs[j] = static_cast<std::int8_t>(-signs[j]);
    visit(signs);
  }
}

}  // namespace

CellKey classify(const Point3& p, const HyperplaneProduct& h) { return PlaneCache(h).classify(p); }

std::vector<CellKey> curve_cell_keys(const Curve& c, const HyperplaneProduct& h) {
  const PlaneCache pc(h);
  const Walk w = walk(c, pc);
  std::vector<CellKey> out;
  std::set<std::vector<std::int8_t>> seen;
  for_each_arc(w, [&](const std::vector<std::int8_t>& s) {
    if (seen.insert(s).second) out.push_back(CellKey{s});
  });
  return out;
}

std::size_t curve_cells(const Curve& c, const HyperplaneProduct& h) {
  return curve_cell_keys(c, h).size();
}

int rounds_for_degree(std::uint64_t degree, std::uint64_t m, int max_rounds) {
  const double want = 3.0 * std::log2(static_cast<double>(std::max<std::uint64_t>(degree, 1)));
  int r = static_cast<int>(std::llround(want));
  int cap = max_rounds;
  if (m >= 2) cap = std::min(cap, static_cast<int>(std::floor(std::log2(static_cast<double>(m)))));
  return std::clamp(r, 1, std::max(1, cap));
}

// -- partitioned counting ----------------------------------------------------

namespace {

class Zobrist {
 public:
  explicit Zobrist(std::size_t planes) : table_(planes * 3) {
    Rng rng(0x5EEDC0DEULL);
    for (auto& v : table_) v = rng.next();
  }
  std::uint64_t value(std::size_t plane, std::int8_t sign) const {
    return table_[plane * 3 + static_cast<std::size_t>(sign + 1)];
  }
  std::uint64_t hash(const std::vector<std::int8_t>& signs) const {
    std::uint64_t h = 0;
    for (std::size_t j = 0; j < signs.size(); ++j) h ^= value(j, signs[j]);
    return h;
  }

 private:
  std::vector<std::uint64_t> table_;
};

}  // namespace

std::pair<IncidenceReport, PartitionTrace> partitioned_count(const PointSet& points,
                                                             const CurveSet& curves,
                                                             const BoundParams& params,
                                                             const PartitionOptions& options) {
  const auto start = std::chrono::steady_clock::now();
  const std::size_t m = points.size();
  const std::size_t n = curves.size();
  IncidenceReport rep;
  rep.point_degrees.assign(m, 0);
  rep.curve_degrees.assign(n, 0);
  PartitionTrace tr;
  tr.curve_visits.assign(n, 0);
  if (m == 0) return {rep, tr};

  const int k = params.k.value_or(curves.is_circles() ? 3 : 2);
  try {
    tr.target_degree = partition_degree(m, n, k, params.c, params.a, params.a_prime);
  } catch (const Error& e) {
    if (e.code() != Errc::BelowBase) throw;
    tr.below_base = true;
  }
  tr.rounds = options.rounds.value_or(
      tr.below_base ? 1 : rounds_for_degree(tr.target_degree, m, options.max_rounds));
  const HyperplaneProduct h = build_partition(points, tr.rounds);
  const std::size_t D = h.degree();
  tr.degree = D;
  tr.cell_point_bound = (m + (std::uint64_t{1} << tr.rounds) - 1) >> tr.rounds;

  const PlaneCache pc(h);

  // Bucket points into open cells and the zero set.
  std::vector<CellKey> keys(m);
  std::map<CellKey, std::vector<std::size_t>> buckets;
  std::vector<std::size_t> zero_set;
  for (std::size_t i = 0; i < m; ++i) {
    keys[i] = pc.classify(points[i]);
    if (keys[i].on_zero_set()) {
      zero_set.push_back(i);
    } else {
      buckets[keys[i]].push_back(i);
    }
  }
  tr.zero_set_points = zero_set.size();
  std::vector<std::vector<std::size_t>> cell_points;
  const Zobrist zob(D);
  std::unordered_map<std::uint64_t, std::vector<std::size_t>> by_hash;
  for (auto& [key, idx] : buckets) {
    by_hash[zob.hash(key.signs)].push_back(tr.cells.size());
    tr.cells.push_back(CellTally{key, idx.size(), 0});
    tr.max_cell_points = std::max<std::uint64_t>(tr.max_cell_points, idx.size());
    cell_points.push_back(std::move(idx));
  }

  const IncidenceKernel kernel(points.points(), curves.curves());
  auto hit = [&](std::size_t p, std::size_t c) {
    ++tr.tests;
    if (kernel.test(p, c)) {
      ++rep.point_degrees[p];
      ++rep.curve_degrees[c];
    }
  };

  // Curves lying in a cut plane are handled with the zero set, each under
  // the first plane that contains it.
  std::vector<std::vector<std::size_t>> in_plane(D);
  std::vector<std::size_t> crossing;
  for (std::size_t c = 0; c < n; ++c) {
    std::optional<std::size_t> host;
    for (std::size_t j = 0; j < D && !host; ++j) {
      if (pc.holds(j, curves[c])) host = j;
    }
    if (host) {
      in_plane[*host].push_back(c);
      ++tr.zero_set_curves;
    } else {
      crossing.push_back(c);
    }
  }

  std::vector<std::size_t> seen_cells;
  for (auto c : crossing) {
    const Walk w = walk(curves[c], pc);
    std::uint64_t h_cur = zob.hash(w.initial);
    std::vector<std::int8_t> signs = w.initial;
    std::set<std::vector<std::int8_t>> distinct;  // closed curves may re-enter a cell
    seen_cells.clear();
    auto visit = [&] {
      if (w.closed) distinct.insert(signs);
      auto it = by_hash.find(h_cur);
      if (it == by_hash.end()) return;
      for (auto cell : it->second) {
        const auto& ks = tr.cells[cell].key.signs;
        if (std::memcmp(ks.data(), signs.data(), D) != 0) continue;
        if (std::find(seen_cells.begin(), seen_cells.end(), cell) != seen_cells.end()) continue;
        seen_cells.push_back(cell);
        ++tr.cells[cell].curves;
        for (auto p : cell_points[cell]) hit(p, c);
      }
    };
    visit();
    const std::size_t steps =
        w.closed ? (w.groups.empty() ? 0 : w.groups.size() - 1) : w.groups.size();
    for (std::size_t g = 0; g < steps; ++g) {
      for (auto j : w.groups[g]) {
        const std::int8_t old = signs[j];
        signs[j] = static_cast<std::int8_t>(-old);
        h_cur ^= zob.value(j, old) ^ zob.value(j, signs[j]);
      }
      visit();
    }
    const std::uint64_t visits = w.closed ? distinct.size() : w.arcs();
    tr.curve_visits[c] = visits;
    const std::uint64_t limit =
        curves[c].is_line() ? D + 1 : std::max<std::uint64_t>(2 * D, 1);
    if (visits > limit) {
      throw std::logic_error("crossing bound violated: curve " + std::to_string(c) + " visits " +
                             std::to_string(visits) + " cells, limit " + std::to_string(limit));
    }
  }

  // Zero-set points: crossing curves directly, contained curves per plane.
  for (auto p : zero_set) {
    for (auto c : crossing) hit(p, c);
    for (std::size_t j = 0; j < D; ++j) {
      if (keys[p].signs[j] != 0) continue;
      for (auto c : in_plane[j]) hit(p, c);
    }
  }

  for (auto d : rep.curve_degrees) rep.total += d;
  tr.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return {rep, tr};
}

}  // namespace inclab
