#include "inclab/bounds.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "inclab/error.hpp"

namespace inclab {

namespace {

struct Named {
  FormulaId id;
  std::string_view name;
};

constexpr Named kNames[] = {
    {FormulaId::PS, "PS"},         {FormulaId::SZ, "SZ"},
    {FormulaId::CIRC_PLANE, "CIRC_PLANE"}, {FormulaId::MAIN, "MAIN"},
    {FormulaId::IMPR, "IMPR"},     {FormulaId::CIRC3, "CIRC3"},
    {FormulaId::ZAHL, "ZAHL"},     {FormulaId::GK_LINES, "GK_LINES"},
    {FormulaId::RICH_A, "RICH_A"}, {FormulaId::RICH_B, "RICH_B"},
    {FormulaId::TRI, "TRI"},
};

Rat frac(long num, long den) { return Rat(Int(num), Int(den)); }

int need_k(const BoundParams& p, FormulaId id) {
  if (!p.k) throw Error(Errc::MissingParam, std::string(to_string(id)) + " needs k");
  if (*p.k < 2) throw Error(Errc::InvalidParam, "k must be >= 2");
  return *p.k;
}

int need_s(const BoundParams& p, FormulaId id) {
  if (!p.s) throw Error(Errc::MissingParam, std::string(to_string(id)) + " needs s");
  if (*p.s < 2) throw Error(Errc::InvalidParam, "s must be >= 2");
  return *p.s;
}

void need_q(const BoundParams& p, FormulaId id) {
  if (!p.q) throw Error(Errc::MissingParam, std::string(to_string(id)) + " needs q");
}

void need_t(const BoundParams& p, FormulaId id) {
  if (!p.t) throw Error(Errc::MissingParam, std::string(to_string(id)) + " needs t");
  if (*p.t < 1) throw Error(Errc::InvalidParam, "t must be >= 1");
}

Term mono(Rat em, Rat en, Rat eq = Rat(0), Rat et = Rat(0), LogArg log = LogArg::None) {
  return Term{std::move(em), std::move(en), std::move(eq), std::move(et), log};
}

const Term kM = mono(Rat(1), Rat(0));
const Term kN = mono(Rat(0), Rat(1));

long double to_ld(const Rat& r) { return r.to_long_double(); }

// x^e with 0^0 = 1.
long double power(long double x, const Rat& e) {
  if (e.is_zero()) return 1.0L;
  if (x == 0.0L) return e.sign() > 0 ? 0.0L : std::numeric_limits<long double>::infinity();
  return std::pow(x, to_ld(e));
}

Rat exact(long double v) { return Rat(mpq_class(static_cast<double>(v))); }

Rat ipow(const Rat& b, int e) {
  Rat r(1);
  for (int i = 0; i < e; ++i) r *= b;
  return r;
}

}  // namespace

std::string_view to_string(FormulaId id) {
  for (const auto& n : kNames) {
    if (n.id == id) return n.name;
  }
  return "UNKNOWN";
}

std::optional<FormulaId> parse_formula(std::string_view text) {
  for (const auto& n : kNames) {
    if (n.name == text) return n.id;
  }
  return std::nullopt;
}

const std::vector<FormulaId>& all_formulas() {
  static const std::vector<FormulaId> ids = [] {
    std::vector<FormulaId> v;
    for (const auto& n : kNames) v.push_back(n.id);
    return v;
  }();
  return ids;
}

std::vector<Term> formula_terms(FormulaId id, const BoundParams& p) {
  switch (id) {
    case FormulaId::PS: {
      const long k = need_k(p, id);
      return {mono(frac(k, 2 * k - 1), frac(2 * k - 2, 2 * k - 1)), kM, kN};
    }
    case FormulaId::SZ: {
      const long s = need_s(p, id);
      return {mono(frac(2 * s, 5 * s - 4), frac(5 * s - 6, 5 * s - 4) + p.eps),
              mono(frac(2, 3), frac(2, 3)), kM, kN};
    }
    case FormulaId::CIRC_PLANE:
      return {mono(frac(2, 3), frac(2, 3)),
              mono(frac(6, 11), frac(9, 11), Rat(0), Rat(0), LogArg::M3OverN), kM, kN};
    case FormulaId::MAIN: {
      const long k = need_k(p, id);
      need_q(p, id);
      return {mono(frac(k, 3 * k - 2), frac(3 * k - 3, 3 * k - 2)),
              mono(frac(k, 2 * k - 1), frac(k - 1, 2 * k - 1), frac(k - 1, 2 * k - 1)), kM,
              kN};
    }
    case FormulaId::IMPR: {
      const long k = need_k(p, id);
      const long s = need_s(p, id);
      need_q(p, id);
      return {mono(frac(k, 3 * k - 2), frac(3 * k - 3, 3 * k - 2)),
              mono(frac(2, 3), frac(1, 3), frac(1, 3)),
              mono(frac(2 * s, 5 * s - 4), frac(3 * s - 4, 5 * s - 4),
                   frac(2 * s - 2, 5 * s - 4) + p.eps),
              kM, kN};
    }
    case FormulaId::CIRC3:
      need_q(p, id);
      return {mono(frac(3, 7), frac(6, 7)), mono(frac(2, 3), frac(1, 3), frac(1, 3)),
              mono(frac(6, 11), frac(5, 11), frac(4, 11), Rat(0), LogArg::M3OverQ), kM, kN};
    case FormulaId::ZAHL:
      need_q(p, id);
      return {mono(frac(1, 2), frac(3, 4)), mono(frac(2, 3), frac(13, 15)),
              mono(frac(1, 3), frac(8, 9)), mono(Rat(0), Rat(1), frac(2, 3)), kM};
    case FormulaId::GK_LINES:
      need_q(p, id);
      return {mono(frac(1, 2), frac(3, 4)), mono(frac(2, 3), frac(1, 3), frac(1, 3)), kM, kN};
    case FormulaId::RICH_A: {
      const long k = need_k(p, id);
      need_q(p, id);
      need_t(p, id);
      return {mono(Rat(0), frac(3, 2), Rat(0), -frac(3 * k - 2, 2 * k - 2)),
              mono(Rat(0), Rat(1), Rat(1), -frac(2 * k - 1, k - 1)),
              mono(Rat(0), Rat(1), Rat(0), Rat(-1))};
    }
    case FormulaId::RICH_B: {
      const long k = need_k(p, id);
      const long s = need_s(p, id);
      need_q(p, id);
      need_t(p, id);
      return {mono(Rat(0), frac(3, 2), Rat(0), -frac(3 * k - 2, 2 * k - 2)),
              mono(Rat(0), Rat(1), frac(2 * s - 2, 3 * s - 4) + p.eps,
                   -frac(5 * s - 4, 3 * s - 4)),
              mono(Rat(0), Rat(1), Rat(0), Rat(-1))};
    }
    case FormulaId::TRI:
      return {mono(Rat(0), frac(15, 7))};
  }
  throw Error(Errc::InvalidParam, "unknown formula");
}

long double eval_term(const Term& term, const BoundParams& p) {
  const long double m = static_cast<long double>(p.m);
  const long double n = static_cast<long double>(p.n);
  const long double q = static_cast<long double>(p.q.value_or(0));
  const long double t = static_cast<long double>(p.t.value_or(1));
  const long double base =
      power(m, term.em) * power(n, term.en) * power(q, term.eq) * power(t, term.et);
  if (base == 0.0L || term.log == LogArg::None) return base;
  const long double denom = term.log == LogArg::M3OverN ? n : q;
  const long double lg = 3.0L * std::log2(m) - std::log2(denom);
  return base * std::pow(std::max(lg, 1.0L), 2.0L / 11.0L);
}

long double eval_bound(FormulaId id, const BoundParams& p) {
  if (p.q && *p.q > p.n) {
    throw Error(Errc::InvalidParam, "q = " + std::to_string(*p.q) + " exceeds n = " +
                                        std::to_string(p.n));
  }
  if (p.eps.sign() <= 0 || p.eps > Rat(1)) throw Error(Errc::InvalidParam, "eps must lie in (0, 1]");
  if (!(p.A > 0.0L)) throw Error(Errc::InvalidParam, "A must be positive");
  long double sum = 0.0L;
  for (const Term& term : formula_terms(id, p)) sum += eval_term(term, p);
  return p.A * sum;
}

Rat impr_threshold_exponent(int k, int s) {
  const long num = 5L * s - 4L * k - 2;
  const long den = static_cast<long>(k) * s - 4L * k + 2L * s;
  if (den == 0) throw Error(Errc::InvalidParam, "threshold exponent undefined");
  return frac(num, den);
}

std::uint64_t partition_degree(std::uint64_t m, std::uint64_t n, int k, long double c,
                               long double a, long double a_prime) {
  if (k < 2) throw Error(Errc::InvalidParam, "k must be >= 2");
  if (!(c > 0 && a > 0 && a_prime > 0)) {
    throw Error(Errc::InvalidParam, "partition constants must be positive");
  }
  // All branch tests and the ceiling are decided exactly on the rational
  // values of the (double-rounded) constants.
  const Rat M(Int(static_cast<unsigned long>(m)));
  const Rat N(Int(static_cast<unsigned long>(n)));
  const Rat C = exact(c), Aa = exact(a), Ap = exact(a_prime);
  if (ipow(M, k) < ipow(Ap, k) * N) {
    throw Error(Errc::BelowBase, "m = " + std::to_string(m) + " is below a' n^(1/k)");
  }
  const bool mid = M * M <= Aa * Aa * N * N * N;
  const int e = mid ? 3 * k - 2 : 2;
  // D >= target  <=>  D^e >= rhs  (with D^e * n^1 on the left in the mid range)
  auto ok = [&](std::uint64_t d) {
    const Rat D(Int(static_cast<unsigned long>(d)));
    if (mid) return ipow(D, e) * N >= ipow(C, e) * ipow(M, k);
    return ipow(D, 2) >= C * C * N;
  };
  const long double md = static_cast<long double>(m);
  const long double nd = static_cast<long double>(n);
  const long double est =
      mid ? c * std::pow(md, static_cast<long double>(k) / (3 * k - 2)) /
                std::pow(nd, 1.0L / (3 * k - 2))
          : c * std::sqrt(nd);
  std::uint64_t d = std::isfinite(est) ? static_cast<std::uint64_t>(std::max(1.0L, std::ceil(est)))
                                       : 1;
  while (d > 1 && ok(d - 1)) --d;
  while (!ok(d)) ++d;
  return std::max<std::uint64_t>(d, 1);
}

long double calibrate_A(const std::vector<Observation>& instances, FormulaId id) {
  if (instances.empty()) throw Error(Errc::EmptySuite, "no instances to calibrate on");
  std::vector<long double> shapes;
  long double A = 0.0L;
  for (const auto& obs : instances) {
    BoundParams p = obs.params;
    p.A = 1.0L;
    const long double shape = eval_bound(id, p);
    if (!(shape > 0.0L)) throw Error(Errc::InvalidParam, "formula shape is not positive");
    shapes.push_back(shape);
    A = std::max(A, obs.observed / shape);
  }
  if (A == 0.0L) return std::numeric_limits<long double>::min();
  // Round up until domination holds exactly in floating arithmetic.
  for (std::size_t i = 0; i < instances.size(); ++i) {
    while (A * shapes[i] < instances[i].observed) {
      A = std::nextafter(A, std::numeric_limits<long double>::infinity());
    }
  }
  return A;
}

long double fit_exponent(const std::vector<std::pair<long double, long double>>& series) {
  if (series.size() < 2) throw Error(Errc::DegenerateSeries, "need at least two points");
  long double sx = 0, sy = 0;
  for (const auto& [x, y] : series) {
    if (!(x > 0 && y > 0)) throw Error(Errc::InvalidParam, "series values must be positive");
    sx += std::log(x);
    sy += std::log(y);
  }
  const long double cnt = static_cast<long double>(series.size());
  const long double mx = sx / cnt, my = sy / cnt;
  long double sxx = 0, sxy = 0;
  for (const auto& [x, y] : series) {
    const long double dx = std::log(x) - mx;
    sxx += dx * dx;
    sxy += dx * (std::log(y) - my);
  }
  if (sxx == 0.0L) throw Error(Errc::DegenerateSeries, "all x values are equal");
  return sxy / sxx;
}

std::string describe(FormulaId id, const BoundParams& p) {
  std::string out;
  for (const Term& t : formula_terms(id, p)) {
    std::string term;
    auto add = [&](const char* var, const Rat& e) {
      if (e.is_zero()) return;
      if (!term.empty()) term += " ";
      term += var;
      if (e != Rat(1)) term += "^" + e.str();
    };
    add("m", t.em);
    add("n", t.en);
    add("q", t.eq);
    add("t", t.et);
    if (t.log == LogArg::M3OverN) term += " log^2/11(m^3/n)";
    if (t.log == LogArg::M3OverQ) term += " log^2/11(m^3/q)";
    if (!out.empty()) out += " + ";
    out += term.empty() ? "1" : term;
  }
  return out;
}

}  // namespace inclab
